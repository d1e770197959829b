//! Command-line workbench over the core fixed-point library: carrier
//! checks, engine runs, notation tools, two-stage structures, a
//! dataflow demo, and a self-test suite, all with deterministic text,
//! JSON, and graph output.

pub mod commands;
pub mod input;
pub mod laws;
pub mod report;
pub mod rng;
pub mod suite;
