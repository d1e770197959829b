//! Order-theoretic workbench: finite and symbolic partial orders, chain and
//! directed completeness checks, a family of fixed-point engines, ordinal
//! notations in Cantor normal form, two-stage ("arrow") structures with a
//! stage-wise forcing semantics, and a small dataflow-analysis lattice that
//! exercises the engines end to end.
//!
//! Everything here is exact and deterministic: sets are `BTreeSet`s,
//! enumerations walk bitmasks in a fixed order, and every engine returns a
//! witness that is re-verified against the defining equations before it is
//! handed back.

pub mod arrow;
pub mod caps;
pub mod dataflow;
pub mod dot;
pub mod element;
pub mod engines;
pub mod enumerate;
pub mod oracle;
pub mod order;
pub mod ordinal;

pub use caps::Caps;
pub use element::{Element, ElementId};
