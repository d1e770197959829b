//! Fixed-point engines. Each one returns a [`crate::order::FixedPointWitness`]
//! (re-verified at construction) plus engine-specific evidence about how
//! the point was found, so the routes can be compared against each other
//! on the same input.

mod dacar;
mod iterate;
mod nice;
mod operator;
mod pataraia;
mod tarski;
mod transfinite;

pub use dacar::{dacar_reduction, DacarReport};
pub use iterate::iterative_fix_oracle;
pub use nice::{kt_via_bw, KtReport};
pub use operator::{
    aggregate_family, build_fpo, enumerate_progressive_monotone, AggregateReport,
    FixedPointOperator,
};
pub use pataraia::{pataraia_fix, PataraiaReport};
pub use tarski::{complete_lattice_check, tarski_lfp, LatticeCheck, TarskiReport};
pub use transfinite::{
    bw_fix_by_iteration, injectivity_scan, transfinite_iterate, InjectivityReport,
    IterationOutcome, IterationTrace,
};
