//! Partial orders: finite carriers with explicit relations, two symbolic
//! infinite carriers with certified structure, subsets and their
//! classification, suprema of chains, completeness checks, and order maps
//! with verified evidence.

mod complete;
mod handle;
mod map;
mod poset;
mod subset;

pub use complete::{
    check_chain_complete, check_chain_complete_finite, check_directed_complete,
    check_directed_complete_finite, enumerate_chains, ChainCompleteness, CheckMethod,
    DirectedCompleteness,
};
pub use handle::{ChainDescription, PosetHandle};
pub use map::{classify_map, EndoMap, FixedPointWitness, MapRule};
pub use poset::FinitePoset;
pub use subset::{classify_subset, is_chain, is_directed, SubsetClass, SubsetWitness};

use crate::element::{Element, ElementId};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("duplicate element {0}")]
    DuplicateElement(ElementId),
    #[error("relation not transitive: {a} <= {b} and {b} <= {c} but not {a} <= {c}")]
    NotTransitive { a: ElementId, b: ElementId, c: ElementId },
    #[error("relation not antisymmetric: {a} <= {b} <= {a} with {a} != {b}")]
    NotAntisymmetric { a: ElementId, b: ElementId },
    #[error("not a chain: {a} and {b} are incomparable")]
    NotAChain { a: Element, b: Element },
    #[error("map is undefined at {at}")]
    PartialFunction { at: Element },
    #[error("map sends {from} to {to}, which is outside the carrier")]
    MapsOutside { from: Element, to: Element },
    #[error("{what}: size {size} exceeds cap {cap}")]
    SizeLimit { what: &'static str, size: usize, cap: usize },
    #[error("symbolic supremum unresolvable: {0}")]
    SupUnresolvable(String),
    #[error("map rule {rule} does not apply to {poset}")]
    RuleUnsupported { rule: &'static str, poset: String },
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("empty interval: {lo} > {hi}")]
    EmptySegment { lo: String, hi: String },
    #[error("{engine} requires {requirement}")]
    EngineRequires { engine: &'static str, requirement: &'static str },
    #[error("carrier is not a complete lattice: {0}")]
    NotCompleteLattice(String),
    #[error("iteration did not stabilize within {steps} steps")]
    IterationDiverged { steps: usize },
}
