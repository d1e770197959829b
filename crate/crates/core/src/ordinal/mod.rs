//! Ordinal notations in Cantor normal form, finite strict orders with a
//! trichotomy checker, and a classifier that collects every well-ordered
//! structure a small carrier can support.

mod classifier;
mod fundamental;
mod notation;
mod strict;

pub use classifier::{
    build_classifier, classifier_successor_scan, OrdinalClassifier, SuccessorOutcome,
    SuccessorScan,
};
pub use fundamental::{fundamental_sequence, FundamentalSequence};
pub use notation::{
    initial_segment_compare, ord_compare, random_notation, OrdinalNotation,
};
pub use strict::{
    check_trichotomous_ordinal, is_initial_segment_of, rigidity_check, unique_isomorphism,
    FiniteStrictOrder, OrdinalCheck, RejectReason,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("not in canonical form: {0}")]
    NonCanonical(String),
    #[error("cannot parse notation: {0}")]
    Parse(String),
    #[error("{0} is not a limit notation")]
    NotALimit(String),
    #[error("carrier of size {size} exceeds the classifier cap {cap}")]
    CarrierTooLarge { size: usize, cap: usize },
    #[error("relation mentions unknown element {0:?}")]
    UnknownElement(String),
}
