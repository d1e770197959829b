//! Two-stage carriers: a poset of "later" elements, a poset of "earlier"
//! elements, and a monotone restriction between them. Everything internal
//! to this world — chains, suprema, ordinals — is evaluated stage by
//! stage with the staged quantifier semantics in [`forcing`], and every
//! closed-form computation is re-verified against that evaluator.

mod blowup;
mod chains;
mod complete;
mod forcing;
mod logical;
mod ordinal;
mod poset;

pub use blowup::{
    blowup_pair, rank_function, verify_blowup_bound, BlowupReport, BlowupVerdict, Rank,
};
pub use chains::{internal_chain_object, power_object, ChainObjectOfP, PowerObjectOfX, StageSet};
pub use complete::{internal_chain_complete, InternalChainCompleteness, InternalSup};
pub use forcing::{
    force, is_least_upper_bound_formula, upper_bound_formula, Formula, ForcingContext, Sort,
    Stage, Value,
};
pub use logical::{ev0_logical_check, Ev0Report, LogicalConstruction};
pub use ordinal::{
    check_arrow_ordinal, ArrowOrdinal, ArrowOrdinalCheck, ArrowOrdinalFamily, FamilyFiber,
};
pub use poset::{classify_arrow_map, ArrowEndoMap, ArrowPoset};
