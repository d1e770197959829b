//! Completeness checks: does every chain (or every inhabited directed
//! subset) have a least upper bound in the carrier?
//!
//! Small finite carriers are checked by literal enumeration, which also
//! yields a counterexample when one exists. Larger finite carriers use two
//! facts that make enumeration unnecessary:
//!
//! * every inhabited finite chain contains its maximum, which is its
//!   least upper bound, so the only chain that can lack a supremum in a
//!   finite poset is the empty one — and a supremum for the empty chain
//!   is exactly a least element;
//! * every inhabited finite directed subset contains its maximum (bound
//!   the members pairwise inside the subset until one element dominates),
//!   so a finite poset never fails the directed check.
//!
//! Symbolic carriers are total orders with explicit suprema everywhere,
//! so they answer directly.

use super::handle::PosetHandle;
use super::poset::FinitePoset;
use super::OrderError;
use crate::caps::Caps;
use crate::element::{Element, ElementId};
use serde::Serialize;
use std::collections::BTreeSet;

/// How a completeness verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMethod {
    /// Every relevant subset was enumerated and its bound computed.
    Exhaustive,
    /// Finite carrier above the enumeration cap: a least element is
    /// equivalent to chain-completeness there.
    LeastElementCriterion,
    /// Finite carrier above the enumeration cap: inhabited directed
    /// subsets of a finite poset always contain their maximum.
    FiniteDirectedMaximum,
    /// Finite carrier above the enumeration cap: pairwise bounds plus a
    /// least and greatest element give all bounds by iteration.
    PairwiseBoundCriterion,
    /// Symbolic total order whose suprema are computed in closed form.
    SymbolicTotalOrder,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ChainCompleteness {
    Complete {
        method: CheckMethod,
        chains_checked: Option<usize>,
    },
    /// A chain with no least upper bound: either no upper bound at all,
    /// or several minimal ones with no least among them.
    FailingChain {
        chain: Vec<Element>,
        minimal_upper_bounds: Vec<Element>,
    },
}

impl ChainCompleteness {
    pub fn is_complete(&self) -> bool {
        matches!(self, ChainCompleteness::Complete { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DirectedCompleteness {
    Complete {
        method: CheckMethod,
        subsets_checked: Option<usize>,
    },
    FailingDirected {
        subset: Vec<Element>,
        minimal_upper_bounds: Vec<Element>,
    },
}

impl DirectedCompleteness {
    pub fn is_complete(&self) -> bool {
        matches!(self, DirectedCompleteness::Complete { .. })
    }
}

/// All chains of `p` (the empty one included), in subset-mask order over
/// the sorted element list. Refuses carriers past the enumeration cap.
pub fn enumerate_chains(
    p: &FinitePoset,
    caps: &Caps,
) -> Result<Vec<BTreeSet<ElementId>>, OrderError> {
    let n = p.len();
    if n > caps.chain_enum_elements {
        return Err(OrderError::SizeLimit {
            what: "chain enumeration carrier",
            size: n,
            cap: caps.chain_enum_elements,
        });
    }
    let mut out = Vec::new();
    'mask: for mask in 0u64..(1u64 << n) {
        let picked: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        for (k, &i) in picked.iter().enumerate() {
            for &j in &picked[k + 1..] {
                if !p.le_idx(i, j) && !p.le_idx(j, i) {
                    continue 'mask;
                }
            }
        }
        out.push(picked.iter().map(|&i| p.elements()[i].clone()).collect());
    }
    Ok(out)
}

pub fn check_chain_complete(p: &PosetHandle, caps: &Caps) -> ChainCompleteness {
    match p {
        PosetHandle::Finite(fp) => check_chain_complete_finite(fp, caps),
        PosetHandle::OmegaPlusOne { .. } | PosetHandle::OrdinalSegment { .. } => {
            ChainCompleteness::Complete {
                method: CheckMethod::SymbolicTotalOrder,
                chains_checked: None,
            }
        }
    }
}

pub fn check_chain_complete_finite(p: &FinitePoset, caps: &Caps) -> ChainCompleteness {
    if p.len() <= caps.chain_enum_elements {
        let chains = enumerate_chains(p, caps).expect("size was just checked");
        for chain in &chains {
            let idx: Vec<usize> = chain
                .iter()
                .map(|id| p.index_of(id).expect("chain members come from p"))
                .collect();
            if p.lub_idx(&idx).is_none() {
                return ChainCompleteness::FailingChain {
                    chain: chain.iter().cloned().map(Element::Id).collect(),
                    minimal_upper_bounds: minimal_upper_bounds(p, &idx),
                };
            }
        }
        ChainCompleteness::Complete {
            method: CheckMethod::Exhaustive,
            chains_checked: Some(chains.len()),
        }
    } else if p.bottom_idx().is_some() {
        ChainCompleteness::Complete {
            method: CheckMethod::LeastElementCriterion,
            chains_checked: None,
        }
    } else {
        ChainCompleteness::FailingChain {
            chain: Vec::new(),
            minimal_upper_bounds: minimal_upper_bounds(p, &[]),
        }
    }
}

pub fn check_directed_complete(p: &PosetHandle, caps: &Caps) -> DirectedCompleteness {
    match p {
        PosetHandle::Finite(fp) => check_directed_complete_finite(fp, caps),
        PosetHandle::OmegaPlusOne { .. } | PosetHandle::OrdinalSegment { .. } => {
            DirectedCompleteness::Complete {
                method: CheckMethod::SymbolicTotalOrder,
                subsets_checked: None,
            }
        }
    }
}

pub fn check_directed_complete_finite(p: &FinitePoset, caps: &Caps) -> DirectedCompleteness {
    let n = p.len();
    if n > caps.chain_enum_elements {
        return DirectedCompleteness::Complete {
            method: CheckMethod::FiniteDirectedMaximum,
            subsets_checked: None,
        };
    }
    let mut checked = 0usize;
    'mask: for mask in 1u64..(1u64 << n) {
        let picked: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        for (k, &i) in picked.iter().enumerate() {
            for &j in &picked[k..] {
                let bounded = picked.iter().any(|&c| p.le_idx(i, c) && p.le_idx(j, c));
                if !bounded {
                    continue 'mask;
                }
            }
        }
        checked += 1;
        if p.lub_idx(&picked).is_none() {
            return DirectedCompleteness::FailingDirected {
                subset: picked.iter().map(|&i| Element::Id(p.elements()[i].clone())).collect(),
                minimal_upper_bounds: minimal_upper_bounds(p, &picked),
            };
        }
    }
    DirectedCompleteness::Complete {
        method: CheckMethod::Exhaustive,
        subsets_checked: Some(checked),
    }
}

/// Upper bounds of the index set that have no other upper bound strictly
/// below them. Empty when the set has no upper bound at all.
fn minimal_upper_bounds(p: &FinitePoset, idx: &[usize]) -> Vec<Element> {
    let ubs = p.upper_bound_indices(idx);
    ubs.iter()
        .filter(|&&u| !ubs.iter().any(|&v| v != u && p.le_idx(v, u)))
        .map(|&u| Element::Id(p.elements()[u].clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn diamond_has_twelve_chains() {
        let chains = enumerate_chains(&FinitePoset::diamond(), &caps()).unwrap();
        assert_eq!(chains.len(), 12);
        assert!(chains.contains(&BTreeSet::new()));
        let longest: Vec<_> = chains.iter().filter(|c| c.len() == 3).collect();
        assert_eq!(longest.len(), 2);
    }

    #[test]
    fn v_poset_has_six_chains_and_is_complete() {
        let v = FinitePoset::new(
            [ElementId::new("bot"), ElementId::new("a"), ElementId::new("b")],
            [
                (ElementId::new("bot"), ElementId::new("a")),
                (ElementId::new("bot"), ElementId::new("b")),
            ],
        )
        .unwrap();
        assert_eq!(enumerate_chains(&v, &caps()).unwrap().len(), 6);
        let verdict = check_chain_complete_finite(&v, &caps());
        assert_eq!(
            verdict,
            ChainCompleteness::Complete {
                method: CheckMethod::Exhaustive,
                chains_checked: Some(6)
            }
        );
    }

    #[test]
    fn bottomless_poset_fails_on_the_empty_chain() {
        let d = FinitePoset::discrete(2, "x");
        match check_chain_complete_finite(&d, &caps()) {
            ChainCompleteness::FailingChain { chain, minimal_upper_bounds } => {
                assert!(chain.is_empty());
                assert_eq!(minimal_upper_bounds.len(), 2);
            }
            other => panic!("expected a failing chain, got {other:?}"),
        }
    }

    #[test]
    fn every_finite_poset_is_directed_complete() {
        for p in [
            FinitePoset::discrete(3, "d"),
            FinitePoset::diamond(),
            FinitePoset::chain(4, "c"),
        ] {
            assert!(check_directed_complete_finite(&p, &caps()).is_complete());
        }
    }

    #[test]
    fn large_carrier_uses_the_least_element_criterion() {
        let mut caps = caps();
        caps.chain_enum_elements = 3;
        let c = FinitePoset::chain(5, "c");
        assert_eq!(
            check_chain_complete_finite(&c, &caps),
            ChainCompleteness::Complete {
                method: CheckMethod::LeastElementCriterion,
                chains_checked: None
            }
        );
        let d = FinitePoset::discrete(5, "d");
        assert!(matches!(
            check_chain_complete_finite(&d, &caps),
            ChainCompleteness::FailingChain { .. }
        ));
    }

    #[test]
    fn symbolic_carriers_are_complete() {
        let omega = PosetHandle::omega_plus_one();
        assert!(check_chain_complete(&omega, &caps()).is_complete());
        assert!(check_directed_complete(&omega, &caps()).is_complete());
        let seg = PosetHandle::ordinal_segment("w^2".parse().unwrap());
        assert!(check_chain_complete(&seg, &caps()).is_complete());
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let mut caps = caps();
        caps.chain_enum_elements = 2;
        assert!(matches!(
            enumerate_chains(&FinitePoset::chain(3, "c"), &caps),
            Err(OrderError::SizeLimit { .. })
        ));
    }
}
