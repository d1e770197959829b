//! Chain-completeness of a two-stage poset judged from the inside.
//!
//! The candidate supremum map is computed pointwise: the earlier
//! component takes ordinary least upper bounds, the later component
//! takes the least element among those that bound the pair at both
//! stages. Every entry is then re-verified through the structural
//! satisfaction evaluator in [`super::forcing`], which knows nothing
//! about how the candidates were produced. A two-stage poset can fail
//! this check even when both of its stages are complete on their own.

use super::chains::{internal_chain_object, StageSet};
use super::forcing::{
    force, is_least_upper_bound_formula, ForcingContext, Stage, Value,
};
use super::poset::ArrowPoset;
use crate::caps::Caps;
use crate::element::ElementId;
use crate::order::OrderError;
use serde::Serialize;
use std::collections::BTreeMap;

/// The supremum assignment, one entry per internal chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InternalSup {
    /// Later-stage chains `(S, T)` with the least simultaneous bound.
    pub sup1: Vec<(StageSet, StageSet, ElementId)>,
    /// Earlier-stage chains `T` with their least upper bound.
    pub sup0: Vec<(StageSet, ElementId)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum InternalChainCompleteness {
    Complete {
        sup: InternalSup,
        /// Chains whose supremum survived the evaluator, per stage.
        verified: (usize, usize),
    },
    Failing {
        stage: Stage,
        chain1: Option<(StageSet, StageSet)>,
        chain0: Option<StageSet>,
        /// Bounds of the chain that admit no least member (empty when
        /// the chain has no bound at all).
        candidates: Vec<ElementId>,
    },
}

impl InternalChainCompleteness {
    pub fn is_complete(&self) -> bool {
        matches!(self, InternalChainCompleteness::Complete { .. })
    }
}

/// Elements of the later stage that bound `(s, t)` at both stages.
fn simultaneous_bounds(
    p: &ArrowPoset,
    s: &StageSet,
    t: &StageSet,
) -> Result<Vec<ElementId>, OrderError> {
    let mut out = Vec::new();
    for b in p.stage1().elements() {
        let mut ok = true;
        for m in s {
            if !p.stage1().le(m, b)? {
                ok = false;
                break;
            }
        }
        if ok {
            let rb = p.restrict(b)?;
            for m in t {
                if !p.stage0().le(m, rb)? {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            out.push(b.clone());
        }
    }
    Ok(out)
}

fn least_of(p: &ArrowPoset, candidates: &[ElementId]) -> Result<Option<ElementId>, OrderError> {
    for c in candidates {
        let mut below_all = true;
        for d in candidates {
            if !p.stage1().le(c, d)? {
                below_all = false;
                break;
            }
        }
        if below_all {
            return Ok(Some(c.clone()));
        }
    }
    Ok(None)
}

/// Compute supremum candidates for every internal chain and validate
/// them through the satisfaction evaluator.
pub fn internal_chain_complete(
    p: &ArrowPoset,
    caps: &Caps,
) -> Result<InternalChainCompleteness, OrderError> {
    let chains = internal_chain_object(p, caps)?;

    // Earlier stage: ordinary least upper bounds.
    let mut sup0 = Vec::new();
    let mut sup0_lookup: BTreeMap<StageSet, ElementId> = BTreeMap::new();
    for t in &chains.stage0 {
        let idxs: Vec<usize> = t
            .iter()
            .map(|e| p.stage0().index_of(e))
            .collect::<Result<_, _>>()?;
        match p.stage0().lub_idx(&idxs) {
            Some(u) => {
                let e = p.stage0().elements()[u].clone();
                sup0_lookup.insert(t.clone(), e.clone());
                sup0.push((t.clone(), e));
            }
            None => {
                let bounds = p
                    .stage0()
                    .upper_bound_indices(&idxs)
                    .into_iter()
                    .map(|u| p.stage0().elements()[u].clone())
                    .collect();
                return Ok(InternalChainCompleteness::Failing {
                    stage: Stage::Earlier,
                    chain1: None,
                    chain0: Some(t.clone()),
                    candidates: bounds,
                });
            }
        }
    }

    // Later stage: least simultaneous bound, and its restriction must
    // land on the earlier supremum so the assignment commutes with
    // passage to the earlier stage.
    let mut sup1 = Vec::new();
    for (s, t) in &chains.stage1 {
        let w = simultaneous_bounds(p, s, t)?;
        let least = least_of(p, &w)?;
        let Some(b) = least else {
            return Ok(InternalChainCompleteness::Failing {
                stage: Stage::Later,
                chain1: Some((s.clone(), t.clone())),
                chain0: None,
                candidates: w,
            });
        };
        let expected0 = sup0_lookup.get(t).ok_or_else(|| {
            OrderError::InvalidWitness(format!(
                "earlier half {{{}}} missing from the earlier chain list",
                t.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")
            ))
        })?;
        if p.restrict(&b)? != expected0 {
            return Ok(InternalChainCompleteness::Failing {
                stage: Stage::Later,
                chain1: Some((s.clone(), t.clone())),
                chain0: Some(t.clone()),
                candidates: w,
            });
        }
        sup1.push((s.clone(), t.clone(), b));
    }

    // Independent validation: each assignment must satisfy the
    // least-upper-bound sentence under the structural evaluator.
    let ctx = ForcingContext { poset: p, chains: &chains };
    let phi = is_least_upper_bound_formula("b", "c");
    let mut verified = (0usize, 0usize);
    for (s, t, b) in &sup1 {
        let mut env = BTreeMap::new();
        env.insert("b".to_string(), Value::El(b.clone()));
        env.insert("c".to_string(), Value::ChainPair(s.clone(), t.clone()));
        if !force(&ctx, Stage::Later, &env, &phi)? {
            return Err(OrderError::InvalidWitness(format!(
                "{b} was computed as a least bound but the evaluator rejects it"
            )));
        }
        verified.0 += 1;
    }
    for (t, b) in &sup0 {
        let mut env = BTreeMap::new();
        env.insert("b".to_string(), Value::El(b.clone()));
        env.insert("c".to_string(), Value::ChainSet(t.clone()));
        if !force(&ctx, Stage::Earlier, &env, &phi)? {
            return Err(OrderError::InvalidWitness(format!(
                "{b} was computed as a least bound but the evaluator rejects it"
            )));
        }
        verified.1 += 1;
    }

    Ok(InternalChainCompleteness::Complete {
        sup: InternalSup { sup1, sup0 },
        verified,
    })
}

impl InternalSup {
    /// Supremum assigned to one later-stage chain pair.
    pub fn later(&self, s: &StageSet, t: &StageSet) -> Option<&ElementId> {
        self.sup1
            .iter()
            .find(|(a, b, _)| a == s && b == t)
            .map(|(_, _, e)| e)
    }

    /// Supremum assigned to one earlier-stage chain.
    pub fn earlier(&self, t: &StageSet) -> Option<&ElementId> {
        self.sup0.iter().find(|(a, _)| a == t).map(|(_, e)| e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::FinitePoset;

    fn set(names: &[&str]) -> StageSet {
        names.iter().map(|n| ElementId::new(*n)).collect()
    }

    #[test]
    fn collapsed_chain_is_internally_complete() {
        let p = ArrowPoset::collapsed_chain(2);
        let report = internal_chain_complete(&p, &Caps::default()).unwrap();
        let InternalChainCompleteness::Complete { sup, verified } = report else {
            panic!("expected completeness");
        };
        assert_eq!(verified, (9, 2));
        // The empty pair lands on the bottom of the later stage.
        assert_eq!(sup.later(&set(&[]), &set(&[])).unwrap(), &ElementId::new("s0"));
        // An inhabited pair lands on its maximum.
        assert_eq!(
            sup.later(&set(&["s0", "s1"]), &set(&["pt0"])).unwrap(),
            &ElementId::new("s1")
        );
        assert_eq!(sup.earlier(&set(&["pt0"])).unwrap(), &ElementId::new("pt0"));
    }

    #[test]
    fn incomparable_later_fiber_over_a_point_fails() {
        let stage1 = FinitePoset::discrete(2, "x");
        let stage0 = FinitePoset::chain(1, "pt");
        let restrict = stage1
            .elements()
            .iter()
            .map(|e| (e.clone(), ElementId::new("pt0")))
            .collect();
        let p = ArrowPoset::new(stage1, stage0, restrict).unwrap();
        let report = internal_chain_complete(&p, &Caps::default()).unwrap();
        let InternalChainCompleteness::Failing { stage, chain1, candidates, .. } = report
        else {
            panic!("expected a failing chain");
        };
        assert_eq!(stage, Stage::Later);
        // The first chain in enumeration order is the empty pair; both
        // later elements bound it and neither is least.
        assert_eq!(chain1, Some((set(&[]), set(&[]))));
        assert_eq!(candidates, vec![ElementId::new("x0"), ElementId::new("x1")]);
        assert!(!internal_chain_complete(&p, &Caps::default()).unwrap().is_complete());
    }

    #[test]
    fn collapsing_a_diamond_over_a_point_is_complete() {
        let stage1 = FinitePoset::diamond();
        let stage0 = FinitePoset::chain(1, "pt");
        let restrict = stage1
            .elements()
            .iter()
            .map(|e| (e.clone(), ElementId::new("pt0")))
            .collect();
        let p = ArrowPoset::new(stage1, stage0, restrict).unwrap();
        assert!(internal_chain_complete(&p, &Caps::default()).unwrap().is_complete());
    }

    #[test]
    fn both_stages_complete_does_not_make_the_pair_complete() {
        // Each stage is a finite poset with a bottom, hence complete on
        // its own. But the elements restricting above p1 are a, b, top
        // with no least member, so the pair (empty, {p1}) has bounds
        // and still no least bound.
        let stage1 = FinitePoset::diamond();
        let stage0 = FinitePoset::chain(2, "p");
        let r = |s: &str, t: &str| (ElementId::new(s), ElementId::new(t));
        let restrict =
            [r("bot", "p0"), r("a", "p1"), r("b", "p1"), r("top", "p1")].into();
        let p = ArrowPoset::new(stage1, stage0, restrict).unwrap();
        let report = internal_chain_complete(&p, &Caps::default()).unwrap();
        let InternalChainCompleteness::Failing { stage, chain1, candidates, .. } = report
        else {
            panic!("expected a failing chain");
        };
        assert_eq!(stage, Stage::Later);
        assert_eq!(chain1, Some((set(&[]), set(&["p1"]))));
        assert_eq!(
            candidates,
            vec![ElementId::new("a"), ElementId::new("b"), ElementId::new("top")]
        );
    }
}
