//! Subset and chain objects of a two-stage carrier. A stage-1 "subset"
//! is a pair: a set of later elements together with a set of earlier
//! ones that contains all their shadows; a stage-0 subset is plain. The
//! chain object keeps only the pairs whose sets are totally ordered at
//! their own stage.

use super::poset::ArrowPoset;
use crate::caps::Caps;
use crate::element::ElementId;
use crate::order::{FinitePoset, OrderError};
use std::collections::BTreeSet;

pub type StageSet = BTreeSet<ElementId>;

/// All subsets of stage 0, and all subset pairs `(S, T)` with the
/// shadows of `S` inside `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerObjectOfX {
    pub stage1: Vec<(StageSet, StageSet)>,
    pub stage0: Vec<StageSet>,
}

/// The sub-collection of the power object whose sets are chains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainObjectOfP {
    pub stage1: Vec<(StageSet, StageSet)>,
    pub stage0: Vec<StageSet>,
}

fn check_stage_caps(p: &ArrowPoset, caps: &Caps, what: &'static str) -> Result<(), OrderError> {
    for stage in [p.stage1(), p.stage0()] {
        if stage.len() > caps.arrow_stage_elements {
            return Err(OrderError::SizeLimit {
                what,
                size: stage.len(),
                cap: caps.arrow_stage_elements,
            });
        }
    }
    Ok(())
}

fn subsets(p: &FinitePoset, chains_only: bool) -> Vec<StageSet> {
    let n = p.len();
    let mut out = Vec::new();
    'mask: for mask in 0u64..(1u64 << n) {
        let picked: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if chains_only {
            for (k, &i) in picked.iter().enumerate() {
                for &j in &picked[k + 1..] {
                    if !p.le_idx(i, j) && !p.le_idx(j, i) {
                        continue 'mask;
                    }
                }
            }
        }
        out.push(picked.iter().map(|&i| p.elements()[i].clone()).collect());
    }
    out
}

fn shadows_inside(p: &ArrowPoset, s: &StageSet, t: &StageSet) -> bool {
    s.iter().all(|a| t.contains(p.restrict(a).expect("stage-1 element")))
}

fn paired(p: &ArrowPoset, chains_only: bool) -> (Vec<(StageSet, StageSet)>, Vec<StageSet>) {
    let stage0 = subsets(p.stage0(), chains_only);
    let stage1_sets = subsets(p.stage1(), chains_only);
    let mut stage1 = Vec::new();
    for s in &stage1_sets {
        for t in &stage0 {
            if shadows_inside(p, s, t) {
                stage1.push((s.clone(), t.clone()));
            }
        }
    }
    (stage1, stage0)
}

/// Sizes grow as the product of the per-stage subset counts, so both
/// stages are capped.
pub fn power_object(p: &ArrowPoset, caps: &Caps) -> Result<PowerObjectOfX, OrderError> {
    check_stage_caps(p, caps, "power object stage")?;
    let (stage1, stage0) = paired(p, false);
    Ok(PowerObjectOfX { stage1, stage0 })
}

pub fn internal_chain_object(
    p: &ArrowPoset,
    caps: &Caps,
) -> Result<ChainObjectOfP, OrderError> {
    check_stage_caps(p, caps, "chain object stage")?;
    let (stage1, stage0) = paired(p, true);
    Ok(ChainObjectOfP { stage1, stage0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collapsed_two_chain_counts() {
        let p = ArrowPoset::collapsed_chain(2);
        let ch = internal_chain_object(&p, &Caps::default()).unwrap();
        // Eight chains upstairs; the empty one pairs with both earlier
        // chains, the seven inhabited ones only with the full point.
        assert_eq!(ch.stage0.len(), 2);
        assert_eq!(ch.stage1.len(), 9);
    }

    #[test]
    fn collapsed_point_counts() {
        let p = ArrowPoset::collapsed_chain(0);
        let ch = internal_chain_object(&p, &Caps::default()).unwrap();
        assert_eq!(ch.stage0.len(), 2);
        assert_eq!(ch.stage1.len(), 3);
    }

    #[test]
    fn power_object_pairs_outnumber_chain_pairs() {
        let stage1 = FinitePoset::discrete(2, "x");
        let stage0 = FinitePoset::chain(1, "pt");
        let restrict = stage1
            .elements()
            .iter()
            .map(|e| (e.clone(), ElementId::new("pt0")))
            .collect();
        let p = ArrowPoset::new(stage1, stage0, restrict).unwrap();
        let pw = power_object(&p, &Caps::default()).unwrap();
        let ch = internal_chain_object(&p, &Caps::default()).unwrap();
        // The two-element antichain is a subset but not a chain.
        assert_eq!(pw.stage0.len(), 2);
        assert_eq!(pw.stage1.len(), 4 + 1); // {} pairs twice, others once
        assert_eq!(ch.stage1.len(), 3 + 1);
        assert!(pw.stage1.len() > ch.stage1.len());
    }

    #[test]
    fn stage_cap_is_enforced() {
        let p = ArrowPoset::collapsed_chain(9);
        assert!(matches!(
            internal_chain_object(&p, &Caps::default()),
            Err(OrderError::SizeLimit { .. })
        ));
    }
}
