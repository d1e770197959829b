//! Linear orders in the two-stage world. A two-stage linear order is a
//! strict total well-order at each stage together with a restriction
//! map that preserves strict precedence. Preserving `<` across stages
//! forces the restriction to be injective, so the later stage can never
//! be longer than the earlier one — a structural ceiling that the
//! blowup analysis in [`super::blowup`] exploits.

use crate::element::ElementId;
use crate::ordinal::{
    check_trichotomous_ordinal, FiniteStrictOrder, OrdinalCheck, OrdinalError, RejectReason,
};
use super::forcing::Stage;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Hard ceiling on fiber lengths accepted from external descriptions,
/// to keep carrier materialization bounded.
const FAMILY_FIBER_CAP: u64 = 4096;

/// A strict total order at each stage plus a precedence-preserving
/// restriction from the later stage to the earlier one.
#[derive(Clone, Debug)]
pub struct ArrowOrdinal {
    stage1: FiniteStrictOrder,
    stage0: FiniteStrictOrder,
    restrict: BTreeMap<ElementId, ElementId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ArrowOrdinalCheck {
    Accept {
        later_length: usize,
        earlier_length: usize,
    },
    /// One of the stages is not a strict total well-order.
    RejectStage { stage: Stage, reason: String },
    /// `a` strictly precedes `b` later, but their restrictions do not
    /// strictly precede each other earlier.
    RejectMap { a: ElementId, b: ElementId },
}

impl ArrowOrdinal {
    pub fn new(
        stage1: FiniteStrictOrder,
        stage0: FiniteStrictOrder,
        restrict: BTreeMap<ElementId, ElementId>,
    ) -> Result<Self, OrdinalError> {
        for a in stage1.elements() {
            let img = restrict
                .get(a)
                .ok_or_else(|| OrdinalError::UnknownElement(a.to_string()))?;
            if !stage0.elements().contains(img) {
                return Err(OrdinalError::UnknownElement(img.to_string()));
            }
        }
        for a in restrict.keys() {
            if !stage1.elements().contains(a) {
                return Err(OrdinalError::UnknownElement(a.to_string()));
            }
        }
        Ok(ArrowOrdinal { stage1, stage0, restrict })
    }

    pub fn stage1(&self) -> &FiniteStrictOrder {
        &self.stage1
    }

    pub fn stage0(&self) -> &FiniteStrictOrder {
        &self.stage0
    }

    pub fn restrict(&self, a: &ElementId) -> Result<&ElementId, OrdinalError> {
        self.restrict
            .get(a)
            .ok_or_else(|| OrdinalError::UnknownElement(a.to_string()))
    }
}

fn reject_text(r: &RejectReason) -> String {
    format!("{r:?}")
}

/// Accept a two-stage order when both stages pass the strict-order
/// axioms and the restriction preserves strict precedence. On accept,
/// the derived facts — injectivity of the restriction and the length
/// ceiling — are confirmed rather than trusted.
pub fn check_arrow_ordinal(o: &ArrowOrdinal) -> Result<ArrowOrdinalCheck, OrdinalError> {
    let later_length = match check_trichotomous_ordinal(o.stage1()) {
        OrdinalCheck::Accept { length } => length,
        OrdinalCheck::Reject { reason } => {
            return Ok(ArrowOrdinalCheck::RejectStage {
                stage: Stage::Later,
                reason: reject_text(&reason),
            })
        }
    };
    let earlier_length = match check_trichotomous_ordinal(o.stage0()) {
        OrdinalCheck::Accept { length } => length,
        OrdinalCheck::Reject { reason } => {
            return Ok(ArrowOrdinalCheck::RejectStage {
                stage: Stage::Earlier,
                reason: reject_text(&reason),
            })
        }
    };
    for a in o.stage1().elements() {
        for b in o.stage1().elements() {
            if o.stage1().lt(a, b) && !o.stage0().lt(o.restrict(a)?, o.restrict(b)?) {
                return Ok(ArrowOrdinalCheck::RejectMap { a: a.clone(), b: b.clone() });
            }
        }
    }
    // Confirm the consequences instead of assuming them: distinct later
    // elements are strictly ordered, so their images are strictly
    // ordered, hence distinct.
    let mut images: Vec<&ElementId> = Vec::new();
    for a in o.stage1().elements() {
        images.push(o.restrict(a)?);
    }
    let mut distinct = images.clone();
    distinct.sort();
    distinct.dedup();
    if distinct.len() != images.len() || later_length > earlier_length {
        return Err(OrdinalError::NonCanonical(
            "a precedence-preserving restriction must embed the later stage".into(),
        ));
    }
    Ok(ArrowOrdinalCheck::Accept { later_length, earlier_length })
}

/// One later-stage fiber of a family description: the earlier fiber it
/// sits over and the positions its steps occupy there, in strictly
/// increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFiber {
    pub target: ElementId,
    pub embed: Vec<u64>,
}

/// A family of fiberwise linear orders over a two-stage base: each
/// earlier index carries a finite chain of the given length, each later
/// index carries a chain embedded into its target's chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowOrdinalFamily {
    pub b0: BTreeMap<ElementId, u64>,
    pub b1: BTreeMap<ElementId, FamilyFiber>,
}

impl ArrowOrdinalFamily {
    /// Every fiber must materialize to a two-stage order accepted by
    /// [`check_arrow_ordinal`]; the check is delegated rather than
    /// re-implemented so family acceptance and order acceptance can
    /// never drift apart.
    pub fn validate(&self) -> Result<(), OrdinalError> {
        for len in self.b0.values() {
            if *len > FAMILY_FIBER_CAP {
                return Err(OrdinalError::CarrierTooLarge {
                    size: *len as usize,
                    cap: FAMILY_FIBER_CAP as usize,
                });
            }
        }
        for (id, fiber) in &self.b1 {
            let target_len = self.b0.get(&fiber.target).ok_or_else(|| {
                OrdinalError::UnknownElement(format!(
                    "{id} names target {} which the earlier family lacks",
                    fiber.target
                ))
            })?;
            let arrow = fiber_as_arrow_ordinal(fiber, *target_len)?;
            match check_arrow_ordinal(&arrow)? {
                ArrowOrdinalCheck::Accept { .. } => {}
                other => {
                    return Err(OrdinalError::NonCanonical(format!(
                        "fiber over {id} is not a two-stage order: {other:?}"
                    )))
                }
            }
        }
        Ok(())
    }

    /// Length of the later chain over a later-stage index.
    pub fn later_len(&self, id: &ElementId) -> Option<u64> {
        self.b1.get(id).map(|f| f.embed.len() as u64)
    }
}

/// Materialize one fiber as canonical chains joined by the embedding.
fn fiber_as_arrow_ordinal(
    fiber: &FamilyFiber,
    target_len: u64,
) -> Result<ArrowOrdinal, OrdinalError> {
    if fiber.embed.len() as u64 > FAMILY_FIBER_CAP {
        return Err(OrdinalError::CarrierTooLarge {
            size: fiber.embed.len(),
            cap: FAMILY_FIBER_CAP as usize,
        });
    }
    let stage1 = FiniteStrictOrder::canonical(fiber.embed.len(), "f");
    let stage0 = FiniteStrictOrder::canonical(target_len as usize, "g");
    let mut restrict = BTreeMap::new();
    for (i, pos) in fiber.embed.iter().enumerate() {
        if *pos >= target_len {
            return Err(OrdinalError::UnknownElement(format!(
                "position {pos} lies outside a chain of length {target_len}"
            )));
        }
        restrict.insert(ElementId::new(format!("f{i}")), ElementId::new(format!("g{pos}")));
    }
    ArrowOrdinal::new(stage1, stage0, restrict)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn embed_order(later: usize, earlier: usize, embed: &[usize]) -> ArrowOrdinal {
        let stage1 = FiniteStrictOrder::canonical(later, "f");
        let stage0 = FiniteStrictOrder::canonical(earlier, "g");
        let restrict = embed
            .iter()
            .enumerate()
            .map(|(i, p)| (ElementId::new(format!("f{i}")), ElementId::new(format!("g{p}"))))
            .collect();
        ArrowOrdinal::new(stage1, stage0, restrict).unwrap()
    }

    #[test]
    fn monotone_embedding_is_accepted_with_both_lengths() {
        let o = embed_order(2, 4, &[1, 3]);
        assert_eq!(
            check_arrow_ordinal(&o).unwrap(),
            ArrowOrdinalCheck::Accept { later_length: 2, earlier_length: 4 }
        );
    }

    #[test]
    fn precedence_must_be_strict_across_stages() {
        // Both later elements restrict to the same earlier point, so
        // f0 < f1 collapses.
        let o = embed_order(2, 4, &[2, 2]);
        assert_eq!(
            check_arrow_ordinal(&o).unwrap(),
            ArrowOrdinalCheck::RejectMap {
                a: ElementId::new("f0"),
                b: ElementId::new("f1")
            }
        );
    }

    #[test]
    fn order_reversal_is_rejected_as_a_map_defect() {
        let o = embed_order(2, 4, &[3, 1]);
        assert!(matches!(
            check_arrow_ordinal(&o).unwrap(),
            ArrowOrdinalCheck::RejectMap { .. }
        ));
    }

    #[test]
    fn a_cyclic_stage_is_rejected_at_that_stage() {
        let e = |s: &str| ElementId::new(s);
        let stage1 = FiniteStrictOrder::new(
            [e("u"), e("v")],
            [(e("u"), e("v")), (e("v"), e("u"))],
        )
        .unwrap();
        let stage0 = FiniteStrictOrder::canonical(1, "g");
        let restrict =
            [(e("u"), e("g0")), (e("v"), e("g0"))].into_iter().collect();
        let o = ArrowOrdinal::new(stage1, stage0, restrict).unwrap();
        assert!(matches!(
            check_arrow_ordinal(&o).unwrap(),
            ArrowOrdinalCheck::RejectStage { stage: Stage::Later, .. }
        ));
    }

    #[test]
    fn family_fibers_are_validated_through_the_order_check() {
        let e = |s: &str| ElementId::new(s);
        let mut b0 = BTreeMap::new();
        b0.insert(e("p"), 3u64);
        let mut b1 = BTreeMap::new();
        b1.insert(e("x"), FamilyFiber { target: e("p"), embed: vec![0, 2] });
        let fam = ArrowOrdinalFamily { b0: b0.clone(), b1 };
        fam.validate().unwrap();

        let mut bad = BTreeMap::new();
        bad.insert(e("x"), FamilyFiber { target: e("p"), embed: vec![2, 0] });
        let fam = ArrowOrdinalFamily { b0: b0.clone(), b1: bad };
        assert!(fam.validate().is_err());

        let mut outside = BTreeMap::new();
        outside.insert(e("x"), FamilyFiber { target: e("p"), embed: vec![0, 7] });
        let fam = ArrowOrdinalFamily { b0, b1: outside };
        assert!(fam.validate().is_err());
    }
}
