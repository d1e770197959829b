//! The two-stage carrier and its self-maps.

use crate::element::{Element, ElementId};
use crate::order::{classify_map, EndoMap, FinitePoset, MapRule, OrderError, PosetHandle};
use std::collections::BTreeMap;
use std::fmt;

/// A poset at each stage plus a monotone restriction from the later
/// stage to the earlier one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowPoset {
    stage1: FinitePoset,
    stage0: FinitePoset,
    restrict: BTreeMap<ElementId, ElementId>,
}

impl ArrowPoset {
    pub fn new(
        stage1: FinitePoset,
        stage0: FinitePoset,
        restrict: BTreeMap<ElementId, ElementId>,
    ) -> Result<Self, OrderError> {
        for a in stage1.elements() {
            match restrict.get(a) {
                None => {
                    return Err(OrderError::PartialFunction { at: Element::Id(a.clone()) })
                }
                Some(img) if !stage0.contains(img) => {
                    return Err(OrderError::MapsOutside {
                        from: Element::Id(a.clone()),
                        to: Element::Id(img.clone()),
                    })
                }
                Some(_) => {}
            }
        }
        for key in restrict.keys() {
            if !stage1.contains(key) {
                return Err(OrderError::UnknownElement(key.to_string()));
            }
        }
        for a in stage1.elements() {
            for b in stage1.elements() {
                if stage1.le(a, b)? && !stage0.le(&restrict[a], &restrict[b])? {
                    return Err(OrderError::InvalidWitness(format!(
                        "restriction is not monotone: {a} <= {b} but {} and {} are not ordered",
                        restrict[a], restrict[b]
                    )));
                }
            }
        }
        Ok(ArrowPoset { stage1, stage0, restrict })
    }

    /// Later stage a chain of `n + 1` points collapsing onto a single
    /// earlier point — the standard stress-test carrier.
    pub fn collapsed_chain(n: usize) -> Self {
        let stage1 = FinitePoset::chain(n + 1, "s");
        let stage0 = FinitePoset::chain(1, "pt");
        let restrict = stage1
            .elements()
            .iter()
            .map(|e| (e.clone(), ElementId::new("pt0")))
            .collect();
        ArrowPoset::new(stage1, stage0, restrict).expect("collapse is monotone")
    }

    pub fn stage1(&self) -> &FinitePoset {
        &self.stage1
    }

    pub fn stage0(&self) -> &FinitePoset {
        &self.stage0
    }

    pub fn restrict(&self, a: &ElementId) -> Result<&ElementId, OrderError> {
        self.restrict
            .get(a)
            .ok_or_else(|| OrderError::UnknownElement(a.to_string()))
    }

    pub fn restrict_table(&self) -> &BTreeMap<ElementId, ElementId> {
        &self.restrict
    }
}

impl fmt::Display for ArrowPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "two-stage poset [{} -> {}]",
            self.stage1.len(),
            self.stage0.len()
        )
    }
}

/// A self-map given stage by stage, commuting with restriction. The two
/// components are classified individually, so the whole map knows
/// whether it is progressive and monotone at every stage.
#[derive(Clone, Debug)]
pub struct ArrowEndoMap {
    poset: ArrowPoset,
    stage1: EndoMap,
    stage0: EndoMap,
}

pub fn classify_arrow_map(
    poset: ArrowPoset,
    table1: BTreeMap<ElementId, ElementId>,
    table0: BTreeMap<ElementId, ElementId>,
) -> Result<ArrowEndoMap, OrderError> {
    let stage1 = classify_map(
        PosetHandle::Finite(poset.stage1.clone()),
        MapRule::Table(table1),
    )?;
    let stage0 = classify_map(
        PosetHandle::Finite(poset.stage0.clone()),
        MapRule::Table(table0),
    )?;
    for a in poset.stage1.elements() {
        let image1 = match stage1.apply(&Element::Id(a.clone()))? {
            Element::Id(id) => id,
            _ => unreachable!("stage tables produce ids"),
        };
        let mapped_then_restricted = poset.restrict(&image1)?.clone();
        let restricted_then_mapped =
            match stage0.apply(&Element::Id(poset.restrict(a)?.clone()))? {
                Element::Id(id) => id,
                _ => unreachable!("stage tables produce ids"),
            };
        if mapped_then_restricted != restricted_then_mapped {
            return Err(OrderError::InvalidWitness(format!(
                "stage maps do not commute with restriction at {a}: \
                 {mapped_then_restricted} vs {restricted_then_mapped}"
            )));
        }
    }
    Ok(ArrowEndoMap { poset, stage1, stage0 })
}

impl ArrowEndoMap {
    pub fn poset(&self) -> &ArrowPoset {
        &self.poset
    }

    pub fn stage1(&self) -> &EndoMap {
        &self.stage1
    }

    pub fn stage0(&self) -> &EndoMap {
        &self.stage0
    }

    pub fn is_progressive(&self) -> bool {
        self.stage1.is_progressive() && self.stage0.is_progressive()
    }

    pub fn is_monotone(&self) -> bool {
        self.stage1.is_monotone() && self.stage0.is_monotone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(pairs: &[(&str, &str)]) -> BTreeMap<ElementId, ElementId> {
        pairs.iter().map(|(a, b)| (ElementId::new(*a), ElementId::new(*b))).collect()
    }

    #[test]
    fn collapsed_chain_shape() {
        let p = ArrowPoset::collapsed_chain(2);
        assert_eq!(p.stage1().len(), 3);
        assert_eq!(p.stage0().len(), 1);
        assert_eq!(p.restrict(&ElementId::new("s2")).unwrap(), &ElementId::new("pt0"));
    }

    #[test]
    fn non_monotone_restriction_is_rejected() {
        let stage1 = FinitePoset::chain(2, "a");
        let stage0 = FinitePoset::discrete(2, "b");
        let r = ids(&[("a0", "b1"), ("a1", "b0")]);
        assert!(matches!(
            ArrowPoset::new(stage1, stage0, r),
            Err(OrderError::InvalidWitness(_))
        ));
    }

    #[test]
    fn commuting_squares_classify() {
        let p = ArrowPoset::collapsed_chain(2);
        let f = classify_arrow_map(
            p,
            ids(&[("s0", "s1"), ("s1", "s2"), ("s2", "s2")]),
            ids(&[("pt0", "pt0")]),
        )
        .unwrap();
        assert!(f.is_progressive());
        assert!(f.is_monotone());
    }

    #[test]
    fn non_commuting_squares_are_rejected() {
        let stage1 = FinitePoset::chain(2, "a");
        let stage0 = FinitePoset::chain(2, "b");
        let p = ArrowPoset::new(
            stage1,
            stage0,
            ids(&[("a0", "b0"), ("a1", "b1")]),
        )
        .unwrap();
        // Stage 1 moves a0 up, stage 0 refuses to move its shadow.
        let bad = classify_arrow_map(
            p,
            ids(&[("a0", "a1"), ("a1", "a1")]),
            ids(&[("b0", "b0"), ("b1", "b1")]),
        );
        assert!(matches!(bad, Err(OrderError::InvalidWitness(_))));
    }
}
