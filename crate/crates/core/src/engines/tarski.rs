//! The intersection-of-prefixed-points construction: on a complete
//! lattice, the meet of every point the map pulls downward is the least
//! fixed point above the start.

use crate::caps::Caps;
use crate::element::Element;
use crate::order::{CheckMethod, EndoMap, FixedPointWitness, OrderError};
use crate::order::FinitePoset;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LatticeCheck {
    Lattice {
        method: CheckMethod,
    },
    /// A subset with no meet or no join; `missing` names which bound.
    NotLattice {
        subset: Vec<Element>,
        missing: &'static str,
    },
}

impl LatticeCheck {
    pub fn is_lattice(&self) -> bool {
        matches!(self, LatticeCheck::Lattice { .. })
    }
}

/// Does every subset have a meet and a join? Small carriers are swept
/// subset by subset; larger ones use the finite-lattice criterion that
/// pairwise bounds plus both extremes generate all bounds.
pub fn complete_lattice_check(p: &FinitePoset, caps: &Caps) -> LatticeCheck {
    let n = p.len();
    let describe = |idx: &[usize]| -> Vec<Element> {
        idx.iter().map(|&i| Element::Id(p.elements()[i].clone())).collect()
    };
    if n <= caps.chain_enum_elements {
        for mask in 0u64..(1u64 << n) {
            let picked: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if p.lub_idx(&picked).is_none() {
                return LatticeCheck::NotLattice {
                    subset: describe(&picked),
                    missing: "a least upper bound",
                };
            }
            if p.glb_idx(&picked).is_none() {
                return LatticeCheck::NotLattice {
                    subset: describe(&picked),
                    missing: "a greatest lower bound",
                };
            }
        }
        LatticeCheck::Lattice { method: CheckMethod::Exhaustive }
    } else {
        if p.bottom_idx().is_none() {
            return LatticeCheck::NotLattice {
                subset: Vec::new(),
                missing: "a least upper bound",
            };
        }
        if p.top_idx().is_none() {
            return LatticeCheck::NotLattice {
                subset: Vec::new(),
                missing: "a greatest lower bound",
            };
        }
        for i in 0..n {
            for j in i + 1..n {
                if p.lub_idx(&[i, j]).is_none() {
                    return LatticeCheck::NotLattice {
                        subset: describe(&[i, j]),
                        missing: "a least upper bound",
                    };
                }
                if p.glb_idx(&[i, j]).is_none() {
                    return LatticeCheck::NotLattice {
                        subset: describe(&[i, j]),
                        missing: "a greatest lower bound",
                    };
                }
            }
        }
        LatticeCheck::Lattice { method: CheckMethod::PairwiseBoundCriterion }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TarskiReport {
    pub witness: FixedPointWitness,
    /// How many points at or above the start the map pulls downward.
    pub prefixed_count: usize,
    pub lattice_method: CheckMethod,
    /// Confirmed against every fixed point at or above the start.
    pub least_verified: bool,
}

/// Least fixed point of a monotone map on a finite complete lattice,
/// computed as the meet of `{ y : above <= y and f(y) <= y }` and then
/// re-verified: the meet is literally fixed and literally below every
/// other fixed point above the start.
pub fn tarski_lfp(
    map: &EndoMap,
    above: &Element,
    caps: &Caps,
) -> Result<TarskiReport, OrderError> {
    let p = match map.poset().as_finite() {
        Some(p) => p,
        None => {
            return Err(OrderError::EngineRequires {
                engine: "tarski",
                requirement: "a finite carrier",
            })
        }
    };
    if !map.is_monotone() {
        return Err(OrderError::EngineRequires {
            engine: "tarski",
            requirement: "a monotone map",
        });
    }
    let lattice_method = match complete_lattice_check(p, caps) {
        LatticeCheck::Lattice { method } => method,
        LatticeCheck::NotLattice { subset, missing } => {
            let names: Vec<String> = subset.iter().map(|e| e.to_string()).collect();
            return Err(OrderError::NotCompleteLattice(format!(
                "subset {{{}}} has no {missing}",
                names.join(", ")
            )));
        }
    };
    let above_idx = match above.as_id().and_then(|id| p.index_of(id).ok()) {
        Some(i) => i,
        None => return Err(OrderError::UnknownElement(above.to_string())),
    };
    let prefixed: Vec<usize> = (0..p.len())
        .filter(|&y| {
            let el = Element::Id(p.elements()[y].clone());
            let image = map.apply(&el).expect("carrier element");
            p.le_idx(above_idx, y)
                && p.le_idx(p.index_of(image.as_id().expect("finite table image")).unwrap(), y)
        })
        .collect();
    let z = p
        .glb_idx(&prefixed)
        .expect("a complete lattice has all meets");
    let point = Element::Id(p.elements()[z].clone());
    let witness = FixedPointWitness::checked("tarski", map, above.clone(), point)?;
    let least_verified = (0..p.len()).all(|y| {
        let el = Element::Id(p.elements()[y].clone());
        let fixed = map.apply(&el).expect("carrier element") == el;
        !(fixed && p.le_idx(above_idx, y)) || p.le_idx(z, y)
    });
    if !least_verified {
        return Err(OrderError::InvalidWitness(
            "tarski: meet of prefixed points is not least among fixed points".into(),
        ));
    }
    Ok(TarskiReport { witness, prefixed_count: prefixed.len(), lattice_method, least_verified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::ElementId;
    use crate::order::{classify_map, MapRule, PosetHandle};

    fn table(pairs: &[(&str, &str)]) -> MapRule {
        MapRule::Table(
            pairs.iter().map(|(a, b)| (ElementId::new(*a), ElementId::new(*b))).collect(),
        )
    }

    #[test]
    fn diamond_meet_of_prefixed_points() {
        let f = classify_map(
            PosetHandle::Finite(FinitePoset::diamond()),
            table(&[("bot", "a"), ("a", "a"), ("b", "top"), ("top", "top")]),
        )
        .unwrap();
        let r = tarski_lfp(&f, &Element::id("bot"), &Caps::default()).unwrap();
        assert_eq!(r.witness.point, Element::id("a"));
        assert_eq!(r.prefixed_count, 2); // a and top
        assert!(r.least_verified);
    }

    #[test]
    fn v_shape_is_not_a_lattice() {
        let v = FinitePoset::new(
            [ElementId::new("bot"), ElementId::new("a"), ElementId::new("b")],
            [
                (ElementId::new("bot"), ElementId::new("a")),
                (ElementId::new("bot"), ElementId::new("b")),
            ],
        )
        .unwrap();
        assert!(!complete_lattice_check(&v, &Caps::default()).is_lattice());
        let f = classify_map(
            PosetHandle::Finite(v),
            table(&[("bot", "bot"), ("a", "a"), ("b", "b")]),
        )
        .unwrap();
        assert!(matches!(
            tarski_lfp(&f, &Element::id("bot"), &Caps::default()),
            Err(OrderError::NotCompleteLattice(_))
        ));
    }

    #[test]
    fn large_chain_uses_the_pairwise_criterion() {
        let mut caps = Caps::default();
        caps.chain_enum_elements = 4;
        let c = FinitePoset::chain(9, "c");
        assert_eq!(
            complete_lattice_check(&c, &caps),
            LatticeCheck::Lattice { method: CheckMethod::PairwiseBoundCriterion }
        );
        let step: Vec<(String, String)> =
            (0..9).map(|i| (format!("c{i}"), format!("c{}", (i + 1).min(8)))).collect();
        let rule = MapRule::Table(
            step.iter().map(|(a, b)| (ElementId::new(a.clone()), ElementId::new(b.clone()))).collect(),
        );
        let f = classify_map(PosetHandle::Finite(c), rule).unwrap();
        let r = tarski_lfp(&f, &Element::id("c3"), &caps).unwrap();
        assert_eq!(r.witness.point, Element::id("c8"));
        assert_eq!(r.lattice_method, CheckMethod::PairwiseBoundCriterion);
    }

    #[test]
    fn non_monotone_maps_are_refused() {
        // bot <= b, yet the images a and b are incomparable.
        let f = classify_map(
            PosetHandle::Finite(FinitePoset::diamond()),
            table(&[("bot", "a"), ("a", "a"), ("b", "b"), ("top", "top")]),
        )
        .unwrap();
        assert!(!f.is_monotone());
        assert!(matches!(
            tarski_lfp(&f, &Element::id("bot"), &Caps::default()),
            Err(OrderError::EngineRequires { .. })
        ));
    }
}
