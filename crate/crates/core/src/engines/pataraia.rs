//! The directed-family-of-maps construction. Restrict attention to the
//! orbit of the start (an ascending chain, and the smallest sub-carrier
//! containing the start that is closed under the map and under suprema
//! of its directed subsets — in a finite carrier those suprema are
//! maxima and come for free). On that sub-carrier, take the family of
//! *all* progressive monotone self-maps: the family is directed, because
//! composing two members bounds both, so it has a largest member, and
//! applying any member after the largest one changes nothing. Evaluating
//! the largest member at the start therefore lands on a point every
//! member fixes at once — the original map included.

use super::operator::enumerate_progressive_monotone;
use crate::caps::Caps;
use crate::element::{Element, ElementId};
use crate::order::{EndoMap, FinitePoset, FixedPointWitness, OrderError};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug)]
pub struct PataraiaReport {
    /// The orbit of the start under the map, as a carrier of its own.
    pub orbit: FinitePoset,
    /// How many progressive monotone self-maps the orbit admits.
    pub family_size: usize,
    /// The largest member of that family.
    pub top_map: BTreeMap<ElementId, ElementId>,
    /// Every composition of two members was found back in the family,
    /// sitting above both.
    pub directed_verified: bool,
    pub witness: FixedPointWitness,
    /// The answer sits below every fixed point at or above the start.
    pub least_verified: bool,
}

pub fn pataraia_fix(
    map: &EndoMap,
    above: &Element,
    caps: &Caps,
) -> Result<PataraiaReport, OrderError> {
    let p = match map.poset().as_finite() {
        Some(p) => p,
        None => {
            return Err(OrderError::EngineRequires {
                engine: "pataraia",
                requirement: "a finite carrier",
            })
        }
    };
    if !map.is_progressive() {
        return Err(OrderError::EngineRequires {
            engine: "pataraia",
            requirement: "a progressive map",
        });
    }
    // Orbit of the start: an ascending chain, so every directed subset
    // already contains its supremum, and closure under the map suffices.
    let mut orbit_ids: BTreeSet<ElementId> = BTreeSet::new();
    let mut current = above.clone();
    loop {
        let id = current
            .as_id()
            .ok_or_else(|| OrderError::UnknownElement(current.to_string()))?
            .clone();
        if !orbit_ids.insert(id) {
            break;
        }
        if orbit_ids.len() > caps.pataraia_q {
            return Err(OrderError::SizeLimit {
                what: "orbit sub-carrier",
                size: orbit_ids.len(),
                cap: caps.pataraia_q,
            });
        }
        current = map.apply(&current)?;
    }
    let orbit = p.restriction(&orbit_ids)?;

    let family = enumerate_progressive_monotone(&orbit, caps.prog_maps)?;
    let known: BTreeSet<&Vec<usize>> = family.iter().collect();
    let compose = |g: &[usize], h: &[usize]| -> Vec<usize> {
        h.iter().map(|&x| g[x]).collect()
    };
    let pointwise_ge = |g: &[usize], h: &[usize]| -> bool {
        g.iter().zip(h).all(|(&a, &b)| orbit.le_idx(b, a))
    };
    let mut directed_verified = true;
    for g in &family {
        for h in &family {
            let c = compose(g, h);
            if !known.contains(&c) || !pointwise_ge(&c, g) || !pointwise_ge(&c, h) {
                directed_verified = false;
            }
        }
    }
    if !directed_verified {
        return Err(OrderError::InvalidWitness(
            "pataraia: the self-map family failed its directedness check".into(),
        ));
    }

    // The largest member: compose everything, then confirm it dominates
    // and absorbs every member.
    let mut top: Vec<usize> = (0..orbit.len()).collect();
    for g in &family {
        top = compose(g, &top);
    }
    if !known.contains(&top) {
        return Err(OrderError::InvalidWitness(
            "pataraia: composite of the family is not in the family".into(),
        ));
    }
    for g in &family {
        if !pointwise_ge(&top, g) || compose(g, &top) != top {
            return Err(OrderError::InvalidWitness(
                "pataraia: composite of the family is not its largest member".into(),
            ));
        }
    }

    let above_in_orbit = orbit.index_of(above.as_id().expect("checked above"))?;
    let point = Element::Id(orbit.elements()[top[above_in_orbit]].clone());
    let witness = FixedPointWitness::checked("pataraia", map, above.clone(), point)?;

    let least_verified = p.elements().iter().all(|y| {
        let el = Element::Id(y.clone());
        let fixed = map.apply(&el).expect("carrier element") == el;
        let above_start = map.poset().le(above, &el).expect("carrier elements");
        !(fixed && above_start) || map.poset().le(&witness.point, &el).expect("carrier elements")
    });

    let top_map = orbit
        .elements()
        .iter()
        .enumerate()
        .map(|(i, id)| (id.clone(), orbit.elements()[top[i]].clone()))
        .collect();

    Ok(PataraiaReport {
        orbit,
        family_size: family.len(),
        top_map,
        directed_verified,
        witness,
        least_verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{classify_map, MapRule, PosetHandle};

    fn table(pairs: &[(&str, &str)]) -> MapRule {
        MapRule::Table(
            pairs.iter().map(|(a, b)| (ElementId::new(*a), ElementId::new(*b))).collect(),
        )
    }

    #[test]
    fn capped_successor_on_the_three_chain() {
        let f = classify_map(
            PosetHandle::Finite(FinitePoset::chain(3, "c")),
            table(&[("c0", "c1"), ("c1", "c2"), ("c2", "c2")]),
        )
        .unwrap();
        let r = pataraia_fix(&f, &Element::id("c0"), &Caps::default()).unwrap();
        assert_eq!(r.orbit.len(), 3);
        assert_eq!(r.family_size, 5);
        assert!(r.directed_verified);
        // The largest member is the constant map to the top of the orbit.
        assert!(r.top_map.values().all(|v| *v == ElementId::new("c2")));
        assert_eq!(r.witness.point, Element::id("c2"));
        assert!(r.least_verified);
    }

    #[test]
    fn diamond_orbit_stays_on_one_side() {
        let f = classify_map(
            PosetHandle::Finite(FinitePoset::diamond()),
            table(&[("bot", "a"), ("a", "a"), ("b", "top"), ("top", "top")]),
        )
        .unwrap();
        let r = pataraia_fix(&f, &Element::id("bot"), &Caps::default()).unwrap();
        assert_eq!(r.orbit.len(), 2);
        assert_eq!(r.family_size, 2);
        assert_eq!(r.witness.point, Element::id("a"));
        assert!(r.least_verified);
    }

    #[test]
    fn orbit_cap_is_enforced() {
        let step: BTreeMap<ElementId, ElementId> = (0..9)
            .map(|i| (ElementId::new(format!("c{i}")), ElementId::new(format!("c{}", (i + 1).min(8)))))
            .collect();
        let f = classify_map(
            PosetHandle::Finite(FinitePoset::chain(9, "c")),
            MapRule::Table(step),
        )
        .unwrap();
        assert!(matches!(
            pataraia_fix(&f, &Element::id("c0"), &Caps::default()),
            Err(OrderError::SizeLimit { .. })
        ));
    }

    #[test]
    fn non_progressive_is_refused() {
        let f = classify_map(
            PosetHandle::Finite(FinitePoset::chain(2, "c")),
            table(&[("c0", "c0"), ("c1", "c0")]),
        )
        .unwrap();
        assert!(matches!(
            pataraia_fix(&f, &Element::id("c0"), &Caps::default()),
            Err(OrderError::EngineRequires { .. })
        ));
    }
}
