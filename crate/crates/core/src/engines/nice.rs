//! Fixed points for *monotone* maps via the progressive machinery: the
//! carrier of "growable" chains. A growable chain sits inside the set of
//! points below their own image; growing it by the supremum of its image
//! is a progressive step on the inclusion order, and the chain that step
//! stabilizes on tops out at a fixed point of the original map.

use super::iterate::iterative_fix_oracle;
use crate::caps::Caps;
use crate::element::{Element, ElementId};
use crate::order::{
    check_chain_complete_finite, classify_map, EndoMap, FinitePoset, FixedPointWitness, MapRule,
    OrderError, PosetHandle,
};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct KtReport {
    /// How many points at or above the start sit below their own image.
    pub postfixed_size: usize,
    /// All chains of such points, ordered by inclusion.
    pub chain_carrier: FinitePoset,
    pub fixed_chain: Vec<Element>,
    pub witness: FixedPointWitness,
    /// The answer sits below every fixed point at or above the start.
    pub least_verified: bool,
}

pub fn kt_via_bw(map: &EndoMap, above: &Element, caps: &Caps) -> Result<KtReport, OrderError> {
    if map.poset().as_finite().is_none() {
        return Err(OrderError::EngineRequires {
            engine: "kt",
            requirement: "a finite carrier",
        });
    }
    if !map.is_monotone() {
        return Err(OrderError::EngineRequires {
            engine: "kt",
            requirement: "a monotone map",
        });
    }
    let image_of_start = map.apply(above)?;
    if !map.poset().le(above, &image_of_start)? {
        return Err(OrderError::EngineRequires {
            engine: "kt",
            requirement: "a start below its image",
        });
    }
    let up = map.poset().up_set(above)?;
    let base = up.as_finite().expect("up-set of a finite carrier").clone();
    if !check_chain_complete_finite(&base, caps).is_complete() {
        return Err(OrderError::EngineRequires {
            engine: "kt",
            requirement: "suprema for all chains above the start",
        });
    }
    let n = base.len();
    if n > caps.chain_enum_elements {
        return Err(OrderError::SizeLimit {
            what: "chain enumeration carrier",
            size: n,
            cap: caps.chain_enum_elements,
        });
    }

    let image_idx: Vec<usize> = (0..n)
        .map(|i| {
            let el = Element::Id(base.elements()[i].clone());
            let img = map.apply(&el).expect("carrier element");
            base.index_of(img.as_id().expect("finite image"))
                .expect("a monotone map keeps the up-set of a postfixed start")
        })
        .collect();
    let postfixed: Vec<bool> = (0..n).map(|i| base.le_idx(i, image_idx[i])).collect();
    let postfixed_size = postfixed.iter().filter(|&&b| b).count();

    // Chains of postfixed points, as bitmasks over the base.
    let mut chains: Vec<(ElementId, u64)> = Vec::new();
    'mask: for mask in 0u64..(1u64 << n) {
        let picked: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        for &i in &picked {
            if !postfixed[i] {
                continue 'mask;
            }
        }
        for (k, &i) in picked.iter().enumerate() {
            for &j in &picked[k + 1..] {
                if !base.le_idx(i, j) && !base.le_idx(j, i) {
                    continue 'mask;
                }
            }
        }
        let names: Vec<String> =
            picked.iter().map(|&i| base.elements()[i].to_string()).collect();
        chains.push((ElementId::new(format!("{{{}}}", names.join(","))), mask));
    }
    chains.sort();
    let mask_to_id: BTreeMap<u64, ElementId> =
        chains.iter().map(|(id, m)| (*m, id.clone())).collect();
    let count = chains.len();
    let mut le = vec![false; count * count];
    for (a, (_, ma)) in chains.iter().enumerate() {
        for (b, (_, mb)) in chains.iter().enumerate() {
            le[a * count + b] = ma & !mb == 0;
        }
    }
    let chain_carrier =
        FinitePoset::from_le_unchecked(chains.iter().map(|(id, _)| id.clone()).collect(), le);

    // Grow step: adjoin the supremum of the chain's image. The image of
    // a chain under a monotone map is a chain, its supremum dominates
    // every member's image and hence every member, and that supremum is
    // itself below its own image — so growth stays inside the carrier.
    let step_table: BTreeMap<ElementId, ElementId> = chains
        .iter()
        .map(|(id, mask)| {
            let image: Vec<usize> =
                (0..n).filter(|i| mask >> i & 1 == 1).map(|i| image_idx[i]).collect();
            let sup = base
                .lub_idx(&image)
                .expect("chain-complete base has suprema for chains");
            let grown = mask | 1u64 << sup;
            (
                id.clone(),
                mask_to_id
                    .get(&grown)
                    .expect("growth lands on an enumerated chain")
                    .clone(),
            )
        })
        .collect();
    let step = classify_map(
        PosetHandle::Finite(chain_carrier.clone()),
        MapRule::Table(step_table),
    )?;
    debug_assert!(step.is_progressive());

    let empty_chain = Element::Id(mask_to_id[&0].clone());
    let fixed = iterative_fix_oracle(&step, &empty_chain)?;
    let fixed_mask = chains
        .iter()
        .find(|(id, _)| Element::Id(id.clone()) == fixed.point)
        .expect("oracle returns a carrier element")
        .1;
    let mut members: Vec<usize> = (0..n).filter(|i| fixed_mask >> i & 1 == 1).collect();
    // Present the chain ascending in the carrier order, not in element
    // index order.
    members.sort_by(|&a, &b| {
        if a == b {
            std::cmp::Ordering::Equal
        } else if base.le_idx(a, b) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    let top = *members
        .iter()
        .find(|&&m| members.iter().all(|&o| base.le_idx(o, m)))
        .expect("the stabilized chain is inhabited and contains its maximum");
    let point = Element::Id(base.elements()[top].clone());
    let witness = FixedPointWitness::checked("kt", map, above.clone(), point)?;

    let least_verified = (0..n).all(|y| {
        let fixed_here = image_idx[y] == y;
        !fixed_here || base.le_idx(top, y)
    });

    Ok(KtReport {
        postfixed_size,
        chain_carrier,
        fixed_chain: members
            .iter()
            .map(|&i| Element::Id(base.elements()[i].clone()))
            .collect(),
        witness,
        least_verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(pairs: &[(&str, &str)]) -> MapRule {
        MapRule::Table(
            pairs.iter().map(|(a, b)| (ElementId::new(*a), ElementId::new(*b))).collect(),
        )
    }

    #[test]
    fn diamond_grows_to_the_least_fixed_point() {
        let f = classify_map(
            PosetHandle::Finite(FinitePoset::diamond()),
            table(&[("bot", "a"), ("a", "a"), ("b", "top"), ("top", "top")]),
        )
        .unwrap();
        let r = kt_via_bw(&f, &Element::id("bot"), &Caps::default()).unwrap();
        assert_eq!(r.postfixed_size, 4);
        assert_eq!(r.chain_carrier.len(), 12);
        assert_eq!(r.fixed_chain, vec![Element::id("bot"), Element::id("a")]);
        assert_eq!(r.witness.point, Element::id("a"));
        assert!(r.least_verified);
    }

    #[test]
    fn monotone_but_not_progressive_still_lands() {
        // c1 drops to c0, so the map is not progressive; it is monotone,
        // and c0 is below its own image.
        let f = classify_map(
            PosetHandle::Finite(FinitePoset::chain(3, "c")),
            table(&[("c0", "c0"), ("c1", "c0"), ("c2", "c2")]),
        )
        .unwrap();
        assert!(!f.is_progressive());
        let r = kt_via_bw(&f, &Element::id("c0"), &Caps::default()).unwrap();
        assert_eq!(r.postfixed_size, 2); // c0 and c2
        assert_eq!(r.witness.point, Element::id("c0"));
        assert!(r.least_verified);
    }

    #[test]
    fn start_above_its_image_is_refused() {
        let f = classify_map(
            PosetHandle::Finite(FinitePoset::chain(3, "c")),
            table(&[("c0", "c0"), ("c1", "c0"), ("c2", "c2")]),
        )
        .unwrap();
        assert!(matches!(
            kt_via_bw(&f, &Element::id("c1"), &Caps::default()),
            Err(OrderError::EngineRequires { .. })
        ));
    }
}
