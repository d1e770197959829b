//! The chains-as-carrier reduction: the chains of the original carrier,
//! ordered by inclusion, always form a directed-complete poset, and
//! "grow a chain by the image of its supremum" is a progressive step on
//! it. A fixed chain of that step has a supremum the original map cannot
//! move — so a fixed point for a progressive map is found without ever
//! assuming completeness beyond chains.

use super::iterate::iterative_fix_oracle;
use crate::caps::Caps;
use crate::element::{Element, ElementId};
use crate::order::{
    check_chain_complete_finite, check_directed_complete_finite, classify_map, ChainCompleteness,
    DirectedCompleteness, EndoMap, FinitePoset, FixedPointWitness, MapRule, OrderError,
    PosetHandle,
};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct DacarReport {
    /// All chains at or above the start, ordered by inclusion.
    pub chain_carrier: FinitePoset,
    /// The inclusion order is directed-complete (verified, not assumed).
    pub carrier_directed: DirectedCompleteness,
    /// The original sub-carrier's chains all have suprema (verified).
    pub base_chains: ChainCompleteness,
    /// The fixed chain the grow-step stabilizes on.
    pub fixed_chain: Vec<Element>,
    pub witness: FixedPointWitness,
}

pub fn dacar_reduction(
    map: &EndoMap,
    above: &Element,
    caps: &Caps,
) -> Result<DacarReport, OrderError> {
    if map.poset().as_finite().is_none() {
        return Err(OrderError::EngineRequires {
            engine: "dacar",
            requirement: "a finite carrier",
        });
    }
    if !map.is_progressive() {
        return Err(OrderError::EngineRequires {
            engine: "dacar",
            requirement: "a progressive map",
        });
    }
    let up = map.poset().up_set(above)?;
    let base = up.as_finite().expect("up-set of a finite carrier").clone();
    let base_chains = check_chain_complete_finite(&base, caps);
    if !base_chains.is_complete() {
        return Err(OrderError::EngineRequires {
            engine: "dacar",
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

    // Enumerate chains as bitmasks, then sort by their display ids so the
    // inclusion order can be laid down in the carrier's element order.
    let mut chains: Vec<(ElementId, u64)> = Vec::new();
    'mask: for mask in 0u64..(1u64 << n) {
        let picked: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        for (k, &i) in picked.iter().enumerate() {
            for &j in &picked[k + 1..] {
                if !base.le_idx(i, j) && !base.le_idx(j, i) {
                    continue 'mask;
                }
            }
        }
        chains.push((ElementId::new(chain_id(&base, mask)), mask));
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
    let carrier_directed = check_directed_complete_finite(&chain_carrier, caps);
    if !carrier_directed.is_complete() {
        return Err(OrderError::InvalidWitness(
            "dacar: the inclusion order failed its directed-completeness check".into(),
        ));
    }

    // The grow step: adjoin the image of the chain's supremum. The new
    // element bounds the whole chain, so the result is again a chain and
    // is found in the enumeration.
    let above_idx = base.index_of(above.as_id().expect("finite carrier element"))?;
    let sup_of_mask = |mask: u64| -> usize {
        if mask == 0 {
            return above_idx;
        }
        let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        *members
            .iter()
            .find(|&&m| members.iter().all(|&o| base.le_idx(o, m)))
            .expect("an inhabited finite chain contains its maximum")
    };
    let step_table: BTreeMap<ElementId, ElementId> = chains
        .iter()
        .map(|(id, mask)| {
            let sup = sup_of_mask(*mask);
            let image = map
                .apply(&Element::Id(base.elements()[sup].clone()))
                .expect("carrier element");
            let img_idx = base.index_of(image.as_id().expect("finite image")).expect("image");
            let grown = mask | 1u64 << img_idx;
            (id.clone(), mask_to_id[&grown].clone())
        })
        .collect();
    let step = classify_map(
        PosetHandle::Finite(chain_carrier.clone()),
        MapRule::Table(step_table),
    )?;
    debug_assert!(step.is_progressive());

    let start_mask = 1u64 << above_idx;
    let start_chain = Element::Id(mask_to_id[&start_mask].clone());
    let fixed = iterative_fix_oracle(&step, &start_chain)?;

    let fixed_mask = chains
        .iter()
        .find(|(id, _)| Element::Id(id.clone()) == fixed.point)
        .expect("oracle returns a carrier element")
        .1;
    // Present the chain ascending in the carrier order, not in element
    // index order.
    let mut fixed_members: Vec<usize> = (0..n).filter(|i| fixed_mask >> i & 1 == 1).collect();
    fixed_members.sort_by(|&a, &b| {
        if a == b {
            std::cmp::Ordering::Equal
        } else if base.le_idx(a, b) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    let fixed_chain: Vec<Element> =
        fixed_members.iter().map(|&i| Element::Id(base.elements()[i].clone())).collect();
    let sup = Element::Id(base.elements()[sup_of_mask(fixed_mask)].clone());
    let witness = FixedPointWitness::checked("dacar", map, above.clone(), sup)?;

    Ok(DacarReport { chain_carrier, carrier_directed, base_chains, fixed_chain, witness })
}

fn chain_id(base: &FinitePoset, mask: u64) -> String {
    let names: Vec<String> = (0..base.len())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| base.elements()[i].to_string())
        .collect();
    format!("{{{}}}", names.join(","))
}
