//! Brute-force reference answers. Everything here is computed by the
//! most literal method available — full scans over the carrier, subsets
//! built by doubling, bounds found by double loops — so the structured
//! engines and checkers elsewhere can be compared against answers that
//! share none of their logic.

use crate::element::{Element, ElementId};
use crate::order::{EndoMap, FinitePoset, OrderError};
use std::collections::BTreeSet;

/// Hard ceiling: subset scans double the work per element.
const SCAN_ELEMENTS: usize = 20;

/// Every fixed point at or above `above`, found by applying the map to
/// each carrier element in turn. No iteration, no order theory.
pub fn fixed_points_by_scan(
    map: &EndoMap,
    above: &Element,
) -> Result<Vec<Element>, OrderError> {
    let p = map.poset();
    let elems = p.finite_elements().ok_or(OrderError::EngineRequires {
        engine: "scan oracle",
        requirement: "a finite carrier",
    })?;
    let mut out = Vec::new();
    for x in elems {
        if p.le(above, &x)? && map.apply(&x)? == x {
            out.push(x);
        }
    }
    Ok(out)
}

/// The least among the fixed points at or above `above`, when one
/// exists: a member below every other member.
pub fn least_fixed_point_by_scan(
    map: &EndoMap,
    above: &Element,
) -> Result<Option<Element>, OrderError> {
    let fixed = fixed_points_by_scan(map, above)?;
    let p = map.poset();
    for x in &fixed {
        let mut least = true;
        for y in &fixed {
            if !p.le(x, y)? {
                least = false;
                break;
            }
        }
        if least {
            return Ok(Some(x.clone()));
        }
    }
    Ok(None)
}

fn doubled_subsets(p: &FinitePoset) -> Result<Vec<Vec<usize>>, OrderError> {
    if p.len() > SCAN_ELEMENTS {
        return Err(OrderError::SizeLimit {
            what: "subset scan carrier",
            size: p.len(),
            cap: SCAN_ELEMENTS,
        });
    }
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for i in 0..p.len() {
        let mut extended: Vec<Vec<usize>> = out
            .iter()
            .cloned()
            .map(|mut s| {
                s.push(i);
                s
            })
            .collect();
        out.append(&mut extended);
    }
    Ok(out)
}

fn lub_by_scan(p: &FinitePoset, subset: &[usize]) -> Option<usize> {
    let mut bounds = Vec::new();
    'outer: for u in 0..p.len() {
        for &m in subset {
            if !p.le_idx(m, u) {
                continue 'outer;
            }
        }
        bounds.push(u);
    }
    bounds
        .iter()
        .copied()
        .find(|&b| bounds.iter().all(|&c| p.le_idx(b, c)))
}

/// Chain-completeness straight from the definition: every subset that
/// is totally ordered (the empty one included) has a least upper bound.
pub fn chain_complete_by_definition(p: &FinitePoset) -> Result<bool, OrderError> {
    for subset in doubled_subsets(p)? {
        let chain = subset
            .iter()
            .all(|&a| subset.iter().all(|&b| p.le_idx(a, b) || p.le_idx(b, a)));
        if chain && lub_by_scan(p, &subset).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Directed-completeness straight from the definition: every inhabited
/// subset in which each two members have a bound inside the subset has
/// a least upper bound.
pub fn directed_complete_by_definition(p: &FinitePoset) -> Result<bool, OrderError> {
    for subset in doubled_subsets(p)? {
        if subset.is_empty() {
            continue;
        }
        let directed = subset.iter().all(|&a| {
            subset
                .iter()
                .all(|&b| subset.iter().any(|&u| p.le_idx(a, u) && p.le_idx(b, u)))
        });
        if directed && lub_by_scan(p, &subset).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Least upper bound of a named subset by raw scan, for cross-checking
/// supremum assignments.
pub fn lub_of_named(
    p: &FinitePoset,
    members: &BTreeSet<ElementId>,
) -> Result<Option<ElementId>, OrderError> {
    let idxs: Vec<usize> =
        members.iter().map(|e| p.index_of(e)).collect::<Result<_, _>>()?;
    Ok(lub_by_scan(p, &idxs).map(|u| p.elements()[u].clone()))
}
