//! One operator, many fixed points at once: the step map on a power of
//! the carrier that advances every progressive monotone self-map in its
//! own coordinate. A single run of the iteration oracle on that product
//! then hands back a fixed point for each of them simultaneously.

use super::iterate::iterative_fix_oracle;
use crate::caps::Caps;
use crate::element::{Element, ElementId};
use crate::order::{classify_map, EndoMap, FinitePoset, FixedPointWitness, MapRule, OrderError, PosetHandle};
use std::collections::BTreeMap;

/// Every self-map of `p` that is both progressive and monotone, as
/// image-index tables in lexicographic order. Errors once the family
/// outgrows `cap`.
pub fn enumerate_progressive_monotone(
    p: &FinitePoset,
    cap: usize,
) -> Result<Vec<Vec<usize>>, OrderError> {
    let n = p.len();
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut partial: Vec<usize> = Vec::new();
    fn descend(
        p: &FinitePoset,
        partial: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<(), OrderError> {
        let i = partial.len();
        if i == p.len() {
            if out.len() == cap {
                return Err(OrderError::SizeLimit {
                    what: "progressive monotone map family",
                    size: cap + 1,
                    cap,
                });
            }
            out.push(partial.clone());
            return Ok(());
        }
        for img in 0..p.len() {
            if !p.le_idx(i, img) {
                continue;
            }
            let consistent = (0..i).all(|j| {
                (!p.le_idx(j, i) || p.le_idx(partial[j], img))
                    && (!p.le_idx(i, j) || p.le_idx(img, partial[j]))
            });
            if consistent {
                partial.push(img);
                descend(p, partial, out, cap)?;
                partial.pop();
            }
        }
        Ok(())
    }
    descend(p, &mut partial, &mut out, cap)?;
    debug_assert!(out.iter().all(|t| t.len() == n));
    Ok(out)
}

/// Pointwise-ordered product of finite carriers. Element ids are index
/// tuples like `(02,11)`, zero-padded so the id sort equals counting
/// order with the last coordinate fastest.
pub fn product_poset(factors: &[&FinitePoset], caps: &Caps) -> Result<FinitePoset, OrderError> {
    let sizes: Vec<usize> = factors.iter().map(|p| p.len()).collect();
    let mut total: usize = 1;
    for &s in &sizes {
        total = total.saturating_mul(s);
        if total > caps.product_elements {
            return Err(OrderError::SizeLimit {
                what: "product carrier",
                size: total,
                cap: caps.product_elements,
            });
        }
    }
    let width = sizes
        .iter()
        .map(|&s| s.saturating_sub(1).to_string().len())
        .max()
        .unwrap_or(1);
    let tuples: Vec<Vec<usize>> = (0..total).map(|k| unrank(k, &sizes)).collect();
    let ids: Vec<ElementId> = tuples.iter().map(|t| ElementId::new(tuple_id(t, width))).collect();
    let mut le = vec![false; total * total];
    for (a, ta) in tuples.iter().enumerate() {
        for (b, tb) in tuples.iter().enumerate() {
            le[a * total + b] = ta
                .iter()
                .zip(tb)
                .enumerate()
                .all(|(k, (&x, &y))| factors[k].le_idx(x, y));
        }
    }
    Ok(FinitePoset::from_le_unchecked(ids, le))
}

pub fn tuple_id(indices: &[usize], width: usize) -> String {
    let parts: Vec<String> = indices.iter().map(|i| format!("{i:0width$}")).collect();
    format!("({})", parts.join(","))
}

fn unrank(mut k: usize, sizes: &[usize]) -> Vec<usize> {
    let mut t = vec![0usize; sizes.len()];
    for (slot, &s) in sizes.iter().enumerate().rev() {
        t[slot] = k % s;
        k /= s;
    }
    t
}

/// The product carrier, the coordinatewise step map, and the fixed point
/// obtained by iterating that step once from the product bottom —
/// decoded into one fixed point per enumerated self-map.
#[derive(Clone, Debug)]
pub struct FixedPointOperator {
    pub base: FinitePoset,
    /// Image-index tables of every progressive monotone self-map.
    pub maps: Vec<Vec<usize>>,
    pub product: FinitePoset,
    pub step: EndoMap,
    pub witness: FixedPointWitness,
    /// Coordinate `k` of the witness: a fixed point of `maps[k]`.
    pub per_map_fixed: Vec<Element>,
}

pub fn build_fpo(base: &FinitePoset, caps: &Caps) -> Result<FixedPointOperator, OrderError> {
    if base.bottom_idx().is_none() {
        return Err(OrderError::EngineRequires {
            engine: "operator",
            requirement: "a least element in the base carrier",
        });
    }
    let maps = enumerate_progressive_monotone(base, caps.prog_maps)?;
    let factors: Vec<&FinitePoset> = maps.iter().map(|_| base).collect();
    let product = product_poset(&factors, caps)?;
    let sizes: Vec<usize> = vec![base.len(); maps.len()];
    let width = sizes
        .iter()
        .map(|&s| s.saturating_sub(1).to_string().len())
        .max()
        .unwrap_or(1);
    let table: BTreeMap<ElementId, ElementId> = (0..product.len())
        .map(|k| {
            let t = unrank(k, &sizes);
            let image: Vec<usize> = t.iter().enumerate().map(|(slot, &x)| maps[slot][x]).collect();
            (
                ElementId::new(tuple_id(&t, width)),
                ElementId::new(tuple_id(&image, width)),
            )
        })
        .collect();
    let step = classify_map(PosetHandle::Finite(product.clone()), MapRule::Table(table))?;
    debug_assert!(step.is_progressive() && step.is_monotone());
    let bottom = Element::Id(
        product.bottom().expect("product of pointed carriers has a bottom"),
    );
    let witness = iterative_fix_oracle(&step, &bottom)?;
    let per_map_fixed = decode_components(base, &witness.point, maps.len())?;
    for (slot, x) in per_map_fixed.iter().enumerate() {
        let xi = base.index_of(x.as_id().expect("component id")).expect("component");
        if maps[slot][xi] != xi {
            return Err(OrderError::InvalidWitness(format!(
                "operator: coordinate {slot} of the product fixed point is not fixed"
            )));
        }
    }
    Ok(FixedPointOperator { base: base.clone(), maps, product, step, witness, per_map_fixed })
}

fn decode_components(
    base: &FinitePoset,
    point: &Element,
    arity: usize,
) -> Result<Vec<Element>, OrderError> {
    let raw = point.as_id().expect("product element").to_string();
    let inner = raw
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| OrderError::InvalidWitness(format!("not a tuple id: {raw}")))?;
    let indices: Vec<usize> = if inner.is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|e| OrderError::InvalidWitness(format!("bad tuple id {raw}: {e}")))
            })
            .collect::<Result<_, _>>()?
    };
    if indices.len() != arity {
        return Err(OrderError::InvalidWitness(format!(
            "tuple id {raw} has arity {}, expected {arity}",
            indices.len()
        )));
    }
    Ok(indices.iter().map(|&i| Element::Id(base.elements()[i].clone())).collect())
}

/// One product across a whole family of carriers: a slot per (member,
/// self-map) pair, stepped coordinatewise and iterated from the product
/// bottom. The decoded answer assigns every member's every progressive
/// monotone map a fixed point in one shot.
#[derive(Clone, Debug)]
pub struct AggregateReport {
    /// Per member, how many progressive monotone self-maps it carries.
    pub family_sizes: Vec<usize>,
    pub product: FinitePoset,
    pub witness: FixedPointWitness,
    /// `selections[i][j]` is the fixed point handed to member `i`'s
    /// `j`-th map.
    pub selections: Vec<Vec<Element>>,
}

pub fn aggregate_family(
    members: &[FinitePoset],
    caps: &Caps,
) -> Result<AggregateReport, OrderError> {
    for m in members {
        if m.bottom_idx().is_none() {
            return Err(OrderError::EngineRequires {
                engine: "aggregate",
                requirement: "a least element in every member carrier",
            });
        }
    }
    let families: Vec<Vec<Vec<usize>>> = members
        .iter()
        .map(|m| enumerate_progressive_monotone(m, caps.prog_maps))
        .collect::<Result<_, _>>()?;
    let mut slot_member: Vec<usize> = Vec::new();
    let mut slot_map: Vec<Vec<usize>> = Vec::new();
    for (mi, fam) in families.iter().enumerate() {
        for f in fam {
            slot_member.push(mi);
            slot_map.push(f.clone());
        }
    }
    let factors: Vec<&FinitePoset> = slot_member.iter().map(|&mi| &members[mi]).collect();
    let product = product_poset(&factors, caps)?;
    let sizes: Vec<usize> = factors.iter().map(|p| p.len()).collect();
    let width = sizes
        .iter()
        .map(|&s| s.saturating_sub(1).to_string().len())
        .max()
        .unwrap_or(1);
    let table: BTreeMap<ElementId, ElementId> = (0..product.len())
        .map(|k| {
            let t = unrank(k, &sizes);
            let image: Vec<usize> =
                t.iter().enumerate().map(|(slot, &x)| slot_map[slot][x]).collect();
            (
                ElementId::new(tuple_id(&t, width)),
                ElementId::new(tuple_id(&image, width)),
            )
        })
        .collect();
    let step = classify_map(PosetHandle::Finite(product.clone()), MapRule::Table(table))?;
    let bottom = Element::Id(
        product.bottom().expect("product of pointed carriers has a bottom"),
    );
    let witness = iterative_fix_oracle(&step, &bottom)?;
    let raw = witness.point.as_id().expect("product element").to_string();
    let inner = raw.trim_start_matches('(').trim_end_matches(')');
    let indices: Vec<usize> = if inner.is_empty() {
        Vec::new()
    } else {
        inner.split(',').map(|s| s.parse().expect("tuple id digits")).collect()
    };
    let mut selections: Vec<Vec<Element>> = members.iter().map(|_| Vec::new()).collect();
    for (slot, &idx) in indices.iter().enumerate() {
        let mi = slot_member[slot];
        let el = Element::Id(members[mi].elements()[idx].clone());
        if slot_map[slot][idx] != idx {
            return Err(OrderError::InvalidWitness(format!(
                "aggregate: slot {slot} of the product fixed point is not fixed"
            )));
        }
        selections[mi].push(el);
    }
    Ok(AggregateReport {
        family_sizes: families.iter().map(|f| f.len()).collect(),
        product,
        witness,
        selections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_chain_has_exactly_two_progressive_monotone_maps() {
        let p = FinitePoset::chain(2, "c");
        let maps = enumerate_progressive_monotone(&p, 100).unwrap();
        assert_eq!(maps, vec![vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn three_chain_has_five() {
        let p = FinitePoset::chain(3, "c");
        let maps = enumerate_progressive_monotone(&p, 100).unwrap();
        assert_eq!(maps.len(), 5);
        assert!(maps.contains(&vec![0, 1, 2]));
        assert!(maps.contains(&vec![2, 2, 2]));
    }

    #[test]
    fn v_shape_admits_only_the_identity() {
        use crate::element::ElementId;
        let v = FinitePoset::new(
            [ElementId::new("bot"), ElementId::new("a"), ElementId::new("b")],
            [
                (ElementId::new("bot"), ElementId::new("a")),
                (ElementId::new("bot"), ElementId::new("b")),
            ],
        )
        .unwrap();
        // bot's image must sit below both incomparable tops, and a, b are
        // already maximal, so only the identity survives.
        assert_eq!(enumerate_progressive_monotone(&v, 100).unwrap().len(), 1);
    }

    #[test]
    fn map_family_cap_is_enforced() {
        let p = FinitePoset::chain(3, "c");
        assert!(matches!(
            enumerate_progressive_monotone(&p, 4),
            Err(OrderError::SizeLimit { .. })
        ));
    }

    #[test]
    fn operator_on_the_two_chain() {
        let p = FinitePoset::chain(2, "c");
        let fpo = build_fpo(&p, &Caps::default()).unwrap();
        assert_eq!(fpo.maps.len(), 2);
        assert_eq!(fpo.product.len(), 4);
        assert!(fpo.step.is_progressive() && fpo.step.is_monotone());
        // Identity keeps the bottom; the constant-top map gets the top.
        assert_eq!(
            fpo.per_map_fixed,
            vec![Element::id("c0"), Element::id("c1")]
        );
        assert_eq!(fpo.witness.point, Element::id("(0,1)"));
    }

    #[test]
    fn operator_product_grows_as_a_power() {
        let p = FinitePoset::chain(3, "c");
        let fpo = build_fpo(&p, &Caps::default()).unwrap();
        assert_eq!(fpo.product.len(), 243); // 3^5
        for (slot, x) in fpo.per_map_fixed.iter().enumerate() {
            let xi = fpo.base.index_of(x.as_id().unwrap()).unwrap();
            assert_eq!(fpo.maps[slot][xi], xi);
        }
    }

    #[test]
    fn aggregate_covers_every_member_map_pair() {
        let members = [FinitePoset::chain(2, "a"), FinitePoset::chain(2, "b")];
        let r = aggregate_family(&members, &Caps::default()).unwrap();
        assert_eq!(r.family_sizes, vec![2, 2]);
        assert_eq!(r.product.len(), 16);
        assert_eq!(r.selections[0], vec![Element::id("a0"), Element::id("a1")]);
        assert_eq!(r.selections[1], vec![Element::id("b0"), Element::id("b1")]);
    }

    #[test]
    fn pointless_members_are_refused() {
        let members = [FinitePoset::discrete(2, "d")];
        assert!(matches!(
            aggregate_family(&members, &Caps::default()),
            Err(OrderError::EngineRequires { .. })
        ));
    }
}
