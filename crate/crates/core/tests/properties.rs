//! Randomized law tests: the notation order is a total order with a
//! well-behaved successor, printed forms are faithful, serialized input
//! formats round-trip, acceptance of strict orders matches its
//! definition, and the two completeness notions relate as they must.

use fixlab_core::arrow::{ArrowOrdinalFamily, FamilyFiber};
use fixlab_core::dataflow::FlowGraphSpec;
use fixlab_core::enumerate::enumerate_labeled_posets;
use fixlab_core::oracle::{chain_complete_by_definition, directed_complete_by_definition};
use fixlab_core::ordinal::{
    check_trichotomous_ordinal, ord_compare, random_notation, FiniteStrictOrder, OrdinalCheck,
    OrdinalNotation,
};
use fixlab_core::{Element, ElementId};
use proptest::prelude::*;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

/// A notation driven by a finite supply of choices; the supply pins the
/// shape, so shrinking the vector shrinks the notation.
fn notation_from(picks: &[u64]) -> OrdinalNotation {
    let mut it = picks.iter().copied();
    let mut pick = move |n: u64| {
        let raw = it.next().unwrap_or(0);
        if n == 0 {
            0
        } else {
            raw % n
        }
    };
    random_notation(&mut pick, 3)
}

fn picks() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(any::<u64>(), 0..32)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn notation_comparison_is_reflexive_and_antisymmetric(a in picks(), b in picks()) {
        let a = notation_from(&a);
        let b = notation_from(&b);
        prop_assert_eq!(ord_compare(&a, &a), Ordering::Equal);
        prop_assert_eq!(ord_compare(&a, &b), ord_compare(&b, &a).reverse());
        if ord_compare(&a, &b) == Ordering::Equal {
            prop_assert_eq!(&a, &b);
        }
    }

    #[test]
    fn notation_comparison_is_transitive(a in picks(), b in picks(), c in picks()) {
        let mut v = [notation_from(&a), notation_from(&b), notation_from(&c)];
        v.sort_by(ord_compare);
        prop_assert_ne!(ord_compare(&v[0], &v[1]), Ordering::Greater);
        prop_assert_ne!(ord_compare(&v[1], &v[2]), Ordering::Greater);
        prop_assert_ne!(ord_compare(&v[0], &v[2]), Ordering::Greater);
    }

    #[test]
    fn successor_is_strictly_greater_and_inverts(a in picks()) {
        let a = notation_from(&a);
        let s = a.successor();
        prop_assert_eq!(ord_compare(&s, &a), Ordering::Greater);
        let pred = s.predecessor();
        prop_assert_eq!(pred.as_ref(), Some(&a));
    }

    #[test]
    fn notation_printing_round_trips(a in picks()) {
        let a = notation_from(&a);
        let reparsed: OrdinalNotation = a.to_string().parse().unwrap();
        prop_assert_eq!(reparsed, a);
    }

    #[test]
    fn element_printing_round_trips(raw in "[a-z][a-z0-9]{0,6}", n in any::<u64>(), o in picks()) {
        prop_assume!(raw != "inf");
        let cases = [
            Element::Id(ElementId::new(raw)),
            Element::Fin(n),
            Element::Inf,
            Element::Ord(notation_from(&o)),
        ];
        for e in cases {
            prop_assert_eq!(Element::parse_tagged(&e.to_string()), e);
        }
    }
}

proptest! {
    #[test]
    fn flow_graph_spec_serde_round_trips(
        nodes in prop::collection::btree_set("[a-z][a-z0-9]{0,3}", 1..4),
        fact_bits in any::<u64>(),
        edge_bits in any::<u64>(),
    ) {
        let nodes: Vec<String> = nodes.into_iter().collect();
        let facts = ["d1", "d2"];
        let mut edges = Vec::new();
        let mut gen: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        let mut kill: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        let mut bit = 0;
        for a in &nodes {
            for b in &nodes {
                if edge_bits & (1 << (bit % 64)) != 0 {
                    edges.push((a.clone(), b.clone()));
                }
                bit += 1;
            }
            for (fi, f) in facts.iter().enumerate() {
                match (fact_bits >> ((bit + fi) % 62)) & 3 {
                    1 => {
                        gen.entry(a.clone()).or_default().insert(f.to_string());
                    }
                    2 => {
                        kill.entry(a.clone()).or_default().insert(f.to_string());
                    }
                    _ => {}
                }
            }
        }
        let spec = FlowGraphSpec { nodes, edges, gen, kill };
        let json = serde_json::to_string(&spec).unwrap();
        let back: FlowGraphSpec = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }

    #[test]
    fn family_serde_round_trips(
        lens in prop::collection::btree_map("[a-z]", 0u64..6, 0..3),
        embeds in prop::collection::vec(prop::collection::vec(0u64..6, 0..4), 0..3),
    ) {
        let b0: BTreeMap<ElementId, u64> =
            lens.iter().map(|(k, &v)| (ElementId::new(k.clone()), v)).collect();
        let targets: Vec<&ElementId> = b0.keys().collect();
        let b1: BTreeMap<ElementId, FamilyFiber> = embeds
            .iter()
            .enumerate()
            .filter_map(|(i, embed)| {
                targets.get(i % targets.len().max(1)).map(|t| {
                    (
                        ElementId::new(format!("u{i}")),
                        FamilyFiber { target: (*t).clone(), embed: embed.clone() },
                    )
                })
            })
            .collect();
        let family = ArrowOrdinalFamily { b0, b1 };
        let json = serde_json::to_string(&family).unwrap();
        let back: ArrowOrdinalFamily = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, family);
    }

    #[test]
    fn strict_order_acceptance_matches_definition(k in 0usize..4, mask in any::<u32>()) {
        let ids: Vec<ElementId> = (0..k).map(|i| ElementId::new(format!("e{i}"))).collect();
        let pairs: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        let mask = u64::from(mask) & ((1u64 << pairs.len()) - 1);
        let chosen: BTreeSet<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask & (1 << b) != 0)
            .map(|(_, &p)| p)
            .collect();
        let lt: Vec<(ElementId, ElementId)> = chosen
            .iter()
            .map(|&(i, j)| (ids[i].clone(), ids[j].clone()))
            .collect();
        let order = FiniteStrictOrder::new(ids.clone(), lt).unwrap();

        let trichotomous = (0..k).all(|i| {
            (0..k).all(|j| {
                i == j || (chosen.contains(&(i, j)) ^ chosen.contains(&(j, i)))
            })
        });
        let transitive = chosen.iter().all(|&(i, j)| {
            chosen
                .iter()
                .filter(|&&(j2, _)| j2 == j)
                .all(|&(_, l)| chosen.contains(&(i, l)))
        });
        let expect_accept = trichotomous && transitive;

        match check_trichotomous_ordinal(&order) {
            OrdinalCheck::Accept { length } => {
                prop_assert!(expect_accept, "accepted a relation that is not a strict total order");
                prop_assert_eq!(length, k);
            }
            OrdinalCheck::Reject { .. } => prop_assert!(!expect_accept, "rejected a strict total order"),
        }
    }
}

#[test]
fn chain_complete_iff_directed_complete_with_bottom() {
    for n in 1..=4 {
        for p in enumerate_labeled_posets(n).unwrap() {
            let cc = chain_complete_by_definition(&p).unwrap();
            let dc = directed_complete_by_definition(&p).unwrap();
            assert!(dc, "every finite poset is directed-complete");
            assert_eq!(
                cc,
                dc && p.bottom().is_some(),
                "chain completeness must coincide with directed completeness plus a least element"
            );
        }
    }
}
