//! Classification of every well-ordered structure a small carrier
//! supports, with representatives built honestly from the
//! coproduct-of-members quotient.

use super::strict::{
    check_trichotomous_ordinal, is_initial_segment_of, unique_isomorphism, FiniteStrictOrder,
    OrdinalCheck,
};
use super::OrdinalError;
use crate::caps::Caps;
use crate::element::ElementId;
use std::collections::{BTreeMap, BTreeSet};

/// Everything the carrier supports: the accepted `(L, <)` pairs, their
/// partition into isomorphism classes, and one representative per class.
#[derive(Clone, Debug)]
pub struct OrdinalClassifier {
    pub carrier: BTreeSet<ElementId>,
    /// Accepted orders, in enumeration order (subsets by mask, relations by
    /// mask).
    pub members: Vec<FiniteStrictOrder>,
    /// Indices into `members`, one group per isomorphism class, sorted by
    /// order type.
    pub classes: Vec<Vec<usize>>,
    /// `representatives[k]` is the quotient of the disjoint union of class
    /// `k` by the unique-isomorphism relation, with elements renamed
    /// `q0..`.
    pub representatives: Vec<FiniteStrictOrder>,
    /// The underlying equivalence classes of the quotient: for class `k`
    /// and position `p`, the set of (member index, element) glued into the
    /// p-th representative element.
    pub quotient_classes: Vec<Vec<BTreeSet<(usize, ElementId)>>>,
}

/// Enumerate all pairs `(L, <)` with `L` a subset of the carrier and `<` a
/// relation on `L`, keep those accepted as trichotomous well-orderings,
/// partition them by isomorphism, and build a representative for each class
/// by quotienting the coproduct of its members.
///
/// Relations with a diagonal pair are rejected by the checker without
/// exception, so the enumeration skips them up front.
pub fn build_classifier(
    carrier: &BTreeSet<ElementId>,
    caps: &Caps,
) -> Result<OrdinalClassifier, OrdinalError> {
    if carrier.len() > caps.classifier_carrier {
        return Err(OrdinalError::CarrierTooLarge {
            size: carrier.len(),
            cap: caps.classifier_carrier,
        });
    }
    let ids: Vec<ElementId> = carrier.iter().cloned().collect();
    let mut members = Vec::new();
    for subset_mask in 0u32..(1 << ids.len()) {
        let subset: Vec<ElementId> = ids
            .iter()
            .enumerate()
            .filter(|(i, _)| subset_mask >> i & 1 == 1)
            .map(|(_, id)| id.clone())
            .collect();
        let off_diagonal: Vec<(ElementId, ElementId)> = subset
            .iter()
            .flat_map(|a| subset.iter().map(move |b| (a.clone(), b.clone())))
            .filter(|(a, b)| a != b)
            .collect();
        for rel_mask in 0u64..(1 << off_diagonal.len()) {
            let lt: Vec<(ElementId, ElementId)> = off_diagonal
                .iter()
                .enumerate()
                .filter(|(i, _)| rel_mask >> i & 1 == 1)
                .map(|(_, p)| p.clone())
                .collect();
            let order = FiniteStrictOrder::new(subset.iter().cloned(), lt)
                .expect("pairs drawn from the subset");
            if let OrdinalCheck::Accept { .. } = check_trichotomous_ordinal(&order) {
                members.push(order);
            }
        }
    }

    let mut by_length: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, m) in members.iter().enumerate() {
        by_length.entry(m.len()).or_default().push(i);
    }
    let classes: Vec<Vec<usize>> = by_length.into_values().collect();
    for class in &classes {
        for window in class.windows(2) {
            assert!(
                unique_isomorphism(&members[window[0]], &members[window[1]]).is_some(),
                "same-length accepted orders must be isomorphic"
            );
        }
    }

    let mut representatives = Vec::new();
    let mut quotient_classes = Vec::new();
    for class in &classes {
        let (rep, quotient) = quotient_representative(&members, class);
        if let OrdinalCheck::Reject { reason } = check_trichotomous_ordinal(&rep) {
            panic!("quotient representative failed the checker: {reason:?}");
        }
        for &i in class {
            assert!(
                unique_isomorphism(&members[i], &rep).is_some(),
                "class member must be isomorphic to its representative"
            );
        }
        representatives.push(rep);
        quotient_classes.push(quotient);
    }

    Ok(OrdinalClassifier {
        carrier: carrier.clone(),
        members,
        classes,
        representatives,
        quotient_classes,
    })
}

/// Form the disjoint union of the class members (elements tagged with
/// their member index), glue elements related by the unique isomorphisms
/// between members, and transfer the order through any member. The
/// transfer is checked to be independent of the member chosen.
fn quotient_representative(
    members: &[FiniteStrictOrder],
    class: &[usize],
) -> (FiniteStrictOrder, Vec<BTreeSet<(usize, ElementId)>>) {
    let length = members[class[0]].len();
    let mut glued: Vec<BTreeSet<(usize, ElementId)>> = vec![BTreeSet::new(); length];
    for &i in class {
        let iso = unique_isomorphism(&members[class[0]], &members[i])
            .expect("class members are isomorphic");
        for (pos, base_elem) in members[class[0]].sorted().iter().enumerate() {
            glued[pos].insert((i, iso[base_elem].clone()));
        }
    }
    let total: usize = glued.iter().map(|c| c.len()).sum();
    assert_eq!(
        total,
        class.len() * length,
        "every coproduct element lands in exactly one glued class"
    );

    let rep_ids: Vec<ElementId> =
        (0..length).map(|p| ElementId::new(format!("q{p}"))).collect();
    let mut lt = BTreeSet::new();
    for p in 0..length {
        for q in 0..length {
            if p == q {
                continue;
            }
            // The quotient order relates two glued classes iff their
            // sections are related inside each member; check all members
            // agree.
            let verdicts: BTreeSet<bool> = class
                .iter()
                .map(|&i| {
                    let xp = section(&glued[p], i);
                    let xq = section(&glued[q], i);
                    members[i].lt(&xp, &xq)
                })
                .collect();
            assert_eq!(verdicts.len(), 1, "order transfer must not depend on the member");
            if verdicts.into_iter().next().unwrap() {
                lt.insert((rep_ids[p].clone(), rep_ids[q].clone()));
            }
        }
    }
    let rep = FiniteStrictOrder::new(rep_ids, lt).expect("fresh ids");
    (rep, glued)
}

fn section(class: &BTreeSet<(usize, ElementId)>, member: usize) -> ElementId {
    class
        .iter()
        .find(|(i, _)| *i == member)
        .map(|(_, e)| e.clone())
        .expect("glued class has a section through every member")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuccessorScan {
    pub entries: Vec<SuccessorOutcome>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SuccessorOutcome {
    /// Adjoining a top to the length-`from` representative lands, up to
    /// unique isomorphism, on the length-`to` representative, strictly
    /// above it in the initial-segment order.
    Advances { from: usize, to: usize },
    /// The successor would need one element more than the carrier offers.
    EscapesCarrier { from: usize },
}

/// Walk the representatives in order of length and watch the successor
/// step advance through them until it outgrows the carrier.
pub fn classifier_successor_scan(classifier: &OrdinalClassifier) -> SuccessorScan {
    let mut entries = Vec::new();
    for rep in &classifier.representatives {
        let from = rep.len();
        if from == classifier.carrier.len() {
            entries.push(SuccessorOutcome::EscapesCarrier { from });
            continue;
        }
        let succ = rep
            .with_top(ElementId::new(format!("q{from}")))
            .expect("fresh top id");
        let next = classifier
            .representatives
            .iter()
            .find(|r| r.len() == from + 1)
            .expect("carrier supports the next length");
        assert!(
            unique_isomorphism(&succ, next).is_some(),
            "successor of the length-{from} representative must be the next representative"
        );
        assert!(
            is_initial_segment_of(rep, &succ),
            "a representative must sit strictly inside its successor"
        );
        entries.push(SuccessorOutcome::Advances { from, to: from + 1 });
    }
    SuccessorScan { entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn carrier(n: usize) -> BTreeSet<ElementId> {
        (0..n).map(|i| ElementId::new(format!("a{i}"))).collect()
    }

    #[test]
    fn singleton_carrier_has_two_classes() {
        let c = build_classifier(&carrier(1), &Caps::default()).unwrap();
        assert_eq!(c.members.len(), 2);
        assert_eq!(c.classes.len(), 2);
        let lengths: Vec<usize> = c.representatives.iter().map(|r| r.len()).collect();
        assert_eq!(lengths, vec![0, 1]);
    }

    #[test]
    fn two_element_carrier_has_three_classes() {
        let c = build_classifier(&carrier(2), &Caps::default()).unwrap();
        // One empty order, two singletons, two linear orders on the pair.
        assert_eq!(c.members.len(), 5);
        assert_eq!(c.classes.len(), 3);
        let lengths: Vec<usize> = c.representatives.iter().map(|r| r.len()).collect();
        assert_eq!(lengths, vec![0, 1, 2]);
        assert_eq!(c.classes.iter().map(|cl| cl.len()).collect::<Vec<_>>(), vec![1, 2, 2]);
    }

    #[test]
    fn quotient_classes_cut_across_all_members() {
        let c = build_classifier(&carrier(2), &Caps::default()).unwrap();
        let pair_class = &c.quotient_classes[2];
        assert_eq!(pair_class.len(), 2);
        for glued in pair_class {
            assert_eq!(glued.len(), 2, "one section per member order");
        }
    }

    #[test]
    fn successor_scan_advances_then_escapes() {
        let c = build_classifier(&carrier(2), &Caps::default()).unwrap();
        let scan = classifier_successor_scan(&c);
        assert_eq!(
            scan.entries,
            vec![
                SuccessorOutcome::Advances { from: 0, to: 1 },
                SuccessorOutcome::Advances { from: 1, to: 2 },
                SuccessorOutcome::EscapesCarrier { from: 2 },
            ]
        );
    }

    #[test]
    fn oversized_carrier_refused() {
        let err = build_classifier(&carrier(5), &Caps::default()).unwrap_err();
        assert!(matches!(err, OrdinalError::CarrierTooLarge { size: 5, cap: 4 }));
    }
}
