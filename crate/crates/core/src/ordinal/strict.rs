//! Finite strict orders and the axioms that make one a well-ordering.

use super::OrdinalError;
use crate::element::ElementId;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// A strict relation `lt` on a finite carrier. Construction only checks
/// well-formedness (no dangling ids); the axioms are the business of
/// [`check_trichotomous_ordinal`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiniteStrictOrder {
    elements: BTreeSet<ElementId>,
    lt: BTreeSet<(ElementId, ElementId)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrdinalCheck {
    /// All axioms hold; `length` is the order type.
    Accept { length: usize },
    Reject { reason: RejectReason },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RejectReason {
    NotTransitive { x: ElementId, y: ElementId, z: ElementId },
    NotTrichotomous { x: ElementId, y: ElementId },
    /// The listed members admit no minimal element, so induction fails on
    /// them.
    NotWellFounded { members: BTreeSet<ElementId> },
    /// Derived-property confirmations; these can only fire if the three
    /// axiom checks above are themselves broken.
    NotAsymmetric { x: ElementId, y: ElementId },
    NotIrreflexive { x: ElementId },
}

impl FiniteStrictOrder {
    pub fn new(
        elements: impl IntoIterator<Item = ElementId>,
        lt: impl IntoIterator<Item = (ElementId, ElementId)>,
    ) -> Result<Self, OrdinalError> {
        let elements: BTreeSet<ElementId> = elements.into_iter().collect();
        let lt: BTreeSet<(ElementId, ElementId)> = lt.into_iter().collect();
        for (a, b) in &lt {
            for id in [a, b] {
                if !elements.contains(id) {
                    return Err(OrdinalError::UnknownElement(id.to_string()));
                }
            }
        }
        Ok(FiniteStrictOrder { elements, lt })
    }

    /// The linear order `0 < 1 < ... < length-1` on ids `prefix0..`.
    pub fn canonical(length: usize, prefix: &str) -> Self {
        let ids: Vec<ElementId> =
            (0..length).map(|i| ElementId::new(format!("{prefix}{i}"))).collect();
        let mut lt = BTreeSet::new();
        for i in 0..length {
            for j in i + 1..length {
                lt.insert((ids[i].clone(), ids[j].clone()));
            }
        }
        FiniteStrictOrder { elements: ids.into_iter().collect(), lt }
    }

    pub fn elements(&self) -> &BTreeSet<ElementId> {
        &self.elements
    }

    pub fn pairs(&self) -> &BTreeSet<(ElementId, ElementId)> {
        &self.lt
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn lt(&self, a: &ElementId, b: &ElementId) -> bool {
        self.lt.contains(&(a.clone(), b.clone()))
    }

    /// Elements sorted by the relation: position = number of predecessors.
    /// Meaningful once the order has been accepted as trichotomous.
    pub fn sorted(&self) -> Vec<ElementId> {
        let mut v: Vec<ElementId> = self.elements.iter().cloned().collect();
        v.sort_by_key(|x| self.lt.iter().filter(|(_, b)| b == x).count());
        v
    }

    /// Adjoin a fresh top element strictly above everything.
    pub fn with_top(&self, top: ElementId) -> Result<Self, OrdinalError> {
        if self.elements.contains(&top) {
            return Err(OrdinalError::UnknownElement(format!(
                "{top} already present, cannot adjoin"
            )));
        }
        let mut elements = self.elements.clone();
        let mut lt = self.lt.clone();
        for x in &self.elements {
            lt.insert((x.clone(), top.clone()));
        }
        elements.insert(top);
        Ok(FiniteStrictOrder { elements, lt })
    }
}

/// Decide whether `(elements, lt)` is a trichotomous well-ordering:
/// transitive, trichotomous, and inductive (well-founded). The derived
/// properties, asymmetry and irreflexivity, are confirmed afterwards as a
/// guard against checker bugs.
pub fn check_trichotomous_ordinal(order: &FiniteStrictOrder) -> OrdinalCheck {
    let elems: Vec<&ElementId> = order.elements.iter().collect();
    for x in &elems {
        for y in &elems {
            if !order.lt(x, y) {
                continue;
            }
            for z in &elems {
                if order.lt(y, z) && !order.lt(x, z) {
                    return OrdinalCheck::Reject {
                        reason: RejectReason::NotTransitive {
                            x: (*x).clone(),
                            y: (*y).clone(),
                            z: (*z).clone(),
                        },
                    };
                }
            }
        }
    }
    for x in &elems {
        for y in &elems {
            if x != y && !order.lt(x, y) && !order.lt(y, x) {
                return OrdinalCheck::Reject {
                    reason: RejectReason::NotTrichotomous { x: (*x).clone(), y: (*y).clone() },
                };
            }
        }
    }
    // Induction on a finite carrier: strip minimal elements until nothing
    // is left; a nonempty residue has no minimal element and so supports no
    // inductive argument.
    let mut remaining: BTreeSet<ElementId> = order.elements.clone();
    loop {
        if remaining.is_empty() {
            break;
        }
        let minimal: Vec<ElementId> = remaining
            .iter()
            .filter(|m| !remaining.iter().any(|p| order.lt(p, m)))
            .cloned()
            .collect();
        if minimal.is_empty() {
            return OrdinalCheck::Reject {
                reason: RejectReason::NotWellFounded { members: remaining },
            };
        }
        for m in minimal {
            remaining.remove(&m);
        }
    }
    for x in &elems {
        if order.lt(x, x) {
            return OrdinalCheck::Reject {
                reason: RejectReason::NotIrreflexive { x: (*x).clone() },
            };
        }
        for y in &elems {
            if order.lt(x, y) && order.lt(y, x) {
                return OrdinalCheck::Reject {
                    reason: RejectReason::NotAsymmetric { x: (*x).clone(), y: (*y).clone() },
                };
            }
        }
    }
    OrdinalCheck::Accept { length: order.len() }
}

/// True iff the identity is the only automorphism. Checked by brute force
/// over all permutations of the carrier.
pub fn rigidity_check(order: &FiniteStrictOrder) -> bool {
    let elems: Vec<ElementId> = order.elements.iter().cloned().collect();
    let n = elems.len();
    let mut non_identity = 0usize;
    for perm in permutations(n) {
        if perm.iter().enumerate().all(|(i, &j)| i == j) {
            continue;
        }
        let preserves = (0..n).all(|i| {
            (0..n).all(|j| {
                order.lt(&elems[i], &elems[j]) == order.lt(&elems[perm[i]], &elems[perm[j]])
            })
        });
        if preserves {
            non_identity += 1;
        }
    }
    non_identity == 0
}

/// The unique order isomorphism between two accepted orders of equal
/// length: i-th element to i-th element. `None` when the lengths differ.
pub fn unique_isomorphism(
    a: &FiniteStrictOrder,
    b: &FiniteStrictOrder,
) -> Option<BTreeMap<ElementId, ElementId>> {
    if a.len() != b.len() {
        return None;
    }
    let sa = a.sorted();
    let sb = b.sorted();
    let map: BTreeMap<ElementId, ElementId> =
        sa.iter().cloned().zip(sb.iter().cloned()).collect();
    for x in &sa {
        for y in &sa {
            if a.lt(x, y) != b.lt(&map[x], &map[y]) {
                return None;
            }
        }
    }
    Some(map)
}

/// True iff `a` embeds as a proper initial segment of `b`: the positional
/// map of `a` into `b` is order-preserving and misses some top part.
pub fn is_initial_segment_of(a: &FiniteStrictOrder, b: &FiniteStrictOrder) -> bool {
    if a.len() >= b.len() {
        return false;
    }
    let sa = a.sorted();
    let sb = b.sorted();
    (0..sa.len()).all(|i| {
        (0..sa.len()).all(|j| a.lt(&sa[i], &sa[j]) == b.lt(&sb[i], &sb[j]))
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    fn go(k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == current.len() {
            out.push(current.clone());
            return;
        }
        for i in k..current.len() {
            current.swap(k, i);
            go(k + 1, current, out);
            current.swap(k, i);
        }
    }
    go(0, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: &str) -> ElementId {
        ElementId::new(s)
    }

    fn order(elems: &[&str], lt: &[(&str, &str)]) -> FiniteStrictOrder {
        FiniteStrictOrder::new(
            elems.iter().map(|s| id(s)),
            lt.iter().map(|(a, b)| (id(a), id(b))),
        )
        .unwrap()
    }

    #[test]
    fn three_element_linear_accepted() {
        let o = order(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]);
        assert_eq!(check_trichotomous_ordinal(&o), OrdinalCheck::Accept { length: 3 });
    }

    #[test]
    fn empty_order_accepted() {
        let o = order(&[], &[]);
        assert_eq!(check_trichotomous_ordinal(&o), OrdinalCheck::Accept { length: 0 });
    }

    #[test]
    fn missing_transitive_pair_rejected() {
        let o = order(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        assert!(matches!(
            check_trichotomous_ordinal(&o),
            OrdinalCheck::Reject { reason: RejectReason::NotTransitive { .. } }
        ));
    }

    #[test]
    fn incomparable_pair_rejected() {
        let o = order(&["a", "b"], &[]);
        assert!(matches!(
            check_trichotomous_ordinal(&o),
            OrdinalCheck::Reject { reason: RejectReason::NotTrichotomous { .. } }
        ));
    }

    #[test]
    fn two_cycle_rejected_as_not_well_founded() {
        // A transitive trichotomous cycle forces reflexive pairs, so every
        // member stays non-minimal.
        let o = order(
            &["a", "b"],
            &[("a", "b"), ("b", "a"), ("a", "a"), ("b", "b")],
        );
        assert!(matches!(
            check_trichotomous_ordinal(&o),
            OrdinalCheck::Reject { reason: RejectReason::NotWellFounded { .. } }
        ));
    }

    #[test]
    fn reflexive_singleton_rejected() {
        let o = order(&["a"], &[("a", "a")]);
        assert!(matches!(
            check_trichotomous_ordinal(&o),
            OrdinalCheck::Reject { reason: RejectReason::NotWellFounded { .. } }
        ));
    }

    #[test]
    fn accepted_orders_are_rigid() {
        for len in 0..5 {
            let o = FiniteStrictOrder::canonical(len, "x");
            assert_eq!(check_trichotomous_ordinal(&o), OrdinalCheck::Accept { length: len });
            assert!(rigidity_check(&o), "length {len} should be rigid");
        }
    }

    #[test]
    fn discrete_pair_is_not_rigid() {
        let o = order(&["a", "b"], &[]);
        assert!(!rigidity_check(&o));
    }

    #[test]
    fn unique_isomorphism_matches_positions() {
        let a = order(&["x", "y"], &[("y", "x")]);
        let b = FiniteStrictOrder::canonical(2, "c");
        let iso = unique_isomorphism(&a, &b).unwrap();
        assert_eq!(iso[&id("y")], id("c0"));
        assert_eq!(iso[&id("x")], id("c1"));
        assert!(unique_isomorphism(&a, &FiniteStrictOrder::canonical(3, "c")).is_none());
    }

    #[test]
    fn initial_segments_are_strict_prefixes() {
        let two = FiniteStrictOrder::canonical(2, "a");
        let three = FiniteStrictOrder::canonical(3, "b");
        assert!(is_initial_segment_of(&two, &three));
        assert!(!is_initial_segment_of(&three, &two));
        assert!(!is_initial_segment_of(&two, &FiniteStrictOrder::canonical(2, "c")));
    }

    #[test]
    fn with_top_extends_length() {
        let two = FiniteStrictOrder::canonical(2, "a");
        let three = two.with_top(id("t")).unwrap();
        assert_eq!(check_trichotomous_ordinal(&three), OrdinalCheck::Accept { length: 3 });
        assert!(is_initial_segment_of(&two, &three));
        assert!(two.with_top(id("a0")).is_err());
    }
}
