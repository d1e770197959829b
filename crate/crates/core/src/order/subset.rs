//! Classification of explicit subsets: chain, directed-but-not-chain, or
//! neither, with a two-element witness for every negative answer.

use super::handle::PosetHandle;
use super::OrderError;
use crate::element::Element;
use serde::Serialize;
use std::collections::BTreeSet;

/// Every member must belong to the carrier before any pair scan runs;
/// a singleton or empty subset would otherwise dodge the order lookups.
fn check_members(p: &PosetHandle, set: &BTreeSet<Element>) -> Result<(), OrderError> {
    for x in set {
        if !p.contains(x) {
            return Err(OrderError::UnknownElement(x.to_string()));
        }
    }
    Ok(())
}

/// Every pair of members is comparable. The empty subset counts.
pub fn is_chain(p: &PosetHandle, set: &BTreeSet<Element>) -> Result<bool, OrderError> {
    check_members(p, set)?;
    Ok(incomparable_pair(p, set)?.is_none())
}

/// Inhabited, and every pair of members has an upper bound *inside* the
/// subset. The empty subset does not count.
pub fn is_directed(p: &PosetHandle, set: &BTreeSet<Element>) -> Result<bool, OrderError> {
    check_members(p, set)?;
    if set.is_empty() {
        return Ok(false);
    }
    Ok(unbounded_pair(p, set)?.is_none())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsetClass {
    /// Totally ordered (this wins even where the subset is also directed).
    Chain,
    /// Directed but containing an incomparable pair.
    Directed,
    /// Not directed: either empty-and-not-chain cannot happen, or some
    /// pair has no bound inside the subset.
    Neither,
}

/// The classification together with the pairs that justify it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetWitness {
    pub class: SubsetClass,
    /// Two members with no order between them; absent exactly for chains.
    pub incomparable: Option<(Element, Element)>,
    /// Two members with no upper bound inside the subset; present exactly
    /// when the class is `Neither`.
    pub unbounded: Option<(Element, Element)>,
}

/// Classify with chain priority: a chain reports `Chain` even though
/// every inhabited chain is also directed.
pub fn classify_subset(
    p: &PosetHandle,
    set: &BTreeSet<Element>,
) -> Result<SubsetWitness, OrderError> {
    check_members(p, set)?;
    let incomparable = incomparable_pair(p, set)?;
    if incomparable.is_none() {
        return Ok(SubsetWitness { class: SubsetClass::Chain, incomparable: None, unbounded: None });
    }
    // Not a chain, hence inhabited; directedness is decided by the
    // bounded-pair scan alone.
    match unbounded_pair(p, set)? {
        None => Ok(SubsetWitness { class: SubsetClass::Directed, incomparable, unbounded: None }),
        Some(pair) => Ok(SubsetWitness {
            class: SubsetClass::Neither,
            incomparable,
            unbounded: Some(pair),
        }),
    }
}

fn incomparable_pair(
    p: &PosetHandle,
    set: &BTreeSet<Element>,
) -> Result<Option<(Element, Element)>, OrderError> {
    let members: Vec<&Element> = set.iter().collect();
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            if !p.le(a, b)? && !p.le(b, a)? {
                return Ok(Some(((*a).clone(), (*b).clone())));
            }
        }
    }
    Ok(None)
}

fn unbounded_pair(
    p: &PosetHandle,
    set: &BTreeSet<Element>,
) -> Result<Option<(Element, Element)>, OrderError> {
    let members: Vec<&Element> = set.iter().collect();
    for (i, a) in members.iter().enumerate() {
        for b in &members[i..] {
            let mut bounded = false;
            for c in &members {
                if p.le(a, c)? && p.le(b, c)? {
                    bounded = true;
                    break;
                }
            }
            if !bounded {
                return Ok(Some(((*a).clone(), (*b).clone())));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::poset::FinitePoset;

    fn diamond() -> PosetHandle {
        PosetHandle::Finite(FinitePoset::diamond())
    }

    fn set(names: &[&str]) -> BTreeSet<Element> {
        names.iter().map(|n| Element::id(*n)).collect()
    }

    #[test]
    fn empty_subset_is_chain_not_directed() {
        let p = diamond();
        let e = BTreeSet::new();
        assert!(is_chain(&p, &e).unwrap());
        assert!(!is_directed(&p, &e).unwrap());
        assert_eq!(classify_subset(&p, &e).unwrap().class, SubsetClass::Chain);
    }

    #[test]
    fn chain_priority_over_directed() {
        let p = diamond();
        let c = set(&["bot", "a", "top"]);
        let w = classify_subset(&p, &c).unwrap();
        assert_eq!(w.class, SubsetClass::Chain);
        assert!(w.incomparable.is_none());
    }

    #[test]
    fn pair_without_internal_bound_is_neither() {
        let p = diamond();
        let w = classify_subset(&p, &set(&["a", "b"])).unwrap();
        assert_eq!(w.class, SubsetClass::Neither);
        assert_eq!(w.incomparable, Some((Element::id("a"), Element::id("b"))));
        assert_eq!(w.unbounded, Some((Element::id("a"), Element::id("b"))));
    }

    #[test]
    fn adding_the_bound_makes_it_directed() {
        let p = diamond();
        let w = classify_subset(&p, &set(&["a", "b", "top"])).unwrap();
        assert_eq!(w.class, SubsetClass::Directed);
        assert_eq!(w.incomparable, Some((Element::id("a"), Element::id("b"))));
        assert!(w.unbounded.is_none());
    }

    #[test]
    fn symbolic_members_classify_too() {
        let p = PosetHandle::omega_plus_one();
        let c: BTreeSet<Element> =
            [Element::Fin(1), Element::Fin(5), Element::Inf].into_iter().collect();
        assert_eq!(classify_subset(&p, &c).unwrap().class, SubsetClass::Chain);
    }

    #[test]
    fn unknown_members_error() {
        let p = diamond();
        assert!(matches!(
            classify_subset(&p, &set(&["zig"])),
            Err(OrderError::UnknownElement(_))
        ));
    }
}
