//! Uniform handle over finite and symbolic carriers, with a supremum
//! resolver for finite and tagged-cofinal chains.

use super::poset::FinitePoset;
use super::OrderError;
use crate::element::Element;
use crate::ordinal::OrdinalNotation;
use std::collections::BTreeSet;
use std::fmt;

/// A poset the rest of the crate can query: an explicit finite order, the
/// increasing finite stages `fin:first, fin:first+1, ...` capped by a top
/// `inf`, or a closed interval of ordinal notations.
///
/// The two symbolic kinds are total orders in which every subset has a
/// least upper bound, which is what certifies their completeness answers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PosetHandle {
    Finite(FinitePoset),
    /// Elements `fin:n` for `n >= first` (none when `first` is `None`)
    /// plus the top `inf`. `first: None` is the one-point order left over
    /// above the top.
    OmegaPlusOne { first: Option<u64> },
    /// All notations `lo <= x <= hi`.
    OrdinalSegment { lo: OrdinalNotation, hi: OrdinalNotation },
}

/// A chain presented either as an explicit finite set or as a tagged
/// cofinal description the supremum resolver knows how to read.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainDescription {
    Finite(BTreeSet<Element>),
    /// Every `fin:n` element of an omega-plus-one handle.
    AllFin,
    /// Every element of an ordinal segment strictly below the bound.
    AllBelow(OrdinalNotation),
}

impl ChainDescription {
    pub fn finite(elems: impl IntoIterator<Item = Element>) -> Self {
        ChainDescription::Finite(elems.into_iter().collect())
    }
}

impl PosetHandle {
    pub fn finite(p: FinitePoset) -> Self {
        PosetHandle::Finite(p)
    }

    pub fn omega_plus_one() -> Self {
        PosetHandle::OmegaPlusOne { first: Some(0) }
    }

    /// The interval `[0, hi]` of notations.
    pub fn ordinal_segment(hi: OrdinalNotation) -> Self {
        PosetHandle::OrdinalSegment { lo: OrdinalNotation::zero(), hi }
    }

    pub fn ordinal_segment_from(
        lo: OrdinalNotation,
        hi: OrdinalNotation,
    ) -> Result<Self, OrderError> {
        if lo > hi {
            return Err(OrderError::EmptySegment {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(PosetHandle::OrdinalSegment { lo, hi })
    }

    pub fn as_finite(&self) -> Option<&FinitePoset> {
        match self {
            PosetHandle::Finite(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, PosetHandle::Finite(_))
    }

    pub fn contains(&self, x: &Element) -> bool {
        match (self, x) {
            (PosetHandle::Finite(p), Element::Id(id)) => p.contains(id),
            (PosetHandle::OmegaPlusOne { first }, Element::Fin(n)) => {
                first.is_some_and(|f| *n >= f)
            }
            (PosetHandle::OmegaPlusOne { .. }, Element::Inf) => true,
            (PosetHandle::OrdinalSegment { lo, hi }, Element::Ord(o)) => o >= lo && o <= hi,
            _ => false,
        }
    }

    fn check_contains(&self, x: &Element) -> Result<(), OrderError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(OrderError::UnknownElement(x.to_string()))
        }
    }

    pub fn le(&self, a: &Element, b: &Element) -> Result<bool, OrderError> {
        self.check_contains(a)?;
        self.check_contains(b)?;
        Ok(match (self, a, b) {
            (PosetHandle::Finite(p), Element::Id(x), Element::Id(y)) => p.le(x, y)?,
            (PosetHandle::OmegaPlusOne { .. }, Element::Fin(m), Element::Fin(n)) => m <= n,
            (PosetHandle::OmegaPlusOne { .. }, _, Element::Inf) => true,
            (PosetHandle::OmegaPlusOne { .. }, Element::Inf, _) => false,
            (PosetHandle::OrdinalSegment { .. }, Element::Ord(x), Element::Ord(y)) => x <= y,
            _ => unreachable!("containment already checked the element kinds"),
        })
    }

    /// The least element, when there is one.
    pub fn least(&self) -> Option<Element> {
        match self {
            PosetHandle::Finite(p) => p.bottom().map(Element::Id),
            PosetHandle::OmegaPlusOne { first } => {
                Some(first.map(Element::Fin).unwrap_or(Element::Inf))
            }
            PosetHandle::OrdinalSegment { lo, .. } => Some(Element::Ord(lo.clone())),
        }
    }

    /// All elements, for finite carriers only.
    pub fn finite_elements(&self) -> Option<Vec<Element>> {
        self.as_finite()
            .map(|p| p.elements().iter().cloned().map(Element::Id).collect())
    }

    /// The sub-poset of everything at or above `x`. Symbolic kinds stay
    /// symbolic: their upper sets are again orders of the same shape.
    pub fn up_set(&self, x: &Element) -> Result<PosetHandle, OrderError> {
        self.check_contains(x)?;
        Ok(match (self, x) {
            (PosetHandle::Finite(p), Element::Id(id)) => {
                let keep: BTreeSet<_> = p
                    .elements()
                    .iter()
                    .filter(|e| p.le(id, e).unwrap_or(false))
                    .cloned()
                    .collect();
                PosetHandle::Finite(p.restriction(&keep)?)
            }
            (PosetHandle::OmegaPlusOne { .. }, Element::Fin(n)) => {
                PosetHandle::OmegaPlusOne { first: Some(*n) }
            }
            (PosetHandle::OmegaPlusOne { .. }, Element::Inf) => {
                PosetHandle::OmegaPlusOne { first: None }
            }
            (PosetHandle::OrdinalSegment { hi, .. }, Element::Ord(o)) => {
                PosetHandle::OrdinalSegment { lo: o.clone(), hi: hi.clone() }
            }
            _ => unreachable!("containment already checked the element kinds"),
        })
    }

    /// Least upper bound of a chain; `Ok(None)` means the chain provably
    /// has no supremum in this poset. The description must be a chain of
    /// members of the poset.
    pub fn sup_chain(&self, chain: &ChainDescription) -> Result<Option<Element>, OrderError> {
        match chain {
            ChainDescription::Finite(set) => {
                for x in set {
                    self.check_contains(x)?;
                }
                let members: Vec<&Element> = set.iter().collect();
                for (i, a) in members.iter().enumerate() {
                    for b in &members[i + 1..] {
                        if !self.le(a, b)? && !self.le(b, a)? {
                            return Err(OrderError::NotAChain {
                                a: (*a).clone(),
                                b: (*b).clone(),
                            });
                        }
                    }
                }
                self.sup_finite_chain(set)
            }
            ChainDescription::AllFin => match self {
                PosetHandle::OmegaPlusOne { first } => {
                    // With any finite stages present the description is
                    // cofinal in them and only the top bounds it; with
                    // none it is the empty chain of the one-point order.
                    let _ = first;
                    Ok(Some(Element::Inf))
                }
                other => Err(OrderError::SupUnresolvable(format!(
                    "the all-finite-stages tag does not describe a chain of {other}"
                ))),
            },
            ChainDescription::AllBelow(bound) => match self {
                PosetHandle::OrdinalSegment { lo, hi } => {
                    if bound <= lo {
                        return Ok(Some(Element::Ord(lo.clone())));
                    }
                    if bound > hi {
                        return Ok(Some(Element::Ord(hi.clone())));
                    }
                    // Nonempty and bounded: a limit is the supremum of
                    // everything below it, a successor's supremum is its
                    // predecessor.
                    Ok(Some(Element::Ord(match bound.predecessor() {
                        Some(pred) => pred.max(lo.clone()),
                        None => bound.clone(),
                    })))
                }
                other => Err(OrderError::SupUnresolvable(format!(
                    "the below-bound tag does not describe a chain of {other}"
                ))),
            },
        }
    }

    fn sup_finite_chain(&self, set: &BTreeSet<Element>) -> Result<Option<Element>, OrderError> {
        if set.is_empty() {
            return Ok(self.least());
        }
        match self {
            PosetHandle::Finite(p) => {
                let idx: Vec<usize> = set
                    .iter()
                    .map(|e| p.index_of(e.as_id().expect("containment checked")))
                    .collect::<Result<_, _>>()?;
                Ok(p.lub_idx(&idx).map(|i| Element::Id(p.elements()[i].clone())))
            }
            PosetHandle::OmegaPlusOne { .. } => {
                if set.contains(&Element::Inf) {
                    return Ok(Some(Element::Inf));
                }
                let max = set
                    .iter()
                    .map(|e| match e {
                        Element::Fin(n) => *n,
                        _ => unreachable!("containment checked"),
                    })
                    .max()
                    .expect("nonempty");
                Ok(Some(Element::Fin(max)))
            }
            PosetHandle::OrdinalSegment { .. } => {
                let max = set
                    .iter()
                    .map(|e| match e {
                        Element::Ord(o) => o.clone(),
                        _ => unreachable!("containment checked"),
                    })
                    .max()
                    .expect("nonempty");
                Ok(Some(Element::Ord(max)))
            }
        }
    }
}

impl fmt::Display for PosetHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetHandle::Finite(p) => write!(f, "finite poset on {} elements", p.len()),
            PosetHandle::OmegaPlusOne { first: Some(n) } => {
                write!(f, "omega-plus-one from fin:{n}")
            }
            PosetHandle::OmegaPlusOne { first: None } => {
                write!(f, "omega-plus-one top point")
            }
            PosetHandle::OrdinalSegment { lo, hi } => write!(f, "segment [{lo}, {hi}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::ElementId;

    fn ord(s: &str) -> Element {
        Element::Ord(s.parse().unwrap())
    }

    #[test]
    fn omega_plus_one_order() {
        let p = PosetHandle::omega_plus_one();
        assert!(p.le(&Element::Fin(2), &Element::Fin(7)).unwrap());
        assert!(!p.le(&Element::Fin(7), &Element::Fin(2)).unwrap());
        assert!(p.le(&Element::Fin(1000), &Element::Inf).unwrap());
        assert!(!p.le(&Element::Inf, &Element::Fin(1000)).unwrap());
        assert!(p.le(&Element::Inf, &Element::Inf).unwrap());
        assert!(matches!(
            p.le(&Element::id("a"), &Element::Inf),
            Err(OrderError::UnknownElement(_))
        ));
    }

    #[test]
    fn finite_chain_sup_on_omega() {
        let p = PosetHandle::omega_plus_one();
        let c = ChainDescription::finite((0..5).map(Element::Fin));
        assert_eq!(p.sup_chain(&c).unwrap(), Some(Element::Fin(4)));
        let with_top = ChainDescription::finite([Element::Fin(3), Element::Inf]);
        assert_eq!(p.sup_chain(&with_top).unwrap(), Some(Element::Inf));
        assert_eq!(
            p.sup_chain(&ChainDescription::finite([])).unwrap(),
            Some(Element::Fin(0))
        );
    }

    #[test]
    fn all_fin_resolves_to_top() {
        let p = PosetHandle::omega_plus_one();
        assert_eq!(p.sup_chain(&ChainDescription::AllFin).unwrap(), Some(Element::Inf));
        let finite = PosetHandle::Finite(FinitePoset::chain(2, "c"));
        assert!(matches!(
            finite.sup_chain(&ChainDescription::AllFin),
            Err(OrderError::SupUnresolvable(_))
        ));
    }

    #[test]
    fn segment_sups() {
        let p = PosetHandle::ordinal_segment("w*2".parse().unwrap());
        let c = ChainDescription::finite([ord("3"), ord("w"), ord("w+1")]);
        assert_eq!(p.sup_chain(&c).unwrap(), Some(ord("w+1")));
        // Everything below a limit sums to the limit; below a successor,
        // to its predecessor.
        let below_limit = ChainDescription::AllBelow("w".parse().unwrap());
        assert_eq!(p.sup_chain(&below_limit).unwrap(), Some(ord("w")));
        let below_successor = ChainDescription::AllBelow("w+2".parse().unwrap());
        assert_eq!(p.sup_chain(&below_successor).unwrap(), Some(ord("w+1")));
        let below_zero = ChainDescription::AllBelow("0".parse().unwrap());
        assert_eq!(p.sup_chain(&below_zero).unwrap(), Some(ord("0")));
    }

    #[test]
    fn non_chains_rejected() {
        let v = FinitePoset::new(
            [ElementId::new("bot"), ElementId::new("a"), ElementId::new("b")],
            [
                (ElementId::new("bot"), ElementId::new("a")),
                (ElementId::new("bot"), ElementId::new("b")),
            ],
        )
        .unwrap();
        let p = PosetHandle::Finite(v);
        let bad = ChainDescription::finite([Element::id("a"), Element::id("b")]);
        assert!(matches!(p.sup_chain(&bad), Err(OrderError::NotAChain { .. })));
    }

    #[test]
    fn up_set_of_omega_is_shifted_omega() {
        let p = PosetHandle::omega_plus_one();
        let up = p.up_set(&Element::Fin(3)).unwrap();
        assert_eq!(up, PosetHandle::OmegaPlusOne { first: Some(3) });
        assert!(!up.contains(&Element::Fin(2)));
        assert!(up.contains(&Element::Fin(3)));
        assert!(up.contains(&Element::Inf));
        assert_eq!(up.least(), Some(Element::Fin(3)));

        let top = p.up_set(&Element::Inf).unwrap();
        assert_eq!(top, PosetHandle::OmegaPlusOne { first: None });
        assert_eq!(top.least(), Some(Element::Inf));
        assert!(!top.contains(&Element::Fin(9)));
    }

    #[test]
    fn up_set_of_finite_restricts() {
        let d = FinitePoset::diamond();
        let p = PosetHandle::Finite(d);
        let up = p.up_set(&Element::id("a")).unwrap();
        let q = up.as_finite().unwrap();
        assert_eq!(q.len(), 2);
        assert!(q.contains(&ElementId::new("a")));
        assert!(q.contains(&ElementId::new("top")));
    }

    #[test]
    fn segment_up_set_narrows_lo() {
        let p = PosetHandle::ordinal_segment("w".parse().unwrap());
        let up = p.up_set(&ord("3")).unwrap();
        assert!(!up.contains(&ord("2")));
        assert!(up.contains(&ord("w")));
        assert_eq!(up.least(), Some(ord("3")));
    }
}
