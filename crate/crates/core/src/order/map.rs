//! Endomaps of a carrier, classified up front: every map the engines
//! receive carries verified progressivity and monotonicity flags, and
//! every engine result is wrapped in a witness that re-checks the fixed
//! point against the map itself.

use super::handle::PosetHandle;
use super::OrderError;
use crate::element::{Element, ElementId};
use std::collections::BTreeMap;
use std::fmt;

/// How the map acts. Finite carriers use explicit tables; the symbolic
/// carriers use rules whose order properties hold by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapRule {
    Table(BTreeMap<ElementId, ElementId>),
    Identity,
    /// `fin:n -> fin:n+1`, `inf -> inf`.
    OmegaSuccessor,
    /// `x -> x + 1`, capped at the top of the segment.
    SegmentSuccessor,
}

impl MapRule {
    pub fn name(&self) -> &'static str {
        match self {
            MapRule::Table(_) => "table",
            MapRule::Identity => "identity",
            MapRule::OmegaSuccessor => "omega-successor",
            MapRule::SegmentSuccessor => "segment-successor",
        }
    }
}

/// A self-map of a carrier together with its verified order properties.
/// Built only through [`classify_map`], so the flags can be trusted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoMap {
    poset: PosetHandle,
    rule: MapRule,
    progressive: bool,
    monotone: bool,
}

/// Check the rule fits the carrier and measure its order properties.
/// Finite tables are swept exhaustively; the symbolic rules are total
/// orders' successor/identity maps, whose progressivity and monotonicity
/// are immediate (`x <= x + 1`, and `x <= y` implies `x + 1 <= y + 1`,
/// with a cap preserved by both).
pub fn classify_map(poset: PosetHandle, rule: MapRule) -> Result<EndoMap, OrderError> {
    match (&poset, &rule) {
        (PosetHandle::Finite(p), MapRule::Table(table)) => {
            for id in p.elements() {
                match table.get(id) {
                    None => {
                        return Err(OrderError::PartialFunction {
                            at: Element::Id(id.clone()),
                        })
                    }
                    Some(img) if !p.contains(img) => {
                        return Err(OrderError::MapsOutside {
                            from: Element::Id(id.clone()),
                            to: Element::Id(img.clone()),
                        })
                    }
                    Some(_) => {}
                }
            }
            for key in table.keys() {
                if !p.contains(key) {
                    return Err(OrderError::UnknownElement(key.to_string()));
                }
            }
            let apply = |id: &ElementId| table.get(id).expect("checked total").clone();
            let progressive = p.elements().iter().all(|x| p.le(x, &apply(x)).unwrap());
            let monotone = p.elements().iter().all(|x| {
                p.elements()
                    .iter()
                    .all(|y| !p.le(x, y).unwrap() || p.le(&apply(x), &apply(y)).unwrap())
            });
            Ok(EndoMap { poset, rule, progressive, monotone })
        }
        (_, MapRule::Identity) => Ok(EndoMap { poset, rule, progressive: true, monotone: true }),
        (PosetHandle::OmegaPlusOne { .. }, MapRule::OmegaSuccessor) => {
            Ok(EndoMap { poset, rule, progressive: true, monotone: true })
        }
        (PosetHandle::OrdinalSegment { .. }, MapRule::SegmentSuccessor) => {
            Ok(EndoMap { poset, rule, progressive: true, monotone: true })
        }
        (p, r) => Err(OrderError::RuleUnsupported { rule: r.name(), poset: p.to_string() }),
    }
}

impl EndoMap {
    pub fn poset(&self) -> &PosetHandle {
        &self.poset
    }

    pub fn rule(&self) -> &MapRule {
        &self.rule
    }

    pub fn is_progressive(&self) -> bool {
        self.progressive
    }

    pub fn is_monotone(&self) -> bool {
        self.monotone
    }

    pub fn apply(&self, x: &Element) -> Result<Element, OrderError> {
        if !self.poset.contains(x) {
            return Err(OrderError::UnknownElement(x.to_string()));
        }
        Ok(match (&self.rule, x) {
            (MapRule::Identity, _) => x.clone(),
            (MapRule::Table(t), Element::Id(id)) => {
                Element::Id(t.get(id).expect("classified total").clone())
            }
            (MapRule::OmegaSuccessor, Element::Fin(n)) => Element::Fin(n + 1),
            (MapRule::OmegaSuccessor, Element::Inf) => Element::Inf,
            (MapRule::SegmentSuccessor, Element::Ord(o)) => {
                let hi = match &self.poset {
                    PosetHandle::OrdinalSegment { hi, .. } => hi,
                    _ => unreachable!("classified against a segment"),
                };
                if o < hi {
                    Element::Ord(o.successor())
                } else {
                    Element::Ord(hi.clone())
                }
            }
            _ => unreachable!("containment checked against the classified carrier"),
        })
    }

    /// The fixed points, for finite carriers.
    pub fn finite_fixed_points(&self) -> Option<Vec<Element>> {
        let elems = self.poset.finite_elements()?;
        Some(
            elems
                .into_iter()
                .filter(|x| self.apply(x).expect("carrier element") == *x)
                .collect(),
        )
    }

    /// Same rule on the sub-carrier of everything at or above `x`. For a
    /// progressive map this restriction is again a self-map.
    pub fn restricted_above(&self, x: &Element) -> Result<EndoMap, OrderError> {
        let sub = self.poset.up_set(x)?;
        let rule = match (&self.rule, &sub) {
            (MapRule::Table(t), PosetHandle::Finite(p)) => MapRule::Table(
                t.iter()
                    .filter(|(k, _)| p.contains(k))
                    .map(|(k, v)| (k.clone(), v.clone()))
                    .collect(),
            ),
            (r, _) => (*r).clone(),
        };
        classify_map(sub, rule)
    }
}

impl fmt::Display for EndoMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {}", self.rule.name(), self.poset)
    }
}

/// A fixed point as produced by an engine, re-verified at construction:
/// the point really is fixed and really sits above the start.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointWitness {
    pub engine: &'static str,
    pub above: Element,
    pub point: Element,
}

impl FixedPointWitness {
    pub fn checked(
        engine: &'static str,
        map: &EndoMap,
        above: Element,
        point: Element,
    ) -> Result<Self, OrderError> {
        let image = map.apply(&point)?;
        if image != point {
            return Err(OrderError::InvalidWitness(format!(
                "{engine}: claimed fixed point {point} maps to {image}"
            )));
        }
        if !map.poset().le(&above, &point)? {
            return Err(OrderError::InvalidWitness(format!(
                "{engine}: fixed point {point} is not above the start {above}"
            )));
        }
        Ok(FixedPointWitness { engine, above, point })
    }
}
