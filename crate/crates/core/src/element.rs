//! Element identities shared by every carrier in the crate.

use crate::ordinal::OrdinalNotation;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Name of an element of a finite carrier. Plain string, compared
/// lexicographically; the order relation of a poset lives in the poset, not
/// here.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(String);

impl ElementId {
    pub fn new(s: impl Into<String>) -> Self {
        ElementId(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<&str> for ElementId {
    fn from(s: &str) -> Self {
        ElementId(s.to_string())
    }
}

/// A point of any poset handle: a named element of a finite carrier, a
/// finite stage `fin:n` or the top `inf` of the omega-plus-one order, or a
/// notation inside an ordinal segment.
///
/// The derived `Ord` is structural and only serves container keys; poset
/// order is asked of the owning handle.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Id(ElementId),
    Fin(u64),
    Inf,
    Ord(OrdinalNotation),
}

impl Element {
    pub fn id(s: impl Into<String>) -> Self {
        Element::Id(ElementId::new(s))
    }

    pub fn as_id(&self) -> Option<&ElementId> {
        match self {
            Element::Id(id) => Some(id),
            _ => None,
        }
    }
}

impl From<ElementId> for Element {
    fn from(id: ElementId) -> Self {
        Element::Id(id)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Id(id) => write!(f, "{id}"),
            Element::Fin(n) => write!(f, "fin:{n}"),
            Element::Inf => write!(f, "inf"),
            Element::Ord(o) => write!(f, "ord:{o}"),
        }
    }
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        Ok(Element::parse_tagged(&raw))
    }
}

impl Element {
    /// Read the tagged string form produced by `Display`. Untagged input is
    /// a plain id; callers that know the poset kind should use the kind's
    /// own parser instead.
    pub fn parse_tagged(raw: &str) -> Element {
        if raw == "inf" {
            return Element::Inf;
        }
        if let Some(n) = raw.strip_prefix("fin:").and_then(|n| n.parse().ok()) {
            return Element::Fin(n);
        }
        if let Some(o) = raw.strip_prefix("ord:").and_then(|o| o.parse().ok()) {
            return Element::Ord(o);
        }
        Element::id(raw)
    }
}
