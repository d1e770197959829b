//! JSON input schemas and loaders, plus the error classification that
//! drives the process exit code.
//!
//! Exit-code contract: `0` all verdicts pass, `1` a verdict failed or an
//! operation honestly refused, `2` usage error, `3` malformed input,
//! `4` a resource cap was exceeded.

use fixlab_core::arrow::ArrowPoset;
use fixlab_core::order::{classify_map, EndoMap, FinitePoset, MapRule, OrderError, PosetHandle};
use fixlab_core::ordinal::{OrdinalError, OrdinalNotation};
use fixlab_core::ElementId;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

/// A failure with an exit-code category attached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    /// Bad invocation: missing flags, unreadable files, formats that do
    /// not apply to the command.
    Usage(String),
    /// Input parsed but violated a schema or structural invariant.
    Schema(String),
    /// A configured resource cap refused the operation.
    Cap(String),
    /// The operation ran and honestly failed or refused.
    Run(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Schema(_) => 3,
            Failure::Cap(_) => 4,
            Failure::Run(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Schema(m) | Failure::Cap(m) | Failure::Run(m) => m,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.message())
    }
}

impl From<OrderError> for Failure {
    fn from(e: OrderError) -> Self {
        match &e {
            OrderError::SizeLimit { .. } => Failure::Cap(e.to_string()),
            OrderError::UnknownElement(_)
            | OrderError::DuplicateElement(_)
            | OrderError::NotTransitive { .. }
            | OrderError::NotAntisymmetric { .. }
            | OrderError::NotAChain { .. }
            | OrderError::PartialFunction { .. }
            | OrderError::MapsOutside { .. }
            | OrderError::RuleUnsupported { .. }
            | OrderError::EmptySegment { .. } => Failure::Schema(e.to_string()),
            _ => Failure::Run(e.to_string()),
        }
    }
}

impl From<OrdinalError> for Failure {
    fn from(e: OrdinalError) -> Self {
        match &e {
            OrdinalError::CarrierTooLarge { .. } => Failure::Cap(e.to_string()),
            OrdinalError::NotALimit(_) => Failure::Run(e.to_string()),
            _ => Failure::Schema(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Schema(format!("invalid JSON: {e}"))
    }
}

/// Read and deserialize a JSON file. Unreadable paths are usage errors;
/// unparsable content is a schema error.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)
        .map_err(|e| Failure::Schema(format!("{}: invalid JSON: {e}", path.display())))?)
}

/// An explicit finite poset: element names plus order pairs. The pairs
/// are closed reflexively and transitively before validation, so cover
/// ("Hasse") pairs are enough; antisymmetry violations are rejected.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FinitePosetInput {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
}

impl FinitePosetInput {
    pub fn to_poset(&self) -> Result<FinitePoset, Failure> {
        let ids: Vec<ElementId> = self.elements.iter().map(ElementId::new).collect();
        let pairs = close_relation(&ids, &self.leq)?;
        Ok(FinitePoset::new(ids, pairs)?)
    }
}

/// Reflexive-transitive closure of the input pairs over the element list.
fn close_relation(
    ids: &[ElementId],
    leq: &[(String, String)],
) -> Result<Vec<(ElementId, ElementId)>, Failure> {
    let index: BTreeMap<&str, usize> =
        ids.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
    if index.len() != ids.len() {
        // Let the poset constructor report the duplicate by name.
        return Ok(leq.iter().map(|(a, b)| (ElementId::new(a), ElementId::new(b))).collect());
    }
    let n = ids.len();
    let mut le = vec![false; n * n];
    for i in 0..n {
        le[i * n + i] = true;
    }
    for (a, b) in leq {
        let &i = index
            .get(a.as_str())
            .ok_or_else(|| Failure::Schema(format!("leq mentions unknown element {a:?}")))?;
        let &j = index
            .get(b.as_str())
            .ok_or_else(|| Failure::Schema(format!("leq mentions unknown element {b:?}")))?;
        le[i * n + j] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if le[i * n + k] {
                for j in 0..n {
                    if le[k * n + j] {
                        le[i * n + j] = true;
                    }
                }
            }
        }
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if le[i * n + j] {
                pairs.push((ids[i].clone(), ids[j].clone()));
            }
        }
    }
    Ok(pairs)
}

/// Symbolic carrier selector: the name `"omega_plus_one"` or a notation
/// segment `{"segment": {"lo": "0", "hi": "w+1"}}` (`lo` optional).
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum SymbolicInput {
    Name(String),
    Segment { segment: SegmentInput },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentInput {
    #[serde(default)]
    pub lo: Option<String>,
    pub hi: String,
}

/// A poset input: either explicit finite data or a symbolic carrier.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetInput {
    #[serde(default)]
    pub elements: Option<Vec<String>>,
    #[serde(default)]
    pub leq: Option<Vec<(String, String)>>,
    #[serde(default)]
    pub symbolic: Option<SymbolicInput>,
}

impl PosetInput {
    pub fn to_handle(&self) -> Result<PosetHandle, Failure> {
        match (&self.elements, &self.symbolic) {
            (Some(elements), None) => {
                let finite = FinitePosetInput {
                    elements: elements.clone(),
                    leq: self.leq.clone().unwrap_or_default(),
                };
                Ok(PosetHandle::Finite(finite.to_poset()?))
            }
            (None, Some(sym)) => {
                if self.leq.is_some() {
                    return Err(Failure::Schema(
                        "a symbolic poset does not take \"leq\" pairs".into(),
                    ));
                }
                sym.to_handle()
            }
            (Some(_), Some(_)) => Err(Failure::Schema(
                "give either \"elements\" or \"symbolic\", not both".into(),
            )),
            (None, None) => Err(Failure::Schema(
                "a poset needs \"elements\" (finite) or \"symbolic\"".into(),
            )),
        }
    }
}

impl SymbolicInput {
    fn to_handle(&self) -> Result<PosetHandle, Failure> {
        match self {
            SymbolicInput::Name(name) if name == "omega_plus_one" => {
                Ok(PosetHandle::omega_plus_one())
            }
            SymbolicInput::Name(other) => Err(Failure::Schema(format!(
                "unknown symbolic poset {other:?} (expected \"omega_plus_one\" or a segment)"
            ))),
            SymbolicInput::Segment { segment } => {
                let hi: OrdinalNotation = segment.hi.parse().map_err(Failure::from)?;
                let lo: OrdinalNotation = match &segment.lo {
                    Some(s) => s.parse().map_err(Failure::from)?,
                    None => OrdinalNotation::zero(),
                };
                Ok(PosetHandle::ordinal_segment_from(lo, hi)?)
            }
        }
    }
}

/// A self-map input: the carrier plus exactly one of an explicit image
/// table or a named rule (`identity`, `omega-successor`,
/// `segment-successor`).
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapInput {
    pub poset: PosetInput,
    #[serde(default)]
    pub table: Option<BTreeMap<String, String>>,
    #[serde(default)]
    pub rule: Option<String>,
}

impl MapInput {
    pub fn to_endomap(&self) -> Result<EndoMap, Failure> {
        let handle = self.poset.to_handle()?;
        let rule = match (&self.table, &self.rule) {
            (Some(table), None) => MapRule::Table(
                table
                    .iter()
                    .map(|(k, v)| (ElementId::new(k), ElementId::new(v)))
                    .collect(),
            ),
            (None, Some(name)) => match name.replace('_', "-").as_str() {
                "identity" => MapRule::Identity,
                "omega-successor" => MapRule::OmegaSuccessor,
                "segment-successor" => MapRule::SegmentSuccessor,
                other => {
                    return Err(Failure::Schema(format!(
                        "unknown map rule {other:?} (expected identity, omega-successor, or segment-successor)"
                    )))
                }
            },
            (Some(_), Some(_)) => {
                return Err(Failure::Schema(
                    "give either \"table\" or \"rule\", not both".into(),
                ))
            }
            (None, None) => {
                return Err(Failure::Schema(
                    "a map needs a \"table\" or a \"rule\"".into(),
                ))
            }
        };
        Ok(classify_map(handle, rule)?)
    }
}

/// A two-stage poset: both stage posets plus the restriction table from
/// later-stage elements to earlier-stage elements.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowInput {
    pub p1: FinitePosetInput,
    pub p0: FinitePosetInput,
    pub restrict: BTreeMap<String, String>,
}

impl ArrowInput {
    pub fn to_arrow(&self) -> Result<ArrowPoset, Failure> {
        let stage1 = self.p1.to_poset()?;
        let stage0 = self.p0.to_poset()?;
        let restrict = self
            .restrict
            .iter()
            .map(|(k, v)| (ElementId::new(k), ElementId::new(v)))
            .collect();
        Ok(ArrowPoset::new(stage1, stage0, restrict)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fixlab_core::Element;

    fn poset(json: &str) -> Result<PosetHandle, Failure> {
        let input: PosetInput = serde_json::from_str(json).map_err(Failure::from)?;
        input.to_handle()
    }

    #[test]
    fn cover_pairs_are_closed_transitively() {
        let h = poset(r#"{"elements":["a","b","c"],"leq":[["a","b"],["b","c"]]}"#).unwrap();
        assert!(h.le(&Element::id("a"), &Element::id("c")).unwrap());
    }

    #[test]
    fn antisymmetry_violation_is_schema() {
        let err = poset(r#"{"elements":["a","b"],"leq":[["a","b"],["b","a"]]}"#).unwrap_err();
        assert!(matches!(err, Failure::Schema(_)));
    }

    #[test]
    fn symbolic_names_parse() {
        assert_eq!(
            poset(r#"{"symbolic":"omega_plus_one"}"#).unwrap(),
            PosetHandle::omega_plus_one()
        );
        let seg = poset(r#"{"symbolic":{"segment":{"hi":"w+1"}}}"#).unwrap();
        assert!(seg.contains(&Element::Ord("w".parse().unwrap())));
        assert!(poset(r#"{"symbolic":"nope"}"#).is_err());
    }

    #[test]
    fn poset_needs_exactly_one_form() {
        assert!(matches!(poset(r#"{}"#), Err(Failure::Schema(_))));
        assert!(matches!(
            poset(r#"{"elements":["a"],"symbolic":"omega_plus_one"}"#),
            Err(Failure::Schema(_))
        ));
    }

    #[test]
    fn map_rules_parse() {
        let input: MapInput = serde_json::from_str(
            r#"{"poset":{"symbolic":"omega_plus_one"},"rule":"omega_successor"}"#,
        )
        .unwrap();
        let map = input.to_endomap().unwrap();
        assert_eq!(map.apply(&Element::Fin(3)).unwrap(), Element::Fin(4));
    }

    #[test]
    fn map_table_loads_and_classifies() {
        let input: MapInput = serde_json::from_str(
            r#"{"poset":{"elements":["a","b"],"leq":[["a","b"]]},"table":{"a":"b","b":"b"}}"#,
        )
        .unwrap();
        let map = input.to_endomap().unwrap();
        assert!(map.is_progressive() && map.is_monotone());
    }

    #[test]
    fn arrow_input_builds() {
        let input: ArrowInput = serde_json::from_str(
            r#"{"p1":{"elements":["s0","s1"],"leq":[["s0","s1"]]},
                "p0":{"elements":["pt"]},
                "restrict":{"s0":"pt","s1":"pt"}}"#,
        )
        .unwrap();
        let ap = input.to_arrow().unwrap();
        assert_eq!(ap.stage1().len(), 2);
        assert_eq!(ap.stage0().len(), 1);
    }

    #[test]
    fn cap_errors_map_to_exit_four() {
        let e: Failure = OrderError::SizeLimit { what: "x", size: 9, cap: 1 }.into();
        assert_eq!(e.exit_code(), 4);
        let e: Failure = OrderError::UnknownElement("z".into()).into();
        assert_eq!(e.exit_code(), 3);
    }
}
