//! Stage-indexed iteration: the value at a successor stage is the
//! supremum of the previous value with its image (computed literally as
//! a two-element chain supremum), and the value at a limit stage is the
//! supremum of the values along the limit's fundamental sequence. Limit
//! suprema are resolved from a sampled prefix plus a certificate that
//! pins down the whole tail — never by trusting the prefix alone.

use crate::caps::Caps;
use crate::element::Element;
use crate::order::{
    ChainDescription, EndoMap, FixedPointWitness, MapRule, OrderError, PosetHandle,
};
use crate::ordinal::{fundamental_sequence, OrdinalNotation};
use std::collections::BTreeMap;

/// Every stage the evaluation touched, in stage order, plus the value at
/// the requested final stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationTrace {
    pub start: Element,
    pub to_stage: OrdinalNotation,
    pub stages: Vec<(OrdinalNotation, Element)>,
    pub final_value: Element,
    /// Later stages carry larger-or-equal values, confirmed pairwise
    /// over everything recorded.
    pub monotone_checked: bool,
}

impl IterationTrace {
    pub fn value_at(&self, stage: &OrdinalNotation) -> Option<&Element> {
        self.stages
            .binary_search_by(|(s, _)| s.cmp(stage))
            .ok()
            .map(|i| &self.stages[i].1)
    }
}

struct Evaluator<'a> {
    map: &'a EndoMap,
    up: PosetHandle,
    memo: BTreeMap<OrdinalNotation, Element>,
    prefix_len: u64,
}

impl<'a> Evaluator<'a> {
    fn eval(&mut self, stage: &OrdinalNotation, start: &Element) -> Result<Element, OrderError> {
        if let Some(v) = self.memo.get(stage) {
            return Ok(v.clone());
        }
        let value = if stage.is_zero() {
            start.clone()
        } else if let Some(prev_stage) = stage.predecessor() {
            let prev = self.eval(&prev_stage, start)?;
            let image = self.map.apply(&prev)?;
            let pair = ChainDescription::finite([prev, image]);
            self.up
                .sup_chain(&pair)?
                .expect("a two-element chain in an up-set has a supremum there")
        } else {
            self.eval_limit(stage, start)?
        };
        self.memo.insert(stage.clone(), value.clone());
        Ok(value)
    }

    fn eval_limit(
        &mut self,
        stage: &OrdinalNotation,
        start: &Element,
    ) -> Result<Element, OrderError> {
        let seq = fundamental_sequence(stage)
            .map_err(|e| OrderError::SupUnresolvable(e.to_string()))?;
        let points: Vec<OrdinalNotation> = (0..self.prefix_len).map(|k| seq.nth(k)).collect();
        let mut values = Vec::with_capacity(points.len());
        for p in &points {
            values.push(self.eval(p, start)?);
        }
        for w in values.windows(2) {
            if !self.up.le(&w[0], &w[1])? {
                return Err(OrderError::InvalidWitness(format!(
                    "stage values are not ascending below {stage}"
                )));
            }
        }
        // A value the map already fixes absorbs every later stage, so the
        // tail is constant and the sampled prefix bounds the whole
        // sequence.
        for v in &values {
            if self.map.apply(v)? == *v {
                return Ok(v.clone());
            }
        }
        // No fixed value in the prefix: fall back to a certificate that
        // the rule can never stall, which makes the whole value sequence
        // strictly increasing and cofinal in a tagged chain with a known
        // supremum.
        match self.map.rule() {
            MapRule::OmegaSuccessor => {
                let all_fin_strict = values.windows(2).all(|w| match (&w[0], &w[1]) {
                    (Element::Fin(a), Element::Fin(b)) => a < b,
                    _ => false,
                }) && matches!(values.first(), Some(Element::Fin(_)));
                if all_fin_strict {
                    // The successor rule fixes no finite stage, so the
                    // values run through an unbounded set of finite
                    // elements; only the top bounds those.
                    return Ok(self
                        .up
                        .sup_chain(&ChainDescription::AllFin)?
                        .expect("the tagged chain resolves on this carrier"));
                }
            }
            MapRule::SegmentSuccessor => {
                let tracks_sequence = values
                    .iter()
                    .zip(&points)
                    .all(|(v, p)| matches!(v, Element::Ord(o) if o == p));
                if tracks_sequence && self.up.contains(&Element::Ord(stage.clone())) {
                    // The values coincide with the fundamental sequence
                    // itself, which is cofinal in its limit.
                    return Ok(self
                        .up
                        .sup_chain(&ChainDescription::AllBelow(stage.clone()))?
                        .expect("the tagged chain resolves on this carrier"));
                }
            }
            _ => {}
        }
        Err(OrderError::SupUnresolvable(format!(
            "no certificate covers the tail of the value sequence below {stage}"
        )))
    }
}

/// Evaluate the staged iteration of `map` from `start` at `to_stage`,
/// recording every stage touched along the way.
pub fn transfinite_iterate(
    map: &EndoMap,
    start: &Element,
    to_stage: &OrdinalNotation,
    caps: &Caps,
) -> Result<IterationTrace, OrderError> {
    if !map.is_progressive() {
        return Err(OrderError::EngineRequires {
            engine: "transfinite",
            requirement: "a progressive map",
        });
    }
    let up = map.poset().up_set(start)?;
    // On a finite carrier the values strictly climb until fixed, so one
    // sample point per element is enough to catch the stall; symbolic
    // carriers use the configured prefix.
    let prefix_len = match &up {
        PosetHandle::Finite(p) => (caps.limit_prefix as u64).max(p.len() as u64 + 1),
        _ => caps.limit_prefix as u64,
    };
    let mut ev = Evaluator { map, up, memo: BTreeMap::new(), prefix_len };
    let final_value = ev.eval(to_stage, start)?;
    let stages: Vec<(OrdinalNotation, Element)> = ev.memo.into_iter().collect();
    let mut monotone_checked = true;
    for (i, (si, vi)) in stages.iter().enumerate() {
        for (sj, vj) in &stages[i + 1..] {
            debug_assert!(si < sj);
            if !map.poset().le(vi, vj)? {
                monotone_checked = false;
            }
        }
    }
    Ok(IterationTrace {
        start: start.clone(),
        to_stage: to_stage.clone(),
        stages,
        final_value,
        monotone_checked,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IterationOutcome {
    /// The first recorded stage whose value the map fixes.
    Stabilized {
        stage: OrdinalNotation,
        witness: FixedPointWitness,
    },
    NotStabilized {
        to_stage: OrdinalNotation,
        last: Element,
    },
}

/// Run the staged iteration and report where (if anywhere) it lands on a
/// fixed point.
pub fn bw_fix_by_iteration(
    map: &EndoMap,
    start: &Element,
    to_stage: &OrdinalNotation,
    caps: &Caps,
) -> Result<IterationOutcome, OrderError> {
    let trace = transfinite_iterate(map, start, to_stage, caps)?;
    for (stage, value) in &trace.stages {
        if map.apply(value)? == *value {
            let witness =
                FixedPointWitness::checked("bw-iteration", map, start.clone(), value.clone())?;
            return Ok(IterationOutcome::Stabilized { stage: stage.clone(), witness });
        }
    }
    Ok(IterationOutcome::NotStabilized {
        to_stage: to_stage.clone(),
        last: trace.final_value,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectivityReport {
    /// Largest recorded stage through which all recorded values are
    /// pairwise distinct.
    pub injective_up_to: OrdinalNotation,
    pub first_repeat_at: Option<OrdinalNotation>,
    /// First recorded stage whose value the map fixes.
    pub first_fixed: Option<OrdinalNotation>,
}

/// Where does the stage-to-value assignment stop being injective? For a
/// progressive map that happens exactly one step after the first fixed
/// value, so the two report fields confirm each other.
pub fn injectivity_scan(
    map: &EndoMap,
    start: &Element,
    to_stage: &OrdinalNotation,
    caps: &Caps,
) -> Result<InjectivityReport, OrderError> {
    let trace = transfinite_iterate(map, start, to_stage, caps)?;
    let mut seen: Vec<&Element> = Vec::new();
    let mut injective_up_to = OrdinalNotation::zero();
    let mut first_repeat_at = None;
    for (stage, value) in &trace.stages {
        if seen.contains(&value) {
            first_repeat_at = Some(stage.clone());
            break;
        }
        seen.push(value);
        injective_up_to = stage.clone();
    }
    let mut first_fixed = None;
    for (stage, value) in &trace.stages {
        if map.apply(value)? == *value {
            first_fixed = Some(stage.clone());
            break;
        }
    }
    Ok(InjectivityReport { injective_up_to, first_repeat_at, first_fixed })
}
