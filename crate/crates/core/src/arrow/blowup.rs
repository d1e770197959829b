//! How long can an iteration at the later stage run when the earlier
//! stage is a single point? The carrier below answers "arbitrarily
//! long": a chain of length `n + 1` sits over one point, and the capped
//! successor map needs all `n` steps to reach its fixed point. Yet any
//! two-stage linear order must embed its later stage into its earlier
//! stage, so a family of internal measuring chains whose earlier fibers
//! all have length at most `n` can never measure that iteration to
//! completion. This module builds the carrier, runs the iteration, and
//! checks a supplied family against the ceiling.

use super::ordinal::ArrowOrdinalFamily;
use super::poset::{classify_arrow_map, ArrowEndoMap, ArrowPoset};
use crate::caps::Caps;
use crate::element::{Element, ElementId};
use crate::engines::iterative_fix_oracle;
use crate::order::OrderError;
use serde::Serialize;
use std::collections::BTreeMap;

/// Progress measure along the iteration chain: a numbered stage while
/// strictly below the fixed point, `Top` at and beyond it. The derived
/// order places every `Val` below `Top`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Rank {
    Val(u64),
    Top,
}

/// Rank of position `pos` on the iteration chain of parameter `n`.
pub fn rank_function(n: u64, pos: u64) -> Rank {
    if pos < n {
        Rank::Val(pos)
    } else {
        Rank::Top
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BlowupVerdict {
    /// Some earlier fiber is longer than `n`, so the family is not
    /// constrained by the ceiling.
    BoundHolds,
    /// Every earlier fiber has length at most `n`; no later fiber can
    /// then measure the full iteration.
    FamilyTooShort,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupReport {
    pub n: u64,
    pub verdict: BlowupVerdict,
    /// Whether every later fiber is long enough (length > n) to reach
    /// the fixed point of the iteration.
    pub computes_fixed_point: bool,
    /// Whether rank composed with each fiber embedding is pointwise
    /// dominating, monotone, and strictly increasing below `Top`.
    pub rank_inequality_ok: bool,
    /// Fixed point actually reached by iterating the later-stage map.
    pub fixed_point: ElementId,
}

/// The length-`n` iteration carrier: a chain of `n + 1` later elements
/// collapsed onto one earlier point, with the capped successor map on
/// the later stage and the identity on the earlier one.
pub fn blowup_pair(n: u64, caps: &Caps) -> Result<(ArrowPoset, ArrowEndoMap), OrderError> {
    if n > caps.blowup_n {
        return Err(OrderError::SizeLimit {
            what: "iteration chain parameter",
            size: n as usize,
            cap: caps.blowup_n as usize,
        });
    }
    let poset = ArrowPoset::collapsed_chain(n as usize);
    let mut table1 = BTreeMap::new();
    for i in 0..=n {
        let next = (i + 1).min(n);
        table1.insert(ElementId::new(format!("s{i}")), ElementId::new(format!("s{next}")));
    }
    let table0: BTreeMap<ElementId, ElementId> =
        [(ElementId::new("pt0"), ElementId::new("pt0"))].into();
    let map = classify_arrow_map(poset.clone(), table1, table0)?;
    Ok((poset, map))
}

/// Check one family of internal measuring chains against the iteration
/// of parameter `n`. The family is first validated fiberwise through
/// the two-stage order checker; the verdict then compares earlier fiber
/// lengths against `n`, independently of the later fibers, and the two
/// sides are confirmed never to contradict the embedding ceiling.
pub fn verify_blowup_bound(
    n: u64,
    family: &ArrowOrdinalFamily,
    caps: &Caps,
) -> Result<BlowupReport, OrderError> {
    family
        .validate()
        .map_err(|e| OrderError::InvalidWitness(format!("family rejected: {e}")))?;

    let (_, map) = blowup_pair(n, caps)?;
    let witness = iterative_fix_oracle(map.stage1(), &Element::id("s0"))?;
    let fixed_point = witness
        .point
        .as_id()
        .ok_or_else(|| {
            OrderError::InvalidWitness("iteration left the named carrier".into())
        })?
        .clone();
    if fixed_point != ElementId::new(format!("s{n}")) {
        return Err(OrderError::InvalidWitness(format!(
            "iteration stopped at {fixed_point} instead of the chain top"
        )));
    }

    let verdict = if family.b0.values().all(|len| *len <= n) {
        BlowupVerdict::FamilyTooShort
    } else {
        BlowupVerdict::BoundHolds
    };
    let computes_fixed_point = !family.b1.is_empty()
        && family.b1.values().all(|fiber| fiber.embed.len() as u64 > n);

    // A validated fiber embeds into its target, so a family whose
    // earlier fibers are all short cannot have long later fibers. If
    // both flags fire at once something above is broken.
    if verdict == BlowupVerdict::FamilyTooShort && computes_fixed_point {
        return Err(OrderError::InvalidWitness(
            "a fiber outgrew the chain it embeds into".into(),
        ));
    }

    let mut rank_inequality_ok = true;
    'fibers: for fiber in family.b1.values() {
        let ranks: Vec<Rank> =
            fiber.embed.iter().map(|pos| rank_function(n, *pos)).collect();
        for (p, r) in ranks.iter().enumerate() {
            if *r < rank_function(n, p as u64) {
                rank_inequality_ok = false;
                break 'fibers;
            }
        }
        for w in ranks.windows(2) {
            let ascends = w[0] <= w[1];
            let strict_below_top = w[1] == Rank::Top || w[0] < w[1];
            if !ascends || !strict_below_top {
                rank_inequality_ok = false;
                break 'fibers;
            }
        }
    }

    Ok(BlowupReport { n, verdict, computes_fixed_point, rank_inequality_ok, fixed_point })
}
