//! The plain iteration oracle: apply the map until the value stops
//! moving. Independent of every other engine — it never consults
//! suprema, subsidiary posets, or enumeration — which is what makes it
//! usable as a cross-check for all of them.

use crate::element::Element;
use crate::order::{EndoMap, FixedPointWitness, OrderError, PosetHandle};

/// Step budget for carriers whose size we cannot read off.
const SYMBOLIC_STEP_BUDGET: usize = 10_000;

/// Iterate `map` from `start` until a fixed point appears. For a
/// progressive map on a finite carrier this terminates within one step
/// per element: each non-fixed step moves strictly upward.
pub fn iterative_fix_oracle(
    map: &EndoMap,
    start: &Element,
) -> Result<FixedPointWitness, OrderError> {
    if !map.is_progressive() {
        return Err(OrderError::EngineRequires {
            engine: "iterate",
            requirement: "a progressive map",
        });
    }
    let budget = match map.poset() {
        PosetHandle::Finite(p) => p.len() + 1,
        _ => SYMBOLIC_STEP_BUDGET,
    };
    let mut current = start.clone();
    for _ in 0..=budget {
        let next = map.apply(&current)?;
        if next == current {
            return FixedPointWitness::checked("iterate", map, start.clone(), current);
        }
        current = next;
    }
    Err(OrderError::IterationDiverged { steps: budget })
}
