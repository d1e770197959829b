//! Resource caps shared by the enumeration-heavy operations.

use serde::{Deserialize, Serialize};

/// Limits for operations whose cost is exponential in the input size.
///
/// Every field can be overridden; `Default` gives the documented desk-scale
/// values. Operations that would exceed a cap refuse with a typed error
/// instead of running away.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest finite poset whose chains (2^n subsets) are enumerated
    /// outright. Above this, completeness checks fall back to the
    /// bottom-element criterion, which is equivalent on finite posets.
    pub chain_enum_elements: usize,
    /// Largest postfixed-point subposet for which the full monotone
    /// progressive map family is enumerated (|Q|^|Q| candidates).
    pub pataraia_q: usize,
    /// Largest progressive-map family enumerated when building a
    /// fixed-point operator.
    pub prog_maps: usize,
    /// Largest product carrier materialized for operator construction.
    /// The order matrix is quadratic in this, so keep it a few thousand.
    pub product_elements: usize,
    /// Largest `n` accepted by the two-stage blowup constructor.
    pub blowup_n: u64,
    /// Largest stage carrier for two-stage chain-object enumeration.
    pub arrow_stage_elements: usize,
    /// Number of fundamental-sequence points sampled when resolving a
    /// limit-stage supremum.
    pub limit_prefix: usize,
    /// Largest carrier accepted by the ordinal classifier.
    pub classifier_carrier: usize,
    /// Largest node-count times fact-count for which the dataflow lattice
    /// is materialized as an explicit finite poset.
    pub dataflow_materialize_bits: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            chain_enum_elements: 12,
            pataraia_q: 5,
            prog_maps: 10_000,
            product_elements: 4096,
            blowup_n: 64,
            arrow_stage_elements: 8,
            limit_prefix: 8,
            classifier_carrier: 4,
            dataflow_materialize_bits: 12,
        }
    }
}

impl Caps {
    /// Apply `key=value` overrides (comma-separated), as accepted from the
    /// `FIXLAB_CAPS` environment variable. Unknown keys are errors.
    pub fn apply_overrides(&mut self, spec: &str) -> Result<(), String> {
        for item in spec.split(',') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got {item:?}"))?;
            let parse = |v: &str| -> Result<usize, String> {
                v.trim()
                    .parse::<usize>()
                    .map_err(|e| format!("bad value for {key:?}: {e}"))
            };
            match key.trim() {
                "chain_enum_elements" => self.chain_enum_elements = parse(value)?,
                "pataraia_q" => self.pataraia_q = parse(value)?,
                "prog_maps" => self.prog_maps = parse(value)?,
                "product_elements" => self.product_elements = parse(value)?,
                "blowup_n" => self.blowup_n = parse(value)? as u64,
                "arrow_stage_elements" => self.arrow_stage_elements = parse(value)?,
                "limit_prefix" => self.limit_prefix = parse(value)?,
                "classifier_carrier" => self.classifier_carrier = parse(value)?,
                "dataflow_materialize_bits" => {
                    self.dataflow_materialize_bits = parse(value)? as u32
                }
                other => return Err(format!("unknown cap {other:?}")),
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse() {
        let mut caps = Caps::default();
        caps.apply_overrides("chain_enum_elements=10, pataraia_q=4").unwrap();
        assert_eq!(caps.chain_enum_elements, 10);
        assert_eq!(caps.pataraia_q, 4);
        assert_eq!(caps.prog_maps, 10_000);
    }

    #[test]
    fn unknown_key_rejected() {
        let mut caps = Caps::default();
        assert!(caps.apply_overrides("nope=3").is_err());
        assert!(caps.apply_overrides("chain_enum_elements").is_err());
    }
}
