//! Fundamental sequences: strictly increasing cofinal assignments below a
//! limit notation.

use super::notation::OrdinalNotation;
use super::OrdinalError;

/// A limit notation together with a generator for a strictly increasing
/// sequence converging to it from below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalSequence {
    limit: OrdinalNotation,
    /// Everything before the last term, with the last coefficient reduced
    /// by one; the sequence climbs through the final `w^e` block.
    prefix: OrdinalNotation,
    kind: SeqKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum SeqKind {
    /// Last exponent is `e+1`: k-th point is `prefix + w^e * k`.
    PowerSuccessor { e: OrdinalNotation },
    /// Last exponent is itself a limit: k-th point is `prefix + w^(e[k])`.
    PowerLimit { e_seq: Box<FundamentalSequence> },
}

impl FundamentalSequence {
    pub fn limit(&self) -> &OrdinalNotation {
        &self.limit
    }

    /// The k-th point of the sequence. Strictly increasing in `k`, always
    /// strictly below the limit.
    pub fn nth(&self, k: u64) -> OrdinalNotation {
        match &self.kind {
            SeqKind::PowerSuccessor { e } => self
                .prefix
                .extended(e.clone(), k)
                .expect("prefix extends by a smaller exponent"),
            SeqKind::PowerLimit { e_seq } => self
                .prefix
                .extended(e_seq.nth(k), 1)
                .expect("prefix extends by a smaller exponent"),
        }
    }
}

/// Decompose a limit notation into its canonical fundamental sequence.
/// Rejects zero and successors.
pub fn fundamental_sequence(
    limit: &OrdinalNotation,
) -> Result<FundamentalSequence, OrdinalError> {
    let terms = limit.terms();
    let (last_exp, last_coeff) = match terms.last() {
        Some((e, c)) if !e.is_zero() => (e.clone(), *c),
        _ => return Err(OrdinalError::NotALimit(limit.to_string())),
    };
    let mut prefix_terms: Vec<(OrdinalNotation, u64)> = terms[..terms.len() - 1].to_vec();
    if last_coeff > 1 {
        prefix_terms.push((last_exp.clone(), last_coeff - 1));
    }
    let prefix = OrdinalNotation::from_terms(prefix_terms)
        .expect("a prefix of a canonical notation is canonical");
    let kind = match last_exp.predecessor() {
        Some(e) => SeqKind::PowerSuccessor { e },
        None => SeqKind::PowerLimit {
            e_seq: Box::new(fundamental_sequence(&last_exp)?),
        },
    };
    Ok(FundamentalSequence { limit: limit.clone(), prefix, kind })
}
