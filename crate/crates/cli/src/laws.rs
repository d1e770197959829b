//! Randomized algebraic checks on ordinal notations: comparison behaves
//! as a linear order, successor moves strictly upward, and printing
//! round-trips through the parser. Shared by the `ordinal laws`
//! subcommand and the self-test suite.

use crate::rng::SplitMix64;
use fixlab_core::ordinal::{ord_compare, random_notation, OrdinalNotation};
use std::cmp::Ordering;

/// How many violations to spell out before truncating the list. The
/// sample still counts every failure; only the descriptions are capped.
const MAX_REPORTED: usize = 3;

/// Nesting depth for sampled notations; depth 3 already exercises
/// towers like `w^(w^w*2+1)*3 + w*2 + 4`.
const SAMPLE_DEPTH: usize = 3;

/// Outcome of a law-sampling run over pseudo-random notation triples.
#[derive(Clone, Debug)]
pub struct LawsSample {
    pub triples: usize,
    pub failures: usize,
    pub violations: Vec<String>,
}

impl LawsSample {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }

    pub fn summary(&self) -> String {
        if self.pass() {
            format!(
                "{} sampled triples: comparison total and antisymmetric, \
                 successor strict, printing round-trips",
                self.triples
            )
        } else {
            format!(
                "{} of {} sampled triples violated a law; first: {}",
                self.failures,
                self.triples,
                self.violations.first().map(String::as_str).unwrap_or("?")
            )
        }
    }
}

/// Draw `triples` pseudo-random notation triples from the given seed and
/// check, for each: reflexivity, antisymmetry of the comparison,
/// transitivity along the sorted triple, strictness of successor, and
/// parse/print round-tripping.
pub fn notation_laws_sample(seed: u64, triples: usize) -> LawsSample {
    let mut rng = SplitMix64::new(seed);
    let mut pick = |n: u64| rng.pick(n);
    let mut sample = LawsSample { triples, failures: 0, violations: Vec::new() };
    for _ in 0..triples {
        let a = random_notation(&mut pick, SAMPLE_DEPTH);
        let b = random_notation(&mut pick, SAMPLE_DEPTH);
        let c = random_notation(&mut pick, SAMPLE_DEPTH);
        for (name, ok) in triple_laws(&a, &b, &c) {
            if !ok {
                sample.failures += 1;
                if sample.violations.len() < MAX_REPORTED {
                    sample
                        .violations
                        .push(format!("{name} failed on ({a}, {b}, {c})"));
                }
            }
        }
    }
    sample
}

fn triple_laws(
    a: &OrdinalNotation,
    b: &OrdinalNotation,
    c: &OrdinalNotation,
) -> Vec<(&'static str, bool)> {
    // Sort the triple by the comparison under test, then check that the
    // sorted order is internally consistent (transitivity).
    let mut sorted = [a, b, c];
    sorted.sort_by(|x, y| ord_compare(x, y));
    let transitive = ord_compare(sorted[0], sorted[2]) != Ordering::Greater;

    let succ = a.successor();
    let round_trip = match a.to_string().parse::<OrdinalNotation>() {
        Ok(back) => back == *a,
        Err(_) => false,
    };
    vec![
        ("reflexivity", ord_compare(a, a) == Ordering::Equal),
        (
            "antisymmetry",
            ord_compare(a, b) == ord_compare(b, a).reverse(),
        ),
        ("transitivity", transitive),
        (
            "successor-strictly-greater",
            ord_compare(&succ, a) == Ordering::Greater && succ != *a,
        ),
        (
            "successor-predecessor",
            succ.predecessor().as_ref() == Some(a),
        ),
        ("print-parse-round-trip", round_trip),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_sample_passes() {
        let s = notation_laws_sample(7, 500);
        assert!(s.pass(), "violations: {:?}", s.violations);
        assert_eq!(s.triples, 500);
    }

    #[test]
    fn same_seed_reproduces_summary() {
        let a = notation_laws_sample(99, 200);
        let b = notation_laws_sample(99, 200);
        assert_eq!(a.summary(), b.summary());
    }
}
