//! Cantor-normal-form notations for ordinals below the first fixed point of
//! exponentiation.

use super::OrdinalError;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// A notation `w^e1*c1 + ... + w^ek*ck` with strictly descending exponents
/// and positive coefficients. Zero is the empty sum.
///
/// The derived `Ord` is the ordinal order: term lists compare
/// lexicographically, exponent before coefficient, and a proper prefix is
/// smaller. This is correct exactly because construction enforces canonical
/// form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrdinalNotation {
    terms: Vec<(OrdinalNotation, u64)>,
}

impl OrdinalNotation {
    pub fn zero() -> Self {
        OrdinalNotation { terms: Vec::new() }
    }

    pub fn finite(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            OrdinalNotation { terms: vec![(Self::zero(), n)] }
        }
    }

    pub fn omega() -> Self {
        OrdinalNotation { terms: vec![(Self::finite(1), 1)] }
    }

    /// `w^exponent * coefficient` as a single term.
    pub fn power(exponent: OrdinalNotation, coefficient: u64) -> Result<Self, OrdinalError> {
        Self::from_terms(vec![(exponent, coefficient)])
    }

    /// Build from explicit terms, checking canonicity.
    pub fn from_terms(terms: Vec<(OrdinalNotation, u64)>) -> Result<Self, OrdinalError> {
        for window in terms.windows(2) {
            if window[0].0 <= window[1].0 {
                return Err(OrdinalError::NonCanonical(format!(
                    "exponents not strictly descending: {} then {}",
                    window[0].0, window[1].0
                )));
            }
        }
        for (_, c) in &terms {
            if *c == 0 {
                return Err(OrdinalError::NonCanonical(
                    "zero coefficient".to_string(),
                ));
            }
        }
        Ok(OrdinalNotation { terms })
    }

    pub fn terms(&self) -> &[(OrdinalNotation, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// A limit is nonzero with no trailing finite part.
    pub fn is_limit(&self) -> bool {
        match self.terms.last() {
            None => false,
            Some((e, _)) => !e.is_zero(),
        }
    }

    pub fn is_successor(&self) -> bool {
        matches!(self.terms.last(), Some((e, _)) if e.is_zero())
    }

    /// The value as a natural number, when the notation is finite.
    pub fn natural(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    pub fn successor(&self) -> Self {
        let mut terms = self.terms.clone();
        match terms.last_mut() {
            Some((e, c)) if e.is_zero() => *c += 1,
            _ => terms.push((Self::zero(), 1)),
        }
        OrdinalNotation { terms }
    }

    /// Inverse of `successor`; `None` on zero and limits.
    pub fn predecessor(&self) -> Option<Self> {
        let mut terms = self.terms.clone();
        match terms.last_mut() {
            Some((e, c)) if e.is_zero() => {
                if *c == 1 {
                    terms.pop();
                } else {
                    *c -= 1;
                }
                Some(OrdinalNotation { terms })
            }
            _ => None,
        }
    }

    /// Ordinal sum `self + w^exponent * coefficient` where the new exponent
    /// must not exceed the last exponent of `self`. Used by fundamental
    /// sequences, which only ever extend a fixed prefix downward.
    pub(crate) fn extended(
        &self,
        exponent: OrdinalNotation,
        coefficient: u64,
    ) -> Result<Self, OrdinalError> {
        if coefficient == 0 {
            return Ok(self.clone());
        }
        let mut terms = self.terms.clone();
        match terms.last_mut() {
            Some((e, c)) if *e == exponent => *c += coefficient,
            Some((e, _)) if *e < exponent => {
                return Err(OrdinalError::NonCanonical(format!(
                    "cannot extend {self} by exponent {exponent}"
                )))
            }
            _ => terms.push((exponent, coefficient)),
        }
        Ok(OrdinalNotation { terms })
    }
}

/// Trichotomous comparison of canonical notations.
pub fn ord_compare(a: &OrdinalNotation, b: &OrdinalNotation) -> Ordering {
    a.cmp(b)
}

/// Comparison in the initial-segment preorder. Among notations every
/// smaller ordinal embeds as an initial segment of every larger one, so
/// this coincides with `ord_compare`.
pub fn initial_segment_compare(a: &OrdinalNotation, b: &OrdinalNotation) -> Ordering {
    ord_compare(a, b)
}

impl fmt::Display for OrdinalNotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if e.is_zero() {
                write!(f, "{c}")?;
            } else {
                if *e == OrdinalNotation::finite(1) {
                    write!(f, "w")?;
                } else if e.natural().is_some() || *e == OrdinalNotation::omega() {
                    write!(f, "w^{e}")?;
                } else {
                    write!(f, "w^({e})")?;
                }
                if *c > 1 {
                    write!(f, "*{c}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for OrdinalNotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for OrdinalNotation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for OrdinalNotation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for OrdinalNotation {
    type Err = OrdinalError;

    fn from_str(s: &str) -> Result<Self, OrdinalError> {
        parse_notation(s)
    }
}

fn parse_notation(s: &str) -> Result<OrdinalNotation, OrdinalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(OrdinalError::Parse("empty notation".to_string()));
    }
    if s == "0" {
        return Ok(OrdinalNotation::zero());
    }
    let mut terms = Vec::new();
    for part in split_top_level(s)? {
        terms.push(parse_term(part)?);
    }
    OrdinalNotation::from_terms(terms)
}

/// Split on `+` outside parentheses.
fn split_top_level(s: &str) -> Result<Vec<&str>, OrdinalError> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| OrdinalError::Parse(format!("unbalanced ')' in {s:?}")))?
            }
            '+' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(OrdinalError::Parse(format!("unbalanced '(' in {s:?}")));
    }
    parts.push(&s[start..]);
    Ok(parts)
}

fn parse_term(raw: &str) -> Result<(OrdinalNotation, u64), OrdinalError> {
    let t = raw.trim();
    if t.is_empty() {
        return Err(OrdinalError::Parse(format!("empty term in {raw:?}")));
    }
    if t.chars().all(|c| c.is_ascii_digit()) {
        let n: u64 = t
            .parse()
            .map_err(|e| OrdinalError::Parse(format!("bad number {t:?}: {e}")))?;
        if n == 0 {
            return Err(OrdinalError::NonCanonical(
                "zero term inside a sum".to_string(),
            ));
        }
        return Ok((OrdinalNotation::zero(), n));
    }
    let rest = t
        .strip_prefix('w')
        .ok_or_else(|| OrdinalError::Parse(format!("expected 'w' or a number, got {t:?}")))?;
    let (exp_src, coeff_src) = match rest.find('*') {
        // A '*' inside parentheses belongs to the exponent, not the term.
        Some(i) if !rest[..i].contains('(') => (&rest[..i], Some(&rest[i + 1..])),
        _ => match rest.rfind('*') {
            Some(i) if rest[i..].chars().skip(1).all(|c| c.is_ascii_digit()) && i > 0 => {
                (&rest[..i], Some(&rest[i + 1..]))
            }
            _ => (rest, None),
        },
    };
    let exponent = match exp_src {
        "" => OrdinalNotation::finite(1),
        e => {
            let e = e.strip_prefix('^').ok_or_else(|| {
                OrdinalError::Parse(format!("expected '^' after 'w' in {t:?}"))
            })?;
            let inner = if let Some(stripped) = e.strip_prefix('(') {
                stripped
                    .strip_suffix(')')
                    .ok_or_else(|| OrdinalError::Parse(format!("unclosed '(' in {t:?}")))?
            } else {
                e
            };
            if !e.starts_with('(')
                && !(inner == "w" || inner.chars().all(|c| c.is_ascii_digit()))
            {
                return Err(OrdinalError::Parse(format!(
                    "compound exponent must be parenthesized in {t:?}"
                )));
            }
            let parsed = parse_notation(inner)?;
            if parsed.is_zero() {
                return Err(OrdinalError::NonCanonical(
                    "exponent 0 must be written as a plain number".to_string(),
                ));
            }
            parsed
        }
    };
    let coefficient = match coeff_src {
        None => 1,
        Some(c) => {
            let c: u64 = c
                .trim()
                .parse()
                .map_err(|e| OrdinalError::Parse(format!("bad coefficient in {t:?}: {e}")))?;
            if c == 0 {
                return Err(OrdinalError::NonCanonical("coefficient 0".to_string()));
            }
            if c == 1 {
                return Err(OrdinalError::NonCanonical(
                    "coefficient 1 must be omitted".to_string(),
                ));
            }
            c
        }
    };
    Ok((exponent, coefficient))
}

/// Deterministic pseudo-random notation, driven by a caller-supplied picker
/// (`pick(n)` returns a value in `0..n`). Canonical by construction.
pub fn random_notation<R: FnMut(u64) -> u64>(pick: &mut R, depth: usize) -> OrdinalNotation {
    if depth == 0 {
        return OrdinalNotation::finite(pick(5));
    }
    match pick(6) {
        0 => OrdinalNotation::zero(),
        1 | 2 => OrdinalNotation::finite(1 + pick(8)),
        _ => {
            let mut exponents: Vec<OrdinalNotation> = Vec::new();
            for _ in 0..1 + pick(3) {
                let e = random_notation(pick, depth - 1);
                if !exponents.contains(&e) {
                    exponents.push(e);
                }
            }
            exponents.sort();
            exponents.reverse();
            let terms = exponents
                .into_iter()
                .map(|e| (e, 1 + pick(3)))
                .collect();
            OrdinalNotation::from_terms(terms).expect("sorted unique exponents are canonical")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> OrdinalNotation {
        s.parse().unwrap()
    }

    #[test]
    fn compare_examples() {
        assert_eq!(ord_compare(&n("w+1"), &n("w*2")), Ordering::Less);
        assert_eq!(ord_compare(&n("w^2"), &n("w*9+4")), Ordering::Greater);
        assert_eq!(ord_compare(&n("w"), &n("w")), Ordering::Equal);
        assert_eq!(ord_compare(&n("0"), &n("1")), Ordering::Less);
        assert_eq!(ord_compare(&n("w^w"), &n("w^3*7+w")), Ordering::Greater);
    }

    #[test]
    fn successor_examples() {
        assert_eq!(n("0").successor(), n("1"));
        assert_eq!(n("3").successor(), n("4"));
        assert_eq!(n("w").successor(), n("w+1"));
        assert_eq!(n("w*2+3").successor(), n("w*2+4"));
        assert_eq!(n("w^w").successor(), n("w^w+1"));
    }

    #[test]
    fn predecessor_inverts_successor() {
        for s in ["0", "5", "w", "w+3", "w^2*4", "w^(w+1)+w*2"] {
            let x = n(s);
            assert_eq!(x.successor().predecessor().as_ref(), Some(&x));
        }
        assert_eq!(n("0").predecessor(), None);
        assert_eq!(n("w").predecessor(), None);
        assert_eq!(n("w^2*3").predecessor(), None);
    }

    #[test]
    fn limit_classification() {
        assert!(!n("0").is_limit());
        assert!(!n("4").is_limit());
        assert!(n("w").is_limit());
        assert!(n("w*2").is_limit());
        assert!(n("w^2").is_limit());
        assert!(!n("w+1").is_limit());
        assert!(n("w+1").is_successor());
        assert!(!n("0").is_successor());
    }

    #[test]
    fn print_parse_round_trip() {
        for s in [
            "0", "3", "w", "w+1", "w*2+3", "w^2", "w^w", "w^w*5+w^2*2+w+17",
            "w^(w+1)", "w^(w^w)*2+1", "w^(w*2+1)+w^w",
        ] {
            let x = n(s);
            assert_eq!(x.to_string(), s);
            assert_eq!(x.to_string().parse::<OrdinalNotation>().unwrap(), x);
        }
    }

    #[test]
    fn non_canonical_rejected() {
        for s in ["w+w", "1+w", "w*0", "w+0", "w^0", "w^0*3", "2+3", "w*1", "w^2+w^2"] {
            assert!(
                matches!(s.parse::<OrdinalNotation>(), Err(OrdinalError::NonCanonical(_))),
                "{s:?} should be non-canonical"
            );
        }
        for s in ["", "x", "w^", "(w", "w)", "w^w+w)"] {
            assert!(
                matches!(s.parse::<OrdinalNotation>(), Err(OrdinalError::Parse(_))),
                "{s:?} should be a parse error"
            );
        }
    }

    #[test]
    fn from_terms_checks_descending() {
        let bad = OrdinalNotation::from_terms(vec![
            (OrdinalNotation::finite(1), 1),
            (OrdinalNotation::finite(2), 1),
        ]);
        assert!(matches!(bad, Err(OrdinalError::NonCanonical(_))));
        let dup = OrdinalNotation::from_terms(vec![
            (OrdinalNotation::finite(1), 1),
            (OrdinalNotation::finite(1), 1),
        ]);
        assert!(matches!(dup, Err(OrdinalError::NonCanonical(_))));
    }

    #[test]
    fn successor_is_strictly_above_and_fixed_point_free() {
        for s in ["0", "7", "w", "w*2+3", "w^w"] {
            let x = n(s);
            let sx = x.successor();
            assert_eq!(ord_compare(&x, &sx), Ordering::Less);
            assert_ne!(x, sx);
        }
    }

    #[test]
    fn random_notations_are_canonical() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut pick = move |bound: u64| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            (state >> 33) % bound.max(1)
        };
        for _ in 0..500 {
            let x = random_notation(&mut pick, 3);
            assert_eq!(x.to_string().parse::<OrdinalNotation>().unwrap(), x);
        }
    }
}
