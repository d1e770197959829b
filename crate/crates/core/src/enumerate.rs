//! Exhaustive generation of all partial orders on a small labeled
//! carrier. Orders are encoded pair by pair — each unordered pair of
//! distinct elements is either incomparable or oriented one of two
//! ways — which builds reflexivity and antisymmetry into the encoding
//! and leaves only transitivity to check. Property tests quantify over
//! these carriers instead of trusting hand-picked fixtures.

use crate::element::ElementId;
use crate::order::{FinitePoset, OrderError};

/// Largest carrier enumerated: the candidate count is `3^(n(n-1)/2)`.
pub const MAX_ENUM_ELEMENTS: usize = 5;

/// Number of labeled partial orders on `0..n` for small `n`; the next
/// entries would be 4231 and 130023.
pub const LABELED_COUNTS: [usize; 6] = [1, 1, 3, 19, 219, 4231];

fn transitive(le: &[bool], n: usize) -> bool {
    for a in 0..n {
        for b in 0..n {
            if a != b && le[a * n + b] {
                for c in 0..n {
                    if le[b * n + c] && !le[a * n + c] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// All partial orders on elements `e0 < e1 < ... < e{n-1}` (element ids,
/// not order), in a fixed generation order.
pub fn enumerate_labeled_posets(n: usize) -> Result<Vec<FinitePoset>, OrderError> {
    if n > MAX_ENUM_ELEMENTS {
        return Err(OrderError::SizeLimit {
            what: "labeled enumeration carrier",
            size: n,
            cap: MAX_ENUM_ELEMENTS,
        });
    }
    let elements: Vec<ElementId> =
        (0..n).map(|i| ElementId::new(format!("e{i}"))).collect();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let candidates = 3usize.pow(pairs.len() as u32);

    let mut out = Vec::new();
    for code in 0..candidates {
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        let mut rest = code;
        for (i, j) in &pairs {
            match rest % 3 {
                0 => {}
                1 => le[i * n + j] = true,
                _ => le[j * n + i] = true,
            }
            rest /= 3;
        }
        if transitive(&le, n) {
            out.push(FinitePoset::from_le_unchecked(elements.clone(), le));
        }
    }
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..n {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

/// Smallest relation bitstring reachable by relabeling, used as the
/// isomorphism-class key.
fn canonical_key(p: &FinitePoset, perms: &[Vec<usize>]) -> u32 {
    let n = p.len();
    let mut best = u32::MAX;
    for perm in perms {
        let mut bits = 0u32;
        for a in 0..n {
            for b in 0..n {
                if p.le_idx(a, b) {
                    bits |= 1 << (perm[a] * n + perm[b]);
                }
            }
        }
        best = best.min(bits);
    }
    best
}

/// One representative per isomorphism class, keeping the first labeled
/// order seen in each class.
pub fn enumerate_posets_up_to_iso(n: usize) -> Result<Vec<FinitePoset>, OrderError> {
    let all = enumerate_labeled_posets(n)?;
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for p in all {
        if seen.insert(canonical_key(&p, &perms)) {
            out.push(p);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_counts_match_the_known_sequence() {
        for (n, want) in LABELED_COUNTS.iter().enumerate().take(5) {
            assert_eq!(enumerate_labeled_posets(n).unwrap().len(), *want, "n = {n}");
        }
    }

    #[test]
    fn iso_class_counts_match_the_known_sequence() {
        let want = [1usize, 1, 2, 5, 16];
        for (n, want) in want.iter().enumerate() {
            assert_eq!(enumerate_posets_up_to_iso(n).unwrap().len(), *want, "n = {n}");
        }
    }

    #[test]
    fn every_generated_order_survives_the_checked_constructor() {
        for p in enumerate_labeled_posets(3).unwrap() {
            let pairs: Vec<_> = p.strict_pairs();
            let rebuilt = FinitePoset::new(p.elements().to_vec(), pairs).unwrap();
            assert_eq!(&rebuilt, &p);
        }
    }

    #[test]
    fn oversized_carriers_are_refused() {
        assert!(matches!(
            enumerate_labeled_posets(6),
            Err(OrderError::SizeLimit { .. })
        ));
    }
}
