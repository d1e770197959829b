//! Finite partial orders with an explicit relation matrix.

use super::OrderError;
use crate::element::ElementId;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A finite poset over named elements. The relation is stored as a dense
/// boolean matrix over the sorted element list; construction adds the
/// reflexive pairs and verifies transitivity and antisymmetry, so a value
/// of this type is always a genuine partial order.
#[derive(Clone, PartialEq, Eq)]
pub struct FinitePoset {
    elements: Vec<ElementId>,
    index: BTreeMap<ElementId, usize>,
    le: Vec<bool>,
}

impl FinitePoset {
    pub fn new(
        elements: impl IntoIterator<Item = ElementId>,
        leq: impl IntoIterator<Item = (ElementId, ElementId)>,
    ) -> Result<Self, OrderError> {
        let mut seen = BTreeSet::new();
        let mut list: Vec<ElementId> = Vec::new();
        for e in elements {
            if !seen.insert(e.clone()) {
                return Err(OrderError::DuplicateElement(e));
            }
            list.push(e);
        }
        list.sort();
        let index: BTreeMap<ElementId, usize> =
            list.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let n = list.len();
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for (a, b) in leq {
            let i = *index
                .get(&a)
                .ok_or_else(|| OrderError::UnknownElement(a.to_string()))?;
            let j = *index
                .get(&b)
                .ok_or_else(|| OrderError::UnknownElement(b.to_string()))?;
            le[i * n + j] = true;
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && le[i * n + j] && le[j * n + i] {
                    return Err(OrderError::NotAntisymmetric {
                        a: list[i].clone(),
                        b: list[j].clone(),
                    });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !le[i * n + j] {
                    continue;
                }
                for k in 0..n {
                    if le[j * n + k] && !le[i * n + k] {
                        return Err(OrderError::NotTransitive {
                            a: list[i].clone(),
                            b: list[j].clone(),
                            c: list[k].clone(),
                        });
                    }
                }
            }
        }
        Ok(FinitePoset { elements: list, index, le })
    }

    /// Internal constructor for relations that are partial orders by
    /// construction (restrictions, pointwise products, inclusion orders).
    /// Skips the cubic transitivity check; elements must be sorted.
    pub(crate) fn from_le_unchecked(elements: Vec<ElementId>, le: Vec<bool>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(le.len(), elements.len() * elements.len());
        let index = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        FinitePoset { elements, index, le }
    }

    /// The linear order `p0 < p1 < ... < p{n-1}`.
    pub fn chain(n: usize, prefix: &str) -> Self {
        let ids: Vec<ElementId> =
            (0..n).map(|i| ElementId::new(format!("{prefix}{i}"))).collect();
        let pairs = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| (ids[i].clone(), ids[j].clone()))
            .collect::<Vec<_>>();
        FinitePoset::new(ids, pairs).expect("a chain is a partial order")
    }

    /// `n` pairwise incomparable elements.
    pub fn discrete(n: usize, prefix: &str) -> Self {
        let ids: Vec<ElementId> =
            (0..n).map(|i| ElementId::new(format!("{prefix}{i}"))).collect();
        FinitePoset::new(ids, []).expect("a discrete order is a partial order")
    }

    /// The four-point lattice `bot < a, b < top` with `a`, `b`
    /// incomparable.
    pub fn diamond() -> Self {
        let e = |s: &str| ElementId::new(s);
        FinitePoset::new(
            [e("bot"), e("a"), e("b"), e("top")],
            [
                (e("bot"), e("a")),
                (e("bot"), e("b")),
                (e("bot"), e("top")),
                (e("a"), e("top")),
                (e("b"), e("top")),
            ],
        )
        .expect("the diamond is a partial order")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ElementId] {
        &self.elements
    }

    pub fn contains(&self, e: &ElementId) -> bool {
        self.index.contains_key(e)
    }

    pub fn index_of(&self, e: &ElementId) -> Result<usize, OrderError> {
        self.index
            .get(e)
            .copied()
            .ok_or_else(|| OrderError::UnknownElement(e.to_string()))
    }

    pub fn le(&self, a: &ElementId, b: &ElementId) -> Result<bool, OrderError> {
        Ok(self.le_idx(self.index_of(a)?, self.index_of(b)?))
    }

    pub fn le_idx(&self, i: usize, j: usize) -> bool {
        self.le[i * self.elements.len() + j]
    }

    /// The canonical pair list: every strict related pair, sorted.
    /// Reflexive pairs are implied and omitted.
    pub fn strict_pairs(&self) -> Vec<(ElementId, ElementId)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && self.le_idx(i, j) {
                    out.push((self.elements[i].clone(), self.elements[j].clone()));
                }
            }
        }
        out.sort();
        out
    }

    /// Pairs of the covering relation: `a` covers nothing between itself
    /// and `b`.
    pub fn cover_pairs(&self) -> Vec<(ElementId, ElementId)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.le_idx(i, j) {
                    continue;
                }
                let covered = (0..n).all(|k| {
                    k == i || k == j || !(self.le_idx(i, k) && self.le_idx(k, j))
                });
                if covered {
                    out.push((self.elements[i].clone(), self.elements[j].clone()));
                }
            }
        }
        out.sort();
        out
    }

    pub fn bottom_idx(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.le_idx(i, j)))
    }

    pub fn bottom(&self) -> Option<ElementId> {
        self.bottom_idx().map(|i| self.elements[i].clone())
    }

    pub fn top_idx(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.le_idx(j, i)))
    }

    /// Indices of elements above every member of `set`.
    pub fn upper_bound_indices(&self, set: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&u| set.iter().all(|&i| self.le_idx(i, u)))
            .collect()
    }

    /// The least upper bound of a set of indices, when it exists.
    pub fn lub_idx(&self, set: &[usize]) -> Option<usize> {
        let ubs = self.upper_bound_indices(set);
        ubs.iter().copied().find(|&u| ubs.iter().all(|&v| self.le_idx(u, v)))
    }

    /// The greatest lower bound of a set of indices, when it exists.
    pub fn glb_idx(&self, set: &[usize]) -> Option<usize> {
        let lbs: Vec<usize> = (0..self.len())
            .filter(|&l| set.iter().all(|&i| self.le_idx(l, i)))
            .collect();
        lbs.iter().copied().find(|&l| lbs.iter().all(|&m| self.le_idx(m, l)))
    }

    /// The sub-poset on `keep`; the restricted relation is transitive and
    /// antisymmetric because the ambient one is.
    pub fn restriction(&self, keep: &BTreeSet<ElementId>) -> Result<FinitePoset, OrderError> {
        let mut kept: Vec<usize> = Vec::new();
        for e in keep {
            kept.push(self.index_of(e)?);
        }
        kept.sort();
        let elements: Vec<ElementId> =
            kept.iter().map(|&i| self.elements[i].clone()).collect();
        let m = kept.len();
        let mut le = vec![false; m * m];
        for a in 0..m {
            for b in 0..m {
                le[a * m + b] = self.le_idx(kept[a], kept[b]);
            }
        }
        Ok(FinitePoset::from_le_unchecked(elements, le))
    }
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinitePoset({} elements: ", self.len())?;
        let mut first = true;
        for (a, b) in self.cover_pairs() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{a}<{b}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: &str) -> ElementId {
        ElementId::new(s)
    }

    #[test]
    fn reflexive_closure_is_added() {
        let p = FinitePoset::new([id("a"), id("b")], [(id("a"), id("b"))]).unwrap();
        assert!(p.le(&id("a"), &id("a")).unwrap());
        assert!(p.le(&id("a"), &id("b")).unwrap());
        assert!(!p.le(&id("b"), &id("a")).unwrap());
    }

    #[test]
    fn transitivity_violation_caught() {
        let err = FinitePoset::new(
            [id("a"), id("b"), id("c")],
            [(id("a"), id("b")), (id("b"), id("c"))],
        )
        .unwrap_err();
        assert!(matches!(err, OrderError::NotTransitive { .. }));
    }

    #[test]
    fn antisymmetry_violation_caught() {
        let err =
            FinitePoset::new([id("a"), id("b")], [(id("a"), id("b")), (id("b"), id("a"))])
                .unwrap_err();
        assert!(matches!(err, OrderError::NotAntisymmetric { .. }));
    }

    #[test]
    fn duplicate_and_unknown_elements_caught() {
        assert!(matches!(
            FinitePoset::new([id("a"), id("a")], []),
            Err(OrderError::DuplicateElement(_))
        ));
        assert!(matches!(
            FinitePoset::new([id("a")], [(id("a"), id("zz"))]),
            Err(OrderError::UnknownElement(_))
        ));
    }

    #[test]
    fn diamond_shape() {
        let d = FinitePoset::diamond();
        assert_eq!(d.len(), 4);
        assert_eq!(d.bottom(), Some(id("bot")));
        assert_eq!(d.top_idx().map(|i| d.elements()[i].clone()), Some(id("top")));
        assert!(!d.le(&id("a"), &id("b")).unwrap());
        assert_eq!(
            d.cover_pairs(),
            vec![
                (id("a"), id("top")),
                (id("b"), id("top")),
                (id("bot"), id("a")),
                (id("bot"), id("b")),
            ]
        );
    }

    #[test]
    fn lub_and_glb_on_diamond() {
        let d = FinitePoset::diamond();
        let i = |s: &str| d.index_of(&id(s)).unwrap();
        assert_eq!(d.lub_idx(&[i("a"), i("b")]), Some(i("top")));
        assert_eq!(d.glb_idx(&[i("a"), i("b")]), Some(i("bot")));
        assert_eq!(d.lub_idx(&[]), d.bottom_idx());
        assert_eq!(d.lub_idx(&[i("a")]), Some(i("a")));
    }

    #[test]
    fn v_poset_has_no_pair_lub() {
        let v = FinitePoset::new(
            [id("bot"), id("a"), id("b")],
            [(id("bot"), id("a")), (id("bot"), id("b"))],
        )
        .unwrap();
        let i = |s: &str| v.index_of(&id(s)).unwrap();
        assert_eq!(v.lub_idx(&[i("a"), i("b")]), None);
        assert_eq!(v.glb_idx(&[i("a"), i("b")]), Some(i("bot")));
    }

    #[test]
    fn restriction_keeps_order() {
        let c = FinitePoset::chain(4, "p");
        let keep: BTreeSet<ElementId> = [id("p1"), id("p3")].into_iter().collect();
        let r = c.restriction(&keep).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.le(&id("p1"), &id("p3")).unwrap());
        assert!(!r.le(&id("p3"), &id("p1")).unwrap());
    }
}
