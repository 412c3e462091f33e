//! Binary relations on a carrier, stored as bit-packed rows.

use std::fmt;

use serde::Serialize;

use crate::algebra::{same_algebra, EffectAlgebra};
use crate::elements::{ElementId, ElementSet};
use crate::error::{Error, Result};

/// A relation on the carrier of one algebra; `rows[a] = {b : (a, b) ∈ R}`.
#[derive(Clone)]
pub struct Relation<'a> {
    algebra: &'a EffectAlgebra,
    rows: Vec<ElementSet>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum RelationOp {
    /// `U ∨ V = {(u₁ ∨ v₁, u₂ ∨ v₂)}`.
    Join,
    /// `U ∧ V = {(u₁ ∧ v₁, u₂ ∧ v₂)}`.
    Meet,
    /// `U ⊖ V = {(u₁ ⊖ v₁, u₂ ⊖ v₂) : v₁ ≤ u₁, v₂ ≤ u₂}`.
    Minus,
}

impl<'a> Relation<'a> {
    pub fn empty(algebra: &'a EffectAlgebra) -> Self {
        Relation { algebra, rows: vec![ElementSet::EMPTY; algebra.size()] }
    }

    /// `{(a, a)}`.
    pub fn diagonal(algebra: &'a EffectAlgebra) -> Self {
        let rows = algebra.elements().map(ElementSet::singleton).collect();
        Relation { algebra, rows }
    }

    pub fn all_pairs(algebra: &'a EffectAlgebra) -> Self {
        Relation { algebra, rows: vec![algebra.carrier(); algebra.size()] }
    }

    pub fn from_pairs(algebra: &'a EffectAlgebra, pairs: impl IntoIterator<Item = (ElementId, ElementId)>) -> Self {
        let mut r = Relation::empty(algebra);
        for (a, b) in pairs {
            r.insert(a, b);
        }
        r
    }

    pub fn from_predicate(algebra: &'a EffectAlgebra, pred: impl Fn(ElementId, ElementId) -> bool) -> Self {
        let rows = algebra
            .elements()
            .map(|a| algebra.elements().filter(|&b| pred(a, b)).collect())
            .collect();
        Relation { algebra, rows }
    }

    pub fn algebra(&self) -> &'a EffectAlgebra {
        self.algebra
    }

    #[inline]
    pub fn contains(&self, a: ElementId, b: ElementId) -> bool {
        self.rows[a.index()].contains(b)
    }

    pub fn insert(&mut self, a: ElementId, b: ElementId) {
        self.rows[a.index()].insert(b);
    }

    /// `{b : (a, b) ∈ R}`.
    pub fn row(&self, a: ElementId) -> ElementSet {
        self.rows[a.index()]
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn is_subset(&self, other: &Relation<'_>) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(*b))
    }

    /// First pair of `self` missing from `other`.
    pub fn first_outside(&self, other: &Relation<'_>) -> Option<(ElementId, ElementId)> {
        self.pairs().find(|&(a, b)| !other.contains(a, b))
    }

    pub fn intersection(&self, other: &Relation<'_>) -> Relation<'a> {
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| *a & *b).collect();
        Relation { algebra: self.algebra, rows }
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
        self.algebra.elements().flat_map(move |a| self.row(a).iter().map(move |b| (a, b)))
    }

    /// Pairs rendered with element labels.
    pub fn labelled_pairs(&self) -> Vec<(String, String)> {
        self.pairs()
            .map(|(a, b)| (self.algebra.label(a).to_string(), self.algebra.label(b).to_string()))
            .collect()
    }
}

impl PartialEq for Relation<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && same_algebra(self.algebra, other.algebra)
    }
}

impl Eq for Relation<'_> {}

impl fmt::Debug for Relation<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.labelled_pairs()).finish()
    }
}

/// Image of `U × V` under the componentwise operation `op`.
pub fn relation_combine<'a>(u: &Relation<'a>, v: &Relation<'_>, op: RelationOp) -> Result<Relation<'a>> {
    if !same_algebra(u.algebra, v.algebra) {
        return Err(Error::MixedAlgebras);
    }
    let alg = u.algebra;
    let mut out = Relation::empty(alg);
    for (u1, u2) in u.pairs() {
        for (v1, v2) in v.pairs() {
            let image = match op {
                RelationOp::Join => Some((alg.join(u1, v1), alg.join(u2, v2))),
                RelationOp::Meet => Some((alg.meet(u1, v1), alg.meet(u2, v2))),
                RelationOp::Minus => alg.ominus(u1, v1).zip(alg.ominus(u2, v2)),
            };
            if let Some((x, y)) = image {
                out.insert(x, y);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{boolean_algebra, mv_chain};

    #[test]
    fn diagonal_join_diagonal() {
        let alg = mv_chain(3).unwrap();
        let d = Relation::diagonal(&alg);
        assert_eq!(relation_combine(&d, &d, RelationOp::Join).unwrap(), d);
        assert_eq!(relation_combine(&d, &d, RelationOp::Meet).unwrap(), d);
    }

    #[test]
    fn all_pairs_minus_diagonal() {
        let alg = mv_chain(2).unwrap();
        let all = Relation::all_pairs(&alg);
        let d = Relation::diagonal(&alg);
        assert_eq!(relation_combine(&all, &d, RelationOp::Minus).unwrap(), all);
    }

    #[test]
    fn single_pair_joined_with_diagonal() {
        let alg = boolean_algebra(2).unwrap();
        let e = |l| alg.element(l).unwrap();
        let u = Relation::from_pairs(&alg, [(e("0"), e("a"))]);
        let j = relation_combine(&u, &Relation::diagonal(&alg), RelationOp::Join).unwrap();
        assert!(j.contains(e("b"), e("1")));
        assert_eq!(j.len(), 4);
    }

    #[test]
    fn mixed_algebras() {
        let a = mv_chain(2).unwrap();
        let b = mv_chain(2).unwrap();
        let c = mv_chain(3).unwrap();
        assert!(relation_combine(&Relation::diagonal(&a), &Relation::diagonal(&b), RelationOp::Join).is_ok());
        assert!(matches!(
            relation_combine(&Relation::diagonal(&a), &Relation::diagonal(&c), RelationOp::Join),
            Err(Error::MixedAlgebras)
        ));
    }

    #[test]
    fn pairs_are_lexicographic() {
        let alg = mv_chain(2).unwrap();
        let all = Relation::all_pairs(&alg);
        let p: Vec<(usize, usize)> = all.pairs().map(|(a, b)| (a.index(), b.index())).collect();
        let mut s = p.clone();
        s.sort();
        assert_eq!(p, s);
        assert_eq!(p.len(), 9);
    }
}
