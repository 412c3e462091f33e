//! Pseudometrics compatible with the D-lattice operations.
//!
//! Besides the pseudometric axioms, with parameters `k, m ≥ 1`:
//!
//! * `d(a ∧ c, b ∧ c) ≤ d(a, b)`,
//! * `d(a ⊕ c, b ⊕ c) ≤ k d(a, b)` when `c ⊥ a` and `c ⊥ b`,
//! * `d((a ∨ c) ⊖ c, (b ∨ c) ⊖ c) ≤ m d(a, b)`,
//! * `d((a ∨ c) ⊖ c, 0) ≤ k d(a, 0)`.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra::EffectAlgebra;
use crate::elements::ElementId;
use crate::error::{Error, Result};
use crate::rational::{rat, ExtendedValue, Rational};
use crate::relation::Relation;
use crate::submeasures::{kernel_uniformity, KSubmeasure};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PseudometricCondition {
    Shape,
    ParameterBelowOne,
    Negative,
    ZeroDiagonal,
    Symmetry,
    Triangle,
    /// `d(a ∧ c, b ∧ c) ≤ d(a, b)`.
    MeetContraction,
    /// `d(a ⊕ c, b ⊕ c) ≤ k d(a, b)`.
    SumLipschitz,
    /// `d((a ∨ c) ⊖ c, (b ∨ c) ⊖ c) ≤ m d(a, b)`.
    ResidualLipschitz,
    /// `d((a ∨ c) ⊖ c, 0) ≤ k d(a, 0)`.
    ResidualAtZero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudometricViolation {
    pub condition: PseudometricCondition,
    pub witness: Vec<ElementId>,
}

impl fmt::Display for PseudometricViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<usize> = self.witness.iter().map(|e| e.index()).collect();
        write!(f, "{:?} fails at {:?}", self.condition, ids)
    }
}

#[derive(Clone, Debug)]
pub struct Pseudometric<'a> {
    algebra: &'a EffectAlgebra,
    /// Row-major `n × n`.
    d: Vec<Rational>,
    k: Rational,
    m: Rational,
}

fn fail(condition: PseudometricCondition, witness: Vec<ElementId>) -> Result<(), PseudometricViolation> {
    Err(PseudometricViolation { condition, witness })
}

/// Pseudometric axioms first, then the four compatibility conditions, each
/// scanned lexicographically.
pub fn check_pseudometric(
    alg: &EffectAlgebra,
    d: &[Rational],
    k: &Rational,
    m: &Rational,
) -> Result<(), PseudometricViolation> {
    use PseudometricCondition::*;
    let n = alg.size();
    if d.len() != n * n {
        return fail(Shape, vec![]);
    }
    if *k < rat(1) || *m < rat(1) {
        return fail(ParameterBelowOne, vec![]);
    }
    let at = |a: ElementId, b: ElementId| &d[a.index() * n + b.index()];
    let els = || alg.elements();
    for a in els() {
        for b in els() {
            if at(a, b).is_negative() {
                return fail(Negative, vec![a, b]);
            }
        }
    }
    for a in els() {
        if !at(a, a).is_zero() {
            return fail(ZeroDiagonal, vec![a]);
        }
    }
    for a in els() {
        for b in els() {
            if at(a, b) != at(b, a) {
                return fail(Symmetry, vec![a, b]);
            }
        }
    }
    for a in els() {
        for b in els() {
            for c in els() {
                if *at(a, c) > at(a, b) + at(b, c) {
                    return fail(Triangle, vec![a, b, c]);
                }
            }
        }
    }
    for a in els() {
        for b in els() {
            for c in els() {
                if at(alg.meet(a, c), alg.meet(b, c)) > at(a, b) {
                    return fail(MeetContraction, vec![a, b, c]);
                }
            }
        }
    }
    for a in els() {
        for b in els() {
            let bound = k * at(a, b);
            for c in els() {
                if let (Some(x), Some(y)) = (alg.osum(a, c), alg.osum(b, c)) {
                    if *at(x, y) > bound {
                        return fail(SumLipschitz, vec![a, b, c]);
                    }
                }
            }
        }
    }
    for a in els() {
        for b in els() {
            let bound = m * at(a, b);
            for c in els() {
                if *at(alg.residual(a, c), alg.residual(b, c)) > bound {
                    return fail(ResidualLipschitz, vec![a, b, c]);
                }
            }
        }
    }
    let zero = alg.zero();
    for a in els() {
        let bound = k * at(a, zero);
        for c in els() {
            if *at(alg.residual(a, c), zero) > bound {
                return fail(ResidualAtZero, vec![a, c]);
            }
        }
    }
    Ok(())
}

impl<'a> Pseudometric<'a> {
    pub fn new(algebra: &'a EffectAlgebra, d: Vec<Rational>, k: Rational, m: Rational) -> Result<Self> {
        check_pseudometric(algebra, &d, &k, &m).map_err(Error::NotAPseudometric)?;
        Ok(Pseudometric { algebra, d, k, m })
    }

    pub fn from_fn(
        algebra: &'a EffectAlgebra,
        k: Rational,
        m: Rational,
        f: impl Fn(ElementId, ElementId) -> Rational,
    ) -> Result<Self> {
        let d = algebra.elements().flat_map(|a| algebra.elements().map(move |b| (a, b))).map(|(a, b)| f(a, b)).collect();
        Self::new(algebra, d, k, m)
    }

    /// Skips validation; see [`Pseudometric::check`].
    pub(crate) fn new_unchecked(algebra: &'a EffectAlgebra, d: Vec<Rational>, k: Rational, m: Rational) -> Self {
        Pseudometric { algebra, d, k, m }
    }

    pub fn check(&self) -> Result<(), PseudometricViolation> {
        check_pseudometric(self.algebra, &self.d, &self.k, &self.m)
    }

    pub fn algebra(&self) -> &'a EffectAlgebra {
        self.algebra
    }

    /// Row-major distance matrix.
    pub fn raw(&self) -> &[Rational] {
        &self.d
    }

    #[inline]
    pub fn distance(&self, a: ElementId, b: ElementId) -> &Rational {
        &self.d[a.index() * self.algebra.size() + b.index()]
    }

    pub fn k(&self) -> &Rational {
        &self.k
    }

    pub fn m(&self) -> &Rational {
        &self.m
    }

    /// `{(a, b) : d(a, b) = 0}`, the minimal entourage of the induced
    /// uniformity at finite scale.
    pub fn zero_relation(&self) -> Relation<'a> {
        Relation::from_predicate(self.algebra, |a, b| self.distance(a, b).is_zero())
    }

    /// First triple with `d(a ∨ c, b ∨ c) > d(a, b)`.
    pub fn join_contraction_failure(&self) -> Option<[ElementId; 3]> {
        let alg = self.algebra;
        for a in alg.elements() {
            for b in alg.elements() {
                for c in alg.elements() {
                    if self.distance(alg.join(a, c), alg.join(b, c)) > self.distance(a, b) {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }
}

/// `η̃(a) = d(a, 0)` together with whether its uniformity equals the one
/// induced by `d`.
pub struct FromPseudometric<'a> {
    pub eta: KSubmeasure<'a>,
    pub uniformities_equal: bool,
}

pub fn submeasure_from_pseudometric<'a>(d: &Pseudometric<'a>) -> Result<FromPseudometric<'a>> {
    let alg = d.algebra;
    let values = alg.elements().map(|a| ExtendedValue::Finite(d.distance(a, alg.zero()).clone())).collect();
    let eta = KSubmeasure::new(alg, values, d.k.clone())?;
    let uniformities_equal = kernel_uniformity(&eta)?.relation() == d.zero_relation();
    Ok(FromPseudometric { eta, uniformities_equal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{boolean_algebra, mv_chain};
    use crate::uniformities::Congruence;

    #[test]
    fn zero_pseudometric() {
        let alg = mv_chain(3).unwrap();
        let d = Pseudometric::from_fn(&alg, rat(1), rat(1), |_, _| rat(0)).unwrap();
        let out = submeasure_from_pseudometric(&d).unwrap();
        assert!(out.eta.values().iter().all(|v| v.is_zero()));
        assert!(out.uniformities_equal);
        assert_eq!(d.zero_relation(), Relation::all_pairs(&alg));
    }

    #[test]
    fn discrete_metric_on_boolean_square() {
        let alg = boolean_algebra(2).unwrap();
        let d = Pseudometric::from_fn(&alg, rat(1), rat(1), |a, b| rat((a != b) as i64)).unwrap();
        let out = submeasure_from_pseudometric(&d).unwrap();
        assert!(out.uniformities_equal);
        assert_eq!(kernel_uniformity(&out.eta).unwrap(), Congruence::discrete(&alg));
        assert!(d.join_contraction_failure().is_none());
    }

    #[test]
    fn violations_are_named() {
        let alg = mv_chain(2).unwrap();
        let n = alg.size();
        let check = |d: Vec<Rational>, k: i64| check_pseudometric(&alg, &d, &rat(k), &rat(1)).unwrap_err().condition;
        assert_eq!(check(vec![rat(0); 4], 1), PseudometricCondition::Shape);
        assert_eq!(check(vec![rat(0); n * n], 0), PseudometricCondition::ParameterBelowOne);
        let mut d = vec![rat(0); n * n];
        d[1] = rat(1);
        assert_eq!(check(d.clone(), 1), PseudometricCondition::Symmetry);
        d[n] = rat(1);
        // d(0, 1/2) = 1 while d(0, 1) = d(1, 1/2) = 0
        assert_eq!(check(d, 1), PseudometricCondition::Triangle);
        let mut d = vec![rat(0); n * n];
        d[0] = rat(1);
        assert_eq!(check(d, 1), PseudometricCondition::ZeroDiagonal);
    }

    #[test]
    fn sum_lipschitz_failure() {
        // d separates only 1 from the rest on the 3-chain: 0 and 1/2 are at
        // distance 0 but 0 ⊕ 1/2 and 1/2 ⊕ 1/2 are not.
        let alg = mv_chain(2).unwrap();
        let top = alg.one();
        let res = Pseudometric::from_fn(&alg, rat(1), rat(1), |a, b| rat(((a == top) != (b == top)) as i64));
        match res {
            Err(Error::NotAPseudometric(v)) => assert_eq!(v.condition, PseudometricCondition::SumLipschitz),
            other => panic!("unexpected {:?}", other.map(|_| ())),
        }
    }
}
