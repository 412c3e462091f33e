//! k-submeasures and the uniformities they generate.
//!
//! A k-submeasure `η : L → [0, +∞]` satisfies
//!
//! * `η(0) = 0`,
//! * `a ≤ b ⇒ η(a) ≤ η(b)`,
//! * `η(a ⊕ b) ≤ k η(a) + η(b)` for `a ⊥ b`,
//! * `η((a ∨ b) ⊖ b) ≤ k η(a)`.
//!
//! Its uniformity has the base `F_ε = {a : η(a) < ε}`. On a finite carrier
//! the generator of that D-filter is the kernel `{a : η(a) = 0}`, and `η`
//! is uniformly continuous for a finite-scale uniformity exactly when it is
//! constant on the classes of the minimal entourage (`+∞` being an
//! isolated point of `[0, +∞]`).

pub mod measure;
pub mod pseudometric;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{same_algebra, EffectAlgebra};
use crate::dfilters::{check_dfilter_generator, DFilterGenerator};
use crate::elements::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::rational::{rat, serde_rational, ExtendedValue, Rational};
use crate::report::{Report, Tally, Witness};
use crate::uniformities::{phi, Congruence};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubmeasureAxiom {
    /// Wrong number of values.
    ValueCount,
    /// `k < 1`.
    ParameterBelowOne,
    /// `η(0) = 0`.
    NullAtZero,
    /// `a ≤ b ⇒ η(a) ≤ η(b)`.
    Monotone,
    /// `η(a ⊕ b) ≤ k η(a) + η(b)`.
    WeightedSubadditive,
    /// `η((a ∨ b) ⊖ b) ≤ k η(a)`.
    JoinAbsorption,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmeasureViolation {
    pub axiom: SubmeasureAxiom,
    pub witness: Vec<ElementId>,
}

impl fmt::Display for SubmeasureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<usize> = self.witness.iter().map(|e| e.index()).collect();
        write!(f, "{:?} fails at {:?}", self.axiom, ids)
    }
}

impl SubmeasureViolation {
    pub fn to_witness(&self, alg: &EffectAlgebra) -> Witness {
        Witness::elements(alg, &self.witness, format!("{:?} fails", self.axiom))
    }
}

fn violation(axiom: SubmeasureAxiom, witness: Vec<ElementId>) -> Result<(), SubmeasureViolation> {
    Err(SubmeasureViolation { axiom, witness })
}

fn check_prefix(alg: &EffectAlgebra, values: &[ExtendedValue], k: &Rational) -> Result<(), SubmeasureViolation> {
    if values.len() != alg.size() {
        return violation(SubmeasureAxiom::ValueCount, vec![]);
    }
    if *k < rat(1) {
        return violation(SubmeasureAxiom::ParameterBelowOne, vec![]);
    }
    let v = |a: ElementId| &values[a.index()];
    if !v(alg.zero()).is_zero() {
        return violation(SubmeasureAxiom::NullAtZero, vec![alg.zero()]);
    }
    for a in alg.elements() {
        for b in alg.up_set(a) {
            if v(a) > v(b) {
                return violation(SubmeasureAxiom::Monotone, vec![a, b]);
            }
        }
    }
    for a in alg.elements() {
        for b in alg.elements() {
            if let Some(s) = alg.osum(a, b) {
                if *v(s) > v(a).scale(k).add(v(b)) {
                    return violation(SubmeasureAxiom::WeightedSubadditive, vec![a, b]);
                }
            }
        }
    }
    Ok(())
}

fn check_join_absorption(
    alg: &EffectAlgebra,
    values: &[ExtendedValue],
    k: &Rational,
) -> Result<(), SubmeasureViolation> {
    for a in alg.elements() {
        let bound = values[a.index()].scale(k);
        for b in alg.elements() {
            if values[alg.residual(a, b).index()] > bound {
                return violation(SubmeasureAxiom::JoinAbsorption, vec![a, b]);
            }
        }
    }
    Ok(())
}

/// Checks every axiom except join absorption.
pub fn check_first_three_axioms(
    alg: &EffectAlgebra,
    values: &[ExtendedValue],
    k: &Rational,
) -> Result<(), SubmeasureViolation> {
    check_prefix(alg, values, k)
}

/// Exhaustive check of all four axioms; the witness names the first
/// failing axiom and its lexicographically smallest tuple.
pub fn check_k_submeasure(alg: &EffectAlgebra, values: &[ExtendedValue], k: &Rational) -> Result<(), SubmeasureViolation> {
    check_prefix(alg, values, k)?;
    check_join_absorption(alg, values, k)
}

pub fn is_k_submeasure(alg: &EffectAlgebra, values: &[ExtendedValue], k: &Rational) -> bool {
    check_k_submeasure(alg, values, k).is_ok()
}

/// JSON form: `{"values": [..], "k": ..}`, values indexed like the carrier.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubmeasureJson {
    pub values: Vec<ExtendedValue>,
    #[serde(with = "serde_rational")]
    pub k: Rational,
}

#[derive(Clone, Debug)]
pub struct KSubmeasure<'a> {
    algebra: &'a EffectAlgebra,
    values: Vec<ExtendedValue>,
    k: Rational,
}

impl<'a> KSubmeasure<'a> {
    pub fn new(algebra: &'a EffectAlgebra, values: Vec<ExtendedValue>, k: Rational) -> Result<Self> {
        check_k_submeasure(algebra, &values, &k).map_err(Error::NotASubmeasure)?;
        Ok(KSubmeasure { algebra, values, k })
    }

    pub fn from_json(algebra: &'a EffectAlgebra, json: &SubmeasureJson) -> Result<Self> {
        Self::new(algebra, json.values.clone(), json.k.clone())
    }

    pub fn to_json(&self) -> SubmeasureJson {
        SubmeasureJson { values: self.values.clone(), k: self.k.clone() }
    }

    pub fn algebra(&self) -> &'a EffectAlgebra {
        self.algebra
    }

    pub fn values(&self) -> &[ExtendedValue] {
        &self.values
    }

    pub fn value(&self, a: ElementId) -> &ExtendedValue {
        &self.values[a.index()]
    }

    pub fn k(&self) -> &Rational {
        &self.k
    }

    /// `{a : η(a) = 0}`.
    pub fn kernel(&self) -> ElementSet {
        self.algebra.elements().filter(|&a| self.value(a).is_zero()).collect()
    }
}

impl PartialEq for KSubmeasure<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values && self.k == other.k && same_algebra(self.algebra, other.algebra)
    }
}

/// Minimal entourage of the uniformity generated by `η`: `phi` of its kernel.
pub fn kernel_uniformity<'a>(eta: &KSubmeasure<'a>) -> Result<Congruence<'a>> {
    let f = DFilterGenerator::new(eta.algebra, eta.kernel())?;
    Ok(phi(&f))
}

/// First pair in a common class of `e` on which `η` takes different values.
pub fn continuity_failure(eta: &KSubmeasure<'_>, e: &Congruence<'_>) -> Option<(ElementId, ElementId)> {
    for a in eta.algebra.elements() {
        for b in e.class_of(a) {
            if eta.value(a) != eta.value(b) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Whether `η` is uniformly continuous for the finite-scale uniformity with
/// minimal entourage `e`.
pub fn is_uniformly_continuous(eta: &KSubmeasure<'_>, e: &Congruence<'_>) -> bool {
    continuity_failure(eta, e).is_none()
}

/// `U(η)` makes `η` uniformly continuous, and every D-congruence in
/// `congruences` that does so is finer than `U(η)`.
pub fn check_weakest(eta: &KSubmeasure<'_>, congruences: &[Congruence<'_>]) -> Result<Report> {
    let alg = eta.algebra;
    let mut report = Report::for_algebra("weakest-uniformity", alg);
    let kernel = eta.kernel();

    let mut t = Tally::new("kernel-is-dfilter-generator");
    let res = check_dfilter_generator(alg, kernel);
    t.record(res.is_ok(), || {
        let v = res.clone().unwrap_err();
        Witness::elements(alg, &v.witness, v.to_string())
    });
    report.push(t.finish());
    if res.is_err() {
        return Ok(report);
    }
    let u = kernel_uniformity(eta)?;

    let mut t = Tally::new("constant-on-kernel-classes");
    for a in alg.elements() {
        for b in u.class_of(a) {
            t.record(eta.value(a) == eta.value(b), || {
                Witness::elements(alg, &[a, b], format!("η = {} and {}", eta.value(a), eta.value(b)))
            });
        }
    }
    report.push(t.finish());

    // η(a ∨ b) ≤ k η(a Δ b) + η(a ∧ b)
    let mut t = Tally::new("continuity-bound");
    for a in alg.elements() {
        for b in alg.elements() {
            let lhs = eta.value(alg.join(a, b));
            let rhs = eta.value(alg.symm_diff(a, b)).scale(&eta.k).add(eta.value(alg.meet(a, b)));
            t.record(*lhs <= rhs, || Witness::elements(alg, &[a, b], format!("{lhs} > {rhs}")));
        }
    }
    report.push(t.finish());

    let mut weakest = Tally::new("continuous-congruences-are-finer");
    let mut isolated = Tally::new("infinity-isolated-in-continuous-classes");
    let mut continuous = 0u64;
    for e in congruences {
        if !same_algebra(e.algebra(), alg) {
            return Err(Error::MixedAlgebras);
        }
        if !is_uniformly_continuous(eta, e) {
            continue;
        }
        continuous += 1;
        weakest.record(e.is_finer_or_equal(&u), || {
            Witness::new(vec![e.display()], format!("not finer than {}", u.display()))
        });
        for class in e.classes() {
            let infinite = class.iter().filter(|&a| eta.value(a).is_infinite()).count();
            isolated.record(infinite == 0 || infinite == class.len(), || {
                Witness::new(vec![e.display()], "class mixes finite and infinite values")
            });
        }
    }
    report.push(weakest.finish());
    report.push(isolated.finish());
    report.count("congruences", congruences.len() as u64);
    report.count("continuous_congruences", continuous);
    Ok(report)
}

/// `0` on the generator, `1` off it, with `k = 1`.
pub fn canonical_indicator<'a>(f: &DFilterGenerator<'a>) -> KSubmeasure<'a> {
    let alg = f.algebra();
    let values = alg
        .elements()
        .map(|a| if f.contains(a) { ExtendedValue::zero() } else { ExtendedValue::from_int(1) })
        .collect();
    KSubmeasure::new(alg, values, rat(1)).expect("indicator of a generator complement is a 1-submeasure")
}

/// On an MV-algebra, a function satisfying the first three axioms with
/// `k = 1` also satisfies the fourth. Returns the fourth axiom's verdict;
/// a violation would mean the MV structure is computed wrongly.
pub fn mv_s123_check(alg: &EffectAlgebra, values: &[ExtendedValue]) -> Result<Result<(), SubmeasureViolation>> {
    if !alg.classify().is_mv {
        return Err(Error::NotMV);
    }
    let one = rat(1);
    check_prefix(alg, values, &one).map_err(Error::NotASubmeasure)?;
    Ok(check_join_absorption(alg, values, &one))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{boolean_algebra, mo, mv_chain};
    use crate::rational::ratio;
    use crate::uniformities::{enumerate_d_congruences, CongruenceMode};

    fn vals(xs: &[&str]) -> Vec<ExtendedValue> {
        xs.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn zero_is_a_submeasure_for_every_k() {
        let alg = mo(3).unwrap();
        let z = vec![ExtendedValue::zero(); alg.size()];
        for k in [rat(1), ratio(3, 2), rat(7)] {
            assert!(is_k_submeasure(&alg, &z, &k));
        }
    }

    #[test]
    fn three_chain_example() {
        let alg = mv_chain(2).unwrap();
        assert!(is_k_submeasure(&alg, &vals(&["0", "1", "1"]), &rat(1)));
        // doubling at the top breaks subadditivity for k = 1
        let v = check_k_submeasure(&alg, &vals(&["0", "1", "3"]), &rat(1)).unwrap_err();
        assert_eq!(v.axiom, SubmeasureAxiom::WeightedSubadditive);
        let h = alg.element("1/2").unwrap();
        assert_eq!(v.witness, vec![h, h]);
        assert!(is_k_submeasure(&alg, &vals(&["0", "1", "3"]), &rat(2)));
    }

    #[test]
    fn axiom_witnesses() {
        let alg = mv_chain(2).unwrap();
        let check = |xs: &[&str], k| check_k_submeasure(&alg, &vals(xs), &k).unwrap_err().axiom;
        assert_eq!(check(&["1", "1", "1"], rat(1)), SubmeasureAxiom::NullAtZero);
        assert_eq!(check(&["0", "2", "1"], rat(1)), SubmeasureAxiom::Monotone);
        assert_eq!(check(&["0", "1"], rat(1)), SubmeasureAxiom::ValueCount);
        assert_eq!(check(&["0", "1", "1"], ratio(1, 2)), SubmeasureAxiom::ParameterBelowOne);
    }

    #[test]
    fn join_absorption_can_fail_alone() {
        // In MO2 the indicator off {0, a1} satisfies the first three axioms,
        // but (a1 ∨ a2) ⊖ a2 = a2′ has value 1.
        let alg = mo(2).unwrap();
        let mut found = false;
        for bits in 0..1u64 << alg.size() {
            let kernel = ElementSet::from_bits(bits);
            if !kernel.contains(alg.zero()) {
                continue;
            }
            let v: Vec<ExtendedValue> = alg
                .elements()
                .map(|a| if kernel.contains(a) { ExtendedValue::zero() } else { ExtendedValue::from_int(1) })
                .collect();
            if check_prefix(&alg, &v, &rat(1)).is_ok() && check_join_absorption(&alg, &v, &rat(1)).is_err() {
                found = true;
            }
        }
        assert!(found, "some down-closed ⊕-closed set in MO2 is not join-absorbing");
    }

    #[test]
    fn kernel_uniformities() {
        let alg = boolean_algebra(2).unwrap();
        let z = KSubmeasure::new(&alg, vec![ExtendedValue::zero(); 4], rat(1)).unwrap();
        assert_eq!(kernel_uniformity(&z).unwrap(), Congruence::trivial(&alg));
        let pos = KSubmeasure::new(&alg, vals(&["0", "1", "1", "2"]), rat(1)).unwrap();
        assert_eq!(kernel_uniformity(&pos).unwrap(), Congruence::discrete(&alg));
        let ind = KSubmeasure::new(&alg, vals(&["0", "0", "1", "1"]), rat(1)).unwrap();
        let u = kernel_uniformity(&ind).unwrap();
        assert_eq!(u.classes().len(), 2);
        assert!(u.related(alg.element("b").unwrap(), alg.one()));
    }

    #[test]
    fn weakest_on_boolean_square() {
        let alg = boolean_algebra(2).unwrap();
        let congs = enumerate_d_congruences(&alg, CongruenceMode::Brute, 10).unwrap();
        let z = KSubmeasure::new(&alg, vec![ExtendedValue::zero(); 4], rat(1)).unwrap();
        let r = check_weakest(&z, &congs).unwrap();
        assert!(r.passed());
        assert_eq!(r.counts["continuous_congruences"], 4);
        let inj = KSubmeasure::new(&alg, vals(&["0", "1", "2", "3"]), rat(1)).unwrap();
        let r = check_weakest(&inj, &congs).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.counts["continuous_congruences"], 1);
    }

    #[test]
    fn infinity_is_isolated() {
        let alg = boolean_algebra(2).unwrap();
        let eta = KSubmeasure::new(&alg, vals(&["0", "1", "inf", "inf"]), rat(1)).unwrap();
        assert!(!is_uniformly_continuous(&eta, &Congruence::trivial(&alg)));
        let mixed = Congruence::from_labels(&alg, &[0, 1, 1, 2]).unwrap();
        assert_eq!(continuity_failure(&eta, &mixed).map(|(a, b)| (a.index(), b.index())), Some((1, 2)));
        let top = Congruence::from_labels(&alg, &[0, 1, 2, 2]).unwrap();
        assert!(is_uniformly_continuous(&eta, &top));
        let congs = enumerate_d_congruences(&alg, CongruenceMode::Brute, 10).unwrap();
        let r = check_weakest(&eta, &congs).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.counts["continuous_congruences"], 1);
    }

    #[test]
    fn canonical_indicator_regenerates_phi() {
        let alg = boolean_algebra(2).unwrap();
        for f in crate::dfilters::enumerate_dfilters(&alg, 64).unwrap() {
            let eta = canonical_indicator(&f);
            assert_eq!(eta.k(), &rat(1));
            assert_eq!(kernel_uniformity(&eta).unwrap(), phi(&f));
        }
        let d = canonical_indicator(&DFilterGenerator::discrete(&alg));
        assert_eq!(kernel_uniformity(&d).unwrap(), Congruence::discrete(&alg));
    }

    #[test]
    fn mv_remark_examples() {
        let c3 = mv_chain(3).unwrap();
        assert_eq!(mv_s123_check(&c3, &vals(&["0", "1/3", "2/3", "1"])).unwrap(), Ok(()));
        let c2 = mv_chain(2).unwrap();
        assert_eq!(mv_s123_check(&c2, &vals(&["0", "1", "1"])).unwrap(), Ok(()));
        let zero = vec![ExtendedValue::zero(); 4];
        assert_eq!(mv_s123_check(&boolean_algebra(2).unwrap(), &zero).unwrap(), Ok(()));
        assert!(matches!(mv_s123_check(&mo(2).unwrap(), &[]), Err(Error::NotMV)));
        assert!(matches!(mv_s123_check(&c2, &vals(&["0", "2", "1"])), Err(Error::NotASubmeasure(_))));
    }

    #[test]
    fn json_round_trip() {
        let alg = boolean_algebra(2).unwrap();
        let json: SubmeasureJson = serde_json::from_str(r#"{"values":[0,"1/2","inf","inf"],"k":"3/2"}"#).unwrap();
        let eta = KSubmeasure::from_json(&alg, &json).unwrap();
        assert_eq!(eta.k(), &ratio(3, 2));
        let back = serde_json::to_string(&eta.to_json()).unwrap();
        assert_eq!(back, r#"{"values":["0","1/2","inf","inf"],"k":"3/2"}"#);
    }
}
