//! Modular measures with values in `ℚ^dim`.
//!
//! A modular measure satisfies `μ(a) + μ(b) = μ(a ∨ b) + μ(a ∧ b)` and
//! `μ(a ⊕ b) = μ(a) + μ(b)` for `a ⊥ b`. The value group is modelled by
//! rational vectors; its seminorms are the coordinate absolute values plus
//! one chosen norm (max or sum of coordinates).

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::EffectAlgebra;
use crate::elements::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::rational::{rat, serde_rational_rows, ExtendedValue, Rational};
use crate::relation::Relation;
use crate::report::{Check, Report, Tally, Witness};
use crate::submeasures::pseudometric::{submeasure_from_pseudometric, Pseudometric};
use crate::submeasures::{kernel_uniformity, KSubmeasure};
use crate::uniformities::Congruence;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    #[default]
    Max,
    Sum,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeasureCondition {
    Shape,
    /// `μ(a ⊕ b) = μ(a) + μ(b)`.
    Additive,
    /// `μ(a) + μ(b) = μ(a ∨ b) + μ(a ∧ b)`.
    Modular,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureViolation {
    pub condition: MeasureCondition,
    pub witness: Vec<ElementId>,
}

impl fmt::Display for MeasureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<usize> = self.witness.iter().map(|e| e.index()).collect();
        write!(f, "{:?} fails at {:?}", self.condition, ids)
    }
}

/// JSON form: `{"dim": 2, "mu": [[..], ..], "norm": "max"}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MeasureJson {
    pub dim: usize,
    #[serde(with = "serde_rational_rows")]
    pub mu: Vec<Vec<Rational>>,
    #[serde(default)]
    pub norm: NormKind,
}

fn vsum(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Additivity on orthogonal pairs first, then modularity.
pub fn modular_measure_check(alg: &EffectAlgebra, dim: usize, mu: &[Vec<Rational>]) -> Result<(), MeasureViolation> {
    let fail = |condition, witness| Err(MeasureViolation { condition, witness });
    if dim == 0 || mu.len() != alg.size() || mu.iter().any(|v| v.len() != dim) {
        return fail(MeasureCondition::Shape, vec![]);
    }
    let at = |a: ElementId| &mu[a.index()][..];
    for a in alg.elements() {
        for b in alg.elements() {
            if let Some(s) = alg.osum(a, b) {
                if at(s) != vsum(at(a), at(b)) {
                    return fail(MeasureCondition::Additive, vec![a, b]);
                }
            }
        }
    }
    for a in alg.elements() {
        for b in alg.elements() {
            if vsum(at(a), at(b)) != vsum(at(alg.join(a, b)), at(alg.meet(a, b))) {
                return fail(MeasureCondition::Modular, vec![a, b]);
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct ModularMeasure<'a> {
    algebra: &'a EffectAlgebra,
    dim: usize,
    mu: Vec<Vec<Rational>>,
    norm: NormKind,
}

impl<'a> ModularMeasure<'a> {
    pub fn new(algebra: &'a EffectAlgebra, dim: usize, mu: Vec<Vec<Rational>>, norm: NormKind) -> Result<Self> {
        modular_measure_check(algebra, dim, &mu).map_err(Error::NotModular)?;
        Ok(ModularMeasure { algebra, dim, mu, norm })
    }

    pub fn scalar(algebra: &'a EffectAlgebra, values: Vec<Rational>) -> Result<Self> {
        Self::new(algebra, 1, values.into_iter().map(|v| vec![v]).collect(), NormKind::Max)
    }

    pub fn zero(algebra: &'a EffectAlgebra, dim: usize) -> Self {
        ModularMeasure { algebra, dim, mu: vec![vec![Rational::zero(); dim]; algebra.size()], norm: NormKind::Max }
    }

    pub fn from_json(algebra: &'a EffectAlgebra, json: &MeasureJson) -> Result<Self> {
        Self::new(algebra, json.dim, json.mu.clone(), json.norm)
    }

    pub fn to_json(&self) -> MeasureJson {
        MeasureJson { dim: self.dim, mu: self.mu.clone(), norm: self.norm }
    }

    pub fn with_norm(mut self, norm: NormKind) -> Self {
        self.norm = norm;
        self
    }

    pub fn algebra(&self) -> &'a EffectAlgebra {
        self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn norm(&self) -> NormKind {
        self.norm
    }

    pub fn value(&self, a: ElementId) -> &[Rational] {
        &self.mu[a.index()]
    }

    /// Values of one coordinate.
    pub fn coordinate(&self, lambda: usize) -> Vec<Rational> {
        self.mu.iter().map(|v| v[lambda].clone()).collect()
    }

    /// `{a : μ(r) = 0 for all r ≤ a}`.
    pub fn null_elements(&self) -> ElementSet {
        let zero_at: ElementSet =
            self.algebra.elements().filter(|&a| self.value(a).iter().all(|x| x.is_zero())).collect();
        self.algebra.elements().filter(|&a| self.algebra.down_set(a).is_subset(zero_at)).collect()
    }
}

/// `{(a, b) : μ(r) = 0 for all r ≤ a Δ b}`.
pub fn measure_uniformity<'a>(mu: &ModularMeasure<'a>) -> Result<Congruence<'a>> {
    let alg = mu.algebra;
    let null = mu.null_elements();
    let rel = Relation::from_predicate(alg, |a, b| null.contains(alg.symm_diff(a, b)));
    Congruence::from_relation(&rel)
}

/// One pseudometric per coordinate and one for the chosen norm.
pub struct WeberDistances<'a> {
    pub coordinates: Vec<Pseudometric<'a>>,
    pub norm: Pseudometric<'a>,
}

fn interval(alg: &EffectAlgebra, a: ElementId, b: ElementId) -> ElementSet {
    alg.up_set(alg.meet(a, b)) & alg.down_set(alg.join(a, b))
}

/// `d_λ(a, b) = sup {p_λ(μ(r) − μ(s)) : r, s ∈ [a ∧ b, a ∨ b]}`. The
/// results are not validated here; [`decompose_measure`] checks them.
pub fn weber_distance<'a>(mu: &ModularMeasure<'a>) -> WeberDistances<'a> {
    let alg = mu.algebra;
    let n = alg.size();
    let pairs = || alg.elements().flat_map(move |a| alg.elements().map(move |b| (a, b)));
    let coordinates: Vec<Pseudometric> = (0..mu.dim)
        .map(|l| {
            let d = pairs()
                .map(|(a, b)| {
                    let vals = interval(alg, a, b).iter().map(|r| &mu.mu[r.index()][l]);
                    let max = vals.clone().max().unwrap();
                    let min = vals.min().unwrap();
                    max - min
                })
                .collect();
            Pseudometric::new_unchecked(alg, d, rat(1), rat(1))
        })
        .collect();
    let d = match mu.norm {
        NormKind::Max => pairs()
            .map(|(a, b)| coordinates.iter().map(|c| c.distance(a, b).clone()).max().unwrap())
            .collect(),
        NormKind::Sum => pairs()
            .map(|(a, b)| {
                let iv = interval(alg, a, b);
                iv.iter()
                    .flat_map(|r| iv.iter().map(move |s| (r, s)))
                    .map(|(r, s)| {
                        mu.value(r).iter().zip(mu.value(s)).map(|(x, y)| (x - y).abs()).sum::<Rational>()
                    })
                    .max()
                    .unwrap()
            })
            .collect(),
    };
    debug_assert_eq!(coordinates.first().map_or(n * n, |c| c.raw().len()), n * n);
    WeberDistances { coordinates, norm: Pseudometric::new_unchecked(alg, d, rat(1), rat(1)) }
}

/// Builds `η̃_λ(a) = d_λ(a, 0)` per coordinate and checks that the
/// intersection of their kernel uniformities is the measure's uniformity.
/// Also checks the compatibility conditions of each distance, the
/// join contraction, and an interval-free bound on each distance.
pub fn decompose_measure(mu: &ModularMeasure<'_>) -> Result<Report> {
    let alg = mu.algebra;
    let mut report = Report::for_algebra("measure-decomposition", alg);
    let target = measure_uniformity(mu)?;
    let target_rel = target.relation();
    let weber = weber_distance(mu);
    let all: Vec<&Pseudometric> = weber.coordinates.iter().chain(std::iter::once(&weber.norm)).collect();
    let name = |i: usize| if i < mu.dim { format!("d{i}") } else { "d_norm".to_string() };

    let mut t = Tally::new("distances-satisfy-compatibility-with-unit-constants");
    for (i, d) in all.iter().enumerate() {
        let res = d.check();
        t.record(res.is_ok(), || {
            let v = res.unwrap_err();
            let mut w = Witness::elements(alg, &v.witness, format!("{:?} fails", v.condition));
            w.tuple.insert(0, name(i));
            w
        });
    }
    report.push(t.finish());

    let mut t = Tally::new("distances-contract-under-join");
    for (i, d) in all.iter().enumerate() {
        let res = d.join_contraction_failure();
        t.record(res.is_none(), || {
            let mut w = Witness::elements(alg, &res.unwrap(), "d(a ∨ c, b ∨ c) > d(a, b)");
            w.tuple.insert(0, name(i));
            w
        });
    }
    report.push(t.finish());

    // sup |μ_λ(r)| over r ≤ a Δ b bounds d_λ(a, b) within a factor of two.
    let mut t = Tally::new("distance-within-bounds-of-difference-oracle");
    for (l, d) in weber.coordinates.iter().enumerate() {
        for a in alg.elements() {
            for b in alg.elements() {
                let oracle = alg.down_set(alg.symm_diff(a, b)).iter().map(|r| mu.mu[r.index()][l].abs()).max().unwrap();
                let dist = d.distance(a, b);
                t.record(&oracle <= dist && *dist <= &oracle * rat(2), || {
                    Witness::elements(alg, &[a, b], format!("d{l} = {dist}, oracle = {oracle}"))
                });
            }
        }
    }
    report.push(t.finish());

    let mut subm = Tally::new("coordinate-submeasures-generate-distance-uniformity");
    let mut etas: Vec<KSubmeasure> = Vec::new();
    for (i, d) in all.iter().enumerate() {
        match submeasure_from_pseudometric(d) {
            Ok(out) => {
                subm.record(out.uniformities_equal, || Witness::new(vec![name(i)], "uniformities differ"));
                if i < mu.dim {
                    etas.push(out.eta);
                }
            }
            Err(e) => subm.record(false, || Witness::new(vec![name(i)], e.to_string())),
        }
    }
    report.push(subm.finish());
    if etas.len() < mu.dim {
        return Ok(report);
    }

    let kernels: Vec<Relation> =
        etas.iter().map(|eta| kernel_uniformity(eta).map(|c| c.relation())).collect::<Result<_>>()?;
    let mut inter = Relation::all_pairs(alg);
    for k in &kernels {
        inter = inter.intersection(k);
    }
    let mut t = Tally::new("intersection-of-kernels-equals-measure-uniformity");
    t.record(inter == target_rel, || {
        let p = inter.first_outside(&target_rel).or_else(|| target_rel.first_outside(&inter)).unwrap();
        Witness::elements(alg, &[p.0, p.1], "pair in only one side")
    });
    report.push(t.finish());

    let mut t = Tally::new("distance-zero-sets-equal-measure-uniformity");
    let mut zero_all = Relation::all_pairs(alg);
    for d in &weber.coordinates {
        zero_all = zero_all.intersection(&d.zero_relation());
    }
    for rel in [zero_all, weber.norm.zero_relation()] {
        t.record(rel == target_rel, || {
            let p = rel.first_outside(&target_rel).or_else(|| target_rel.first_outside(&rel)).unwrap();
            Witness::elements(alg, &[p.0, p.1], "pair in only one side")
        });
    }
    report.push(t.finish());

    let nonnegative_scalar = mu.dim == 1 && mu.mu.iter().all(|v| !v[0].is_negative());
    if nonnegative_scalar {
        let values = mu.mu.iter().map(|v| ExtendedValue::Finite(v[0].clone())).collect();
        let mut t = Tally::new("nonnegative-measure-uniformity-equals-kernel-uniformity");
        match KSubmeasure::new(alg, values, rat(1)) {
            Ok(eta) => {
                let k = kernel_uniformity(&eta)?;
                t.record(k == target, || Witness::new(vec![k.display(), target.display()], "differ"));
            }
            Err(e) => t.record(false, || Witness::new(vec![], e.to_string())),
        }
        report.push(t.finish());
    } else {
        report.push(Check::skipped(
            "nonnegative-measure-uniformity-equals-kernel-uniformity",
            "measure is signed or vector-valued",
        ));
    }

    let strictly_finer = kernels.iter().filter(|k| inter.is_subset(k) && **k != inter).count();
    report.count("dim", mu.dim as u64);
    report.count("factors_strictly_coarser", strictly_finer as u64);
    report.count("strictly_finer_than_every_factor", (mu.dim > 1 && strictly_finer == mu.dim) as u64);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{boolean_algebra, mv_chain};
    use crate::rational::ratio;

    fn ints(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn zero_measure() {
        let alg = boolean_algebra(2).unwrap();
        let mu = ModularMeasure::zero(&alg, 1);
        assert!(modular_measure_check(&alg, 1, &mu.mu).is_ok());
        assert_eq!(measure_uniformity(&mu).unwrap(), Congruence::trivial(&alg));
        let w = weber_distance(&mu);
        assert!(w.coordinates[0].raw().iter().all(|x| x.is_zero()));
        let r = decompose_measure(&mu).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn additive_example_and_witness() {
        let alg = boolean_algebra(2).unwrap();
        assert!(ModularMeasure::scalar(&alg, ints(&[0, 1, 2, 3])).is_ok());
        let mu: Vec<Vec<Rational>> = ints(&[0, 1, 2, 5]).into_iter().map(|v| vec![v]).collect();
        let v = modular_measure_check(&alg, 1, &mu).unwrap_err();
        assert_eq!(v.condition, MeasureCondition::Additive);
        let e = |l| alg.element(l).unwrap();
        assert_eq!(v.witness, vec![e("a"), e("b")]);
        assert_eq!(modular_measure_check(&alg, 2, &mu).unwrap_err().condition, MeasureCondition::Shape);
    }

    #[test]
    fn strictly_positive_gives_diagonal() {
        let alg = boolean_algebra(2).unwrap();
        let mu = ModularMeasure::scalar(&alg, ints(&[0, 1, 2, 3])).unwrap();
        assert_eq!(measure_uniformity(&mu).unwrap(), Congruence::discrete(&alg));
    }

    #[test]
    fn atom_null_measure() {
        let alg = boolean_algebra(2).unwrap();
        let mu = ModularMeasure::scalar(&alg, ints(&[0, 0, 3, 3])).unwrap();
        let u = measure_uniformity(&mu).unwrap();
        assert_eq!(u, Congruence::from_labels(&alg, &[0, 0, 1, 1]).unwrap());
        let r = decompose_measure(&mu).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn weber_distance_example() {
        let alg = boolean_algebra(2).unwrap();
        let mu = ModularMeasure::scalar(&alg, ints(&[0, 1, 2, 3])).unwrap();
        let d = &weber_distance(&mu).coordinates[0];
        let e = |l| alg.element(l).unwrap();
        assert_eq!(d.distance(e("0"), e("1")), &rat(3));
        assert_eq!(d.distance(e("a"), e("b")), &rat(3));
        assert_eq!(d.distance(e("0"), e("a")), &rat(1));
        for a in alg.elements() {
            assert!(d.distance(a, a).is_zero());
        }
    }

    #[test]
    fn distance_matches_definition_by_pairs() {
        let alg = mv_chain(4).unwrap();
        let mu = ModularMeasure::scalar(&alg, (0..5).map(|i| ratio(-i, 2)).collect()).unwrap();
        let d = &weber_distance(&mu).coordinates[0];
        for a in alg.elements() {
            for b in alg.elements() {
                let iv = interval(&alg, a, b);
                let brute = iv
                    .iter()
                    .flat_map(|r| iv.iter().map(move |s| (r, s)))
                    .map(|(r, s)| (&mu.mu[r.index()][0] - &mu.mu[s.index()][0]).abs())
                    .max()
                    .unwrap();
                assert_eq!(d.distance(a, b), &brute);
            }
        }
    }

    #[test]
    fn two_dimensional_measure_is_strictly_finer() {
        let alg = boolean_algebra(3).unwrap();
        // bit 0 = a, bit 1 = b, bit 2 = c
        let mu: Vec<Vec<Rational>> = (0..8u32)
            .map(|s| vec![rat(((s >> 1) & 1) as i64 + ((s >> 2) & 1) as i64), rat((s & 1) as i64 + ((s >> 2) & 1) as i64)])
            .collect();
        for norm in [NormKind::Max, NormKind::Sum] {
            let m = ModularMeasure::new(&alg, 2, mu.clone(), norm).unwrap();
            assert_eq!(measure_uniformity(&m).unwrap(), Congruence::discrete(&alg));
            let r = decompose_measure(&m).unwrap();
            assert!(r.passed(), "{}", r.to_text());
            assert_eq!(r.counts["strictly_finer_than_every_factor"], 1);
        }
    }

    #[test]
    fn json_round_trip() {
        let alg = mv_chain(2).unwrap();
        let json: MeasureJson = serde_json::from_str(r#"{"dim":1,"mu":[[0],["1/2"],[1]]}"#).unwrap();
        let mu = ModularMeasure::from_json(&alg, &json).unwrap();
        assert_eq!(mu.norm(), NormKind::Max);
        let s = serde_json::to_string(&mu.to_json()).unwrap();
        assert_eq!(s, r#"{"dim":1,"mu":[["0"],["1/2"],["1"]],"norm":"max"}"#);
    }
}
