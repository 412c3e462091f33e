//! Seeded generators of submeasures, measures and test functions.
//!
//! Every generator draws from a ChaCha stream keyed by a seed and a name,
//! so a corpus depends only on its inputs.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::EffectAlgebra;
use crate::dfilters::DFilterGenerator;
use crate::elements::{ElementId, ElementSet};
use crate::error::Result;
use crate::linalg::nullspace;
use crate::rational::{rat, ratio, ExtendedValue, Rational};
use crate::submeasures::measure::{weber_distance, ModularMeasure, NormKind};
use crate::submeasures::pseudometric::submeasure_from_pseudometric;
use crate::submeasures::{canonical_indicator, check_first_three_axioms, is_k_submeasure, KSubmeasure};

pub const DEFAULT_SEED: u64 = 20_240_917;

/// A deterministic stream for `(seed, name)`.
pub fn rng_for(seed: u64, name: &str) -> ChaCha8Rng {
    // FNV-1a keeps the key stable across toolchains.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

/// Basis of the scalar modular measures on `alg`.
pub fn measure_space_basis(alg: &EffectAlgebra) -> Vec<Vec<Rational>> {
    let n = alg.size();
    let mut rows: BTreeSet<Vec<i64>> = BTreeSet::new();
    for a in alg.elements() {
        for b in alg.elements() {
            let mut row = vec![0i64; n];
            if let Some(s) = alg.osum(a, b) {
                row[s.index()] += 1;
                row[a.index()] -= 1;
                row[b.index()] -= 1;
                if row.iter().any(|&x| x != 0) {
                    rows.insert(row);
                }
            }
            let mut row = vec![0i64; n];
            row[a.index()] += 1;
            row[b.index()] += 1;
            row[alg.join(a, b).index()] -= 1;
            row[alg.meet(a, b).index()] -= 1;
            if row.iter().any(|&x| x != 0) {
                rows.insert(row);
            }
        }
    }
    let matrix: Vec<Vec<Rational>> = rows.into_iter().map(|r| r.into_iter().map(rat).collect()).collect();
    nullspace(&matrix, n)
}

fn combine(basis: &[Vec<Rational>], coeffs: &[i64], n: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    for (b, &c) in basis.iter().zip(coeffs) {
        for (x, y) in v.iter_mut().zip(b) {
            *x += y * rat(c);
        }
    }
    v
}

/// The zero measure, each basis measure, then random integer combinations
/// (coefficients in `[-3, 3]`, dimension 1 to 3, either norm), until
/// `count` measures exist. Algebras with a trivial measure space repeat
/// zero measures of varying shape.
pub fn random_measures<'a>(alg: &'a EffectAlgebra, rng: &mut ChaCha8Rng, count: usize) -> Vec<ModularMeasure<'a>> {
    let n = alg.size();
    let basis = measure_space_basis(alg);
    let column = |v: Vec<Rational>| v.into_iter().map(|x| vec![x]).collect::<Vec<_>>();
    let mut out = vec![ModularMeasure::zero(alg, 1)];
    for b in &basis {
        if out.len() >= count {
            break;
        }
        out.push(ModularMeasure::new(alg, 1, column(b.clone()), NormKind::Max).expect("basis vector is modular"));
    }
    while out.len() < count {
        let dim = rng.gen_range(1..=3);
        let norm = if rng.gen_bool(0.5) { NormKind::Max } else { NormKind::Sum };
        let coords: Vec<Vec<Rational>> = (0..dim)
            .map(|_| {
                let coeffs: Vec<i64> = basis.iter().map(|_| rng.gen_range(-3..=3)).collect();
                combine(&basis, &coeffs, n)
            })
            .collect();
        let mu = (0..n).map(|a| coords.iter().map(|c| c[a].clone()).collect()).collect();
        out.push(ModularMeasure::new(alg, dim, mu, norm).expect("combination of modular measures is modular"));
    }
    out
}

/// Coordinate `i` counts the atoms below `x` whose labels are listed in
/// `coords[i]`. Modular on Boolean algebras.
pub fn atom_count_measure<'a>(alg: &'a EffectAlgebra, coords: &[&[&str]]) -> Result<ModularMeasure<'a>> {
    let atoms: Vec<Vec<ElementId>> =
        coords.iter().map(|labels| labels.iter().filter_map(|l| alg.element(l)).collect()).collect();
    let mu = alg
        .elements()
        .map(|x| atoms.iter().map(|c| rat(c.iter().filter(|&&a| alg.leq(a, x)).count() as i64)).collect())
        .collect();
    ModularMeasure::new(alg, coords.len(), mu, NormKind::Max)
}

/// On the three-atom Boolean algebra, the measure `(|S ∩ {b, c}|, |S ∩ {a, c}|)`:
/// each coordinate has a nontrivial null ideal, but their intersection is
/// the diagonal.
pub fn two_ideal_measure(alg: &EffectAlgebra) -> Option<ModularMeasure<'_>> {
    let ok = alg.size() == 8 && ["a", "b", "c"].iter().all(|l| alg.element(l).is_some());
    if !ok {
        return None;
    }
    atom_count_measure(alg, &[&["b", "c"], &["a", "c"]]).ok()
}

/// Random rational in `[1, 2]` with a small denominator.
fn unit_to_two(rng: &mut ChaCha8Rng) -> Rational {
    let q = rng.gen_range(1..=64);
    ratio(rng.gen_range(q..=2 * q), q)
}

/// Random down-set containing `0`.
fn random_down_set(alg: &EffectAlgebra, rng: &mut ChaCha8Rng) -> ElementSet {
    let mut order: Vec<ElementId> = alg.elements().collect();
    order.sort_by_key(|&e| (alg.down_set(e).len(), e));
    let mut set = ElementSet::singleton(alg.zero());
    let p = rng.gen_range(0.2..0.8);
    for x in order {
        let mut below = alg.down_set(x);
        below.remove(x);
        if below.is_subset(set) && rng.gen_bool(p) {
            set.insert(x);
        }
    }
    set
}

/// Monotone values: `0` on the down-set `kernel`, otherwise the largest
/// random weight in `[1, 2]` found below.
fn monotone_off(alg: &EffectAlgebra, kernel: ElementSet, rng: &mut ChaCha8Rng) -> Vec<ExtendedValue> {
    let weights: Vec<Rational> = alg.elements().map(|_| unit_to_two(rng)).collect();
    alg.elements()
        .map(|x| {
            (alg.down_set(x) & !kernel)
                .iter()
                .map(|y| weights[y.index()].clone())
                .max()
                .map_or_else(ExtendedValue::zero, ExtendedValue::Finite)
        })
        .collect()
}

fn random_k(rng: &mut ChaCha8Rng) -> Rational {
    let q = rng.gen_range(1..=16);
    rat(1) + ratio(rng.gen_range(0..=3 * q), q)
}

fn scaled(values: &[ExtendedValue], c: i64) -> Vec<ExtendedValue> {
    values.iter().map(|v| v.scale(&rat(c))).collect()
}

/// Submeasures for one algebra: indicators of every D-filter (scaled and
/// `0/+∞` variants), maxima and sums of indicator pairs, submeasures from
/// measure distances, nonnegative scalar measures, then random monotone
/// functions kept only if they pass the axiom check. Deduplicated by
/// `(values, k)`; stops at `count` or after a bounded number of attempts.
pub fn submeasure_corpus<'a>(
    alg: &'a EffectAlgebra,
    filters: &[DFilterGenerator<'a>],
    measures: &[ModularMeasure<'a>],
    rng: &mut ChaCha8Rng,
    count: usize,
) -> Vec<KSubmeasure<'a>> {
    let mut seen: BTreeSet<(Vec<ExtendedValue>, Rational)> = BTreeSet::new();
    let mut out: Vec<KSubmeasure> = Vec::new();
    let mut offer = |values: Vec<ExtendedValue>, k: Rational, out: &mut Vec<KSubmeasure<'a>>| {
        if out.len() >= count || seen.contains(&(values.clone(), k.clone())) {
            return;
        }
        if is_k_submeasure(alg, &values, &k) {
            seen.insert((values.clone(), k.clone()));
            out.push(KSubmeasure::new(alg, values, k).expect("checked"));
        }
    };

    let indicators: Vec<Vec<ExtendedValue>> = filters.iter().map(|f| canonical_indicator(f).values().to_vec()).collect();
    for ind in &indicators {
        offer(ind.clone(), rat(1), &mut out);
        offer(scaled(ind, 2), rat(1), &mut out);
        let inf = ind.iter().map(|v| if v.is_zero() { v.clone() } else { ExtendedValue::Infinity }).collect();
        offer(inf, rat(1), &mut out);
    }
    for (i, f) in indicators.iter().enumerate() {
        for g in indicators.iter().skip(i + 1).take(4) {
            let max = f.iter().zip(g).map(|(x, y)| x.max(y).clone()).collect();
            offer(max, rat(1), &mut out);
            let sum = f.iter().zip(g).map(|(x, y)| x.add(y)).collect();
            offer(sum, rat(1), &mut out);
        }
    }
    for mu in measures {
        for d in weber_distance(mu).coordinates {
            if let Ok(res) = submeasure_from_pseudometric(&d) {
                offer(res.eta.values().to_vec(), rat(1), &mut out);
            }
        }
        if mu.dim() == 1 && alg.elements().all(|a| !mu.value(a)[0].is_negative()) {
            offer(alg.elements().map(|a| ExtendedValue::Finite(mu.value(a)[0].clone())).collect(), rat(1), &mut out);
        }
    }
    let mut attempts = 0;
    while out.len() < count && attempts < 50 * count {
        attempts += 1;
        let kernel = if !filters.is_empty() && rng.gen_bool(0.5) {
            filters.choose(rng).unwrap().members()
        } else {
            random_down_set(alg, rng)
        };
        let values = monotone_off(alg, kernel, rng);
        let k = random_k(rng);
        offer(values, k, &mut out);
    }
    out
}

/// Functions satisfying the first three axioms with `k = 1` on an
/// MV-algebra. Values in `[1, 2]` off `0` always qualify; further
/// candidates take a random D-filter as kernel and are kept if they pass.
pub fn s123_corpus(
    alg: &EffectAlgebra,
    filters: &[DFilterGenerator<'_>],
    rng: &mut ChaCha8Rng,
    count: usize,
) -> Vec<Vec<ExtendedValue>> {
    let mut seen: BTreeSet<Vec<ExtendedValue>> = BTreeSet::new();
    let one = rat(1);
    seen.insert(vec![ExtendedValue::zero(); alg.size()]);
    let mut attempts = 0;
    while seen.len() < count && attempts < 50 * count {
        attempts += 1;
        let kernel = if !filters.is_empty() && rng.gen_bool(0.3) {
            filters.choose(rng).unwrap().members()
        } else {
            ElementSet::singleton(alg.zero())
        };
        let values = monotone_off(alg, kernel, rng);
        if check_first_three_axioms(alg, &values, &one).is_ok() {
            seen.insert(values);
        }
    }
    seen.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{boolean_algebra, mo, mv_chain};
    use crate::dfilters::{enumerate_dfilters, is_dfilter_generator};
    use crate::submeasures::measure::measure_uniformity;
    use crate::uniformities::Congruence;

    #[test]
    fn stream_is_reproducible() {
        let a: Vec<u32> = (0..4).map(|_| rng_for(1, "x").gen()).collect();
        let b: Vec<u32> = (0..4).map(|_| rng_for(1, "x").gen()).collect();
        assert_eq!(a, b);
        assert_ne!(rng_for(1, "x").gen::<u64>(), rng_for(1, "y").gen::<u64>());
    }

    #[test]
    fn measure_space_dimensions() {
        // chain: μ(i) = i μ(1); Boolean algebra: one free value per atom;
        // MOₙ for n ≥ 2: every atom weighs half the unit.
        assert_eq!(measure_space_basis(&mv_chain(5).unwrap()).len(), 1);
        assert_eq!(measure_space_basis(&boolean_algebra(3).unwrap()).len(), 3);
        assert_eq!(measure_space_basis(&mo(3).unwrap()).len(), 1);
        assert_eq!(measure_space_basis(&boolean_algebra(0).unwrap()).len(), 0);
    }

    #[test]
    fn random_measures_are_modular_and_counted() {
        let alg = boolean_algebra(2).unwrap();
        let ms = random_measures(&alg, &mut rng_for(3, "b2"), 20);
        assert_eq!(ms.len(), 20);
        assert!(ms.iter().any(|m| m.dim() > 1));
    }

    #[test]
    fn two_ideal_measure_is_diagonal() {
        let alg = boolean_algebra(3).unwrap();
        let mu = two_ideal_measure(&alg).unwrap();
        assert_eq!(measure_uniformity(&mu).unwrap(), Congruence::discrete(&alg));
        assert!(two_ideal_measure(&mv_chain(7).unwrap()).is_none());
    }

    #[test]
    fn submeasure_corpus_reaches_count_with_generator_kernels() {
        for alg in [boolean_algebra(0).unwrap(), mv_chain(3).unwrap(), mo(2).unwrap(), boolean_algebra(3).unwrap()] {
            let filters = enumerate_dfilters(&alg, 64).unwrap();
            let mut rng = rng_for(7, "corpus");
            let ms = random_measures(&alg, &mut rng, 5);
            let corpus = submeasure_corpus(&alg, &filters, &ms, &mut rng, 100);
            assert_eq!(corpus.len(), 100, "{}", alg.size());
            for eta in &corpus {
                assert!(is_dfilter_generator(&alg, eta.kernel()));
            }
        }
    }

    #[test]
    fn s123_corpus_size() {
        let alg = mv_chain(3).unwrap();
        let filters = enumerate_dfilters(&alg, 64).unwrap();
        let c = s123_corpus(&alg, &filters, &mut rng_for(1, "mv"), 100);
        assert_eq!(c.len(), 100);
        for v in &c {
            assert!(check_first_three_axioms(&alg, v, &rat(1)).is_ok());
        }
    }
}
