//! Standard finite D-lattices and combinators used as fixtures.

use crate::algebra::EffectAlgebra;
use crate::elements::MAX_ELEMENTS;
use crate::error::{Error, Result};

/// Largest carrier any constructor will produce.
pub const SIZE_CAP: usize = MAX_ELEMENTS;

fn check_cap(what: &'static str, n: usize) -> Result<()> {
    if n > SIZE_CAP {
        Err(Error::SizeCap { what, n, cap: SIZE_CAP })
    } else {
        Ok(())
    }
}

/// The MV-chain `{0, 1/n, .., 1}` with truncated addition left undefined
/// above `1`.
pub fn mv_chain(n: usize) -> Result<EffectAlgebra> {
    if n == 0 {
        return Err(Error::InvalidArgument("mv_chain needs n >= 1".into()));
    }
    check_cap("mv_chain", n + 1)?;
    let table: Vec<Vec<Option<usize>>> =
        (0..=n).map(|i| (0..=n).map(|j| (i + j <= n).then_some(i + j)).collect()).collect();
    let labels = (0..=n)
        .map(|i| match i {
            0 => "0".to_string(),
            i if i == n => "1".to_string(),
            i => format!("{i}/{n}"),
        })
        .collect();
    EffectAlgebra::build(&table, 0, n, Some(labels))
}

/// Subsets of `k` atoms; the sum of disjoint sets is their union.
pub fn boolean_algebra(k: usize) -> Result<EffectAlgebra> {
    if k >= usize::BITS as usize || (1usize << k) > SIZE_CAP {
        return Err(Error::SizeCap { what: "boolean_algebra", n: 1usize.checked_shl(k as u32).unwrap_or(usize::MAX), cap: SIZE_CAP });
    }
    let size = 1usize << k;
    let table: Vec<Vec<Option<usize>>> =
        (0..size).map(|a| (0..size).map(|b| (a & b == 0).then_some(a | b)).collect()).collect();
    let labels = (0..size)
        .map(|m| {
            if m == 0 {
                "0".to_string()
            } else if m == size - 1 {
                "1".to_string()
            } else {
                (0..k).filter(|i| m >> i & 1 == 1).map(atom_name).collect()
            }
        })
        .collect();
    EffectAlgebra::build(&table, 0, size - 1, Some(labels))
}

fn atom_name(i: usize) -> char {
    (b'a' + (i % 26) as u8) as char
}

/// `MOₙ`: `n` four-element Boolean blocks glued along `0` and `1`.
///
/// Indices: `0`, then `a1, a1', .., an, an'`, then `1`.
pub fn mo(n: usize) -> Result<EffectAlgebra> {
    if n == 0 {
        return Err(Error::InvalidArgument("mo needs n >= 1".into()));
    }
    let size = 2 * n + 2;
    check_cap("mo", size)?;
    let one = size - 1;
    let mut table = vec![vec![None; size]; size];
    for x in 0..size {
        table[x][0] = Some(x);
        table[0][x] = Some(x);
    }
    for i in 0..n {
        let (a, ac) = (2 * i + 1, 2 * i + 2);
        table[a][ac] = Some(one);
        table[ac][a] = Some(one);
    }
    let mut labels = vec!["0".to_string()];
    for i in 1..=n {
        labels.push(format!("a{i}"));
        labels.push(format!("a{i}'"));
    }
    labels.push("1".to_string());
    EffectAlgebra::build(&table, 0, one, Some(labels))
}

/// Cartesian product with componentwise sums; `(x, y)` has index
/// `x * |B| + y`.
pub fn product(a: &EffectAlgebra, b: &EffectAlgebra) -> Result<EffectAlgebra> {
    let (na, nb) = (a.size(), b.size());
    check_cap("product", na * nb)?;
    let size = na * nb;
    let mut table = vec![vec![None; size]; size];
    for x1 in a.elements() {
        for y1 in b.elements() {
            for x2 in a.elements() {
                for y2 in b.elements() {
                    if let (Some(x), Some(y)) = (a.osum(x1, x2), b.osum(y1, y2)) {
                        table[x1.index() * nb + y1.index()][x2.index() * nb + y2.index()] =
                            Some(x.index() * nb + y.index());
                    }
                }
            }
        }
    }
    let labels = a
        .elements()
        .flat_map(|x| b.elements().map(move |y| (x, y)))
        .map(|(x, y)| format!("({},{})", a.label(x), b.label(y)))
        .collect();
    EffectAlgebra::build(
        &table,
        a.zero().index() * nb + b.zero().index(),
        a.one().index() * nb + b.one().index(),
        Some(labels),
    )
}

/// Glues the bottoms and tops of two nontrivial algebras; sums are only
/// formed inside one summand.
///
/// Indices: `0`, interior of `a` in order, interior of `b` in order, `1`.
pub fn horizontal_sum(a: &EffectAlgebra, b: &EffectAlgebra) -> Result<EffectAlgebra> {
    if a.size() < 2 || b.size() < 2 {
        return Err(Error::InvalidArgument("horizontal_sum needs two nontrivial algebras".into()));
    }
    let (ia, ib) = (a.size() - 2, b.size() - 2);
    let size = ia + ib + 2;
    check_cap("horizontal_sum", size)?;
    let one = size - 1;

    let embed = |alg: &EffectAlgebra, offset: usize| -> Vec<usize> {
        let mut map = vec![0; alg.size()];
        let mut next = offset;
        for x in alg.elements() {
            map[x.index()] = if x == alg.zero() {
                0
            } else if x == alg.one() {
                one
            } else {
                next += 1;
                next
            };
        }
        map
    };
    let map_a = embed(a, 0);
    let map_b = embed(b, ia);

    let mut table = vec![vec![None; size]; size];
    for (alg, map) in [(a, &map_a), (b, &map_b)] {
        for x in alg.elements() {
            for y in alg.elements() {
                if let Some(s) = alg.osum(x, y) {
                    table[map[x.index()]][map[y.index()]] = Some(map[s.index()]);
                }
            }
        }
    }

    let interior = |alg: &EffectAlgebra| -> Vec<String> {
        alg.elements()
            .filter(|&x| x != alg.zero() && x != alg.one())
            .map(|x| alg.label(x).to_string())
            .collect()
    };
    let (mut la, mut lb) = (interior(a), interior(b));
    if la.iter().any(|l| lb.contains(l)) {
        la.iter_mut().for_each(|l| l.push_str("_1"));
        lb.iter_mut().for_each(|l| l.push_str("_2"));
    }
    let mut labels = vec!["0".to_string()];
    labels.extend(la);
    labels.extend(lb);
    labels.push("1".to_string());
    EffectAlgebra::build(&table, 0, one, Some(labels))
}

/// A named fixture.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: EffectAlgebra,
}

impl CatalogEntry {
    fn new(name: impl Into<String>, algebra: EffectAlgebra) -> Self {
        CatalogEntry { name: name.into(), algebra }
    }
}

/// Every standard fixture with at most `max_n` elements, in a fixed order:
/// chains up to 16 steps, Boolean algebras up to 5 atoms, `MOₙ` up to 7
/// blocks, then a selection of products and horizontal sums.
pub fn standard_catalog(max_n: usize) -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    let mut push = |name: String, alg: Result<EffectAlgebra>| {
        let alg = alg.expect("catalog fixture is valid");
        if alg.size() <= max_n {
            out.push(CatalogEntry::new(name, alg));
        }
    };
    for n in 1..=16 {
        push(format!("chain({n})"), mv_chain(n));
    }
    for k in 0..=5 {
        push(format!("boolean({k})"), boolean_algebra(k));
    }
    for n in 1..=7 {
        push(format!("mo({n})"), mo(n));
    }
    let chain = |n| mv_chain(n).unwrap();
    let boolean = |k| boolean_algebra(k).unwrap();
    let mo_ = |n| mo(n).unwrap();
    push("chain(1)*chain(1)".into(), product(&chain(1), &chain(1)));
    push("chain(1)*chain(2)".into(), product(&chain(1), &chain(2)));
    push("chain(2)*chain(2)".into(), product(&chain(2), &chain(2)));
    push("chain(2)*chain(3)".into(), product(&chain(2), &chain(3)));
    push("boolean(1)*mo(2)".into(), product(&boolean(1), &mo_(2)));
    push("chain(2)*mo(2)".into(), product(&chain(2), &mo_(2)));
    push("boolean(2)*chain(3)".into(), product(&boolean(2), &chain(3)));
    push("chain(1)*boolean(4)".into(), product(&chain(1), &boolean(4)));
    push("hsum(boolean(2),boolean(2))".into(), horizontal_sum(&boolean(2), &boolean(2)));
    push("hsum(chain(2),chain(2))".into(), horizontal_sum(&chain(2), &chain(2)));
    push("hsum(chain(2),boolean(2))".into(), horizontal_sum(&chain(2), &boolean(2)));
    push("hsum(chain(3),chain(4))".into(), horizontal_sum(&chain(3), &chain(4)));
    push("hsum(mo(2),chain(3))".into(), horizontal_sum(&mo_(2), &chain(3)));
    push(
        "hsum(chain(2)*chain(2),boolean(2))".into(),
        horizontal_sum(&product(&chain(2), &chain(2)).unwrap(), &boolean(2)),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elements::ElementId;
    use crate::identities::verify_basic_identities;

    #[test]
    fn chain_one_is_two_element_boolean() {
        let c = mv_chain(1).unwrap();
        assert!(c.is_isomorphic(&boolean_algebra(1).unwrap()));
    }

    #[test]
    fn three_chain_halves_sum_to_one() {
        let c = mv_chain(2).unwrap();
        let h = c.element("1/2").unwrap();
        assert_eq!(c.osum(h, h), Some(c.one()));
        assert_eq!(c.complement(h), h);
    }

    #[test]
    fn boolean_two_complements() {
        let b = boolean_algebra(2).unwrap();
        assert_eq!(b.size(), 4);
        let (a, bb) = (b.element("a").unwrap(), b.element("b").unwrap());
        assert_eq!(b.complement(a), bb);
        assert!(verify_basic_identities(&b).passed());
    }

    #[test]
    fn boolean_zero_is_trivial() {
        let b = boolean_algebra(0).unwrap();
        assert_eq!(b.size(), 1);
        assert_eq!(b.zero(), b.one());
    }

    #[test]
    fn boolean_cap() {
        assert!(boolean_algebra(6).is_ok());
        assert!(matches!(boolean_algebra(7), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn classification_of_fixtures() {
        let c3 = mv_chain(3).unwrap().classify();
        assert!(c3.is_mv && !c3.is_oml);
        let b3 = boolean_algebra(3).unwrap().classify();
        assert!(b3.is_mv && b3.is_oml);
        let m2 = mo(2).unwrap().classify();
        assert!(!m2.is_mv && m2.is_oml);
    }

    #[test]
    fn mo_two_has_mv_witness_and_cross_block_delta() {
        let m = mo(2).unwrap();
        assert!(m.mv_counterexample().is_some());
        let (a1, a2) = (m.element("a1").unwrap(), m.element("a2").unwrap());
        assert_eq!(m.join(a1, a2), m.one());
        assert_eq!(m.meet(a1, a2), m.zero());
        assert_eq!(m.symm_diff(a1, a2), m.one());
    }

    #[test]
    fn mo_one_is_boolean_square() {
        assert!(mo(1).unwrap().is_isomorphic(&boolean_algebra(2).unwrap()));
    }

    #[test]
    fn product_of_two_element_chains_is_boolean_square() {
        let p = product(&mv_chain(1).unwrap(), &mv_chain(1).unwrap()).unwrap();
        assert!(p.is_isomorphic(&boolean_algebra(2).unwrap()));
    }

    #[test]
    fn product_with_trivial_is_identity() {
        let a = mo(2).unwrap();
        let p = product(&a, &boolean_algebra(0).unwrap()).unwrap();
        assert!(p.is_isomorphic(&a));
    }

    #[test]
    fn horizontal_sum_of_squares_is_mo_two() {
        let b = boolean_algebra(2).unwrap();
        let h = horizontal_sum(&b, &b).unwrap();
        assert!(h.is_isomorphic(&mo(2).unwrap()));
        assert_eq!(h.label(ElementId::new(1)), "a_1");
    }

    #[test]
    fn horizontal_sum_rejects_trivial() {
        let t = boolean_algebra(0).unwrap();
        let b = boolean_algebra(2).unwrap();
        assert!(matches!(horizontal_sum(&t, &b), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn product_cap() {
        let b = boolean_algebra(4).unwrap();
        assert!(matches!(product(&b, &b), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn catalog_is_valid_and_sized() {
        let all = standard_catalog(32);
        assert!(all.iter().all(|e| e.algebra.size() <= 32));
        assert!(all.iter().any(|e| e.name == "boolean(5)"));
        let small = standard_catalog(10);
        assert!(small.iter().all(|e| e.algebra.size() <= 10));
        assert!(small.iter().any(|e| e.name == "mo(4)"));
        let mut names: Vec<_> = all.iter().map(|e| e.name.clone()).collect();
        names.dedup();
        assert_eq!(names.len(), all.len());
    }

    #[test]
    fn mo_fails_mv_for_every_size_above_one() {
        for n in 2..=5 {
            assert!(!mo(n).unwrap().classify().is_mv);
        }
        for n in 1..=6 {
            assert!(mv_chain(n).unwrap().classify().is_mv);
        }
    }
}
