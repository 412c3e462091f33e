//! Exhaustive checks of the derived identities of a lattice-ordered effect
//! algebra.
//!
//! Each identity is evaluated on every tuple satisfying its hypotheses. A
//! partial operation that turns out undefined where the identity needs it
//! counts as a failure of that instance.

use crate::algebra::EffectAlgebra;
use crate::elements::ElementId;
use crate::report::{Report, Tally, Witness};

type E = ElementId;

/// Runs every identity plus the structural laws (order, lattice,
/// complement) and returns one check per identity.
pub fn verify_basic_identities(alg: &EffectAlgebra) -> Report {
    let mut report = Report::for_algebra("identities", alg);
    for check in structural_checks(alg) {
        report.push(check);
    }
    for check in difference_identities(alg) {
        report.push(check);
    }
    for check in delta_invariance(alg) {
        report.push(check);
    }
    report.count("elements", alg.size() as u64);
    report
}

fn w(alg: &EffectAlgebra, elems: &[E], detail: &str) -> Witness {
    Witness::elements(alg, elems, detail)
}

fn structural_checks(alg: &EffectAlgebra) -> Vec<crate::report::Check> {
    let zero = alg.zero();
    let one = alg.one();

    let mut order = Tally::new("order-is-bounded-partial-order");
    for a in alg.elements() {
        order.record(alg.leq(a, a) && alg.leq(zero, a) && alg.leq(a, one), || {
            w(alg, &[a], "reflexivity or bounds fail")
        });
        for b in alg.elements() {
            order.record(!(a != b && alg.leq(a, b) && alg.leq(b, a)), || {
                w(alg, &[a, b], "antisymmetry fails")
            });
            for c in alg.elements() {
                order.record(!(alg.leq(a, b) && alg.leq(b, c)) || alg.leq(a, c), || {
                    w(alg, &[a, b, c], "transitivity fails")
                });
            }
        }
    }

    let mut lattice = Tally::new("lattice-laws");
    for a in alg.elements() {
        lattice.record(alg.join(a, a) == a && alg.meet(a, a) == a, || w(alg, &[a], "idempotence"));
        for b in alg.elements() {
            let (j, m) = (alg.join(a, b), alg.meet(a, b));
            let ok = j == alg.join(b, a)
                && m == alg.meet(b, a)
                && alg.join(a, m) == a
                && alg.meet(a, j) == a
                && alg.leq(a, j)
                && alg.leq(m, a);
            lattice.record(ok, || w(alg, &[a, b], "commutativity, absorption or bounds"));
            for c in alg.elements() {
                let ok = alg.join(alg.join(a, b), c) == alg.join(a, alg.join(b, c))
                    && alg.meet(alg.meet(a, b), c) == alg.meet(a, alg.meet(b, c));
                lattice.record(ok, || w(alg, &[a, b, c], "associativity"));
            }
        }
    }

    let mut involution = Tally::new("complement-involution");
    for a in alg.elements() {
        let ca = alg.complement(a);
        involution.record(alg.complement(ca) == a && alg.osum(a, ca) == Some(one), || {
            w(alg, &[a], "a'' != a or a + a' != 1")
        });
    }

    let mut orth = Tally::new("orthogonality-is-below-complement");
    let mut via = Tally::new("sum-via-complement-difference");
    let mut diff = Tally::new("difference-inverts-sum");
    for a in alg.elements() {
        for b in alg.elements() {
            orth.record(alg.is_orthogonal(a, b) == alg.leq(a, alg.complement(b)), || {
                w(alg, &[a, b], "a ⊥ b disagrees with a ≤ b'")
            });
            if let Some(s) = alg.osum(a, b) {
                let lhs = alg.ominus(alg.complement(a), b).map(|x| alg.complement(x));
                let rhs = alg.ominus(alg.complement(b), a).map(|x| alg.complement(x));
                via.record(lhs == Some(s) && rhs == Some(s), || {
                    w(alg, &[a, b], "a ⊕ b != (a' ⊖ b)'")
                });
            }
            // Here b plays the role of c in c ⊖ a.
            let ok = match alg.ominus(b, a) {
                Some(d) => alg.leq(a, b) && alg.osum(a, d) == Some(b),
                None => !alg.leq(a, b),
            };
            diff.record(ok, || w(alg, &[b, a], "c ⊖ a defined iff a ≤ c, with a ⊕ (c ⊖ a) = c"));
        }
    }

    vec![order.finish(), lattice.finish(), involution.finish(), orth.finish(), via.finish(), diff.finish()]
}

fn difference_identities(alg: &EffectAlgebra) -> Vec<crate::report::Check> {
    let cmp = |x: Option<E>, y: Option<E>| x.is_some() && x == y;
    let le = |x: Option<E>, y: Option<E>| matches!((x, y), (Some(x), Some(y)) if alg.leq(x, y));
    let minus = |c: Option<E>, a: Option<E>| match (c, a) {
        (Some(c), Some(a)) => alg.ominus(c, a),
        _ => None,
    };
    let plus = |a: Option<E>, b: Option<E>| match (a, b) {
        (Some(a), Some(b)) => alg.osum(a, b),
        _ => None,
    };
    let join = |a: Option<E>, b: Option<E>| Some(alg.join(a?, b?));
    let meet = |a: Option<E>, b: Option<E>| Some(alg.meet(a?, b?));

    let mut t1 = Tally::new("difference-involution");
    let mut t2 = Tally::new("difference-antitone");
    let mut t3 = Tally::new("difference-monotone");
    let mut t4 = Tally::new("difference-of-orthogonal-sum");
    let mut t5 = Tally::new("sum-cancellation");
    let mut t6 = Tally::new("sum-difference-exchange");
    let mut t7 = Tally::new("sum-difference-association");
    let mut t8 = Tally::new("difference-reverses-lattice-operations");
    let mut t9 = Tally::new("difference-distributes-over-lattice-operations");
    let mut t10 = Tally::new("sum-distributes-over-lattice-operations");

    for a in alg.elements() {
        let sa = Some(a);
        // a ≤ b
        for b in alg.up_set(a) {
            let sb = Some(b);
            let ba = alg.ominus(b, a);
            t1.record(le(ba, sb) && cmp(minus(sb, ba), sa), || w(alg, &[a, b], "b ⊖ (b ⊖ a) != a"));
            // a ≤ b ≤ c
            for c in alg.up_set(b) {
                let sc = Some(c);
                let (ca, cb) = (alg.ominus(c, a), alg.ominus(c, b));
                t2.record(le(cb, ca) && cmp(minus(ca, cb), ba), || {
                    w(alg, &[a, b, c], "(c ⊖ a) ⊖ (c ⊖ b) != b ⊖ a")
                });
                t3.record(le(ba, ca) && cmp(minus(ca, ba), cb), || {
                    w(alg, &[a, b, c], "(c ⊖ a) ⊖ (b ⊖ a) != c ⊖ b")
                });
                t6.record(cmp(plus(sa, cb), minus(sc, ba)), || {
                    w(alg, &[a, b, c], "a ⊕ (c ⊖ b) != c ⊖ (b ⊖ a)")
                });
            }
            // a ≤ b ≤ c'
            for c in alg.down_set(alg.complement(b)) {
                let (ac, bc) = (alg.osum(a, c), alg.osum(b, c));
                t5.record(le(ac, bc) && cmp(minus(bc, ac), ba), || {
                    w(alg, &[a, b, c], "(b ⊕ c) ⊖ (a ⊕ c) != b ⊖ a")
                });
            }
        }
        // a ≤ b'
        for b in alg.down_set(alg.complement(a)) {
            let sb = Some(b);
            let ab = alg.osum(a, b);
            if let Some(s) = ab {
                for c in alg.up_set(s) {
                    let lhs = alg.ominus(c, s);
                    t4.record(cmp(lhs, minus(alg.ominus(c, a), sb)) && cmp(lhs, minus(alg.ominus(c, b), sa)), || {
                        w(alg, &[a, b, c], "c ⊖ (a ⊕ b), (c ⊖ a) ⊖ b, (c ⊖ b) ⊖ a differ")
                    });
                }
            }
            // a ≤ b' ≤ c'  ⟺  a ≤ b' and c ≤ b
            for c in alg.down_set(b) {
                let sc = Some(c);
                t7.record(cmp(plus(sa, alg.ominus(b, c)), minus(ab, sc)), || {
                    w(alg, &[a, b, c], "a ⊕ (b ⊖ c) != (a ⊕ b) ⊖ c")
                });
            }
        }
        for b in alg.elements() {
            let (j, m) = (Some(alg.join(a, b)), Some(alg.meet(a, b)));
            // a ≤ c and b ≤ c
            for c in alg.up_set(a) & alg.up_set(b) {
                let sc = Some(c);
                let (ca, cb) = (alg.ominus(c, a), alg.ominus(c, b));
                let ok = cmp(minus(sc, j), meet(ca, cb)) && cmp(minus(sc, m), join(ca, cb));
                t8.record(ok, || w(alg, &[a, b, c], "c ⊖ (a ∨ b) != (c ⊖ a) ∧ (c ⊖ b) or dual"));
            }
            // c ≤ a and c ≤ b
            for c in alg.down_set(a) & alg.down_set(b) {
                let sc = Some(c);
                let (ac, bc) = (alg.ominus(a, c), alg.ominus(b, c));
                let ok = cmp(minus(m, sc), meet(ac, bc)) && cmp(minus(j, sc), join(ac, bc));
                t9.record(ok, || w(alg, &[a, b, c], "(a ∧ b) ⊖ c != (a ⊖ c) ∧ (b ⊖ c) or dual"));
            }
            // a ≤ c' and b ≤ c'  ⟺  c ≤ a' and c ≤ b'
            for c in alg.down_set(alg.complement(a)) & alg.down_set(alg.complement(b)) {
                let sc = Some(c);
                let (ac, bc) = (alg.osum(a, c), alg.osum(b, c));
                let ok = cmp(plus(j, sc), join(ac, bc)) && cmp(plus(m, sc), meet(ac, bc));
                t10.record(ok, || w(alg, &[a, b, c], "(a ∨ b) ⊕ c != (a ⊕ c) ∨ (b ⊕ c) or dual"));
            }
        }
    }
    vec![
        t1.finish(),
        t2.finish(),
        t3.finish(),
        t4.finish(),
        t5.finish(),
        t6.finish(),
        t7.finish(),
        t8.finish(),
        t9.finish(),
        t10.finish(),
    ]
}

/// The symmetric difference is invariant under subtracting a common lower
/// bound and under subtracting from a common upper bound.
fn delta_invariance(alg: &EffectAlgebra) -> Vec<crate::report::Check> {
    let mut lower = Tally::new("delta-invariant-under-common-lower-bound");
    let mut upper = Tally::new("delta-invariant-under-common-upper-bound");
    for a in alg.elements() {
        for b in alg.elements() {
            let d = alg.symm_diff(a, b);
            for c in alg.down_set(a) & alg.down_set(b) {
                let ok = match (alg.ominus(a, c), alg.ominus(b, c)) {
                    (Some(x), Some(y)) => alg.symm_diff(x, y) == d,
                    _ => false,
                };
                lower.record(ok, || w(alg, &[a, b, c], "(a ⊖ c) Δ (b ⊖ c) != a Δ b"));
            }
            for c in alg.up_set(a) & alg.up_set(b) {
                let ok = match (alg.ominus(c, a), alg.ominus(c, b)) {
                    (Some(x), Some(y)) => alg.symm_diff(x, y) == d,
                    _ => false,
                };
                upper.record(ok, || w(alg, &[a, b, c], "(d ⊖ a) Δ (d ⊖ b) != a Δ b"));
            }
        }
    }
    vec![lower.finish(), upper.finish()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn boolean_and_chain_pass() {
        for alg in [catalog::boolean_algebra(3).unwrap(), catalog::mv_chain(4).unwrap()] {
            let r = verify_basic_identities(&alg);
            assert!(r.passed(), "{}", r.to_text());
            assert_eq!(r.checks.len(), 18);
            assert!(r.checks.iter().all(|c| c.instances > 0));
        }
    }

    #[test]
    fn involution_instance_in_three_chain() {
        let alg = catalog::mv_chain(2).unwrap();
        let (h, one) = (ElementId::new(1), alg.one());
        let inner = alg.ominus(one, h).unwrap();
        assert_eq!(alg.ominus(one, inner), Some(h));
    }
}
