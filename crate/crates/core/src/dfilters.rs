//! D-filters on a finite D-lattice, stored by their generators.
//!
//! On a finite carrier every filter of subsets is principal: it is the set
//! of all supersets of its smallest member `S`. The two closure conditions
//! on a D-filter then reduce to conditions on `S` alone:
//!
//! * orthogonal sums: for every `F ⊇ S` some `F' ⊇ S` has `F' ⊕ F' ⊆ F`.
//!   Taking `F = S` gives `S ⊕ S ⊆ S`; conversely `F' = S` always works.
//! * join absorption: for every `F ⊇ S` some `G ⊇ S` maps into `F` under
//!   `a ↦ (a ∨ c) ⊖ c`. Taking `F = S` forces `(a ∨ c) ⊖ c ∈ S` for
//!   `a ∈ S`; conversely `G = S` always works.
//!
//! So a D-filter is the same thing as a nonempty set closed under `⊕` and
//! under `a ↦ (a ∨ c) ⊖ c`. Such a set contains `0` (take `c = a`) and is
//! downward closed (take `c = a ⊖ b`).
//!
//! Ordering convention: a larger (finer) filter has a smaller generator.
//! Every lattice operation here uses reverse generator inclusion.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::algebra::{same_algebra, EffectAlgebra};
use crate::dot;
use crate::elements::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::report::{Check, Report, Tally, Witness};

/// Default cap on the carrier size for enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 64;

/// Carriers up to this size are enumerated by scanning down-sets; larger
/// ones by closure search.
pub const SUBSET_SCAN_LIMIT: usize = 20;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FilterCondition {
    ContainsZero,
    /// `a, b ∈ S, a ⊥ b ⇒ a ⊕ b ∈ S`.
    OrthogonalSums,
    /// `a ∈ S ⇒ (a ∨ c) ⊖ c ∈ S` for every `c`.
    JoinAbsorption,
    DownwardClosed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterViolation {
    pub condition: FilterCondition,
    pub witness: Vec<ElementId>,
}

impl fmt::Display for FilterViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<usize> = self.witness.iter().map(|e| e.index()).collect();
        write!(f, "{:?} fails at {:?}", self.condition, ids)
    }
}

/// First violated closure condition of `set`, scanning tuples in
/// lexicographic order.
pub fn check_dfilter_generator(alg: &EffectAlgebra, set: ElementSet) -> Result<(), FilterViolation> {
    let fail = |condition, witness| Err(FilterViolation { condition, witness });
    if !set.contains(alg.zero()) {
        return fail(FilterCondition::ContainsZero, vec![alg.zero()]);
    }
    for a in set {
        for b in set {
            if let Some(s) = alg.osum(a, b) {
                if !set.contains(s) {
                    return fail(FilterCondition::OrthogonalSums, vec![a, b, s]);
                }
            }
        }
    }
    for a in set {
        for c in alg.elements() {
            let r = alg.residual(a, c);
            if !set.contains(r) {
                return fail(FilterCondition::JoinAbsorption, vec![a, c, r]);
            }
        }
    }
    for a in set {
        if let Some(b) = (alg.down_set(a) & !set).first() {
            return fail(FilterCondition::DownwardClosed, vec![a, b]);
        }
    }
    Ok(())
}

pub fn is_dfilter_generator(alg: &EffectAlgebra, set: ElementSet) -> bool {
    check_dfilter_generator(alg, set).is_ok()
}

/// The generator (smallest member) of a D-filter.
#[derive(Copy, Clone, Debug)]
pub struct DFilterGenerator<'a> {
    algebra: &'a EffectAlgebra,
    members: ElementSet,
}

impl<'a> DFilterGenerator<'a> {
    pub fn new(algebra: &'a EffectAlgebra, members: ElementSet) -> Result<Self> {
        if !members.is_subset(algebra.carrier()) {
            return Err(Error::InvalidArgument("set is not contained in the carrier".into()));
        }
        check_dfilter_generator(algebra, members).map_err(Error::NotAGenerator)?;
        Ok(DFilterGenerator { algebra, members })
    }

    /// Skips validation; callers guarantee the closure conditions.
    pub(crate) fn new_unchecked(algebra: &'a EffectAlgebra, members: ElementSet) -> Self {
        debug_assert!(is_dfilter_generator(algebra, members));
        DFilterGenerator { algebra, members }
    }

    /// `{0}`: the discrete uniformity.
    pub fn discrete(algebra: &'a EffectAlgebra) -> Self {
        DFilterGenerator { algebra, members: ElementSet::singleton(algebra.zero()) }
    }

    /// The whole carrier: the trivial uniformity.
    pub fn trivial(algebra: &'a EffectAlgebra) -> Self {
        DFilterGenerator { algebra, members: algebra.carrier() }
    }

    pub fn algebra(&self) -> &'a EffectAlgebra {
        self.algebra
    }

    pub fn members(&self) -> ElementSet {
        self.members
    }

    pub fn contains(&self, a: ElementId) -> bool {
        self.members.contains(a)
    }

    /// Filter inclusion `other ⊆ self`, i.e. `self` is finer.
    pub fn is_finer_or_equal(&self, other: &DFilterGenerator<'_>) -> bool {
        self.members.is_subset(other.members)
    }

    /// `{0, a, ..}` using element labels.
    pub fn display(&self) -> String {
        let names: Vec<&str> = self.members.iter().map(|e| self.algebra.label(e)).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn labels(&self) -> Vec<String> {
        self.members.iter().map(|e| self.algebra.label(e).to_string()).collect()
    }
}

impl PartialEq for DFilterGenerator<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && same_algebra(self.algebra, other.algebra)
    }
}

impl Eq for DFilterGenerator<'_> {}

/// Smallest generator containing `seed ∪ {0}`.
pub fn dfilter_closure(alg: &EffectAlgebra, seed: ElementSet) -> DFilterGenerator<'_> {
    let mut set = (seed & alg.carrier()).with(alg.zero());
    loop {
        let mut next = set;
        for a in set {
            for b in set {
                if let Some(s) = alg.osum(a, b) {
                    next.insert(s);
                }
            }
            for c in alg.elements() {
                next.insert(alg.residual(a, c));
            }
        }
        if next == set {
            return DFilterGenerator::new_unchecked(alg, set);
        }
        set = next;
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum EnumerationMethod {
    /// Scan every down-set containing `0` and test the closure conditions.
    SubsetScan,
    /// Grow generators from `{0}` by closing under one extra element.
    ClosureSearch,
}

/// All D-filters, ordered by generator bitmask. Picks the subset scan for
/// carriers up to [`SUBSET_SCAN_LIMIT`] elements and closure search above.
pub fn enumerate_dfilters(alg: &EffectAlgebra, cap: usize) -> Result<Vec<DFilterGenerator<'_>>> {
    let method = if alg.size() <= SUBSET_SCAN_LIMIT {
        EnumerationMethod::SubsetScan
    } else {
        EnumerationMethod::ClosureSearch
    };
    enumerate_dfilters_with(alg, method, cap)
}

pub fn enumerate_dfilters_with(
    alg: &EffectAlgebra,
    method: EnumerationMethod,
    cap: usize,
) -> Result<Vec<DFilterGenerator<'_>>> {
    if alg.size() > cap {
        return Err(Error::SizeCap { what: "D-filter enumeration", n: alg.size(), cap });
    }
    let mut sets = match method {
        EnumerationMethod::SubsetScan => scan_down_sets(alg),
        EnumerationMethod::ClosureSearch => closure_search(alg),
    };
    sets.sort_unstable();
    sets.dedup();
    Ok(sets.into_iter().map(|s| DFilterGenerator::new_unchecked(alg, s)).collect())
}

fn scan_down_sets(alg: &EffectAlgebra) -> Vec<ElementSet> {
    // A linear extension: strictly smaller elements have strictly smaller down-sets.
    let mut order: Vec<ElementId> = alg.elements().filter(|&e| e != alg.zero()).collect();
    order.sort_by_key(|&e| (alg.down_set(e).len(), e));

    fn walk(alg: &EffectAlgebra, order: &[ElementId], current: ElementSet, out: &mut Vec<ElementSet>) {
        let Some((&x, rest)) = order.split_first() else {
            if is_dfilter_generator(alg, current) {
                out.push(current);
            }
            return;
        };
        walk(alg, rest, current, out);
        let mut below = alg.down_set(x);
        below.remove(x);
        if below.is_subset(current) {
            walk(alg, rest, current.with(x), out);
        }
    }

    let mut out = Vec::new();
    walk(alg, &order, ElementSet::singleton(alg.zero()), &mut out);
    out
}

fn closure_search(alg: &EffectAlgebra) -> Vec<ElementSet> {
    let start = dfilter_closure(alg, ElementSet::EMPTY).members();
    let mut seen = BTreeSet::from([start]);
    let mut frontier = vec![start];
    while let Some(set) = frontier.pop() {
        for x in alg.carrier() & !set {
            let next = dfilter_closure(alg, set.with(x)).members();
            if seen.insert(next) {
                frontier.push(next);
            }
        }
    }
    seen.into_iter().collect()
}

/// `F ⊕ G = {f ⊕ g : f ⊥ g, f ∈ F, g ∈ G}`.
pub fn orthogonal_sums(alg: &EffectAlgebra, f: ElementSet, g: ElementSet) -> ElementSet {
    let mut out = ElementSet::EMPTY;
    for a in f {
        for b in g {
            if let Some(s) = alg.osum(a, b) {
                out.insert(s);
            }
        }
    }
    out
}

/// `F ∧ G = {f ∧ g : f ∈ F, g ∈ G}`.
pub fn pairwise_meets(alg: &EffectAlgebra, f: ElementSet, g: ElementSet) -> ElementSet {
    let mut out = ElementSet::EMPTY;
    for a in f {
        for b in g {
            out.insert(alg.meet(a, b));
        }
    }
    out
}

fn same_parent<'a>(f: &DFilterGenerator<'a>, g: &DFilterGenerator<'_>) -> Result<&'a EffectAlgebra> {
    if same_algebra(f.algebra, g.algebra) {
        Ok(f.algebra)
    } else {
        Err(Error::MixedAlgebras)
    }
}

/// Meet of two D-filters (the coarser filter); its generator is `F ⊕ G`.
pub fn dfilter_meet<'a>(f: &DFilterGenerator<'a>, g: &DFilterGenerator<'_>) -> Result<DFilterGenerator<'a>> {
    let alg = same_parent(f, g)?;
    Ok(DFilterGenerator::new_unchecked(alg, orthogonal_sums(alg, f.members, g.members)))
}

/// Join of two D-filters (the finer filter); its generator is `F ∩ G`.
pub fn dfilter_join<'a>(f: &DFilterGenerator<'a>, g: &DFilterGenerator<'_>) -> Result<DFilterGenerator<'a>> {
    let alg = same_parent(f, g)?;
    Ok(DFilterGenerator::new_unchecked(alg, f.members & g.members))
}

/// Greatest lower bound in filter order among `all`, found by scanning.
fn poset_meet(all: &[ElementSet], f: ElementSet, g: ElementSet) -> Option<ElementSet> {
    let lower: Vec<ElementSet> = all.iter().copied().filter(|h| (f | g).is_subset(*h)).collect();
    lower.iter().copied().find(|h| lower.iter().all(|k| h.is_subset(*k)))
}

/// Least upper bound in filter order among `all`, found by scanning.
fn poset_join(all: &[ElementSet], f: ElementSet, g: ElementSet) -> Option<ElementSet> {
    let upper: Vec<ElementSet> = all.iter().copied().filter(|h| h.is_subset(f & g)).collect();
    upper.iter().copied().find(|h| upper.iter().all(|k| k.is_subset(*h)))
}

fn set_label(alg: &EffectAlgebra, s: ElementSet) -> String {
    let names: Vec<&str> = s.iter().map(|e| alg.label(e)).collect();
    format!("{{{}}}", names.join(","))
}

/// Lattice-of-D-filters verification: both enumeration routes agree, meet
/// and join agree with the brute-force poset operations, the lattice is
/// distributive, and each generator has the derived closure properties.
pub fn verify_filter_lattice(alg: &EffectAlgebra, cap: usize) -> Result<Report> {
    let scanned = if alg.size() <= SUBSET_SCAN_LIMIT {
        Some(enumerate_dfilters_with(alg, EnumerationMethod::SubsetScan, cap)?)
    } else {
        None
    };
    let searched = enumerate_dfilters_with(alg, EnumerationMethod::ClosureSearch, cap)?;
    let mut report = Report::for_algebra("filter-lattice", alg);
    let sets: Vec<ElementSet> = searched.iter().map(|f| f.members).collect();
    let lbl = |s: ElementSet| set_label(alg, s);

    match &scanned {
        Some(scanned) => {
            let mut t = Tally::new("enumeration-methods-agree");
            let a: Vec<ElementSet> = scanned.iter().map(|f| f.members).collect();
            t.record(a == sets, || {
                let diff = a.iter().chain(&sets).find(|s| a.contains(s) != sets.contains(s)).unwrap();
                Witness::new(vec![lbl(*diff)], "found by only one enumeration route")
            });
            report.push(t.finish());
        }
        None => report.push(Check::skipped(
            "enumeration-methods-agree",
            format!("subset scan limited to {SUBSET_SCAN_LIMIT} elements"),
        )),
    }

    let mut valid = Tally::new("generators-valid");
    for &s in &sets {
        let res = check_dfilter_generator(alg, s);
        valid.record(res.is_ok(), || Witness::new(vec![lbl(s)], res.unwrap_err().to_string()));
    }
    report.push(valid.finish());

    let mut bounds = Tally::new("bounded-by-discrete-and-trivial");
    let discrete = ElementSet::singleton(alg.zero());
    bounds.record(sets.first() == Some(&discrete) && sets.contains(&alg.carrier()), || {
        Witness::new(vec![], "{0} or the carrier missing from the enumeration")
    });
    report.push(bounds.finish());

    let mut meet = Tally::new("meet-matches-poset-meet");
    let mut join = Tally::new("join-matches-poset-join");
    let mut union = Tally::new("union-within-orthogonal-sum");
    let mut join_base = Tally::new("pairwise-meets-equal-intersection");
    for &f in &sets {
        for &g in &sets {
            let m = orthogonal_sums(alg, f, g);
            let expect = poset_meet(&sets, f, g);
            meet.record(expect == Some(m) && is_dfilter_generator(alg, m), || {
                Witness::new(
                    vec![lbl(f), lbl(g)],
                    format!("F ⊕ G = {}, poset meet = {:?}", lbl(m), expect.map(lbl)),
                )
            });
            let j = f & g;
            let expect = poset_join(&sets, f, g);
            join.record(expect == Some(j) && is_dfilter_generator(alg, j), || {
                Witness::new(
                    vec![lbl(f), lbl(g)],
                    format!("F ∩ G = {}, poset join = {:?}", lbl(j), expect.map(lbl)),
                )
            });
            union.record((f | g).is_subset(m), || Witness::new(vec![lbl(f), lbl(g)], "F ∪ G ⊄ F ⊕ G"));
            let pm = pairwise_meets(alg, f, g);
            join_base.record(pm == j, || {
                Witness::new(vec![lbl(f), lbl(g)], format!("F ∧ G = {}", lbl(pm)))
            });
        }
    }
    report.push(meet.finish());
    report.push(join.finish());
    report.push(union.finish());
    report.push(join_base.finish());

    // F ∨ (G1 ∧ G2) = (F ∨ G1) ∧ (F ∨ G2), in generator terms.
    let mut distributive = Tally::new("distributive");
    for &f in &sets {
        for &g1 in &sets {
            for &g2 in &sets {
                let lhs = f & orthogonal_sums(alg, g1, g2);
                let rhs = orthogonal_sums(alg, f & g1, f & g2);
                distributive.record(lhs == rhs, || {
                    Witness::new(vec![lbl(f), lbl(g1), lbl(g2)], format!("{} != {}", lbl(lhs), lbl(rhs)))
                });
            }
        }
    }
    report.push(distributive.finish());

    for check in generator_properties(alg, &sets) {
        report.push(check);
    }
    report.count("dfilters", sets.len() as u64);
    Ok(report)
}

/// Closure properties every generator inherits: downward closure, joins,
/// stability of `Δ` under `∨ z` and `∧ z`, and the `Δ`-triangle rule.
fn generator_properties(alg: &EffectAlgebra, sets: &[ElementSet]) -> Vec<Check> {
    let mut down = Tally::new("downward-closed");
    let mut joins = Tally::new("join-closed");
    let mut dj = Tally::new("delta-stable-under-join");
    let mut dm = Tally::new("delta-stable-under-meet");
    let mut tri = Tally::new("delta-triangle");
    for &s in sets {
        let f = set_label(alg, s);
        let wit = |elems: &[ElementId], d: &str| {
            let mut t = vec![f.clone()];
            t.extend(elems.iter().map(|&e| alg.label(e).to_string()));
            Witness::new(t, d)
        };
        for a in s {
            for b in alg.down_set(a) {
                down.record(s.contains(b), || wit(&[a, b], "b ≤ a ∈ F but b ∉ F"));
            }
            for b in s {
                joins.record(s.contains(alg.join(a, b)), || wit(&[a, b], "a ∨ b ∉ F"));
            }
        }
        for x in alg.elements() {
            for y in alg.elements() {
                let xy_in = s.contains(alg.symm_diff(x, y));
                for z in alg.elements() {
                    if xy_in {
                        let ok = s.contains(alg.symm_diff(alg.join(x, z), alg.join(y, z)));
                        dj.record(ok, || wit(&[x, y, z], "(x ∨ z) Δ (y ∨ z) ∉ F"));
                        let ok = s.contains(alg.symm_diff(alg.meet(x, z), alg.meet(y, z)));
                        dm.record(ok, || wit(&[x, y, z], "(x ∧ z) Δ (y ∧ z) ∉ F"));
                        if s.contains(alg.symm_diff(y, z)) {
                            tri.record(s.contains(alg.symm_diff(x, z)), || {
                                wit(&[x, y, z], "x Δ y, y Δ z ∈ F but x Δ z ∉ F")
                            });
                        }
                    }
                }
            }
        }
    }
    vec![down.finish(), joins.finish(), dj.finish(), dm.finish(), tri.finish()]
}

/// Hasse diagram of the D-filter lattice, trivial filter at the bottom and
/// the discrete filter `{0}` at the top.
pub fn filter_lattice_dot(alg: &EffectAlgebra, filters: &[DFilterGenerator<'_>]) -> String {
    let labels: Vec<String> = filters.iter().map(|f| f.display()).collect();
    // lower = coarser = larger generator
    let covers = dot::covers(filters.len(), |i, j| filters[j].members.is_subset(filters[i].members));
    let _ = alg;
    dot::hasse_dot("dfilters", &labels, &covers)
}
