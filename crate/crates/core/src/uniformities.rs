//! D-uniformities on a finite D-lattice, stored by their minimal entourage.
//!
//! On a finite carrier a uniformity is a filter of relations, hence
//! principal with a least entourage `E`. Every entourage contains the
//! diagonal, the inverse of an entourage is an entourage, and for every
//! entourage `U` some `V` has `V ∘ V ⊆ U`. Applied to `E` itself these give
//! `E ⊇ Δ`, `E⁻¹ ⊇ E` and `E ∘ E ⊆ E`: the minimal entourage is an
//! equivalence relation. The D-uniformity criteria `V ∨ Δ ⊆ U`,
//! `V ∧ Δ ⊆ U`, `V ⊖ Δ ⊆ U`, `Δ ⊖ V ⊆ U` likewise collapse to the same
//! inclusions with `U = V = E`. Such an `E` is called a D-congruence here.
//!
//! A finer uniformity has a smaller minimal entourage, matching the
//! generator convention in [`crate::dfilters`].

use std::fmt;

use serde::Serialize;

use crate::algebra::{same_algebra, EffectAlgebra};
use crate::dfilters::{self, DFilterGenerator};
use crate::elements::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::partitions::{canonical_rgs, for_each_rgs};
use crate::relation::{relation_combine, Relation, RelationOp};
use crate::report::{Check, Report, Tally, Witness};

/// Default carrier-size cap for brute-force partition scans.
pub const DEFAULT_CONGRUENCE_CAP: usize = 10;

/// An equivalence relation on the carrier, as a canonical class assignment.
#[derive(Clone)]
pub struct Congruence<'a> {
    algebra: &'a EffectAlgebra,
    rgs: Vec<u8>,
    classes: Vec<ElementSet>,
}

impl<'a> Congruence<'a> {
    /// Builds from any class labelling of the elements.
    pub fn from_labels(algebra: &'a EffectAlgebra, labels: &[usize]) -> Result<Self> {
        if labels.len() != algebra.size() {
            return Err(Error::InvalidArgument(format!(
                "expected {} class labels, got {}",
                algebra.size(),
                labels.len()
            )));
        }
        Ok(Self::from_rgs(algebra, canonical_rgs(labels)))
    }

    fn from_rgs(algebra: &'a EffectAlgebra, rgs: Vec<u8>) -> Self {
        let blocks = rgs.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        let mut classes = vec![ElementSet::EMPTY; blocks];
        for (i, &c) in rgs.iter().enumerate() {
            classes[c as usize].insert(ElementId::new(i));
        }
        Congruence { algebra, rgs, classes }
    }

    /// Checks reflexivity, symmetry and transitivity.
    pub fn from_relation(rel: &Relation<'a>) -> Result<Self> {
        let alg = rel.algebra();
        for a in alg.elements() {
            if !rel.contains(a, a) {
                return Err(Error::NotEquivalence { detail: "not reflexive", a: a.index(), b: a.index() });
            }
        }
        for (a, b) in rel.pairs() {
            if !rel.contains(b, a) {
                return Err(Error::NotEquivalence { detail: "not symmetric", a: a.index(), b: b.index() });
            }
        }
        for (a, b) in rel.pairs() {
            // (a, b) and (b, c) in R force row(b) ⊆ row(a).
            if let Some(c) = (rel.row(b) & !rel.row(a)).first() {
                return Err(Error::NotEquivalence { detail: "not transitive", a: a.index(), b: c.index() });
            }
        }
        let labels: Vec<usize> = alg.elements().map(|a| rel.row(a).bits() as usize).collect();
        Ok(Self::from_rgs(alg, canonical_rgs(&labels)))
    }

    pub fn discrete(algebra: &'a EffectAlgebra) -> Self {
        Self::from_rgs(algebra, (0..algebra.size() as u8).collect())
    }

    pub fn trivial(algebra: &'a EffectAlgebra) -> Self {
        Self::from_rgs(algebra, vec![0; algebra.size()])
    }

    pub fn algebra(&self) -> &'a EffectAlgebra {
        self.algebra
    }

    /// Restricted growth string; the canonical sort key.
    pub fn rgs(&self) -> &[u8] {
        &self.rgs
    }

    pub fn classes(&self) -> &[ElementSet] {
        &self.classes
    }

    pub fn class_of(&self, a: ElementId) -> ElementSet {
        self.classes[self.rgs[a.index()] as usize]
    }

    #[inline]
    pub fn related(&self, a: ElementId, b: ElementId) -> bool {
        self.rgs[a.index()] == self.rgs[b.index()]
    }

    pub fn relation(&self) -> Relation<'a> {
        Relation::from_predicate(self.algebra, |a, b| self.related(a, b))
    }

    /// `self ⊆ other` as relations: `self` is the finer uniformity.
    pub fn is_finer_or_equal(&self, other: &Congruence<'_>) -> bool {
        self.classes.iter().all(|c| c.first().is_none_or(|a| c.is_subset(other.class_of(a))))
    }

    /// `{{0,a},{b,1}}` using element labels.
    pub fn display(&self) -> String {
        let blocks: Vec<String> = self
            .classes
            .iter()
            .map(|c| {
                let names: Vec<&str> = c.iter().map(|e| self.algebra.label(e)).collect();
                format!("{{{}}}", names.join(","))
            })
            .collect();
        format!("{{{}}}", blocks.join(","))
    }

    pub fn labelled_classes(&self) -> Vec<Vec<String>> {
        self.classes
            .iter()
            .map(|c| c.iter().map(|e| self.algebra.label(e).to_string()).collect())
            .collect()
    }
}

impl PartialEq for Congruence<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.rgs == other.rgs && same_algebra(self.algebra, other.algebra)
    }
}

impl Eq for Congruence<'_> {}

impl fmt::Debug for Congruence<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CongruenceCriterion {
    /// `E ∨ Δ ⊆ E`.
    JoinDiagonal,
    /// `E ∧ Δ ⊆ E`.
    MeetDiagonal,
    /// `E ⊖ Δ ⊆ E`.
    MinusDiagonal,
    /// `Δ ⊖ E ⊆ E`.
    DiagonalMinus,
}

/// A pair `(a, b) ∈ E` and diagonal element `c` whose combination
/// `(x, y)` leaves `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceViolation {
    pub criterion: CongruenceCriterion,
    pub pair: (ElementId, ElementId),
    pub diagonal: ElementId,
    pub image: (ElementId, ElementId),
}

impl fmt::Display for CongruenceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?}: pair ({}, {}) with {} gives ({}, {})",
            self.criterion,
            self.pair.0.index(),
            self.pair.1.index(),
            self.diagonal.index(),
            self.image.0.index(),
            self.image.1.index()
        )
    }
}

impl CongruenceViolation {
    pub fn witness(&self, alg: &EffectAlgebra) -> Witness {
        let (a, b) = self.pair;
        let (x, y) = self.image;
        Witness::elements(alg, &[a, b, self.diagonal, x, y], format!("{:?} fails", self.criterion))
    }
}

/// First violated criterion, scanning criteria in declaration order and
/// `(a, b, c)` lexicographically within each.
pub fn check_d_congruence(e: &Congruence<'_>) -> Result<(), CongruenceViolation> {
    let alg = e.algebra;
    let criteria = [
        CongruenceCriterion::JoinDiagonal,
        CongruenceCriterion::MeetDiagonal,
        CongruenceCriterion::MinusDiagonal,
        CongruenceCriterion::DiagonalMinus,
    ];
    for criterion in criteria {
        for a in alg.elements() {
            for b in e.class_of(a) {
                for c in alg.elements() {
                    let image = match criterion {
                        CongruenceCriterion::JoinDiagonal => Some((alg.join(a, c), alg.join(b, c))),
                        CongruenceCriterion::MeetDiagonal => Some((alg.meet(a, c), alg.meet(b, c))),
                        CongruenceCriterion::MinusDiagonal => alg.ominus(a, c).zip(alg.ominus(b, c)),
                        CongruenceCriterion::DiagonalMinus => alg.ominus(c, a).zip(alg.ominus(c, b)),
                    };
                    if let Some((x, y)) = image {
                        if !e.related(x, y) {
                            return Err(CongruenceViolation { criterion, pair: (a, b), diagonal: c, image: (x, y) });
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Whether a relation is a D-congruence. Errors if it is not an
/// equivalence.
pub fn is_d_congruence(rel: &Relation<'_>) -> Result<bool> {
    let e = Congruence::from_relation(rel)?;
    Ok(check_d_congruence(&e).is_ok())
}

/// Four-criteria check through [`relation_combine`]; slower, used to
/// cross-check [`check_d_congruence`].
pub fn is_d_congruence_by_combination(e: &Congruence<'_>) -> bool {
    let rel = e.relation();
    let diag = Relation::diagonal(e.algebra);
    let ok = |u: &Relation, v: &Relation, op| relation_combine(u, v, op).unwrap().is_subset(&rel);
    ok(&rel, &diag, RelationOp::Join)
        && ok(&rel, &diag, RelationOp::Meet)
        && ok(&rel, &diag, RelationOp::Minus)
        && ok(&diag, &rel, RelationOp::Minus)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CongruenceMode {
    /// Scan every set partition.
    Brute,
    /// Image of the D-filter enumeration under [`phi`].
    ViaFilters,
}

/// All D-congruences, sorted by restricted growth string.
pub fn enumerate_d_congruences(alg: &EffectAlgebra, mode: CongruenceMode, cap: usize) -> Result<Vec<Congruence<'_>>> {
    let mut out = match mode {
        CongruenceMode::Brute => {
            if alg.size() > cap {
                return Err(Error::SizeCap { what: "partition scan", n: alg.size(), cap });
            }
            let mut out = Vec::new();
            for_each_rgs(alg.size(), |s| {
                let e = Congruence::from_rgs(alg, s.to_vec());
                if check_d_congruence(&e).is_ok() {
                    out.push(e);
                }
            });
            out
        }
        CongruenceMode::ViaFilters => dfilters::enumerate_dfilters(alg, cap.max(dfilters::DEFAULT_ENUMERATION_CAP))?
            .iter()
            .map(phi)
            .collect(),
    };
    out.sort_by(|a, b| a.rgs.cmp(&b.rgs));
    Ok(out)
}

/// `{(a, b) : a Δ b ∈ F}`.
pub fn phi<'a>(f: &DFilterGenerator<'a>) -> Congruence<'a> {
    let alg = f.algebra();
    let rel = Relation::from_predicate(alg, |a, b| f.contains(alg.symm_diff(a, b)));
    Congruence::from_relation(&rel).expect("the Δ-relation of a D-filter generator is an equivalence")
}

/// The class of `0`.
pub fn psi<'a>(e: &Congruence<'a>) -> Result<DFilterGenerator<'a>> {
    check_d_congruence(e).map_err(Error::NotACongruence)?;
    DFilterGenerator::new(e.algebra, e.class_of(e.algebra.zero()))
}

/// The two alternative entourages built from a generator.
#[derive(Clone, Debug)]
pub struct AltEntourages<'a> {
    /// `{(a, b) : ∃ h, k ∈ F, h ⊥ a, k ⊥ b, a ⊕ h = b ⊕ k}`.
    pub e_plus: Relation<'a>,
    /// `{(a, b) : ∃ i, j ∈ F, i ≤ a, j ≤ b, a ⊖ i = b ⊖ j}`.
    pub e_minus: Relation<'a>,
    /// The variant reading `a ⊕ h = b ⊖ k` (with `k ≤ b`) of the first set.
    pub e_plus_literal: Relation<'a>,
    /// `e_plus = e_minus = phi(F)`.
    pub all_equal: bool,
    pub literal_reading_differs: bool,
}

pub fn alt_entourages<'a>(f: &DFilterGenerator<'a>) -> AltEntourages<'a> {
    let alg = f.algebra();
    let members = f.members();
    let sums: Vec<ElementSet> = alg
        .elements()
        .map(|a| members.iter().filter_map(|h| alg.osum(a, h)).collect())
        .collect();
    let diffs: Vec<ElementSet> = alg
        .elements()
        .map(|a| members.iter().filter_map(|i| alg.ominus(a, i)).collect())
        .collect();
    let meets = |x: &[ElementSet], y: &[ElementSet]| {
        Relation::from_predicate(alg, |a, b| !(x[a.index()] & y[b.index()]).is_empty())
    };
    let e_plus = meets(&sums, &sums);
    let e_minus = meets(&diffs, &diffs);
    let e_plus_literal = meets(&sums, &diffs);
    let target = phi(f).relation();
    let all_equal = e_plus == target && e_minus == target;
    let literal_reading_differs = e_plus_literal != e_plus;
    AltEntourages { e_plus, e_minus, e_plus_literal, all_equal, literal_reading_differs }
}

fn gen_label(f: &DFilterGenerator<'_>) -> String {
    f.display()
}

/// The correspondence between D-filters and D-congruences: `phi` maps the
/// filter enumeration onto the brute-force congruence scan, `psi` inverts
/// it, both preserve order, and lattice operations are carried across.
pub fn verify_isomorphism(alg: &EffectAlgebra, congruence_cap: usize) -> Result<Report> {
    let filters = dfilters::enumerate_dfilters(alg, dfilters::DEFAULT_ENUMERATION_CAP.max(alg.size()))?;
    let brute = enumerate_d_congruences(alg, CongruenceMode::Brute, congruence_cap)?;
    let via = enumerate_d_congruences(alg, CongruenceMode::ViaFilters, congruence_cap)?;
    let mut report = Report::for_algebra("isomorphism", alg);

    let mut t = Tally::new("filters-and-partition-scan-agree");
    t.record(via == brute, || {
        let odd = via.iter().chain(&brute).find(|c| via.contains(c) != brute.contains(c)).unwrap();
        Witness::new(vec![odd.display()], "found by only one route")
    });
    report.push(t.finish());

    let images: Vec<Congruence> = filters.iter().map(phi).collect();
    let mut t = Tally::new("phi-injective");
    for (i, a) in images.iter().enumerate() {
        for (j, b) in images.iter().enumerate().skip(i + 1) {
            t.record(a != b, || {
                Witness::new(vec![gen_label(&filters[i]), gen_label(&filters[j])], "same image")
            });
        }
    }
    report.push(t.finish());

    let mut t = Tally::new("phi-lands-in-congruences");
    for (f, e) in filters.iter().zip(&images) {
        let res = check_d_congruence(e);
        t.record(res.is_ok(), || {
            let mut w = res.unwrap_err().witness(alg);
            w.tuple.insert(0, gen_label(f));
            w
        });
    }
    report.push(t.finish());

    let mut t = Tally::new("psi-after-phi-is-identity");
    for (f, e) in filters.iter().zip(&images) {
        let back = psi(e);
        t.record(back.as_ref().ok() == Some(f), || {
            Witness::new(vec![gen_label(f)], format!("psi(phi(F)) = {:?}", back.map(|g| g.display()).ok()))
        });
    }
    report.push(t.finish());

    let mut t = Tally::new("phi-after-psi-is-identity");
    for e in &brute {
        let back = psi(e).map(|f| phi(&f));
        t.record(back.as_ref().ok() == Some(e), || {
            Witness::new(vec![e.display()], format!("phi(psi(E)) = {:?}", back.map(|g| g.display()).ok()))
        });
    }
    report.push(t.finish());

    let mut t = Tally::new("order-preserved-both-ways");
    for (f, ef) in filters.iter().zip(&images) {
        for (g, eg) in filters.iter().zip(&images) {
            t.record(f.is_finer_or_equal(g) == ef.is_finer_or_equal(eg), || {
                Witness::new(vec![gen_label(f), gen_label(g)], "generator order and entourage order disagree")
            });
        }
    }
    report.push(t.finish());

    // Lattice operations among the congruences, by scanning.
    let coarsest_lower = |a: &Congruence, b: &Congruence| -> Option<usize> {
        let below: Vec<usize> =
            (0..brute.len()).filter(|&k| brute[k].is_finer_or_equal(a) && brute[k].is_finer_or_equal(b)).collect();
        below.iter().copied().find(|&k| below.iter().all(|&m| brute[m].is_finer_or_equal(&brute[k])))
    };
    let finest_upper = |a: &Congruence, b: &Congruence| -> Option<usize> {
        let above: Vec<usize> =
            (0..brute.len()).filter(|&k| a.is_finer_or_equal(&brute[k]) && b.is_finer_or_equal(&brute[k])).collect();
        above.iter().copied().find(|&k| above.iter().all(|&m| brute[k].is_finer_or_equal(&brute[m])))
    };
    let mut meets = Tally::new("filter-meet-carried-to-coarser-uniformity");
    let mut joins = Tally::new("filter-join-carried-to-finer-uniformity");
    for (f, ef) in filters.iter().zip(&images) {
        for (g, eg) in filters.iter().zip(&images) {
            let m = phi(&dfilters::dfilter_meet(f, g)?);
            let expect = finest_upper(ef, eg).map(|k| &brute[k]);
            meets.record(expect == Some(&m), || {
                Witness::new(vec![gen_label(f), gen_label(g)], format!("phi(F ∧ G) = {}", m.display()))
            });
            let j = phi(&dfilters::dfilter_join(f, g)?);
            let expect = coarsest_lower(ef, eg).map(|k| &brute[k]);
            joins.record(expect == Some(&j) && j.relation() == ef.relation().intersection(&eg.relation()), || {
                Witness::new(vec![gen_label(f), gen_label(g)], format!("phi(F ∨ G) = {}", j.display()))
            });
        }
    }
    report.push(meets.finish());
    report.push(joins.finish());

    let diag = Relation::diagonal(alg);
    let mut t = Tally::new("delta-relation-stable-under-diagonal-difference");
    for (f, e) in filters.iter().zip(&images) {
        let rel = e.relation();
        let left = relation_combine(&rel, &diag, RelationOp::Minus)?;
        let right = relation_combine(&diag, &rel, RelationOp::Minus)?;
        t.record(left == rel && right == rel, || {
            Witness::new(vec![gen_label(f)], "E ⊖ Δ or Δ ⊖ E differs from E")
        });
    }
    report.push(t.finish());

    let mut t = Tally::new("criteria-agree-with-relation-combination");
    for e in &brute {
        t.record(is_d_congruence_by_combination(e), || Witness::new(vec![e.display()], "combination check fails"));
    }
    report.push(t.finish());

    report.count("dfilters", filters.len() as u64);
    report.count("d_congruences", brute.len() as u64);
    Ok(report)
}

/// Both alternative entourages coincide with `phi(F)` for every D-filter.
pub fn verify_alt_bases(alg: &EffectAlgebra) -> Result<Report> {
    let filters = dfilters::enumerate_dfilters(alg, dfilters::DEFAULT_ENUMERATION_CAP.max(alg.size()))?;
    let mut report = Report::for_algebra("alternative-bases", alg);
    let mut plus = Tally::new("sum-entourage-equals-delta-entourage");
    let mut minus = Tally::new("difference-entourage-equals-delta-entourage");
    let mut differs = 0u64;
    let mut first_difference = None;
    for f in &filters {
        let alt = alt_entourages(f);
        let target = phi(f).relation();
        plus.record(alt.e_plus == target, || {
            let p = alt.e_plus.first_outside(&target).or_else(|| target.first_outside(&alt.e_plus)).unwrap();
            Witness::new(vec![gen_label(f), alg.label(p.0).into(), alg.label(p.1).into()], "pair in only one")
        });
        minus.record(alt.e_minus == target, || {
            let p = alt.e_minus.first_outside(&target).or_else(|| target.first_outside(&alt.e_minus)).unwrap();
            Witness::new(vec![gen_label(f), alg.label(p.0).into(), alg.label(p.1).into()], "pair in only one")
        });
        if alt.literal_reading_differs {
            differs += 1;
            first_difference.get_or_insert_with(|| gen_label(f));
        }
    }
    report.push(plus.finish());
    report.push(minus.finish());
    let mut c = Check::pass("sum-entourage-variant-reading", filters.len() as u64);
    if let Some(f) = first_difference {
        c = c.with_note(format!(
            "reading a ⊕ h = b ⊖ k gives a different relation on {differs} generator(s), first {f}"
        ));
    }
    report.push(c);
    report.count("dfilters", filters.len() as u64);
    report.count("variant_reading_differs", differs);
    Ok(report)
}
