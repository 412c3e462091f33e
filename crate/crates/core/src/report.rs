//! Verification reports.
//!
//! Every exhaustive check iterates its tuples in lexicographic order and
//! keeps the first failure, so a failed check always names the smallest
//! counterexample. Reports serialize deterministically.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::EffectAlgebra;
use crate::elements::ElementId;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Element labels (or other rendered values) of the counterexample.
    pub tuple: Vec<String>,
    pub detail: String,
}

impl Witness {
    pub fn new(tuple: Vec<String>, detail: impl Into<String>) -> Self {
        Witness { tuple, detail: detail.into() }
    }

    pub fn elements(alg: &EffectAlgebra, elems: &[ElementId], detail: impl Into<String>) -> Self {
        Witness::new(elems.iter().map(|&e| alg.label(e).to_string()).collect(), detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Number of instances (tuples, pairs, objects) examined.
    pub instances: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, instances: u64) -> Self {
        Check { name: name.into(), status: Status::Pass, instances, witness: None, note: None }
    }

    pub fn fail(name: impl Into<String>, instances: u64, witness: Witness) -> Self {
        Check { name: name.into(), status: Status::Fail, instances, witness: Some(witness), note: None }
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Skipped,
            instances: 0,
            witness: None,
            note: Some(reason.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Accumulates one exhaustive check, keeping the first failure seen.
pub struct Tally {
    name: String,
    instances: u64,
    witness: Option<Witness>,
}

impl Tally {
    pub fn new(name: impl Into<String>) -> Self {
        Tally { name: name.into(), instances: 0, witness: None }
    }

    /// Records one instance; `witness` is only built for the first failure.
    #[inline]
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.instances += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub fn failed(&self) -> bool {
        self.witness.is_some()
    }

    pub fn finish(self) -> Check {
        match self.witness {
            None => Check::pass(self.name, self.instances),
            Some(w) => Check::fail(self.name, self.instances, w),
        }
    }
}

/// Merges same-named checks from many reports: instances add up, the
/// first failure wins, and names keep their first-seen order.
#[derive(Default)]
pub struct Aggregate {
    checks: Vec<Check>,
}

impl Aggregate {
    pub fn new() -> Self {
        Aggregate::default()
    }

    pub fn add(&mut self, check: Check) {
        match self.checks.iter_mut().find(|c| c.name == check.name) {
            None => self.checks.push(check),
            Some(acc) => {
                acc.instances += check.instances;
                match (acc.status, check.status) {
                    (Status::Fail, _) => {}
                    (_, Status::Fail) => {
                        acc.status = Status::Fail;
                        acc.witness = check.witness;
                    }
                    (Status::Skipped, Status::Pass) => {
                        acc.status = Status::Pass;
                        acc.note = check.note;
                    }
                    _ => {
                        if acc.note.is_none() {
                            acc.note = check.note;
                        }
                    }
                }
            }
        }
    }

    pub fn add_report(&mut self, report: Report) {
        for c in report.checks {
            self.add(c);
        }
    }

    pub fn into_checks(self) -> Vec<Check> {
        self.checks
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraSummary {
    pub n: usize,
    pub is_mv: bool,
    pub is_oml: bool,
}

impl AlgebraSummary {
    pub fn of(alg: &EffectAlgebra) -> Self {
        let c = alg.classify();
        AlgebraSummary { n: alg.size(), is_mv: c.is_mv, is_oml: c.is_oml }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub subject: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSummary>,
    pub checks: Vec<Check>,
    pub counts: BTreeMap<String, u64>,
    /// Wall-clock timings; only filled on request since they break
    /// byte-identical output.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u64>>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report {
            subject: subject.into(),
            algebra: None,
            checks: Vec::new(),
            counts: BTreeMap::new(),
            timings_ms: None,
        }
    }

    pub fn for_algebra(subject: impl Into<String>, alg: &EffectAlgebra) -> Self {
        let mut r = Report::new(subject);
        r.algebra = Some(AlgebraSummary::of(alg));
        r
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn count(&mut self, key: impl Into<String>, value: u64) {
        self.counts.insert(key.into(), value);
    }

    /// Appends the checks of `other`, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}/{}", c.name);
            self.checks.push(c);
        }
        for (k, v) in other.counts {
            self.counts.insert(format!("{prefix}/{k}"), v);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per check, for terminals.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.subject);
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            out.push_str(&format!("  [{status}] {} ({} instances)", c.name, c.instances));
            if let Some(w) = &c.witness {
                out.push_str(&format!(" witness ({}): {}", w.tuple.join(", "), w.detail));
            }
            if let Some(n) = &c.note {
                out.push_str(&format!(" -- {n}"));
            }
            out.push('\n');
        }
        for (k, v) in &self.counts {
            out.push_str(&format!("  {k} = {v}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tally_keeps_first_failure() {
        let mut t = Tally::new("x");
        t.record(true, || unreachable!());
        t.record(false, || Witness::new(vec!["a".into()], "first"));
        t.record(false, || Witness::new(vec!["b".into()], "second"));
        let c = t.finish();
        assert_eq!(c.status, Status::Fail);
        assert_eq!(c.instances, 3);
        assert_eq!(c.witness.unwrap().detail, "first");
    }

    #[test]
    fn aggregate_merges_by_name() {
        let mut agg = Aggregate::new();
        agg.add(Check::pass("a", 2));
        agg.add(Check::pass("b", 1));
        agg.add(Check::fail("a", 3, Witness::new(vec![], "first")));
        agg.add(Check::fail("a", 1, Witness::new(vec![], "second")));
        let checks = agg.into_checks();
        assert_eq!(checks.len(), 2);
        assert_eq!(checks[0].instances, 6);
        assert_eq!(checks[0].status, Status::Fail);
        assert_eq!(checks[0].witness.as_ref().unwrap().detail, "first");
    }

    #[test]
    fn skipped_is_not_failure() {
        let mut r = Report::new("s");
        r.push(Check::skipped("big", "above cap"));
        r.push(Check::pass("ok", 1));
        assert!(r.passed());
        let json = r.to_json_string();
        assert!(json.contains("SKIPPED"));
        assert!(!json.contains("timings_ms"));
    }
}
