//! Runs every verification over the standard catalog.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::algebra::EffectAlgebra;
use crate::catalog::standard_catalog;
use crate::corpus::{random_measures, rng_for, s123_corpus, submeasure_corpus, two_ideal_measure, DEFAULT_SEED};
use crate::dfilters::{enumerate_dfilters, verify_filter_lattice, DEFAULT_ENUMERATION_CAP};
use crate::error::Result;
use crate::identities::verify_basic_identities;
use crate::report::{Aggregate, Check, Report, Status, Tally, Witness};
use crate::submeasures::measure::decompose_measure;
use crate::submeasures::{canonical_indicator, check_weakest, kernel_uniformity, mv_s123_check};
use crate::uniformities::{
    enumerate_d_congruences, psi, verify_alt_bases, verify_isomorphism, Congruence, CongruenceMode,
    DEFAULT_CONGRUENCE_CAP,
};

#[derive(Clone, Debug, Serialize)]
pub struct SuiteOptions {
    pub max_n: usize,
    pub congruence_cap: usize,
    pub seed: u64,
    pub submeasures_per_algebra: usize,
    pub measures_per_algebra: usize,
    pub mv_functions_per_algebra: usize,
    #[serde(skip)]
    pub timings: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            max_n: 10,
            congruence_cap: DEFAULT_CONGRUENCE_CAP,
            seed: DEFAULT_SEED,
            submeasures_per_algebra: 100,
            measures_per_algebra: 20,
            mv_functions_per_algebra: 100,
            timings: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Totals {
    pub algebras: u64,
    pub checks: u64,
    pub passed: u64,
    pub failed: u64,
    pub skipped: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub options: SuiteOptions,
    pub algebras: Vec<Report>,
    pub totals: Totals,
    pub passed: bool,
}

impl SuiteReport {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("suite report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.algebras {
            let failed = r.failures().count();
            let status = if failed == 0 { "PASS" } else { "FAIL" };
            out.push_str(&format!("[{status}] {} ({} checks, {failed} failed)\n", r.subject, r.checks.len()));
            for c in r.failures() {
                let w = c.witness.as_ref().expect("failed checks carry a witness");
                out.push_str(&format!("    {}: ({}) {}\n", c.name, w.tuple.join(", "), w.detail));
            }
        }
        let t = &self.totals;
        out.push_str(&format!(
            "{} algebras, {} checks: {} passed, {} failed, {} skipped\n",
            t.algebras, t.checks, t.passed, t.failed, t.skipped
        ));
        out
    }
}

/// D-congruences: brute-force scan within the cap, the filter route above it.
pub fn all_congruences(alg: &EffectAlgebra, cap: usize) -> Result<(Vec<Congruence<'_>>, CongruenceMode)> {
    let mode = if alg.size() <= cap { CongruenceMode::Brute } else { CongruenceMode::ViaFilters };
    Ok((enumerate_d_congruences(alg, mode, cap)?, mode))
}

/// Kernel and weakest-uniformity checks over the generated submeasures.
pub fn submeasure_section(alg: &EffectAlgebra, name: &str, opts: &SuiteOptions) -> Result<Report> {
    let filters = enumerate_dfilters(alg, DEFAULT_ENUMERATION_CAP)?;
    let (congs, mode) = all_congruences(alg, opts.congruence_cap)?;
    let mut rng = rng_for(opts.seed, &format!("submeasures/{name}"));
    let measures = random_measures(alg, &mut rng, 5);
    let corpus = submeasure_corpus(alg, &filters, &measures, &mut rng, opts.submeasures_per_algebra);
    let mut agg = Aggregate::new();
    for eta in &corpus {
        agg.add_report(check_weakest(eta, &congs)?);
    }
    let mut report = Report::for_algebra("submeasures", alg);
    for c in agg.into_checks() {
        report.push(c);
    }
    let mut size = Tally::new("corpus-size-reached");
    size.record(corpus.len() >= opts.submeasures_per_algebra, || {
        Witness::new(vec![corpus.len().to_string()], "too few distinct submeasures")
    });
    report.push(size.finish());
    if mode == CongruenceMode::ViaFilters {
        report.push(Check::skipped("congruences-by-partition-scan", "above the partition cap; filter route used"));
    }
    report.count("submeasures", corpus.len() as u64);
    Ok(report)
}

/// Distance, submeasure and decomposition checks over generated measures.
pub fn measure_section(alg: &EffectAlgebra, name: &str, opts: &SuiteOptions) -> Result<Report> {
    let mut rng = rng_for(opts.seed, &format!("measures/{name}"));
    let mut measures = random_measures(alg, &mut rng, opts.measures_per_algebra);
    measures.extend(two_ideal_measure(alg));
    let mut agg = Aggregate::new();
    let mut strictly_finer = 0;
    let mut multi_dim = 0;
    for mu in &measures {
        let r = decompose_measure(mu)?;
        strictly_finer += r.counts.get("strictly_finer_than_every_factor").copied().unwrap_or(0);
        multi_dim += (mu.dim() > 1) as u64;
        agg.add_report(r);
    }
    let mut report = Report::for_algebra("measures", alg);
    for c in agg.into_checks() {
        report.push(c);
    }
    report.count("measures", measures.len() as u64);
    report.count("multi_dimensional", multi_dim);
    report.count("strictly_finer_than_every_factor", strictly_finer);
    Ok(report)
}

/// Each D-congruence is the kernel uniformity of the indicator built from
/// its class of `0`.
pub fn indicator_section(alg: &EffectAlgebra, opts: &SuiteOptions) -> Result<Report> {
    let (congs, _) = all_congruences(alg, opts.congruence_cap)?;
    let mut report = Report::for_algebra("indicators", alg);
    let mut t = Tally::new("indicator-regenerates-congruence");
    for e in &congs {
        let back = psi(e).and_then(|f| kernel_uniformity(&canonical_indicator(&f)));
        t.record(back.as_ref().ok() == Some(e), || {
            Witness::new(vec![e.display()], format!("regenerated {:?}", back.map(|c| c.display()).ok()))
        });
    }
    report.push(t.finish());
    report.count("d_congruences", congs.len() as u64);
    Ok(report)
}

/// On MV-algebras, functions with the first three axioms at `k = 1` also
/// satisfy join absorption.
pub fn mv_section(alg: &EffectAlgebra, name: &str, opts: &SuiteOptions) -> Result<Report> {
    let mut report = Report::for_algebra("mv-remark", alg);
    if !alg.classify().is_mv {
        report.push(Check::skipped("first-three-axioms-imply-join-absorption", "not an MV-algebra"));
        return Ok(report);
    }
    let filters = enumerate_dfilters(alg, DEFAULT_ENUMERATION_CAP)?;
    let mut rng = rng_for(opts.seed, &format!("mv/{name}"));
    let corpus = s123_corpus(alg, &filters, &mut rng, opts.mv_functions_per_algebra);
    let mut t = Tally::new("first-three-axioms-imply-join-absorption");
    for values in &corpus {
        let verdict = mv_s123_check(alg, values)?;
        t.record(verdict.is_ok(), || {
            let v = verdict.clone().unwrap_err();
            let mut w = v.to_witness(alg);
            w.detail = format!("{} for values {:?}", w.detail, values.iter().map(|x| x.to_string()).collect::<Vec<_>>());
            w
        });
    }
    report.push(t.finish());
    // The one-element algebra carries a single function.
    let target = if alg.size() == 1 { 1 } else { opts.mv_functions_per_algebra };
    let mut size = Tally::new("corpus-size-reached");
    size.record(corpus.len() >= target, || {
        Witness::new(vec![corpus.len().to_string()], "too few distinct functions")
    });
    report.push(size.finish());
    report.count("functions", corpus.len() as u64);
    Ok(report)
}

/// Every section for one algebra, merged into one report.
pub fn verify_algebra(alg: &EffectAlgebra, name: &str, opts: &SuiteOptions) -> Result<Report> {
    let mut report = Report::for_algebra(name, alg);
    let mut timings = BTreeMap::new();
    let mut timed = |section: &str, report: &mut Report, f: &dyn Fn() -> Result<Report>| -> Result<()> {
        let start = Instant::now();
        let r = f()?;
        timings.insert(section.to_string(), start.elapsed().as_millis() as u64);
        report.absorb(section, r);
        Ok(())
    };
    timed("identities", &mut report, &|| Ok(verify_basic_identities(alg)))?;
    timed("filters", &mut report, &|| verify_filter_lattice(alg, DEFAULT_ENUMERATION_CAP))?;
    if alg.size() <= opts.congruence_cap {
        timed("isomorphism", &mut report, &|| verify_isomorphism(alg, opts.congruence_cap))?;
    } else {
        report.push(Check::skipped("isomorphism", "above the partition cap"));
    }
    timed("alternative-bases", &mut report, &|| verify_alt_bases(alg))?;
    timed("submeasures", &mut report, &|| submeasure_section(alg, name, opts))?;
    timed("measures", &mut report, &|| measure_section(alg, name, opts))?;
    timed("indicators", &mut report, &|| indicator_section(alg, opts))?;
    timed("mv-remark", &mut report, &|| mv_section(alg, name, opts))?;
    if opts.timings {
        report.timings_ms = Some(timings);
    }
    Ok(report)
}

pub fn run_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut algebras = Vec::new();
    for entry in standard_catalog(opts.max_n) {
        algebras.push(verify_algebra(&entry.algebra, &entry.name, opts)?);
    }
    let all = algebras.iter().flat_map(|r| &r.checks);
    let count = |s: Status| all.clone().filter(|c| c.status == s).count() as u64;
    let totals = Totals {
        algebras: algebras.len() as u64,
        checks: all.clone().count() as u64,
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skipped),
    };
    let passed = totals.failed == 0;
    Ok(SuiteReport { options: opts.clone(), algebras, totals, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes_and_is_deterministic() {
        let opts = SuiteOptions { max_n: 4, ..SuiteOptions::default() };
        let a = run_suite(&opts).unwrap();
        assert!(a.passed, "{}", a.to_text());
        let b = run_suite(&opts).unwrap();
        assert_eq!(a.to_json_string(), b.to_json_string());
        assert!(!a.to_json_string().contains("timings_ms"));
    }

    #[test]
    fn timings_only_on_request() {
        let opts = SuiteOptions { max_n: 2, timings: true, ..SuiteOptions::default() };
        let r = run_suite(&opts).unwrap();
        assert!(r.algebras.iter().all(|a| a.timings_ms.is_some()));
    }
}
