//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use dlattice::catalog::{standard_catalog, CatalogEntry};
use dlattice::corpus::{random_measures, rng_for, two_ideal_measure, DEFAULT_SEED};
use dlattice::dfilters::{enumerate_dfilters, pairwise_meets, verify_filter_lattice, DEFAULT_ENUMERATION_CAP};
use dlattice::identities::verify_basic_identities;
use dlattice::rational::rat;
use dlattice::submeasures::measure::weber_distance;
use dlattice::submeasures::pseudometric::submeasure_from_pseudometric;
use dlattice::suite::{indicator_section, measure_section, mv_section, submeasure_section, SuiteOptions};
use dlattice::uniformities::{verify_alt_bases, verify_isomorphism, DEFAULT_CONGRUENCE_CAP};
use dlattice::{Report, Status};

const FULL: usize = 32;

struct Outcome {
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new() }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        }
    }

    fn report(&mut self, name: &str, r: &Report) {
        for c in r.failures() {
            let w = c.witness.as_ref().unwrap();
            self.require(false, || format!("{name}: {} at ({}) {}", c.name, w.tuple.join(", "), w.detail));
        }
    }

    fn check_passed(&mut self, name: &str, r: &Report, check: &str) {
        let status = r.check(check).map(|c| c.status);
        self.require(status == Some(Status::Pass), || format!("{name}: {check} is {status:?}"));
    }
}

fn catalog(max_n: usize) -> Vec<CatalogEntry> {
    standard_catalog(max_n)
}

fn identities() -> Outcome {
    let mut o = Outcome::new();
    for e in catalog(FULL) {
        o.report(&e.name, &verify_basic_identities(&e.algebra));
    }
    o
}

fn isomorphism() -> Outcome {
    let mut o = Outcome::new();
    for e in catalog(10) {
        let r = verify_isomorphism(&e.algebra, DEFAULT_CONGRUENCE_CAP).unwrap();
        o.report(&e.name, &r);
        o.check_passed(&e.name, &r, "filters-and-partition-scan-agree");
        let expected = match e.name.as_str() {
            "chain(2)" | "mo(2)" => Some(2),
            "boolean(2)" => Some(4),
            _ => None,
        };
        if let Some(n) = expected {
            for key in ["dfilters", "d_congruences"] {
                let got = r.counts[key];
                o.require(got == n, || format!("{}: {key} = {got}, expected {n}", e.name));
            }
        }
    }
    o
}

fn lattice() -> Outcome {
    let mut o = Outcome::new();
    for e in catalog(16) {
        let r = verify_filter_lattice(&e.algebra, DEFAULT_ENUMERATION_CAP).unwrap();
        o.report(&e.name, &r);
        for c in ["meet-matches-poset-meet", "join-matches-poset-join", "distributive"] {
            o.check_passed(&e.name, &r, c);
        }
    }
    o
}

fn alt_bases() -> Outcome {
    let mut o = Outcome::new();
    for e in catalog(12) {
        let r = verify_alt_bases(&e.algebra).unwrap();
        o.report(&e.name, &r);
        o.check_passed(&e.name, &r, "sum-entourage-equals-delta-entourage");
        o.check_passed(&e.name, &r, "difference-entourage-equals-delta-entourage");
    }
    o
}

fn join_base() -> Outcome {
    let mut o = Outcome::new();
    for e in catalog(12) {
        let alg = &e.algebra;
        let fs = enumerate_dfilters(alg, DEFAULT_ENUMERATION_CAP).unwrap();
        for f in &fs {
            for g in &fs {
                let meets = pairwise_meets(alg, f.members(), g.members());
                o.require(meets == f.members() & g.members(), || {
                    format!("{}: {} and {}", e.name, f.display(), g.display())
                });
            }
        }
    }
    o
}

fn submeasures(opts: &SuiteOptions) -> Outcome {
    let mut o = Outcome::new();
    for e in catalog(FULL) {
        let r = submeasure_section(&e.algebra, &e.name, opts).unwrap();
        o.report(&e.name, &r);
        let n = r.counts["submeasures"];
        o.require(n >= 100, || format!("{}: only {n} submeasures", e.name));
    }
    o
}

fn pseudometrics(opts: &SuiteOptions) -> Outcome {
    let mut o = Outcome::new();
    for e in catalog(FULL) {
        let alg = &e.algebra;
        let mut rng = rng_for(opts.seed, &format!("measures/{}", e.name));
        let mut measures = random_measures(alg, &mut rng, opts.measures_per_algebra);
        measures.extend(two_ideal_measure(alg));
        o.require(measures.len() >= 20, || format!("{}: only {} measures", e.name, measures.len()));
        for mu in &measures {
            let w = weber_distance(mu);
            for d in w.coordinates.iter().chain(std::iter::once(&w.norm)) {
                o.require(*d.k() == rat(1) && *d.m() == rat(1), || format!("{}: constants not 1", e.name));
                if let Err(v) = d.check() {
                    o.require(false, || format!("{}: {:?} at {:?}", e.name, v.condition, v.witness));
                    continue;
                }
                let eq = submeasure_from_pseudometric(d).map(|x| x.uniformities_equal);
                o.require(matches!(eq, Ok(true)), || format!("{}: uniformities differ: {eq:?}", e.name));
            }
        }
    }
    o
}

fn decomposition(opts: &SuiteOptions) -> Outcome {
    let mut o = Outcome::new();
    let mut strictly_finer = 0;
    for e in catalog(FULL) {
        let r = measure_section(&e.algebra, &e.name, opts).unwrap();
        o.report(&e.name, &r);
        o.check_passed(&e.name, &r, "intersection-of-kernels-equals-measure-uniformity");
        strictly_finer += r.counts["strictly_finer_than_every_factor"];
    }
    o.require(strictly_finer >= 1, || "no multi-dimensional measure strictly finer than its factors".into());
    o
}

fn indicators(opts: &SuiteOptions) -> Outcome {
    let mut o = Outcome::new();
    for e in catalog(10) {
        o.report(&e.name, &indicator_section(&e.algebra, opts).unwrap());
    }
    for e in catalog(FULL) {
        if !e.algebra.classify().is_mv {
            continue;
        }
        let r = mv_section(&e.algebra, &e.name, opts).unwrap();
        o.report(&e.name, &r);
        let n = r.counts["functions"];
        let target = if e.algebra.size() == 1 { 1 } else { 100 };
        o.require(n >= target, || format!("{}: only {n} functions", e.name));
    }
    o
}

fn determinism() -> Outcome {
    let mut o = Outcome::new();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_ea"))
            .args(["suite", "--max-n", "10", "--json"])
            .output()
            .expect("ea runs")
    };
    let a = run();
    let b = run();
    o.require(a.status.success(), || format!("first run exited with {:?}", a.status.code()));
    o.require(b.status.success(), || format!("second run exited with {:?}", b.status.code()));
    o.require(!a.stdout.is_empty() && a.stdout == b.stdout, || "outputs differ".into());
    o
}

fn main() {
    let opts = SuiteOptions { seed: DEFAULT_SEED, ..SuiteOptions::default() };
    type Criterion<'a> = (&'static str, Option<Duration>, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("identities on catalog up to 32 elements", Some(Duration::from_secs(30)), Box::new(identities)),
        ("filters and congruences correspond, n <= 10", Some(Duration::from_secs(60)), Box::new(isomorphism)),
        ("filter lattice is distributive, n <= 16", None, Box::new(lattice)),
        ("sum and difference bases match, n <= 12", None, Box::new(alt_bases)),
        ("pairwise meets give the join base, n <= 12", None, Box::new(join_base)),
        ("submeasure kernels and weakest uniformity", None, Box::new(|| submeasures(&opts))),
        ("measure distances are compatible pseudometrics", None, Box::new(|| pseudometrics(&opts))),
        ("measure uniformity decomposes by coordinate", None, Box::new(|| decomposition(&opts))),
        ("indicators regenerate congruences; MV remark", None, Box::new(|| indicators(&opts))),
        ("suite JSON is byte-identical across runs", Some(Duration::from_secs(300)), Box::new(determinism)),
    ];
    let mut all_ok = true;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut out = f();
        let elapsed = start.elapsed();
        if let Some(b) = budget {
            out.require(elapsed <= *b, || format!("took {elapsed:.1?}, budget {b:?}"));
        }
        let ok = out.failures.is_empty();
        all_ok &= ok;
        println!("{} criterion {:>2}: {name} ({elapsed:.2?})", if ok { "PASS" } else { "FAIL" }, i + 1);
        for f in &out.failures {
            println!("    {f}");
        }
    }
    if !all_ok {
        std::process::exit(1);
    }
}
