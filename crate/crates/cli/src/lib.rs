//! The `ea` command: exit 0 when every property holds, 1 when one fails
//! (the output names a witness), 2 on malformed input or a size cap.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use dlattice::catalog::{boolean_algebra, horizontal_sum, mo, mv_chain, product};
use dlattice::dfilters::{enumerate_dfilters, filter_lattice_dot, verify_filter_lattice, DEFAULT_ENUMERATION_CAP};
use dlattice::identities::verify_basic_identities;
use dlattice::report::{Check, Report, Tally, Witness};
use dlattice::submeasures::measure::{
    decompose_measure, measure_uniformity, modular_measure_check, MeasureJson, ModularMeasure, NormKind,
};
use dlattice::submeasures::{check_k_submeasure, check_weakest, kernel_uniformity, KSubmeasure, SubmeasureJson};
use dlattice::suite::{all_congruences, run_suite, SuiteOptions};
use dlattice::uniformities::{enumerate_d_congruences, verify_isomorphism, CongruenceMode, DEFAULT_CONGRUENCE_CAP};
use dlattice::{EffectAlgebra, Error};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "ea", version, about = "Exhaustive checks on finite lattice-ordered effect algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a catalog algebra as JSON.
    Build(BuildArgs),
    /// Verify the derived identities of an algebra.
    Check(AlgebraArgs),
    /// List the D-filters (by generator).
    Filters(FiltersArgs),
    /// List the D-congruences.
    Congruences(CongruenceArgs),
    /// Verify that D-filters and D-congruences correspond.
    Iso(IsoArgs),
    /// Verify the lattice of D-filters.
    Lattice(FiltersArgs),
    /// Submeasure commands.
    Submeasure {
        #[command(subcommand)]
        action: SubmeasureAction,
    },
    /// Modular measure commands.
    Measure {
        #[command(subcommand)]
        action: MeasureAction,
    },
    /// Run every verification on the standard catalog.
    Suite(SuiteArgs),
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Kind {
    Chain,
    Boolean,
    Mo,
    Product,
    Hsum,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Steps (chain), atoms (boolean) or blocks (mo).
    #[arg(long)]
    n: Option<usize>,
    /// Factors or summands, for product and hsum.
    #[arg(long)]
    left: Option<PathBuf>,
    #[arg(long)]
    right: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct AlgebraArgs {
    algebra: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct FiltersArgs {
    algebra: PathBuf,
    /// Write the Hasse diagram of the D-filter lattice here.
    #[arg(long)]
    dot: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Mode {
    Brute,
    Filters,
}

#[derive(Args, Debug)]
struct CongruenceArgs {
    algebra: PathBuf,
    #[arg(long, value_enum, default_value = "brute")]
    mode: Mode,
    #[arg(long, default_value_t = DEFAULT_CONGRUENCE_CAP)]
    congruence_cap: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct IsoArgs {
    algebra: PathBuf,
    #[arg(long, default_value_t = DEFAULT_CONGRUENCE_CAP)]
    congruence_cap: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SubmeasureArgs {
    algebra: PathBuf,
    submeasure: PathBuf,
    #[arg(long, default_value_t = DEFAULT_CONGRUENCE_CAP)]
    congruence_cap: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum SubmeasureAction {
    /// Check the four submeasure axioms.
    Check(SubmeasureArgs),
    /// Print the generated uniformity and verify it is the weakest one.
    Uniformity(SubmeasureArgs),
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Norm {
    Max,
    Sum,
}

#[derive(Args, Debug)]
struct MeasureArgs {
    algebra: PathBuf,
    measure: PathBuf,
    /// Overrides the norm given in the measure file.
    #[arg(long, value_enum)]
    norm: Option<Norm>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum MeasureAction {
    /// Check modularity and additivity.
    Check(MeasureArgs),
    /// Print the generated uniformity.
    Uniformity(MeasureArgs),
    /// Verify the decomposition into coordinate submeasures.
    Decompose(MeasureArgs),
}

#[derive(Args, Debug)]
struct SuiteArgs {
    #[arg(long, default_value_t = 10)]
    max_n: usize,
    #[arg(long, default_value_t = DEFAULT_CONGRUENCE_CAP)]
    congruence_cap: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    json: bool,
    /// Include wall-clock timings (output is then not reproducible).
    #[arg(long)]
    timings: bool,
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn verdict(passed: bool, stdout: String) -> Self {
        Outcome { code: if passed { 0 } else { 1 }, stdout, stderr: String::new() }
    }

    fn input_error(msg: impl Into<String>) -> Self {
        Outcome { code: 2, stdout: String::new(), stderr: msg.into() }
    }
}

#[derive(Debug)]
enum Failure {
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CmdResult = Result<Outcome, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(e.to_string()),
                _ => Outcome::input_error(e.to_string()),
            };
        }
    };
    let result = match cli.command {
        Command::Build(a) => build(a),
        Command::Check(a) => check(a),
        Command::Filters(a) => filters(a),
        Command::Congruences(a) => congruences(a),
        Command::Iso(a) => iso(a),
        Command::Lattice(a) => lattice(a),
        Command::Submeasure { action } => submeasure(action),
        Command::Measure { action } => measure(action),
        Command::Suite(a) => suite(a),
    };
    match result {
        Ok(out) => out,
        Err(Failure::Input(msg)) => Outcome::input_error(format!("error: {msg}\n")),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<EffectAlgebra, Failure> {
    EffectAlgebra::from_json_str(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn render(report: &Report, as_json: bool) -> String {
    if as_json {
        report.to_json_string() + "\n"
    } else {
        report.to_text()
    }
}

fn pretty(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("json value serializes") + "\n"
}

fn build(a: BuildArgs) -> CmdResult {
    let need_n = || a.n.ok_or_else(|| Failure::Input("--n is required for this kind".into()));
    let pair = || -> Result<(EffectAlgebra, EffectAlgebra), Failure> {
        match (&a.left, &a.right) {
            (Some(l), Some(r)) => Ok((load_algebra(l)?, load_algebra(r)?)),
            _ => Err(Failure::Input("--left and --right are required for this kind".into())),
        }
    };
    let alg = match a.kind {
        Kind::Chain => mv_chain(need_n()?)?,
        Kind::Boolean => boolean_algebra(need_n()?)?,
        Kind::Mo => mo(need_n()?)?,
        Kind::Product => {
            let (l, r) = pair()?;
            product(&l, &r)?
        }
        Kind::Hsum => {
            let (l, r) = pair()?;
            horizontal_sum(&l, &r)?
        }
    };
    let text = alg.to_json_string() + "\n";
    match &a.output {
        Some(path) => {
            write(path, &text)?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

fn check(a: AlgebraArgs) -> CmdResult {
    let alg = load_algebra(&a.algebra)?;
    let report = verify_basic_identities(&alg);
    Ok(Outcome::verdict(report.passed(), render(&report, a.json)))
}

fn filters(a: FiltersArgs) -> CmdResult {
    let alg = load_algebra(&a.algebra)?;
    let fs = enumerate_dfilters(&alg, DEFAULT_ENUMERATION_CAP)?;
    if let Some(path) = &a.dot {
        write(path, &filter_lattice_dot(&alg, &fs))?;
    }
    let out = if a.json {
        let gens: Vec<Vec<String>> = fs.iter().map(|f| f.labels()).collect();
        pretty(&json!({ "count": fs.len(), "dfilters": gens }))
    } else {
        let mut s: String = fs.iter().map(|f| f.display() + "\n").collect();
        s.push_str(&format!("{} D-filters\n", fs.len()));
        s
    };
    Ok(Outcome::ok(out))
}

fn congruences(a: CongruenceArgs) -> CmdResult {
    let alg = load_algebra(&a.algebra)?;
    let mode = match a.mode {
        Mode::Brute => CongruenceMode::Brute,
        Mode::Filters => CongruenceMode::ViaFilters,
    };
    let cs = enumerate_d_congruences(&alg, mode, a.congruence_cap)?;
    let out = if a.json {
        let classes: Vec<Vec<Vec<String>>> = cs.iter().map(|c| c.labelled_classes()).collect();
        pretty(&json!({ "count": cs.len(), "d_congruences": classes }))
    } else {
        let mut s: String = cs.iter().map(|c| c.display() + "\n").collect();
        s.push_str(&format!("{} D-congruences\n", cs.len()));
        s
    };
    Ok(Outcome::ok(out))
}

fn iso(a: IsoArgs) -> CmdResult {
    let alg = load_algebra(&a.algebra)?;
    let report = verify_isomorphism(&alg, a.congruence_cap)?;
    let out = if a.json {
        render(&report, true)
    } else {
        format!(
            "{} D-filters ↔ {} D-congruences\n{}",
            report.counts["dfilters"],
            report.counts["d_congruences"],
            report.to_text()
        )
    };
    Ok(Outcome::verdict(report.passed(), out))
}

fn lattice(a: FiltersArgs) -> CmdResult {
    let alg = load_algebra(&a.algebra)?;
    let report = verify_filter_lattice(&alg, DEFAULT_ENUMERATION_CAP)?;
    if let Some(path) = &a.dot {
        let fs = enumerate_dfilters(&alg, DEFAULT_ENUMERATION_CAP)?;
        write(path, &filter_lattice_dot(&alg, &fs))?;
    }
    Ok(Outcome::verdict(report.passed(), render(&report, a.json)))
}

fn load_submeasure(path: &Path) -> Result<SubmeasureJson, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn submeasure(action: SubmeasureAction) -> CmdResult {
    match action {
        SubmeasureAction::Check(a) => {
            let alg = load_algebra(&a.algebra)?;
            let json = load_submeasure(&a.submeasure)?;
            let mut report = Report::for_algebra("submeasure", &alg);
            let res = check_k_submeasure(&alg, &json.values, &json.k);
            let mut t = Tally::new("submeasure-axioms");
            t.record(res.is_ok(), || res.clone().unwrap_err().to_witness(&alg));
            report.push(t.finish());
            if res.is_ok() {
                let eta = KSubmeasure::from_json(&alg, &json)?;
                let kernel = eta.kernel();
                let names: Vec<String> = kernel.iter().map(|e| alg.label(e).to_string()).collect();
                report.push(Check::pass("kernel", kernel.len() as u64).with_note(format!("{{{}}}", names.join(","))));
            }
            Ok(Outcome::verdict(report.passed(), render(&report, a.json)))
        }
        SubmeasureAction::Uniformity(a) => {
            let alg = load_algebra(&a.algebra)?;
            let json = load_submeasure(&a.submeasure)?;
            let eta = KSubmeasure::from_json(&alg, &json)?;
            let u = kernel_uniformity(&eta)?;
            let (congs, _) = all_congruences(&alg, a.congruence_cap)?;
            let report = check_weakest(&eta, &congs)?;
            let out = if a.json {
                let mut v = serde_json::to_value(&report).expect("report serializes");
                v["uniformity"] = json!(u.labelled_classes());
                pretty(&v)
            } else {
                format!("uniformity {}\n{}", u.display(), report.to_text())
            };
            Ok(Outcome::verdict(report.passed(), out))
        }
    }
}

fn load_measure(a: &MeasureArgs) -> Result<MeasureJson, Failure> {
    let mut json: MeasureJson = serde_json::from_str(&read(&a.measure)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", a.measure.display())))?;
    if let Some(n) = a.norm {
        json.norm = match n {
            Norm::Max => NormKind::Max,
            Norm::Sum => NormKind::Sum,
        };
    }
    Ok(json)
}

fn measure(action: MeasureAction) -> CmdResult {
    match action {
        MeasureAction::Check(a) => {
            let alg = load_algebra(&a.algebra)?;
            let json = load_measure(&a)?;
            let mut report = Report::for_algebra("measure", &alg);
            let res = modular_measure_check(&alg, json.dim, &json.mu);
            let mut t = Tally::new("modular-and-additive");
            t.record(res.is_ok(), || {
                let v = res.clone().unwrap_err();
                Witness::elements(&alg, &v.witness, format!("{:?} fails", v.condition))
            });
            report.push(t.finish());
            Ok(Outcome::verdict(report.passed(), render(&report, a.json)))
        }
        MeasureAction::Uniformity(a) => {
            let alg = load_algebra(&a.algebra)?;
            let json = load_measure(&a)?;
            let mu = ModularMeasure::from_json(&alg, &json)?;
            let u = measure_uniformity(&mu)?;
            let out = if a.json {
                pretty(&json!({ "uniformity": u.labelled_classes() }))
            } else {
                format!("uniformity {}\n", u.display())
            };
            Ok(Outcome::ok(out))
        }
        MeasureAction::Decompose(a) => {
            let alg = load_algebra(&a.algebra)?;
            let json = load_measure(&a)?;
            let mu = ModularMeasure::from_json(&alg, &json)?;
            let report = decompose_measure(&mu)?;
            Ok(Outcome::verdict(report.passed(), render(&report, a.json)))
        }
    }
}

fn suite(a: SuiteArgs) -> CmdResult {
    let mut opts = SuiteOptions {
        max_n: a.max_n,
        congruence_cap: a.congruence_cap,
        timings: a.timings,
        ..SuiteOptions::default()
    };
    if let Some(seed) = a.seed {
        opts.seed = seed;
    }
    let report = run_suite(&opts)?;
    let out = if a.json { report.to_json_string() + "\n" } else { report.to_text() };
    Ok(Outcome::verdict(report.passed, out))
}
