//! The `qll` command line.
//!
//! Exit codes: 0 success, 1 an identity or expectation failed, 2 usage or
//! input error, 3 a computation was refused for exceeding its budget.

pub mod checks;
pub mod corpus;
pub mod report;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::braid::BraidWord;
use crate::burau::{alexander_poly, arf_knot, determinant, double_cover_homology};
use crate::error::{Error, Result};
use crate::homcount::{
    builtin_group, hom_count_estimate, hom_count_exact_with_budget, wirtinger_hom_count_with_budget, FiniteGroup,
    DEFAULT_HOM_BUDGET, DEFAULT_NODE_BUDGET,
};
use crate::image::{classify_image, RepFamily, RepSpec, DEFAULT_IMAGE_BOUND};
use crate::tl::STATESUM_DEFAULT_CAP;

use checks::{check_entry, jones_value, CheckConfig};
use corpus::{parse_corpus, BUNDLED_CORPUS};
use report::{Check, EntryReport, Report, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Name of the environment variable overriding enumeration budgets.
pub const BUDGET_ENV: &str = "QLL_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "qll", version, about = "Quantum and classical invariants of braid closures")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Leave timings out of the report (for reproducible output).
    #[arg(long, global = true)]
    no_timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute invariants of one braid closure.
    Invariants(InvariantsArgs),
    /// Check the root-of-unity identities on a corpus (default: the bundled one).
    CheckTable(CheckTableArgs),
    /// Classify the image of the braid group in a representation.
    Image(ImageArgs),
    /// Count homomorphisms from the link group to a finite group.
    Hom(HomArgs),
    /// Print the version.
    Version,
}

#[derive(Args, Debug)]
struct BraidArgs {
    #[arg(long)]
    strands: usize,
    /// Whitespace-separated generator indices; negative for inverses.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    word: String,
}

impl BraidArgs {
    fn braid(&self) -> Result<BraidWord> {
        BraidWord::parse(&self.word, self.strands)
    }
}

#[derive(Args, Debug)]
struct InvariantsArgs {
    #[command(flatten)]
    braid: BraidArgs,
    /// Jones polynomial at t = e^{2πi/ℓ}.
    #[arg(long, value_name = "ELL")]
    jones: Vec<u32>,
    #[arg(long)]
    alexander: bool,
    #[arg(long)]
    det: bool,
    /// Dimension of H₁ of the double branched cover with Z/p coefficients.
    #[arg(long, value_name = "P")]
    dp: Vec<u64>,
    #[arg(long)]
    arf: bool,
    /// Exact homomorphism count into GROUP.
    #[arg(long, value_name = "GROUP")]
    hom: Vec<String>,
    #[arg(long, num_args = 3, value_names = ["GROUP", "SAMPLES", "SEED"])]
    hom_estimate: Vec<String>,
    #[arg(long)]
    components: bool,
    #[arg(long)]
    linking: bool,
}

#[derive(Args, Debug)]
struct CheckTableArgs {
    corpus: Option<PathBuf>,
    /// Levels at which the TL trace is compared with the state sum.
    #[arg(long, value_delimiter = ',', default_values_t = [3u32, 4, 5, 6, 7, 10])]
    oracle: Vec<u32>,
    /// Abelian groups for the |G|^c law.
    #[arg(long, value_delimiter = ',', default_values = ["Z2", "Z3", "Z6"])]
    abelian: Vec<String>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("family").required(true).args(["tl", "burau"])))]
struct ImageArgs {
    #[arg(long, value_name = "ELL")]
    tl: Option<u32>,
    #[arg(long, num_args = 2, value_names = ["P", "T0"])]
    burau: Option<Vec<u64>>,
    #[arg(long)]
    strands: usize,
    /// Largest closure to enumerate.
    #[arg(long)]
    bound: Option<usize>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("target").required(true).args(["group", "table"])))]
struct HomArgs {
    #[command(flatten)]
    braid: BraidArgs,
    #[arg(long)]
    group: Option<String>,
    /// CSV multiplication table: entry (a, b) is the index of a·b.
    #[arg(long)]
    table: Option<PathBuf>,
    /// Sample this many tuples instead of counting exactly.
    #[arg(long, value_name = "SAMPLES")]
    estimate: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also count through the Wirtinger presentation and compare.
    #[arg(long)]
    wirtinger: bool,
}

/// Budgets in effect for one run.
#[derive(Clone, Copy, Debug)]
struct Budgets {
    hom: u128,
    nodes: u128,
    statesum_cap: usize,
    image_bound: usize,
}

impl Budgets {
    fn from_env(value: Option<&str>) -> Result<Self> {
        let Some(text) = value else {
            return Ok(Self {
                hom: DEFAULT_HOM_BUDGET,
                nodes: DEFAULT_NODE_BUDGET,
                statesum_cap: STATESUM_DEFAULT_CAP,
                image_bound: DEFAULT_IMAGE_BOUND,
            });
        };
        let b: u128 =
            text.trim().replace('_', "").parse().map_err(|_| {
                Error::InvalidArgument(format!("{BUDGET_ENV} must be a positive integer, got {text:?}"))
            })?;
        if b == 0 {
            return Err(Error::InvalidArgument(format!("{BUDGET_ENV} must be positive")));
        }
        Ok(Self {
            hom: b,
            nodes: b,
            statesum_cap: (127 - b.leading_zeros()) as usize,
            image_bound: DEFAULT_IMAGE_BOUND,
        })
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Parse(_) | Error::InvalidArgument(_) | Error::InvalidGroup(_) | Error::Unsupported(_) | Error::Io(_) => {
            EXIT_USAGE
        }
        Error::OrderMismatch { .. } => EXIT_FAILED,
    }
}

/// Runs the command line `args` (including the program name). `budget` is
/// the value of `QLL_BUDGET`, if set.
pub fn run<I, T>(args: I, budget: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let budgets = match Budgets::from_env(budget) {
        Ok(b) => b,
        Err(e) => {
            let _ = writeln!(err, "qll: {e}");
            return EXIT_USAGE;
        }
    };
    let started = Instant::now();
    let timings = !cli.no_timings;
    let result = match &cli.command {
        Command::Invariants(a) => invariants(a, &budgets, timings),
        Command::CheckTable(a) => check_table(a, &budgets, timings),
        Command::Image(a) => image(a, &budgets),
        Command::Hom(a) => hom(a, &budgets, timings),
        Command::Version => {
            let version = env!("CARGO_PKG_VERSION");
            let _ = if cli.json {
                writeln!(out, "{}", serde_json::json!({ "name": "qll", "version": version }))
            } else {
                writeln!(out, "qll {version}")
            };
            return EXIT_OK;
        }
    };
    let mut report = match result {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "qll: {e}");
            return exit_code(&e);
        }
    };
    if timings {
        report.total_ms = Some(started.elapsed().as_secs_f64() * 1e3);
    }
    let written = if cli.json {
        serde_json::to_string_pretty(&report)
            .map_err(|e| std::io::Error::other(e.to_string()))
            .and_then(|s| writeln!(out, "{s}"))
    } else {
        out.write_all(report.render_text().as_bytes())
    };
    if let Err(e) = written {
        let _ = writeln!(err, "qll: {e}");
        return EXIT_FAILED;
    }
    if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

fn int_value(name: impl Into<String>, v: impl ToString) -> Value {
    Value {
        name: name.into(),
        exact: v.to_string(),
        approx: None,
    }
}

fn invariants(a: &InvariantsArgs, budgets: &Budgets, timings: bool) -> Result<Report> {
    let started = Instant::now();
    let b = a.braid.braid()?;
    let nothing_requested = a.jones.is_empty()
        && a.dp.is_empty()
        && a.hom.is_empty()
        && a.hom_estimate.is_empty()
        && !(a.alexander || a.det || a.arf || a.components || a.linking);
    let mut values = Vec::new();
    if a.components || nothing_requested {
        values.push(int_value("components", b.components()));
    }
    if a.linking {
        let rows: Vec<String> = b
            .linking_matrix()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")))
            .collect();
        values.push(int_value("linking", format!("[{}]", rows.join(", "))));
    }
    for &ell in &a.jones {
        values.push(jones_value(&b, ell)?);
    }
    if a.alexander || nothing_requested {
        values.push(int_value("alexander", alexander_poly(&b)?));
    }
    if a.det || nothing_requested {
        values.push(int_value("det", determinant(&b)?));
    }
    for &p in &a.dp {
        values.push(int_value(format!("d{p}"), double_cover_homology(&b, p)?));
    }
    if a.arf {
        values.push(int_value("arf", arf_knot(&b)?));
    }
    for g in &a.hom {
        let group = builtin_group(g)?;
        values.push(int_value(
            format!("hom.{g}"),
            hom_count_exact_with_budget(&b, &group, budgets.hom)?,
        ));
    }
    for triple in a.hom_estimate.chunks(3) {
        let group = builtin_group(&triple[0])?;
        let number = |s: &str, what: &str| {
            s.parse::<u64>().map_err(|_| {
                Error::InvalidArgument(format!(
                    "--hom-estimate {what} must be a nonnegative integer, got {s:?}"
                ))
            })
        };
        let samples = number(&triple[1], "SAMPLES")?;
        let seed = number(&triple[2], "SEED")?;
        values.push(estimate_value(&b, &group, &triple[0], samples, seed)?);
    }
    let entry = EntryReport {
        name: "input".into(),
        strands: b.strands(),
        word: b.to_string(),
        components: b.components(),
        values,
        checks: Vec::new(),
        elapsed_ms: timings.then(|| started.elapsed().as_secs_f64() * 1e3),
    };
    Ok(Report::new("invariants", vec![entry]))
}

fn estimate_value(b: &BraidWord, g: &FiniteGroup, label: &str, samples: u64, seed: u64) -> Result<Value> {
    let est = hom_count_estimate(b, g, samples, seed)?;
    Ok(Value {
        name: format!("hom-estimate.{label}"),
        exact: est.estimate.to_string(),
        approx: Some(format!(
            "{:.4} ± {:.4} ({} of {} samples fixed)",
            est.fixed as f64 / est.samples as f64 * (g.order() as f64).powi(b.strands() as i32),
            est.stderr,
            est.fixed,
            est.samples
        )),
    })
}

fn check_table(a: &CheckTableArgs, budgets: &Budgets, timings: bool) -> Result<Report> {
    let text = match &a.corpus {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
        None => BUNDLED_CORPUS.to_string(),
    };
    let entries = parse_corpus(&text)?;
    let abelian_groups = a
        .abelian
        .iter()
        .map(|g| {
            let group = builtin_group(g)?;
            if group.is_abelian() {
                Ok(group)
            } else {
                Err(Error::InvalidArgument(format!("{g} is not abelian")))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    for &ell in &a.oracle {
        crate::tl::TlParams::new(ell)?;
    }
    let cfg = CheckConfig {
        oracle_ells: a.oracle.clone(),
        statesum_cap: budgets.statesum_cap,
        abelian_groups,
        hom_budget: budgets.hom,
        timings,
    };
    let reports: Vec<EntryReport> = entries.par_iter().map(|e| check_entry(e, &cfg)).collect();
    Ok(Report::new("check-table", reports))
}

fn image(a: &ImageArgs, budgets: &Budgets) -> Result<Report> {
    let family = match (a.tl, a.burau.as_deref()) {
        (Some(ell), None) => RepFamily::Tl { ell },
        (None, Some(&[p, t0])) => RepFamily::BurauModP { p, t0 },
        _ => {
            return Err(Error::InvalidArgument(
                "give exactly one of --tl ELL or --burau P T0".into(),
            ))
        }
    };
    let spec = RepSpec {
        family,
        strands: a.strands,
    };
    let mut report = Report::new("image", Vec::new());
    report.image = Some(classify_image(&spec, a.bound.unwrap_or(budgets.image_bound))?);
    Ok(report)
}

fn hom(a: &HomArgs, budgets: &Budgets, timings: bool) -> Result<Report> {
    let started = Instant::now();
    let b = a.braid.braid()?;
    let (label, group) = match (&a.group, &a.table) {
        (Some(g), None) => (g.clone(), builtin_group(g)?),
        (None, Some(path)) => {
            let file = std::fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            (name.clone(), FiniteGroup::from_csv(name, file)?)
        }
        _ => return Err(Error::InvalidArgument("give exactly one of --group or --table".into())),
    };
    let mut values = vec![int_value("order", group.order())];
    let mut checks = Vec::new();
    if let Some(samples) = a.estimate {
        values.push(estimate_value(&b, &group, &label, samples, a.seed)?);
    } else {
        let count = hom_count_exact_with_budget(&b, &group, budgets.hom)?;
        values.push(int_value(format!("hom.{label}"), count));
        if a.wirtinger {
            let w = wirtinger_hom_count_with_budget(&b, &group, budgets.nodes)?;
            checks.push(Check::compare(
                "braid action count = Wirtinger count",
                count.to_string(),
                w.to_string(),
                count == w,
            ));
        }
    }
    let entry = EntryReport {
        name: "input".into(),
        strands: b.strands(),
        word: b.to_string(),
        components: b.components(),
        values,
        checks,
        elapsed_ms: timings.then(|| started.elapsed().as_secs_f64() * 1e3),
    };
    Ok(Report::new("hom", vec![entry]))
}
