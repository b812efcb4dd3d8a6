//! Command-line front end: generate point sets, count structures, and run
//! the verification suites.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad input, 3 budget
//! exhausted.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use planecount::bounds::{build_bound_report, solve_threshold, Constants};
use planecount::corpus::standard_corpus;
use planecount::counting::{enumerate_perfect_matchings, enumerate_spanning_cycles};
use planecount::gen::{add_triangular_hull, GeneratorSpec, Shape};
use planecount::tri_engine::enumerate_triangulations;
use planecount::verify::{run_suite, CheckRow, SUITES};
use planecount::{Budget, Error, PointSet};

const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "planecount",
    version,
    about = "Exact counts and bound checks on small planar point sets"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Defaults to text for `gen` and `threshold`, JSON otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    /// Maximum search nodes per enumeration.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    node_budget: Option<u64>,
    /// Wall-clock limit per enumeration, in seconds.
    #[arg(long, global = true)]
    time_budget_s: Option<f64>,
    /// Include elapsed time in reports.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count triangulations, perfect matchings and spanning cycles.
    Count {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = What::All)]
        what: What,
    },
    /// Run a verification suite over the built-in corpus.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// Emit a generated point set in the point-set text format.
    Gen {
        #[arg(long, value_enum)]
        shape: ShapeArg,
        /// Points, or points per chain/circle for the double shapes.
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        scale: i64,
        /// Wrap the set in a large triangle.
        #[arg(long)]
        wrap: bool,
    },
    /// Per-triangulation cycle sums next to the closed-form bounds.
    Bounds {
        #[arg(long)]
        input: PathBuf,
    },
    /// Solve for the degree-3 fraction where the two flip/degree bounds meet.
    Threshold,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum What {
    Tr,
    Pm,
    Sc,
    All,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Identities,
    Kasteleyn,
    Bounds,
    Lemmas,
    All,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ShapeArg {
    Convex,
    DoubleChain,
    DoubleCircle,
    Random,
}

/// Errors mapped onto exit codes.
#[derive(Debug)]
enum Failure {
    Input(String),
    Budget(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded(m) => Failure::Budget(m),
            other => Failure::Input(other.to_string()),
        }
    }
}

#[derive(Serialize)]
struct CountReport {
    schema: u32,
    input: String,
    n: usize,
    h: usize,
    n_interior: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    tr: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pm: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sc: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

#[derive(Serialize)]
struct VerifyReport {
    schema: u32,
    suite: String,
    max_n: usize,
    passed: bool,
    rows: Vec<CheckRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

#[derive(Serialize)]
struct ThresholdReport {
    schema: u32,
    x: f64,
    t: f64,
    lemma51_side: f64,
    lemma53_side: f64,
}

#[derive(Serialize)]
struct GenReport {
    schema: u32,
    spec: GeneratorSpec,
    wrapped: bool,
    points: Vec<(i64, i64)>,
}

fn budget(c: &Common) -> Result<Budget, Failure> {
    let mut b = Budget::default();
    if let Some(n) = c.node_budget {
        b.max_nodes = n;
    }
    if let Some(s) = c.time_budget_s {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Failure::Input(format!(
                "--time-budget-s must be positive, got {s}"
            )));
        }
        b = b.with_time(Duration::from_secs_f64(s));
    }
    Ok(b)
}

fn read_points(path: &Path) -> Result<Arc<PointSet>, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(Arc::new(PointSet::from_text(&text)?))
}

fn emit(c: &Common, body: &str) -> Result<(), Failure> {
    match &c.out {
        Some(p) => fs::write(p, body).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())
                .map_err(|e| Failure::Input(e.to_string()))
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable report");
    s.push('\n');
    s
}

fn csv_rows<T: Serialize>(rows: &[T]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Failure::Input(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Input(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

/// JSON or CSV; text output is reserved for `gen` and `threshold`.
fn render<T: Serialize>(
    c: &Common,
    report: &T,
    rows: &[impl Serialize],
) -> Result<String, Failure> {
    match c.format.unwrap_or(Format::Json) {
        Format::Json => Ok(json(report)),
        Format::Csv => csv_rows(rows),
        Format::Text => Err(Failure::Input(
            "--format text applies only to gen and threshold".into(),
        )),
    }
}

fn elapsed(c: &Common, start: Instant) -> Option<u128> {
    c.timings.then(|| start.elapsed().as_millis())
}

fn cmd_count(c: &Common, input: &Path, what: What) -> Result<(), Failure> {
    let start = Instant::now();
    let b = budget(c)?;
    let ps = read_points(input)?;
    let want = |w: What| what == What::All || what == w;
    let tr = if want(What::Tr) {
        Some(enumerate_triangulations(&ps, &b)?.len() as u64)
    } else {
        None
    };
    let pm = if want(What::Pm) {
        Some(if ps.len() % 2 == 0 {
            enumerate_perfect_matchings(&ps, &b)?.len() as u64
        } else {
            0
        })
    } else {
        None
    };
    let sc = if want(What::Sc) {
        Some(enumerate_spanning_cycles(&ps, &b)?.len() as u64)
    } else {
        None
    };
    let report = CountReport {
        schema: SCHEMA,
        input: input.display().to_string(),
        n: ps.len(),
        h: ps.h(),
        n_interior: ps.n_interior(),
        tr,
        pm,
        sc,
        elapsed_ms: elapsed(c, start),
    };
    let body = render(c, &report, std::slice::from_ref(&report))?;
    emit(c, &body)
}

fn cmd_verify(c: &Common, suite: Suite, max_n: usize) -> Result<(), Failure> {
    let start = Instant::now();
    let b = budget(c)?;
    let corpus = standard_corpus(max_n)?;
    let (name, names): (&str, Vec<&str>) = match suite {
        Suite::Identities => ("identities", vec!["identities"]),
        Suite::Kasteleyn => ("kasteleyn", vec!["kasteleyn"]),
        Suite::Bounds => ("bounds", vec!["bounds"]),
        Suite::Lemmas => ("lemmas", vec!["lemmas"]),
        Suite::All => ("all", SUITES.to_vec()),
    };
    let mut rows = Vec::new();
    for s in names {
        rows.extend(run_suite(s, &corpus, max_n, &b)?);
    }
    let passed = rows.iter().all(|r| r.passed);
    let report = VerifyReport {
        schema: SCHEMA,
        suite: name.to_string(),
        max_n,
        passed,
        rows,
        elapsed_ms: elapsed(c, start),
    };
    let body = render(c, &report, &report.rows)?;
    emit(c, &body)?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_gen(c: &Common, spec: GeneratorSpec, wrap: bool) -> Result<(), Failure> {
    let mut ps = spec.generate()?;
    if wrap {
        ps = add_triangular_hull(&ps)?;
    }
    let points: Vec<(i64, i64)> = ps.points().iter().map(|p| (p.x, p.y)).collect();
    let body = match c.format.unwrap_or(Format::Text) {
        Format::Text => ps.to_text(),
        Format::Json => json(&GenReport {
            schema: SCHEMA,
            spec,
            wrapped: wrap,
            points,
        }),
        Format::Csv => format!("x,y\n{}", csv_rows(&points)?),
    };
    emit(c, &body)
}

fn cmd_bounds(c: &Common, input: &Path) -> Result<(), Failure> {
    let b = budget(c)?;
    let ps = read_points(input)?;
    let id = input
        .file_stem()
        .map_or("input".to_string(), |s| s.to_string_lossy().into_owned());
    let report = build_bound_report(&id, &ps, &b)?;
    #[derive(Serialize)]
    struct Wrapped<'a> {
        schema: u32,
        #[serde(flatten)]
        report: &'a planecount::bounds::BoundReport,
    }
    let body = render(
        c,
        &Wrapped {
            schema: SCHEMA,
            report: &report,
        },
        &report.rows,
    )?;
    emit(c, &body)?;
    if report.violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_threshold(c: &Common) -> Result<(), Failure> {
    let th = solve_threshold()?;
    let report = ThresholdReport {
        schema: SCHEMA,
        x: Constants::get().x,
        t: th.t,
        lemma51_side: th.lemma51_side,
        lemma53_side: th.lemma53_side,
    };
    let body = match c.format.unwrap_or(Format::Text) {
        Format::Text => format!(
            "t* = {:.6}\nlemma51_side = {:.6}\nlemma53_side = {:.6}\n",
            th.t, th.lemma51_side, th.lemma53_side
        ),
        Format::Json => json(&report),
        Format::Csv => csv_rows(std::slice::from_ref(&report))?,
    };
    emit(c, &body)
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(j) = cli.common.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j as usize)
            .build_global()
            .map_err(|e| Failure::Input(e.to_string()))?;
    }
    let c = &cli.common;
    match cli.command {
        Command::Count { input, what } => cmd_count(c, &input, what),
        Command::Verify { suite, max_n } => cmd_verify(c, suite, max_n),
        Command::Gen {
            shape,
            size,
            seed,
            scale,
            wrap,
        } => {
            let shape = match shape {
                ShapeArg::Convex => Shape::Convex,
                ShapeArg::DoubleChain => Shape::DoubleChain,
                ShapeArg::DoubleCircle => Shape::DoubleCircle,
                ShapeArg::Random => Shape::Random,
            };
            cmd_gen(
                c,
                GeneratorSpec {
                    shape,
                    size,
                    seed,
                    scale,
                },
                wrap,
            )
        }
        Command::Bounds { input } => cmd_bounds(c, &input),
        Command::Threshold => cmd_threshold(c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("budget exceeded: {m}");
            ExitCode::from(3)
        }
    }
}
