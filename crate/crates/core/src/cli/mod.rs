//! The `chromacy` command line.
//!
//! Exit codes: 0 for SAT, PERIODIC or plain success; 1 for UNSAT or a
//! rejected check; 2 for UNKNOWN; 3 for usage and input errors; 4 for I/O
//! failures. Diagnostics are a single line on stderr.

mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::Error;
use crate::format;
use crate::lattice::{RestrictionArray, Space, Window};
use crate::numbounds;
use crate::solver::{self, Certificate, SearchConfig, Verdict};
use crate::stochastic::moser_tardos;
use crate::witnesses::{self, PointSet, WitnessKind};

pub use report::{report_paper_table, BoundsTable, TableRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNSAT: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "chromacy",
    version,
    about = "Colorings of lattices under per-color distance restrictions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a window admits a coloring (exact search).
    Solve(SolveArgs),
    /// Search for a periodic coloring of Z.
    Period(PeriodArgs),
    /// Randomized resampling search on a window.
    Mt(MtArgs),
    /// Write a few-distance point set.
    Witness(WitnessArgs),
    /// Distinct distances of a point set.
    Spectrum(PointsArgs),
    /// Clique lower bound from a point set.
    Bound(BoundArgs),
    /// Closed-form upper bounds.
    Bounds(BoundsArgs),
    /// Lattice points on a sphere of squared radius d.
    Shell(ShellArgs),
    /// Membership of sqrt(d) in R_N.
    Rn(RnArgs),
    /// Property (*) for a 1xm array over Z^2.
    Star(StarArgs),
    /// Project a vector array to Z along a functional.
    Project(ProjectArgs),
    /// Lift a periodic coloring of Z to a window of Z^n.
    Lift(LiftArgs),
    /// Scale a rational array on the line to integers.
    Scale(ScaleArgs),
    /// Re-check a certificate.
    Verify(VerifyArgs),
    /// Recompute the table of bounds and witnesses.
    Report(OutputArgs),
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Write the resulting document to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the resulting document on stdout instead of a summary.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// Node budget for the exact search.
    #[arg(long, default_value_t = 1_000_000_000)]
    nodes: u64,
    /// Wall-clock budget in seconds (0 disables the limit).
    #[arg(long, default_value_t = 600.0)]
    time: f64,
    /// Disable symmetry breaking among identical columns.
    #[arg(long)]
    no_symmetry: bool,
}

impl SearchArgs {
    fn config(&self) -> Result<SearchConfig, Failure> {
        if !(self.time >= 0.0 && self.time.is_finite()) {
            return Err(Failure::usage(
                "--time must be a nonnegative number of seconds",
            ));
        }
        Ok(SearchConfig {
            node_budget: self.nodes,
            time_budget: (self.time > 0.0).then(|| Duration::from_secs_f64(self.time)),
            symmetry_breaking: !self.no_symmetry,
        })
    }
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long)]
    array: PathBuf,
    /// LO..HI, inclusive; once per dimension, or once for all of them.
    #[arg(long, required = true, allow_hyphen_values = true)]
    window: Vec<String>,
    #[command(flatten)]
    search: SearchArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct PeriodArgs {
    #[arg(long)]
    array: PathBuf,
    #[arg(long)]
    pmax: usize,
    /// Points in the fallback window 0..N-1 (default: 10 x largest entry).
    #[arg(long)]
    fallback: Option<usize>,
    #[command(flatten)]
    search: SearchArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct MtArgs {
    #[arg(long)]
    array: PathBuf,
    #[arg(long, required = true, allow_hyphen_values = true)]
    window: Vec<String>,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 100_000)]
    cap: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct KindArgs {
    /// path, polygon, hypercube, icosahedron or subsets.
    #[arg(long)]
    kind: String,
    #[arg(long)]
    k: Option<usize>,
    /// Ground set size minus one, for subsets.
    #[arg(long)]
    n: Option<usize>,
}

impl KindArgs {
    fn kind(&self) -> Result<WitnessKind, Failure> {
        let k = || {
            self.k
                .ok_or_else(|| Failure::usage(format!("--kind {} needs --k", self.kind)))
        };
        Ok(match self.kind.as_str() {
            "path" => WitnessKind::Path { k: k()? },
            "polygon" => WitnessKind::Polygon { k: k()? },
            "hypercube" => WitnessKind::Hypercube { k: k()? },
            "icosahedron" => WitnessKind::Icosahedron,
            "subsets" => WitnessKind::Subsets {
                n: self
                    .n
                    .ok_or_else(|| Failure::usage("--kind subsets needs --n"))?,
                k: k()?,
            },
            other => return Err(Failure::usage(format!("unknown witness kind {other:?}"))),
        })
    }
}

#[derive(Args, Debug)]
struct WitnessArgs {
    #[command(flatten)]
    kind: KindArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct PointSource {
    /// A point-set file.
    #[arg(long)]
    points: Option<PathBuf>,
    /// A built-in construction (with --k and --n as needed).
    #[arg(long)]
    kind: Option<String>,
}

#[derive(Args, Debug)]
struct PointsArgs {
    #[command(flatten)]
    source: PointSource,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

impl PointsArgs {
    fn load(&self) -> Result<PointSet, Failure> {
        match (&self.source.points, &self.source.kind) {
            (Some(path), _) => Ok(format::parse_points(&read(path)?)?),
            (None, Some(kind)) => {
                let kind = KindArgs {
                    kind: kind.clone(),
                    k: self.k,
                    n: self.n,
                }
                .kind()?;
                Ok(witnesses::make_witness(kind)?)
            }
            (None, None) => Err(Failure::usage("give --points or --kind")),
        }
    }
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[command(flatten)]
    points: PointsArgs,
    /// Also write the all-distances witness array here.
    #[arg(long)]
    array_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long)]
    k: u64,
    /// Chromatic number of the ambient space, for the symmetric bound.
    #[arg(long)]
    chi: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct ShellArgs {
    #[arg(long)]
    n: usize,
    /// Squared distance.
    #[arg(long)]
    d: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct RnArgs {
    #[arg(long)]
    n: usize,
    /// The shell-size bound N.
    #[arg(long)]
    cap: u64,
    /// Squared distance.
    #[arg(long)]
    d: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct StarArgs {
    #[arg(long)]
    array: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ProjectArgs {
    #[arg(long)]
    vectors: PathBuf,
    /// Comma-separated integer functional.
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct LiftArgs {
    #[arg(long)]
    vectors: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, required = true, allow_hyphen_values = true)]
    window: Vec<String>,
    /// Largest period tried for the projected array.
    #[arg(long)]
    pmax: usize,
    #[command(flatten)]
    search: SearchArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct ScaleArgs {
    #[arg(long)]
    array: PathBuf,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    cert: PathBuf,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::usage(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_IO,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure {
        code: EXIT_IO,
        message: format!("cannot write {}: {e}", path.display()),
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

struct Io<'a> {
    stdout: &'a mut dyn Write,
}

impl Io<'_> {
    fn line(&mut self, text: &str) -> Result<(), Failure> {
        writeln!(self.stdout, "{text}").map_err(|e| Failure {
            code: EXIT_IO,
            message: format!("cannot write to stdout: {e}"),
        })
    }

    fn raw(&mut self, text: &str) -> Result<(), Failure> {
        self.stdout.write_all(text.as_bytes()).map_err(|e| Failure {
            code: EXIT_IO,
            message: format!("cannot write to stdout: {e}"),
        })
    }

    /// Write the document to `--out` if given; print it with `--json`,
    /// otherwise print the summary.
    fn emit(&mut self, output: &OutputArgs, doc: &str, summary: &str) -> Result<(), Failure> {
        if let Some(path) = &output.out {
            write_file(path, doc)?;
        }
        if output.json {
            self.raw(doc)
        } else {
            self.line(summary)
        }
    }
}

fn parse_range(text: &str) -> Result<(i64, i64), Failure> {
    let bad = || Failure::usage(format!("bad window {text:?}, expected LO..HI"));
    let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
    let lo = lo.trim().parse().map_err(|_| bad())?;
    let hi = hi.trim().parse().map_err(|_| bad())?;
    Ok((lo, hi))
}

fn parse_window(space: Space, specs: &[String]) -> Result<Window, Failure> {
    let ranges = specs
        .iter()
        .map(|s| parse_range(s))
        .collect::<Result<Vec<_>, _>>()?;
    let ranges = match ranges.len() {
        1 => vec![ranges[0]; space.dim()],
        n if n == space.dim() => ranges,
        n => {
            return Err(Failure::usage(format!(
                "{n} --window ranges given for a {}-dimensional space",
                space.dim()
            )))
        }
    };
    Ok(Window::new(
        space,
        ranges.iter().map(|r| r.0).collect(),
        ranges.iter().map(|r| r.1).collect(),
    )?)
}

fn parse_lambda(text: &str) -> Result<Vec<i64>, Failure> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Failure::usage(format!("bad --lambda {text:?}")))
        })
        .collect()
}

fn load_array(path: &Path) -> Result<RestrictionArray, Failure> {
    Ok(format::parse_array(&read(path)?)?)
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Sat | Verdict::Periodic => EXIT_OK,
        Verdict::Unsat => EXIT_UNSAT,
        Verdict::Unknown => EXIT_UNKNOWN,
    }
}

fn summarize(cert: &Certificate) -> String {
    let mut s = format!("{} {}", cert.verdict, cert.array);
    if let Some(w) = &cert.window {
        s += &format!(" on window {:?}..{:?}", w.lo(), w.hi());
    }
    if let Some(g) = cert.periodic_coloring() {
        s += &format!(" with period {} residues {:?}", g.period(), g.residues());
    }
    s += &format!(" ({} nodes)", cert.nodes);
    if let solver::Payload::Budget(b) = &cert.payload {
        s += &format!(": {}", b.reason);
    }
    s
}

fn emit_certificate(io: &mut Io, output: &OutputArgs, cert: &Certificate) -> Result<i32, Failure> {
    io.emit(output, &format::write_certificate(cert), &summarize(cert))?;
    Ok(verdict_code(cert.verdict))
}

fn dispatch(command: Command, io: &mut Io) -> Result<i32, Failure> {
    match command {
        Command::Solve(a) => {
            let array = load_array(&a.array)?;
            let window = parse_window(*array.space(), &a.window)?;
            let cert = solver::solve_window(&window, &array, &a.search.config()?)?;
            emit_certificate(io, &a.output, &cert)
        }
        Command::Period(a) => {
            let array = load_array(&a.array)?;
            let cert = solver::search_periods(&array, a.pmax, &a.search.config()?, a.fallback)?;
            emit_certificate(io, &a.output, &cert)
        }
        Command::Mt(a) => {
            let array = load_array(&a.array)?;
            let window = parse_window(*array.space(), &a.window)?;
            let (coloring, stats) = moser_tardos(&window, &array, a.seed, a.cap)?;
            let cert = match coloring {
                Some(c) => Certificate::heuristic_sat(array, c, stats),
                None => {
                    let mut cert = Certificate::unknown(
                        array,
                        Some(window),
                        solver::BudgetReport {
                            reason: "resample cap reached".into(),
                            nodes: 0,
                            node_budget: None,
                            time_budget_secs: None,
                            resamples: Some(stats.resamples),
                            cap: Some(stats.cap),
                        },
                    );
                    cert.seed = Some(stats.seed);
                    cert.resample = Some(stats);
                    cert
                }
            };
            emit_certificate(io, &a.output, &cert)
        }
        Command::Witness(a) => {
            let kind = a.kind.kind()?;
            let set = witnesses::make_witness(kind)?;
            let summary = format!("{kind}: {} points in dimension {}", set.len(), set.dim());
            io.emit(&a.output, &format::write_points(&set), &summary)?;
            Ok(EXIT_OK)
        }
        Command::Spectrum(a) => {
            let set = a.load()?;
            let spectrum = witnesses::distance_spectrum(&set)?;
            let classes: Vec<Value> = spectrum
                .classes
                .iter()
                .map(|(v, n)| json!({"squared_distance": v.to_string(), "pairs": n}))
                .collect();
            let doc = json!({
                "format": "chromacy-spectrum/1",
                "points": set.len(),
                "classes": classes,
            });
            let summary = format!(
                "{} points, {} distinct distances over {} pairs",
                set.len(),
                spectrum.class_count(),
                spectrum.pair_count()
            );
            io.emit(&a.output, &pretty(&doc), &summary)?;
            Ok(EXIT_OK)
        }
        Command::Bound(a) => {
            let set = a.points.load()?;
            let b = witnesses::clique_bound(&set)?;
            if let Some(path) = &a.array_out {
                match &b.witness {
                    Some(w) => write_file(path, &format::write_array(w))?,
                    None => {
                        return Err(Failure::usage(
                            "point set is not a lattice set; no witness array to write",
                        ))
                    }
                }
            }
            let doc = json!({
                "format": "chromacy-bound/1",
                "k": b.k,
                "lower_bound": b.bound,
                "witness": b.witness.as_ref().map(format::array_to_value),
            });
            let summary = format!("k = {}, upper chromatic number >= {}", b.k, b.bound);
            io.emit(&a.points.output, &pretty(&doc), &summary)?;
            Ok(EXIT_OK)
        }
        Command::Bounds(a) => {
            let reports = numbounds::bound_reports(a.k, a.chi)?;
            let rows: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "quantity": r.quantity,
                        "k": r.k,
                        "chi": r.chi,
                        "value": r.value.to_string(),
                    })
                })
                .collect();
            let summary = reports
                .iter()
                .map(|r| format!("{} (k={}) = {}", r.quantity, r.k, r.value))
                .collect::<Vec<_>>()
                .join("\n");
            let doc = json!({"format": "chromacy-bounds/1", "bounds": rows});
            io.emit(&a.output, &pretty(&doc), &summary)?;
            Ok(EXIT_OK)
        }
        Command::Shell(a) => {
            let count = numbounds::shell_count(a.n, a.d)?;
            if a.json {
                io.raw(&pretty(&json!({"n": a.n, "d": a.d, "count": count})))?;
            } else {
                io.line(&count.to_string())?;
            }
            Ok(EXIT_OK)
        }
        Command::Rn(a) => {
            let count = numbounds::shell_count(a.n, a.d)?;
            let member = count <= a.cap;
            if a.json {
                io.raw(&pretty(&json!({
                    "n": a.n, "d": a.d, "cap": a.cap, "count": count, "member": member
                })))?;
            } else {
                io.line(&format!(
                    "sqrt({}) {} R_{} in Z^{} (shell count {count})",
                    a.d,
                    if member { "is in" } else { "is not in" },
                    a.cap,
                    a.n
                ))?;
            }
            Ok(if member { EXIT_OK } else { EXIT_UNSAT })
        }
        Command::Star(a) => {
            let array = load_array(&a.array)?;
            let holds = numbounds::star_property(&array)?;
            if a.json {
                io.raw(&pretty(
                    &json!({"array": format::array_to_value(&array), "star": holds}),
                ))?;
            } else {
                io.line(&format!(
                    "property (*) {}",
                    if holds { "holds" } else { "fails" }
                ))?;
            }
            Ok(if holds { EXIT_OK } else { EXIT_UNSAT })
        }
        Command::Project(a) => {
            let vectors = format::parse_vectors(&read(&a.vectors)?)?;
            let lambda = parse_lambda(&a.lambda)?;
            let array = witnesses::wepsic_project(&vectors, &lambda)?;
            io.emit(&a.output, &format::write_array(&array), &array.to_string())?;
            Ok(EXIT_OK)
        }
        Command::Lift(a) => {
            let vectors = format::parse_vectors(&read(&a.vectors)?)?;
            let lambda = parse_lambda(&a.lambda)?;
            let space = Space::euclidean(vectors.dim())?;
            let window = parse_window(space, &a.window)?;
            let projected = witnesses::wepsic_project(&vectors, &lambda)?;
            let config = a.search.config()?;
            let mut found = None;
            for p in 1..=a.pmax {
                if let Some(g) = solver::solve_periodic_with(&projected, p, &config)?.coloring {
                    found = Some(g);
                    break;
                }
            }
            let Some(g) = found else {
                io.line(&format!(
                    "UNKNOWN no periodic coloring of {projected} up to period {}",
                    a.pmax
                ))?;
                return Ok(EXIT_UNKNOWN);
            };
            let lift = witnesses::wepsic_lift(&g, &lambda, &window, &vectors)?;
            let summary = format!(
                "lifted period-{} coloring {:?}: {} violations",
                g.period(),
                g.residues(),
                lift.violations.len()
            );
            io.emit(
                &a.output,
                &pretty(&format::lift_to_value(&lift, &lambda)),
                &summary,
            )?;
            Ok(if lift.violations.is_empty() {
                EXIT_OK
            } else {
                EXIT_UNSAT
            })
        }
        Command::Scale(a) => {
            let array = load_array(&a.array)?;
            let (scaled, factor) = numbounds::scale_to_integers(&array)?;
            io.emit(
                &a.output,
                &format::write_array(&scaled),
                &format!("scaled by {factor}: {scaled}"),
            )?;
            Ok(EXIT_OK)
        }
        Command::Verify(a) => {
            let cert = format::parse_certificate(&read(&a.cert)?)?;
            if solver::verify_certificate(&cert)? {
                io.line(&format!("valid {} certificate", cert.verdict))?;
                Ok(EXIT_OK)
            } else {
                io.line(&format!("rejected {} certificate", cert.verdict))?;
                Ok(EXIT_UNSAT)
            }
        }
        Command::Report(output) => {
            let table = report_paper_table();
            let doc = serde_json::to_value(&table).expect("plain struct");
            io.emit(&output, &pretty(&doc), table.to_string().trim_end())?;
            Ok(if table.all_pass() {
                EXIT_OK
            } else {
                EXIT_UNSAT
            })
        }
    }
}

/// Parse `args` (program name first) and run the command, writing results
/// to `stdout` and diagnostics to `stderr`. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let text = e.to_string();
                    let head = text
                        .split("\n\nUsage:")
                        .next()
                        .unwrap_or("invalid arguments");
                    let line = head.split_whitespace().collect::<Vec<_>>().join(" ");
                    let _ = writeln!(stderr, "{line}");
                    EXIT_USAGE
                }
            };
        }
    };
    let mut io = Io { stdout };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

pub fn main() -> i32 {
    run(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}
