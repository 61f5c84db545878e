//! The `cff` command line: construct, verify, bounds, simulate, oracle.
//!
//! Exit statuses: 0 success, 1 I/O or malformed file, 2 usage, 3
//! precondition, 4 property failure, 5 budget or cap exceeded.

use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cff::bounds::{bound_report, min_n_bruteforce, BoundQuery, DEFAULT_C};
use cff::construct::{
    oa_construct, oa_to_packing, packing_to_cff, random_cff, random_uniform_cff, recursive_cff,
    rs_cff, sperner_cff, trivial_ds, Construction, RandomCffConfig, RandomUniformConfig, RsConfig,
};
use cff::grouptest::{simulate, SimulationConfig};
use cff::verify::{is_cff_with_budget, max_r_with_budget, DEFAULT_BUDGET};
use cff::{
    certify, is_cff_sampled, parse_matrix, write_matrix, Certificate, CffParams, Claim, Error,
    Verdict, Violation,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_PROPERTY: i32 = 4;
pub const EXIT_BUDGET: i32 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "cff",
    version,
    about = "Cover-free families: construct, verify, bound, simulate"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a family, verify it, and write it to a matrix file
    Construct(ConstructArgs),
    /// Check the claim in a matrix file, or report the largest r it supports
    Verify(VerifyArgs),
    /// Evaluate lower bounds on N and, given N, upper bounds on T and the rate
    Bounds(BoundsArgs),
    /// Run random group-testing trials with a matrix file as pooling design
    Simulate(SimulateArgs),
    /// Exhaustive search for the least N of a tiny (w,r)-CFF
    Oracle(OracleArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Trivial,
    Sperner,
    Oa,
    Rs,
    ShfRecursive,
    Random,
    RandomUniform,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    method: Method,
    #[arg(long)]
    out: PathBuf,
    /// Ground set size (trivial, sperner)
    #[arg(long)]
    n: Option<usize>,
    /// Disjunct profile (trivial)
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    j: Option<usize>,
    /// Field order (oa, rs)
    #[arg(long)]
    q: Option<usize>,
    /// OA strength (oa)
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    w: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    /// Code length (rs); defaults to q
    #[arg(long)]
    length: Option<usize>,
    /// Shortening (rs)
    #[arg(long)]
    s: Option<usize>,
    /// Recursion rounds (shf-recursive)
    #[arg(long)]
    k: Option<u32>,
    /// Number of blocks (random, random-uniform)
    #[arg(long = "T")]
    blocks: Option<usize>,
    /// Point count override (random)
    #[arg(long = "N")]
    points: Option<usize>,
    /// Group size (random-uniform)
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    attempts: usize,
    /// Repeat every point this many times, raising d to copies(d+1)-1
    #[arg(long, default_value_t = 1)]
    copies: usize,
    /// Largest exhaustive check; above it a sampled check is used
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    file: PathBuf,
    #[arg(long)]
    w: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    /// Report the largest r with the file's (or the given) w and d
    #[arg(long, conflicts_with = "r")]
    max_r: bool,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Use this many random tuples instead of the exhaustive check
    #[arg(long, conflicts_with = "max_r")]
    sample: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long)]
    w: usize,
    #[arg(long)]
    r: usize,
    #[arg(long, default_value_t = 0)]
    d: usize,
    #[arg(long = "T")]
    blocks: usize,
    #[arg(long = "N")]
    points: Option<usize>,
    /// Uniform block size
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_C)]
    c: f64,
    #[arg(long, default_value_t = 0.0)]
    eps: f64,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest number of flipped pools per trial; defaults to d/2
    #[arg(long)]
    errors: Option<usize>,
    /// Decoding tolerance; defaults to d/2
    #[arg(long)]
    tolerance: Option<usize>,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long, required = true)]
    min_n: bool,
    #[arg(long)]
    w: usize,
    #[arg(long)]
    r: usize,
    #[arg(long = "T")]
    blocks: usize,
    #[arg(long, default_value_t = 8)]
    cap: usize,
}

/// A failure together with the exit status it maps to.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Display) -> Self {
        Self {
            code,
            message: message.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Precondition(_) | Error::ShapeMismatch { .. } | Error::UnsupportedField(_) => {
                EXIT_PRECONDITION
            }
            Error::AttemptsExhausted { .. } => EXIT_PROPERTY,
            Error::BudgetExceeded { .. }
            | Error::CapExceeded { .. }
            | Error::NonConvergence { .. } => EXIT_BUDGET,
            Error::Format { .. } => EXIT_IO,
        };
        Self::new(code, e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::new(EXIT_IO, e)
    }
}

type Outcome = std::result::Result<(), Failure>;

fn need<T>(value: Option<T>, flag: &str, method: &str) -> std::result::Result<T, Failure> {
    value.ok_or_else(|| Failure::new(EXIT_USAGE, format!("--method {method} requires --{flag}")))
}

fn show_set(items: &[usize]) -> String {
    let parts: Vec<String> = items.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn show_violation(v: &Violation) -> String {
    format!(
        "witness: B={} A={} residual={}",
        show_set(&v.b_rows),
        show_set(&v.a_rows),
        v.residual
    )
}

fn show_certificate(c: &Certificate) -> String {
    match c {
        Certificate::Exhaustive { tuples } => format!("exhaustive tuples={tuples}"),
        Certificate::Sampled { trials, seed } => format!("sampled trials={trials} seed={seed}"),
    }
}

/// Builds the requested family and returns it with the resolved parameters.
fn build(a: &ConstructArgs) -> std::result::Result<(Construction, String), Failure> {
    let name = a
        .method
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_owned();
    let m = name.as_str();
    let (c, resolved) = match a.method {
        Method::Trivial => {
            let (n, i, j) = (need(a.n, "n", m)?, need(a.i, "i", m)?, need(a.j, "j", m)?);
            (
                trivial_ds(n, i, j)?.into_cff(),
                format!("n={n} i={i} j={j}"),
            )
        }
        Method::Sperner => {
            let n = need(a.n, "n", m)?;
            (sperner_cff(n)?, format!("n={n}"))
        }
        Method::Oa => {
            let (q, t, d) = (need(a.q, "q", m)?, need(a.t, "t", m)?, a.d.unwrap_or(0));
            let packing = oa_to_packing(&oa_construct(q, t)?)?;
            (packing_to_cff(&packing, d)?, format!("q={q} t={t} d={d}"))
        }
        Method::Rs => {
            let (q, r, d, s) = (
                need(a.q, "q", m)?,
                need(a.r, "r", m)?,
                a.d.unwrap_or(0),
                a.s.unwrap_or(0),
            );
            let cfg = if s == 0 {
                RsConfig::new(q, a.length.unwrap_or(q), r, d)
            } else {
                RsConfig::shortened(q, s, r, d)
            };
            let u = cfg.dimension()?;
            let resolved = format!(
                "q={q} length={} r={r} d={d} s={s} dimension={}",
                cfg.length,
                u + s
            );
            (rs_cff(&cfg)?, resolved)
        }
        Method::ShfRecursive => {
            let (w, r, d, k) = (
                need(a.w, "w", m)?,
                need(a.r, "r", m)?,
                a.d.unwrap_or(0),
                a.k.unwrap_or(1),
            );
            (
                recursive_cff(w, r, d, k)?,
                format!("w={w} r={r} d={d} k={k}"),
            )
        }
        Method::Random => {
            let (w, r, d, t) = (
                need(a.w, "w", m)?,
                need(a.r, "r", m)?,
                a.d.unwrap_or(0),
                need(a.blocks, "T", m)?,
            );
            let cfg = RandomCffConfig {
                points: a.points,
                max_attempts: a.attempts,
                budget: a.budget,
                sample_trials: a.trials,
                ..RandomCffConfig::new(w, r, d, t, a.seed)
            };
            let out = random_cff(&cfg)?;
            let resolved = format!(
                "w={w} r={r} d={d} T={t} N={} seed={} attempts={} attempt={}",
                cfg.resolved_points(),
                a.seed,
                a.attempts,
                out.attempt
            );
            (out.construction, resolved)
        }
        Method::RandomUniform => {
            let (ell, w, r, t) = (
                need(a.ell, "ell", m)?,
                need(a.w, "w", m)?,
                need(a.r, "r", m)?,
                need(a.blocks, "T", m)?,
            );
            let cfg = RandomUniformConfig {
                max_attempts: a.attempts,
                budget: a.budget,
                sample_trials: a.trials,
                ..RandomUniformConfig::new(ell, w, r, t, a.seed)
            };
            let out = random_uniform_cff(&cfg)?;
            let resolved = format!(
                "ell={ell} w={w} r={r} T={t} seed={} attempts={} attempt={}",
                a.seed, a.attempts, out.attempt
            );
            (out.construction, resolved)
        }
    };
    let c = if a.copies > 1 {
        c.replicate_points(a.copies)?
    } else {
        c
    };
    Ok((c, format!("method={m} {resolved} copies={}", a.copies)))
}

fn construct(a: &ConstructArgs, err: &mut dyn Write) -> Outcome {
    let (c, resolved) = build(a)?;
    writeln!(
        err,
        "resolved: {resolved} budget={} trials={}",
        a.budget, a.trials
    )?;
    let (verdict, cert) = certify(&c.matrix, &c.params, a.budget, a.trials, a.seed)?;
    writeln!(err, "claim: {}", c.params)?;
    writeln!(err, "check: {}", show_certificate(&cert))?;
    if let Verdict::Fail(v) = verdict {
        return Err(Failure::new(
            EXIT_PROPERTY,
            format!("construction failed its own claim; {}", show_violation(&v)),
        ));
    }
    let claim = Claim::new(c.params.w, c.params.r, c.params.d);
    fs::write(&a.out, write_matrix(&c.matrix, claim))?;
    writeln!(err, "wrote {}", a.out.display())?;
    Ok(())
}

fn read_matrix(path: &PathBuf) -> std::result::Result<(cff::IncidenceMatrix, Claim), Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))?;
    Ok(parse_matrix(&text)?)
}

fn verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let (m, claim) = read_matrix(&a.file)?;
    let w = a.w.unwrap_or(claim.w);
    let d = a.d.unwrap_or(claim.d);
    if a.max_r {
        let w = w.max(1);
        let best = max_r_with_budget(&m, w, d, a.budget)?;
        writeln!(
            out,
            "max_r w={w} d={d} N={} T={}: {best}",
            m.num_points(),
            m.num_blocks()
        )?;
        return Ok(());
    }
    let r = a.r.unwrap_or(claim.r);
    if w == 0 || r == 0 {
        return Err(Failure::new(
            EXIT_USAGE,
            "file makes no claim; pass --w and --r, or --max-r",
        ));
    }
    let params = CffParams::for_matrix(&m, w, r, d);
    let (verdict, how) = match a.sample {
        Some(trials) => (
            is_cff_sampled(&m, &params, trials, a.seed)?,
            format!("sampled trials={trials} seed={}", a.seed),
        ),
        None => {
            let tuples = cff::verify::tuple_count(m.num_blocks(), w, r);
            (
                is_cff_with_budget(&m, &params, a.budget)?,
                format!("exhaustive tuples={tuples}"),
            )
        }
    };
    match verdict {
        Verdict::Pass => {
            writeln!(out, "PASS {params} ({how})")?;
            Ok(())
        }
        Verdict::Fail(v) => {
            writeln!(out, "FAIL {params} ({how})")?;
            writeln!(err, "{}", show_violation(&v))?;
            Err(Failure::new(
                EXIT_PROPERTY,
                format!("{params} does not hold"),
            ))
        }
    }
}

fn bounds(a: &BoundsArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    if a.c.is_nan() || a.c <= 0.0 {
        return Err(Failure::new(EXIT_USAGE, "--c must be positive"));
    }
    let query = BoundQuery {
        points: a.points,
        block_size: a.k,
        ..BoundQuery::new(a.w, a.r, a.d, a.blocks)
    };
    writeln!(
        err,
        "resolved: w={} r={} d={} T={} N={} k={} c={} eps={} tol={}",
        a.w,
        a.r,
        a.d,
        a.blocks,
        a.points.map_or("-".into(), |n| n.to_string()),
        a.k.map_or("-".into(), |k| k.to_string()),
        a.c,
        a.eps,
        a.tol
    )?;
    let report = bound_report::<f64>(query, a.c, a.eps, a.tol)?;
    let rows: Vec<[String; 4]> = report
        .entries
        .iter()
        .map(|e| {
            let flag = if e.best {
                "yes *"
            } else {
                e.applicability.label()
            };
            [
                e.name.to_string(),
                e.direction.to_string(),
                e.value.to_string(),
                flag.to_string(),
            ]
        })
        .collect();
    let header = ["bound", "direction", "value", "applicable"].map(String::from);
    let mut widths = [0; 4];
    for row in std::iter::once(&header).chain(&rows) {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    for row in std::iter::once(&header).chain(&rows) {
        let line = format!(
            "{:<w0$}  {:<w1$}  {:>w2$}  {}",
            row[0],
            row[1],
            row[2],
            row[3],
            w0 = widths[0],
            w1 = widths[1],
            w2 = widths[2]
        );
        writeln!(out, "{}", line.trim_end())?;
    }
    writeln!(
        out,
        "c = {}; * marks the strongest applicable bound in each direction",
        a.c
    )?;
    if let Some(path) = &a.csv {
        fs::write(path, report.to_csv())?;
        writeln!(err, "wrote {}", path.display())?;
    }
    Ok(())
}

fn simulate_cmd(a: &SimulateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let (m, claim) = read_matrix(&a.file)?;
    if !claim.is_claimed() {
        return Err(Failure::new(
            EXIT_USAGE,
            "simulation needs a file with a claimed (w,r;d) header",
        ));
    }
    let cfg = SimulationConfig {
        max_errors: a.errors,
        tolerance: a.tolerance,
        ..SimulationConfig::new(a.trials, a.seed)
    };
    writeln!(
        err,
        "resolved: r={} d={} trials={} seed={} errors={} tolerance={}",
        claim.r,
        claim.d,
        a.trials,
        a.seed,
        a.errors.unwrap_or(claim.d / 2),
        a.tolerance.unwrap_or(claim.d / 2)
    )?;
    let stats = simulate(&m, claim.r, claim.d, &cfg)?;
    writeln!(out, "trials {}", stats.trials)?;
    writeln!(out, "exact {}", stats.exact)?;
    writeln!(out, "recovery_rate {:.6}", stats.recovery_rate())?;
    writeln!(out, "false_positives {}", stats.false_positives)?;
    writeln!(out, "false_negatives {}", stats.false_negatives)?;
    Ok(())
}

fn oracle(a: &OracleArgs, out: &mut dyn Write) -> Outcome {
    let found = min_n_bruteforce(a.w, a.r, a.blocks, a.cap)?;
    writeln!(
        out,
        "min N for ({},{})-CFF with T={}: {}",
        a.w, a.r, a.blocks, found.n
    )?;
    out.write_all(write_matrix(&found.witness, Claim::new(a.w, a.r, 0)).as_bytes())?;
    Ok(())
}

/// Parses `args` (program name first) and runs the command, returning the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = match &cli.command {
        Command::Construct(a) => construct(a, err),
        Command::Verify(a) => verify(a, out, err),
        Command::Bounds(a) => bounds(a, out, err),
        Command::Simulate(a) => simulate_cmd(a, out, err),
        Command::Oracle(a) => oracle(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
