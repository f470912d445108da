mod args;
mod dataset;
mod report;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schwarz_gap_core::classical::{
    compare_all, evaluate_bound, fit_box, fit_params, fit_ratio, BoundReport, BoxBounds, ConvexSplit, Family, Params,
    RatioBounds, RatioDirection,
};
use schwarz_gap_core::inner::DEFAULT_REL_TOL;
use schwarz_gap_core::oracle::{classical_validity_suite, sharpness_search, verify_identity_suite, FuzzConfig};
use schwarz_gap_core::{
    certify, extremal_witness, fit_disk, schwarz_gap, DiskBound, FitMode, Mode, Scalar, Tolerance,
};

use dataset::{Dataset, Format};
use report::Report;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("line {line}: {msg}")]
    Parse { line: u64, msg: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] schwarz_gap_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok,
    HypothesisFailed,
    Violation,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::HypothesisFailed => 1,
            Status::Violation => 3,
        }
    }

    fn of(certs: &[BoundReport]) -> Self {
        if certs.iter().any(BoundReport::is_violation) {
            Status::Violation
        } else if certs.iter().any(|c| c.params.is_some() && !c.hypothesis_ok) {
            Status::HypothesisFailed
        } else {
            Status::Ok
        }
    }
}

#[derive(Parser)]
#[command(name = "schwarz-gap", version, about = "Cauchy-Schwarz gap and reverse-inequality certificates")]
struct Cli {
    /// Relative tolerance for hypothesis and bound checks.
    #[arg(long, global = true, env = "SCHWARZ_GAP_RELTOL", default_value_t = DEFAULT_REL_TOL)]
    rel_tol: f64,

    /// Also print a readable table on standard error.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Schwarz gap, norms and inner product.
    Gap(Input),
    /// One certificate for a family, fitting its constants if none are given.
    Bound(BoundArgs),
    /// Every applicable family with fitted constants, ranked by tightness.
    Compare(Input),
    /// Fitted constants only.
    Fit(FitArgs),
    /// A dataset that attains the quarter bound for the disk [a, A].
    Witness(WitnessArgs),
    /// Randomized oracle suites.
    Fuzz(FuzzArgs),
}

#[derive(Args)]
struct Input {
    /// Dataset path; standard input when omitted or '-'.
    path: Option<PathBuf>,

    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct BoundArgs {
    #[command(flatten)]
    input: Input,

    #[arg(long)]
    family: String,

    /// Disk end point a (theorem21); accepts complex values like 1-2i.
    #[arg(long = "a", allow_hyphen_values = true)]
    a: Option<String>,

    /// Disk end point A (theorem21).
    #[arg(long = "A", allow_hyphen_values = true)]
    big_a: Option<String>,

    /// Lower ratio bound.
    #[arg(long = "m")]
    m: Option<f64>,

    /// Upper ratio bound.
    #[arg(long = "M")]
    big_m: Option<f64>,

    /// Box bounds m1,M1,m2,M2.
    #[arg(long = "box")]
    bx: Option<String>,

    /// Convex split for gen-diaz-metcalf (defaults to 1/2, 1/2).
    #[arg(long)]
    u: Option<f64>,

    #[arg(long)]
    v: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FitKind {
    RealInterval,
    ComplexMinDisk,
    Box,
    Ratio,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Direction {
    AOverB,
    BOverA,
}

#[derive(Args)]
struct FitArgs {
    #[command(flatten)]
    input: Input,

    /// Defaults to real-interval for real data, complex-min-disk otherwise.
    #[arg(long, value_enum)]
    mode: Option<FitKind>,

    /// Ratio orientation for --mode ratio.
    #[arg(long, value_enum, default_value = "a-over-b")]
    direction: Direction,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(long)]
    dim: usize,

    #[arg(long = "a", allow_hyphen_values = true)]
    a: String,

    #[arg(long = "A", allow_hyphen_values = true)]
    big_a: String,

    /// Random y from this seed; y = e1 when omitted.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Suite {
    Identity,
    Sharpness,
    Classical,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DataMode {
    Real,
    Complex,
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,

    #[arg(long, default_value_t = 1000)]
    trials: usize,

    #[arg(long, value_enum, default_value = "identity")]
    suite: Suite,

    #[arg(long, value_enum, default_value = "real")]
    mode: DataMode,

    #[arg(long, default_value_t = 2)]
    dim_min: usize,

    #[arg(long, default_value_t = 8)]
    dim_max: usize,

    #[arg(long, default_value_t = 0.1)]
    mag_lo: f64,

    #[arg(long, default_value_t = 10.0)]
    mag_hi: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Status, CliError> {
    let tol = Tolerance::new(cli.rel_tol)?;
    let (status, out) = match &cli.command {
        Command::Gap(input) => cmd_gap(input)?,
        Command::Bound(b) => cmd_bound(b, tol)?,
        Command::Compare(input) => cmd_compare(input, tol)?,
        Command::Fit(f) => cmd_fit(f)?,
        Command::Witness(w) => {
            let data = cmd_witness(w)?;
            if cli.pretty {
                let cb = certify(&data.pair, &data.disk.expect("witness has a disk"), tol);
                eprintln!("gap {}  bound {}  tightness {}", cb.gap, cb.bound, cb.tightness);
            }
            (Status::Ok, Output::Dataset(data))
        }
        Command::Fuzz(f) => cmd_fuzz(f, tol)?,
    };
    let mut stdout = std::io::stdout().lock();
    match out {
        Output::Report(r) => {
            if cli.pretty {
                eprint!("{}", r.table());
            }
            writeln!(stdout, "{}", r.to_json())?;
        }
        Output::Dataset(d) => writeln!(stdout, "{}", d.to_json())?,
    }
    Ok(status)
}

enum Output {
    Report(Box<Report>),
    Dataset(Dataset),
}

fn report(status: Status, r: Report) -> (Status, Output) {
    (status, Output::Report(Box::new(r)))
}

fn read_input(input: &Input) -> Result<(Vec<u8>, Dataset), CliError> {
    let path = input.path.as_deref().filter(|p| p.as_os_str() != "-");
    let bytes = match path {
        Some(p) => std::fs::read(p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?,
        None => {
            let mut buf = Vec::new();
            std::io::stdin().read_to_end(&mut buf)?;
            buf
        }
    };
    let format = input.format.unwrap_or_else(|| dataset::detect_format(path, &bytes));
    let data = dataset::parse(&bytes, format)?;
    Ok((bytes, data))
}

fn cmd_gap(input: &Input) -> Result<(Status, Output), CliError> {
    let (bytes, data) = read_input(input)?;
    let g = schwarz_gap(&data.pair);
    let mut r = Report::new("gap", Some(&bytes));
    r.gap = Some(g.gap);
    r.gap_report = Some(g);
    Ok(report(Status::Ok, r))
}

fn cmd_bound(b: &BoundArgs, tol: Tolerance) -> Result<(Status, Output), CliError> {
    let family: Family = b.family.parse()?;
    let (bytes, data) = read_input(&b.input)?;
    let mut r = Report::new("bound", Some(&bytes));
    r.gap = Some(schwarz_gap(&data.pair).gap);

    let given = [b.a.is_some() || b.big_a.is_some(), b.m.is_some() || b.big_m.is_some(), b.bx.is_some()];
    if given.iter().filter(|g| **g).count() > 1 {
        return Err(CliError::Usage("give at most one of --a/--A, --m/--M, --box".into()));
    }
    let params = if given[0] {
        let (Some(a), Some(big_a)) = (&b.a, &b.big_a) else {
            return Err(CliError::Usage("--a and --A go together".into()));
        };
        let a = args::parse_scalar(a).map_err(CliError::Usage)?;
        let big_a = args::parse_scalar(big_a).map_err(CliError::Usage)?;
        Params::Disk(DiskBound::new(a, big_a)?)
    } else if given[1] {
        let (Some(m), Some(big_m)) = (b.m, b.big_m) else {
            return Err(CliError::Usage("--m and --M go together".into()));
        };
        Params::Ratio(RatioBounds::new(m, big_m)?)
    } else if let Some(s) = &b.bx {
        let [m1, big_m1, m2, big_m2] = args::parse_box(s).map_err(CliError::Usage)?;
        Params::Box(BoxBounds::new(m1, big_m1, m2, big_m2)?)
    } else if let (Family::Theorem21, Some(disk)) = (family, data.disk) {
        Params::Disk(disk)
    } else {
        let p = fit_params(family, &data.pair)?;
        r.fitted_params = Some(serde_json::to_value(p).expect("params serialize"));
        p
    };

    let split = match (b.u, b.v) {
        (None, None) => (family == Family::GenDiazMetcalf).then(ConvexSplit::half),
        (Some(u), Some(v)) => Some(ConvexSplit::new(u, v)?),
        (Some(u), None) => Some(ConvexSplit::new(u, 1.0 - u)?),
        (None, Some(v)) => Some(ConvexSplit::new(1.0 - v, v)?),
    };

    let cert = evaluate_bound(family, &data.pair, &params, split, tol)?;
    let status = Status::of(std::slice::from_ref(&cert));
    if let Some(reason) = &cert.reason {
        r.warnings.push(format!("{family}: {reason}"));
    }
    r.set_certificates(vec![cert]);
    Ok(report(status, r))
}

fn cmd_compare(input: &Input, tol: Tolerance) -> Result<(Status, Output), CliError> {
    let (bytes, data) = read_input(input)?;
    let mut r = Report::new("compare", Some(&bytes));
    r.gap = Some(schwarz_gap(&data.pair).gap);
    let certs = match compare_all(&data.pair, tol) {
        Ok(c) => c,
        Err(schwarz_gap_core::Error::InvalidInput(why)) => {
            r.warnings
                .push(format!("classical families skipped ({why}); only theorem21 evaluated"));
            let params = data.disk.map(Params::Disk).map_or_else(|| fit_params(Family::Theorem21, &data.pair), Ok)?;
            vec![evaluate_bound(Family::Theorem21, &data.pair, &params, None, tol)?]
        }
        Err(e) => return Err(e.into()),
    };
    for c in certs.iter().filter(|c| c.params.is_none()) {
        if let Some(reason) = &c.reason {
            r.warnings.push(format!("{}: {reason}", c.family));
        }
    }
    let status = Status::of(&certs);
    r.set_certificates(certs);
    Ok(report(status, r))
}

fn cmd_fit(f: &FitArgs) -> Result<(Status, Output), CliError> {
    let (bytes, data) = read_input(&f.input)?;
    let kind = f.mode.unwrap_or(match data.pair.mode() {
        Mode::Real => FitKind::RealInterval,
        Mode::Complex => FitKind::ComplexMinDisk,
    });
    let params = match kind {
        FitKind::RealInterval => Params::Disk(fit_disk(&data.pair, FitMode::RealInterval)?),
        FitKind::ComplexMinDisk => Params::Disk(fit_disk(&data.pair, FitMode::ComplexMinDisk)?),
        FitKind::Box => Params::Box(fit_box(&data.pair)?),
        FitKind::Ratio => {
            let dir = match f.direction {
                Direction::AOverB => RatioDirection::AOverB,
                Direction::BOverA => RatioDirection::BOverA,
            };
            Params::Ratio(fit_ratio(&data.pair, dir)?)
        }
    };
    let mut r = Report::new("fit", Some(&bytes));
    r.fitted_params = Some(serde_json::to_value(params).expect("params serialize"));
    Ok(report(Status::Ok, r))
}

fn cmd_witness(w: &WitnessArgs) -> Result<Dataset, CliError> {
    let a = args::parse_scalar(&w.a).map_err(CliError::Usage)?;
    let big_a = args::parse_scalar(&w.big_a).map_err(CliError::Usage)?;
    let disk = DiskBound::new(a, big_a)?;
    if w.dim == 0 {
        return Err(CliError::Usage("--dim must be positive".into()));
    }
    let y: Vec<Scalar> = match w.seed {
        None => (0..w.dim).map(|i| Scalar::new(f64::from(u8::from(i == 0)), 0.0)).collect(),
        Some(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let complex = !disk.is_real();
            (0..w.dim)
                .map(|_| {
                    let im = if complex { rng.gen_range(-1.0..=1.0) } else { 0.0 };
                    Scalar::new(rng.gen_range(-1.0..=1.0), im)
                })
                .collect()
        }
    };
    let pair = extremal_witness(&y, &vec![1.0; w.dim], &disk)?;
    Ok(Dataset { pair, disk: Some(disk) })
}

fn cmd_fuzz(f: &FuzzArgs, tol: Tolerance) -> Result<(Status, Output), CliError> {
    let mode = match f.mode {
        DataMode::Real => Mode::Real,
        DataMode::Complex => Mode::Complex,
    };
    let cfg = FuzzConfig::new(f.seed, f.trials, (f.dim_min, f.dim_max), (f.mag_lo, f.mag_hi), mode)?;
    let mut r = Report::new("fuzz", None);
    let (status, value) = match f.suite {
        Suite::Identity => {
            let s = verify_identity_suite(&cfg, tol)?;
            let status = if s.passed() { Status::Ok } else { Status::Violation };
            (status, serde_json::to_value(s))
        }
        Suite::Sharpness => {
            let s = sharpness_search(&cfg, tol)?;
            let status = if s.over_ceiling > 0 { Status::Violation } else { Status::Ok };
            (status, serde_json::to_value(s))
        }
        Suite::Classical => {
            if mode == Mode::Complex {
                r.warnings.push("classical families are real-only; ran in real mode".into());
            }
            let real = FuzzConfig { mode: Mode::Real, ..cfg };
            let s = classical_validity_suite(&real, tol)?;
            let status = if s.iter().any(|f| f.violations > 0) {
                Status::Violation
            } else if s.iter().any(|f| f.hypothesis_failures > 0) {
                Status::HypothesisFailed
            } else {
                Status::Ok
            };
            (status, serde_json::to_value(s))
        }
    };
    r.fuzz = Some(value.expect("summary serializes"));
    Ok(report(status, r))
}
