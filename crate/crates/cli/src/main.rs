//! Command-line front end: transform execution on CSV vectors, cost-table and
//! error-table emission, beam-response sweeps, benchmarks, and signal-flow
//! graph export.
//!
//! Exit codes: 0 success, 2 input/usage error, 3 spec/kind mismatch.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vanrad::{
    beam_responses, build_sfg, direct_bound, direct_count, direct_matvec, export_dot, export_json,
    fft_bound, formula_count, measure_forward_error, radix2_bound, transform, uniform_grid,
    Arithmetic, ErrorModel, TransformKind, VanError, VanSpec, WeightSign,
};

#[derive(Parser)]
#[command(name = "vanrad", version, about = "Radix-2 fast transforms for Vandermonde matrices on equally spaced circular nodes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a fast transform (or the direct path with --direct) to a CSV vector
    Transform(TransformArgs),
    /// Emit a gain-delay-block count table for N = 4..4096
    Tables(TablesArgs),
    /// Emit error bounds and measured forward errors per size
    Errors(ErrorsArgs),
    /// Sweep the multibeam frequency responses over a spatial grid
    Beams(BeamsArgs),
    /// Time the fast transform against the direct matrix-vector product
    Bench(BenchArgs),
    /// Export the signal flow graph of a clockwise transform
    Sfg(SfgArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Vanc,
    Vancc,
    Vancr,
    Vanccr,
}

impl KindArg {
    fn kind(self) -> TransformKind {
        match self {
            KindArg::Vanc => TransformKind::VanC,
            KindArg::Vancc => TransformKind::VanCC,
            KindArg::Vancr => TransformKind::VanCR,
            KindArg::Vanccr => TransformKind::VanCCR,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Markdown,
    Json,
    Dot,
}

/// Angle options shared by the spec-building commands. With --freq and --tau
/// the rotation is the delay phase 2π·f·τ; otherwise --theta is used as is.
#[derive(Args)]
struct AngleArgs {
    /// Rotation of the first node from the positive real axis, radians
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    theta: f64,
    /// Temporal frequency in Hz (with --tau, sets theta = 2π·freq·tau)
    #[arg(long, requires = "tau")]
    freq: Option<f64>,
    /// True time delay in seconds (with --freq)
    #[arg(long, requires = "freq")]
    tau: Option<f64>,
}

impl AngleArgs {
    fn theta(&self) -> f64 {
        match (self.freq, self.tau) {
            (Some(f), Some(tau)) => std::f64::consts::TAU * f * tau,
            _ => self.theta,
        }
    }
}

/// Builds the spec for a kind. The delay parametrization pins the node
/// direction to clockwise, so counterclockwise kinds are rejected under it;
/// with --theta the direction follows the kind.
fn build_spec(
    kind: TransformKind,
    n: usize,
    angle: &AngleArgs,
    radius: f64,
) -> Result<VanSpec<f64>, Failure> {
    let spec = match (angle.freq, angle.tau) {
        (Some(f), Some(tau)) => {
            if f < 0.0 || tau < 0.0 {
                return Err(Failure::usage("--freq and --tau must be nonnegative"));
            }
            VanSpec::from_delay(n, f, tau, radius)?
        }
        _ => VanSpec::new(n, angle.theta, radius, kind.direction())?,
    };
    kind.validate(&spec)?;
    Ok(spec)
}

#[derive(Args)]
struct TransformArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Matrix size, a power of two
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    angle: AngleArgs,
    /// Circle radius, >= 1
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Input CSV, one "re,im" per line, header optional
    #[arg(long)]
    input: PathBuf,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
    /// Use the O(N²) direct path instead of the fast kernel
    #[arg(long)]
    direct: bool,
}

#[derive(Args)]
struct TablesArgs {
    /// Which table: 1 complex counts, 2 real counts of the unit-circle
    /// kinds, 3 real counts of the radius-scaled kinds
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    table: u8,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ErrorsArgs {
    /// Largest size to report (sizes run N = 4..=n by doubling)
    #[arg(long, default_value_t = 1024)]
    n: usize,
    /// Unit roundoff used in the bound columns
    #[arg(long, default_value_t = 1e-15)]
    u: f64,
    /// Weight-error bound μ used in the bound columns
    #[arg(long, default_value_t = 1e-15)]
    mu: f64,
    /// Random trials per size for the measured columns
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Kind driving the measured columns
    #[arg(long, value_enum, default_value_t = KindArg::Vanc)]
    kind: KindArg,
    #[command(flatten)]
    angle: AngleArgs,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BeamsArgs {
    #[arg(long)]
    n: usize,
    /// Temporal frequency in Hz
    #[arg(long)]
    freq: f64,
    /// True time delay in seconds
    #[arg(long)]
    tau: f64,
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Number of spatial-frequency grid points over [-π, π]
    #[arg(long, default_value_t = 64)]
    grid: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Largest size (sizes run N = 2..=n by doubling)
    #[arg(long, default_value_t = 1024)]
    n: usize,
    /// Timed repetitions per size (median is reported)
    #[arg(long, default_value_t = 5)]
    trials: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[command(flatten)]
    angle: AngleArgs,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SfgArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    angle: AngleArgs,
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    #[arg(long, value_enum, default_value_t = Format::Dot)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<VanError> for Failure {
    fn from(e: VanError) -> Self {
        let code = match e {
            VanError::SpecMismatch { .. } | VanError::NotRealizable { .. } => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Transform(args) => cmd_transform(args),
        Command::Tables(args) => cmd_tables(args),
        Command::Errors(args) => cmd_errors(args),
        Command::Beams(args) => cmd_beams(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Sfg(args) => cmd_sfg(args),
    }
}

fn write_out(path: &Option<PathBuf>, content: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, content)?,
        None => std::io::stdout().write_all(content.as_bytes())?,
    }
    Ok(())
}

fn read_complex_csv(path: &Path) -> Result<Vec<Complex<f64>>, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split(',').map(str::trim);
        let parsed = match (parts.next(), parts.next(), parts.next()) {
            (Some(re), Some(im), None) => match (re.parse::<f64>(), im.parse::<f64>()) {
                (Ok(re), Ok(im)) => Some(Complex::new(re, im)),
                _ => None,
            },
            _ => None,
        };
        match parsed {
            Some(c) => out.push(c),
            // A single unparsable first line is treated as a header.
            None if lineno == 0 => continue,
            None => {
                return Err(Failure::usage(format!(
                    "{}:{}: expected \"re,im\"",
                    path.display(),
                    lineno + 1
                )))
            }
        }
    }
    if out.is_empty() {
        return Err(Failure::usage(format!("{}: no samples", path.display())));
    }
    Ok(out)
}

fn complex_csv(values: &[Complex<f64>]) -> String {
    let mut s = String::new();
    for c in values {
        s.push_str(&format!("{},{}\n", c.re, c.im));
    }
    s
}

fn cmd_transform(args: TransformArgs) -> Result<(), Failure> {
    let kind = args.kind.kind();
    let spec = build_spec(kind, args.n, &args.angle, args.radius)?;
    let z = read_complex_csv(&args.input)?;
    let y = if args.direct {
        direct_matvec(&z, &spec)?
    } else {
        transform(kind, &z, &spec)?
    };
    write_out(&args.output, &complex_csv(&y))
}

const TABLE_SIZES: [usize; 11] = [4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048, 4096];

fn render_rows(header: &[&str], rows: &[Vec<String>], format: Format) -> Result<String, Failure> {
    match format {
        Format::Csv => {
            let mut s = header.join(",");
            s.push('\n');
            for row in rows {
                s.push_str(&row.join(","));
                s.push('\n');
            }
            Ok(s)
        }
        Format::Markdown => {
            let mut s = format!("| {} |\n", header.join(" | "));
            s.push_str(&format!("|{}\n", "---|".repeat(header.len())));
            for row in rows {
                s.push_str(&format!("| {} |\n", row.join(" | ")));
            }
            Ok(s)
        }
        _ => Err(Failure::usage("this command supports csv or markdown output")),
    }
}

fn cmd_tables(args: TablesArgs) -> Result<(), Failure> {
    let (header, rows): (Vec<&str>, Vec<Vec<String>>) = match args.table {
        1 => {
            let header = vec!["n", "direct", "additions", "multiplications", "radius_multiplications"];
            let rows = TABLE_SIZES
                .iter()
                .map(|&n| {
                    let d = direct_count(n, Arithmetic::Complex);
                    let unit = formula_count(TransformKind::VanC, n, Arithmetic::Complex)?;
                    let scaled = formula_count(TransformKind::VanCR, n, Arithmetic::Complex)?;
                    Ok(vec![
                        n.to_string(),
                        d.additions.to_string(),
                        unit.additions.to_string(),
                        unit.multiplications.to_string(),
                        scaled.multiplications.to_string(),
                    ])
                })
                .collect::<Result<_, VanError>>()?;
            (header, rows)
        }
        table @ (2 | 3) => {
            let kind = if table == 2 { TransformKind::VanC } else { TransformKind::VanCR };
            let header = vec![
                "n",
                "direct_additions",
                "additions",
                "direct_multiplications",
                "multiplications",
            ];
            let rows = TABLE_SIZES
                .iter()
                .map(|&n| {
                    let d = direct_count(n, Arithmetic::Real);
                    let f = formula_count(kind, n, Arithmetic::Real)?;
                    Ok(vec![
                        n.to_string(),
                        d.additions.to_string(),
                        f.additions.to_string(),
                        d.multiplications.to_string(),
                        f.multiplications.to_string(),
                    ])
                })
                .collect::<Result<_, VanError>>()?;
            (header, rows)
        }
        _ => unreachable!("clap bounds the table number"),
    };
    let text = render_rows(&header, &rows, args.format)?;
    write_out(&args.output, &text)
}

fn cmd_errors(args: ErrorsArgs) -> Result<(), Failure> {
    if args.n < 4 || !args.n.is_power_of_two() {
        return Err(Failure::usage("--n must be a power of two, at least 4"));
    }
    let kind = args.kind.kind();
    let model = ErrorModel::new(args.u, args.mu, args.mu)?;
    let sign = match kind.direction() {
        vanrad::Direction::Counterclockwise => WeightSign::Plus,
        vanrad::Direction::Clockwise => WeightSign::Minus,
    };
    let mut s = String::from("n,radix2_bound,fft_bound,direct_bound,measured_max,measured_mean\n");
    let mut n = 4usize;
    while n <= args.n {
        let spec = build_spec(kind, n, &args.angle, 1.0)?;
        let summary = measure_forward_error(kind, &spec, args.trials, args.seed)?;
        s.push_str(&format!(
            "{},{:e},{:e},{:e},{:e},{:e}\n",
            n,
            radix2_bound(n, &model, sign)?,
            fft_bound(n, &model)?,
            direct_bound(n, &model)?,
            summary.max_rel_error,
            summary.mean_rel_error,
        ));
        n *= 2;
    }
    write_out(&args.output, &s)
}

fn cmd_beams(args: BeamsArgs) -> Result<(), Failure> {
    if args.freq < 0.0 || args.tau < 0.0 {
        return Err(Failure::usage("--freq and --tau must be nonnegative"));
    }
    let spec = VanSpec::from_delay(args.n, args.freq, args.tau, args.radius)?;
    let grid = uniform_grid::<f64>(args.grid)?;
    let beams = beam_responses(&spec, &grid)?;
    let mut s = String::from("k,omega_x,magnitude_db\n");
    for beam in &beams {
        for (omega_x, db) in beam.omega_x_grid.iter().zip(&beam.magnitude_db) {
            s.push_str(&format!("{},{},{}\n", beam.k, omega_x, db));
        }
    }
    write_out(&args.output, &s)
}

fn median(mut samples: Vec<u128>) -> u128 {
    samples.sort_unstable();
    samples[samples.len() / 2]
}

fn cmd_bench(args: BenchArgs) -> Result<(), Failure> {
    if args.n < 2 || !args.n.is_power_of_two() {
        return Err(Failure::usage("--n must be a power of two, at least 2"));
    }
    if args.trials == 0 {
        return Err(Failure::usage("--trials must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut s = String::from("n,fast_median_ns,direct_median_ns\n");
    let mut n = 2usize;
    while n <= args.n {
        let spec = VanSpec::new(n, args.angle.theta(), 1.0, vanrad::Direction::Clockwise)?;
        let z: Vec<Complex<f64>> =
            (0..n).map(|_| Complex::new(rng.gen(), rng.gen())).collect();
        // One warmup each, then the timed repetitions.
        let _ = transform(TransformKind::VanC, &z, &spec)?;
        let _ = direct_matvec(&z, &spec)?;
        let mut fast = Vec::with_capacity(args.trials);
        let mut direct = Vec::with_capacity(args.trials);
        for _ in 0..args.trials {
            let t0 = Instant::now();
            std::hint::black_box(transform(TransformKind::VanC, std::hint::black_box(&z), &spec)?);
            fast.push(t0.elapsed().as_nanos());
            let t1 = Instant::now();
            std::hint::black_box(direct_matvec(std::hint::black_box(&z), &spec)?);
            direct.push(t1.elapsed().as_nanos());
        }
        s.push_str(&format!("{},{},{}\n", n, median(fast), median(direct)));
        n *= 2;
    }
    write_out(&args.output, &s)
}

fn cmd_sfg(args: SfgArgs) -> Result<(), Failure> {
    let kind = args.kind.kind();
    if !matches!(kind, TransformKind::VanC | TransformKind::VanCR) {
        return Err(VanError::NotRealizable { kind }.into());
    }
    let spec = build_spec(kind, args.n, &args.angle, args.radius)?;
    let graph = build_sfg(kind, &spec)?;
    let text = match args.format {
        Format::Dot => export_dot(&graph)?,
        Format::Json => export_json(&graph)?,
        _ => return Err(Failure::usage("sfg supports dot or json output")),
    };
    write_out(&args.output, &text)
}
