//! `cgamotion`: factor, classify and sample motion polynomials in CGA(4,1).
//!
//! Data goes to stdout, diagnostics to stderr. Exit codes: 0 success,
//! 1 malformed input or other error, 2 not a motion polynomial, 3 ambiguous
//! numerical rank, 4 a requested check failed.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use cga_motion::catalog::{self, verify_entry, VerificationResult};
use cga_motion::factor::{construct_irregular, is_irregular_pair, ConstructStart};
use cga_motion::geometry::{linspace, trajectory, write_trajectory_csv, EuclideanPoint};
use cga_motion::matrix_rep::is_invertible_even;
use cga_motion::poly::classify_linear_detailed;
use cga_motion::{
    factorize, Error, EvenMultivector, FactorConfig, FactorizationReport, MotionPolynomial,
    MotionType, Tolerances,
};

#[derive(Debug, Parser)]
#[command(
    name = "cgamotion",
    version,
    about = "Motion polynomials in conformal geometric algebra CGA(4,1)"
)]
struct Cli {
    /// Generic relative tolerance; the other thresholds are rescaled with it.
    #[arg(long, global = true, value_parser = parse_tolerance)]
    tolerance: Option<f64>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for all randomness (multistart seeds, family sampling).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Factor a quadratic motion polynomial into linear factors.
    Factor {
        /// Polynomial JSON file (`-` for stdin).
        input: PathBuf,
        /// Re-multiply every reported factorization and compare with the input.
        #[arg(long)]
        self_check: bool,
    },
    /// Classify the linear motion polynomial `t - h`.
    Classify {
        /// Even multivector JSON file (`-` for stdin).
        input: PathBuf,
    },
    /// Decide whether `(t - h1)(t - h2)` is an irregular factorization.
    CheckPair {
        /// JSON file with `h1` and `h2` (`-` for stdin).
        input: PathBuf,
    },
    /// Find `h1` such that `(t - h1)(t - h2)` is irregular.
    Construct {
        /// Even multivector JSON file holding `h2` (`-` for stdin).
        input: PathBuf,
        /// Required motion type of `t - h1`.
        #[arg(long = "type", value_enum)]
        motion_type: Option<TypeArg>,
        /// Random restarts.
        #[arg(long, default_value_t = 200)]
        restarts: usize,
    },
    /// Sample the trajectory of a point.
    Trajectory {
        /// Polynomial JSON file (`-` for stdin).
        input: PathBuf,
        /// Point as `x,y,z`.
        #[arg(
            long,
            value_delimiter = ',',
            num_args = 1,
            allow_hyphen_values = true,
            default_value = "0,0,0"
        )]
        point: Vec<f64>,
        #[arg(long, default_value_t = -10.0, allow_hyphen_values = true)]
        t_min: f64,
        #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
        t_max: f64,
        /// Number of samples, at least 2.
        #[arg(long, default_value_t = 401, value_parser = clap::value_parser!(u64).range(2..))]
        samples: u64,
    },
    /// Verify every catalog entry; exit 4 if any check fails.
    VerifyCatalog,
    /// Write the catalog as JSON.
    ExportCatalog {
        /// Write one polynomial file `<name>.json` per entry into this directory.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TypeArg {
    Rotation,
    Transversion,
    Scaling,
}

impl From<TypeArg> for MotionType {
    fn from(t: TypeArg) -> Self {
        match t {
            TypeArg::Rotation => MotionType::Rotation,
            TypeArg::Transversion => MotionType::Transversion,
            TypeArg::Scaling => MotionType::Scaling,
        }
    }
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err("tolerance must be a positive number".into())
    }
}

/// A failed self-check or catalog verification.
#[derive(Debug)]
struct CheckFailed(String);

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CheckFailed {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<CheckFailed>().is_some() {
        return 4;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::NotAMotionPolynomial { .. } | Error::ZeroQuadrance) => 2,
        Some(Error::NumericalRankAmbiguity { .. }) => 3,
        _ => 1,
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = read_input(path)?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_json<T: Serialize>(out: &mut impl Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

struct Ctx {
    cfg: FactorConfig,
    format: Format,
}

impl Ctx {
    fn tol(&self) -> &Tolerances {
        &self.cfg.tol
    }
}

fn cmd_factor(ctx: &Ctx, input: &Path, self_check: bool, out: &mut impl Write) -> Result<()> {
    let c: MotionPolynomial = read_json(input)?;
    let report = factorize(&c, &ctx.cfg)?;
    match ctx.format {
        Format::Json => write_json(out, &report)?,
        Format::Text => write_factor_text(&report, out)?,
        Format::Csv => write_factor_csv(&report, out)?,
    }
    if self_check {
        let scale = report.polynomial.scale_factor();
        let bound = ctx.tol().reconstruction * scale;
        let mut worst: f64 = 0.0;
        for f in report.all_factorizations() {
            let r =
                (MotionPolynomial::from_factors(&f.factors) - report.polynomial.clone()).max_abs();
            worst = worst.max(r);
        }
        if worst > bound {
            return Err(CheckFailed(format!(
                "self-check failed: residual {worst:e} exceeds {bound:e}"
            ))
            .into());
        }
        eprintln!("self-check passed: max residual {worst:e}");
    }
    Ok(())
}

fn write_factor_text(report: &FactorizationReport, out: &mut impl Write) -> Result<()> {
    writeln!(out, "polynomial: {}", report.polynomial)?;
    writeln!(out, "quadrance: {}", report.quadrance)?;
    writeln!(out, "verdict: {}", report.verdict)?;
    for (i, f) in report.factorizations.iter().enumerate() {
        writeln!(
            out,
            "[{i}] (t - ({})) (t - ({}))  irregular={} residual={:e}",
            f.factors[0], f.factors[1], f.irregular, f.residual
        )?;
    }
    if let Some(fam) = &report.family {
        writeln!(
            out,
            "family: dimension {} in an affine space of dimension {}, {} members found",
            fam.dimension, fam.affine_dimension, fam.members_found
        )?;
        for (i, f) in fam.samples.iter().enumerate() {
            writeln!(
                out,
                "sample[{i}] (t - ({})) (t - ({}))  residual={:e}",
                f.factors[0], f.factors[1], f.residual
            )?;
        }
    }
    Ok(())
}

fn write_factor_csv(report: &FactorizationReport, out: &mut impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["kind", "index", "irregular", "residual", "h1", "h2"])?;
    let isolated = report.factorizations.iter().map(|f| ("isolated", f));
    let samples = report
        .family
        .iter()
        .flat_map(|fam| fam.samples.iter().map(|f| ("family", f)));
    for (i, (kind, f)) in isolated.chain(samples).enumerate() {
        w.write_record([
            kind.to_string(),
            i.to_string(),
            f.irregular.to_string(),
            f.residual.to_string(),
            serde_json::to_string(&f.factors[0])?,
            serde_json::to_string(&f.factors[1])?,
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_classify(ctx: &Ctx, input: &Path, out: &mut impl Write) -> Result<()> {
    let h: EvenMultivector = read_json(input)?;
    let c = classify_linear_detailed(&h, ctx.tol())?;
    match ctx.format {
        Format::Text => {
            let roots: Vec<String> = c.real_roots.iter().map(|r| r.to_string()).collect();
            writeln!(out, "{}", c.motion_type.name())?;
            writeln!(out, "real roots: [{}]", roots.join(", "))?;
        }
        Format::Json => write_json(
            out,
            &json!({
                "type": c.motion_type,
                "discriminant": c.discriminant,
                "real_roots": c.real_roots,
            }),
        )?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["type", "discriminant", "real_roots"])?;
            let roots: Vec<String> = c.real_roots.iter().map(|r| r.to_string()).collect();
            w.write_record([
                c.motion_type.name().to_string(),
                c.discriminant.to_string(),
                roots.join(" "),
            ])?;
            w.flush()?;
        }
    }
    Ok(())
}

#[derive(serde::Deserialize)]
struct Pair {
    h1: EvenMultivector,
    h2: EvenMultivector,
}

fn cmd_check_pair(ctx: &Ctx, input: &Path, out: &mut impl Write) -> Result<()> {
    let pair: Pair = read_json(input)?;
    let c = MotionPolynomial::from_factors(&[pair.h1, pair.h2]);
    c.quadrance_poly(ctx.tol())?;
    let irregular = is_irregular_pair(&pair.h1, &pair.h2, ctx.tol())?;
    let (q, m) = is_invertible_even(&(pair.h1 - pair.h2.reverse()), ctx.tol())?.qm();
    match ctx.format {
        Format::Text => writeln!(out, "{}", if irregular { "irregular" } else { "regular" })?,
        Format::Json => write_json(out, &json!({ "irregular": irregular, "q": q, "m": m }))?,
        Format::Csv => {
            writeln!(out, "irregular,q,m")?;
            writeln!(out, "{irregular},{q},{m}")?;
        }
    }
    Ok(())
}

fn cmd_construct(
    ctx: &Ctx,
    input: &Path,
    motion_type: Option<TypeArg>,
    restarts: usize,
    out: &mut impl Write,
) -> Result<()> {
    let h2: EvenMultivector = read_json(input)?;
    MotionPolynomial::linear(h2).quadrance_poly(ctx.tol())?;
    let found = construct_irregular(
        &h2,
        motion_type.map(MotionType::from),
        ConstructStart::Random { restarts },
        &ctx.cfg,
    )?;
    match ctx.format {
        Format::Text => {
            writeln!(out, "h1 = {}", found.h1)?;
            writeln!(out, "type: {}", found.motion_type.name())?;
        }
        _ => write_json(
            out,
            &json!({
                "h1": found.h1,
                "h2": h2,
                "type": found.motion_type,
                "residual": found.residual,
                "attempts": found.attempts,
            }),
        )?,
    }
    Ok(())
}

fn cmd_trajectory(
    ctx: &Ctx,
    input: &Path,
    point: &[f64],
    range: (f64, f64),
    samples: usize,
    out: &mut impl Write,
) -> Result<()> {
    let c: MotionPolynomial = read_json(input)?;
    c.quadrance_poly(ctx.tol())?;
    let &[x, y, z] = point else {
        bail!(
            "--point needs exactly three coordinates, got {}",
            point.len()
        );
    };
    if !(range.0.is_finite() && range.1.is_finite()) {
        bail!("t range must be finite");
    }
    let p = EuclideanPoint::new(x, y, z);
    let ts = linspace(range.0, range.1, samples);
    let tr = trajectory(&c, &p, &ts, ctx.tol(), ctx.cfg.exec)?;
    if !tr.skipped.is_empty() {
        eprintln!(
            "skipped {} exceptional sample(s) at t = {:?}",
            tr.skipped.len(),
            tr.skipped
        );
    }
    match ctx.format {
        Format::Csv => write_trajectory_csv(&tr.samples, out)?,
        Format::Json => write_json(
            out,
            &json!({
                "samples": tr.samples.iter().map(|s| json!({"t": s.t, "point": s.point.coords})).collect::<Vec<_>>(),
                "skipped": tr.skipped,
            }),
        )?,
        Format::Text => {
            for s in &tr.samples {
                let [x, y, z] = s.point.coords;
                writeln!(out, "{:>12.6} {x:>16.9} {y:>16.9} {z:>16.9}", s.t)?;
            }
        }
    }
    Ok(())
}

fn cmd_verify_catalog(ctx: &Ctx, out: &mut impl Write) -> Result<()> {
    let results: Vec<VerificationResult> = catalog::entries()
        .iter()
        .map(|e| verify_entry(e, &ctx.cfg))
        .collect();
    match ctx.format {
        Format::Json => write_json(
            out,
            &results
                .iter()
                .map(|r| json!({"result": r, "passed": r.passed()}))
                .collect::<Vec<_>>(),
        )?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["name", "verdict", "expected", "max_residual", "passed"])?;
            for r in &results {
                w.write_record([
                    r.name.clone(),
                    r.verdict.clone(),
                    r.expected.clone(),
                    r.max_residual.to_string(),
                    r.passed().to_string(),
                ])?;
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(
                out,
                "{:<27} {:<10} {:<10} {:>10}  result",
                "entry", "verdict", "expected", "residual"
            )?;
            for r in &results {
                writeln!(
                    out,
                    "{:<27} {:<10} {:<10} {:>10.1e}  {}",
                    r.name,
                    r.verdict,
                    r.expected,
                    r.max_residual,
                    if r.passed() { "pass" } else { "FAIL" }
                )?;
            }
        }
    }
    for r in &results {
        for c in r.failures() {
            eprintln!("{}: {} failed ({})", r.name, c.property, c.detail);
        }
    }
    let failed = results.iter().filter(|r| !r.passed()).count();
    if failed > 0 {
        return Err(CheckFailed(format!(
            "{failed} of {} catalog entries failed",
            results.len()
        ))
        .into());
    }
    Ok(())
}

fn cmd_export_catalog(ctx: &Ctx, dir: Option<&Path>, out: &mut impl Write) -> Result<()> {
    let entries = catalog::entries();
    match dir {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            for e in &entries {
                let path = dir.join(format!("{}.json", e.name));
                let mut f = fs::File::create(&path)
                    .with_context(|| format!("creating {}", path.display()))?;
                write_json(&mut f, &e.polynomial)?;
                writeln!(out, "{}", path.display())?;
            }
        }
        None => match ctx.format {
            Format::Json => write_json(out, &entries)?,
            _ => {
                for e in &entries {
                    writeln!(out, "{}: {}", e.name, e.polynomial)?;
                }
            }
        },
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let tol = cli
        .tolerance
        .map_or_else(Tolerances::default, Tolerances::with_eps);
    let ctx = Ctx {
        cfg: FactorConfig::default()
            .with_tolerances(tol)
            .with_seed(cli.seed),
        format: cli.format,
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    match &cli.command {
        Command::Factor { input, self_check } => cmd_factor(&ctx, input, *self_check, &mut out)?,
        Command::Classify { input } => cmd_classify(&ctx, input, &mut out)?,
        Command::CheckPair { input } => cmd_check_pair(&ctx, input, &mut out)?,
        Command::Construct {
            input,
            motion_type,
            restarts,
        } => cmd_construct(&ctx, input, *motion_type, *restarts, &mut out)?,
        Command::Trajectory {
            input,
            point,
            t_min,
            t_max,
            samples,
        } => {
            let n = usize::try_from(*samples).map_err(|_| anyhow!("too many samples"))?;
            cmd_trajectory(&ctx, input, point, (*t_min, *t_max), n, &mut out)?
        }
        Command::VerifyCatalog => {
            let r = cmd_verify_catalog(&ctx, &mut out);
            out.flush()?;
            r?
        }
        Command::ExportCatalog { dir } => cmd_export_catalog(&ctx, dir.as_deref(), &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
