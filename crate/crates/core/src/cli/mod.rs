//! Command-line frontend. Every command produces a [`RunReport`]; JSON is the
//! canonical output, CSV is offered for best-approximation sequences.

pub mod spec;

pub use spec::{parse_matrix_spec, parse_minpoly, MatrixSpec, SpecEntry};

use crate::approx::{
    algebraic_subspace, bad_constant_estimate, best_approximations, exponent_bound_report,
    exponent_estimates_with, span_rank_tail, BestApproxSequence, Metric, ScanOptions,
    TargetMatrix, VectorTarget, DEFAULT_PRECISION_BITS,
};
use crate::bounds::{bound_constants, decimal, feasibility_margin, g_root_enclosure};
use crate::error::{Error, Result};
use crate::exact::{
    irrationality_profile, partial_irrationality_witness, plucker_coordinates,
    rational_dimension, SubspaceBasis, DEFAULT_ENUMERATION_CAP,
};
use crate::game::{
    generate_irrational_matrix, manifold_escape_haw, manifold_escape_schmidt, polynomial_range,
    Ball, GameConfig, HawConfig, Opponent, SchmidtConfig,
};
use crate::multipoly::MultiPolynomial;
use crate::scalar::{parse_rational, ExactScalar};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

pub const PRECISION_ENV: &str = "DIOPHLAB_PRECISION_BITS";
pub const TOOL: &str = "diophlab";

#[derive(Parser, Debug)]
#[command(name = "diophlab", version, about = "Irrational subspaces, best approximations, exponent bounds and escaping games")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Working precision for enclosures.
    #[arg(long, global = true, env = PRECISION_ENV, default_value_t = DEFAULT_PRECISION_BITS)]
    pub precision_bits: u32,
    /// Height bound H for rational subspaces.
    #[arg(long, global = true)]
    pub height: Option<u64>,
    /// Search bound T for best approximations.
    #[arg(long, global = true)]
    pub tmax: Option<u64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Write the record sequence as CSV (sequence commands only).
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
    /// Worker threads; 0 uses all cores. Results do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    /// Accept matrices mixing exact and `~` entries.
    #[arg(long, global = true)]
    pub allow_mixed: bool,
    /// Cap on enumerated candidate subspaces.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub cap: u64,
}

/// A subspace given by a basis, by `Theta`, or by a minimal polynomial.
#[derive(Args, Debug, Clone)]
pub struct SubspaceInput {
    /// Basis rows of L.
    #[arg(long)]
    pub basis: Option<String>,
    /// `Theta` (m x n); L = {(x, Theta x)}.
    #[arg(long)]
    pub theta: Option<String>,
    /// Minimal polynomial in x of degree d, e.g. "x^4 - x^3 - 1"; needs --n.
    #[arg(long)]
    pub minpoly: Option<String>,
    /// Dimension of the algebraic subspace built from --minpoly.
    #[arg(long)]
    pub n: Option<usize>,
}

/// A target for best approximations.
#[derive(Args, Debug, Clone)]
pub struct TargetInput {
    /// Vector (xi_1, ..., xi_{d-1}); the last coordinate 1 is implicit.
    #[arg(long)]
    pub target: Option<String>,
    /// `Theta` (m x n).
    #[arg(long)]
    pub theta: Option<String>,
    /// Minimal polynomial in x; with --n uses the algebraic subspace.
    #[arg(long)]
    pub minpoly: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value = "form")]
    pub metric: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GameKindArg {
    Schmidt,
    Haw,
}

#[derive(Args, Debug, Clone)]
pub struct GameArgs {
    #[arg(long, value_enum, default_value = "schmidt")]
    pub kind: GameKindArg,
    #[arg(long, default_value = "1/4")]
    pub alpha: String,
    #[arg(long, default_value = "1/4")]
    pub beta: String,
    /// random, center, hug, or retreat:x,y,...
    #[arg(long, default_value = "random")]
    pub opponent: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Plücker coordinates and their rational dimension.
    Plucker(SubspaceInput),
    /// Irrationality profile up to a height bound.
    Profile {
        #[command(flatten)]
        input: SubspaceInput,
        /// 1-based index set for a partial irrationality witness, e.g. "1,2,4".
        #[arg(long)]
        witness: Option<String>,
    },
    /// Best approximations up to T.
    Bestapprox(TargetInput),
    /// Exponent and bad-constant estimates.
    Exponents {
        #[command(flatten)]
        input: TargetInput,
        #[arg(long, default_value_t = crate::approx::estimates::DEFAULT_WARMUP)]
        warmup: f64,
    },
    /// Dimension of the span of the tail of best approximations.
    Rtheta(TargetInput),
    /// Exponent bound constants w, W, frakW.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 15)]
        digits: usize,
    },
    /// Feasibility of a uniform exponent and the root of g.
    Gcheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Rational or decimal value.
        #[arg(long)]
        omega_hat: String,
    },
    /// Schmidt and HAW escaping games.
    #[command(subcommand)]
    Game(GameCommand),
    /// Sampled reports.
    #[command(subcommand)]
    Report(ReportCommand),
}

#[derive(Subcommand, Debug)]
pub enum GameCommand {
    /// Escape the manifold {f = 0}.
    Escape {
        /// Polynomial in z1..zr, e.g. "z1^2 + z2 - 1/3".
        #[arg(long)]
        poly: String,
        /// Number of variables (default: the largest index used).
        #[arg(long)]
        r: Option<usize>,
        #[command(flatten)]
        game: GameArgs,
        /// Start center (comma separated); default the origin.
        #[arg(long)]
        center: Option<String>,
        #[arg(long, default_value = "1")]
        radius: String,
    },
    /// Build Theta avoiding every rational subspace up to the height bound.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        game: GameArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum ReportCommand {
    /// Compare sampled uniform exponents with the bound constants.
    BoundCheck {
        #[command(flatten)]
        input: SubspaceInput,
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub wall_seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// SHA-256 of the normalized arguments, seed and precision.
    pub input_digest: String,
    pub seed: u64,
    pub precision_bits: u32,
    pub outputs: Value,
    /// Wall time; not part of the deterministic content.
    pub timing: Timing,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report without `timing`; identical for identical inputs.
    pub fn deterministic_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Value::Object(m) = &mut v {
            m.remove("timing");
        }
        serde_json::to_string_pretty(&v).expect("report serializes")
    }
}

/// Error body printed on failure.
pub fn error_json(e: &Error) -> String {
    serde_json::to_string_pretty(&json!({
        "tool": TOOL,
        "version": env!("CARGO_PKG_VERSION"),
        "error": { "kind": e.kind(), "message": e.to_string(), "exit_code": e.exit_code() },
    }))
    .expect("error serializes")
}

fn normalized_args(argv: &[String]) -> Vec<String> {
    let mut out = vec![];
    let mut skip = false;
    for a in argv.iter().skip(1) {
        if skip {
            skip = false;
            continue;
        }
        let key = a.split('=').next().unwrap_or("");
        if matches!(key, "--json" | "--csv" | "--workers") {
            skip = !a.contains('=');
            continue;
        }
        out.push(a.clone());
    }
    out
}

fn digest(argv: &[String], seed: u64, precision: u32) -> String {
    let mut h = Sha256::new();
    for a in normalized_args(argv) {
        h.update(a.as_bytes());
        h.update([0u8]);
    }
    h.update(format!("seed={seed};precision={precision}").as_bytes());
    hex::encode(h.finalize())
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Plucker(_) => "plucker",
        Command::Profile { .. } => "profile",
        Command::Bestapprox(_) => "bestapprox",
        Command::Exponents { .. } => "exponents",
        Command::Rtheta(_) => "rtheta",
        Command::Bounds { .. } => "bounds",
        Command::Gcheck { .. } => "gcheck",
        Command::Game(GameCommand::Escape { .. }) => "game escape",
        Command::Game(GameCommand::Generate { .. }) => "game generate",
        Command::Report(ReportCommand::BoundCheck { .. }) => "report bound-check",
    }
}

fn parse_number(s: &str, what: &str) -> Result<BigRational> {
    let t = s.trim().trim_start_matches('~');
    if let Ok(q) = parse_rational(t, 0) {
        return Ok(q);
    }
    let spec = parse_matrix_spec(&format!("~{t}"), false)
        .map_err(|_| Error::precondition(format!("{what}: expected a rational or decimal, got {s:?}")))?;
    spec.rows[0][0]
        .value
        .as_rational()
        .cloned()
        .ok_or_else(|| Error::precondition(format!("{what} must be rational")))
}

fn subspace_from(input: &SubspaceInput, g: &GlobalArgs) -> Result<SubspaceBasis> {
    match (&input.basis, &input.theta, &input.minpoly) {
        (Some(b), None, None) => SubspaceBasis::new(parse_matrix_spec(b, g.allow_mixed)?.values()),
        (None, Some(t), None) => SubspaceBasis::graph_xy(&parse_matrix_spec(t, g.allow_mixed)?.values()),
        (None, None, Some(p)) => {
            let coeffs = parse_minpoly(p)?;
            let n = input.n.ok_or_else(|| Error::precondition("--minpoly needs --n"))?;
            Ok(algebraic_subspace(&coeffs, n, coeffs.len() - 1)?.basis)
        }
        _ => Err(Error::precondition("give exactly one of --basis, --theta, --minpoly")),
    }
}

fn target_from(input: &TargetInput, g: &GlobalArgs) -> Result<TargetMatrix> {
    let bits = g.precision_bits;
    match (&input.target, &input.theta, &input.minpoly) {
        (Some(t), None, None) => {
            let spec = parse_matrix_spec(t, g.allow_mixed)?;
            let v = VectorTarget::new(spec.as_vector()?)?
                .with_precision(bits)?
                .mark_inexact(spec.is_inexact());
            Ok(v.as_matrix().clone())
        }
        (None, Some(t), None) => parse_matrix_spec(t, g.allow_mixed)?.to_target(bits),
        (None, None, Some(p)) => {
            let coeffs = parse_minpoly(p)?;
            let n = input.n.ok_or_else(|| Error::precondition("--minpoly needs --n"))?;
            let a = algebraic_subspace(&coeffs, n, coeffs.len() - 1)?;
            let bits = bits.max(a.theta.precision());
            a.theta.with_precision(bits)
        }
        _ => Err(Error::precondition("give exactly one of --target, --theta, --minpoly")),
    }
}

fn scan_opts(g: &GlobalArgs) -> ScanOptions {
    ScanOptions {
        workers: g.workers,
        ..ScanOptions::default()
    }
}

fn sequence(input: &TargetInput, g: &GlobalArgs, default_t: u64) -> Result<BestApproxSequence> {
    let target = target_from(input, g)?;
    let metric: Metric = input.metric.parse()?;
    best_approximations(&target, metric, g.tmax.unwrap_or(default_t), &scan_opts(g))
}

fn write_csv(path: &PathBuf, seq: &BestApproxSequence) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::Io(e.to_string()))?;
    w.write_record(["index", "x", "y", "norm", "psi", "psi_radius", "exact_hit", "tied"])
        .map_err(|e| Error::Io(e.to_string()))?;
    for (k, r) in seq.records.iter().enumerate() {
        let join = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        w.write_record([
            k.to_string(),
            join(&r.x),
            join(&r.y),
            r.norm.to_string(),
            format!("{:e}", r.psi),
            format!("{:e}", r.psi_radius),
            r.exact_hit.to_string(),
            r.tied.to_string(),
        ])
        .map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("output serializes")
}

fn game_config(args: &GameArgs, r: usize) -> Result<GameConfig> {
    let beta = parse_number(&args.beta, "beta")?;
    Ok(match args.kind {
        GameKindArg::Schmidt => {
            GameConfig::Schmidt(SchmidtConfig::new(r, parse_number(&args.alpha, "alpha")?, beta)?)
        }
        GameKindArg::Haw => GameConfig::Haw(HawConfig::new(r, beta)?),
    })
}

fn execute(cli: &Cli) -> Result<(Value, Option<BestApproxSequence>)> {
    let g = &cli.global;
    let mut seq_out = None;
    let out = match &cli.command {
        Command::Plucker(input) => {
            let l = subspace_from(input, g)?;
            let p = plucker_coordinates(&l)?;
            json!({
                "d": p.d,
                "n": p.n,
                "index": p.index.iter().map(|i| i.iter().map(|c| c + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "entries": p.entries.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                "rational_dimension": rational_dimension(&p.entries)?,
            })
        }
        Command::Profile { input, witness } => {
            let l = subspace_from(input, g)?;
            let prof = irrationality_profile(&l, g.height.unwrap_or(3), g.cap)?;
            let mut v = to_value(&prof);
            if let Some(w) = witness {
                let idx = w
                    .split(',')
                    .map(|t| t.trim().parse::<usize>().ok().filter(|&k| k >= 1).map(|k| k - 1))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::precondition("witness: expected 1-based indices like 1,2,4"))?;
                v["witness"] = to_value(&partial_irrationality_witness(&l, &idx)?);
            }
            v
        }
        Command::Bestapprox(input) => {
            let seq = sequence(input, g, 1000)?;
            let v = to_value(&seq);
            seq_out = Some(seq);
            v
        }
        Command::Exponents { input, warmup } => {
            let seq = sequence(input, g, 10_000)?;
            let est = exponent_estimates_with(&seq, *warmup)?;
            let bad = bad_constant_estimate(&seq, seq.n, seq.m)?;
            let v = json!({
                "target": seq.target,
                "t": seq.t,
                "records": seq.records.len(),
                "exponents": to_value(&est),
                "bad_constant": to_value(&bad),
            });
            seq_out = Some(seq);
            v
        }
        Command::Rtheta(input) => {
            let seq = sequence(input, g, 10_000)?;
            let rep = span_rank_tail(&seq)?;
            let v = json!({
                "target": seq.target,
                "metric": seq.metric,
                "records": seq.records.len(),
                "span_rank": to_value(&rep),
            });
            seq_out = Some(seq);
            v
        }
        Command::Bounds { n, d, digits } => {
            let b = bound_constants(*n, *d)?;
            let mut v = to_value(&b);
            v["decimal"] = json!({
                "w": decimal(&b.w, *digits),
                "W": b.big_w.mid().map(|x| decimal(&x, *digits)),
                "frakW": b.frak_w.mid().map(|x| decimal(&x, *digits)),
            });
            v
        }
        Command::Gcheck { n, d, omega_hat } => {
            let om = parse_number(omega_hat, "omega-hat")?;
            let margin = feasibility_margin(*n, *d, &om)?;
            let r = d - n + 1;
            let g_root = match g_root_enclosure(r, &om) {
                Ok((lo, hi)) => json!({ "r": r, "lo": lo.to_string(), "hi": hi.to_string(), "value": decimal(&((&lo + &hi) / BigRational::from_integer(2.into())), 12) }),
                Err(e) => json!({ "r": r, "error": e.to_string() }),
            };
            json!({
                "n": n,
                "d": d,
                "omega_hat": om.to_string(),
                "margin": margin.to_string(),
                "feasible": margin >= BigRational::from_integer(0.into()),
                "g_root": g_root,
            })
        }
        Command::Game(GameCommand::Escape { poly, r, game, center, radius }) => {
            let f = MultiPolynomial::parse(poly, *r)?;
            let r = f.nvars();
            let config = game_config(game, r)?;
            let opp = Opponent::new(game.opponent.parse()?, g.seed);
            let radius = parse_number(radius, "radius")?;
            let start = match center {
                Some(c) => {
                    let coords = c
                        .split(',')
                        .map(|t| parse_number(t, "center"))
                        .collect::<Result<Vec<_>>>()?;
                    if coords.len() != r {
                        return Err(Error::precondition(format!("center needs {r} coordinates")));
                    }
                    Ball::new(coords, radius)?
                }
                None => Ball::origin(r, radius)?,
            };
            let out = match config {
                GameConfig::Schmidt(c) => manifold_escape_schmidt(&f, &c, opp, g.seed, start)?,
                GameConfig::Haw(c) => manifold_escape_haw(&f, &c, opp, g.seed, start)?,
            };
            let recheck = polynomial_range(&f, &out.final_ball);
            let mut v = to_value(&out);
            v["recheck"] = json!({
                "min_abs": recheck.min_abs.to_string(),
                "certified": recheck.min_abs > out.epsilon,
                "transcript_valid": out.transcript.revalidate().ok,
            });
            v["epsilon_decimal"] = json!(decimal(&out.epsilon, 20));
            v
        }
        Command::Game(GameCommand::Generate { n, m, game }) => {
            let config = game_config(game, n * m)?;
            let opp = Opponent::new(game.opponent.parse()?, g.seed);
            let h = g.height.unwrap_or(3);
            let gm = generate_irrational_matrix(*n, *m, h, config, opp, g.seed, g.cap)?;
            let mut v = to_value(&gm);
            v["min_epsilon"] = json!(gm.min_epsilon().map(|e| decimal(e, 20)));
            v["transcript_valid"] = json!(gm.transcript.revalidate().ok);
            v
        }
        Command::Report(ReportCommand::BoundCheck { input, samples }) => {
            let l = subspace_from(input, g)?;
            let rep = exponent_bound_report(&l, *samples, g.tmax.unwrap_or(10_000), g.seed, &scan_opts(g))?;
            to_value(&rep)
        }
    };
    Ok((out, seq_out))
}

/// Parses `argv` (including the program name), runs the command and writes
/// the requested artifacts.
pub fn run_command<I, T>(argv: I) -> Result<RunReport>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = Cli::try_parse_from(&args).map_err(|e| Error::precondition(e.to_string()))?;
    let strings: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let start = Instant::now();
    let (outputs, seq) = execute(&cli)?;
    if let Some(path) = &cli.global.csv {
        match &seq {
            Some(s) => write_csv(path, s)?,
            None => return Err(Error::precondition("--csv is only available for sequence commands")),
        }
    }
    let report = RunReport {
        tool: TOOL.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: command_name(&cli.command).into(),
        input_digest: digest(&strings, cli.global.seed, cli.global.precision_bits),
        seed: cli.global.seed,
        precision_bits: cli.global.precision_bits,
        outputs,
        timing: Timing {
            wall_seconds: start.elapsed().as_secs_f64(),
        },
    };
    if let Some(path) = &cli.global.json {
        std::fs::write(path, report.to_json())?;
    }
    Ok(report)
}

/// Entry point of the binary; returns the process exit code.
pub fn main_with_args(args: Vec<OsString>) -> i32 {
    if let Err(e) = Cli::try_parse_from(&args) {
        use clap::error::ErrorKind;
        if matches!(
            e.kind(),
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
        ) {
            use std::io::Write;
            let _ = write!(std::io::stdout(), "{e}");
            return 0;
        }
    }
    let to_stdout = !args.iter().any(|a| a.to_string_lossy().starts_with("--json"));
    match run_command(args) {
        Ok(rep) => {
            if to_stdout {
                use std::io::Write;
                // a closed pipe is not an error of the run
                let _ = writeln!(std::io::stdout(), "{}", rep.to_json());
            }
            0
        }
        Err(e) => {
            use std::io::Write;
            let _ = writeln!(std::io::stderr(), "{}", error_json(&e));
            e.exit_code()
        }
    }
}

/// Parses a scalar in the matrix grammar (used by the FFI layer).
pub fn parse_scalar(text: &str) -> Result<ExactScalar> {
    let spec = parse_matrix_spec(text, false)?;
    if spec.m() != 1 || spec.n() != 1 {
        return Err(Error::precondition("expected a single entry"));
    }
    Ok(spec.rows[0][0].value.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<RunReport> {
        let mut v = vec!["diophlab"];
        v.extend_from_slice(args);
        run_command(v)
    }

    #[test]
    fn bounds_command() {
        let r = run(&["bounds", "--n", "2", "--d", "4"]).unwrap();
        assert_eq!(r.outputs["w"], "1");
        assert!(r.outputs["decimal"]["frakW"].as_str().unwrap().starts_with("0.6180339887"));
        assert!(r.outputs["decimal"]["W"].as_str().unwrap().starts_with("0.5436"));
    }

    #[test]
    fn fibonacci_csv() {
        let dir = tempfile::tempdir().unwrap();
        let csv_path = dir.path().join("s.csv");
        let r = run(&["bestapprox", "--target", "~1.6180339887", "--tmax", "100", "--csv", csv_path.to_str().unwrap()]).unwrap();
        let text = std::fs::read_to_string(&csv_path).unwrap();
        let norms: Vec<u64> = text
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
            .collect();
        assert_eq!(norms, vec![1, 2, 3, 5, 8, 13, 21, 34, 55, 89]);
        assert_eq!(r.command, "bestapprox");
    }

    #[test]
    fn generate_small() {
        let r = run(&["game", "generate", "--n", "1", "--m", "1", "--height", "3", "--seed", "7"]).unwrap();
        assert_eq!(r.outputs["post_check_certified_m"], 1);
        assert_eq!(r.outputs["transcript_valid"], true);
    }

    #[test]
    fn deterministic_and_digest() {
        let a = run(&["gcheck", "--n", "2", "--d", "4", "--omega-hat", "0.6", "--workers", "3"]).unwrap();
        let b = run(&["gcheck", "--n", "2", "--d", "4", "--omega-hat", "0.6"]).unwrap();
        assert_eq!(a.deterministic_json(), b.deterministic_json());
        let c = run(&["gcheck", "--n", "2", "--d", "4", "--omega-hat", "0.7"]).unwrap();
        assert_ne!(a.input_digest, c.input_digest);
        assert_eq!(a.outputs["feasible"], true);
        assert_eq!(c.outputs["feasible"], false);
    }

    #[test]
    fn errors_have_codes() {
        let e = run(&["bounds", "--n", "4", "--d", "4"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = run(&["profile", "--basis", "1, 2; 2, 4"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = run(&["bounds", "--n", "2", "--d", "4", "--csv", "x.csv"]).unwrap_err();
        assert!(e.to_string().contains("--csv"));
        assert!(error_json(&e).contains("\"exit_code\": 2"));
    }
}
