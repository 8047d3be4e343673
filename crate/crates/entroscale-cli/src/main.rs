//! `entroscale`: temperature schedules, attention runs, theorem checks, and
//! sweeps from the command line.
//!
//! Output is CSV (JSON for `attend`) on stdout or the --out file. Exit code
//! 0 means success, 2 a configuration problem, 3 a numerical failure or a
//! failed check. Identical flags and seed always produce byte-identical
//! output.

// `!(x > 0.0)` style guards must also reject NaN, which `x <= 0.0` lets through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use clap::{Args, Parser, Subcommand};
use entroscale::attention::{
    attend, build_mask, mass_in_window, temperature, AttentionSpec, MaskSpec, TemperatureSchedule,
};
use entroscale::entropy::entropy_exact;
use entroscale::numerics::rng::{sample_hypersphere, SeededRng};
use entroscale::positional::{PositionalScheme, DEFAULT_ROPE_BASE};
use entroscale::sweeps::{run_sweep, SweepKind, SweepResult, SweepSpec};
use entroscale::theory::eta_star_check;
use entroscale::Error;
use entroscale_cli::{
    fmt_float, fmt_int, parse_config, parse_list_f64, parse_list_usize, to_json, write_csv,
};
use serde_json::json;
use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

/// Bracket tolerance handed to the numerical argmax; the achievable peak
/// accuracy is limited by float flatness (~1e-9 on these integrands), so
/// check tolerances below that will honestly fail.
const ARGMAX_TOL: f64 = 1e-10;

#[derive(Parser)]
#[command(
    name = "entroscale",
    version,
    about = "Numerical laboratory for attention scaling temperatures"
)]
struct Cli {
    /// Flat key=value file whose keys mirror the long flags; explicit flags win
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Write output to this file instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Every temperature schedule evaluated at one length
    Scales(ScalesArgs),
    /// Closed-form peak location vs numerical argmax over an alpha grid
    Theorem1(Theorem1Args),
    /// Monte Carlo entropy across lengths under a schedule
    EntropySweep(EntropySweepArgs),
    /// One self-attention map, summarized as JSON
    Attend(AttendArgs),
    /// Histogram of pairwise cosines between hypersphere samples
    Histogram(HistogramArgs),
    /// Score heatmap before or after the positional transform
    Heatmap(HeatmapArgs),
    /// Laplace approximation error across dimensions
    Laplace(LaplaceArgs),
    /// Rank agreement between full and axis-aligned scores
    Dominance(DominanceArgs),
}

#[derive(Args)]
struct ScalesArgs {
    /// Evaluation length
    #[arg(long)]
    n_te: Option<usize>,
    /// Training/calibration length
    #[arg(long)]
    n_tr: Option<usize>,
    /// Head dimension
    #[arg(long)]
    d: Option<usize>,
    /// Entropy offset of the infoscale row
    #[arg(long)]
    epsilon: Option<f64>,
    /// Base length of the softmaxplus row
    #[arg(long)]
    base_len: Option<usize>,
}

#[derive(Args)]
struct Theorem1Args {
    /// Head dimension
    #[arg(long)]
    d: Option<usize>,
    /// Comma-separated alpha grid
    #[arg(long)]
    alphas: Option<String>,
    /// Largest tolerated |closed form - argmax|; exceeding it exits 3
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct EntropySweepArgs {
    /// Head dimension
    #[arg(long)]
    d: Option<usize>,
    /// Embedding second moment (key radius is sqrt(v d))
    #[arg(long)]
    v: Option<f64>,
    /// Training/calibration length
    #[arg(long)]
    n_tr: Option<usize>,
    /// Entropy offset for the infoscale schedule
    #[arg(long)]
    epsilon: Option<f64>,
    /// Base length for the softmaxplus schedule
    #[arg(long)]
    base_len: Option<usize>,
    /// Multiplier for the fixed schedule
    #[arg(long)]
    value: Option<f64>,
    /// Comma-separated evaluation lengths
    #[arg(long)]
    lengths: Option<String>,
    /// vanilla, loglength, softmaxplus, yarn, infoscale, or fixed
    #[arg(long)]
    schedule: Option<String>,
    /// Monte Carlo trials per length
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct AttendArgs {
    /// Sequence length
    #[arg(long)]
    n: Option<usize>,
    /// Head dimension
    #[arg(long)]
    d: Option<usize>,
    /// Embedding second moment (input radius is sqrt(v d))
    #[arg(long)]
    v: Option<f64>,
    /// vanilla, loglength, softmaxplus, yarn, infoscale, or fixed
    #[arg(long)]
    schedule: Option<String>,
    /// Training/calibration length
    #[arg(long)]
    n_tr: Option<usize>,
    /// Entropy offset for the infoscale schedule
    #[arg(long)]
    epsilon: Option<f64>,
    /// Base length for the softmaxplus schedule
    #[arg(long)]
    base_len: Option<usize>,
    /// Multiplier for the fixed schedule
    #[arg(long)]
    value: Option<f64>,
    /// full, causal, windowed, sinkwindow, or lambda
    #[arg(long)]
    mask: Option<String>,
    /// Window width for the masks and the mass summary
    #[arg(long)]
    w: Option<usize>,
    /// Always-kept leading positions for sinkwindow/lambda masks
    #[arg(long)]
    sinks: Option<usize>,
    /// nope, rope, pi, rerope, or alibi
    #[arg(long)]
    positional: Option<String>,
    /// Position compression factor for pi
    #[arg(long)]
    factor: Option<f64>,
    /// Relative-position clamp for rerope
    #[arg(long)]
    clamp: Option<usize>,
    /// Head count for alibi (slope of head 0 is used)
    #[arg(long)]
    heads: Option<usize>,
    /// Run the cosine path instead of dot-product logits
    #[arg(long)]
    cosine: bool,
    /// Cosine-path logit multiplier; defaults to 128, or 16 with --mask windowed
    #[arg(long)]
    cos_scale: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct HistogramArgs {
    /// Number of hypersphere pairs
    #[arg(long)]
    samples: Option<usize>,
    /// Sphere dimension
    #[arg(long)]
    d: Option<usize>,
    /// Histogram bins over [-1, 1]
    #[arg(long)]
    bins: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct HeatmapArgs {
    /// Sequence length (map is n x n)
    #[arg(long)]
    n: Option<usize>,
    /// Head dimension
    #[arg(long)]
    d: Option<usize>,
    /// Cosine scale multiplying the score maps
    #[arg(long)]
    alpha: Option<f64>,
    /// Cap spread of the synthetic inputs (pairwise cosine >= 1 - spread)
    #[arg(long)]
    spread: Option<f64>,
    /// nope, rope, pi, rerope, or alibi
    #[arg(long)]
    positional: Option<String>,
    /// Which map to print: pre or post
    #[arg(long)]
    which: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct LaplaceArgs {
    /// Comma-separated dimensions
    #[arg(long)]
    d_list: Option<String>,
    /// 0 checks sqrt(2 pi / d) against the plain sine integral; a positive
    /// value checks the tilted integral at alpha = lambda_v * d
    #[arg(long)]
    lambda_v: Option<f64>,
}

#[derive(Args)]
struct DominanceArgs {
    /// Sequence length
    #[arg(long)]
    n: Option<usize>,
    /// Head dimension
    #[arg(long)]
    d: Option<usize>,
    /// Score multiplier
    #[arg(long)]
    alpha: Option<f64>,
    /// Comma-separated cap spreads
    #[arg(long)]
    deltas: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
}

enum Failure {
    Config(String),
    Numeric(String),
}

/// Quadrature stalls, masked-out rows, and bad probabilities are runtime
/// failures of an otherwise valid configuration (exit 3); everything else
/// is a configuration problem (exit 2).
fn classify(e: Error) -> Failure {
    fn numeric(e: &Error) -> bool {
        match e {
            Error::QuadratureDidNotConverge { .. }
            | Error::FullyMaskedRow { .. }
            | Error::NegativeProbability { .. } => true,
            Error::GridPoint { source, .. } => numeric(source),
            _ => false,
        }
    }
    if numeric(&e) {
        Failure::Numeric(e.to_string())
    } else {
        Failure::Config(e.to_string())
    }
}

struct Ctx {
    cfg: BTreeMap<String, String>,
}

impl Ctx {
    fn scalar<T: FromStr>(&self, key: &str, flag: Option<T>, default: T) -> Result<T, Failure>
    where
        T::Err: Display,
    {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.cfg.get(key) {
            Some(raw) => raw
                .parse()
                .map_err(|e| Failure::Config(format!("config key {key}: {e}"))),
            None => Ok(default),
        }
    }

    fn text(&self, key: &str, flag: Option<String>, default: &str) -> String {
        flag.or_else(|| self.cfg.get(key).cloned())
            .unwrap_or_else(|| default.to_string())
    }

    fn boolean(&self, key: &str, flag: bool) -> Result<bool, Failure> {
        if flag {
            return Ok(true);
        }
        match self.cfg.get(key) {
            Some(raw) => raw
                .parse()
                .map_err(|e| Failure::Config(format!("config key {key}: {e}"))),
            None => Ok(false),
        }
    }

    fn list_f64(
        &self,
        key: &str,
        flag: Option<String>,
        default: &[f64],
    ) -> Result<Vec<f64>, Failure> {
        match flag.or_else(|| self.cfg.get(key).cloned()) {
            Some(raw) => parse_list_f64(&raw).map_err(|e| Failure::Config(format!("{key}: {e}"))),
            None => Ok(default.to_vec()),
        }
    }

    fn list_usize(
        &self,
        key: &str,
        flag: Option<String>,
        default: &[usize],
    ) -> Result<Vec<usize>, Failure> {
        match flag.or_else(|| self.cfg.get(key).cloned()) {
            Some(raw) => parse_list_usize(&raw).map_err(|e| Failure::Config(format!("{key}: {e}"))),
            None => Ok(default.to_vec()),
        }
    }
}

struct Outcome {
    text: String,
    /// A failure to report after the output has been written (theorem1
    /// prints its table even when the check fails).
    failure: Option<Failure>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            failure: None,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(f) => report(f),
    }
}

fn report(f: Failure) -> ExitCode {
    let (msg, code) = match f {
        Failure::Config(m) => (m, 2),
        Failure::Numeric(m) => (m, 3),
    };
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Config(format!("cannot read {}: {e}", path.display())))?;
            parse_config(&text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?
        }
        None => BTreeMap::new(),
    };
    let ctx = Ctx { cfg };
    let outcome = match cli.command {
        Cmd::Scales(a) => cmd_scales(&ctx, a)?,
        Cmd::Theorem1(a) => cmd_theorem1(&ctx, a)?,
        Cmd::EntropySweep(a) => cmd_entropy_sweep(&ctx, a)?,
        Cmd::Attend(a) => cmd_attend(&ctx, a)?,
        Cmd::Histogram(a) => cmd_histogram(&ctx, a)?,
        Cmd::Heatmap(a) => cmd_heatmap(&ctx, a)?,
        Cmd::Laplace(a) => cmd_laplace(&ctx, a)?,
        Cmd::Dominance(a) => cmd_dominance(&ctx, a)?,
    };
    write_output(cli.out.as_deref(), &outcome.text)?;
    match outcome.failure {
        Some(f) => Err(f),
        None => Ok(ExitCode::SUCCESS),
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::Config(format!("cannot write {}: {e}", p.display()))),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Config(format!("cannot write output: {e}")))
        }
    }
}

fn build_schedule(
    name: &str,
    n_tr: usize,
    d: usize,
    epsilon: f64,
    base_len: usize,
    value: f64,
) -> Result<TemperatureSchedule, Failure> {
    match name {
        "vanilla" => Ok(TemperatureSchedule::Vanilla),
        "loglength" => Ok(TemperatureSchedule::LogLength),
        "softmaxplus" => Ok(TemperatureSchedule::SoftmaxPlus { base_len }),
        "yarn" => Ok(TemperatureSchedule::YarnPreSoftmax { n_tr }),
        "infoscale" => Ok(TemperatureSchedule::InfoScale {
            n_tr,
            d_k: d,
            epsilon,
        }),
        "fixed" => Ok(TemperatureSchedule::Fixed { value }),
        other => Err(Failure::Config(format!(
            "unknown schedule {other:?}; valid names: vanilla, loglength, softmaxplus, yarn, infoscale, fixed"
        ))),
    }
}

fn build_mask_spec(name: &str, w: usize, sinks: usize) -> Result<MaskSpec, Failure> {
    match name {
        "full" => Ok(MaskSpec::Full),
        "causal" => Ok(MaskSpec::Causal),
        "windowed" => Ok(MaskSpec::Windowed { w }),
        "sinkwindow" => Ok(MaskSpec::SinkWindow { sinks, w }),
        "lambda" => Ok(MaskSpec::LambdaShaped { sinks, w }),
        other => Err(Failure::Config(format!(
            "unknown mask {other:?}; valid names: full, causal, windowed, sinkwindow, lambda"
        ))),
    }
}

fn build_positional(
    name: &str,
    factor: f64,
    clamp: usize,
    heads: usize,
) -> Result<PositionalScheme, Failure> {
    match name {
        "nope" => Ok(PositionalScheme::NoPe),
        "rope" => Ok(PositionalScheme::rope()),
        "pi" => Ok(PositionalScheme::PiRope {
            base: DEFAULT_ROPE_BASE,
            factor,
        }),
        "rerope" => Ok(PositionalScheme::ReRope {
            base: DEFAULT_ROPE_BASE,
            window: clamp,
        }),
        "alibi" => Ok(PositionalScheme::Alibi { head_count: heads }),
        other => Err(Failure::Config(format!(
            "unknown positional scheme {other:?}; valid names: nope, rope, pi, rerope, alibi"
        ))),
    }
}

fn sweep_csv(result: &SweepResult, int_cols: &[&str]) -> String {
    let header: Vec<&str> = result.columns.iter().map(String::as_str).collect();
    let rows: Vec<Vec<String>> = result
        .rows
        .iter()
        .map(|row| {
            row.iter()
                .zip(&result.columns)
                .map(|(&v, col)| {
                    if int_cols.contains(&col.as_str()) {
                        fmt_int(v)
                    } else {
                        fmt_float(v)
                    }
                })
                .collect()
        })
        .collect();
    write_csv(&header, &rows)
}

fn cmd_scales(ctx: &Ctx, a: ScalesArgs) -> Result<Outcome, Failure> {
    let n_te = ctx.scalar("n-te", a.n_te, 4096)?;
    let n_tr = ctx.scalar("n-tr", a.n_tr, 64)?;
    let d = ctx.scalar("d", a.d, 64)?;
    let epsilon = ctx.scalar("epsilon", a.epsilon, 0.0)?;
    let base_len = ctx.scalar("base-len", a.base_len, 512)?;
    let schedules = [
        ("vanilla", TemperatureSchedule::Vanilla),
        ("loglength", TemperatureSchedule::LogLength),
        ("softmaxplus", TemperatureSchedule::SoftmaxPlus { base_len }),
        ("yarn", TemperatureSchedule::YarnPreSoftmax { n_tr }),
        (
            "infoscale",
            TemperatureSchedule::InfoScale {
                n_tr,
                d_k: d,
                epsilon,
            },
        ),
    ];
    let sqrt_d = (d as f64).sqrt();
    let mut rows = Vec::with_capacity(schedules.len());
    for (name, schedule) in schedules {
        let m = temperature(&schedule, n_te, d).map_err(classify)?;
        rows.push(vec![name.to_string(), fmt_float(m), fmt_float(m / sqrt_d)]);
    }
    Ok(Outcome::ok(write_csv(
        &["schedule", "multiplier", "lambda"],
        &rows,
    )))
}

fn cmd_theorem1(ctx: &Ctx, a: Theorem1Args) -> Result<Outcome, Failure> {
    let d = ctx.scalar("d", a.d, 64)?;
    let tol = ctx.scalar("tol", a.tol, 1e-6)?;
    if !(tol > 0.0) {
        return Err(Failure::Config(format!(
            "check tolerance must be positive, got {tol}"
        )));
    }
    let alphas = ctx.list_f64(
        "alphas",
        a.alphas,
        &[8.0, 16.0, 32.0, 64.0, 96.0, 128.0, 256.0],
    )?;
    for &alpha in &alphas {
        if !(alpha > 0.0) {
            return Err(Failure::Config(format!(
                "alpha must be positive, got {alpha}"
            )));
        }
    }
    let pairs: Vec<(f64, usize)> = alphas.iter().map(|&alpha| (alpha, d)).collect();
    let check = eta_star_check(&pairs, ARGMAX_TOL).map_err(classify)?;
    let rows: Vec<Vec<String>> = (0..alphas.len())
        .map(|i| {
            vec![
                fmt_float(check.parameter_grid[i].0),
                fmt_float(check.theoretical[i]),
                fmt_float(check.numerical[i]),
                fmt_float(check.abs_error[i]),
            ]
        })
        .collect();
    let text = write_csv(&["alpha", "theoretical", "numerical", "abs_error"], &rows);
    let failure = (check.max_abs_error > tol).then(|| {
        Failure::Numeric(format!(
            "peak-location check failed: max abs error {} exceeds tolerance {}",
            fmt_float(check.max_abs_error),
            fmt_float(tol)
        ))
    });
    Ok(Outcome { text, failure })
}

fn cmd_entropy_sweep(ctx: &Ctx, a: EntropySweepArgs) -> Result<Outcome, Failure> {
    let d = ctx.scalar("d", a.d, 64)?;
    let v = ctx.scalar("v", a.v, 1.0)?;
    let n_tr = ctx.scalar("n-tr", a.n_tr, 64)?;
    let epsilon = ctx.scalar("epsilon", a.epsilon, 0.0)?;
    let base_len = ctx.scalar("base-len", a.base_len, 512)?;
    let value = ctx.scalar("value", a.value, 1.0)?;
    let trials = ctx.scalar("trials", a.trials, 200)?;
    let seed = ctx.scalar("seed", a.seed, 17)?;
    let lengths = ctx.list_usize("lengths", a.lengths, &[64, 128, 256, 512, 1024, 2048, 4096])?;
    let name = ctx.text("schedule", a.schedule, "infoscale");
    let schedule = build_schedule(&name, n_tr, d, epsilon, base_len, value)?;
    let spec = SweepSpec {
        kind: SweepKind::EntropyVsLength,
        seed,
        d_k: d,
        v,
        lengths,
        trials,
        schedule,
        ..SweepSpec::default()
    };
    let result = run_sweep(&spec).map_err(classify)?;
    Ok(Outcome::ok(sweep_csv(&result, &["n"])))
}

fn cmd_attend(ctx: &Ctx, a: AttendArgs) -> Result<Outcome, Failure> {
    let n = ctx.scalar("n", a.n, 128)?;
    let d = ctx.scalar("d", a.d, 64)?;
    let v = ctx.scalar("v", a.v, 1.0)?;
    let n_tr = ctx.scalar("n-tr", a.n_tr, 64)?;
    let epsilon = ctx.scalar("epsilon", a.epsilon, 0.0)?;
    let base_len = ctx.scalar("base-len", a.base_len, 512)?;
    let value = ctx.scalar("value", a.value, 1.0)?;
    let w = ctx.scalar("w", a.w, 64)?;
    let sinks = ctx.scalar("sinks", a.sinks, 4)?;
    let factor = ctx.scalar("factor", a.factor, 1.0)?;
    let clamp = ctx.scalar("clamp", a.clamp, 64)?;
    let heads = ctx.scalar("heads", a.heads, 8)?;
    let seed = ctx.scalar("seed", a.seed, 17)?;
    let sched_name = ctx.text("schedule", a.schedule, "vanilla");
    let mask_name = ctx.text("mask", a.mask, "causal");
    let pos_name = ctx.text("positional", a.positional, "rope");
    let cosine = ctx.boolean("cosine", a.cosine)?;
    let schedule = build_schedule(&sched_name, n_tr, d, epsilon, base_len, value)?;
    let mask = build_mask_spec(&mask_name, w, sinks)?;
    let positional = build_positional(&pos_name, factor, clamp, heads)?;
    let windowed = matches!(mask, MaskSpec::Windowed { .. });
    let cos_scale = ctx.scalar(
        "cos-scale",
        a.cos_scale,
        if windowed { 16.0 } else { 128.0 },
    )?;
    if !(v > 0.0) {
        return Err(Failure::Config(format!("v must be positive, got {v}")));
    }
    let spec = AttentionSpec {
        n,
        d_k: d,
        schedule,
        mask,
        positional,
        cosine,
        cos_scale,
    };
    spec.validate().map_err(classify)?;
    let radius = (v * d as f64).sqrt();
    let mut rng = SeededRng::new(seed).stream(0);
    let x = sample_hypersphere(&mut rng, d, radius, n).map_err(classify)?;
    let (_output, probs) = attend(&x, &x, &x, &spec).map_err(classify)?;
    let entropies = entropy_exact(&probs).map_err(classify)?;
    let mass = mass_in_window(&probs, w);
    let mask_matrix = build_mask(&mask, n).map_err(classify)?;
    let last = n - 1;
    let allowed = (0..n).filter(|&j| mask_matrix.get(last, j) == 0.0).count();
    let mut argmax = 0usize;
    let mut max_prob = f64::NEG_INFINITY;
    for j in 0..n {
        let p = probs.get(last, j);
        if p > max_prob {
            max_prob = p;
            argmax = j;
        }
    }
    let multiplier = temperature(&schedule, n, d).map_err(classify)?;
    let summary = json!({
        "config": {
            "n": n,
            "d": d,
            "v": v,
            "seed": seed,
            "schedule": sched_name,
            "mask": mask_name,
            "positional": pos_name,
            "cosine": cosine,
            "cos_scale": cos_scale,
            "temperature": multiplier,
            "lambda": multiplier / (d as f64).sqrt(),
            "window": w,
        },
        "mass_in_window": mass,
        "row_entropy": entropies,
        "last_row": {
            "allowed": allowed,
            "argmax": argmax,
            "max_prob": max_prob,
            "entropy": entropies[last],
        },
    });
    Ok(Outcome::ok(to_json(&summary)))
}

fn cmd_histogram(ctx: &Ctx, a: HistogramArgs) -> Result<Outcome, Failure> {
    let samples = ctx.scalar("samples", a.samples, 20_000)?;
    let d = ctx.scalar("d", a.d, 64)?;
    let bins = ctx.scalar("bins", a.bins, 100)?;
    let seed = ctx.scalar("seed", a.seed, 17)?;
    let spec = SweepSpec {
        kind: SweepKind::CosHistogram,
        seed,
        d_k: d,
        bins,
        samples,
        ..SweepSpec::default()
    };
    let result = run_sweep(&spec).map_err(classify)?;
    Ok(Outcome::ok(sweep_csv(&result, &["count"])))
}

fn cmd_heatmap(ctx: &Ctx, a: HeatmapArgs) -> Result<Outcome, Failure> {
    let n = ctx.scalar("n", a.n, 64)?;
    let d = ctx.scalar("d", a.d, 64)?;
    let alpha = ctx.scalar("alpha", a.alpha, 128.0)?;
    let spread = ctx.scalar("spread", a.spread, 0.1)?;
    let seed = ctx.scalar("seed", a.seed, 17)?;
    let pos_name = ctx.text("positional", a.positional, "rope");
    let which = ctx.text("which", a.which, "post");
    let column = match which.as_str() {
        "pre" => 2,
        "post" => 3,
        other => {
            return Err(Failure::Config(format!(
                "unknown map {other:?}; valid names: pre, post"
            )))
        }
    };
    let positional = build_positional(&pos_name, 1.0, 64, 8)?;
    let spec = SweepSpec {
        kind: SweepKind::QkHeatmap,
        seed,
        d_k: d,
        n,
        alpha,
        spread,
        positional,
        ..SweepSpec::default()
    };
    let result = run_sweep(&spec).map_err(classify)?;
    let rows: Vec<Vec<String>> = result
        .rows
        .iter()
        .map(|row| vec![fmt_int(row[0]), fmt_int(row[1]), fmt_float(row[column])])
        .collect();
    Ok(Outcome::ok(write_csv(&["i", "j", "value"], &rows)))
}

fn cmd_laplace(ctx: &Ctx, a: LaplaceArgs) -> Result<Outcome, Failure> {
    let dims = ctx.list_usize("d-list", a.d_list, &[16, 32, 64, 128, 256])?;
    let lambda_v = ctx.scalar("lambda-v", a.lambda_v, 0.0)?;
    let spec = SweepSpec {
        kind: SweepKind::LaplaceErrorCurve,
        dims,
        lambda_v,
        ..SweepSpec::default()
    };
    let result = run_sweep(&spec).map_err(classify)?;
    Ok(Outcome::ok(sweep_csv(&result, &["d"])))
}

fn cmd_dominance(ctx: &Ctx, a: DominanceArgs) -> Result<Outcome, Failure> {
    let n = ctx.scalar("n", a.n, 256)?;
    let d = ctx.scalar("d", a.d, 64)?;
    let alpha = ctx.scalar("alpha", a.alpha, 128.0)?;
    let seed = ctx.scalar("seed", a.seed, 17)?;
    let deltas = ctx.list_f64("deltas", a.deltas, &[0.1, 0.01, 0.001])?;
    let spec = SweepSpec {
        kind: SweepKind::DominanceVsDelta,
        seed,
        d_k: d,
        n,
        alpha,
        deltas,
        ..SweepSpec::default()
    };
    let result = run_sweep(&spec).map_err(classify)?;
    Ok(Outcome::ok(sweep_csv(&result, &[])))
}
