//! Parameter sweeps over the other modules, packaged as flat tables ready
//! for CSV. Every sweep is a pure function of its spec: the seed is split
//! into one child stream per grid point, so reruns and reorderings cannot
//! change a row.

use crate::attention::{
    attend, mass_in_window, temperature, AttentionSpec, MaskSpec, TemperatureSchedule,
};
use crate::entropy::{entropy_estimate_closed, entropy_montecarlo};
use crate::error::{Error, Result};
use crate::numerics::matrix::{dot, norm, Matrix};
use crate::numerics::rng::{sample_hypersphere, sample_spherical_cap, SeededRng};
use crate::positional::{rope_score_matrix, PositionalScheme};
use crate::theory::{
    dominance_diagnostic, eta_star_numerical, eta_star_theoretical,
    laplace_boltzmann_integral_check, laplace_sin_integral_check,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKind {
    /// Per length: lambda under the schedule, Monte Carlo entropy with
    /// standard error, and both closed-form estimates.
    EntropyVsLength,
    /// Distribution of cos theta between independent hypersphere pairs.
    CosHistogram,
    /// Pre- and post-rotation score maps on near-aligned inputs.
    QkHeatmap,
    /// Closed-form peak location against the numerical argmax, per alpha.
    EtaStarCurve,
    /// Laplace approximation error per dimension.
    LaplaceErrorCurve,
    /// Attention mass kept in the recent window as the cosine scale grows.
    MassInWindowVsAlpha,
    /// Rank agreement between full and aligned scores per spread delta.
    DominanceVsDelta,
}

/// One bundle of knobs for all sweep kinds; each kind reads the subset it
/// documents and ignores the rest.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub kind: SweepKind,
    pub seed: u64,
    pub d_k: usize,
    /// Embedding second moment per coordinate times d_k (key radius squared
    /// over d_k); the entropy sweeps report it alongside lambda.
    pub v: f64,
    pub lengths: Vec<usize>,
    pub alphas: Vec<f64>,
    pub deltas: Vec<f64>,
    pub dims: Vec<usize>,
    /// Sequence length for attention-map sweeps (heatmap, window mass).
    pub n: usize,
    pub window: usize,
    pub bins: usize,
    pub trials: usize,
    /// Hypersphere pair count for the histogram.
    pub samples: usize,
    /// Cosine scale for the heatmap, window-mass, and dominance sweeps.
    pub alpha: f64,
    /// 0 selects the plain sine-integral check; positive values select the
    /// tilted integral at alpha = lambda_v * d per dimension.
    pub lambda_v: f64,
    /// Cap spread for the heatmap inputs.
    pub spread: f64,
    /// Argmax tolerance for the eta-star curve.
    pub tol: f64,
    pub schedule: TemperatureSchedule,
    pub positional: PositionalScheme,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            kind: SweepKind::EntropyVsLength,
            seed: 17,
            d_k: 64,
            v: 1.0,
            lengths: vec![64, 128, 256, 512, 1024, 2048, 4096],
            alphas: vec![8.0, 16.0, 32.0, 64.0, 96.0, 128.0, 256.0],
            deltas: vec![0.1, 0.01, 0.001],
            dims: vec![16, 32, 64, 128, 256],
            n: 512,
            window: 64,
            bins: 100,
            trials: 200,
            samples: 20_000,
            alpha: 128.0,
            lambda_v: 0.0,
            spread: 0.1,
            tol: 1e-8,
            schedule: TemperatureSchedule::InfoScale {
                n_tr: 64,
                d_k: 64,
                epsilon: 0.0,
            },
            positional: PositionalScheme::rope(),
        }
    }
}

/// Flat result table. Deterministic given the spec; rerunning a sweep and
/// comparing for equality is a supported workflow, so no wall-clock
/// provenance is recorded.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub spec_echo: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub seed: u64,
    pub version: String,
}

fn at_point<T>(point: String, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::GridPoint {
        point,
        source: Box::new(e),
    })
}

fn columns(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn finish(spec: &SweepSpec, columns: Vec<String>, rows: Vec<Vec<f64>>) -> SweepResult {
    debug_assert!(rows.iter().all(|r| r.len() == columns.len()));
    SweepResult {
        spec_echo: format!("{spec:?}"),
        columns,
        rows,
        seed: spec.seed,
        version: env!("CARGO_PKG_VERSION").to_string(),
    }
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    match spec.kind {
        SweepKind::EntropyVsLength => entropy_vs_length(spec),
        SweepKind::CosHistogram => cos_histogram_sweep(spec),
        SweepKind::QkHeatmap => qk_heatmap_sweep(spec),
        SweepKind::EtaStarCurve => eta_star_curve(spec),
        SweepKind::LaplaceErrorCurve => laplace_error_curve(spec),
        SweepKind::MassInWindowVsAlpha => mass_in_window_vs_alpha(spec),
        SweepKind::DominanceVsDelta => dominance_vs_delta(spec),
    }
}

fn entropy_vs_length(spec: &SweepSpec) -> Result<SweepResult> {
    if spec.lengths.is_empty() {
        return Err(Error::EmptyGrid("lengths".into()));
    }
    let base = SeededRng::new(spec.seed);
    let sqrt_d = (spec.d_k as f64).sqrt();
    let mut rows = Vec::with_capacity(spec.lengths.len());
    for (idx, &n) in spec.lengths.iter().enumerate() {
        let point = format!("n={n}");
        let multiplier = at_point(point.clone(), temperature(&spec.schedule, n, spec.d_k))?;
        let lambda = multiplier / sqrt_d;
        let mc = at_point(
            point.clone(),
            entropy_montecarlo(
                &base.stream(idx as u64),
                lambda,
                spec.v,
                spec.d_k,
                n,
                spec.trials,
            ),
        )?;
        // Out-of-range scale product degrades the closed forms to NaN while
        // the Monte Carlo column stays valid.
        let (closed, taylor) = match entropy_estimate_closed(lambda, spec.v, spec.d_k, n) {
            Ok(pair) => pair,
            Err(Error::ScaleProductOutOfRange { .. }) => (f64::NAN, f64::NAN),
            Err(e) => {
                return Err(Error::GridPoint {
                    point,
                    source: Box::new(e),
                })
            }
        };
        rows.push(vec![n as f64, lambda, mc.mean, mc.stderr, closed, taylor]);
    }
    Ok(finish(
        spec,
        columns(&["n", "lambda", "H_mc", "H_stderr", "H_closed", "H_taylor"]),
        rows,
    ))
}

fn cos_histogram_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    if spec.samples == 0 {
        return Err(Error::EmptyGrid("samples".into()));
    }
    if spec.d_k < 2 {
        return Err(Error::DimensionTooSmall(spec.d_k));
    }
    let mut rng = SeededRng::new(spec.seed).stream(0);
    let mut a = vec![0.0; spec.d_k];
    let mut b = vec![0.0; spec.d_k];
    let mut values = Vec::with_capacity(spec.samples);
    for _ in 0..spec.samples {
        rng.fill_sphere_point(&mut a, 1.0);
        rng.fill_sphere_point(&mut b, 1.0);
        values.push(dot(&a, &b));
    }
    let (edges, counts) = cos_histogram(&values, spec.bins)?;
    let rows = counts
        .iter()
        .enumerate()
        .map(|(i, &c)| vec![edges[i], edges[i + 1], c as f64])
        .collect();
    Ok(finish(spec, columns(&["bin_lo", "bin_hi", "count"]), rows))
}

fn qk_heatmap_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    if spec.n == 0 {
        return Err(Error::EmptyGrid("n".into()));
    }
    let mut rng = SeededRng::new(spec.seed).stream(0);
    let (_, x) = sample_spherical_cap(&mut rng, spec.d_k, spec.spread, spec.n)?;
    let (pre, post) = qk_heatmap(&x, &x, spec.alpha, &spec.positional)?;
    let mut rows = Vec::with_capacity(spec.n * spec.n);
    for i in 0..spec.n {
        for j in 0..spec.n {
            rows.push(vec![i as f64, j as f64, pre.get(i, j), post.get(i, j)]);
        }
    }
    Ok(finish(spec, columns(&["i", "j", "pre", "post"]), rows))
}

fn eta_star_curve(spec: &SweepSpec) -> Result<SweepResult> {
    if spec.alphas.is_empty() {
        return Err(Error::EmptyGrid("alphas".into()));
    }
    let mut rows = Vec::with_capacity(spec.alphas.len());
    for &alpha in &spec.alphas {
        let point = format!("alpha={alpha}");
        if !(alpha > 0.0) {
            return Err(Error::GridPoint {
                point,
                source: Box::new(Error::InvalidParameter("alpha must be positive".into())),
            });
        }
        let theoretical = eta_star_theoretical(alpha, spec.d_k);
        let numerical = at_point(point, eta_star_numerical(alpha, spec.d_k, spec.tol))?;
        rows.push(vec![
            alpha,
            theoretical,
            numerical,
            (theoretical - numerical).abs(),
        ]);
    }
    Ok(finish(
        spec,
        columns(&["alpha", "theoretical", "numerical", "abs_error"]),
        rows,
    ))
}

fn laplace_error_curve(spec: &SweepSpec) -> Result<SweepResult> {
    if spec.dims.is_empty() {
        return Err(Error::EmptyGrid("dims".into()));
    }
    if !(spec.lambda_v >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "lambda_v must be nonnegative, got {}",
            spec.lambda_v
        )));
    }
    let mut rows = Vec::with_capacity(spec.dims.len());
    for &d in &spec.dims {
        let point = format!("d={d}");
        let check = if spec.lambda_v == 0.0 {
            at_point(point, laplace_sin_integral_check(d))?
        } else {
            at_point(
                point,
                laplace_boltzmann_integral_check(spec.lambda_v * d as f64, d),
            )?
        };
        rows.push(vec![d as f64, check.exact, check.approx, check.rel_error]);
    }
    Ok(finish(
        spec,
        columns(&["d", "exact", "approx", "rel_error"]),
        rows,
    ))
}

fn mass_in_window_vs_alpha(spec: &SweepSpec) -> Result<SweepResult> {
    if spec.alphas.is_empty() {
        return Err(Error::EmptyGrid("alphas".into()));
    }
    if spec.window == 0 {
        return Err(Error::InvalidParameter("window must be at least 1".into()));
    }
    // One shared input draw: the sweep isolates the effect of alpha alone.
    let mut rng = SeededRng::new(spec.seed).stream(0);
    let x = sample_hypersphere(&mut rng, spec.d_k, 1.0, spec.n)?;
    let mut rows = Vec::with_capacity(spec.alphas.len());
    for &alpha in &spec.alphas {
        let aspec = AttentionSpec {
            n: spec.n,
            d_k: spec.d_k,
            schedule: TemperatureSchedule::Fixed { value: 1.0 },
            mask: MaskSpec::Causal,
            positional: spec.positional,
            cosine: true,
            cos_scale: alpha,
        };
        let (_, probs) = at_point(format!("alpha={alpha}"), attend(&x, &x, &x, &aspec))?;
        rows.push(vec![alpha, mass_in_window(&probs, spec.window)]);
    }
    Ok(finish(spec, columns(&["alpha", "mass_in_window"]), rows))
}

fn dominance_vs_delta(spec: &SweepSpec) -> Result<SweepResult> {
    if spec.deltas.is_empty() {
        return Err(Error::EmptyGrid("deltas".into()));
    }
    let mut rows = Vec::with_capacity(spec.deltas.len());
    for &delta in &spec.deltas {
        // The same base seed is reused on purpose: the draws are identical
        // across deltas, so only the cap width moves between rows.
        let r = at_point(
            format!("delta={delta}"),
            dominance_diagnostic(
                &SeededRng::new(spec.seed),
                spec.n,
                spec.d_k,
                spec.alpha,
                delta,
            ),
        )?;
        rows.push(vec![delta, r]);
    }
    Ok(finish(spec, columns(&["delta", "rank_correlation"]), rows))
}

/// Uniform-bin histogram over [-1, 1]. Values may overshoot the interval by
/// at most 1e-9 (inner products of unit vectors land there after rounding)
/// and are clamped; anything further out is rejected. Returns bin edges
/// (bins + 1 of them) and per-bin counts summing to the input length.
pub fn cos_histogram(values: &[f64], bins: usize) -> Result<(Vec<f64>, Vec<usize>)> {
    if bins < 2 {
        return Err(Error::InvalidParameter(format!(
            "histogram needs at least 2 bins, got {bins}"
        )));
    }
    for &v in values {
        if !(-1.0 - 1e-9..=1.0 + 1e-9).contains(&v) {
            return Err(Error::InvalidParameter(format!(
                "cosine value {v} outside [-1, 1]"
            )));
        }
    }
    let edges: Vec<f64> = (0..=bins)
        .map(|i| -1.0 + 2.0 * i as f64 / bins as f64)
        .collect();
    let mut counts = vec![0usize; bins];
    for &v in values {
        let c = v.clamp(-1.0, 1.0);
        let idx = (((c + 1.0) / 2.0 * bins as f64) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    Ok((edges, counts))
}

fn min_max_normalize(m: &Matrix) -> Matrix {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            lo = lo.min(m.get(i, j));
            hi = hi.max(m.get(i, j));
        }
    }
    if !(hi > lo) {
        // constant map: zeros, by convention
        return Matrix::zeros(m.rows(), m.cols());
    }
    let span = hi - lo;
    Matrix::from_fn(m.rows(), m.cols(), |i, j| (m.get(i, j) - lo) / span)
}

/// Score maps before and after the positional transform, each min-max
/// normalized to [0, 1] by its own global range. Rows must be unit vectors
/// (the cosine path), so the pre map is alpha times the pairwise cosines.
/// A constant map normalizes to all zeros.
pub fn qk_heatmap(
    q: &Matrix,
    k: &Matrix,
    alpha: f64,
    scheme: &PositionalScheme,
) -> Result<(Matrix, Matrix)> {
    if q.cols() != k.cols() {
        return Err(Error::ShapeMismatch(format!(
            "q has {} columns, k has {}",
            q.cols(),
            k.cols()
        )));
    }
    if !(alpha >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "cosine scale must be nonnegative, got {alpha}"
        )));
    }
    scheme.validate()?;
    for (name, m) in [("q", q), ("k", k)] {
        for i in 0..m.rows() {
            let len = norm(m.row(i));
            if (len - 1.0).abs() > 1e-8 {
                return Err(Error::InvalidParameter(format!(
                    "{name} row {i} has norm {len}, expected unit rows"
                )));
            }
        }
    }
    let plain = q.matmul_transpose(k)?;
    let rotated = rope_score_matrix(q, k, scheme)?;
    let scale = |m: &Matrix| Matrix::from_fn(m.rows(), m.cols(), |i, j| alpha * m.get(i, j));
    Ok((
        min_max_normalize(&scale(&plain)),
        min_max_normalize(&scale(&rotated)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_star_rows_delegate_to_theory() {
        let spec = SweepSpec {
            kind: SweepKind::EtaStarCurve,
            ..SweepSpec::default()
        };
        let result = run_sweep(&spec).unwrap();
        assert_eq!(
            result.columns,
            vec!["alpha", "theoretical", "numerical", "abs_error"]
        );
        assert_eq!(result.rows.len(), spec.alphas.len());
        for (row, &alpha) in result.rows.iter().zip(&spec.alphas) {
            assert_eq!(row[0], alpha);
            assert_eq!(row[1], eta_star_theoretical(alpha, spec.d_k));
            assert_eq!(
                row[2],
                eta_star_numerical(alpha, spec.d_k, spec.tol).unwrap()
            );
            assert!(row[3] <= 1e-6);
        }
    }

    #[test]
    fn fixed_lambda_entropy_grows_with_length() {
        let spec = SweepSpec {
            kind: SweepKind::EntropyVsLength,
            lengths: vec![64, 128, 256, 512],
            schedule: TemperatureSchedule::Fixed { value: 1.0 },
            ..SweepSpec::default()
        };
        let result = run_sweep(&spec).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for row in &result.rows {
            assert!((row[1] - 0.125).abs() <= 1e-15);
            assert!(row[2] > prev, "H_mc not increasing at n={}", row[0]);
            prev = row[2];
        }
    }

    #[test]
    fn overscaled_schedule_degrades_closed_forms_to_nan() {
        let spec = SweepSpec {
            kind: SweepKind::EntropyVsLength,
            lengths: vec![64, 4096],
            trials: 50,
            schedule: TemperatureSchedule::LogLength,
            ..SweepSpec::default()
        };
        let result = run_sweep(&spec).unwrap();
        // ln(4096)^2 / 64 > 1: the closed forms leave their domain
        let last = result.rows.last().unwrap();
        assert!(last[4].is_nan() && last[5].is_nan());
        assert!(last[2].is_finite());
        let first = &result.rows[0];
        assert!(first[4].is_finite() && first[5].is_finite());
    }

    #[test]
    fn empty_grids_are_rejected() {
        let spec = SweepSpec {
            kind: SweepKind::EntropyVsLength,
            lengths: vec![],
            ..SweepSpec::default()
        };
        assert!(matches!(run_sweep(&spec), Err(Error::EmptyGrid(_))));
        let spec = SweepSpec {
            kind: SweepKind::DominanceVsDelta,
            deltas: vec![],
            ..SweepSpec::default()
        };
        assert!(matches!(run_sweep(&spec), Err(Error::EmptyGrid(_))));
    }

    #[test]
    fn grid_point_context_wraps_inner_errors() {
        let spec = SweepSpec {
            kind: SweepKind::EtaStarCurve,
            alphas: vec![8.0, -1.0],
            ..SweepSpec::default()
        };
        match run_sweep(&spec) {
            Err(Error::GridPoint { point, .. }) => assert_eq!(point, "alpha=-1"),
            other => panic!("expected grid-point error, got {other:?}"),
        }
    }

    #[test]
    fn sweeps_are_deterministic() {
        for kind in [
            SweepKind::EntropyVsLength,
            SweepKind::CosHistogram,
            SweepKind::EtaStarCurve,
            SweepKind::DominanceVsDelta,
        ] {
            let spec = SweepSpec {
                kind,
                lengths: vec![64, 128],
                alphas: vec![8.0, 32.0],
                deltas: vec![0.1, 0.01],
                samples: 2000,
                trials: 50,
                n: 32,
                d_k: 16,
                schedule: TemperatureSchedule::Fixed { value: 1.0 },
                ..SweepSpec::default()
            };
            let a = run_sweep(&spec).unwrap();
            let b = run_sweep(&spec).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn histogram_counts_and_edges() {
        let ones = vec![1.0; 37];
        let (edges, counts) = cos_histogram(&ones, 10).unwrap();
        assert_eq!(edges.len(), 11);
        assert_eq!(edges[0], -1.0);
        assert_eq!(*edges.last().unwrap(), 1.0);
        assert_eq!(counts[9], 37);
        assert_eq!(counts.iter().sum::<usize>(), 37);

        // slight overshoot is clamped, larger overshoot rejected
        let (_, counts) = cos_histogram(&[1.0 + 1e-10, -1.0 - 1e-10], 4).unwrap();
        assert_eq!(counts[3], 1);
        assert_eq!(counts[0], 1);
        assert!(cos_histogram(&[1.0 + 1e-8], 4).is_err());
        assert!(cos_histogram(&[0.0], 1).is_err());
    }

    #[test]
    fn histogram_of_uniform_values_is_flat() {
        let mut rng = SeededRng::new(7);
        let n = 20_000;
        let values: Vec<f64> = (0..n).map(|_| 2.0 * rng.next_f64() - 1.0).collect();
        let bins = 20;
        let (_, counts) = cos_histogram(&values, bins).unwrap();
        let p = 1.0 / bins as f64;
        let mean = n as f64 * p;
        let sigma = (n as f64 * p * (1.0 - p)).sqrt();
        for (i, &c) in counts.iter().enumerate() {
            assert!(
                (c as f64 - mean).abs() <= 4.0 * sigma,
                "bin {i}: {c} vs {mean} +- {sigma}"
            );
        }
    }

    #[test]
    fn heatmap_constant_map_normalizes_to_zeros() {
        let mut u = [0.0; 8];
        u[0] = 1.0;
        let x = Matrix::from_fn(6, 8, |_, c| u[c]);
        let (pre, post) = qk_heatmap(&x, &x, 64.0, &PositionalScheme::NoPe).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(pre.get(i, j), 0.0);
                assert_eq!(post.get(i, j), 0.0);
            }
        }
    }

    #[test]
    fn heatmap_entries_stay_in_unit_interval() {
        let mut rng = SeededRng::new(11);
        let q = sample_hypersphere(&mut rng, 16, 1.0, 24).unwrap();
        let k = sample_hypersphere(&mut rng, 16, 1.0, 24).unwrap();
        let (pre, post) = qk_heatmap(&q, &k, 32.0, &PositionalScheme::rope()).unwrap();
        for m in [&pre, &post] {
            let mut saw_zero = false;
            let mut saw_one = false;
            for i in 0..24 {
                for j in 0..24 {
                    let v = m.get(i, j);
                    assert!((0.0..=1.0).contains(&v));
                    saw_zero |= v == 0.0;
                    saw_one |= v == 1.0;
                }
            }
            // the extremes are attained by the normalizing cells
            assert!(saw_zero && saw_one);
        }
    }

    #[test]
    fn heatmap_rejects_bad_inputs() {
        let mut rng = SeededRng::new(12);
        let q = sample_hypersphere(&mut rng, 16, 1.0, 4).unwrap();
        let k = sample_hypersphere(&mut rng, 8, 1.0, 4).unwrap();
        assert!(matches!(
            qk_heatmap(&q, &k, 1.0, &PositionalScheme::NoPe),
            Err(Error::ShapeMismatch(_))
        ));
        let long = sample_hypersphere(&mut rng, 16, 2.0, 4).unwrap();
        assert!(qk_heatmap(&q, &long, 1.0, &PositionalScheme::NoPe).is_err());
    }

    #[test]
    fn aligned_heatmap_bands_by_distance() {
        let spec = SweepSpec {
            kind: SweepKind::QkHeatmap,
            n: 64,
            d_k: 32,
            spread: 0.0,
            ..SweepSpec::default()
        };
        let result = run_sweep(&spec).unwrap();
        let n = spec.n;
        let mut post = Matrix::zeros(n, n);
        for row in &result.rows {
            post.set(row[0] as usize, row[1] as usize, row[3]);
        }
        // identical inputs: the rotated score depends on i - j only, so each
        // diagonal is constant and the diagonals span the whole unit range
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for dist in 0..n {
            let first = post.get(dist, 0);
            for i in dist..n {
                assert!((post.get(i, i - dist) - first).abs() <= 1e-9);
            }
            lo = lo.min(first);
            hi = hi.max(first);
        }
        assert!(hi - lo > 0.5, "banding spread {}", hi - lo);
    }

    #[test]
    fn window_mass_sweep_shares_inputs_across_alphas() {
        let spec = SweepSpec {
            kind: SweepKind::MassInWindowVsAlpha,
            alphas: vec![8.0, 128.0],
            n: 96,
            d_k: 16,
            window: 16,
            ..SweepSpec::default()
        };
        let result = run_sweep(&spec).unwrap();
        assert_eq!(result.rows.len(), 2);
        for row in &result.rows {
            assert!(row[1] > 0.0 && row[1] <= 1.0);
        }
        // self-attention puts the exact-match key in the window, so the
        // sharper map holds more of its mass there
        assert!(result.rows[1][1] > result.rows[0][1]);
    }

    #[test]
    fn dominance_rows_delegate_to_theory() {
        let spec = SweepSpec {
            kind: SweepKind::DominanceVsDelta,
            deltas: vec![0.1, 0.001],
            n: 32,
            d_k: 16,
            ..SweepSpec::default()
        };
        let result = run_sweep(&spec).unwrap();
        for (row, &delta) in result.rows.iter().zip(&spec.deltas) {
            let direct = dominance_diagnostic(
                &SeededRng::new(spec.seed),
                spec.n,
                spec.d_k,
                spec.alpha,
                delta,
            )
            .unwrap();
            assert_eq!(row[1], direct);
        }
    }

    #[test]
    fn result_carries_provenance() {
        let spec = SweepSpec {
            kind: SweepKind::LaplaceErrorCurve,
            dims: vec![16, 32],
            ..SweepSpec::default()
        };
        let result = run_sweep(&spec).unwrap();
        assert_eq!(result.seed, spec.seed);
        assert_eq!(result.version, env!("CARGO_PKG_VERSION"));
        assert!(result.spec_echo.contains("LaplaceErrorCurve"));
        for row in &result.rows {
            assert_eq!(row.len(), result.columns.len());
        }
    }

    #[test]
    fn laplace_curve_switches_on_lambda_v() {
        let sin = run_sweep(&SweepSpec {
            kind: SweepKind::LaplaceErrorCurve,
            dims: vec![64],
            ..SweepSpec::default()
        })
        .unwrap();
        let direct = laplace_sin_integral_check(64).unwrap();
        assert_eq!(sin.rows[0][3], direct.rel_error);

        let tilted = run_sweep(&SweepSpec {
            kind: SweepKind::LaplaceErrorCurve,
            dims: vec![64],
            lambda_v: 0.1,
            ..SweepSpec::default()
        })
        .unwrap();
        let direct = laplace_boltzmann_integral_check(6.4, 64).unwrap();
        assert_eq!(tilted.rows[0][3], direct.rel_error);
    }
}
