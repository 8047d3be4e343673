//! Exact attention entropy, the closed-form approximation chain behind the
//! entropy-matching temperature, and a Monte Carlo ground truth for both.

use crate::attention::{temperature, TemperatureSchedule};
use crate::error::{Error, Result};
use crate::numerics::matrix::{dot, Matrix};
use crate::numerics::rng::SeededRng;
use crate::numerics::softmax::softmax_row_indexed;

/// Per-row entropies of a probability matrix plus the closed-form estimates
/// for the same (lambda, v, d_k, n) operating point.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyReport {
    pub per_row: Vec<f64>,
    pub mean: f64,
    pub n: usize,
    pub d_k: usize,
    pub lambda: f64,
    /// NaN when lambda^2 v^2 >= 1, where the closed forms are undefined.
    pub estimate_exact_form: f64,
    pub estimate_taylor: f64,
}

impl EntropyReport {
    pub fn from_probs(probs: &Matrix, d_k: usize, lambda: f64, v: f64) -> Result<EntropyReport> {
        let per_row = entropy_exact(probs)?;
        if per_row.is_empty() {
            return Err(Error::InvalidParameter(
                "entropy report needs at least one row".into(),
            ));
        }
        let mean = per_row.iter().sum::<f64>() / per_row.len() as f64;
        let (exact_form, taylor) = match entropy_estimate_closed(lambda, v, d_k, probs.cols()) {
            Ok(pair) => pair,
            Err(Error::ScaleProductOutOfRange { .. }) => (f64::NAN, f64::NAN),
            Err(e) => return Err(e),
        };
        Ok(EntropyReport {
            per_row,
            mean,
            n: probs.cols(),
            d_k,
            lambda,
            estimate_exact_form: exact_form,
            estimate_taylor: taylor,
        })
    }
}

/// H_i = -sum_j p_ij ln p_ij per row, with 0 ln 0 = 0.
pub fn entropy_exact(probs: &Matrix) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(probs.rows());
    for i in 0..probs.rows() {
        let mut h = 0.0;
        let mut sum = 0.0;
        for (j, &p) in probs.row(i).iter().enumerate() {
            if p < 0.0 {
                return Err(Error::NegativeProbability {
                    row: i,
                    col: j,
                    value: p,
                });
            }
            sum += p;
            if p > 0.0 {
                h -= p * p.ln();
            }
        }
        if (sum - 1.0).abs() > 1e-8 {
            return Err(Error::InvalidParameter(format!(
                "row {i} sums to {sum}, expected 1"
            )));
        }
        out.push(h);
    }
    Ok(out)
}

// (sqrt(4t+1) - 1) / (2t) evaluated without cancellation: the direct form
// loses digits as t -> 0, so below 1e-6 the series 1 - t + 2t^2 - 5t^3 takes
// over (next term is 14t^4 ~ 1e-23). Both branches agree to ~1e-13 relative
// at the seam.
pub(crate) fn sqrt_shift_ratio(t: f64) -> f64 {
    if t < 1e-6 {
        1.0 - t + 2.0 * t * t - 5.0 * t * t * t
    } else {
        ((4.0 * t + 1.0).sqrt() - 1.0) / (2.0 * t)
    }
}

fn ln_sqrt_shift_ratio(t: f64) -> f64 {
    if t < 1e-6 {
        (-t + 2.0 * t * t - 5.0 * t * t * t).ln_1p()
    } else {
        sqrt_shift_ratio(t).ln()
    }
}

/// Closed-form entropy estimates at t = lambda^2 v^2:
/// exact form ln n + (d/2) ln((sqrt(4t+1) - 1)/(2t)), and its first-order
/// Taylor counterpart ln n + (d/2) ln(1 - t). Defined for t < 1.
pub fn entropy_estimate_closed(lambda: f64, v: f64, d_k: usize, n: usize) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "closed forms need n >= 2, got {n}"
        )));
    }
    if d_k < 2 {
        return Err(Error::InvalidParameter(format!(
            "head dimension must be at least 2, got {d_k}"
        )));
    }
    if lambda < 0.0 || v <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "need lambda >= 0 and v > 0, got lambda={lambda}, v={v}"
        )));
    }
    let s = lambda * v;
    let t = s * s;
    if t >= 1.0 {
        return Err(Error::ScaleProductOutOfRange { t });
    }
    let ln_n = (n as f64).ln();
    let half_d = d_k as f64 / 2.0;
    let exact = ln_n + half_d * ln_sqrt_shift_ratio(t);
    let taylor = ln_n + half_d * (-t).ln_1p();
    Ok((exact, taylor))
}

/// The cosine similarity maximizing e^(lambda v d eta) over the hypersphere
/// angle density: (sqrt(4 lambda^2 v^2 + 1) - 1) / (2 lambda v).
pub fn cos_theta_star(lambda: f64, v: f64) -> f64 {
    assert!(
        lambda > 0.0 && v > 0.0,
        "cos_theta_star needs lambda, v > 0"
    );
    let s = lambda * v;
    s * sqrt_shift_ratio(s * s)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub trials: usize,
}

/// Empirical softmax entropy over hypersphere draws: each trial samples a
/// query and n keys uniformly on the radius sqrt(v d_k) sphere and takes the
/// entropy of softmax(lambda q . k_j).
///
/// Trial tau uses the derived stream rng.stream(tau), so results do not
/// depend on execution order and a run is reproducible from the seed alone.
/// Mean and standard error accumulate via Welford, which keeps the stderr
/// exactly zero when every trial yields the same value (e.g. lambda = 0).
pub fn entropy_montecarlo(
    rng: &SeededRng,
    lambda: f64,
    v: f64,
    d_k: usize,
    n: usize,
    trials: usize,
) -> Result<MonteCarloEstimate> {
    if trials < 1 {
        return Err(Error::InvalidParameter(format!(
            "need at least one trial, got {trials}"
        )));
    }
    if n < 1 {
        return Err(Error::InvalidParameter(format!(
            "need at least one key, got {n}"
        )));
    }
    if d_k < 2 {
        return Err(Error::DimensionTooSmall(d_k));
    }
    if lambda < 0.0 || v <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "need lambda >= 0 and v > 0, got lambda={lambda}, v={v}"
        )));
    }
    let radius = (v * d_k as f64).sqrt();
    let mut q = vec![0.0; d_k];
    let mut key = vec![0.0; d_k];
    let mut logits = vec![0.0; n];
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for trial in 0..trials {
        let mut tr = rng.stream(trial as u64);
        tr.fill_sphere_point(&mut q, radius);
        for logit in logits.iter_mut() {
            tr.fill_sphere_point(&mut key, radius);
            *logit = lambda * dot(&q, &key);
        }
        let p = softmax_row_indexed(&logits, trial)?;
        let mut h = 0.0;
        for &x in &p {
            if x > 0.0 {
                h -= x * x.ln();
            }
        }
        let delta = h - mean;
        mean += delta / (trial + 1) as f64;
        m2 += delta * (h - mean);
    }
    let stderr = if trials > 1 {
        (m2 / (trials - 1) as f64).sqrt() / (trials as f64).sqrt()
    } else {
        0.0
    };
    Ok(MonteCarloEstimate {
        mean,
        stderr,
        trials,
    })
}

/// Absolute logit scale lambda = multiplier / sqrt(d_k) for the
/// entropy-matching schedule; exactly 1/sqrt(d_k) at n_te = n_tr.
pub fn info_scale_lambda(n_te: usize, n_tr: usize, d_k: usize, epsilon: f64) -> Result<f64> {
    let schedule = TemperatureSchedule::InfoScale { n_tr, d_k, epsilon };
    Ok(temperature(&schedule, n_te, d_k)? / (d_k as f64).sqrt())
}
