//! Independent numerical verification of the closed forms the temperature
//! rules rest on: the hypersphere angle density, the Laplace collapses of
//! its integrals, the peak location of the tilted density, the expectation
//! ratio, and a rank-dominance diagnostic for near-converged inputs.

use crate::entropy::cos_theta_star;
use crate::error::{Error, Result};
use crate::numerics::matrix::Matrix;
use crate::numerics::optimize::argmax_1d;
use crate::numerics::quadrature::{gauss_legendre, gauss_legendre_fixed, QuadratureSpec};
use crate::numerics::rng::{sample_spherical_cap, SeededRng};
use crate::numerics::special::log_gamma;
use crate::positional::{rope_score_matrix, PositionalScheme};
use std::f64::consts::PI;

/// Closed form vs numerical argmax over a grid of (alpha, d) points.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremCheck {
    pub parameter_grid: Vec<(f64, usize)>,
    pub theoretical: Vec<f64>,
    pub numerical: Vec<f64>,
    pub abs_error: Vec<f64>,
    pub max_abs_error: f64,
}

/// One Laplace-approximation comparison: exact value, approximation, and
/// their relative gap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceCheck {
    pub d: usize,
    pub exact: f64,
    pub approx: f64,
    pub rel_error: f64,
}

/// Density of the angle between two independent uniform directions in
/// n_dim dimensions: Gamma(n/2) / (Gamma((n-1)/2) sqrt(pi)) * sin^(n-2).
pub fn angle_density(theta: f64, n_dim: usize) -> Result<f64> {
    if n_dim < 3 {
        return Err(Error::AngleDensityDimension(n_dim));
    }
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::InvalidParameter(format!(
            "angle must lie in [0, pi], got {theta}"
        )));
    }
    let n = n_dim as f64;
    let ln_c = log_gamma(n / 2.0)? - log_gamma((n - 1.0) / 2.0)? - 0.5 * PI.ln();
    Ok(ln_c.exp() * theta.sin().powi(n_dim as i32 - 2))
}

/// Peak of e^(alpha eta) (1 - eta^2)^((d-3)/2) on (-1, 1), closed form:
/// eta* = (-(d-3) + sqrt((d-3)^2 + 4 alpha^2)) / (2 alpha).
pub fn eta_star_theoretical(alpha: f64, d_k: usize) -> f64 {
    assert!(alpha > 0.0, "alpha must be positive");
    assert!(d_k >= 3, "needs d_k >= 3");
    let dm3 = (d_k - 3) as f64;
    (-dm3 + (dm3 * dm3 + 4.0 * alpha * alpha).sqrt()) / (2.0 * alpha)
}

/// Same peak found by brute force on the log integrand
/// alpha eta + (d-3)/2 ln(1 - eta^2), which stays finite where the integrand
/// itself would overflow at large alpha.
pub fn eta_star_numerical(alpha: f64, d_k: usize, tol: f64) -> Result<f64> {
    assert!(alpha > 0.0, "alpha must be positive");
    assert!(d_k >= 3, "needs d_k >= 3");
    let half_dm3 = (d_k - 3) as f64 / 2.0;
    let edge = 1.0 - 1e-12;
    argmax_1d(
        |eta| alpha * eta + half_dm3 * (1.0 - eta * eta).ln(),
        -edge,
        edge,
        tol,
    )
}

/// Closed form against numerical argmax over a grid of (alpha, d) pairs.
pub fn eta_star_check(pairs: &[(f64, usize)], argmax_tol: f64) -> Result<TheoremCheck> {
    if pairs.is_empty() {
        return Err(Error::EmptyGrid("no (alpha, d) pairs".into()));
    }
    let mut theoretical = Vec::with_capacity(pairs.len());
    let mut numerical = Vec::with_capacity(pairs.len());
    let mut abs_error = Vec::with_capacity(pairs.len());
    let mut max_abs_error: f64 = 0.0;
    for &(alpha, d) in pairs {
        if !(alpha > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha must be positive, got {alpha}"
            )));
        }
        if d < 3 {
            return Err(Error::InvalidParameter(format!(
                "peak location needs d >= 3, got {d}"
            )));
        }
        let t = eta_star_theoretical(alpha, d);
        let n = eta_star_numerical(alpha, d, argmax_tol)?;
        let e = (t - n).abs();
        theoretical.push(t);
        numerical.push(n);
        abs_error.push(e);
        max_abs_error = max_abs_error.max(e);
    }
    Ok(TheoremCheck {
        parameter_grid: pairs.to_vec(),
        theoretical,
        numerical,
        abs_error,
        max_abs_error,
    })
}

/// I(alpha) = integral over (-1, 1) of e^(alpha eta) (1 - eta^2)^((d-3)/2).
///
/// Evaluated after the substitution eta = sin(phi), which turns the
/// half-integer endpoint power into cos^(d-2) and leaves an analytic
/// integrand at every d (the raw form has unbounded endpoint derivatives
/// for even d and stalls the refinement). The convergence tolerance is
/// scaled by a coarse single-panel magnitude estimate: at large alpha the
/// integral reaches e^alpha scale, where a raw absolute tolerance would sit
/// below the roundoff floor and never be met.
pub fn boltzmann_eta_integral(alpha: f64, d_k: usize, spec: &QuadratureSpec) -> Result<f64> {
    if !(alpha >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha must be nonnegative, got {alpha}"
        )));
    }
    if d_k < 3 {
        return Err(Error::InvalidParameter(format!(
            "integrand exponent needs d_k >= 3, got {d_k}"
        )));
    }
    spec.validate()?;
    let power = d_k as i32 - 2;
    let f = move |phi: f64| (alpha * phi.sin()).exp() * phi.cos().powi(power);
    let half_pi = PI / 2.0;
    let coarse = gauss_legendre_fixed(f, -half_pi, half_pi, spec.node_count).abs();
    let scaled = QuadratureSpec {
        node_count: spec.node_count,
        abs_tolerance: spec.abs_tolerance * coarse.max(1.0),
    };
    gauss_legendre(f, -half_pi, half_pi, &scaled)
}

/// E[e^(alpha cos theta)] = I(alpha) / I(0) for a uniform pair angle.
/// Exactly 1 at alpha = 0 (numerator and denominator share the code path).
pub fn expectation_ratio(alpha: f64, d_k: usize, spec: &QuadratureSpec) -> Result<f64> {
    let i1 = boltzmann_eta_integral(alpha, d_k, spec)?;
    let i0 = boltzmann_eta_integral(0.0, d_k, spec)?;
    Ok(i1 / i0)
}

/// Gamma closed form of I(0): sqrt(pi) Gamma((d-1)/2) / Gamma(d/2).
pub fn eta_weight_integral_closed(d_k: usize) -> Result<f64> {
    if d_k < 3 {
        return Err(Error::InvalidParameter(format!(
            "needs d_k >= 3, got {d_k}"
        )));
    }
    let d = d_k as f64;
    Ok((0.5 * PI.ln() + log_gamma((d - 1.0) / 2.0)? - log_gamma(d / 2.0)?).exp())
}

/// How well sqrt(2 pi / d) approximates the sine integral
/// int_0^pi sin^(d-2) theta dtheta, whose exact value is the Gamma form.
pub fn laplace_sin_integral_check(d_k: usize) -> Result<LaplaceCheck> {
    let exact = eta_weight_integral_closed(d_k)?;
    let approx = (2.0 * PI / d_k as f64).sqrt();
    Ok(LaplaceCheck {
        d: d_k,
        exact,
        approx,
        rel_error: (approx - exact).abs() / exact,
    })
}

/// Full Laplace collapse of int_0^pi e^(alpha cos theta) sin^(d-2) theta:
/// sqrt(2 pi / (alpha (1/c + c))) e^(alpha c + d ln sin theta*), written
/// with c = cos theta* taken at lambda v = alpha / d. The exact side is
/// quadrature with a magnitude-scaled tolerance.
pub fn laplace_boltzmann_integral_check(alpha: f64, d_k: usize) -> Result<LaplaceCheck> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    if d_k < 3 {
        return Err(Error::InvalidParameter(format!(
            "needs d_k >= 3, got {d_k}"
        )));
    }
    let spec = QuadratureSpec::default();
    let power = d_k as i32 - 2;
    let f = move |theta: f64| (alpha * theta.cos()).exp() * theta.sin().powi(power);
    let coarse = gauss_legendre_fixed(f, 0.0, PI, spec.node_count).abs();
    let scaled = QuadratureSpec {
        node_count: spec.node_count,
        abs_tolerance: spec.abs_tolerance * coarse.max(1.0),
    };
    let exact = gauss_legendre(f, 0.0, PI, &scaled)?;
    let d = d_k as f64;
    let c = cos_theta_star(alpha / d, 1.0);
    let sin_sq = 1.0 - c * c;
    let approx =
        (2.0 * PI / (alpha * (1.0 / c + c))).sqrt() * (alpha * c + d * 0.5 * sin_sq.ln()).exp();
    Ok(LaplaceCheck {
        d: d_k,
        exact,
        approx,
        rel_error: (approx - exact).abs() / exact,
    })
}

fn ranks_stable(x: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..x.len()).collect();
    idx.sort_by(|&i, &j| x[i].partial_cmp(&x[j]).unwrap().then(i.cmp(&j)));
    let mut r = vec![0.0; x.len()];
    for (rank, &i) in idx.iter().enumerate() {
        r[i] = rank as f64;
    }
    r
}

// Spearman on two equal-length slices; ties broken by position, which keeps
// the all-equal case deterministic (and equal ranks on both sides).
fn spearman_stable(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    debug_assert!(a.len() >= 2);
    let ra = ranks_stable(a);
    let rb = ranks_stable(b);
    let m = a.len() as f64;
    let sum_d2: f64 = ra
        .iter()
        .zip(&rb)
        .map(|(x, y)| {
            let d = x - y;
            d * d
        })
        .sum();
    1.0 - 6.0 * sum_d2 / (m * (m * m - 1.0))
}

/// Rank agreement between cosine+rotary scores and rotary-only scores on
/// synthetically converged inputs.
///
/// Vectors are built inside a spherical cap: each is the common direction u
/// tipped by an angle in [0, arccos(1-delta)/2], so every pairwise cosine
/// is at least 1-delta. Per causal row (two or more entries) the full
/// scores alpha <rope(v_i, i), rope(v_j, j)> are rank-compared against the
/// same expression with every v replaced by u (all cosines forced to 1) and
/// the Spearman coefficients averaged. At delta = 0 both matrices coincide
/// and the value is exactly 1.
pub fn dominance_diagnostic(
    rng: &SeededRng,
    n: usize,
    d_k: usize,
    alpha: f64,
    delta: f64,
) -> Result<f64> {
    if n < 8 {
        return Err(Error::InvalidParameter(format!("needs n >= 8, got {n}")));
    }
    if d_k < 4 || !d_k.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "needs an even d_k >= 4, got {d_k}"
        )));
    }
    if !(0.0..1.0).contains(&delta) {
        return Err(Error::InvalidParameter(format!(
            "delta must lie in [0, 1), got {delta}"
        )));
    }
    if !(alpha >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha must be nonnegative, got {alpha}"
        )));
    }
    let mut r = rng.stream(0);
    let (u, vectors) = sample_spherical_cap(&mut r, d_k, delta, n)?;
    let scheme = PositionalScheme::rope();
    let full = rope_score_matrix(&vectors, &vectors, &scheme)?;
    let aligned = Matrix::from_fn(n, d_k, |_, c| u[c]);
    let rope_only = rope_score_matrix(&aligned, &aligned, &scheme)?;
    let mut total = 0.0;
    let mut rows = 0usize;
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for i in 1..n {
        a.clear();
        b.clear();
        for j in 0..=i {
            a.push(alpha * full.get(i, j));
            b.push(alpha * rope_only.get(i, j));
        }
        total += spearman_stable(&a, &b);
        rows += 1;
    }
    Ok(total / rows as f64)
}
