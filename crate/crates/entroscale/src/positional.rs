//! Position mechanisms applied to queries/keys or to score matrices:
//! rotary embeddings, their interpolated and window-clamped variants, and
//! the linear distance bias.
//!
//! Rotary convention used throughout: adjacent index pairs (2t, 2t+1) are
//! rotated by position * base^(-2t/d), t zero-based.

use crate::error::{Error, Result};
use crate::numerics::matrix::{dot, Matrix};

pub const DEFAULT_ROPE_BASE: f64 = 10_000.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PositionalScheme {
    /// Plain inner products, no position information.
    NoPe,
    Rope {
        base: f64,
    },
    /// Rotary with positions shrunk by `factor` before rotation
    /// (linear position interpolation).
    PiRope {
        base: f64,
        factor: f64,
    },
    /// Rotary with the relative position clamped at `window`.
    ReRope {
        base: f64,
        window: usize,
    },
    /// Distance-proportional bias added to logits on the dot-product path;
    /// queries and keys themselves are left untouched.
    Alibi {
        head_count: usize,
    },
}

impl PositionalScheme {
    pub fn rope() -> Self {
        PositionalScheme::Rope {
            base: DEFAULT_ROPE_BASE,
        }
    }

    pub fn is_rotary(&self) -> bool {
        matches!(
            self,
            PositionalScheme::Rope { .. }
                | PositionalScheme::PiRope { .. }
                | PositionalScheme::ReRope { .. }
        )
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            PositionalScheme::NoPe => Ok(()),
            PositionalScheme::Rope { base } => check_base(base),
            PositionalScheme::PiRope { base, factor } => {
                check_base(base)?;
                if !(factor >= 1.0) {
                    return Err(Error::InvalidParameter(format!(
                        "interpolation factor must be >= 1, got {factor}"
                    )));
                }
                Ok(())
            }
            PositionalScheme::ReRope { base, window } => {
                check_base(base)?;
                if window < 1 {
                    return Err(Error::InvalidParameter("clamp window must be >= 1".into()));
                }
                Ok(())
            }
            PositionalScheme::Alibi { head_count } => {
                if head_count < 1 || !head_count.is_power_of_two() {
                    return Err(Error::InvalidParameter(format!(
                        "head count must be a power of two >= 1, got {head_count}"
                    )));
                }
                Ok(())
            }
        }
    }
}

fn check_base(base: f64) -> Result<()> {
    if !(base > 1.0) {
        return Err(Error::InvalidParameter(format!(
            "rotary base must be > 1, got {base}"
        )));
    }
    Ok(())
}

/// Rotates adjacent pairs of `x` in place by position * base^(-2t/d).
/// Fractional and negative positions are allowed here; the public
/// `rope_rotate` restricts to integer token indices.
fn rotate_in_place(x: &mut [f64], position: f64, base: f64) -> Result<()> {
    if !x.len().is_multiple_of(2) {
        return Err(Error::OddRotaryDimension(x.len()));
    }
    let d = x.len() as f64;
    for t in 0..x.len() / 2 {
        let theta = base.powf(-2.0 * t as f64 / d);
        let (s, c) = (position * theta).sin_cos();
        let a = x[2 * t];
        let b = x[2 * t + 1];
        x[2 * t] = a * c - b * s;
        x[2 * t + 1] = a * s + b * c;
    }
    Ok(())
}

/// Rotary embedding of a single vector at an integer position.
/// Norm is preserved (plane rotations); position 0 returns x bit-for-bit.
pub fn rope_rotate(x: &[f64], position: u64, base: f64) -> Result<Vec<f64>> {
    let mut out = x.to_vec();
    rotate_in_place(&mut out, position as f64, base)?;
    Ok(out)
}

fn rotate_rows(m: &Matrix, base: f64, position_of: impl Fn(usize) -> f64) -> Result<Matrix> {
    let mut out = m.clone();
    for i in 0..out.rows() {
        rotate_in_place(out.row_mut(i), position_of(i), base)?;
    }
    Ok(out)
}

/// Raw n x n score matrix: entry (i, j) is the inner product of the
/// position-transformed rows q_i and k_j.
///
/// Rotary variants rotate row r by its own index r (interpolation divides
/// the index by the factor first). The clamped variant computes pairs with
/// relative position i - j >= window as <rope(q_i, window), k_j>, and
/// everything inside the window through the identical code path as plain
/// rotary, so those entries match it bit-for-bit. The bias variant leaves
/// scores untransformed; its bias applies to logits, not to q and k.
pub fn rope_score_matrix(q: &Matrix, k: &Matrix, scheme: &PositionalScheme) -> Result<Matrix> {
    scheme.validate()?;
    if q.rows() != k.rows() || q.cols() != k.cols() {
        return Err(Error::ShapeMismatch(format!(
            "queries and keys must share a shape, got {}x{} and {}x{}",
            q.rows(),
            q.cols(),
            k.rows(),
            k.cols()
        )));
    }
    if scheme.is_rotary() && !q.cols().is_multiple_of(2) {
        return Err(Error::OddRotaryDimension(q.cols()));
    }
    match *scheme {
        PositionalScheme::NoPe | PositionalScheme::Alibi { .. } => q.matmul_transpose(k),
        PositionalScheme::Rope { base } => {
            let qr = rotate_rows(q, base, |i| i as f64)?;
            let kr = rotate_rows(k, base, |j| j as f64)?;
            qr.matmul_transpose(&kr)
        }
        PositionalScheme::PiRope { base, factor } => {
            let qr = rotate_rows(q, base, |i| i as f64 / factor)?;
            let kr = rotate_rows(k, base, |j| j as f64 / factor)?;
            qr.matmul_transpose(&kr)
        }
        PositionalScheme::ReRope { base, window } => {
            let qr = rotate_rows(q, base, |i| i as f64)?;
            let kr = rotate_rows(k, base, |j| j as f64)?;
            let q_clamped = rotate_rows(q, base, |_| window as f64)?;
            let mut out = qr.matmul_transpose(&kr)?;
            for i in 0..q.rows() {
                for j in 0..k.rows() {
                    if i >= j + window {
                        out.set(i, j, dot(q_clamped.row(i), k.row(j)));
                    }
                }
            }
            Ok(out)
        }
    }
}

/// Distance bias matrix for one head: entry (i, j) is -slope * (i - j) at or
/// below the diagonal and -inf above it, with slope 2^(-8(head+1)/head_count).
pub fn alibi_bias(n: usize, head: usize, head_count: usize) -> Matrix {
    assert!(head < head_count, "head {head} out of range {head_count}");
    let slope = (-8.0 * (head + 1) as f64 / head_count as f64).exp2();
    Matrix::from_fn(n, n, |i, j| {
        if j > i {
            f64::NEG_INFINITY
        } else {
            slope * (j as f64 - i as f64)
        }
    })
}
