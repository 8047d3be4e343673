//! Temperature schedules, masking regimes, and the two attention pipelines:
//! scaled dot-product and scaled cosine.

use crate::error::{Error, Result};
use crate::numerics::matrix::{norm, Matrix};
use crate::numerics::softmax::softmax_row_indexed;
use crate::positional::{alibi_bias, rope_score_matrix, PositionalScheme};

/// Length-dependent multiplier applied on top of the 1/sqrt(d_k) logit scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TemperatureSchedule {
    Vanilla,
    /// ln(n_te)
    LogLength,
    /// ln(n_te) / ln(base_len); equals 1 at the base length
    SoftmaxPlus {
        base_len: usize,
    },
    /// (0.1 ln(n_te/n_tr) + 1)^2
    YarnPreSoftmax {
        n_tr: usize,
    },
    /// sqrt[(1 - e^(2eps/d) n_te^(-2/d)) / (1 - e^(2eps/d) n_tr^(-2/d))]
    ///
    /// The entropy-matching temperature: calibrated to exactly 1 at the
    /// training length, it grows with n_te to cancel the entropy gain of a
    /// longer softmax. Requires epsilon < ln(min(n_te, n_tr)).
    InfoScale {
        n_tr: usize,
        d_k: usize,
        epsilon: f64,
    },
    Fixed {
        value: f64,
    },
}

/// Which logits survive: a cell is either kept (0) or erased (-inf).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MaskSpec {
    Full,
    Causal,
    /// Causal, restricted to the w most recent positions.
    Windowed {
        w: usize,
    },
    /// Causal, keeping the first `sinks` columns plus the w most recent.
    SinkWindow {
        sinks: usize,
        w: usize,
    },
    /// Same kept set as SinkWindow; the distance clamp that distinguishes
    /// the lambda-shaped regime lives in the positional scheme (ReRope).
    LambdaShaped {
        sinks: usize,
        w: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttentionSpec {
    pub n: usize,
    pub d_k: usize,
    pub schedule: TemperatureSchedule,
    pub mask: MaskSpec,
    pub positional: PositionalScheme,
    pub cosine: bool,
    /// Logit multiplier for the cosine path, ignored otherwise.
    pub cos_scale: f64,
}

/// Temperature multiplier at evaluation length n_te.
///
/// The InfoScale variant carries its own head dimension; it must agree with
/// the d_k argument so the caller cannot mix calibrations. Numerator and
/// denominator go through one shared expression, which makes the n_te = n_tr
/// case exactly sqrt(x/x) = 1.
pub fn temperature(schedule: &TemperatureSchedule, n_te: usize, d_k: usize) -> Result<f64> {
    if n_te == 0 {
        return Err(Error::InvalidParameter(
            "evaluation length must be at least 1".into(),
        ));
    }
    match *schedule {
        TemperatureSchedule::Vanilla => Ok(1.0),
        TemperatureSchedule::LogLength => {
            // ln(1) = 0 would zero out the logits entirely
            if n_te < 2 {
                return Err(Error::InvalidParameter(
                    "log-length scaling needs an evaluation length of at least 2".into(),
                ));
            }
            Ok((n_te as f64).ln())
        }
        TemperatureSchedule::SoftmaxPlus { base_len } => {
            if n_te < 2 {
                return Err(Error::InvalidParameter(
                    "log-length scaling needs an evaluation length of at least 2".into(),
                ));
            }
            if base_len < 2 {
                return Err(Error::InvalidParameter(format!(
                    "base length must be at least 2, got {base_len}"
                )));
            }
            Ok((n_te as f64).ln() / (base_len as f64).ln())
        }
        TemperatureSchedule::YarnPreSoftmax { n_tr } => {
            if n_tr < 2 {
                return Err(Error::InvalidParameter(format!(
                    "training length must be at least 2, got {n_tr}"
                )));
            }
            let g = 0.1 * (n_te as f64 / n_tr as f64).ln() + 1.0;
            Ok(g * g)
        }
        TemperatureSchedule::InfoScale {
            n_tr,
            d_k: ds,
            epsilon,
        } => {
            if n_tr < 2 {
                return Err(Error::InvalidParameter(format!(
                    "training length must be at least 2, got {n_tr}"
                )));
            }
            if ds < 2 {
                return Err(Error::InvalidParameter(format!(
                    "head dimension must be at least 2, got {ds}"
                )));
            }
            if ds != d_k {
                return Err(Error::InvalidParameter(format!(
                    "schedule is calibrated for head dimension {ds}, asked to run at {d_k}"
                )));
            }
            let d = ds as f64;
            let spread = (2.0 * epsilon / d).exp();
            let headroom = |n: usize| 1.0 - spread * (n as f64).powf(-2.0 / d);
            let num = headroom(n_te);
            if num <= 0.0 {
                return Err(Error::EpsilonTooLargeForLength { n: n_te });
            }
            let den = headroom(n_tr);
            if den <= 0.0 {
                return Err(Error::EpsilonTooLargeForLength { n: n_tr });
            }
            Ok((num / den).sqrt())
        }
        TemperatureSchedule::Fixed { value } => {
            if !(value > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "fixed temperature must be positive, got {value}"
                )));
            }
            Ok(value)
        }
    }
}

fn kept(mask: &MaskSpec, i: usize, j: usize) -> bool {
    match *mask {
        MaskSpec::Full => true,
        MaskSpec::Causal => j <= i,
        MaskSpec::Windowed { w } => j <= i && i - j < w,
        MaskSpec::SinkWindow { sinks, w } | MaskSpec::LambdaShaped { sinks, w } => {
            j <= i && (j < sinks || i - j < w)
        }
    }
}

/// n x n matrix of 0 (kept) and -inf (erased).
pub fn build_mask(mask: &MaskSpec, n: usize) -> Result<Matrix> {
    if n < 1 {
        return Err(Error::InvalidParameter(
            "mask needs a sequence length of at least 1".into(),
        ));
    }
    let (sinks, w) = match *mask {
        MaskSpec::Full | MaskSpec::Causal => (0, 0),
        MaskSpec::Windowed { w } => (0, w),
        MaskSpec::SinkWindow { sinks, w } | MaskSpec::LambdaShaped { sinks, w } => (sinks, w),
    };
    if !matches!(mask, MaskSpec::Full | MaskSpec::Causal) {
        if w < 1 {
            return Err(Error::InvalidParameter(
                "mask window must be at least 1".into(),
            ));
        }
        if sinks + w > n {
            return Err(Error::MaskTooWide {
                sinks,
                window: w,
                n,
            });
        }
    }
    Ok(Matrix::from_fn(n, n, |i, j| {
        if kept(mask, i, j) {
            0.0
        } else {
            f64::NEG_INFINITY
        }
    }))
}

impl AttentionSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::InvalidParameter(
                "sequence length must be at least 1".into(),
            ));
        }
        if self.d_k < 2 {
            return Err(Error::InvalidParameter(format!(
                "head dimension must be at least 2, got {}",
                self.d_k
            )));
        }
        self.positional.validate()?;
        if self.positional.is_rotary() && !self.d_k.is_multiple_of(2) {
            return Err(Error::OddRotaryDimension(self.d_k));
        }
        if self.cosine && !(self.cos_scale > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "cosine scale must be positive, got {}",
                self.cos_scale
            )));
        }
        Ok(())
    }
}

fn unit_rows(m: &Matrix) -> Result<Matrix> {
    let mut out = m.clone();
    for i in 0..out.rows() {
        let r = out.row_mut(i);
        let len = norm(r);
        if !(len > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "row {i} has zero norm and cannot be normalized"
            )));
        }
        for x in r {
            *x /= len;
        }
    }
    Ok(out)
}

/// Runs one attention head and returns (output, probs).
///
/// Dot-product path: logits = temp/sqrt(d_k) * scores + bias + mask, where
/// the bias term exists only for the Alibi scheme (head 0). Cosine path:
/// rows are unit-normalized before the positional transform and logits are
/// temp * cos_scale * cos(theta_ij) + mask, with no bias or 1/sqrt(d_k).
pub fn attend(
    q: &Matrix,
    k: &Matrix,
    v: &Matrix,
    spec: &AttentionSpec,
) -> Result<(Matrix, Matrix)> {
    spec.validate()?;
    if q.rows() != spec.n || q.cols() != spec.d_k || k.rows() != spec.n || k.cols() != spec.d_k {
        return Err(Error::ShapeMismatch(format!(
            "expected q and k of shape {}x{}, got {}x{} and {}x{}",
            spec.n,
            spec.d_k,
            q.rows(),
            q.cols(),
            k.rows(),
            k.cols()
        )));
    }
    if v.rows() != spec.n {
        return Err(Error::ShapeMismatch(format!(
            "values need {} rows, got {}",
            spec.n,
            v.rows()
        )));
    }
    let temp = temperature(&spec.schedule, spec.n, spec.d_k)?;
    let mask = build_mask(&spec.mask, spec.n)?;
    let mut logits = if spec.cosine {
        let qn = unit_rows(q)?;
        let kn = unit_rows(k)?;
        let mut s = rope_score_matrix(&qn, &kn, &spec.positional)?;
        let scale = temp * spec.cos_scale;
        for i in 0..spec.n {
            for j in 0..spec.n {
                s.set(i, j, scale * s.get(i, j) + mask.get(i, j));
            }
        }
        s
    } else {
        let mut s = rope_score_matrix(q, k, &spec.positional)?;
        let scale = temp / (spec.d_k as f64).sqrt();
        let bias = match spec.positional {
            PositionalScheme::Alibi { head_count } => Some(alibi_bias(spec.n, 0, head_count)),
            _ => None,
        };
        for i in 0..spec.n {
            for j in 0..spec.n {
                let mut l = scale * s.get(i, j) + mask.get(i, j);
                if let Some(b) = &bias {
                    l += b.get(i, j);
                }
                s.set(i, j, l);
            }
        }
        s
    };
    for i in 0..spec.n {
        let p = softmax_row_indexed(logits.row(i), i)?;
        logits.row_mut(i).copy_from_slice(&p);
    }
    let probs = logits;
    let output = probs.matmul(v)?;
    Ok((output, probs))
}

/// Mean over rows of the probability mass sitting within the last w
/// positions (0 <= i - j < w). Rows are assumed normalized.
pub fn mass_in_window(probs: &Matrix, w: usize) -> f64 {
    let n = probs.rows();
    if n == 0 || w == 0 || probs.cols() == 0 {
        return 0.0;
    }
    let mut total = 0.0;
    for i in 0..n {
        let lo = i + 1 - w.min(i + 1);
        let hi = i.min(probs.cols() - 1);
        for j in lo..=hi {
            total += probs.get(i, j);
        }
    }
    total / n as f64
}
