use crate::error::{Error, Result};

/// Softmax of one logits row with max-subtraction.
///
/// `-inf` entries are mask sentinels and map to exactly 0.0. Reduction runs
/// left to right so repeated calls are bit-identical.
pub fn softmax_row(logits: &[f64]) -> Result<Vec<f64>> {
    softmax_row_indexed(logits, 0)
}

/// Same as [`softmax_row`] but reports `row` in the fully-masked error.
pub fn softmax_row_indexed(logits: &[f64], row: usize) -> Result<Vec<f64>> {
    let mut max = f64::NEG_INFINITY;
    for &x in logits {
        debug_assert!(!x.is_nan(), "NaN logit");
        if x > max {
            max = x;
        }
    }
    if max == f64::NEG_INFINITY {
        return Err(Error::FullyMaskedRow { row });
    }
    let mut out = Vec::with_capacity(logits.len());
    let mut sum = 0.0;
    for &x in logits {
        // exp(-inf - max) = 0 exactly
        let e = if x == f64::NEG_INFINITY {
            0.0
        } else {
            (x - max).exp()
        };
        sum += e;
        out.push(e);
    }
    for p in &mut out {
        *p /= sum;
    }
    Ok(out)
}
