use crate::error::{Error, Result};

/// Gauss-Legendre settings: fixed node count per panel plus the absolute
/// tolerance that successive refinements must reach.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub node_count: usize,
    pub abs_tolerance: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            node_count: 64,
            abs_tolerance: 1e-12,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.node_count < 16 {
            return Err(Error::InvalidParameter(format!(
                "quadrature node count must be at least 16, got {}",
                self.node_count
            )));
        }
        if !(self.abs_tolerance > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "quadrature tolerance must be positive, got {}",
                self.abs_tolerance
            )));
        }
        Ok(())
    }
}

// Total function-evaluation budget across all refinements.
const MAX_EVALUATIONS: usize = 1 << 20;

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
/// Legendre polynomial, seeded with the Chebyshev-like angle guess.
pub fn legendre_nodes(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            // recurrence for P_n(x) and its derivative
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            pp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / pp;
            x -= dx;
            if dx.abs() <= 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn panel_sum(
    f: &mut impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    panels: usize,
    nodes: &[f64],
    weights: &[f64],
) -> f64 {
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + h * p as f64;
        let mid = lo + 0.5 * h;
        let half = 0.5 * h;
        let mut acc = 0.0;
        for (x, w) in nodes.iter().zip(weights) {
            acc += w * f(mid + half * x);
        }
        total += acc * half;
    }
    total
}

/// Single-panel fixed-order estimate with no refinement; used to size the
/// tolerance for integrands whose magnitude is unknown a priori.
pub fn gauss_legendre_fixed(
    mut f: impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    node_count: usize,
) -> f64 {
    let (nodes, weights) = legendre_nodes(node_count);
    panel_sum(&mut f, a, b, 1, &nodes, &weights)
}

/// Integrates f over [a, b]: composite Gauss-Legendre, bisecting every panel
/// until two successive refinements differ by less than `abs_tolerance`.
/// Fails with a non-convergence error once the evaluation budget (2^20 calls)
/// is exhausted.
pub fn gauss_legendre(
    mut f: impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    spec.validate()?;
    if !(a < b) {
        return Err(Error::InvalidParameter(format!(
            "integration bounds must satisfy a < b, got [{a}, {b}]"
        )));
    }
    let (nodes, weights) = legendre_nodes(spec.node_count);
    let mut panels = 1;
    let mut evaluations = spec.node_count;
    let mut prev = panel_sum(&mut f, a, b, panels, &nodes, &weights);
    loop {
        panels *= 2;
        let cost = panels * spec.node_count;
        if evaluations + cost > MAX_EVALUATIONS {
            return Err(Error::QuadratureDidNotConverge {
                evaluations,
                tolerance: spec.abs_tolerance,
            });
        }
        evaluations += cost;
        let next = panel_sum(&mut f, a, b, panels, &nodes, &weights);
        if (next - prev).abs() < spec.abs_tolerance {
            return Ok(next);
        }
        prev = next;
    }
}
