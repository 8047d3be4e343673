use crate::error::{Error, Result};
use crate::numerics::matrix::Matrix;

/// SplitMix64 generator (Steele, Lea & Flood 2014).
///
/// Counter-based: the state advances by the 64-bit golden-ratio increment
/// 0x9e3779b97f4a7c15 and each output is a finalizer of the counter, so an
/// identical seed yields an identical stream on every platform. Gaussian
/// draws go through `ln`/`cos`/`sin` and therefore inherit the platform
/// libm's final-ulp rounding; the integer and uniform streams are bit-exact
/// everywhere.
#[derive(Debug, Clone)]
pub struct SeededRng {
    seed: u64,
    state: u64,
    cached_gaussian: Option<f64>,
}

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

// SplitMix64 output finalizer.
fn mix64(mut z: u64) -> u64 {
    z ^= z >> 30;
    z = z.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z ^= z >> 27;
    z = z.wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng {
            seed,
            state: seed,
            cached_gaussian: None,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Derives the RNG for an indexed substream (trial, grid point, ...).
    /// The rule is fixed: child seed = mix64(base_seed + mix64(index + 1)).
    /// Deriving the same index twice gives the same stream, so parallel and
    /// serial sweeps see identical draws.
    pub fn stream(&self, index: u64) -> SeededRng {
        SeededRng::new(mix64(self.seed.wrapping_add(mix64(index.wrapping_add(1)))))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix64(self.state)
    }

    /// Uniform in (0, 1]: 53-bit mantissa, never exactly zero.
    pub fn next_f64(&mut self) -> f64 {
        (((self.next_u64() >> 11) + 1) as f64) * (1.0 / 9007199254740992.0)
    }

    /// Standard normal via the Box-Muller transform (rejection-free).
    pub fn next_gaussian(&mut self) -> f64 {
        if let Some(z) = self.cached_gaussian.take() {
            return z;
        }
        let u1 = self.next_f64();
        let u2 = self.next_f64();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.cached_gaussian = Some(r * theta.sin());
        r * theta.cos()
    }

    /// Fills `out` with a uniform point on the sphere of the given radius.
    pub fn fill_sphere_point(&mut self, out: &mut [f64], radius: f64) {
        loop {
            for x in out.iter_mut() {
                *x = self.next_gaussian();
            }
            let n = super::matrix::norm(out);
            // A zero-norm draw has probability ~0 but would poison the scale.
            if n > 0.0 {
                let s = radius / n;
                for x in out.iter_mut() {
                    *x *= s;
                }
                return;
            }
        }
    }
}

/// n uniform samples on the radius-r sphere in `dim` dimensions, one per row.
/// Each draw takes `dim` independent standard normals and rescales to
/// radius, so row norms match the radius exactly up to rounding.
pub fn sample_hypersphere(
    rng: &mut SeededRng,
    dim: usize,
    radius: f64,
    n: usize,
) -> Result<Matrix> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall(dim));
    }
    if !(radius > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "sphere radius must be positive, got {radius}"
        )));
    }
    let mut m = Matrix::zeros(n, dim);
    for i in 0..n {
        rng.fill_sphere_point(m.row_mut(i), radius);
    }
    Ok(m)
}

/// n unit vectors inside a spherical cap: each row is a common axis u tipped
/// by a uniform angle in [0, arccos(1-delta)/2], so every pairwise cosine is
/// at least 1-delta. Returns the axis together with the rows. delta = 0
/// reproduces u in every row bit for bit.
pub fn sample_spherical_cap(
    rng: &mut SeededRng,
    dim: usize,
    delta: f64,
    n: usize,
) -> Result<(Vec<f64>, Matrix)> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall(dim));
    }
    if !(0.0..1.0).contains(&delta) {
        return Err(Error::InvalidParameter(format!(
            "cap spread must lie in [0, 1), got {delta}"
        )));
    }
    let mut u = vec![0.0; dim];
    rng.fill_sphere_point(&mut u, 1.0);
    let phi = (1.0 - delta).acos() / 2.0;
    let mut m = Matrix::zeros(n, dim);
    let mut g = vec![0.0; dim];
    for i in 0..n {
        let psi = rng.next_f64() * phi;
        // random unit direction orthogonal to u
        loop {
            rng.fill_sphere_point(&mut g, 1.0);
            let along = super::matrix::dot(&g, &u);
            for (gc, uc) in g.iter_mut().zip(&u) {
                *gc -= along * uc;
            }
            let len = super::matrix::norm(&g);
            if len > 1e-9 {
                for gc in g.iter_mut() {
                    *gc /= len;
                }
                break;
            }
        }
        let (s, c) = psi.sin_cos();
        let row = m.row_mut(i);
        for ((rc, uc), gc) in row.iter_mut().zip(&u).zip(&g) {
            *rc = c * uc + s * gc;
        }
    }
    Ok((u, m))
}
