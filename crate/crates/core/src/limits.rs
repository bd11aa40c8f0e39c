//! Gaussian fluctuation parameters of the component statistics and the
//! critical-window limit process: Skorohod reflection of a Brownian motion
//! with parabolic drift, carrying Poisson marks at rate equal to the
//! reflected path.

use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};

use crate::math::{acos_clamped, sqrt};
use crate::rates::beta_fp;
use crate::rng::RngSeed;

/// Mean vector and covariance of the fluctuations of (count, largest size,
/// largest excess), in units of the CLT scale. The same formulas serve the
/// moderate-deviation scale with its own drift parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitParams {
    pub mean: [f64; 3],
    pub cov: [[f64; 3]; 3],
    /// `false` for `c <= 1`: only the count entry is defined there and the
    /// size/excess slots are zeroed placeholders.
    pub valid_beta_gamma: bool,
}

/// Fluctuation parameters for intensity `c` and drift `theta` (the limit of
/// `sqrt(n)(c_n - c)`, or its moderate-deviation analogue).
///
/// The mean is exactly linear in `theta`; the covariance does not depend
/// on it.
pub fn clt_params(c: f64, theta: f64) -> LimitParams {
    assert!(c > 0.0 && c.is_finite());
    let b = beta_fp(c);
    let ob = 1.0 - b;
    let mean_a = -theta * (1.0 - b * b) / 2.0;
    let var_a = b * ob + 0.5 * c * ob * ob;
    if c <= 1.0 {
        return LimitParams {
            mean: [mean_a, 0.0, 0.0],
            cov: [[var_a, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]],
            valid_beta_gamma: false,
        };
    }
    let denom = 1.0 - c * ob;
    let mean_b = theta * b * ob / denom;
    let mean_g = theta * b * b / 2.0;
    let var_b = b * ob / (denom * denom);
    let var_g = b * ob + c * b * (1.5 * b - 1.0);
    let cov_ab = -b * ob / denom;
    let cov_ag = -b * ob * (c - 1.0);
    let cov_bg = b * ob * (c - 1.0) / denom;
    LimitParams {
        mean: [mean_a, mean_b, mean_g],
        cov: [
            [var_a, cov_ab, cov_ag],
            [cov_ab, var_b, cov_bg],
            [cov_ag, cov_bg, var_g],
        ],
        valid_beta_gamma: true,
    }
}

/// Eigenvalues of a symmetric 3x3 matrix (trigonometric closed form),
/// ascending. Used to certify positive semi-definiteness.
pub fn sym3_eigenvalues(m: &[[f64; 3]; 3]) -> [f64; 3] {
    let p1 = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
    if p1 == 0.0 {
        let mut d = [m[0][0], m[1][1], m[2][2]];
        d.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
        return d;
    }
    let q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
    let p2 = (m[0][0] - q) * (m[0][0] - q)
        + (m[1][1] - q) * (m[1][1] - q)
        + (m[2][2] - q) * (m[2][2] - q)
        + 2.0 * p1;
    let p = sqrt(p2 / 6.0);
    let bij = |i: usize, j: usize| (m[i][j] - if i == j { q } else { 0.0 }) / p;
    let det_b = bij(0, 0) * (bij(1, 1) * bij(2, 2) - bij(1, 2) * bij(2, 1))
        - bij(0, 1) * (bij(1, 0) * bij(2, 2) - bij(1, 2) * bij(2, 0))
        + bij(0, 2) * (bij(1, 0) * bij(2, 1) - bij(1, 1) * bij(2, 0));
    let phi = acos_clamped(det_b / 2.0) / 3.0;
    let two_pi_third = 2.0 * core::f64::consts::PI / 3.0;
    let e1 = q + 2.0 * p * crate::math::cos(phi);
    let e3 = q + 2.0 * p * crate::math::cos(phi + two_pi_third);
    let e2 = 3.0 * q - e1 - e3;
    let mut out = [e1, e2, e3];
    out.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

/// Sample path of the critical-window limit: reflected `W_t + theta t -
/// t^2/2` on a uniform grid, with cumulative Poisson mark counts whose
/// per-cell intensity is the trapezoidal area of the reflected path.
#[derive(Clone, Debug)]
pub struct CriticalPath {
    theta: f64,
    dt: f64,
    x: Vec<f64>,
    marks: Vec<u64>,
}

impl CriticalPath {
    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t_max(&self) -> f64 {
        self.dt * (self.x.len() - 1) as f64
    }

    /// Reflected path values, `x[0] = 0`.
    pub fn x(&self) -> &[f64] {
        &self.x
    }

    /// Cumulative mark counts, aligned with `x`.
    pub fn marks(&self) -> &[u64] {
        &self.marks
    }

    pub fn sup(&self) -> f64 {
        self.x.iter().cloned().fold(0.0, f64::max)
    }
}

/// Default horizon: past `2 theta^+` the drift is at least 6 below zero,
/// so later excursions are negligible.
pub fn default_horizon(theta: f64) -> f64 {
    2.0 * theta.max(0.0) + 6.0
}

/// Euler scheme for the limit process. The free walk accumulates Gaussian
/// increments of variance `dt` plus the exact parabolic drift increment;
/// reflection subtracts the running minimum of the free walk (the Skorohod
/// map evaluated exactly on the discrete skeleton).
pub fn simulate_critical_limit(theta: f64, t_max: f64, dt: f64, seed: RngSeed) -> CriticalPath {
    let mut rng = seed.stream();
    simulate_with(theta, t_max, dt, 1.0, &mut rng)
}

/// Noise-free skeleton (diagnostic): the reflected drift path, no marks.
pub fn deterministic_skeleton(theta: f64, t_max: f64, dt: f64) -> CriticalPath {
    // noise scale zero: the RNG is never consulted
    let mut rng = RngSeed::new(0, 0).stream();
    simulate_with(theta, t_max, dt, 0.0, &mut rng)
}

fn simulate_with<R: Rng + ?Sized>(
    theta: f64,
    t_max: f64,
    dt: f64,
    noise: f64,
    rng: &mut R,
) -> CriticalPath {
    assert!(t_max > 0.0 && dt > 0.0 && dt < t_max);
    let steps = libm::ceil(t_max / dt) as usize;
    let sd = noise * sqrt(dt);
    let mut x = Vec::with_capacity(steps + 1);
    let mut marks = Vec::with_capacity(steps + 1);
    x.push(0.0);
    marks.push(0u64);
    let (mut free, mut run_min, mut total_marks) = (0.0f64, 0.0f64, 0u64);
    for i in 1..=steps {
        let t_mid = (i as f64 - 0.5) * dt;
        let dw: f64 = if noise == 0.0 {
            0.0
        } else {
            let z: f64 = StandardNormal.sample(rng);
            sd * z
        };
        free += (theta - t_mid) * dt + dw;
        run_min = run_min.min(free);
        let xi = free - run_min;
        let lambda = 0.5 * (x[i - 1] + xi) * dt;
        if lambda > 0.0 && noise != 0.0 {
            let draw: f64 = Poisson::new(lambda).expect("positive intensity").sample(rng);
            total_marks += draw as u64;
        }
        x.push(xi);
        marks.push(total_marks);
    }
    CriticalPath {
        theta,
        dt,
        x,
        marks,
    }
}

/// Maximal intervals where the path is strictly positive, at least
/// `min_len` long (default `2 dt` suppresses discretisation chatter).
/// Lengths are returned descending with the mark increments aligned.
pub fn excursions(path: &CriticalPath, min_len: f64) -> (Vec<f64>, Vec<u64>) {
    let dt = path.dt;
    let x = &path.x;
    let mut spans: Vec<(f64, u64)> = Vec::new();
    let mut start: Option<usize> = None;
    for i in 0..x.len() {
        if x[i] > 0.0 {
            if start.is_none() {
                start = Some(i.saturating_sub(1));
            }
            if i + 1 == x.len() {
                // truncated by the horizon
                let s = start.take().unwrap();
                let len = (i - s) as f64 * dt;
                if len >= min_len {
                    spans.push((len, path.marks[i] - path.marks[s]));
                }
            }
        } else if let Some(s) = start.take() {
            let len = (i - s) as f64 * dt;
            if len >= min_len {
                spans.push((len, path.marks[i] - path.marks[s]));
            }
        }
    }
    spans.sort_unstable_by(|a, b| b.partial_cmp(a).unwrap());
    (
        spans.iter().map(|s| s.0).collect(),
        spans.iter().map(|s| s.1).collect(),
    )
}
