//! Optimal trajectories of the process-level action functionals and their
//! quadrature evaluation.
//!
//! Quadrature convention: a [`Trajectory`] is treated as the piecewise
//! linear interpolant of its grid values. Within one cell the slope is
//! constant, the weight `c(1 - t - R)` is linear, and the integrand
//! `pi(.)·weight` integrates in closed form (the `log` part has an exact
//! antiderivative), so the only discretisation error is the interpolation
//! itself: O(1/N^2), including at endpoints where the weight vanishes.

use alloc::vec::Vec;

use crate::exploration::reflect;
use crate::math::{exp, x_ln_x};
use crate::rates::{beta_fp, k_rho, l_c, pi_fn};
use crate::solve;

/// A real path sampled on a uniform grid over `[t0, t1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    t0: f64,
    t1: f64,
    values: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrajectoryError {
    EmptyPath,
    BadGrid,
    NonFiniteValue,
}

impl core::fmt::Display for TrajectoryError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::EmptyPath => write!(f, "trajectory needs at least two grid points"),
            Self::BadGrid => write!(f, "grid must satisfy t0 < t1 and be finite"),
            Self::NonFiniteValue => write!(f, "trajectory values must be finite"),
        }
    }
}

impl core::error::Error for TrajectoryError {}

impl Trajectory {
    pub fn new(t0: f64, t1: f64, values: Vec<f64>) -> Result<Self, TrajectoryError> {
        if values.len() < 2 {
            return Err(TrajectoryError::EmptyPath);
        }
        if !(t0.is_finite() && t1.is_finite() && t1 > t0) {
            return Err(TrajectoryError::BadGrid);
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(TrajectoryError::NonFiniteValue);
        }
        Ok(Self { t0, t1, values })
    }

    pub fn from_fn<F: FnMut(f64) -> f64>(t0: f64, t1: f64, cells: usize, mut f: F) -> Self {
        assert!(cells >= 1 && t1 > t0);
        let values = (0..=cells).map(|i| f(t0 + (t1 - t0) * i as f64 / cells as f64)).collect();
        Self { t0, t1, values }
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn t1(&self) -> f64 {
        self.t1
    }

    pub fn cells(&self) -> usize {
        self.values.len() - 1
    }

    pub fn dt(&self) -> f64 {
        (self.t1 - self.t0) / self.cells() as f64
    }

    pub fn time(&self, i: usize) -> f64 {
        self.t0 + (self.t1 - self.t0) * i as f64 / self.cells() as f64
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Forward-difference slopes, one per cell.
    pub fn slopes(&self) -> Vec<f64> {
        let dt = self.dt();
        self.values.windows(2).map(|w| (w[1] - w[0]) / dt).collect()
    }

    /// Trapezoidal integral of the values.
    pub fn integral(&self) -> f64 {
        let dt = self.dt();
        let inner: f64 = self.values[1..self.values.len() - 1].iter().sum();
        dt * (inner + 0.5 * (self.values[0] + self.values[self.values.len() - 1]))
    }

    /// Composite Simpson integral (3/8 rule on the tail when the cell count
    /// is odd); exact for cubics, used where trapezoid error would drown
    /// the quantity under test.
    pub fn integral_simpson(&self) -> f64 {
        let n = self.cells();
        let dt = self.dt();
        let v = &self.values;
        if n == 1 {
            return 0.5 * dt * (v[0] + v[1]);
        }
        let even_end = if n % 2 == 0 { n } else { n - 3 };
        let mut acc = 0.0;
        let mut i = 0;
        while i + 2 <= even_end {
            acc += dt / 3.0 * (v[i] + 4.0 * v[i + 1] + v[i + 2]);
            i += 2;
        }
        if n % 2 != 0 {
            if n >= 3 {
                acc += 3.0 * dt / 8.0 * (v[n - 3] + 3.0 * v[n - 2] + 3.0 * v[n - 1] + v[n]);
            } else {
                acc += 0.5 * dt * (v[n - 1] + v[n]);
            }
        }
        acc
    }
}

/// Skorohod reflection of a grid path: the non-negative reflected part and
/// the non-decreasing regulator, as trajectories on the same grid.
pub fn skorohod(path: &Trajectory) -> (Trajectory, Trajectory) {
    let (r, t) = reflect(path.values());
    (
        Trajectory {
            t0: path.t0,
            t1: path.t1,
            values: r,
        },
        Trajectory {
            t0: path.t0,
            t1: path.t1,
            values: t,
        },
    )
}

/// Law-of-large-numbers curves on `[0, 1]`: queue `qbar`, regulator
/// `phibar` and excess-edge curve `ebar`.
///
/// `qbar_t = 1 - t - e^{-ct}` up to the giant fraction `beta`, zero after;
/// `phibar` picks up once the queue dies; `ebar` saturates at the giant's
/// excess. `phibar_1 = alpha_c` and `ebar_beta = gamma_c`.
pub fn lln_curves(c: f64, cells: usize) -> (Trajectory, Trajectory, Trajectory) {
    assert!(c > 0.0 && cells >= 1);
    let beta = beta_fp(c);
    let qbar = Trajectory::from_fn(0.0, 1.0, cells, |t| {
        if t <= beta {
            (1.0 - t - exp(-c * t)).max(0.0)
        } else {
            0.0
        }
    });
    let phibar = Trajectory::from_fn(0.0, 1.0, cells, |t| {
        if t <= beta {
            0.0
        } else {
            0.5 * c * (t * t - beta * beta) - (c - 1.0) * (t - beta)
        }
    });
    let ebar = Trajectory::from_fn(0.0, 1.0, cells, |t| {
        let s = t.min(beta);
        exp(-c * s) - 1.0 + c * s - 0.5 * c * s * s
    });
    (qbar, phibar, ebar)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VariationalError {
    /// `(s, t)` must satisfy `0 <= s < t <= 1`.
    BadWindow,
    /// the prescribed area must satisfy `0 <= w < (t-s)^2/2`.
    AreaOutOfRange,
}

impl core::fmt::Display for VariationalError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::BadWindow => write!(f, "need 0 <= s < t <= 1"),
            Self::AreaOutOfRange => write!(f, "excursion area must lie in [0, (t-s)^2/2)"),
        }
    }
}

impl core::error::Error for VariationalError {}

/// The cheapest excursion on `[s, t]` with prescribed area `w`, its tilt
/// `rho` and the value of the restricted action integral over `[s, t]`,
/// `sup_rho(K_rho(t-s) + (rho - c) w) + L_c(t) - L_c(s)`.
pub fn optimal_excursion(
    s: f64,
    t: f64,
    w: f64,
    c: f64,
    cells: usize,
) -> Result<(Trajectory, f64, f64), VariationalError> {
    if !(0.0 <= s && s < t && t <= 1.0) {
        return Err(VariationalError::BadWindow);
    }
    let u = t - s;
    if !(0.0..(u * u) / 2.0).contains(&w) {
        return Err(VariationalError::AreaOutOfRange);
    }
    if w == 0.0 {
        let traj = Trajectory::from_fn(s, t, cells, |_| 0.0);
        return Ok((traj, 0.0, l_c(t, c) - l_c(s, c)));
    }
    let rho = excursion_tilt(u, w);
    let y = rho * u;
    let denom = -crate::math::expm1(-y);
    let traj = Trajectory::from_fn(s, t, cells, |p| {
        (s - p + u * (-crate::math::expm1(-rho * (p - s))) / denom).max(0.0)
    });
    let cost = k_rho(u, rho) + (rho - c) * w + l_c(t, c) - l_c(s, c);
    Ok((traj, rho, cost))
}

/// Tilt of the area-`w` excursion over a window of length `u`: the positive
/// root of `bump(y) = 1 + w y / u^2 + y / 2` in `y = rho u`, i.e. the
/// stationarity condition `dK_rho(u)/drho = -w`.
fn excursion_tilt(u: f64, w: f64) -> f64 {
    let g = |y: f64| crate::math::bump(y) - 0.5 * y - 1.0 - w * y / (u * u);
    // series root y ~ 12 w / u^2; g < 0 below the positive root
    let seed = 12.0 * w / (u * u);
    let mut lo = seed / 2.0;
    while g(lo) >= 0.0 {
        lo /= 2.0;
        assert!(lo > 1e-300);
    }
    let mut hi = (2.0 * seed).max(1.0);
    while g(hi) <= 0.0 {
        hi *= 2.0;
        assert!(hi.is_finite());
    }
    solve::bisect(g, lo, hi, 1e-14) / u
}

/// The optimal critical-window excursion: the area-`w` parabola on `[s, t]`.
pub fn optimal_excursion_critical(s: f64, t: f64, w: f64, cells: usize) -> Trajectory {
    assert!(0.0 <= s && s < t && w >= 0.0);
    let span = t - s;
    let scale = 6.0 * w / (span * span * span);
    Trajectory::from_fn(s, t, cells, |p| scale * (p - s) * (t - p))
}

/// Closed-form critical action of the optimal parabola:
/// `6 w^2/(t-s)^3 - w + ((t - theta)^3 - (s - theta)^3)/6`.
pub fn critical_excursion_cost(s: f64, t: f64, w: f64, theta: f64) -> f64 {
    let span = t - s;
    6.0 * w * w / (span * span * span) - w
        + (cube(t - theta) - cube(s - theta)) / 6.0
}

#[inline]
fn cube(x: f64) -> f64 {
    x * x * x
}

/// `integral of x_ln_x along a linear segment`: exact antiderivative of
/// `log` against a linear weight; `gamma (log gamma - 1)` evaluated stably
/// through `x_ln_x`.
fn int_ln_linear(ga: f64, gb: f64, dt: f64) -> f64 {
    if (gb - ga).abs() <= 1e-13 * (ga.abs() + gb.abs()).max(1e-300) {
        let mid = 0.5 * (ga + gb);
        if mid <= 0.0 {
            return 0.0; // weight identically zero on the cell
        }
        return dt * crate::math::ln(mid);
    }
    dt * ((x_ln_x(gb) - gb) - (x_ln_x(ga) - ga)) / (gb - ga)
}

/// One cell of `int pi(A / gamma(t)) gamma(t) dt` with constant `A >= 0`
/// and linear weight `gamma` from `ga` to `gb` (both `>= 0`).
fn pi_cell(a_const: f64, ga: f64, gb: f64, dt: f64) -> f64 {
    debug_assert!(a_const >= 0.0 && ga >= 0.0 && gb >= 0.0);
    let mean_gamma = 0.5 * (ga + gb);
    if a_const == 0.0 {
        return dt * mean_gamma; // pi(0) = 1
    }
    if ga <= 0.0 && gb <= 0.0 {
        // positive numerator against a vanished weight: pi(inf) * 0 = inf
        return f64::INFINITY;
    }
    dt * (x_ln_x(a_const) - a_const + mean_gamma) - a_const * int_ln_linear(ga, gb, dt)
}

const SLOPE_TOL: f64 = 1e-9;

/// Action functional of the centred exploration walk: quadrature of
/// `pi((xdot + 1)/(c(1 - t - R(x))))·c(1 - t - R(x))` over the
/// trajectory's own window, with `R(x)` the Skorohod reflection.
///
/// Infinite when a cell slope drops below `-1` or the reflected path
/// exceeds `1 - t`.
pub fn i_s_functional(traj: &Trajectory, c: f64) -> f64 {
    assert!(c > 0.0);
    let (refl, _) = reflect(traj.values());
    let dt = traj.dt();
    let slopes = traj.slopes();
    let mut acc = 0.0;
    for (i, &m) in slopes.iter().enumerate() {
        let a_const = m + 1.0;
        if a_const < -SLOPE_TOL {
            return f64::INFINITY;
        }
        let ga = c * (1.0 - traj.time(i) - refl[i]);
        let gb = c * (1.0 - traj.time(i + 1) - refl[i + 1]);
        if ga < -SLOPE_TOL || gb < -SLOPE_TOL {
            return f64::INFINITY; // R(x) exceeded 1 - t
        }
        let cell = pi_cell(a_const.max(0.0), ga.max(0.0), gb.max(0.0), dt);
        if !cell.is_finite() {
            return f64::INFINITY;
        }
        acc += cell;
    }
    acc.max(0.0)
}

/// Critical-window action of a path: `(1/2) int (xdot + p - theta)^2 dp`,
/// integrated exactly per cell (the integrand is quadratic).
pub fn breve_i_s_functional(traj: &Trajectory, theta: f64) -> f64 {
    let slopes = traj.slopes();
    let mut acc = 0.0;
    for (i, &m) in slopes.iter().enumerate() {
        let ta = traj.time(i);
        let tb = traj.time(i + 1);
        acc += (cube(m + tb - theta) - cube(m + ta - theta)) / 6.0;
    }
    acc.max(0.0)
}

/// Default flatness threshold: constancy of exactly generated paths.
pub const FLAT_TOL: f64 = 1e-12;

/// Action functional of the regulator path: the running-cost integral plus
/// `K_c` penalties for the maximal constancy intervals.
///
/// `phi` must be non-decreasing with slope at most 1; violations return
/// infinity. Cells are "flat" when their increment is below `flat_tol`
/// in absolute value (grid-resolution dependent for user-supplied paths).
pub fn i_phi_functional(phi: &Trajectory, c: f64) -> f64 {
    i_phi_functional_with(phi, c, FLAT_TOL)
}

pub fn i_phi_functional_with(phi: &Trajectory, c: f64, flat_tol: f64) -> f64 {
    assert!(c > 0.0);
    let dt = phi.dt();
    let slopes = phi.slopes();
    let mut acc = 0.0;
    let mut flat_run = 0usize;
    for (i, &m) in slopes.iter().enumerate() {
        if m < -SLOPE_TOL || m > 1.0 + SLOPE_TOL {
            return f64::INFINITY;
        }
        let a_const = (1.0 - m).max(0.0);
        let ga = c * (1.0 - phi.time(i));
        let gb = c * (1.0 - phi.time(i + 1));
        let cell = pi_cell(a_const, ga.max(0.0), gb.max(0.0), dt);
        if !cell.is_finite() {
            return f64::INFINITY;
        }
        acc += cell;
        if (phi.values()[i + 1] - phi.values()[i]).abs() < flat_tol {
            flat_run += 1;
        } else {
            if flat_run > 0 {
                acc += k_rho(flat_run as f64 * dt, c);
            }
            flat_run = 0;
        }
    }
    if flat_run > 0 {
        acc += k_rho(flat_run as f64 * dt, c);
    }
    acc.max(0.0)
}

/// Action functional of the queue path: the busy-period integrand where the
/// path is positive, the idle integrand below the supercritical horizon
/// `(1 - 1/c)^+` where it vanishes. A cell counts as positive when both its
/// endpoints are (grid-resolution dependent at grazing zeros).
pub fn i_q_functional(q: &Trajectory, c: f64) -> f64 {
    assert!(c > 0.0);
    let dt = q.dt();
    let slopes = q.slopes();
    let horizon = (1.0 - 1.0 / c).max(0.0);
    let mut acc = 0.0;
    for (i, &m) in slopes.iter().enumerate() {
        let (xa, xb) = (q.values()[i], q.values()[i + 1]);
        if xa < -SLOPE_TOL || xb < -SLOPE_TOL || m < -1.0 - SLOPE_TOL {
            return f64::INFINITY;
        }
        let (ta, tb) = (q.time(i), q.time(i + 1));
        if xa > 0.0 && xb > 0.0 {
            let ga = c * (1.0 - ta - xa);
            let gb = c * (1.0 - tb - xb);
            if ga < -SLOPE_TOL || gb < -SLOPE_TOL {
                return f64::INFINITY;
            }
            let cell = pi_cell((m + 1.0).max(0.0), ga.max(0.0), gb.max(0.0), dt);
            if !cell.is_finite() {
                return f64::INFINITY;
            }
            acc += cell;
        } else {
            // idle integrand, restricted to t < horizon (split mid-cell)
            let hi = tb.min(horizon);
            if hi > ta {
                let ga = c * (1.0 - ta);
                let gb = c * (1.0 - hi);
                acc += pi_cell(1.0, ga.max(0.0), gb.max(0.0), hi - ta);
            }
        }
    }
    acc.max(0.0)
}

/// Minimal regulator cost for endpoint mass `a` and flat measure at least
/// `tau`, together with the minimising path: flat until
/// `m = (1 - 2a) v tau`, then the linear density `1 - 2(1-m-a)(1-t)/(1-m)^2`.
///
/// Infeasible combinations (`a > 1 - tau`) cost infinity.
pub fn optimal_regulator(a: f64, tau: f64, c: f64, cells: usize) -> (Trajectory, f64) {
    assert!((0.0..=1.0).contains(&a) && (0.0..=1.0).contains(&tau) && c > 0.0);
    if a > 1.0 - tau + 1e-12 {
        let traj = Trajectory::from_fn(0.0, 1.0, cells, |_| 0.0);
        return (traj, f64::INFINITY);
    }
    let m = tau.max(1.0 - 2.0 * a);
    let rem = 1.0 - m;
    let cost = if rem <= 0.0 {
        l_c(1.0, c)
    } else {
        let arg = 2.0 * (1.0 - a - m) / (c * rem * rem);
        l_c(m, c) + 0.5 * c * rem * rem * pi_fn(arg.max(0.0))
    };
    let traj = if rem <= 1e-15 {
        Trajectory::from_fn(0.0, 1.0, cells, |_| 0.0)
    } else {
        let b = 2.0 * (1.0 - m - a) / (rem * rem);
        Trajectory::from_fn(0.0, 1.0, cells, |t| {
            if t <= m {
                0.0
            } else {
                (t - m) - 0.5 * b * (rem * rem - (1.0 - t) * (1.0 - t))
            }
        })
    };
    (traj, cost)
}

/// Critical analogue of the regulator problem: minimal
/// `(1/2) int (-phidot - theta + t)^2 dt` over non-decreasing `phi` with
/// flat measure at least `tau`. Cost `((tau - theta)^3 v 0 + theta^3)/6`,
/// minimiser `phidot = (t - theta)^+` after `tau v theta`.
pub fn critical_regulator(tau: f64, theta: f64, t_max: f64, cells: usize) -> (Trajectory, f64) {
    assert!(tau >= 0.0 && t_max > tau.max(theta.max(0.0)));
    let start = tau.max(theta.max(0.0));
    let traj = Trajectory::from_fn(0.0, t_max, cells, |t| {
        if t <= start {
            0.0
        } else {
            let lo = start.max(theta);
            0.5 * ((t - theta) * (t - theta) - (lo - theta) * (lo - theta))
        }
    });
    (traj, critical_regulator_cost(tau, theta))
}

pub fn critical_regulator_cost(tau: f64, theta: f64) -> f64 {
    (cube(tau - theta).max(0.0) + cube(theta)) / 6.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rates::lln_constants;

    const C: f64 = 2.0;

    #[test]
    fn trajectory_basics() {
        assert_eq!(
            Trajectory::new(0.0, 1.0, alloc::vec![0.0]).unwrap_err(),
            TrajectoryError::EmptyPath
        );
        assert_eq!(
            Trajectory::new(1.0, 0.0, alloc::vec![0.0, 1.0]).unwrap_err(),
            TrajectoryError::BadGrid
        );
        let t = Trajectory::from_fn(0.0, 1.0, 4, |x| x);
        assert_eq!(t.slopes(), alloc::vec![1.0; 4]);
        assert!((t.integral() - 0.5).abs() < 1e-15);
        // Simpson is exact for cubics, also on odd cell counts
        let t = Trajectory::from_fn(0.0, 1.0, 9, |x| x * x * x);
        assert!((t.integral_simpson() - 0.25).abs() < 1e-14);
    }

    #[test]
    fn lln_curves_hit_the_limit_constants() {
        let (alpha, beta, gamma) = lln_constants(C);
        let (qbar, phibar, ebar) = lln_curves(C, 4096);
        assert_eq!(qbar.values()[0], 0.0);
        assert_eq!(*qbar.values().last().unwrap(), 0.0);
        // spot value: qbar(0.3) = 0.7 - e^{-0.6}
        let i = (0.3 * 4096.0) as usize;
        assert!((qbar.values()[i] - 0.15118836390597356737).abs() < 1e-4);
        assert!((phibar.values().last().unwrap() - alpha).abs() < 1e-12);
        assert!((ebar.values().last().unwrap() - gamma).abs() < 1e-12);
        // ebar is flat after beta
        let j = ((beta + 0.01) * 4096.0) as usize;
        assert!((ebar.values()[j] - gamma).abs() < 1e-12);
    }

    #[test]
    fn lln_skorohod_identity_on_the_grid() {
        // qbar solves the Skorohod problem for the drift integral, so
        // qbar - phibar must equal int (c(1 - qbar - s) - 1) ds up to O(1/N)
        let n = 8192;
        let (qbar, phibar, _) = lln_curves(C, n);
        let dt = qbar.dt();
        let mut integral = 0.0;
        let mut max_gap: f64 = 0.0;
        for i in 0..n {
            let f = |k: usize| C * (1.0 - qbar.values()[k] - qbar.time(k)) - 1.0;
            integral += 0.5 * dt * (f(i) + f(i + 1));
            let lhs = qbar.values()[i + 1] - phibar.values()[i + 1];
            max_gap = max_gap.max((lhs - integral).abs());
        }
        assert!(max_gap < 5.0 / n as f64, "max gap {max_gap}");
    }

    #[test]
    fn optimal_excursion_shape_and_cost() {
        let (traj, rho, cost) = optimal_excursion(0.2, 0.7, 0.05, C, 4096).unwrap();
        assert!((rho - 5.3442077105467710893).abs() < 1e-10);
        assert!((cost - 0.047172190975707340254).abs() < 1e-12);
        assert_eq!(traj.values()[0], 0.0);
        assert!(traj.values().last().unwrap().abs() < 1e-12);
        assert!((traj.integral_simpson() - 0.05).abs() < 1e-9);
        // quadrature of the action matches the closed form
        let quad = i_s_functional(&traj, C);
        assert!((quad - cost).abs() < 1e-6, "quad={quad} cost={cost}");
    }

    #[test]
    fn optimal_excursion_degenerate_and_small_area() {
        let (traj, rho, cost) = optimal_excursion(0.2, 0.7, 0.0, C, 64).unwrap();
        assert!(traj.values().iter().all(|&v| v == 0.0));
        assert_eq!(rho, 0.0);
        assert!((cost - (l_c(0.7, C) - l_c(0.2, C))).abs() < 1e-15);
        // small-area tilt follows the series 12 w / (t-s)^3
        let u: f64 = 0.5;
        let w = 1e-4 * u * u * u;
        let (_, rho, _) = optimal_excursion(0.2, 0.7, w, C, 64).unwrap();
        let series = 12.0 * w / (u * u * u);
        assert!((rho - series).abs() / series < 0.05);
        assert!(optimal_excursion(0.2, 0.7, 0.2, C, 64).is_err());
        assert!(optimal_excursion(0.7, 0.2, 0.0, C, 64).is_err());
    }

    #[test]
    fn excursion_quadrature_gap_shrinks_quadratically() {
        let closed = optimal_excursion(0.2, 0.7, 0.05, C, 2).unwrap().2;
        let gap = |cells: usize| {
            let (traj, _, _) = optimal_excursion(0.2, 0.7, 0.05, C, cells).unwrap();
            (i_s_functional(&traj, C) - closed).abs()
        };
        let (g1, g2) = (gap(256), gap(512));
        assert!(g2 < g1 / 3.0, "gap(256)={g1} gap(512)={g2}");
    }

    #[test]
    fn critical_excursion_parabola() {
        let (s, t, w) = (0.5, 2.5, 0.7);
        let traj = optimal_excursion_critical(s, t, w, 4096);
        // peak 1.5 w / (t - s) at the midpoint
        let peak = traj.values().iter().cloned().fold(0.0f64, f64::max);
        assert!((peak - 1.5 * w / (t - s)).abs() < 1e-6);
        assert!((traj.integral_simpson() - w).abs() < 1e-10);
        let theta = 0.3;
        let quad = breve_i_s_functional(&traj, theta);
        let closed = critical_excursion_cost(s, t, w, theta);
        assert!((quad - closed).abs() < 1e-6, "quad={quad} closed={closed}");
        // zero area, zero trajectory
        let z = optimal_excursion_critical(s, t, 0.0, 16);
        assert!(z.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn i_s_on_the_zero_path_equals_l_c_of_one() {
        for &c in &[1.5, 2.0, 3.0] {
            let z = Trajectory::from_fn(0.0, 1.0, 4096, |_| 0.0);
            let v = i_s_functional(&z, c);
            assert!((v - l_c(1.0, c)).abs() < 1e-9, "c={c}: {v}");
        }
    }

    #[test]
    fn i_s_domain_violations() {
        // slope exactly -1 is admissible (pi(0) weight)...
        let edge = Trajectory::new(0.0, 1.0, alloc::vec![0.0, -0.5, -1.0]).unwrap();
        assert!((i_s_functional(&edge, C) - 1.0).abs() < 1e-12);
        // ...but anything steeper is not
        let bad = Trajectory::new(0.0, 1.0, alloc::vec![0.0, -0.7, -1.4]).unwrap();
        assert_eq!(i_s_functional(&bad, C), f64::INFINITY);
        // reflection exceeding 1 - t
        let tall = Trajectory::new(0.0, 1.0, alloc::vec![0.0, 0.9, 0.9]).unwrap();
        assert_eq!(i_s_functional(&tall, C), f64::INFINITY);
    }

    #[test]
    fn i_phi_examples() {
        // phi_t = t: pi(0) weight integral, c/2 total, no flat cells
        let diag = Trajectory::from_fn(0.0, 1.0, 2048, |t| t);
        assert!((i_phi_functional(&diag, C) - C / 2.0).abs() < 1e-10);
        // LLN regulator has zero action: K_c(beta) + L_c(beta) = 0
        let (_, phibar, _) = lln_curves(C, 8192);
        let v = i_phi_functional(&phibar, C);
        assert!(v < 1e-4, "I_phi(phibar) = {v}");
        // phi == 0: one constancy interval of length 1
        let zero = Trajectory::from_fn(0.0, 1.0, 2048, |_| 0.0);
        let v = i_phi_functional(&zero, C);
        assert!((v - (l_c(1.0, C) + k_rho(1.0, C))).abs() < 1e-9);
        // monotonicity violation
        let dec = Trajectory::new(0.0, 1.0, alloc::vec![0.0, 0.2, 0.1]).unwrap();
        assert_eq!(i_phi_functional(&dec, C), f64::INFINITY);
        // slope above 1
        let steep = Trajectory::new(0.0, 1.0, alloc::vec![0.0, 0.9, 1.0]).unwrap();
        assert_eq!(i_phi_functional(&steep, C), f64::INFINITY);
    }

    #[test]
    fn i_q_vanishes_on_the_lln_queue() {
        let (qbar, _, _) = lln_curves(C, 8192);
        let v = i_q_functional(&qbar, C);
        assert!(v < 1e-4, "I_q(qbar) = {v}");
        // negative path rejected
        let neg = Trajectory::new(0.0, 1.0, alloc::vec![0.0, -0.1, 0.0]).unwrap();
        assert_eq!(i_q_functional(&neg, C), f64::INFINITY);
    }

    #[test]
    fn optimal_regulator_examples() {
        // tau >= 1 - 2a branch: frozen closed form
        let (_, cost) = optimal_regulator(0.25, 0.6, C, 512);
        assert!((cost - 0.057914620743735112525).abs() < 1e-12);
        // a = 0 forces the zero regulator regardless of tau
        let (traj, cost) = optimal_regulator(0.0, 0.3, C, 512);
        assert!(traj.values().iter().all(|&v| v == 0.0));
        assert!((cost - l_c(1.0, C)).abs() < 1e-12);
        // infeasible: flat measure plus required rise exceed the window
        let (_, cost) = optimal_regulator(0.6, 0.7, C, 16);
        assert_eq!(cost, f64::INFINITY);
    }

    #[test]
    fn optimal_regulator_quadrature_matches_closed_form() {
        for &(a, tau) in &[(0.25, 0.6), (0.4, 0.1), (0.3, 0.0), (0.45, 0.3)] {
            let (traj, cost) = optimal_regulator(a, tau, C, 8192);
            // the returned path's endpoint mass is a
            assert!((traj.values().last().unwrap() - a).abs() < 1e-12);
            // evaluating the phi-integrand on the path (its flat stretch
            // contributes L_c(m) through the integral and K_c through the
            // penalty, which the closed form does not include)
            let m = tau.max(1.0 - 2.0 * a);
            let quad = i_phi_functional_with(&traj, C, 1e-15);
            let penalty = k_rho(m, C);
            assert!(
                (quad - penalty - cost).abs() < 1e-4,
                "a={a} tau={tau}: quad={quad} penalty={penalty} cost={cost}"
            );
        }
    }

    #[test]
    fn critical_regulator_cost_matches_quadrature() {
        for &(tau, theta) in &[(0.0f64, -1.0f64), (0.5, 1.0), (2.0, 1.0), (1.0, 0.0)] {
            let t_max = 3.0 * tau.max(theta.max(0.5)) + 1.0;
            let (traj, cost) = critical_regulator(tau, theta, t_max, 16384);
            // quadrature of (1/2)(phidot - (t - theta))^2 ... shifted form:
            // breve integrand with x = -phi is (xdot + t - theta)^2 / 2
            let flipped = Trajectory::new(
                0.0,
                t_max,
                traj.values().iter().map(|v| -v).collect(),
            )
            .unwrap();
            let quad = breve_i_s_functional(&flipped, theta);
            assert!(
                (quad - cost).abs() < 1e-4,
                "tau={tau} theta={theta}: {quad} vs {cost}"
            );
        }
        // fully subcritical: zero cost
        assert_eq!(critical_regulator_cost(0.0, -2.0), 0.0);
    }

    #[test]
    fn perturbing_a_minimiser_never_helps() {
        // sine bump: vanishes at both ends, zero net area
        let (traj, _, cost) = optimal_excursion(0.2, 0.7, 0.05, C, 4096).unwrap();
        let bumped = |eps: f64| {
            let vals: Vec<f64> = (0..=4096)
                .map(|i| {
                    let p = (i as f64) / 4096.0;
                    traj.values()[i] + eps * libm::sin(2.0 * core::f64::consts::PI * p)
                })
                .collect();
            Trajectory::new(0.2, 0.7, vals).unwrap()
        };
        for &eps in &[1e-3, -1e-3, 5e-3] {
            let v = i_s_functional(&bumped(eps), C);
            assert!(v > cost - 1e-6, "eps={eps}: {v} < {cost}");
        }
        // critical parabola against the quadratic action
        let para = optimal_excursion_critical(0.5, 2.5, 0.7, 4096);
        let base = breve_i_s_functional(&para, 0.3);
        for &eps in &[1e-3, -1e-3] {
            let vals: Vec<f64> = (0..=4096)
                .map(|i| {
                    let p = (i as f64) / 4096.0;
                    para.values()[i] + eps * libm::sin(2.0 * core::f64::consts::PI * p)
                })
                .collect();
            let t = Trajectory::new(0.5, 2.5, vals).unwrap();
            assert!(breve_i_s_functional(&t, 0.3) > base - 1e-8);
        }
    }

    #[test]
    fn increasing_rearrangement_never_costs_more() {
        // Hardy-Littlewood step: sorting the slopes ascending can only
        // reduce the running-cost integral
        use rand::Rng;
        let mut rng = crate::rng::RngSeed::new(5, 0).stream();
        for _ in 0..10 {
            let n = 256;
            let slopes: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..0.95)).collect();
            let mut sorted = slopes.clone();
            sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let build = |sl: &[f64]| {
                let mut vals = Vec::with_capacity(n + 1);
                let mut acc = 0.0;
                vals.push(0.0);
                for &m in sl {
                    acc += m / n as f64;
                    vals.push(acc);
                }
                Trajectory::new(0.0, 1.0, vals).unwrap()
            };
            let orig = i_phi_functional(&build(&slopes), C);
            let rearr = i_phi_functional(&build(&sorted), C);
            assert!(rearr <= orig + 1e-10, "{rearr} > {orig}");
        }
    }
}
