//! Closed-form large-deviation rate functions for the component statistics
//! of G(n, c/n), together with the phase-transition geometry of the
//! component-count rate.
//!
//! Conventions used throughout (and inherited by callers): `0/0 = 1`,
//! `0 * inf = 0`, infinite rates are `f64::INFINITY`. All rate values are
//! clamped to `0` when they fall within `-1e-12` of it; anything more
//! negative is a bug, not roundoff.
//!
//! Two building blocks generate everything:
//!
//! * `K_rho(u) = u log(rho u / (1 - e^{-rho u})) - rho u^2 / 2`, the cost of
//!   one giant component of size `u` explored at intensity `rho`;
//! * `L_c(u) = (1-u) log(1-u) + (c - log c) u - c u^2 / 2`, the cost of the
//!   exploration walk staying non-positive after time `u`.
//!
//! Transcendental equations are solved by bracketed bisection polished with
//! Newton steps; every solver-backed value has an independent grid-scan
//! twin (`*_scan`) used as a runtime self-check by the checked variants.

use alloc::vec::Vec;

use crate::math::{bump, bump_neg, exp, ln, x_ln_x};
use crate::solve;

/// Default width/residual tolerance for transcendental solves.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Default number of cells in bracketing and maximisation scans.
pub const DEFAULT_GRID: usize = 4096;

/// Agreement required between a transcendental solve and its grid-scan twin.
pub const SELF_CHECK_TOL: f64 = 1e-6;

/// Intensity parameter plus solver knobs, immutable once built.
#[derive(Clone, Copy, Debug)]
pub struct RateParams {
    c: f64,
    tol: f64,
    grid: usize,
}

/// A redundant computation disagreed with its independent twin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SelfCheckError {
    pub solved: f64,
    pub scanned: f64,
}

impl core::fmt::Display for SelfCheckError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "transcendental solve ({}) disagrees with grid scan ({})",
            self.solved, self.scanned
        )
    }
}

impl core::error::Error for SelfCheckError {}

impl RateParams {
    pub fn new(c: f64) -> Self {
        assert!(c > 0.0 && c.is_finite(), "intensity c must be positive");
        Self {
            c,
            tol: DEFAULT_TOL,
            grid: DEFAULT_GRID,
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        assert!(tol > 0.0);
        self.tol = tol;
        self
    }

    pub fn with_grid(mut self, grid: usize) -> Self {
        assert!(grid >= 16);
        self.grid = grid;
        self
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn grid(&self) -> usize {
        self.grid
    }
}

/// Clamp tiny negative roundoff to zero; rate functions are [0, inf]-valued.
#[inline]
fn clamp_rate(x: f64) -> f64 {
    debug_assert!(x.is_nan() || x >= -1e-9, "rate function went negative: {x}");
    if x > -1e-12 && x < 0.0 {
        0.0
    } else {
        x
    }
}

/// `pi(x) = x log x - x + 1` with `pi(0) = 1`; convex, zero only at `x = 1`.
pub fn pi_fn(x: f64) -> f64 {
    assert!(x >= 0.0, "pi is defined on [0, inf)");
    x_ln_x(x) - x + 1.0
}

/// `K_rho(u)`; zero when either argument is zero.
pub fn k_rho(u: f64, rho: f64) -> f64 {
    assert!((0.0..=1.0).contains(&u) && rho >= 0.0);
    if u == 0.0 || rho == 0.0 {
        return 0.0;
    }
    let y = rho * u;
    u * ln(bump(y)) - 0.5 * rho * u * u
}

/// `L_c(u)`; zero at `u = 0`, strictly increasing on [0, 1].
pub fn l_c(u: f64, c: f64) -> f64 {
    assert!((0.0..=1.0).contains(&u) && c > 0.0);
    let edge = if u < 1.0 { x_ln_x(1.0 - u) } else { 0.0 };
    edge + (c - ln(c)) * u - 0.5 * c * u * u
}

/// Giant-component fraction: the positive root of `1 - b = e^{-bc}` for
/// `c > 1`, zero otherwise.
pub fn beta_fp(c: f64) -> f64 {
    beta_fp_with(&RateParams::new(c))
}

pub fn beta_fp_with(p: &RateParams) -> f64 {
    let c = p.c;
    if c <= 1.0 {
        return 0.0;
    }
    let f = |b: f64| 1.0 - b - exp(-c * b);
    // f > 0 just right of 0 (slope c - 1), f(1) < 0
    let root = solve::bisect(f, 1e-13, 1.0, p.tol);
    solve::newton_polish(f, |b| -1.0 + c * exp(-c * b), root, 0.0, 1.0, 4)
}

/// Law-of-large-numbers constants `(alpha, beta, gamma)`: component count
/// density, giant size, giant excess.
pub fn lln_constants(c: f64) -> (f64, f64, f64) {
    let beta = beta_fp(c);
    let alpha = 1.0 - beta - 0.5 * c * (1.0 - beta) * (1.0 - beta);
    let gamma = (c - 1.0) * beta - 0.5 * c * beta * beta;
    (alpha, beta, gamma)
}

/// Typical excess-edge density of a component of size `u`:
/// `r*(u) = c u^2 / (1 - e^{-cu}) - c u^2 / 2 - u`.
pub fn r_star(u: f64, c: f64) -> f64 {
    assert!((0.0..=1.0).contains(&u) && c > 0.0);
    if u == 0.0 {
        return 0.0;
    }
    u * (bump(c * u) - 0.5 * c * u - 1.0)
}

/// Tilted intensity for a component of size `u > 0` with excess density
/// `r > 0`: the root of `y/(1-e^{-y}) = 1 + r/u + y/2` in `y = rho u`.
fn excess_tilt(u: f64, r: f64, tol: f64) -> f64 {
    let target = 1.0 + r / u;
    let g = |y: f64| bump(y) - 0.5 * y - target;
    // g(0) = -r/u < 0; bump(y) - y/2 grows like y/2, so a bracket exists.
    let mut hi = 2.0 * crate::math::sqrt(12.0 * r / u).max(1.0);
    while g(hi) <= 0.0 {
        hi *= 2.0;
        assert!(hi.is_finite());
    }
    let y = solve::bisect(g, 0.0, hi, tol);
    let y = solve::newton_polish(g, bump_prime_minus_half, y, 0.0, hi, 4);
    y / u
}

fn bump_prime_minus_half(y: f64) -> f64 {
    bump_prime(y) - 0.5
}

/// d/dy of `y/(1-e^{-y})`.
fn bump_prime(y: f64) -> f64 {
    if y < 1e-4 {
        0.5 + y / 6.0 - y * y * y / 180.0
    } else {
        let b = bump(y);
        (b / y) * (1.0 - b * exp(-y))
    }
}

/// `sup_rho (K_rho(u) + r log(rho/c))`: the excess-edge cost term of the
/// joint rate function. Returns `0` for `r = 0` (boundary supremum at
/// `rho -> 0`) and `inf` for `r > 0` on a zero-size component.
pub fn k_star(u: f64, r: f64, c: f64) -> f64 {
    k_star_with(u, r, &RateParams::new(c))
}

pub fn k_star_with(u: f64, r: f64, p: &RateParams) -> f64 {
    assert!((0.0..=1.0).contains(&u) && r >= 0.0);
    if r == 0.0 {
        return 0.0;
    }
    if u == 0.0 {
        return f64::INFINITY;
    }
    let rho = excess_tilt(u, r, p.tol);
    k_rho(u, rho) + r * ln(rho / p.c)
}

/// Independent evaluation of [`k_star`] by a logarithmic grid scan in `rho`.
pub fn k_star_scan(u: f64, r: f64, p: &RateParams) -> f64 {
    assert!((0.0..=1.0).contains(&u) && r >= 0.0);
    if r == 0.0 {
        return 0.0;
    }
    if u == 0.0 {
        return f64::INFINITY;
    }
    let (lo, hi) = (ln(1e-8), ln(1e8));
    let f = |t: f64| {
        let rho = exp(t);
        k_rho(u, rho) + r * ln(rho / p.c)
    };
    let (_, v) = solve::grid_golden_max(f, lo, hi, p.grid);
    v
}

/// [`k_star`] with its grid-scan twin enforced to [`SELF_CHECK_TOL`].
pub fn k_star_checked(u: f64, r: f64, p: &RateParams) -> Result<f64, SelfCheckError> {
    let solved = k_star_with(u, r, p);
    if !solved.is_finite() {
        return Ok(solved);
    }
    let scanned = k_star_scan(u, r, p);
    if (solved - scanned).abs() <= SELF_CHECK_TOL {
        Ok(solved)
    } else {
        Err(SelfCheckError { solved, scanned })
    }
}

/// Joint query for the full rate function: component-count density `a`,
/// giant sizes `u` (non-increasing) and aligned excess densities `r`.
#[derive(Clone, Debug)]
pub struct SpectrumQuery {
    pub a: f64,
    pub u: Vec<f64>,
    pub r: Vec<f64>,
}

impl SpectrumQuery {
    /// `r` may be shorter than `u`; missing entries are zero.
    pub fn new(a: f64, u: Vec<f64>, mut r: Vec<f64>) -> Self {
        assert!((0.0..=1.0).contains(&a), "count density must lie in [0,1]");
        assert!(r.len() <= u.len(), "more excess entries than sizes");
        assert!(
            u.windows(2).all(|w| w[0] >= w[1]),
            "sizes must be non-increasing"
        );
        assert!(u.iter().all(|&x| (0.0..=1.0).contains(&x)));
        assert!(r.iter().all(|&x| x >= 0.0));
        r.resize(u.len(), 0.0);
        Self { a, u, r }
    }
}

/// The common tail of the joint rates: `L_c(M) + (c/2)(1-M)^2 pi(...)` with
/// `M = (1-2a) v tau_floor`, where `tau_floor` is the mass already tied up
/// in named giants.
fn dust_cost(a: f64, tau_floor: f64, c: f64) -> f64 {
    let m = (1.0 - 2.0 * a).max(tau_floor);
    debug_assert!(m <= 1.0 - a + 1e-12);
    let rem = 1.0 - m;
    if rem <= 0.0 {
        // forces a = 0 and all mass in giants; pi(0/0) = pi(1) = 0
        return l_c(1.0, c);
    }
    let arg = 2.0 * (1.0 - a - m) / (c * rem * rem);
    l_c(m, c) + 0.5 * c * rem * rem * pi_fn(arg.max(0.0))
}

/// Rate function for the joint law of count density, component sizes and
/// excess edges. `inf` when the query is inadmissible (`sum u > 1 - a`, or
/// excess on a zero-size component).
pub fn i_joint(q: &SpectrumQuery, c: f64) -> f64 {
    i_joint_with(q, &RateParams::new(c))
}

pub fn i_joint_with(q: &SpectrumQuery, p: &RateParams) -> f64 {
    let total: f64 = q.u.iter().sum();
    if total > 1.0 - q.a {
        return f64::INFINITY;
    }
    let mut acc = 0.0;
    for (&u, &r) in q.u.iter().zip(&q.r) {
        let term = k_star_with(u, r, p);
        if !term.is_finite() {
            return f64::INFINITY;
        }
        acc += term;
    }
    clamp_rate(acc + dust_cost(q.a, total, p.c))
}

/// `g(tau) = (1 - tau)(1 - c tau / (2(e^{c tau} - 1)))`, the count density
/// produced by one giant of size `tau`; concave on [0, 1] with `g(0) = 1/2`.
fn count_of_tau(tau: f64, c: f64) -> f64 {
    (1.0 - tau) * (1.0 - 0.5 * bump_neg(c * tau))
}

/// Location and value of the maximum of [`count_of_tau`]; the value is the
/// breakup threshold `a*`. The function is concave, so a thin grid plus
/// golden-section is exact.
fn count_max(c: f64, _grid: usize) -> (f64, f64) {
    if c <= 2.0 {
        return (0.0, 0.5);
    }
    solve::grid_golden_max(|t| count_of_tau(t, c), 0.0, 1.0, 64)
}

/// Greatest root of `g(tau) = a` (the optimal giant size for count density
/// `a`), or `0` when no root applies.
pub fn tau_star(a: f64, c: f64) -> f64 {
    tau_star_with(a, &RateParams::new(c))
}

pub fn tau_star_with(a: f64, p: &RateParams) -> f64 {
    assert!((0.0..=1.0).contains(&a));
    let (tmax, astar) = count_max(p.c, p.grid);
    if a > astar {
        return 0.0;
    }
    if a == 0.0 {
        return 1.0;
    }
    // g is concave, so the greatest root lies on the decreasing branch.
    let f = |t: f64| count_of_tau(t, p.c) - a;
    if f(tmax) < 0.0 {
        // a == astar up to roundoff
        return tmax;
    }
    solve::bisect(f, tmax, 1.0, p.tol)
}

/// Giant-component branch of the count rate at its optimal `tau`.
fn giant_branch(a: f64, tau: f64, c: f64) -> f64 {
    k_rho(tau, c) + dust_cost(a, tau, c)
}

/// Rate function for the number of connected components.
///
/// Piecewise: the giant branch up to `1/2`, the minimum of the giant and
/// no-giant branches on `(1/2, a*)`, the no-giant branch from `a*` on.
pub fn i_alpha(a: f64, c: f64) -> f64 {
    i_alpha_with(a, &RateParams::new(c))
}

pub fn i_alpha_with(a: f64, p: &RateParams) -> f64 {
    assert!((0.0..=1.0).contains(&a));
    let c = p.c;
    let no_giant = 0.5 * c * pi_fn(2.0 * (1.0 - a) / c);
    let (_, astar) = count_max(c, p.grid);
    if a >= astar {
        return clamp_rate(no_giant);
    }
    let ts = tau_star_with(a, p);
    let giant = giant_branch(a, ts, c);
    let v = if a <= 0.5 { giant } else { giant.min(no_giant) };
    clamp_rate(v)
}

/// Independent evaluation of [`i_alpha`]: direct minimisation over the
/// admissible giant size `tau in [(1-2a)^+, 1-a]`, no root-solving.
pub fn i_alpha_scan(a: f64, p: &RateParams) -> f64 {
    assert!((0.0..=1.0).contains(&a));
    let lo = (1.0 - 2.0 * a).max(0.0);
    let hi = 1.0 - a;
    if hi <= lo {
        return clamp_rate(giant_branch(a, lo, p.c));
    }
    let (_, neg) = solve::grid_golden_max(|t| -giant_branch(a, t, p.c), lo, hi, p.grid);
    clamp_rate(-neg)
}

/// [`i_alpha`] with the direct scan enforced as a runtime self-check.
pub fn i_alpha_checked(a: f64, p: &RateParams) -> Result<f64, SelfCheckError> {
    let solved = i_alpha_with(a, p);
    let scanned = i_alpha_scan(a, p);
    if (solved - scanned).abs() <= SELF_CHECK_TOL {
        Ok(solved)
    } else {
        Err(SelfCheckError { solved, scanned })
    }
}

/// Phase geometry of the count rate for a given `c`.
///
/// `a_star` is where the no-giant branch takes over for good; for `c > 2`
/// the convexity boundary `a_tilde`, the breakup point `a_hat` and the
/// auxiliary root `tau_tilde` of `e^{-c tau} - 1 + c tau = c tau^2` exist.
#[derive(Clone, Copy, Debug)]
pub struct PhasePoints {
    pub c: f64,
    pub a_star: f64,
    pub a_tilde: Option<f64>,
    pub a_hat: Option<f64>,
    pub tau_tilde: Option<f64>,
}

pub fn phase_points(c: f64) -> PhasePoints {
    phase_points_with(&RateParams::new(c))
}

pub fn phase_points_with(p: &RateParams) -> PhasePoints {
    let c = p.c;
    let (_, a_star) = count_max(c, p.grid);
    if c <= 2.0 {
        return PhasePoints {
            c,
            a_star,
            a_tilde: None,
            a_hat: None,
            tau_tilde: None,
        };
    }
    // expm1 keeps the cancellation-prone small-tau end at full precision
    let f = |t: f64| crate::math::expm1(-c * t) + c * t - c * t * t;
    let tau_tilde = solve::bisect(f, 1e-7, 1.0, p.tol);
    let tau_tilde = solve::newton_polish(
        f,
        |t| -c * exp(-c * t) + c - 2.0 * c * t,
        tau_tilde,
        0.0,
        1.0,
        4,
    );
    let a_tilde = count_of_tau(tau_tilde, c);
    // branch difference is positive at 1/2, negative as a -> a*; just
    // above c = 2 the whole interval is thinner than roundoff, in which
    // case any point of it identifies the breakup within resolution
    let diff = |a: f64| {
        let ng = 0.5 * c * pi_fn(2.0 * (1.0 - a) / c);
        ng - giant_branch(a, tau_star_with(a, p), c)
    };
    let lo = 0.5 + (a_star - 0.5) * 1e-9;
    let hi = a_star - (a_star - 0.5) * 1e-9;
    let mut bracket = None;
    let scan = 256;
    let mut prev = (lo, diff(lo));
    for i in 1..=scan {
        let a = lo + (hi - lo) * i as f64 / scan as f64;
        let d = diff(a);
        if d == 0.0 || (d > 0.0) != (prev.1 > 0.0) {
            bracket = Some((prev.0, a));
            break;
        }
        prev = (a, d);
    }
    let a_hat = match bracket {
        Some((a, b)) => solve::bisect(diff, a, b, p.tol),
        None => 0.5 * (lo + hi),
    };
    PhasePoints {
        c,
        a_star,
        a_tilde: Some(a_tilde),
        a_hat: Some(a_hat),
        tau_tilde: Some(tau_tilde),
    }
}

/// Size of the companion giant soaking up the leftover supercritical mass:
/// the root of `x / (1 - e^{-cx}) = rest`, for `rest in [1/c, 1)`.
fn companion_size(rest: f64, p: &RateParams) -> f64 {
    let c = p.c;
    debug_assert!(rest * c >= 1.0 - 1e-9 && rest < 1.0);
    let g = |x: f64| bump(c * x) / c - rest;
    if g(0.0) >= 0.0 {
        return 0.0;
    }
    let x = solve::bisect(g, 0.0, 1.0, p.tol);
    solve::newton_polish(g, |x| bump_prime(c * x), x, 0.0, 1.0, 4)
}

/// Rate function for the size of the largest component (floor form).
pub fn i_beta(u: f64, c: f64) -> f64 {
    i_beta_with(u, &RateParams::new(c))
}

pub fn i_beta_with(u: f64, p: &RateParams) -> f64 {
    assert!((0.0..=1.0).contains(&u));
    let c = p.c;
    let supercrit = (1.0 - 1.0 / c).max(0.0);
    if u == 0.0 {
        return clamp_rate(l_c(supercrit, c));
    }
    if u >= supercrit {
        return clamp_rate(k_rho(u, c) + l_c(u, c));
    }
    let m = libm::floor(supercrit / u);
    let uhat = companion_size(1.0 - m * u, p).min(u);
    clamp_rate(m * k_rho(u, c) + k_rho(uhat, c) + l_c(m * u + uhat, c))
}

/// Joint rate for (largest size, its excess edges).
pub fn i_beta_gamma(u: f64, r: f64, c: f64) -> f64 {
    i_beta_gamma_with(u, r, &RateParams::new(c))
}

pub fn i_beta_gamma_with(u: f64, r: f64, p: &RateParams) -> f64 {
    assert!((0.0..=1.0).contains(&u) && r >= 0.0);
    let c = p.c;
    if u == 0.0 {
        return if r > 0.0 {
            f64::INFINITY
        } else {
            clamp_rate(l_c((1.0 - 1.0 / c).max(0.0), c))
        };
    }
    let excess = k_star_with(u, r, p);
    let supercrit = (1.0 - 1.0 / c).max(0.0);
    if u >= supercrit {
        return clamp_rate(excess + l_c(u, c));
    }
    let m = libm::floor(supercrit / u);
    let uhat = companion_size(1.0 - m * u, p).min(u);
    clamp_rate(excess + (m - 1.0) * k_rho(u, c) + k_rho(uhat, c) + l_c(m * u + uhat, c))
}

/// Joint rate for (count density, largest size, its excess edges).
///
/// The inner infimum over the total giant mass `tau` is evaluated segment
/// by segment between consecutive multiples of `u`, where the floor terms
/// are constant.
pub fn i_alpha_beta_gamma(a: f64, u: f64, r: f64, c: f64) -> f64 {
    i_alpha_beta_gamma_with(a, u, r, &RateParams::new(c))
}

pub fn i_alpha_beta_gamma_with(a: f64, u: f64, r: f64, p: &RateParams) -> f64 {
    assert!((0.0..=1.0).contains(&a) && (0.0..=1.0).contains(&u) && r >= 0.0);
    let c = p.c;
    if u == 0.0 {
        return if r > 0.0 {
            f64::INFINITY
        } else {
            clamp_rate(dust_cost(a, 0.0, c))
        };
    }
    if u > 1.0 - a {
        return f64::INFINITY;
    }
    let excess = k_star_with(u, r, p);
    if !excess.is_finite() {
        return f64::INFINITY;
    }
    let lo = (1.0 - 2.0 * a).max(u);
    let hi = 1.0 - a;
    let packing = |tau: f64| {
        let k = libm::floor(tau / u);
        let frag = (tau - k * u).clamp(0.0, u);
        k * k_rho(u, c) + k_rho(frag, c) + dust_cost(a, tau, c)
    };
    let mut best = packing(lo).min(packing(hi));
    if hi > lo {
        // segment boundaries at multiples of u
        let mut k = libm::ceil(lo / u) as u64;
        let mut seg_lo = lo;
        loop {
            let boundary = (k as f64) * u;
            let seg_hi = if boundary > seg_lo && boundary < hi {
                boundary
            } else {
                hi
            };
            let (_, neg) = solve::grid_golden_max(|t| -packing(t), seg_lo, seg_hi, 64);
            best = best.min(-neg);
            if seg_hi >= hi {
                break;
            }
            seg_lo = seg_hi;
            k += 1;
        }
    }
    clamp_rate(excess - k_rho(u, c) + best)
}

/// Rate for a finite list of giant sizes (non-increasing, `sum <= 1`).
pub fn i_u(sizes: &[f64], c: f64) -> f64 {
    assert!(sizes.windows(2).all(|w| w[0] >= w[1]));
    assert!(sizes.iter().all(|&x| (0.0..=1.0).contains(&x)));
    let total: f64 = sizes.iter().sum();
    assert!(total <= 1.0 + 1e-12, "total giant mass exceeds 1");
    let pivot = (1.0 - 1.0 / c).max(total.min(1.0));
    let sum: f64 = sizes.iter().map(|&u| k_rho(u, c)).sum();
    clamp_rate(sum + l_c(pivot, c))
}

/// Joint rate for giant sizes and their excess edges.
pub fn i_ur(sizes: &[f64], excess: &[f64], c: f64) -> f64 {
    i_ur_with(sizes, excess, &RateParams::new(c))
}

pub fn i_ur_with(sizes: &[f64], excess: &[f64], p: &RateParams) -> f64 {
    assert_eq!(sizes.len(), excess.len());
    assert!(sizes.windows(2).all(|w| w[0] >= w[1]));
    let total: f64 = sizes.iter().sum();
    assert!(total <= 1.0 + 1e-12, "total giant mass exceeds 1");
    let mut acc = 0.0;
    for (&u, &r) in sizes.iter().zip(excess) {
        let term = k_star_with(u, r, p);
        if !term.is_finite() {
            return f64::INFINITY;
        }
        acc += term;
    }
    let pivot = (1.0 - 1.0 / p.c).max(total.min(1.0));
    clamp_rate(acc + l_c(pivot, p.c))
}

/// Limiting scaled cumulant generating function of the component count
/// (Stepanov's asymptotics), evaluated as a one-dimensional supremum.
pub fn stepanov_s(lambda: f64, c: f64) -> f64 {
    stepanov_s_with(lambda, &RateParams::new(c))
}

pub fn stepanov_s_with(lambda: f64, p: &RateParams) -> f64 {
    let c = p.c;
    let lo = (1.0 - exp(lambda) / c).max(0.0);
    let f = |tau: f64| {
        let rest = 1.0 - tau;
        let tail = if tau > 0.0 {
            tau * ln(-crate::math::expm1(-c * tau))
        } else {
            0.0
        };
        lambda * rest + 0.5 * c * rest * rest * exp(-lambda)
            - x_ln_x(rest)
            - 0.5 * c * (1.0 - tau * tau)
            - x_ln_x(tau)
            + tail
    };
    let (_, v) = solve::grid_golden_max(f, lo, 1.0, p.grid);
    v
}

/// `sup_a (lambda a - I^alpha(a))`: the Varadhan dual of the count rate.
/// Agrees with [`stepanov_s`] for every `c`.
pub fn i_alpha_legendre(lambda: f64, p: &RateParams) -> f64 {
    // the objective may be bimodal for c > 2; refine the best few cells
    let n = p.grid.max(256);
    let f = |a: f64| lambda * a - i_alpha_with(a, p);
    let coarse = 512usize;
    let mut vals = Vec::with_capacity(coarse + 1);
    for i in 0..=coarse {
        let a = i as f64 / coarse as f64;
        vals.push(f(a));
    }
    let mut best = f64::NEG_INFINITY;
    let mut order: Vec<usize> = (0..=coarse).collect();
    order.sort_by(|&i, &j| vals[j].partial_cmp(&vals[i]).unwrap());
    for &i in order.iter().take(3) {
        let lo = (i.saturating_sub(1)) as f64 / coarse as f64;
        let hi = ((i + 1).min(coarse)) as f64 / coarse as f64;
        let (_, v) = solve::grid_golden_max(&f, lo, hi, n / 8);
        best = best.max(v);
    }
    best
}

/// `sup_lambda (lambda a - S_c(lambda))` over a bounded window: the
/// Legendre bidual of the count rate, i.e. its convex hull.
pub fn stepanov_bidual(a: f64, lambda_lo: f64, lambda_hi: f64, p: &RateParams) -> f64 {
    let f = |lam: f64| lam * a - stepanov_s_with(lam, p);
    let (_, v) = solve::grid_golden_max(f, lambda_lo, lambda_hi, 256);
    v
}

/// O'Connell's thresholds `x_k`: the solution of
/// `x / (1 - e^{-cx}) = 1 - kx` (with `x_0 = 1`), for `c > 1`.
pub fn oconnell_x(k: u32, c: f64) -> f64 {
    oconnell_x_with(k, &RateParams::new(c))
}

pub fn oconnell_x_with(k: u32, p: &RateParams) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let c = p.c;
    let kf = k as f64;
    let g = |x: f64| bump(c * x) / c - (1.0 - kf * x);
    // g(0) = 1/c - 1 < 0 for c > 1; g(1/k) > 0
    assert!(c > 1.0, "x_k thresholds require c > 1");
    let x = solve::bisect(g, 0.0, 1.0 / kf, p.tol);
    solve::newton_polish(g, |x| bump_prime(c * x) + kf, x, 0.0, 1.0 / kf, 4)
}

/// O'Connell's form of the largest-component rate:
/// `k K_c(u) + L_c(k u)` on `u in [x_k, x_{k-1}]`.
pub fn i_beta_oconnell(u: f64, p: &RateParams) -> f64 {
    assert!(p.c > 1.0 && u > 0.0 && u <= 1.0);
    let mut k = 1u32;
    while u < oconnell_x_with(k, p) {
        k += 1;
        assert!(k < 100_000, "size too small to classify");
    }
    clamp_rate(k as f64 * k_rho(u, p.c) + l_c((k as f64 * u).min(1.0), p.c))
}
