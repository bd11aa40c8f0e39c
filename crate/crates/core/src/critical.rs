//! Moderate-deviation rate functions in the critical window
//! `c_n = 1 + theta n^{-1/3}` (sizes live at scale `(n b_n)^{2/3}`).
//!
//! Same conventions as [`crate::rates`]: `0/0 = 1`, infinite rates are
//! `f64::INFINITY`, tiny negative roundoff clamps to zero.

use crate::rates::pi_fn;

#[inline]
fn clamp_rate(x: f64) -> f64 {
    debug_assert!(x.is_nan() || x >= -1e-9, "rate function went negative: {x}");
    if x > -1e-12 && x < 0.0 {
        0.0
    } else {
        x
    }
}

#[inline]
fn cube(x: f64) -> f64 {
    x * x * x
}

/// Shared skeleton `-sum u^3/24 + ((sum u - theta)^3 v 0)/6 + theta^3/6`.
fn skeleton(sizes: &[f64], theta: f64) -> f64 {
    let total: f64 = sizes.iter().sum();
    let cubes: f64 = sizes.iter().map(|&u| cube(u)).sum();
    -cubes / 24.0 + cube(total - theta).max(0.0) / 6.0 + cube(theta) / 6.0
}

/// Joint rate for critical component sizes and excess-edge counts.
pub fn breve_i_ur(sizes: &[f64], excess: &[f64], theta: f64) -> f64 {
    assert_eq!(sizes.len(), excess.len());
    assert!(sizes.iter().all(|&u| u >= 0.0) && excess.iter().all(|&r| r >= 0.0));
    let mut marks = 0.0;
    for (&u, &r) in sizes.iter().zip(excess) {
        if u == 0.0 {
            if r > 0.0 {
                return f64::INFINITY;
            }
            continue;
        }
        marks += cube(u) / 24.0 * pi_fn(12.0 * r / cube(u));
    }
    clamp_rate(skeleton(sizes, theta) + marks)
}

/// Marginal rate for the critical size sequence (optimal excess built in).
pub fn breve_i_u(sizes: &[f64], theta: f64) -> f64 {
    assert!(sizes.iter().all(|&u| u >= 0.0));
    clamp_rate(skeleton(sizes, theta))
}

/// Rate for the largest critical component.
///
/// For `0 < u < theta` the optimal configuration packs `floor(theta/u)`
/// copies of `u` plus a remainder `(2(theta - k u)) ^ u`; the floor terms
/// put kinks at `u = theta/(k +- 1/2)` while the value stays continuous.
pub fn breve_i_beta(u: f64, theta: f64) -> f64 {
    assert!(u >= 0.0);
    if u == 0.0 {
        return cube(theta.max(0.0)) / 6.0;
    }
    if theta > 0.0 && u < theta {
        let k = libm::floor(theta / u);
        let z = (2.0 * (theta - k * u)).min(u);
        return clamp_rate(
            -k * cube(u) / 24.0 - cube(z) / 24.0 + cube(k * u + z - theta) / 6.0
                + cube(theta) / 6.0,
        );
    }
    clamp_rate(-cube(u) / 24.0 + cube(u - theta) / 6.0 + cube(theta) / 6.0)
}

/// Joint rate for the count fluctuation and the critical spectrum at the
/// `sqrt(n)/b_n` drift scale: a Gaussian term plus the drift-free spectrum
/// rate.
pub fn breve_i_alpha_ur(a: f64, sizes: &[f64], excess: &[f64], theta_hat: f64) -> f64 {
    let tail = breve_i_ur(sizes, excess, 0.0);
    if !tail.is_finite() {
        return f64::INFINITY;
    }
    let dev = a + theta_hat / 2.0;
    clamp_rate(dev * dev + tail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_spectrum_costs_nothing_for_subcritical_drift() {
        // (-theta)^3/6 + theta^3/6 = 0 for theta <= 0
        for &th in &[-3.0, -0.5, 0.0] {
            assert_eq!(breve_i_u(&[], th), 0.0);
            assert_eq!(breve_i_ur(&[], &[], th), 0.0);
        }
        // positive drift without a giant is expensive
        assert!((breve_i_beta(0.0, 2.0) - 8.0 / 6.0).abs() < 1e-14);
    }

    #[test]
    fn zero_exactly_at_twice_the_drift() {
        for &th in &[0.5, 1.0, 2.0, 3.7] {
            assert_eq!(breve_i_beta(2.0 * th, th), 0.0);
            // and nowhere else nearby
            assert!(breve_i_beta(2.0 * th * 0.9, th) > 1e-4);
            assert!(breve_i_beta(2.0 * th * 1.1, th) > 1e-4);
        }
    }

    #[test]
    fn drift_free_rate_is_u_cubed_over_eight() {
        for &u in &[0.1, 0.7, 1.9] {
            assert!((breve_i_beta(u, 0.0) - cube(u) / 8.0).abs() < 1e-14);
            // optimal excess for size u is u^3/12
            let direct = breve_i_ur(&[u], &[cube(u) / 12.0], 0.0);
            assert!((direct - breve_i_u(&[u], 0.0)).abs() < 1e-14);
        }
    }

    #[test]
    fn frozen_curve_values_at_theta_two() {
        let expected = [
            (0.5, 1.3125),
            (0.8, 1.28),
            (1.0, 1.25),
            (4.0 / 3.0, 1.1851851851851851852),
            (1.6, 1.152),
            (2.0, 1.0),
            (2.5, 0.703125),
            (3.0, 0.375),
            (4.5, 0.140625),
            (5.0, 0.625),
        ];
        for &(u, v) in &expected {
            assert!((breve_i_beta(u, 2.0) - v).abs() < 1e-12, "u={u}");
        }
    }

    #[test]
    fn continuous_across_the_floor_kinks() {
        let th = 2.0;
        for k in 1..6 {
            for &half in &[-0.5, 0.5] {
                let u = th / (k as f64 + half);
                let left = breve_i_beta(u - 1e-9, th);
                let right = breve_i_beta(u + 1e-9, th);
                assert!((left - right).abs() < 1e-7, "kink at u={u}");
            }
        }
    }

    #[test]
    fn cubic_scaling_identity() {
        let th = 1.3;
        for &x in &[0.5, 2.0, 3.0] {
            for &u in &[0.3, 1.0, 2.9] {
                let lhs = breve_i_beta(x * u, x * th);
                let rhs = cube(x) * breve_i_beta(u, th);
                assert!((lhs - rhs).abs() < 1e-10 * rhs.max(1.0), "x={x} u={u}");
            }
        }
    }

    #[test]
    fn alpha_term_is_quadratic_shift() {
        let v = breve_i_alpha_ur(0.3, &[1.0], &[0.1], -1.0);
        let expected = (0.3 - 0.5_f64).powi(2) + breve_i_ur(&[1.0], &[0.1], 0.0);
        assert!((v - expected).abs() < 1e-14);
        assert_eq!(breve_i_alpha_ur(0.0, &[0.0], &[1.0], 0.0), f64::INFINITY);
    }
}
