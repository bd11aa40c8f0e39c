//! Elementary functions (libm-backed, usable without `std`) and the handful
//! of series-stabilised kernels the rate functions are built from.

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn expm1(x: f64) -> f64 {
    libm::expm1(x)
}

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}

/// `acos` with the argument clamped into `[-1, 1]` (roundoff guard).
#[inline]
pub(crate) fn acos_clamped(x: f64) -> f64 {
    libm::acos(x.clamp(-1.0, 1.0))
}

/// `x log x`, continuously extended by `0` at `x = 0`.
#[inline]
pub(crate) fn x_ln_x(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * ln(x)
    }
}

/// `y / (1 - e^{-y})` for `y >= 0`, with `1` at the removable singularity.
///
/// The quotient is evaluated through `expm1`; below `1e-6` the series
/// `1 + y/2 + y^2/12` is exact to f64 precision and avoids the 0/0.
#[inline]
pub(crate) fn bump(y: f64) -> f64 {
    debug_assert!(y >= 0.0);
    if y < 1e-6 {
        1.0 + y / 2.0 + y * y / 12.0
    } else {
        y / -expm1(-y)
    }
}

/// `y / (e^y - 1)` for `y >= 0`, with `1` at `y = 0`.
#[inline]
pub(crate) fn bump_neg(y: f64) -> f64 {
    debug_assert!(y >= 0.0);
    if y < 1e-6 {
        1.0 - y / 2.0 + y * y / 12.0
    } else {
        y / expm1(y)
    }
}

/// Neumaier compensated accumulator.
///
/// Used wherever sums must be reproducible and tight: probability tables of
/// the exact oracle, Monte Carlo aggregation, quadrature.
#[derive(Clone, Copy, Debug, Default)]
pub struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}
