//! One-dimensional root finding and maximisation.
//!
//! Every transcendental equation in the crate is solved the same way: a
//! coarse scan locates a sign-change bracket, bisection shrinks it to the
//! requested width, and a few Newton steps polish the midpoint when a
//! derivative is available. Scans run in a caller-chosen direction so that
//! "greatest root" selections stay explicit.

/// Bisection on a bracket `[lo, hi]` with `f(lo)` and `f(hi)` of opposite
/// sign (either endpoint may already be a root). Returns the midpoint of the
/// final bracket of width `tol`.
pub(crate) fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut flo = f(lo);
    if flo == 0.0 {
        return lo;
    }
    let fhi = f(hi);
    if fhi == 0.0 {
        return hi;
    }
    debug_assert!(
        (flo > 0.0) != (fhi > 0.0),
        "bisect called without a sign change"
    );
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // bracket at floating-point resolution
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Newton refinement of `x0`, constrained to `[lo, hi]`; falls back to the
/// input when a step leaves the bracket or the derivative degenerates.
pub(crate) fn newton_polish<F, D>(f: F, df: D, x0: f64, lo: f64, hi: f64, iters: usize) -> f64
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let mut x = x0;
    for _ in 0..iters {
        let d = df(x);
        if d == 0.0 || !d.is_finite() {
            return x;
        }
        let step = f(x) / d;
        let next = x - step;
        if !next.is_finite() || next < lo || next > hi {
            return x;
        }
        x = next;
        if step.abs() <= f64::EPSILON * x.abs().max(1.0) {
            break;
        }
    }
    x
}

/// Golden-section maximisation on `[lo, hi]`; returns `(argmax, max)`.
pub(crate) fn golden_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, iters: usize) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut m1 = hi - INV_PHI * (hi - lo);
    let mut m2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(m1);
    let mut f2 = f(m2);
    for _ in 0..iters {
        if f1 < f2 {
            lo = m1;
            m1 = m2;
            f1 = f2;
            m2 = lo + INV_PHI * (hi - lo);
            f2 = f(m2);
        } else {
            hi = m2;
            m2 = m1;
            f2 = f1;
            m1 = hi - INV_PHI * (hi - lo);
            f1 = f(m1);
        }
        if hi - lo <= f64::EPSILON * (lo.abs() + hi.abs() + 1.0) {
            break;
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// Maximise over `[lo, hi]`: coarse grid of `n` cells to localise, then
/// golden-section on the two cells around the best grid point. Handles
/// multimodal objectives as long as the grid resolves the modes.
pub(crate) fn grid_golden_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize) -> (f64, f64) {
    debug_assert!(n >= 2 && hi >= lo);
    if hi == lo {
        return (lo, f(lo));
    }
    let mut best_i = 0usize;
    let mut best = f64::NEG_INFINITY;
    for i in 0..=n {
        let x = lo + (hi - lo) * (i as f64) / (n as f64);
        let fx = f(x);
        if fx > best {
            best = fx;
            best_i = i;
        }
    }
    let a = lo + (hi - lo) * (best_i.saturating_sub(1) as f64) / (n as f64);
    let b = lo + (hi - lo) * ((best_i + 1).min(n) as f64) / (n as f64);
    let (x, fx) = golden_max(&f, a, b, 200);
    if fx >= best {
        (x, fx)
    } else {
        let xb = lo + (hi - lo) * (best_i as f64) / (n as f64);
        (xb, best)
    }
}
