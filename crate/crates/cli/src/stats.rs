//! Sample statistics with reproducible (order-fixed, compensated)
//! accumulation.

/// Neumaier compensated sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

pub fn mean(xs: &[f64]) -> f64 {
    let mut k = Kahan::default();
    for &x in xs {
        k.add(x);
    }
    k.value() / xs.len() as f64
}

/// Two-pass sample covariance (denominator `n - 1`).
pub fn covariance(xs: &[f64], ys: &[f64], mx: f64, my: f64) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let mut k = Kahan::default();
    for (&x, &y) in xs.iter().zip(ys) {
        k.add((x - mx) * (y - my));
    }
    k.value() / (xs.len() - 1) as f64
}

/// Two-sample Kolmogorov-Smirnov distance `sup_x |F1(x) - F2(x)|`.
pub fn ks_distance(a: &[f64], b: &[f64]) -> f64 {
    assert!(!a.is_empty() && !b.is_empty());
    let mut a: Vec<f64> = a.to_vec();
    let mut b: Vec<f64> = b.to_vec();
    a.sort_by(|x, y| x.partial_cmp(y).unwrap());
    b.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        let fa = i as f64 / a.len() as f64;
        let fb = j as f64 / b.len() as f64;
        d = d.max((fa - fb).abs());
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ks_of_identical_samples_is_zero() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(ks_distance(&xs, &xs), 0.0);
    }

    #[test]
    fn ks_of_disjoint_samples_is_one() {
        assert_eq!(ks_distance(&[1.0, 2.0], &[5.0, 6.0]), 1.0);
    }

    #[test]
    fn ks_hand_example() {
        // F1 jumps at 1,2; F2 at 1.5,2: max gap 1/2 at x in [1, 1.5)
        let d = ks_distance(&[1.0, 2.0], &[1.5, 2.0]);
        assert!((d - 0.5).abs() < 1e-15);
    }

    #[test]
    fn covariance_matches_hand_computation() {
        let xs = [1.0, 2.0, 3.0];
        let ys = [2.0, 4.0, 6.0];
        let (mx, my) = (mean(&xs), mean(&ys));
        assert!((covariance(&xs, &ys, mx, my) - 2.0).abs() < 1e-14);
    }
}
