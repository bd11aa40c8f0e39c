pub mod beta_ldp;
pub mod clt_check;
pub mod critical;
pub mod exact;
pub mod phase;
pub mod rates;
pub mod simulate;
pub mod traj;

use std::str::FromStr;

use crate::error::CliError;

/// `lo:hi:step` evaluation grid, endpoints inclusive.
#[derive(Clone, Copy, Debug)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl GridSpec {
    pub fn new(lo: f64, hi: f64, step: f64) -> Self {
        Self { lo, hi, step }
    }

    pub fn points(&self) -> Vec<f64> {
        let n = ((self.hi - self.lo) / self.step).round() as usize;
        (0..=n)
            .map(|i| self.lo + self.step * i as f64)
            .filter(|&x| x <= self.hi + self.step * 1e-9)
            .collect()
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("grid must be lo:hi:step, got `{s}`"));
        }
        let nums: Result<Vec<f64>, _> = parts.iter().map(|p| p.parse::<f64>()).collect();
        let nums = nums.map_err(|e| format!("grid component: {e}"))?;
        let (lo, hi, step) = (nums[0], nums[1], nums[2]);
        if !(lo.is_finite() && hi.is_finite() && step.is_finite() && step > 0.0 && hi >= lo) {
            return Err(format!("degenerate grid `{s}`"));
        }
        if (hi - lo) / step > 50_000_000.0 {
            return Err(format!("grid `{s}` has too many points"));
        }
        Ok(Self { lo, hi, step })
    }
}

pub(crate) fn require<T>(opt: Option<T>, what: &str) -> Result<T, CliError> {
    opt.ok_or_else(|| CliError::validation(format!("missing required parameter {what}")))
}

pub(crate) fn check(cond: bool, what: &str) -> Result<(), CliError> {
    if cond {
        Ok(())
    } else {
        Err(CliError::validation(what.to_string()))
    }
}
