//! Test functions, the sums S1 and S2, auxiliary prime sums and the average-rank bound.

mod rs;
mod sums;
mod testfn;

pub use rs::{prime_sum_2mod3, rs_decay_checks, rs_traces, RsDecayReport, RS_DECAY_BAND};
pub use sums::{s1_sum, s1_sum_with, s2_sum, s2_sum_with, SumOutcome, SumPath};
pub use testfn::TestFunction;

use log::warn;

use crate::conductor::mean_log_conductor;
use crate::error::{Error, Result};
use crate::stats::squarefree_enum;

/// Neumaier compensated sum, in iteration order.
pub fn neumaier_sum(xs: impl IntoIterator<Item = f64>) -> f64 {
    let (mut s, mut c) = (0.0f64, 0.0f64);
    for x in xs {
        let t = s + x;
        c += if s.abs() >= x.abs() { (s - t) + x } else { (x - t) + s };
        s = t;
    }
    s + c
}

/// Largest integer n with n <= X^e, tolerant of powf rounding just below an integer.
pub(crate) fn prime_limit(x: f64, e: f64) -> u64 {
    let v = x.powf(e);
    let r = v.round();
    if (v - r).abs() <= 1e-9 * v.max(1.0) {
        r as u64
    } else {
        v.floor() as u64
    }
}

pub(crate) fn check_x(x: f64) -> Result<()> {
    if !(x >= 10.0) || !x.is_finite() {
        return Err(Error::Domain(format!("X must be >= 10, got {x}")));
    }
    Ok(())
}

pub const REGIME_SIGMA: f64 = 1.0 / 3.0;

#[derive(Clone, Debug, PartialEq)]
pub struct DensityReport {
    pub x: f64,
    pub sigma: f64,
    pub s1: f64,
    pub s2: f64,
    pub phi0: f64,
    pub mean_log_conductor_low: f64,
    pub mean_log_conductor_high: f64,
    pub bound_low: f64,
    pub bound_high: f64,
    pub skipped_budget: f64,
    pub out_of_regime: bool,
}

impl DensityReport {
    pub fn s2_over_phi0(&self) -> f64 {
        self.s2 / self.phi0
    }
}

pub fn density_report(x: f64, sigma: f64) -> Result<DensityReport> {
    check_x(x)?;
    let tf = TestFunction::new(sigma)?;
    let out_of_regime = sigma >= REGIME_SIGMA;
    if out_of_regime {
        warn!("sigma = {sigma} >= 1/3: error terms are not controlled in this range");
    }
    let s1 = s1_sum_with(x, sigma, SumPath::ResidueClass)?;
    let s2 = s2_sum_with(x, sigma, SumPath::ResidueClass)?;
    let set = squarefree_enum(x)?;
    let (mlo, mhi) = mean_log_conductor(&set.members)?;
    let phi0 = tf.phi0();
    let lx = x.ln();
    let base = |m: f64| tf.phihat(0.0) * m / lx / phi0 - s1.value / phi0 - s2.value / phi0;
    let budget = s1.budget + s2.budget;
    Ok(DensityReport {
        x,
        sigma,
        s1: s1.value,
        s2: s2.value,
        phi0,
        mean_log_conductor_low: mlo,
        mean_log_conductor_high: mhi,
        bound_low: base(mlo) - budget / phi0,
        bound_high: base(mhi) + budget / phi0,
        skipped_budget: budget,
        out_of_regime,
    })
}

pub fn rank_bound(x: f64, sigma: f64) -> Result<(f64, f64)> {
    let r = density_report(x, sigma)?;
    Ok((r.bound_low, r.bound_high))
}

/// 1/4 + 6/sigma.
pub fn asymptotic_bound(sigma: f64) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(Error::Domain(format!("sigma must be positive, got {sigma}")));
    }
    Ok(0.25 + 6.0 / sigma)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn testfn_examples() {
        let t = TestFunction::new(0.7).unwrap();
        assert_eq!(t.phihat(0.0), 0.7 / 4.0);
        assert!((t.phi(0.0) - 0.49 / 4.0).abs() < 1e-15);
        assert_eq!(t.phihat(0.8), 0.0);
        assert!(TestFunction::new(0.0).is_err());
        assert!((t.phihat(0.0) / t.phi0() - 1.0 / 0.7).abs() < 1e-15);
    }

    #[test]
    fn asymptotic_examples() {
        assert_eq!(asymptotic_bound(1.0 / 3.0).unwrap(), 18.25);
        assert!(asymptotic_bound(-1.0).is_err());
    }

    #[test]
    fn prime_limit_rounding() {
        assert_eq!(prime_limit(1e6, 0.5), 1000);
        assert_eq!(prime_limit(1e6, 1.0), 1_000_000);
        assert_eq!(prime_limit(200.0, 0.5), 14);
    }

    #[test]
    fn neumaier_recovers_cancellation() {
        assert_eq!(neumaier_sum([1.0, 1e100, 1.0, -1e100]), 2.0);
    }
}
