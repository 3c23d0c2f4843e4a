//! Code rates, their Gaussian approximation and rate-change bounds.
//!
//! The dual Berman rate `R_n(r,m)` is the probability that a sum of `m`
//! Bernoulli((n-1)/n) variables is at most `r`, which is what makes the
//! normal approximation `1 - Q((r - mμ)/sqrt(mσ²))` accurate to `O(1/sqrt m)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use statrs::function::erf::erfc;

use crate::code::{dual_berman_dimension, Family};
use crate::error::{Error, Result};

/// Universal Berry–Esseen constant for i.i.d. sums.
pub const BERRY_ESSEEN_C: f64 = 0.4748;

/// Moments of the per-position weight indicator for a given `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateModel {
    pub n: usize,
    pub mu: f64,
    pub sigma2: f64,
    pub kappa: f64,
}

impl RateModel {
    /// `κ = 0.4748 ρ / σ³` with `ρ = E|X - μ|³`.
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameters(format!("n must be >= 2, got {n}")));
        }
        let p = (n as f64 - 1.0) / n as f64;
        let sigma2 = p * (1.0 - p);
        let rho = p * (1.0 - p) * ((1.0 - p).powi(2) + p * p);
        Ok(Self {
            n,
            mu: p,
            sigma2,
            kappa: BERRY_ESSEEN_C * rho / sigma2.powf(1.5),
        })
    }

    pub fn with_kappa(self, kappa: f64) -> Result<Self> {
        if kappa.is_nan() || kappa <= 0.0 {
            return Err(Error::InvalidParameters(format!("kappa must be positive, got {kappa}")));
        }
        Ok(Self { kappa, ..self })
    }
}

fn check(n: usize, r: usize, m: usize) -> Result<()> {
    crate::code::checked_parameters(n, r, m, Family::DualBerman).map(|_| ())
}

/// Exact rate of `C_n(r,m)` or `D_n(r,m)`.
pub fn exact_rate(n: usize, r: usize, m: usize, family: Family) -> Result<BigRational> {
    check(n, r, m)?;
    let length = BigInt::from(n).pow(m as u32);
    let dual = BigRational::new(BigInt::from(dual_berman_dimension(n, r, m)), length);
    Ok(match family {
        Family::DualBerman => dual,
        Family::Berman => BigRational::one() - dual,
    })
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Standard normal upper tail.
pub fn q_function(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

/// `Q^{-1}(p)` by bisection, to `1e-10` absolute.
pub fn q_inverse(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParameters(format!("Q^-1 needs 0 < p < 1, got {p}")));
    }
    let (mut lo, mut hi) = (-40.0f64, 40.0f64);
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if q_function(mid) > p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `1 - Q((r - mμ)/sqrt(mσ²))`, approximating the dual Berman rate.
pub fn gaussian_rate_approx(n: usize, r: usize, m: usize) -> Result<f64> {
    check(n, r, m)?;
    let model = RateModel::new(n)?;
    let mf = m as f64;
    Ok(1.0 - q_function((r as f64 - mf * model.mu) / (mf * model.sigma2).sqrt()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateSelection {
    pub r: usize,
    pub rate: f64,
    /// `mμ + Q^{-1}(1 - R*) sqrt(mσ²)` rounded, for comparison only.
    pub gaussian_r: i64,
}

/// The `r` whose exact rate is closest to `target`; ties go to smaller `r`.
pub fn select_r_for_target_rate(n: usize, m: usize, target: f64, family: Family) -> Result<RateSelection> {
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::InvalidParameters(format!(
            "target rate must lie in (0,1), got {target}"
        )));
    }
    check(n, 0, m)?;
    let mut best: Option<(f64, usize, f64)> = None;
    for r in 0..=m {
        let rate = to_f64(&exact_rate(n, r, m, family)?);
        let gap = (rate - target).abs();
        if best.is_none_or(|(g, _, _)| gap < g) {
            best = Some((gap, r, rate));
        }
    }
    let (_, r, rate) = best.expect("r = 0 is always a candidate");

    let model = RateModel::new(n)?;
    let mf = m as f64;
    let dual_target = match family {
        Family::DualBerman => target,
        Family::Berman => 1.0 - target,
    };
    let gaussian = mf * model.mu + q_inverse(1.0 - dual_target)? * (mf * model.sigma2).sqrt();
    Ok(RateSelection {
        r,
        rate,
        gaussian_r: gaussian.round() as i64,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateChangeReport {
    pub n: usize,
    pub r: usize,
    pub m: usize,
    pub k: usize,
    pub kappa: f64,
    /// `R_n(r,m) - R_n(r,m+k)`.
    pub dual_difference: f64,
    /// `2κ/sqrt(m) + (k/sqrt(m))(1+μ)/sqrt(8πσ²)`.
    pub dual_bound: f64,
    /// `rate(D_n(r,m)) - rate(D_n(r+k,m+k))`.
    pub berman_difference: f64,
    /// `2κ/sqrt(m) + (k/sqrt(m))(μ+2)/sqrt(8πσ²)`.
    pub berman_bound: f64,
    pub dual_nonnegative: bool,
    pub berman_nonnegative: bool,
    pub dual_within_bound: bool,
    pub berman_within_bound: bool,
}

pub fn rate_change_bounds(n: usize, r: usize, m: usize, k: usize, model: &RateModel) -> Result<RateChangeReport> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be >= 1".into()));
    }
    if model.n != n {
        return Err(Error::InvalidParameters(format!(
            "rate model is for n={}, not {n}",
            model.n
        )));
    }
    check(n, r, m)?;
    let dual = exact_rate(n, r, m, Family::DualBerman)? - exact_rate(n, r, m + k, Family::DualBerman)?;
    let berman = exact_rate(n, r, m, Family::Berman)? - exact_rate(n, r + k, m + k, Family::Berman)?;

    let sm = (m as f64).sqrt();
    let spread = (8.0 * std::f64::consts::PI * model.sigma2).sqrt();
    let dual_bound = 2.0 * model.kappa / sm + (k as f64 / sm) * (1.0 + model.mu) / spread;
    let berman_bound = 2.0 * model.kappa / sm + (k as f64 / sm) * (model.mu + 2.0) / spread;
    let (df, bf) = (to_f64(&dual), to_f64(&berman));
    Ok(RateChangeReport {
        n,
        r,
        m,
        k,
        kappa: model.kappa,
        dual_difference: df,
        dual_bound,
        berman_difference: bf,
        berman_bound,
        dual_nonnegative: dual >= BigRational::zero(),
        berman_nonnegative: berman >= BigRational::zero(),
        dual_within_bound: df <= dual_bound,
        berman_within_bound: bf <= berman_bound,
    })
}
