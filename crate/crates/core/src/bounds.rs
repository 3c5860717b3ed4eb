//! The asymptotic bound formulas attached to the censuses: the defect
//! exponents f and h, the semiregular-representation proportion bound
//! 1 - m^2/sqrt(n), and the threshold inequality whose first holding point
//! defines n_eps.
//!
//! Everything is evaluated in log space so that n up to 2^96 (and beyond, for
//! scans) stays comfortably inside double range; at these magnitudes the
//! relative evaluation error is far below 1e-12.

use crate::error::{Error, Result};
use serde::Serialize;

/// Evaluations of the bound formulas at one (n, eps, m).
#[derive(Serialize, Clone, Debug)]
pub struct BoundReport {
    pub n: String,
    pub log2_n: f64,
    pub eps: f64,
    pub m: u64,
    /// f_eps(n) = n^(0.5-eps) / (24 (log2 n)^2.5) - (3/4) log2^2 n - 15.
    pub f_eps: f64,
    /// h_eps(n) = f_eps(n) - log2^2(2n) - 2 log2 n.
    pub h_eps: f64,
    /// log2 of the 2^(n - f_eps(n)) count bound, reported as n - f_eps(n).
    pub haar_bound_log2: f64,
    /// The bound is vacuous when f_eps(n) <= 0 (2^(n-f) exceeds the 2^n total).
    pub haar_bound_vacuous: bool,
    /// 1 - m^2 / sqrt(n).
    pub msr_bound: f64,
    pub msr_bound_vacuous: bool,
    /// Strict inequality (threshold test) at this n and eps.
    pub eq11_holds: bool,
    pub eq11_lhs_log2: f64,
    pub eq11_rhs_log2: f64,
}

fn check_domain(n: u128, eps: f64, m: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!("n must be at least 2, got {n}")));
    }
    if !(eps > 0.0 && eps <= 0.1) {
        return Err(Error::Domain(format!("eps must lie in (0, 0.1], got {eps}")));
    }
    if m < 1 {
        return Err(Error::Domain("m must be at least 1".into()));
    }
    Ok(())
}

fn log2_of(n: u128) -> f64 {
    (n as f64).log2()
}

pub fn f_eps(n: u128, eps: f64) -> f64 {
    let l = log2_of(n);
    let a = ((0.5 - eps) * l).exp2();
    a / (24.0 * l.powf(2.5)) - 0.75 * l * l - 15.0
}

pub fn h_eps(n: u128, eps: f64) -> f64 {
    let l = log2_of(n);
    f_eps(n, eps) - (l + 1.0) * (l + 1.0) - 2.0 * l
}

/// Left- and right-hand sides of the threshold inequality
/// (6+2L)(A+L)^2 + (1-L)(A+L) + L^2 + 2L < n^(1-eps), with L = log2 n and
/// A = n^(0.5-eps).
pub fn eq11_sides(n: u128, eps: f64) -> (f64, f64) {
    let l = log2_of(n);
    let a = ((0.5 - eps) * l).exp2();
    let lhs = (6.0 + 2.0 * l) * (a + l) * (a + l) + (1.0 - l) * (a + l) + l * l + 2.0 * l;
    let rhs = ((1.0 - eps) * l).exp2();
    (lhs, rhs)
}

pub fn eq11_holds(n: u128, eps: f64) -> bool {
    let (lhs, rhs) = eq11_sides(n, eps);
    lhs < rhs
}

pub fn eval_bounds(n: u128, eps: f64, m: u64) -> Result<BoundReport> {
    check_domain(n, eps, m)?;
    let l = log2_of(n);
    let f = f_eps(n, eps);
    let h = h_eps(n, eps);
    let (lhs, rhs) = eq11_sides(n, eps);
    let msr = 1.0 - (m * m) as f64 / (n as f64).sqrt();
    Ok(BoundReport {
        n: n.to_string(),
        log2_n: l,
        eps,
        m,
        f_eps: f,
        h_eps: h,
        haar_bound_log2: n as f64 - f,
        haar_bound_vacuous: f <= 0.0,
        msr_bound: msr,
        msr_bound_vacuous: msr <= 0.0,
        eq11_holds: lhs < rhs,
        eq11_lhs_log2: lhs.log2(),
        eq11_rhs_log2: rhs.log2(),
    })
}

/// Result of the n_eps scan: the first integer from which the threshold
/// inequality was observed to hold onwards.
#[derive(Serialize, Clone, Debug)]
pub struct NepsReport {
    pub eps: f64,
    pub max_log2: u32,
    /// 1 + the largest n at which the inequality failed.
    pub n_eps: String,
    pub n_eps_log2: f64,
    pub last_failure: String,
    /// Number of geometric verification points checked above n_eps.
    pub verified_points: u32,
}

/// Locates 1 + (largest n at which the threshold inequality fails) by a
/// geometric scan over powers of two followed by bisection, then verifies the
/// inequality at 64 geometrically spaced points up to 2^max_log2. A
/// verification failure restarts the scan from the offending point.
pub fn find_n_eps(eps: f64, max_log2: u32) -> Result<NepsReport> {
    if !(eps > 0.0 && eps <= 0.1) {
        return Err(Error::Domain(format!("eps must lie in (0, 0.1], got {eps}")));
    }
    if !(8..=126).contains(&max_log2) {
        return Err(Error::Domain("max_log2 must lie in 8..=126".into()));
    }
    let top: u128 = 1u128 << max_log2;
    if !eq11_holds(top, eps) {
        return Err(Error::BoundaryNotBracketed { max_log2 });
    }

    // Last failing power of two.
    let mut last_fail_pow: Option<u32> = None;
    for j in 1..=max_log2 {
        if !eq11_holds(1u128 << j, eps) {
            last_fail_pow = Some(j);
        }
    }
    let mut lo: u128 = match last_fail_pow {
        Some(j) => 1u128 << j,
        None => return Err(Error::Domain("inequality never fails in range; nothing to locate".into())),
    };
    let mut hi: u128 = lo << 1;

    for _round in 0..64 {
        // Bisect: lo fails, hi holds.
        debug_assert!(!eq11_holds(lo, eps) && eq11_holds(hi, eps));
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if eq11_holds(mid, eps) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        // Verify at 64 geometric points between hi and the scan top.
        let lo_l = (hi as f64).log2();
        let step = (max_log2 as f64 - lo_l) / 64.0;
        let mut later_failure: Option<u128> = None;
        for k in 1..=64u32 {
            let point = (lo_l + step * k as f64).exp2().round() as u128;
            let point = point.clamp(hi, top);
            if !eq11_holds(point, eps) {
                later_failure = Some(point);
                break;
            }
        }
        match later_failure {
            None => {
                return Ok(NepsReport {
                    eps,
                    max_log2,
                    n_eps: hi.to_string(),
                    n_eps_log2: (hi as f64).log2(),
                    last_failure: lo.to_string(),
                    verified_points: 64,
                });
            }
            Some(point) => {
                lo = point;
                hi = top;
            }
        }
    }
    Err(Error::BoundaryNotBracketed { max_log2 })
}
