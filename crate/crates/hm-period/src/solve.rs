//! Solving the closing equation P(H_m, n, C) = 2 pi / k in C.
//!
//! The period is continuous in C with known limits at both ends of
//! (c0, infinity), but nothing guarantees it is monotone. The solver
//! therefore scans a geometric grid of C values for a sign change of
//! P(C) - 2 pi / k and bisects inside the first bracketing pair it
//! finds; any solution closes the profile, so the first one is as good
//! as any.

use std::f64::consts::PI;

use crate::critical::critical_data;
use crate::error::{BracketSide, Error, Result};
use crate::limits::bracket_endpoints;
use crate::params::Params;
use crate::period::period;

/// Relative offset of the first scan point above c0.
const SCAN_EPS: f64 = 1e-8;
/// Number of doublings in the C-scan.
const SCAN_DOUBLINGS: u32 = 60;
/// Quadrature tolerance for scan evaluations. Only the sign of
/// P - 2 pi / k matters here, and very close to c0 the integrand sits
/// on an f64 cancellation noise floor that tighter tolerances cannot
/// beat.
const SCAN_QUAD_TOL: f64 = 1e-6;
const MAX_BISECT_ITERS: u32 = 300;

/// A solved closing equation.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SolveResult {
    /// Energy constant with P(c_star) = 2 pi / k.
    pub c_star: f64,
    /// Period actually achieved at c_star.
    pub p_achieved: f64,
    /// Total period evaluations spent (scan + bisection).
    pub iterations: u32,
    pub k: u32,
}

/// Find C with |P(C) - 2 pi / k| <= tol.
///
/// Requires k >= 2 and h_low(k) < h_m < h_high(k) strictly; outside
/// that open interval the closing value 2 pi / k is not pinched
/// between the period limits and the scan would be futile.
pub fn solve_period_equation(params: &Params, k: u32, tol: f64) -> Result<SolveResult> {
    if k < 2 {
        return Err(Error::domain(format!("k must satisfy k >= 2, got k = {k}")));
    }
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    let bracket = bracket_endpoints(params.n(), params.m(), k)?;
    if params.h_m() <= bracket.h_low {
        return Err(Error::Bracket {
            side: BracketSide::Low,
            bound: bracket.h_low,
            h_m: params.h_m(),
            k,
        });
    }
    if params.h_m() >= bracket.h_high {
        return Err(Error::Bracket {
            side: BracketSide::High,
            bound: bracket.h_high,
            h_m: params.h_m(),
            k,
        });
    }

    let target = 2.0 * PI / f64::from(k);
    let cd = critical_data(params)?;
    let tight_tol = (tol * 1e-2).clamp(5e-15, 1e-12);
    let mut evals = 0u32;

    // Scan for a sign change of P(C) - target.
    let c_base = cd.c0 * (1.0 + SCAN_EPS);
    let mut prev_c = c_base;
    let mut prev_p = period(params, prev_c, SCAN_QUAD_TOL)?.value;
    evals += 1;
    let mut p_min = prev_p;
    let mut p_max = prev_p;
    let mut window: Option<(f64, f64, f64)> = None;
    for j in 1..=SCAN_DOUBLINGS {
        let c = c_base * 2f64.powi(j as i32);
        let p = period(params, c, SCAN_QUAD_TOL)?.value;
        evals += 1;
        p_min = p_min.min(p);
        p_max = p_max.max(p);
        if (prev_p - target) * (p - target) <= 0.0 {
            window = Some((prev_c, c, prev_p));
            break;
        }
        prev_c = c;
        prev_p = p;
    }
    // The scan already knows the sign at the window's lower edge; that
    // edge may sit on the near-degenerate noise floor where a tight
    // re-evaluation would be pointless.
    let (mut lo, mut hi, p_at_lo) = window.ok_or_else(|| {
        Error::convergence(format!(
            "no sign change of P - {target:.12} across the C-scan; \
             scanned P range [{p_min:.12}, {p_max:.12}]"
        ))
    })?;
    let lo_sign = (p_at_lo - target).signum();
    for _ in 0..MAX_BISECT_ITERS {
        let mid = 0.5 * (lo + hi);
        let p = period(params, mid, tight_tol)?.value;
        evals += 1;
        if (p - target).abs() <= tol {
            return Ok(SolveResult {
                c_star: mid,
                p_achieved: p,
                iterations: evals,
                k,
            });
        }
        // lo keeps the sign it started with, so lo_sign stays valid.
        if (p - target).signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    Err(Error::convergence(format!(
        "bisection on C did not reach |P - {target:.12}| <= {tol:.1e}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::BracketSide;

    #[test]
    fn reference_instance_closes_for_k3() {
        let p = Params::new(3, 2, 1.0).unwrap();
        let sol = solve_period_equation(&p, 3, 1e-10).unwrap();
        let target = 2.0 * PI / 3.0;
        assert!((sol.p_achieved - target).abs() <= 1e-10);
        assert!(sol.c_star > critical_data(&p).unwrap().c0);
        assert_eq!(sol.k, 3);
    }

    #[test]
    fn curvature_above_upper_endpoint_is_rejected() {
        // h_high = 7/3 for (n, m, k) = (3, 2, 3); h_m = 3 exceeds it.
        let p = Params::new(3, 2, 3.0).unwrap();
        let err = solve_period_equation(&p, 3, 1e-10).unwrap_err();
        match err {
            Error::Bracket { side, bound, .. } => {
                assert_eq!(side, BracketSide::High);
                assert!((bound - 7.0 / 3.0).abs() < 1e-12);
            }
            other => panic!("expected a bracket violation, got {other:?}"),
        }
    }

    #[test]
    fn curvature_below_lower_endpoint_is_rejected() {
        // h_low = 1/3 for (n, m, k) = (3, 2, 3).
        let p = Params::new(3, 2, 0.2).unwrap();
        let err = solve_period_equation(&p, 3, 1e-10).unwrap_err();
        assert!(matches!(
            err,
            Error::Bracket {
                side: BracketSide::Low,
                ..
            }
        ));
    }

    #[test]
    fn m1_instance_inside_interval_solves() {
        // (n, m, k) = (2, 1, 2): 0 < 0.5 < 1/sqrt(3), so a solution exists.
        let p = Params::new(2, 1, 0.5).unwrap();
        let sol = solve_period_equation(&p, 2, 1e-9).unwrap();
        assert!((sol.p_achieved - PI).abs() <= 1e-9);
    }

    #[test]
    fn small_k_is_rejected() {
        let p = Params::new(3, 2, 1.0).unwrap();
        assert!(matches!(
            solve_period_equation(&p, 1, 1e-10),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn error_message_names_the_violated_endpoint() {
        let p = Params::new(3, 2, 3.0).unwrap();
        let msg = solve_period_equation(&p, 3, 1e-10).unwrap_err().to_string();
        assert!(msg.contains("h_high"), "message was: {msg}");
        assert!(msg.contains("2.333"), "message was: {msg}");
    }
}
