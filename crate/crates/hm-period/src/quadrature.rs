//! Quadrature for integrals with inverse-square-root endpoint
//! singularities.
//!
//! Both the period and the arclength integrals have the shape
//!
//! ```text
//! I = integral from t1 to t2 of f(t) / sqrt((t - t1)(t2 - t)) dt
//! ```
//!
//! with f smooth up to the endpoints. The substitution
//! t = (t1+t2)/2 + (t2-t1)/2 * cos(phi) removes the singular weight
//! exactly, leaving the regular integral of f(t(phi)) over [0, pi].
//! Midpoint sums on that interval are the Chebyshev-Gauss rule with
//! weight pi/N per node; for analytic f they converge geometrically,
//! so doubling N until two successive values agree gives both the
//! result and a usable error estimate.

use crate::error::{Error, Result};

/// Node count the refinement starts from.
const N_START: u32 = 16;
/// Hard ceiling on the node count (2^20).
const N_MAX: u32 = 1 << 20;

/// Result of one converged quadrature.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Quadrature {
    pub value: f64,
    /// Difference between the last two refinement levels.
    pub err_estimate: f64,
    /// Node count at convergence.
    pub nodes: u32,
}

/// Integrate `smooth_part(t) / sqrt((t - t1)(t2 - t))` over (t1, t2).
///
/// Convergence is declared when two successive doublings differ by at
/// most `tol * max(1, |value|)`. Nodes never touch the endpoints, so
/// `smooth_part` is only evaluated strictly inside the interval.
pub fn singular_integral<F>(smooth_part: F, t1: f64, t2: f64, tol: f64) -> Result<Quadrature>
where
    F: Fn(f64) -> f64,
{
    if !(t1 < t2) {
        return Err(Error::domain(format!(
            "integration window requires t1 < t2, got [{t1}, {t2}]"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }

    let mid = 0.5 * (t1 + t2);
    let half_width = 0.5 * (t2 - t1);
    let level_value = |n: u32| -> f64 {
        let step = std::f64::consts::PI / f64::from(n);
        let mut sum = 0.0;
        for j in 0..n {
            let phi = (f64::from(j) + 0.5) * step;
            sum += smooth_part(mid + half_width * phi.cos());
        }
        sum * step
    };

    let mut n = N_START;
    let mut prev = level_value(n);
    loop {
        n *= 2;
        let cur = level_value(n);
        if !cur.is_finite() {
            return Err(Error::convergence(format!(
                "singular quadrature produced a non-finite sum at {n} nodes; the \
                 integrand is saturating (window too degenerate for the requested c)"
            )));
        }
        let err = (cur - prev).abs();
        if err <= tol * cur.abs().max(1.0) {
            return Ok(Quadrature {
                value: cur,
                err_estimate: err,
                nodes: n,
            });
        }
        if n >= N_MAX {
            return Err(Error::convergence(format!(
                "singular quadrature did not reach tol = {tol:.1e} within {N_MAX} nodes \
                 (last difference {err:.3e})"
            )));
        }
        prev = cur;
    }
}
