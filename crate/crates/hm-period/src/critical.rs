//! The critical point of the potential and the constants derived from it.
//!
//! For each instance the potential `q` has a unique interior critical
//! point v0 (its second derivative is everywhere below -2, so q' is
//! strictly decreasing). Writing F0 = (v0^-n + H_m)^(1/m), the
//! stationarity condition q'(v0) = 0 becomes a scalar equation for
//! u = F0^2:
//!
//! ```text
//! (n - m) u^(m/2) - m u^((m-2)/2) = n H_m,    u > max((m-2)/(n-m), 0),
//! ```
//!
//! whose left side is strictly increasing on that domain. Everything
//! here reduces to solving this one monotone equation.

use crate::error::{Error, Result};
use crate::params::Params;
use crate::potential::q_double_prime_raw;

/// Relative width at which the bisection for u = F0^2 stops.
const U_BISECT_REL_TOL: f64 = 1e-14;
const NEWTON_POLISH_STEPS: usize = 3;

/// Constants attached to the critical point of the potential.
///
/// `c0` is the threshold energy: the window of admissible potentials is
/// exactly C > c0. It does not depend on any C input.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CriticalData {
    /// F0 = (v0^-n + H_m)^(1/m).
    pub f0: f64,
    /// The unique critical point of q.
    pub v0: f64,
    /// c0 = v0^2 (F0^2 + 1); q(v0) = C - c0 for every C.
    pub c0: f64,
    /// a = -q''(v0) / 2, always > 1.
    pub a: f64,
}

/// Left side of the stationarity equation minus its right side.
fn stationarity_residual(params: &Params, u: f64) -> f64 {
    let n = params.nf();
    let m = params.mf();
    (n - m) * u.powf(m / 2.0) - m * u.powf((m - 2.0) / 2.0) - n * params.h_m()
}

fn stationarity_derivative(params: &Params, u: f64) -> f64 {
    let n = params.nf();
    let m = params.mf();
    0.5 * m * u.powf((m - 4.0) / 2.0) * ((n - m) * u - (m - 2.0))
}

/// Lower boundary of the u-domain, below which the left side stops
/// being monotone (and F0^2 may not exist).
pub(crate) fn u_domain_floor(params: &Params) -> f64 {
    ((params.mf() - 2.0) / (params.nf() - params.mf())).max(0.0)
}

/// Solve for u = F0^2. The equation is monotone on its domain, so a
/// sign-change bracket plus bisection cannot fail for finite inputs.
fn solve_u(params: &Params) -> Result<f64> {
    let floor = u_domain_floor(params);

    // Lower bracket endpoint: just inside the domain, where the residual
    // is provably negative; back off if the offset overshoots the root.
    let mut eps = 1e-8 * floor.max(1.0);
    let mut lo = floor + eps;
    let mut guard = 0;
    while stationarity_residual(params, lo) >= 0.0 {
        eps *= 0.5;
        lo = floor + eps;
        guard += 1;
        if guard > 200 {
            return Err(Error::convergence(
                "could not place the lower bracket endpoint for F0^2".to_string(),
            ));
        }
    }

    let mut hi = (2.0 * lo).max(1.0);
    guard = 0;
    while stationarity_residual(params, hi) <= 0.0 {
        hi *= 2.0;
        guard += 1;
        if guard > 1100 || !hi.is_finite() {
            return Err(Error::convergence(format!(
                "no sign change for F0^2 up to u = {hi:e}"
            )));
        }
    }

    let mut iters = 0;
    while hi - lo > U_BISECT_REL_TOL * hi {
        let mid = 0.5 * (lo + hi);
        if stationarity_residual(params, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iters += 1;
        if iters > 2000 {
            return Err(Error::convergence(
                "bisection for F0^2 exceeded its iteration budget".to_string(),
            ));
        }
    }

    let mut u = 0.5 * (lo + hi);
    for _ in 0..NEWTON_POLISH_STEPS {
        let step = stationarity_residual(params, u) / stationarity_derivative(params, u);
        let next = u - step;
        if next.is_finite() && next > floor {
            u = next;
        }
    }
    Ok(u)
}

/// Compute F0, v0, c0 and a for an instance.
pub fn critical_data(params: &Params) -> Result<CriticalData> {
    let u = solve_u(params)?;
    let m = params.mf();
    let f0 = u.sqrt();
    // v0^-n = F0^m - H_m, positive because F0^m - H_m = (m/n)(F0^m + F0^(m-2)).
    let v0 = (u.powf(m / 2.0) - params.h_m()).powf(-1.0 / params.nf());
    let c0 = v0 * v0 * (u + 1.0);
    let a = -q_double_prime_raw(params, v0) / 2.0;
    Ok(CriticalData { f0, v0, c0, a })
}
