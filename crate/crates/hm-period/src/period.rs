//! The period function P(H_m, n, C) and the half-period T/2.
//!
//! With the substitution t = g(s), ds = dt / sqrt(q(t)), the angle
//! advance over one full oscillation becomes
//!
//! ```text
//! P = 2 sqrt(C) * integral from t1 to t2 of
//!         t (t^-n + H_m)^(1/m) / ((C - t^2) sqrt(q(t))) dt,
//! ```
//!
//! and the arclength of the half oscillation is T/2 = integral of
//! dt / sqrt(q(t)). Both integrands carry the inverse-square-root
//! endpoint singularity of sqrt(q); factoring
//! q(t) = (t - t1)(t2 - t) h(t) with h positive and smooth on the
//! closed window moves that weight into the quadrature rule and leaves
//! a regular factor 1 / sqrt(h).

use crate::critical::critical_data;
use crate::error::Result;
use crate::params::Params;
use crate::potential::{lambda_raw, q_raw};
use crate::quadrature::singular_integral;
use crate::roots::{find_roots, RootPair};

/// A converged period evaluation.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct PeriodResult {
    /// P(H_m, n, C).
    pub value: f64,
    /// Difference between the last two quadrature refinement levels.
    pub err_estimate: f64,
    /// Quadrature node count at convergence.
    pub nodes: u32,
}

/// The regular part h(t) = q(t) / ((t - t1)(t2 - t)).
///
/// Positive on the open window; only ever evaluated at interior nodes.
fn regular_factor(params: &Params, roots: &RootPair, t: f64) -> f64 {
    q_raw(params, t, roots.c) / ((t - roots.t1) * (roots.t2 - t))
}

/// Evaluate the period P at energy constant `c`, to quadrature
/// tolerance `tol`. Requires c > c0.
pub fn period(params: &Params, c: f64, tol: f64) -> Result<PeriodResult> {
    let roots = find_roots(params, c)?;
    period_from_roots(params, &roots, tol)
}

pub(crate) fn period_from_roots(
    params: &Params,
    roots: &RootPair,
    tol: f64,
) -> Result<PeriodResult> {
    let c = roots.c;
    let sqrt_c = c.sqrt();
    let smooth = |t: f64| {
        2.0 * sqrt_c * t * lambda_raw(params, t)
            / ((c - t * t) * regular_factor(params, roots, t).sqrt())
    };
    let quad = singular_integral(smooth, roots.t1, roots.t2, tol)?;
    Ok(PeriodResult {
        value: quad.value,
        err_estimate: quad.err_estimate,
        nodes: quad.nodes,
    })
}

/// Half the arclength period: T/2 = integral of dt / sqrt(q(t)).
pub fn half_period(params: &Params, c: f64, tol: f64) -> Result<f64> {
    let roots = find_roots(params, c)?;
    half_period_from_roots(params, &roots, tol)
}

pub(crate) fn half_period_from_roots(params: &Params, roots: &RootPair, tol: f64) -> Result<f64> {
    let smooth = |t: f64| regular_factor(params, roots, t).sqrt().recip();
    Ok(singular_integral(smooth, roots.t1, roots.t2, tol)?.value)
}

/// The degenerate case: period of the harmonic well at the critical
/// point. Used as a cross-check oracle for c close to c0.
#[allow(dead_code)]
pub(crate) fn harmonic_half_period(params: &Params) -> Result<f64> {
    let cd = critical_data(params)?;
    Ok(std::f64::consts::PI / cd.a.sqrt())
}
