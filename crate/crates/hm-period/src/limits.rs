//! Closed-form limits of the period function and the admissible
//! curvature interval for each winding number.
//!
//! As the energy constant C sweeps the open ray (c0, infinity), the
//! period P(H_m, n, C) of the profile oscillation interpolates between
//! two closed-form values:
//!
//! ```text
//! A(H_m) = 2 arctan(H_m^(-1/m))                      (C -> infinity),
//! B(H_m) = 2 pi ((n-m) F0^2 - (m-2))^(-1/2)          (C -> c0+).
//! ```
//!
//! A profile closes into an embedded hypersurface when the period hits
//! 2 pi / k for an integer k >= 2, and both limits hit exactly 2 pi / k
//! at explicit curvature values h_low(k) and h_high(k). Those endpoint
//! values bound the interval of curvatures this tool will solve over.

use std::f64::consts::PI;

use serde::Serialize;

use crate::critical::{critical_data, CriticalData};
use crate::error::{Error, Result};
use crate::params::Params;

/// The two limiting period values of an instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Limits {
    /// Limit of the period as C -> infinity.
    pub a_val: f64,
    /// Limit of the period as C -> c0 from above.
    pub b_val: f64,
}

/// Endpoints of the curvature interval for winding number `k`.
///
/// The interval may be empty (h_low >= h_high) for some (n, m, k);
/// that is reported by the period-equation solver, not here.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bracket {
    pub k: u32,
    /// cot(pi/k)^m; exactly 0 for k = 2.
    pub h_low: f64,
    /// (k^2-2)/n * ((k^2+m-2)/(n-m))^((m-2)/2).
    pub h_high: f64,
}

/// A(m, h) = 2 arctan(h^(-1/m)) for h >= 0.
///
/// Accepts h = 0 (the k = 2 lower endpoint), where the value is pi.
pub fn a_limit_value(m: u32, h: f64) -> f64 {
    2.0 * h.powf(-1.0 / f64::from(m)).atan()
}

/// Limit of the period as C -> infinity.
pub fn limit_at_infinity(params: &Params) -> f64 {
    a_limit_value(params.m(), params.h_m())
}

/// Limit of the period as C -> c0+, in the reduced form driven by F0.
pub fn limit_at_c0(params: &Params) -> Result<f64> {
    let cd = critical_data(params)?;
    Ok(limit_at_c0_from(params, &cd))
}

pub(crate) fn limit_at_c0_from(params: &Params, cd: &CriticalData) -> f64 {
    let radicand = (params.nf() - params.mf()) * cd.f0 * cd.f0 - (params.mf() - 2.0);
    2.0 * PI / radicand.sqrt()
}

/// The same limit through the unreduced route 2 pi sqrt(c0) /
/// (sqrt(a) sqrt(c0 - v0^2)). Agreement with [`limit_at_c0`] is an
/// exact identity and is enforced by the verification suite.
pub fn limit_at_c0_unreduced(params: &Params) -> Result<f64> {
    let cd = critical_data(params)?;
    Ok(limit_at_c0_unreduced_from(&cd))
}

pub(crate) fn limit_at_c0_unreduced_from(cd: &CriticalData) -> f64 {
    2.0 * PI * cd.c0.sqrt() / (cd.a.sqrt() * (cd.c0 - cd.v0 * cd.v0).sqrt())
}

/// Both period limits of an instance.
pub fn limits(params: &Params) -> Result<Limits> {
    Ok(Limits {
        a_val: limit_at_infinity(params),
        b_val: limit_at_c0(params)?,
    })
}

/// Curvature-interval endpoints for winding number `k`.
pub fn bracket_endpoints(n: u32, m: u32, k: u32) -> Result<Bracket> {
    if n < 2 || m < 1 || m > n - 1 {
        return Err(Error::domain(format!(
            "need n >= 2 and 1 <= m <= n-1, got n = {n}, m = {m}"
        )));
    }
    if k < 2 {
        return Err(Error::domain(format!("k must satisfy k >= 2, got k = {k}")));
    }
    let (nf, mf, kf) = (f64::from(n), f64::from(m), f64::from(k));
    // cot(pi/k) written as tan(pi (k-2) / (2k)) so that k = 2 gives
    // tan(0) = 0 exactly, with no infinity along the way.
    let h_low = (PI * (kf - 2.0) / (2.0 * kf)).tan().powi(m as i32);
    let h_high =
        (kf * kf - 2.0) / nf * (((kf * kf + mf - 2.0) / (nf - mf)).powf((mf - 2.0) / 2.0));
    Ok(Bracket { k, h_low, h_high })
}

/// H_2 from the scalar curvature: H_2 = (R - n(n-1)) / (n(n-1)).
///
/// Meaningful for n >= 3, where H_2 is the second mean curvature.
pub fn h2_from_scalar_curvature(r_scal: f64, n: u32) -> f64 {
    let d = f64::from(n) * (f64::from(n) - 1.0);
    (r_scal - d) / d
}

/// Scalar curvature from H_2: R = n(n-1)(H_2 + 1).
pub fn scalar_curvature_from_h2(h2: f64, n: u32) -> f64 {
    f64::from(n) * (f64::from(n) - 1.0) * (h2 + 1.0)
}
