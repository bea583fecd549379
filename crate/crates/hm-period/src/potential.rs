//! The profile potential and its derivatives.
//!
//! A closed rotational profile is governed by the first-order equation
//! (g')^2 = q(g) with the one-parameter family of potentials
//!
//! ```text
//! q(v) = C - v^2 (v^-n + H_m)^(2/m) - v^2,    v > 0.
//! ```
//!
//! Everything downstream (turning points, period integrals, closing
//! condition) is built from `q`, its first two derivatives, and the
//! radius-profile factor `lambda(v) = (v^-n + H_m)^(1/m)`.
//!
//! Root bracketing probes very small `v`, where `v^-n` can exceed the
//! f64 range. All evaluations fall back to a logarithmic form there, so
//! results either stay finite or saturate to the correctly signed
//! infinity instead of turning into NaN.

use crate::error::{Error, Result};
use crate::params::Params;

/// Largest exponent x for which exp(x) is a normal f64 (roughly ln(1e300)).
const LN_OVERFLOW: f64 = 690.0;

/// ln(v^-n + h) and, when representable, v^-n itself.
///
/// The returned `Option` is `None` exactly when v^-n overflows f64; the
/// log value is always finite for v > 0.
fn ln_w_parts(params: &Params, v: f64) -> (f64, Option<f64>) {
    let n = params.nf();
    let h = params.h_m();
    let p = -n * v.ln(); // ln(v^-n)
    if p > LN_OVERFLOW {
        // v^-n overflows: ln(v^-n + h) = p + ln(1 + h v^n).
        (p + (h * (-p).exp()).ln_1p(), None)
    } else {
        let vn = v.powi(-(params.n() as i32));
        ((vn + h).ln(), Some(vn))
    }
}

fn check_positive(v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("v must be positive, got v = {v}")))
    }
}

/// q(v) = C - v^2 (v^-n + H_m)^(2/m) - v^2 for v > 0.
pub fn q_eval(params: &Params, v: f64, c: f64) -> Result<f64> {
    check_positive(v)?;
    Ok(q_raw(params, v, c))
}

pub(crate) fn q_raw(params: &Params, v: f64, c: f64) -> f64 {
    c - power_term(params, v) - v * v
}

/// v^2 (v^-n + H_m)^(2/m), in logarithmic form when v^-n overflows.
pub(crate) fn power_term(params: &Params, v: f64) -> f64 {
    let m = params.mf();
    let (ln_w, vn) = ln_w_parts(params, v);
    match vn {
        Some(vn) => {
            let w = vn + params.h_m();
            v * v * w.powf(2.0 / m)
        }
        // exp may still overflow to +inf here; q then saturates to -inf,
        // which keeps the sign information bracketing relies on.
        None => (2.0 * v.ln() + (2.0 / m) * ln_w).exp(),
    }
}

/// q'(v) = -2v { (v^-n + H_m)^((2-m)/m) [ ((m-n)/m) v^-n + H_m ] + 1 }.
///
/// Independent of the energy constant C.
pub fn q_prime(params: &Params, v: f64) -> Result<f64> {
    check_positive(v)?;
    Ok(q_prime_raw(params, v))
}

pub(crate) fn q_prime_raw(params: &Params, v: f64) -> f64 {
    let n = params.nf();
    let m = params.mf();
    let h = params.h_m();
    let (ln_w, vn) = ln_w_parts(params, v);
    let brace = match vn {
        Some(vn) => {
            let w = vn + h;
            w.powf((2.0 - m) / m) * (((m - n) / m) * vn + h) + 1.0
        }
        None => {
            // Split the product so each factor is an exp of a finite log.
            let lead = -((n - m) / m) * (((2.0 - m) / m) * ln_w - n * v.ln()).exp();
            let corr = h * (((2.0 - m) / m) * ln_w).exp();
            lead + corr + 1.0
        }
    };
    -2.0 * v * brace
}

/// q''(v); always < -2 for valid parameters.
pub fn q_double_prime(params: &Params, v: f64) -> Result<f64> {
    check_positive(v)?;
    Ok(q_double_prime_raw(params, v))
}

pub(crate) fn q_double_prime_raw(params: &Params, v: f64) -> f64 {
    let n = params.nf();
    let m = params.mf();
    let h = params.h_m();
    let c2 = 2.0 * n * n - 3.0 * n * m + m * m; // = (n-m)(2n-m) > 0
    let c1 = m * (n * n - 3.0 * n + 2.0 * m);
    let (ln_w, vn) = ln_w_parts(params, v);
    let e = (2.0 - 2.0 * m) / m;
    match vn {
        Some(vn) if vn < 1e150 => {
            let w = vn + h;
            -(2.0 / (m * m)) * w.powf(e) * (c2 * vn * vn + c1 * h * vn + m * m * h * h) - 2.0
        }
        _ => {
            let p = -n * v.ln();
            let t2 = c2 * (e * ln_w + 2.0 * p).exp();
            let t1 = c1 * h * (e * ln_w + p).exp();
            let t0 = m * m * h * h * (e * ln_w).exp();
            -(2.0 / (m * m)) * (t2 + t1 + t0) - 2.0
        }
    }
}

/// lambda(v) = (v^-n + H_m)^(1/m), the radius-profile factor.
pub(crate) fn lambda_raw(params: &Params, v: f64) -> f64 {
    let m = params.mf();
    let (ln_w, vn) = ln_w_parts(params, v);
    match vn {
        Some(vn) => (vn + params.h_m()).powf(1.0 / m),
        None => (ln_w / m).exp(),
    }
}
