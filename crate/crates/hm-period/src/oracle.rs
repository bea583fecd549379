//! Reference integrator for cross-checking the period quadrature.
//!
//! This deliberately avoids the substitution trick used by the main
//! path. It integrates the raw singular integrand on inset windows
//! [t1 + delta, t2 - delta] with globally adaptive Simpson (split the
//! worst panel first, QUADPACK style), then removes the inset bias by
//! Richardson extrapolation in x = sqrt(delta): clipping an
//! inverse-square-root endpoint produces an error expansion in odd
//! powers of x, so successive delta /= 4 halves x and each
//! extrapolation column cancels one more odd power.
//!
//! It is slower and entirely independent of the production route; the
//! verification suite requires the two to agree.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::params::Params;
use crate::potential::{lambda_raw, q_raw};
use crate::roots::find_roots;

/// Widest inset, as a fraction of the window width.
const INSET_FRACTION: f64 = 1e-2;
/// Shrink factor between inset levels (so sqrt(delta) halves).
const INSET_RATIO: f64 = 0.25;
/// Extrapolation table depth.
const LEVELS: usize = 10;
/// Budget for one adaptive Simpson run.
const MAX_SIMPSON_EVALS: u64 = 4_000_000;

/// One panel with its extrapolated Simpson value and error estimate.
struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

struct GlobalSimpson<'f> {
    f: &'f dyn Fn(f64) -> f64,
    evals: u64,
}

impl<'f> GlobalSimpson<'f> {
    fn eval(&mut self, x: f64) -> Result<f64> {
        self.evals += 1;
        if self.evals > MAX_SIMPSON_EVALS {
            return Err(Error::convergence(
                "reference integrator exceeded its evaluation budget".to_string(),
            ));
        }
        let y = (self.f)(x);
        if !y.is_finite() {
            return Err(Error::convergence(format!(
                "reference integrand is not finite at t = {x}"
            )));
        }
        Ok(y)
    }

    /// Build a panel: Simpson on [a, b] against Simpson on its halves,
    /// with the standard 1/15 extrapolation and error estimate.
    fn panel(&mut self, a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> Result<Panel> {
        let m = 0.5 * (a + b);
        let flm = self.eval(0.5 * (a + m))?;
        let frm = self.eval(0.5 * (m + b))?;
        let h = b - a;
        let coarse = h / 6.0 * (fa + 4.0 * fm + fb);
        let fine = h / 12.0 * (fa + 4.0 * flm + 2.0 * fm + 4.0 * frm + fb);
        Ok(Panel {
            a,
            b,
            fa,
            fm,
            fb,
            value: fine + (fine - coarse) / 15.0,
            error: (fine - coarse).abs() / 15.0,
        })
    }

    fn integrate(&mut self, a: f64, b: f64, tol: f64) -> Result<f64> {
        let fa = self.eval(a)?;
        let fb = self.eval(b)?;
        let fm = self.eval(0.5 * (a + b))?;
        let mut heap = BinaryHeap::new();
        let root = self.panel(a, b, fa, fm, fb)?;
        let mut total_value = root.value;
        let mut total_error = root.error;
        heap.push(root);
        while total_error > tol * total_value.abs().max(1.0) {
            let worst = heap.pop().expect("heap is never empty here");
            let m = 0.5 * (worst.a + worst.b);
            if !(worst.a < m && m < worst.b) {
                return Err(Error::convergence(
                    "reference integrator cannot split a panel any further".to_string(),
                ));
            }
            total_value -= worst.value;
            total_error -= worst.error;
            let flm = self.eval(0.5 * (worst.a + m))?;
            let frm = self.eval(0.5 * (m + worst.b))?;
            let left = self.panel(worst.a, m, worst.fa, flm, worst.fm)?;
            let right = self.panel(m, worst.b, worst.fm, frm, worst.fb)?;
            total_value += left.value + right.value;
            total_error += left.error + right.error;
            heap.push(left);
            heap.push(right);
        }
        Ok(total_value)
    }
}

/// Extrapolate inset integrals I(delta_j) to delta -> 0.
///
/// Column l of the table cancels the x^(2l-1) term of the expansion.
fn extrapolate_inset(values: &[f64], tol: f64) -> Result<f64> {
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(values.len());
    for (j, &v) in values.iter().enumerate() {
        let mut row = vec![v];
        for l in 1..=j {
            let factor = 2f64.powi(2 * l as i32 - 1) - 1.0;
            let prev = table[j - 1][l - 1];
            let cur = row[l - 1];
            row.push(cur + (cur - prev) / factor);
        }
        table.push(row);
        if j >= 2 {
            let best = table[j][j];
            let prev_best = table[j - 1][j - 1];
            if (best - prev_best).abs() <= tol * best.abs().max(1.0) {
                return Ok(best);
            }
        }
    }
    let last = table.last().unwrap();
    let prev = &table[table.len() - 2];
    let best = *last.last().unwrap();
    let defect = (best - prev[prev.len() - 1]).abs();
    Err(Error::convergence(format!(
        "inset extrapolation stalled at defect {defect:.3e} (target {tol:.1e})"
    )))
}

fn inset_integral<F>(f: &F, t1: f64, t2: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let width = t2 - t1;
    let mut values = Vec::with_capacity(LEVELS);
    let mut delta = INSET_FRACTION * width;
    let inner_tol = 0.05 * tol;
    for _ in 0..LEVELS {
        let mut simpson = GlobalSimpson { f, evals: 0 };
        values.push(simpson.integrate(t1 + delta, t2 - delta, inner_tol)?);
        delta *= INSET_RATIO;
    }
    extrapolate_inset(&values, tol)
}

/// Period by the reference route, to tolerance `tol`.
pub fn period_oracle(params: &Params, c: f64, tol: f64) -> Result<f64> {
    let roots = find_roots(params, c)?;
    let sqrt_c = c.sqrt();
    let f = |t: f64| {
        2.0 * sqrt_c * t * lambda_raw(params, t) / ((c - t * t) * q_raw(params, t, c).sqrt())
    };
    inset_integral(&f, roots.t1, roots.t2, tol)
}

/// Half arclength period by the reference route.
pub fn half_period_oracle(params: &Params, c: f64, tol: f64) -> Result<f64> {
    let roots = find_roots(params, c)?;
    let f = |t: f64| q_raw(params, t, c).sqrt().recip();
    inset_integral(&f, roots.t1, roots.t2, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn inset_extrapolation_recovers_pure_chebyshev_weight() {
        // integral of 1/sqrt((t)(1-t)) over [0,1] = pi.
        let f = |t: f64| 1.0 / (t * (1.0 - t)).sqrt();
        let v = inset_integral(&f, 0.0, 1.0, 1e-10).unwrap();
        assert_relative_eq!(v, PI, max_relative = 1e-9);
    }

    #[test]
    fn inset_extrapolation_handles_polynomial_factor() {
        // integral of t/sqrt(t(2-t)) over [0,2] = pi.
        let f = |t: f64| t / (t * (2.0 - t)).sqrt();
        let v = inset_integral(&f, 0.0, 2.0, 1e-10).unwrap();
        assert_relative_eq!(v, PI, max_relative = 1e-9);
    }

    #[test]
    fn global_simpson_handles_smooth_integrands() {
        let f = |t: f64| t.sin();
        let mut s = GlobalSimpson { f: &f, evals: 0 };
        let v = s.integrate(0.0, PI, 1e-12).unwrap();
        assert_relative_eq!(v, 2.0, max_relative = 1e-11);
    }
}
