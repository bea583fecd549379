//! Turning points of the potential: the two positive roots of q.
//!
//! For C > c0 the potential is positive in an open window around the
//! critical point v0 and negative outside it, so it has exactly one
//! root on each side of v0. The window (t1, t2) is the oscillation
//! range of the profile and the integration window of every period
//! integral.

use crate::critical::critical_data;
use crate::error::{Error, Result};
use crate::params::Params;
use crate::potential::{q_prime_raw, q_raw};

/// Relative width at which root bisection stops.
const ROOT_REL_TOL: f64 = 1e-13;
const NEWTON_POLISH_STEPS: usize = 3;

/// The integration window of q for a given C.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct RootPair {
    /// Smaller root, 0 < t1 <= v0.
    pub t1: f64,
    /// Larger root, t2 >= v0.
    pub t2: f64,
    /// The energy constant these are roots for.
    pub c: f64,
}

impl RootPair {
    pub fn width(&self) -> f64 {
        self.t2 - self.t1
    }
}

/// Bisection on a sign change of q, in log space so the relative
/// tolerance is uniform across many orders of magnitude of t.
///
/// `lo` and `hi` must straddle the root with q(lo_side) of known sign;
/// `positive_at_hi` says which side is positive.
fn bisect_root(params: &Params, c: f64, mut lo: f64, mut hi: f64, positive_at_hi: bool) -> f64 {
    // log-space midpoint keeps relative progress uniform; the bracket
    // endpoints are always positive here.
    let mut iterations = 0;
    while hi - lo > ROOT_REL_TOL * hi {
        let mid = (0.5 * (lo.ln() + hi.ln())).exp();
        if mid <= lo || mid >= hi {
            break; // interval no longer splittable in f64
        }
        let positive = q_raw(params, mid, c) > 0.0;
        if positive == positive_at_hi {
            hi = mid;
        } else {
            lo = mid;
        }
        iterations += 1;
        if iterations > 500 {
            break;
        }
    }
    let mut t = 0.5 * (lo + hi);
    // Newton polish. The bracket is already at f64 width, so the guard
    // is on the residual itself: accept only steps that shrink |q|.
    // This drives the root defect to roundoff, which the endpoint
    // factorization of the period integrand depends on.
    let mut best = q_raw(params, t, c).abs();
    for _ in 0..NEWTON_POLISH_STEPS {
        let slope = q_prime_raw(params, t);
        if slope == 0.0 || !slope.is_finite() {
            break;
        }
        let next = t - q_raw(params, t, c) / slope;
        if !next.is_finite() || next <= 0.0 {
            break;
        }
        let residual = q_raw(params, next, c).abs();
        if residual < best {
            t = next;
            best = residual;
        } else {
            break;
        }
    }
    t
}

/// Locate the two positive roots (t1, t2) of q for the given C.
///
/// Requires C > c0; at C = c0 the window degenerates to the single
/// point v0 and no oscillation exists.
pub fn find_roots(params: &Params, c: f64) -> Result<RootPair> {
    let cd = critical_data(params)?;
    if !(c > cd.c0) {
        return Err(Error::domain(format!(
            "c must exceed c0 = {}, got c = {c}; no oscillation window exists",
            cd.c0
        )));
    }

    // Left root: shrink geometrically from v0 until q goes negative.
    let mut lo = cd.v0;
    let mut guard = 0;
    loop {
        lo *= 0.5;
        if q_raw(params, lo, c) < 0.0 {
            break;
        }
        guard += 1;
        if guard > 2000 {
            return Err(Error::convergence(
                "no sign change found below v0 while bracketing t1".to_string(),
            ));
        }
    }
    let t1 = bisect_root(params, c, lo, (2.0 * lo).min(cd.v0), true);

    // Right root: grow geometrically from v0 until q goes negative.
    let mut hi = cd.v0;
    guard = 0;
    loop {
        hi *= 2.0;
        if q_raw(params, hi, c) < 0.0 {
            break;
        }
        guard += 1;
        if guard > 2000 {
            return Err(Error::convergence(
                "no sign change found above v0 while bracketing t2".to_string(),
            ));
        }
    }
    let t2 = bisect_root(params, c, (0.5 * hi).max(cd.v0), hi, false);

    Ok(RootPair { t1, t2, c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn reference_cubic_roots() {
        // n=3, m=2, H=1, C=3: q(v) = 3 - 1/v - 2v^2, and
        // v q(v) = -(v - 1)(2v^2 + 2v - 1), so the positive roots are
        // (sqrt(3)-1)/2 and 1.
        let p = Params::new(3, 2, 1.0).unwrap();
        let r = find_roots(&p, 3.0).unwrap();
        let t1_exact = (3.0_f64.sqrt() - 1.0) / 2.0;
        assert_relative_eq!(r.t1, t1_exact, max_relative = 1e-12);
        assert_relative_eq!(r.t2, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn degenerate_window_collapses_to_v0() {
        let p = Params::new(3, 2, 1.0).unwrap();
        let cd = critical_data(&p).unwrap();
        let r = find_roots(&p, cd.c0 * (1.0 + 1e-10)).unwrap();
        assert!((r.t1 - cd.v0).abs() <= 1e-4);
        assert!((r.t2 - cd.v0).abs() <= 1e-4);
        assert!(r.t1 <= cd.v0 && cd.v0 <= r.t2);
    }

    #[test]
    fn c_at_or_below_threshold_is_rejected() {
        let p = Params::new(3, 2, 1.0).unwrap();
        let cd = critical_data(&p).unwrap();
        assert!(matches!(find_roots(&p, cd.c0), Err(Error::Domain(_))));
        assert!(find_roots(&p, 0.5 * cd.c0).is_err());
    }

    #[test]
    fn residuals_and_ordering_across_instances() {
        let cases: [(u32, u32, f64, f64); 5] = [
            (3, 2, 1.0, 3.0),
            (2, 1, 0.5, 9.0),
            (5, 4, 15.4, 2.0),
            (7, 3, 0.3, 40.0),
            (12, 6, 5.0, 1.5),
        ];
        for &(n, m, hm, c_over) in &cases {
            let p = Params::new(n, m, hm).unwrap();
            let cd = critical_data(&p).unwrap();
            let c = cd.c0 * c_over.max(1.000001);
            let r = find_roots(&p, c).unwrap();
            assert!(0.0 < r.t1 && r.t1 <= cd.v0 && cd.v0 <= r.t2);
            let tol = 1e-10 * c.abs().max(1.0);
            assert!(
                q_raw(&p, r.t1, c).abs() <= tol,
                "q(t1) residual too large at n={n} m={m}"
            );
            assert!(
                q_raw(&p, r.t2, c).abs() <= tol,
                "q(t2) residual too large at n={n} m={m}"
            );
            // q positive strictly inside the window.
            for i in 1..20 {
                let t = r.t1 + r.width() * f64::from(i) / 20.0;
                assert!(q_raw(&p, t, c) > 0.0);
            }
        }
    }

    #[test]
    fn huge_c_keeps_roots_finite_and_positive() {
        let p = Params::new(3, 2, 1.0).unwrap();
        let r = find_roots(&p, 1e8).unwrap();
        assert!(r.t1 > 0.0 && r.t1 < 1e-7);
        assert!(r.t2 > 1e3 && r.t2.is_finite());
        assert!(q_raw(&p, r.t1, 1e8).abs() <= 1e-10 * 1e8);
    }
}
