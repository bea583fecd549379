//! The end-to-end verification suite.
//!
//! Bundles the algebraic identity checks with the numerical property
//! checks (limit convergence, agreement with the reference integrator,
//! period pinched between its limits, profile closure) into one
//! seeded, reproducible report. The command-line `verify` subcommand
//! is a thin wrapper around this module.

use std::f64::consts::PI;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::critical::critical_data;
use crate::error::Result;
use crate::identities::{identity_report, IDENTITY_TOL};
use crate::limits::{bracket_endpoints, limit_at_c0, limit_at_infinity};
use crate::oracle::period_oracle;
use crate::params::Params;
use crate::period::period;
use crate::profile::generate_profile;
use crate::solve::solve_period_equation;

/// One verification check: worst residual against its tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckResult {
    fn new(name: &str, max_residual: f64, tolerance: f64) -> Self {
        CheckResult {
            name: name.to_string(),
            max_residual,
            tolerance,
            pass: max_residual.is_finite() && max_residual <= tolerance,
        }
    }
}

/// A full verification run.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

/// Specialized closed forms of the upper interval endpoint for low
/// orders, written out independently of the general formula.
fn specialized_h_high(n: f64, m: u32, k: f64) -> Option<f64> {
    match m {
        1 => Some((k * k - 2.0) * (n - 1.0).sqrt() / (n * (k * k - 1.0).sqrt())),
        2 => Some((k * k - 2.0) / n),
        4 => Some((k.powi(4) - 4.0) / (n * (n - 4.0))),
        _ => None,
    }
}

fn rel_residual(lhs: f64, rhs: f64) -> f64 {
    let scale = lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE);
    (lhs - rhs).abs() / scale
}

/// Draw an instance whose curvature sits strictly inside the interval
/// for some winding number, so both period limits pinch 2 pi / k.
fn random_pinched_instance(rng: &mut ChaCha8Rng) -> (Params, u32) {
    loop {
        let n = rng.random_range(2..=10u32);
        let m = rng.random_range(1..=(n - 1).min(6));
        let k = rng.random_range(2..=6u32);
        let bracket = bracket_endpoints(n, m, k).expect("grid point is valid");
        if bracket.h_high <= bracket.h_low {
            continue; // interval empty for this (n, m, k)
        }
        // Geometric-ish midpoint; the lower endpoint may be exactly 0.
        let lo = bracket.h_low.max(1e-3 * bracket.h_high);
        let t = rng.random_range(0.2..0.8);
        let h = lo + t * (bracket.h_high - lo);
        if let Ok(p) = Params::new(n, m, h) {
            if h > bracket.h_low && h < bracket.h_high {
                return (p, k);
            }
        }
    }
}

/// Run every check with the given instance, batch size and seed.
pub fn run_verification(params: &Params, sample_count: u32, seed: u64) -> Result<VerificationReport> {
    let mut checks: Vec<CheckResult> = Vec::new();

    // Algebraic identity suite.
    let identities = identity_report(params, sample_count, seed)?;
    for c in &identities.checks {
        checks.push(CheckResult::new(c.name, c.max_residual, c.tolerance));
    }

    // Specialized endpoint formulas for m = 1, 2, 4 against the
    // general one, across the whole tabulated grid.
    let mut specialization = 0.0f64;
    for m in [1u32, 2, 4] {
        for n in (m + 1).max(2)..=12u32 {
            for k in 2..=10u32 {
                let general = bracket_endpoints(n, m, k)?.h_high;
                let special = specialized_h_high(f64::from(n), m, f64::from(k))
                    .expect("m is one of 1, 2, 4");
                specialization = specialization.max(rel_residual(general, special));
            }
        }
    }
    checks.push(CheckResult::new("endpoint_specializations", specialization, 1e-12));

    // Limit convergence toward B along c -> c0, with decreasing error.
    let cd = critical_data(params)?;
    let b = limit_at_c0(params)?;
    let mut errs = Vec::new();
    for j in 2..=6 {
        let c = cd.c0 * (1.0 + 10f64.powi(-j));
        errs.push((period(params, c, 1e-8)?.value - b).abs());
    }
    checks.push(CheckResult::new("limit_convergence_b", errs[4], 1e-3));
    let mut worst_increase = 0.0f64;
    for w in errs.windows(2) {
        worst_increase = worst_increase.max((w[1] / w[0] - 1.0).max(0.0));
    }
    checks.push(CheckResult::new("limit_error_monotone", worst_increase, 1e-6));

    // Limit convergence toward A for large c.
    let a = limit_at_infinity(params);
    let c_far = 1e8 * cd.c0.max(1.0);
    let p_far = period(params, c_far, 1e-8)?.value;
    checks.push(CheckResult::new("limit_convergence_a", (p_far - a).abs(), 1e-3));

    // Agreement with the independent reference integrator.
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6f72_6163_6c65); // distinct stream
    let mut oracle_gap = 0.0f64;
    for _ in 0..10 {
        let (p, _) = random_pinched_instance(&mut rng);
        let cdp = critical_data(&p)?;
        let c = cdp.c0 * rng.random_range(1.3..30.0);
        let fast = period(&p, c, 1e-12)?.value;
        let slow = period_oracle(&p, c, 1e-9)?;
        oracle_gap = oracle_gap.max(rel_residual(fast, slow));
    }
    checks.push(CheckResult::new("oracle_equivalence", oracle_gap, 1e-8));

    // The period stays strictly between its two limits.
    let mut sandwich = 0.0f64;
    for _ in 0..50 {
        let (p, _) = random_pinched_instance(&mut rng);
        let cdp = critical_data(&p)?;
        let av = limit_at_infinity(&p);
        let bv = limit_at_c0(&p)?;
        let c = cdp.c0 * (1.0 + 10f64.powf(rng.random_range(-4.0..4.0)));
        let pv = period(&p, c, 1e-8)?.value;
        sandwich = sandwich.max((av - pv).max(pv - bv).max(0.0));
    }
    checks.push(CheckResult::new("period_between_limits", sandwich, 1e-9));

    // Closure of a solved profile. Prefer the instance's own curvature
    // when it admits some winding number; otherwise fall back to the
    // always-nonempty k = 2 interval for the same (n, m).
    let admissible_k = (2..=10u32).find(|&k| {
        bracket_endpoints(params.n(), params.m(), k)
            .map(|b| params.h_m() > b.h_low && params.h_m() < b.h_high)
            .unwrap_or(false)
    });
    let (closure_params, closure_k) = match admissible_k {
        Some(k) => (*params, k),
        None => {
            let b = bracket_endpoints(params.n(), params.m(), 2)?;
            (Params::new(params.n(), params.m(), 0.5 * b.h_high)?, 2)
        }
    };
    let sol = solve_period_equation(&closure_params, closure_k, 1e-10)?;
    let profile = generate_profile(&closure_params, sol.c_star, closure_k, 128)?;
    let theta_total = profile.samples.last().map(|s| s.theta).unwrap_or(f64::NAN);
    checks.push(CheckResult::new(
        "profile_closure",
        (theta_total - 2.0 * PI).abs(),
        1e-6,
    ));

    let pass = checks.iter().all(|c| c.pass);
    Ok(VerificationReport { checks, pass })
}

/// Tolerance the identity checks gate on; re-exported for reporting.
pub fn identity_tolerance() -> f64 {
    IDENTITY_TOL
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_instance_passes_everything() {
        let p = Params::new(3, 2, 1.0).unwrap();
        let report = run_verification(&p, 25, 7).unwrap();
        for c in &report.checks {
            assert!(c.pass, "check {} failed with residual {}", c.name, c.max_residual);
        }
        assert!(report.pass);
    }

    #[test]
    fn m4_instance_passes_including_specializations() {
        let p = Params::new(5, 4, 15.0).unwrap();
        let report = run_verification(&p, 10, 7).unwrap();
        assert!(report.pass);
        let spec = report
            .checks
            .iter()
            .find(|c| c.name == "endpoint_specializations")
            .unwrap();
        assert!(spec.max_residual <= 1e-12);
    }

    #[test]
    fn seeded_runs_are_reproducible() {
        let p = Params::new(3, 2, 1.0).unwrap();
        let a = run_verification(&p, 5, 42).unwrap();
        let b = run_verification(&p, 5, 42).unwrap();
        for (x, y) in a.checks.iter().zip(b.checks.iter()) {
            assert_eq!(x.max_residual, y.max_residual, "check {}", x.name);
        }
    }
}
