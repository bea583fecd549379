//! Numerical checks of the exact algebraic identities behind the
//! closed-form period limits.
//!
//! These relations are theorems; a nonzero residual beyond roundoff
//! means the implementation is wrong, not the input. The checks run on
//! a given instance plus a seeded batch of random instances, so a
//! failure is reproducible from its seed.

use std::f64::consts::PI;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::critical::{critical_data, CriticalData};
use crate::error::{Error, Result};
use crate::limits::{
    a_limit_value, bracket_endpoints, limit_at_c0_from, limit_at_c0_unreduced_from,
};
use crate::params::Params;

/// Residual threshold above which a check is reported as violated.
pub const IDENTITY_TOL: f64 = 1e-9;

/// Result of one identity check: the worst relative residual seen.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub max_residual: f64,
    pub tolerance: f64,
}

/// All identity checks of one run.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.max_residual <= c.tolerance)
    }

    /// Error out on the worst failing check, if any.
    pub fn ensure_ok(&self) -> Result<()> {
        match self
            .checks
            .iter()
            .filter(|c| c.max_residual > c.tolerance)
            .max_by(|a, b| a.max_residual.total_cmp(&b.max_residual))
        {
            None => Ok(()),
            Some(worst) => Err(Error::Identity {
                name: worst.name.to_string(),
                residual: worst.max_residual,
                tol: worst.tolerance,
            }),
        }
    }
}

fn rel_residual(lhs: f64, rhs: f64) -> f64 {
    let scale = lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE);
    (lhs - rhs).abs() / scale
}

/// Residuals of the four per-instance identities.
struct InstanceResiduals {
    stationarity: f64,
    numerator: f64,
    denominator: f64,
    b_forms: f64,
}

fn instance_residuals(params: &Params, cd: &CriticalData) -> InstanceResiduals {
    let n = params.nf();
    let m = params.mf();
    let h = params.h_m();
    let f0 = cd.f0;
    let v0n = f0.powf(m) - h; // v0^-n

    // Stationarity: F0^m = (m F0^(m-2) + n H_m) / (n - m).
    let stationarity = rel_residual(f0.powf(m), (m * f0.powf(m - 2.0) + n * h) / (n - m));

    // Numerator of the degenerate limit:
    // 2 m pi sqrt(F^(2m-2) + F^(2m-4))
    //   = 2 m pi sqrt(n/(n-m)) F^((m-2)/2) sqrt(F^(m-2) + H).
    let lhs = 2.0 * m * PI * (f0.powf(2.0 * m - 2.0) + f0.powf(2.0 * m - 4.0)).sqrt();
    let rhs = 2.0
        * m
        * PI
        * (n / (n - m)).sqrt()
        * f0.powf((m - 2.0) / 2.0)
        * (f0.powf(m - 2.0) + h).sqrt();
    let numerator = rel_residual(lhs, rhs);

    // Denominator of the degenerate limit:
    // (2n^2 - 3mn + m^2) v0^-2n + m (n^2 - 3n + 2m) H v0^-n
    //   + m^2 H^2 + m^2 F^(2m-2)
    //   = (m^2 n / (n-m)) (F^(m-2) + H) (2 F^(m-2) + n H).
    let lhs = (2.0 * n * n - 3.0 * m * n + m * m) * v0n * v0n
        + m * (n * n - 3.0 * n + 2.0 * m) * h * v0n
        + m * m * h * h
        + m * m * f0.powf(2.0 * m - 2.0);
    let rhs =
        m * m * n / (n - m) * (f0.powf(m - 2.0) + h) * (2.0 * f0.powf(m - 2.0) + n * h);
    let denominator = rel_residual(lhs, rhs);

    // The raw and reduced forms of the degenerate limit agree.
    let b_forms = rel_residual(limit_at_c0_unreduced_from(cd), limit_at_c0_from(params, cd));

    InstanceResiduals {
        stationarity,
        numerator,
        denominator,
        b_forms,
    }
}

/// Draw a random valid instance, biased nowhere in particular.
fn random_params(rng: &mut ChaCha8Rng) -> Params {
    let n = rng.random_range(2..=12u32);
    let m = rng.random_range(1..=n.saturating_sub(1).min(6).max(1));
    let h = 10f64.powf(rng.random_range(-2.0..2.0));
    Params::new(n, m, h).expect("draw is valid by construction")
}

/// Evaluate all identity residuals on `params` and on `sample_count`
/// seeded random instances. Never gates; see [`verify_identities`].
pub fn identity_report(params: &Params, sample_count: u32, seed: u64) -> Result<IdentityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = InstanceResiduals {
        stationarity: 0.0,
        numerator: 0.0,
        denominator: 0.0,
        b_forms: 0.0,
    };
    let mut instances = Vec::with_capacity(sample_count as usize + 1);
    instances.push(*params);
    for _ in 0..sample_count {
        instances.push(random_params(&mut rng));
    }
    for p in &instances {
        let cd = critical_data(p)?;
        let r = instance_residuals(p, &cd);
        worst.stationarity = worst.stationarity.max(r.stationarity);
        worst.numerator = worst.numerator.max(r.numerator);
        worst.denominator = worst.denominator.max(r.denominator);
        worst.b_forms = worst.b_forms.max(r.b_forms);
    }

    // Endpoint identities on the given (n, m): both closed-form limits
    // hit 2 pi / k exactly at the interval endpoints, for every k.
    let mut endpoint = 0.0f64;
    for k in 2..=10u32 {
        let bracket = bracket_endpoints(params.n(), params.m(), k)?;
        let target = 2.0 * PI / f64::from(k);
        let a = a_limit_value(params.m(), bracket.h_low);
        endpoint = endpoint.max(rel_residual(a, target));
        let p_high = Params::new(params.n(), params.m(), bracket.h_high)?;
        let b = limit_at_c0_from(&p_high, &critical_data(&p_high)?);
        endpoint = endpoint.max(rel_residual(b, target));
    }

    Ok(IdentityReport {
        checks: vec![
            IdentityCheck {
                name: "stationarity_equation",
                max_residual: worst.stationarity,
                tolerance: IDENTITY_TOL,
            },
            IdentityCheck {
                name: "limit_numerator_identity",
                max_residual: worst.numerator,
                tolerance: IDENTITY_TOL,
            },
            IdentityCheck {
                name: "limit_denominator_identity",
                max_residual: worst.denominator,
                tolerance: IDENTITY_TOL,
            },
            IdentityCheck {
                name: "b_limit_forms_agree",
                max_residual: worst.b_forms,
                tolerance: IDENTITY_TOL,
            },
            IdentityCheck {
                name: "endpoint_closing_values",
                max_residual: endpoint,
                tolerance: IDENTITY_TOL,
            },
        ],
    })
}

/// Run the identity suite and fail with `Error::Identity` if any
/// residual exceeds the threshold.
pub fn verify_identities(params: &Params, sample_count: u32, seed: u64) -> Result<IdentityReport> {
    let report = identity_report(params, sample_count, seed)?;
    report.ensure_ok()?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_instance_is_clean() {
        let p = Params::new(3, 2, 1.0).unwrap();
        let report = verify_identities(&p, 0, 7).unwrap();
        for check in &report.checks {
            assert!(
                check.max_residual <= 1e-10,
                "{} residual {}",
                check.name,
                check.max_residual
            );
        }
    }

    #[test]
    fn m4_upper_endpoint_closes_for_k3() {
        // h_high(5, 4, 3) = 15.4; the degenerate limit there is 2 pi / 3.
        let p = Params::new(5, 4, 15.4).unwrap();
        let cd = critical_data(&p).unwrap();
        let b = limit_at_c0_from(&p, &cd);
        assert!(
            (b - 2.0 * PI / 3.0).abs() <= 1e-10,
            "B = {b} vs {}",
            2.0 * PI / 3.0
        );
    }

    #[test]
    fn randomized_batch_is_clean() {
        let p = Params::new(7, 3, 1.0).unwrap();
        let report = verify_identities(&p, 50, 20260810).unwrap();
        assert!(report.pass());
        for check in &report.checks {
            assert!(check.max_residual <= 1e-9);
        }
    }

    #[test]
    fn deterministic_for_a_fixed_seed() {
        let p = Params::new(4, 2, 0.8).unwrap();
        let a = identity_report(&p, 32, 99).unwrap();
        let b = identity_report(&p, 32, 99).unwrap();
        for (x, y) in a.checks.iter().zip(b.checks.iter()) {
            assert_eq!(x.max_residual, y.max_residual);
        }
    }

    #[test]
    fn gate_reports_the_failing_check() {
        let report = IdentityReport {
            checks: vec![
                IdentityCheck {
                    name: "stationarity_equation",
                    max_residual: 1e-12,
                    tolerance: IDENTITY_TOL,
                },
                IdentityCheck {
                    name: "limit_numerator_identity",
                    max_residual: 1e-3,
                    tolerance: IDENTITY_TOL,
                },
            ],
        };
        let err = report.ensure_ok().unwrap_err();
        match err {
            Error::Identity { name, residual, .. } => {
                assert_eq!(name, "limit_numerator_identity");
                assert_eq!(residual, 1e-3);
            }
            other => panic!("expected identity violation, got {other:?}"),
        }
    }
}
