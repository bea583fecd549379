//! Closed profile curves and their embedding into the sphere.
//!
//! A half oscillation of the profile is parameterized by phi in
//! [0, pi] through t(phi) = mid - halfwidth * cos(phi), which places
//! t1 at phi = 0 and t2 at phi = pi and turns both cumulative
//! integrals regular:
//!
//! ```text
//! ds     = d phi / sqrt(h(t(phi))),
//! d theta = sqrt(C) t lambda(t) / (C - t^2) * ds,
//! ```
//!
//! with h the regular factor of q. The half profile is reflected about
//! s = T/2 (the profile is even there) and the full period is
//! replicated k times with theta offset by one period angle P each
//! time, so the emitted curve closes exactly when k P = 2 pi.

use serde::Serialize;

use crate::critical::critical_data;
use crate::error::{Error, Result};
use crate::params::Params;
use crate::period::period_from_roots;
use crate::potential::{lambda_raw, q_raw};
use crate::roots::find_roots;

/// Defect threshold above which a profile is flagged as not closing.
const CLOSURE_TOL: f64 = 1e-6;

/// Nodes and weights of 5-point Gauss-Legendre on [-1, 1].
const GL_NODES: [f64; 5] = [
    -0.906179845938664,
    -0.5384693101056831,
    0.0,
    0.5384693101056831,
    0.906179845938664,
];
const GL_WEIGHTS: [f64; 5] = [
    0.23692688505618908,
    0.47862867049936647,
    0.5688888888888889,
    0.47862867049936647,
    0.23692688505618908,
];

/// One sample of the profile curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileSample {
    /// Arclength parameter.
    pub s: f64,
    /// Profile value g(s), in [t1, t2].
    pub g: f64,
    /// Orbit radius r = g / sqrt(C), always in (0, 1).
    pub r: f64,
    /// Radius-profile factor lambda = (g^-n + H_m)^(1/m).
    pub lambda: f64,
    /// Accumulated angle theta(s).
    pub theta: f64,
}

/// A sampled closed profile over k periods.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Profile {
    pub params: Params,
    /// Energy constant the profile was generated at.
    pub c: f64,
    /// Winding number the curve is replicated for.
    pub k: u32,
    /// Half arclength period T/2.
    pub t_half: f64,
    /// Angle advance P over one full oscillation.
    pub period_p: f64,
    /// |k P - 2 pi|.
    pub closure_defect: f64,
    /// True when the defect exceeds the closure threshold; the emitted
    /// curve then does not join up to 2 pi.
    pub closure_warning: bool,
    pub samples: Vec<ProfileSample>,
}

/// Generate the closed profile at energy constant `c`, sampled at
/// `samples_per_half` panels per half oscillation.
///
/// Typically `c` comes from the period-equation solver, in which case
/// the curve closes to within the solver tolerance.
pub fn generate_profile(
    params: &Params,
    c: f64,
    k: u32,
    samples_per_half: u32,
) -> Result<Profile> {
    if k < 2 {
        return Err(Error::domain(format!("k must satisfy k >= 2, got k = {k}")));
    }
    if samples_per_half < 16 {
        return Err(Error::domain(format!(
            "samples_per_half must be at least 16, got {samples_per_half}"
        )));
    }
    let roots = find_roots(params, c)?;
    // Guard against a pathologically collapsed window where the phi
    // parameterization would lose all precision.
    if roots.width() <= 0.0 {
        let v0 = critical_data(params)?.v0;
        return Err(Error::domain(format!(
            "the oscillation window has collapsed to the point {v0}; \
             c is too close to c0"
        )));
    }

    let mid = 0.5 * (roots.t1 + roots.t2);
    let half_width = 0.5 * roots.width();
    let t_of_phi = |phi: f64| mid - half_width * phi.cos();
    let regular = |t: f64| q_raw(params, t, c) / ((t - roots.t1) * (roots.t2 - t));
    let sqrt_c = c.sqrt();
    // Integrands of the two cumulative integrals, as functions of phi.
    let ds_dphi = |phi: f64| regular(t_of_phi(phi)).sqrt().recip();
    let dtheta_dphi = |phi: f64| {
        let t = t_of_phi(phi);
        sqrt_c * t * lambda_raw(params, t) / (c - t * t) * ds_dphi(phi)
    };

    let panels = samples_per_half as usize;
    let dphi = std::f64::consts::PI / panels as f64;
    let mut half: Vec<ProfileSample> = Vec::with_capacity(panels + 1);
    let g0 = t_of_phi(0.0);
    half.push(ProfileSample {
        s: 0.0,
        g: g0,
        r: g0 / sqrt_c,
        lambda: lambda_raw(params, g0),
        theta: 0.0,
    });
    let mut s = 0.0;
    let mut theta = 0.0;
    for i in 0..panels {
        let a = i as f64 * dphi;
        // 5-point Gauss-Legendre on the panel; the integrands are
        // analytic in phi, so panel errors are negligible next to the
        // closure tolerances.
        let center = a + 0.5 * dphi;
        let scale = 0.5 * dphi;
        let mut ds = 0.0;
        let mut dth = 0.0;
        for (node, weight) in GL_NODES.iter().zip(GL_WEIGHTS.iter()) {
            let phi = center + scale * node;
            ds += weight * ds_dphi(phi);
            dth += weight * dtheta_dphi(phi);
        }
        s += scale * ds;
        theta += scale * dth;
        let phi_end = a + dphi;
        let g = t_of_phi(phi_end);
        half.push(ProfileSample {
            s,
            g,
            r: g / sqrt_c,
            lambda: lambda_raw(params, g),
            theta,
        });
    }

    let t_half = s;
    // Canonical period value by the production quadrature; the
    // cumulative route above reproduces it to its own tolerance.
    let period_p = period_from_roots(params, &roots, 1e-12)?.value;

    // Reflect the half profile about s = T/2 into one full period,
    // then replicate k times with theta advanced by P per period.
    let full_t = 2.0 * t_half;
    let mut one_period: Vec<ProfileSample> = half.clone();
    for i in (0..panels).rev() {
        let src = half[i];
        one_period.push(ProfileSample {
            s: full_t - src.s,
            g: src.g,
            r: src.r,
            lambda: src.lambda,
            theta: period_p - src.theta,
        });
    }

    let mut samples: Vec<ProfileSample> = Vec::with_capacity(k as usize * 2 * panels + 1);
    samples.push(one_period[0]);
    for j in 0..k {
        let s_off = f64::from(j) * full_t;
        let th_off = f64::from(j) * period_p;
        // Skip each period's first sample: it coincides with the
        // previous period's last one.
        for sample in &one_period[1..] {
            samples.push(ProfileSample {
                s: sample.s + s_off,
                g: sample.g,
                r: sample.r,
                lambda: sample.lambda,
                theta: sample.theta + th_off,
            });
        }
    }

    let closure_defect = (f64::from(k) * period_p - 2.0 * std::f64::consts::PI).abs();
    Ok(Profile {
        params: *params,
        c,
        k,
        t_half,
        period_p,
        closure_defect,
        closure_warning: closure_defect > CLOSURE_TOL,
        samples,
    })
}

/// Embed the profile into R^(n+2) as points on the unit (n+1)-sphere.
///
/// Each profile sample becomes a ring of `circle_samples` points: the
/// rotational orbit is traced along a coordinate great circle of the
/// (n-1)-sphere of radius r, and the remaining two coordinates carry
/// the angle theta at radius sqrt(1 - r^2). For n = 2 this is
/// (r cos u, r sin u, w cos theta, w sin theta) with w = sqrt(1 - r^2).
pub fn embed_points(profile: &Profile, circle_samples: u32) -> Result<Vec<Vec<f64>>> {
    if circle_samples < 3 {
        return Err(Error::domain(format!(
            "circle_samples must be at least 3, got {circle_samples}"
        )));
    }
    let n = profile.params.n() as usize;
    let mut points = Vec::with_capacity(profile.samples.len() * circle_samples as usize);
    for sample in &profile.samples {
        let w = (1.0 - sample.r * sample.r).sqrt();
        let (sin_th, cos_th) = sample.theta.sin_cos();
        for l in 0..circle_samples {
            let u = 2.0 * std::f64::consts::PI * f64::from(l) / f64::from(circle_samples);
            let mut x = vec![0.0; n + 2];
            x[0] = sample.r * u.cos();
            x[1] = sample.r * u.sin();
            x[n] = w * cos_th;
            x[n + 1] = w * sin_th;
            points.push(x);
        }
    }
    Ok(points)
}

/// The u = 0 slice of the embedding, one point per profile sample.
/// This is what tabular exports append as coordinate columns.
pub fn embed_slice(profile: &Profile) -> Vec<Vec<f64>> {
    let n = profile.params.n() as usize;
    profile
        .samples
        .iter()
        .map(|sample| {
            let w = (1.0 - sample.r * sample.r).sqrt();
            let (sin_th, cos_th) = sample.theta.sin_cos();
            let mut x = vec![0.0; n + 2];
            x[0] = sample.r;
            x[n] = w * cos_th;
            x[n + 1] = w * sin_th;
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::half_period;
    use crate::solve::solve_period_equation;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn reference() -> Params {
        Params::new(3, 2, 1.0).unwrap()
    }

    #[test]
    fn half_profile_endpoints_sit_on_the_turning_points() {
        let p = reference();
        let roots = find_roots(&p, 3.0).unwrap();
        let profile = generate_profile(&p, 3.0, 2, 64).unwrap();
        let first = profile.samples.first().unwrap();
        assert_eq!(first.s, 0.0);
        assert_eq!(first.theta, 0.0);
        assert_relative_eq!(first.g, roots.t1, max_relative = 1e-12);
        // Sample at s = T/2 is the one at index samples_per_half.
        let at_half = &profile.samples[64];
        assert_relative_eq!(at_half.g, roots.t2, max_relative = 1e-12);
        assert_relative_eq!(at_half.s, profile.t_half, max_relative = 1e-12);
        assert_relative_eq!(
            at_half.theta,
            profile.period_p / 2.0,
            max_relative = 1e-8
        );
    }

    #[test]
    fn arclength_accumulation_matches_half_period() {
        let p = reference();
        let t_half = half_period(&p, 3.0, 1e-12).unwrap();
        let profile = generate_profile(&p, 3.0, 2, 256).unwrap();
        assert!((profile.t_half - t_half).abs() <= 1e-8);
    }

    #[test]
    fn solved_profile_closes() {
        let p = reference();
        let sol = solve_period_equation(&p, 3, 1e-10).unwrap();
        let profile = generate_profile(&p, sol.c_star, 3, 128).unwrap();
        assert!(!profile.closure_warning);
        assert!(profile.closure_defect <= 1e-6);
        let theta_total = profile.samples.last().unwrap().theta;
        assert!((theta_total - 2.0 * PI).abs() <= 1e-6);
        // g is even about both s = 0 and s = T/2: theta increases
        // monotonically while g retraces itself.
        let m = 2 * 128;
        for i in 0..=128 {
            assert_relative_eq!(
                profile.samples[i].g,
                profile.samples[m - i].g,
                max_relative = 1e-12
            );
        }
        for pair in profile.samples.windows(2) {
            assert!(pair[1].theta > pair[0].theta);
        }
    }

    #[test]
    fn unsolved_profile_warns_about_closure() {
        let p = reference();
        let profile = generate_profile(&p, 3.0, 3, 64).unwrap();
        assert!(profile.closure_warning);
        assert!(profile.closure_defect > 1e-3);
    }

    #[test]
    fn radii_stay_inside_the_unit_interval() {
        let p = reference();
        let profile = generate_profile(&p, 3.0, 2, 64).unwrap();
        for sample in &profile.samples {
            assert!(sample.r > 0.0 && sample.r < 1.0);
        }
    }

    #[test]
    fn embedded_points_lie_on_the_unit_sphere() {
        let p = reference();
        let sol = solve_period_equation(&p, 3, 1e-10).unwrap();
        let profile = generate_profile(&p, sol.c_star, 3, 64).unwrap();
        let points = embed_points(&profile, 16).unwrap();
        assert_eq!(points.len(), profile.samples.len() * 16);
        for x in &points {
            assert_eq!(x.len(), 5);
            let norm2: f64 = x.iter().map(|xi| xi * xi).sum();
            assert!((norm2 - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn closed_profile_rings_meet() {
        let p = reference();
        let sol = solve_period_equation(&p, 3, 1e-10).unwrap();
        let profile = generate_profile(&p, sol.c_star, 3, 64).unwrap();
        let ring = 16usize;
        let points = embed_points(&profile, ring as u32).unwrap();
        let first = &points[..ring];
        let last = &points[points.len() - ring..];
        for (a, b) in first.iter().zip(last.iter()) {
            let dist2: f64 = a.iter().zip(b.iter()).map(|(x, y)| (x - y) * (x - y)).sum();
            assert!(dist2.sqrt() <= 1e-6);
        }
    }

    #[test]
    fn constant_radius_input_yields_product_of_circles() {
        // Hand-craft a degenerate profile with constant r: all embedded
        // points then lie on a torus-like product of two circles.
        let p = reference();
        let r = 0.6_f64;
        let w = (1.0 - r * r).sqrt();
        let samples: Vec<ProfileSample> = (0..=32)
            .map(|i| {
                let theta = 2.0 * PI * f64::from(i) / 32.0;
                ProfileSample {
                    s: f64::from(i),
                    g: r * 3.0_f64.sqrt(),
                    r,
                    lambda: 1.0,
                    theta,
                }
            })
            .collect();
        let profile = Profile {
            params: p,
            c: 3.0,
            k: 2,
            t_half: 16.0,
            period_p: PI,
            closure_defect: 0.0,
            closure_warning: false,
            samples,
        };
        let points = embed_points(&profile, 8).unwrap();
        for x in &points {
            let r_part = (x[0] * x[0] + x[1] * x[1]).sqrt();
            let w_part = (x[3] * x[3] + x[4] * x[4]).sqrt();
            assert_relative_eq!(r_part, r, max_relative = 1e-14);
            assert_relative_eq!(w_part, w, max_relative = 1e-14);
        }
    }

    #[test]
    fn rejects_undersampled_requests() {
        let p = reference();
        assert!(generate_profile(&p, 3.0, 3, 8).is_err());
        assert!(generate_profile(&p, 3.0, 1, 64).is_err());
        let profile = generate_profile(&p, 3.0, 2, 64).unwrap();
        assert!(embed_points(&profile, 2).is_err());
    }
}
