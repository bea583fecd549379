//! Rotational hypersurfaces of constant m-th mean curvature in the
//! unit sphere, via their period function.
//!
//! A rotational profile in the (n+1)-sphere oscillates between two
//! turning points and advances by a fixed angle P per oscillation; the
//! surface closes up into a compact embedded hypersurface exactly when
//! P = 2 pi / k for an integer k >= 2. This crate evaluates that
//! period, solves the closing equation P(H_m, n, C) = 2 pi / k, and
//! emits the resulting closed profile curves and embedded point
//! clouds.
//!
//! ```
//! use hm_period::{generate_profile, solve_period_equation, Params};
//!
//! let params = Params::new(3, 2, 1.0)?;
//! let sol = solve_period_equation(&params, 3, 1e-10)?;
//! let profile = generate_profile(&params, sol.c_star, 3, 64)?;
//! assert!(profile.closure_defect <= 1e-6);
//! # Ok::<(), hm_period::Error>(())
//! ```

pub mod critical;
pub mod error;
pub mod guide;
pub mod identities;
pub mod limits;
pub mod oracle;
pub mod params;
pub mod period;
pub mod potential;
pub mod profile;
pub mod quadrature;
pub mod roots;
pub mod solve;
pub mod verify;

pub use critical::{critical_data, CriticalData};
pub use error::{BracketSide, Error, Result};
pub use identities::{verify_identities, IdentityCheck, IdentityReport};
pub use limits::{
    a_limit_value, bracket_endpoints, h2_from_scalar_curvature, limit_at_c0,
    limit_at_c0_unreduced, limit_at_infinity, limits, scalar_curvature_from_h2, Bracket, Limits,
};
pub use params::Params;
pub use period::{half_period, period, PeriodResult};
pub use potential::{q_double_prime, q_eval, q_prime};
pub use profile::{embed_points, embed_slice, generate_profile, Profile, ProfileSample};
pub use quadrature::{singular_integral, Quadrature};
pub use roots::{find_roots, RootPair};
pub use solve::{solve_period_equation, SolveResult};
pub use verify::{run_verification, CheckResult, VerificationReport};
