//! Problem parameters: the triple (n, m, H_m).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A problem instance: hypersurface dimension `n`, curvature order `m`,
/// and the prescribed constant m-th mean curvature `h_m`.
///
/// Construction validates `n >= 2`, `1 <= m <= n - 1` and `h_m > 0`;
/// every other routine in the crate may assume these hold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    n: u32,
    m: u32,
    h_m: f64,
}

impl Params {
    pub fn new(n: u32, m: u32, h_m: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(format!("n must satisfy n >= 2, got n = {n}")));
        }
        if m < 1 || m > n - 1 {
            return Err(Error::domain(format!(
                "m must satisfy 1 <= m <= n-1, got m = {m} with n = {n}"
            )));
        }
        if !(h_m > 0.0) || !h_m.is_finite() {
            return Err(Error::domain(format!(
                "h_m must be a positive finite real, got h_m = {h_m}"
            )));
        }
        Ok(Params { n, m, h_m })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn h_m(&self) -> f64 {
        self.h_m
    }

    /// `n` as a float, for use in formulas.
    pub(crate) fn nf(&self) -> f64 {
        f64::from(self.n)
    }

    /// `m` as a float, for use in formulas.
    pub(crate) fn mf(&self) -> f64 {
        f64::from(self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_valid_triples() {
        assert!(Params::new(3, 2, 1.0).is_ok());
        assert!(Params::new(2, 1, 0.1).is_ok());
        assert!(Params::new(12, 6, 99.0).is_ok());
    }

    #[test]
    fn rejects_m_out_of_range() {
        let err = Params::new(3, 3, 1.0).unwrap_err();
        assert!(matches!(err, Error::Domain(ref msg) if msg.contains('m')));
        assert!(Params::new(2, 0, 1.0).is_err());
    }

    #[test]
    fn rejects_nonpositive_h() {
        let err = Params::new(2, 1, -0.5).unwrap_err();
        assert!(matches!(err, Error::Domain(ref msg) if msg.contains("h_m")));
        assert!(Params::new(2, 1, 0.0).is_err());
        assert!(Params::new(2, 1, f64::NAN).is_err());
    }

    #[test]
    fn rejects_small_n() {
        assert!(Params::new(1, 1, 1.0).is_err());
    }
}
