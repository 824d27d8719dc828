//! Farlie-Gumbel-Morgenstern copulas, `C(u, v) = uv(1 + θ(1-u)(1-v))`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fgm {
    theta: f64,
}

impl Fgm {
    /// `theta` must lie in `[-1, 1]`; outside it the density goes negative.
    pub fn new(theta: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&theta) {
            return Err(Error::InvalidParameter {
                name: "theta",
                value: theta,
                reason: "FGM requires -1 <= theta <= 1",
            });
        }
        Ok(Self { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn h(&self, u: f64, v: f64) -> f64 {
        self.theta * (1.0 - 2.0 * u) * (1.0 - 2.0 * v)
    }

    pub fn cdf(&self, u: f64, v: f64) -> f64 {
        u * v * (1.0 + self.theta * (1.0 - u) * (1.0 - v))
    }

    pub fn partial_u(&self, u: f64, v: f64) -> f64 {
        v * (1.0 + self.theta * (1.0 - v) * (1.0 - 2.0 * u))
    }

    /// Spearman's rho, `θ/3`.
    pub fn rho(&self) -> f64 {
        self.theta / 3.0
    }

    /// Kendall's tau, `2θ/9`.
    pub fn tau(&self) -> f64 {
        2.0 * self.theta / 9.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_values() {
        let f = Fgm::new(1.0).unwrap();
        assert_eq!(f.h(0.0, 0.0), 1.0);
        for v in [0.0, 0.3, 1.0] {
            assert_eq!(f.h(0.5, v), 0.0);
        }
        assert_eq!(Fgm::new(-1.0).unwrap().h(0.0, 0.0), -1.0);
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(Fgm::new(1.0).unwrap().cdf(0.5, 0.5), 0.3125);
        let zero = Fgm::new(0.0).unwrap();
        assert_eq!(zero.cdf(0.3, 0.7), 0.3 * 0.7);
        let f = Fgm::new(0.7).unwrap();
        for v in [0.0, 0.25, 0.9] {
            assert_eq!(f.cdf(1.0, v), v);
        }
    }

    #[test]
    fn symmetric_exactly() {
        let f = Fgm::new(-0.4).unwrap();
        for &(u, v) in &[(0.1, 0.8), (0.33, 0.61), (0.9, 0.05)] {
            assert_eq!(f.cdf(u, v), f.cdf(v, u));
        }
    }

    #[test]
    fn out_of_range_theta_rejected() {
        assert!(Fgm::new(1.5).is_err());
        assert!(Fgm::new(f64::NAN).is_err());
    }
}
