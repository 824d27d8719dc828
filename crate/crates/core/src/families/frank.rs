//! Frank copulas.
//!
//! `C(u, v) = -(1/θ) ln(1 + (e^{-θu} - 1)(e^{-θv} - 1) / (e^{-θ} - 1))`.
//!
//! The textbook expression overflows for large negative `θ` and loses
//! precision near `(1, 1)` for large positive `θ`. Evaluation here works
//! with `θ > 0` only, using
//!
//! ```text
//! D(u, v) = e^{-θu}(1 - e^{-θv}) + e^{-θv}(1 - e^{-θ(1-v)})      (both terms ≥ 0)
//! C       = -(ln D - ln(1 - e^{-θ})) / θ
//! ∂C/∂u   = e^{-θu}(1 - e^{-θv}) / D
//! c       = θ(1 - e^{-θ}) e^{-θ(u+v)} / D²
//! ```
//!
//! and maps `θ < 0` onto `|θ|` through the reflection
//! `C_{-θ}(u, v) = u - C_θ(u, 1 - v)`.

use crate::error::{Error, Result};

/// Parameters with `|θ|` at or below this are rejected; use the independence
/// copula instead.
pub const THETA_EPSILON: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frank {
    theta: f64,
}

impl Frank {
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() || theta.abs() <= THETA_EPSILON {
            return Err(Error::InvalidParameter {
                name: "theta",
                value: theta,
                reason: "Frank requires |theta| > 1e-8; use the independence generator for theta = 0",
            });
        }
        Ok(Self { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn cdf(&self, u: f64, v: f64) -> f64 {
        if u <= 0.0 || v <= 0.0 {
            return 0.0;
        }
        if self.theta > 0.0 {
            cdf_positive(self.theta, u, v)
        } else {
            u - cdf_positive(-self.theta, u, 1.0 - v)
        }
    }

    pub fn partial_u(&self, u: f64, v: f64) -> f64 {
        if self.theta > 0.0 {
            partial_u_positive(self.theta, u, v)
        } else {
            1.0 - partial_u_positive(-self.theta, u, 1.0 - v)
        }
    }

    /// Copula density `∂²C/∂u∂v = 1 + h`.
    pub fn density(&self, u: f64, v: f64) -> f64 {
        if self.theta > 0.0 {
            density_positive(self.theta, u, v)
        } else {
            density_positive(-self.theta, u, 1.0 - v)
        }
    }

    pub fn h(&self, u: f64, v: f64) -> f64 {
        self.density(u, v) - 1.0
    }
}

/// `D = e^{-θk} · scaled` with `k = min(u, v)`; returns `(k, scaled, e^{-θu}(1 - e^{-θv}) / e^{-θk})`.
fn denominator(theta: f64, u: f64, v: f64) -> (f64, f64, f64) {
    let a = -(-theta * v).exp_m1();
    let b = -(-theta * (1.0 - v)).exp_m1();
    let r = (-theta * (u - v).abs()).exp();
    if u <= v {
        (u, a + r * b, a)
    } else {
        (v, r * a + b, r * a)
    }
}

fn cdf_positive(theta: f64, u: f64, v: f64) -> f64 {
    let total = -(-theta).exp_m1();
    // x = (e^{-θu}-1)(e^{-θv}-1)/(e^{-θ}-1) lies in [-1, 0].
    let x = -(-theta * u).exp_m1() * (-theta * v).exp_m1() / total;
    if x > -0.5 {
        -x.ln_1p() / theta
    } else {
        let (k, scaled, _) = denominator(theta, u, v);
        k - (scaled.ln() - total.ln()) / theta
    }
}

fn partial_u_positive(theta: f64, u: f64, v: f64) -> f64 {
    let (_, scaled, numerator) = denominator(theta, u, v);
    numerator / scaled
}

fn density_positive(theta: f64, u: f64, v: f64) -> f64 {
    let (_, scaled, _) = denominator(theta, u, v);
    let r = (-theta * (u - v).abs()).exp();
    theta * -(-theta).exp_m1() * r / (scaled * scaled)
}
