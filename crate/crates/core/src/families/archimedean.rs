//! Generator functions derived from Archimedean copulas.
//!
//! For `C(u, v) = φ^{[-1]}(φ(u) + φ(v))` the density is
//! `(φ^{[-1]})''(φ(u) + φ(v)) φ'(u) φ'(v)`, so the generator is that product
//! minus one.

use crate::error::{Error, Location, Result};
use crate::families::frank::Frank;

/// An additive generator `φ`: continuous, convex, strictly decreasing on
/// `[0, 1]` with `φ(1) = 0`.
pub trait ArchimedeanGenerator {
    fn phi(&self, t: f64) -> f64;

    fn phi_prime(&self, t: f64) -> f64;

    /// Second derivative of the pseudo-inverse `φ^{[-1]}` on `[0, φ(0)]`.
    fn pseudo_inverse_second(&self, x: f64) -> f64;

    /// `φ(0)`; infinite for strict generators.
    fn phi_at_zero(&self) -> f64 {
        self.phi(0.0)
    }
}

/// Generator `h` of the Archimedean copula with additive generator `gen`.
pub fn archimedean_h<G: ArchimedeanGenerator + ?Sized>(gen: &G, u: f64, v: f64) -> Result<f64> {
    let s = gen.phi(u) + gen.phi(v);
    if !s.is_finite() || s < 0.0 || s > gen.phi_at_zero() {
        return Err(Error::NonFinite {
            location: Location::Point2(u, v),
            value: s,
        });
    }
    let value = gen.pseudo_inverse_second(s) * gen.phi_prime(u) * gen.phi_prime(v) - 1.0;
    if !value.is_finite() {
        return Err(Error::NonFinite {
            location: Location::Point2(u, v),
            value,
        });
    }
    Ok(value)
}

/// Frank additive generator `φ_θ(x) = -ln((e^{-θx} - 1)/(e^{-θ} - 1))`.
#[derive(Debug, Clone, Copy)]
pub struct FrankGenerator {
    theta: f64,
}

impl FrankGenerator {
    pub fn new(theta: f64) -> Result<Self> {
        Frank::new(theta).map(|f| Self { theta: f.theta() })
    }
}

impl ArchimedeanGenerator for FrankGenerator {
    fn phi(&self, t: f64) -> f64 {
        let th = self.theta;
        -((-th * t).exp_m1() / (-th).exp_m1()).ln()
    }

    fn phi_prime(&self, t: f64) -> f64 {
        let th = self.theta;
        th * (-th * t).exp() / (-th * t).exp_m1()
    }

    fn pseudo_inverse_second(&self, x: f64) -> f64 {
        // (1/θ) e^{θ+x}(e^θ - 1) / (1 - e^θ + e^{θ+x})², divided through by e^{2(θ+x)}.
        let th = self.theta;
        let num = (-(th + x)).exp() * th.exp_m1();
        let den = (-(th + x)).exp() * -th.exp_m1() + 1.0;
        num / (th * den * den)
    }

    fn phi_at_zero(&self) -> f64 {
        f64::INFINITY
    }
}
