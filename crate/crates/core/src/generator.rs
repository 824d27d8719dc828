//! Generator functions `h: [0,1]² → [-1, ∞)` with vanishing marginal
//! integrals. Each one defines a copula with density `1 + h`.

use std::fmt;
use std::sync::Arc;

use crate::families::{ComplexFourierCoefficients, Fgm, FourierCoefficients, Frank};
use crate::optimal::EpsilonFamily;

type Fn2 = dyn Fn(f64, f64) -> f64 + Send + Sync;
type Fn1 = dyn Fn(f64) -> f64 + Send + Sync;

/// An arbitrary user-supplied generator with no closed-form copula.
#[derive(Clone)]
pub struct CustomGenerator {
    name: String,
    h: Arc<Fn2>,
}

impl CustomGenerator {
    pub fn new<F>(name: impl Into<String>, h: F) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            h: Arc::new(h),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, u: f64, v: f64) -> f64 {
        (self.h)(u, v)
    }
}

impl fmt::Debug for CustomGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomGenerator").field("name", &self.name).finish()
    }
}

/// A separable generator `h(x, y) = φ(x) ψ(y)`.
#[derive(Clone)]
pub struct ProductGenerator {
    name: String,
    phi: Arc<Fn1>,
    psi: Arc<Fn1>,
}

impl ProductGenerator {
    pub fn new<F, G>(name: impl Into<String>, phi: F, psi: G) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            phi: Arc::new(phi),
            psi: Arc::new(psi),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn phi(&self, x: f64) -> f64 {
        (self.phi)(x)
    }

    pub fn psi(&self, y: f64) -> f64 {
        (self.psi)(y)
    }
}

impl fmt::Debug for ProductGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProductGenerator").field("name", &self.name).finish()
    }
}

#[derive(Debug, Clone)]
pub enum Generator {
    /// `h ≡ 0`, the independence copula.
    Zero,
    Fgm(Fgm),
    Frank(Frank),
    Fourier(FourierCoefficients),
    ComplexFourier(ComplexFourierCoefficients),
    EpsilonOptimal(EpsilonFamily),
    Product(ProductGenerator),
    Custom(CustomGenerator),
}

impl Generator {
    pub fn h(&self, u: f64, v: f64) -> f64 {
        match self {
            Generator::Zero => 0.0,
            Generator::Fgm(p) => p.h(u, v),
            Generator::Frank(p) => p.h(u, v),
            Generator::Fourier(fc) => fc.h(u, v),
            Generator::ComplexFourier(cc) => cc.h(u, v),
            Generator::EpsilonOptimal(e) => e.h(u, v),
            Generator::Product(p) => p.phi(u) * p.psi(v),
            Generator::Custom(c) => c.eval(u, v),
        }
    }

    /// `1 + h`.
    pub fn density(&self, u: f64, v: f64) -> f64 {
        match self {
            // Frank's density is computed directly; 1 + (c - 1) would round.
            Generator::Frank(p) => p.density(u, v),
            _ => 1.0 + self.h(u, v),
        }
    }

    /// Closed-form `C(u, v)`, when the family has one.
    pub fn closed_form(&self, u: f64, v: f64) -> Option<f64> {
        Some(match self {
            Generator::Zero => u * v,
            Generator::Fgm(p) => p.cdf(u, v),
            Generator::Frank(p) => p.cdf(u, v),
            Generator::Fourier(fc) => fc.cdf(u, v),
            Generator::ComplexFourier(cc) => cc.cdf(u, v),
            Generator::EpsilonOptimal(e) => e.cdf(u, v),
            Generator::Product(_) | Generator::Custom(_) => return None,
        })
    }

    /// Closed-form `∂C/∂u`, when the family has one.
    pub fn closed_form_partial_u(&self, u: f64, v: f64) -> Option<f64> {
        Some(match self {
            Generator::Zero => v,
            Generator::Fgm(p) => p.partial_u(u, v),
            Generator::Frank(p) => p.partial_u(u, v),
            Generator::Fourier(fc) => fc.partial_u(u, v),
            Generator::ComplexFourier(cc) => cc.partial_u(u, v),
            Generator::EpsilonOptimal(e) => e.partial_u(u, v),
            Generator::Product(_) | Generator::Custom(_) => return None,
        })
    }

    pub fn has_closed_form(&self) -> bool {
        !matches!(self, Generator::Product(_) | Generator::Custom(_))
    }

    pub fn family_name(&self) -> &str {
        match self {
            Generator::Zero => "independence",
            Generator::Fgm(_) => "fgm",
            Generator::Frank(_) => "frank",
            Generator::Fourier(_) => "fourier",
            Generator::ComplexFourier(_) => "complex_fourier",
            Generator::EpsilonOptimal(_) => "epsilon_optimal",
            Generator::Product(p) => p.name(),
            Generator::Custom(c) => c.name(),
        }
    }
}

impl From<Fgm> for Generator {
    fn from(p: Fgm) -> Self {
        Generator::Fgm(p)
    }
}

impl From<Frank> for Generator {
    fn from(p: Frank) -> Self {
        Generator::Frank(p)
    }
}

impl From<FourierCoefficients> for Generator {
    fn from(fc: FourierCoefficients) -> Self {
        Generator::Fourier(fc)
    }
}

impl From<ComplexFourierCoefficients> for Generator {
    fn from(cc: ComplexFourierCoefficients) -> Self {
        Generator::ComplexFourier(cc)
    }
}

impl From<EpsilonFamily> for Generator {
    fn from(e: EpsilonFamily) -> Self {
        Generator::EpsilonOptimal(e)
    }
}

impl From<ProductGenerator> for Generator {
    fn from(p: ProductGenerator) -> Self {
        Generator::Product(p)
    }
}

impl From<CustomGenerator> for Generator {
    fn from(c: CustomGenerator) -> Self {
        Generator::Custom(c)
    }
}
