//! Copulas built from generators via `C(u, v) = ∫₀ᵛ ∫₀ᵘ 1 + h(s, t) ds dt`,
//! or wrapped directly around an explicit CDF.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::quadrature::{QuadratureRule, CUSTOM_ORDER};

type Fn2 = dyn Fn(f64, f64) -> f64 + Send + Sync;

#[derive(Clone)]
enum Repr {
    Generated { generator: Generator, rule: QuadratureRule },
    Explicit { name: String, cdf: Arc<Fn2> },
}

/// A bivariate copula. Immutable once built; all evaluators are pure.
#[derive(Clone)]
pub struct Copula {
    repr: Repr,
}

impl fmt::Debug for Copula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Generated { generator, rule } => f
                .debug_struct("Copula")
                .field("generator", generator)
                .field("fallback_order", &rule.order())
                .finish(),
            Repr::Explicit { name, .. } => f.debug_struct("Copula").field("cdf", name).finish(),
        }
    }
}

/// Builds the copula generated by `g`. Families with a closed form evaluate
/// it directly; the others integrate `1 + h` numerically. Does not validate
/// `g`; see [`crate::validate::validate_generator`].
pub fn build_copula(g: impl Into<Generator>) -> Copula {
    Copula::from_generator(g)
}

impl Copula {
    pub fn from_generator(g: impl Into<Generator>) -> Self {
        let rule = QuadratureRule::gauss_legendre(CUSTOM_ORDER).expect("valid order");
        Self::with_fallback_rule(g, rule)
    }

    /// Like [`Copula::from_generator`] with an explicit rule for generators
    /// that have no closed form.
    pub fn with_fallback_rule(g: impl Into<Generator>, rule: QuadratureRule) -> Self {
        Self {
            repr: Repr::Generated {
                generator: g.into(),
                rule,
            },
        }
    }

    /// Wraps an explicit CDF. Such copulas expose no generator, density or
    /// partial derivative; they exist mainly as reference objects.
    pub fn from_cdf<F>(name: impl Into<String>, cdf: F) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            repr: Repr::Explicit {
                name: name.into(),
                cdf: Arc::new(cdf),
            },
        }
    }

    pub fn independence() -> Self {
        Self::from_generator(Generator::Zero)
    }

    /// Fréchet-Hoeffding upper bound `min(u, v)`.
    pub fn upper_frechet() -> Self {
        Self::from_cdf("upper_frechet", |u, v| u.min(v))
    }

    /// Fréchet-Hoeffding lower bound `max(u + v - 1, 0)`.
    pub fn lower_frechet() -> Self {
        Self::from_cdf("lower_frechet", |u, v| (u + v - 1.0).max(0.0))
    }

    pub fn name(&self) -> &str {
        match &self.repr {
            Repr::Generated { generator, .. } => generator.family_name(),
            Repr::Explicit { name, .. } => name,
        }
    }

    pub fn generator(&self) -> Option<&Generator> {
        match &self.repr {
            Repr::Generated { generator, .. } => Some(generator),
            Repr::Explicit { .. } => None,
        }
    }

    /// Rule used when no closed form is available.
    pub fn fallback_rule(&self) -> Option<&QuadratureRule> {
        match &self.repr {
            Repr::Generated { rule, .. } => Some(rule),
            Repr::Explicit { .. } => None,
        }
    }

    /// `C(u, v)`. Numeric failures in the fallback path surface as NaN; use
    /// [`Copula::try_cdf`] to get them as errors.
    pub fn cdf(&self, u: f64, v: f64) -> f64 {
        self.try_cdf(u, v).unwrap_or(f64::NAN)
    }

    pub fn try_cdf(&self, u: f64, v: f64) -> Result<f64> {
        match &self.repr {
            Repr::Explicit { cdf, .. } => Ok(cdf(u, v)),
            Repr::Generated { generator, rule } => match generator {
                Generator::Product(p) => {
                    let big_phi = rule.integrate(0.0, u, |x| p.phi(x))?;
                    let big_psi = rule.integrate(0.0, v, |y| p.psi(y))?;
                    Ok(u * v + big_phi * big_psi)
                }
                Generator::Custom(_) => self.integrated_cdf(u, v, rule),
                g => Ok(g.closed_form(u, v).expect("closed-form family")),
            },
        }
    }

    /// The family's closed form, or the explicit CDF.
    pub fn closed_form(&self, u: f64, v: f64) -> Option<f64> {
        match &self.repr {
            Repr::Explicit { cdf, .. } => Some(cdf(u, v)),
            Repr::Generated { generator, .. } => generator.closed_form(u, v),
        }
    }

    pub fn has_closed_form(&self) -> bool {
        match &self.repr {
            Repr::Explicit { .. } => true,
            Repr::Generated { generator, .. } => generator.has_closed_form(),
        }
    }

    /// `∬_{[0,u]×[0,v]} (1 + h)` computed with `rule`, regardless of any
    /// closed form.
    pub fn integrated_cdf(&self, u: f64, v: f64, rule: &QuadratureRule) -> Result<f64> {
        let g = self.require_generator()?;
        rule.integrate_rect(u, v, |s, t| 1.0 + g.h(s, t))
    }

    pub fn h(&self, u: f64, v: f64) -> Option<f64> {
        self.generator().map(|g| g.h(u, v))
    }

    /// Copula density `∂²C/∂u∂v = 1 + h`.
    pub fn density(&self, u: f64, v: f64) -> Option<f64> {
        self.generator().map(|g| g.density(u, v))
    }

    /// `∂C/∂u`, the conditional CDF of `V` given `U = u`.
    pub fn partial_u(&self, u: f64, v: f64) -> Option<f64> {
        match &self.repr {
            Repr::Explicit { .. } => None,
            Repr::Generated { generator, rule } => match generator {
                Generator::Product(p) => {
                    let big_psi = rule.integrate(0.0, v, |y| p.psi(y)).ok()?;
                    Some(v + p.phi(u) * big_psi)
                }
                Generator::Custom(c) => {
                    let tail = rule.integrate(0.0, v, |t| c.eval(u, t)).ok()?;
                    Some(v + tail)
                }
                g => g.closed_form_partial_u(u, v),
            },
        }
    }

    fn require_generator(&self) -> Result<&Generator> {
        self.generator()
            .ok_or_else(|| Error::MissingDensity(self.name().to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{Fgm, FourierCoefficients, Frank};
    use crate::generator::{CustomGenerator, ProductGenerator};
    use std::f64::consts::PI;

    #[test]
    fn product_copula() {
        let c = build_copula(Generator::Zero);
        assert_eq!(c.cdf(0.3, 0.7), 0.21);
        assert_eq!(c.density(0.2, 0.9), Some(1.0));
        assert_eq!(c.partial_u(0.2, 0.9), Some(0.9));
    }

    #[test]
    fn fourier_example() {
        let fc = FourierCoefficients::new(vec![0.0], vec![1.0], vec![1.0], vec![0.0]).unwrap();
        let c = build_copula(fc);
        let expected = 0.0625 + 1.0 / (4.0 * PI * PI);
        assert!((c.cdf(0.25, 0.25) - expected).abs() < 1e-15);
    }

    #[test]
    fn lower_boundary_vanishes() {
        let gens: Vec<Generator> = vec![
            Generator::Zero,
            Fgm::new(0.4).unwrap().into(),
            Frank::new(-3.0).unwrap().into(),
            CustomGenerator::new("fgm-like", |u, v| 0.5 * (1.0 - 2.0 * u) * (1.0 - 2.0 * v)).into(),
            ProductGenerator::new("cos", |x| (2.0 * PI * x).cos(), |y| 0.5 * (2.0 * PI * y).cos()).into(),
        ];
        for g in gens {
            assert_eq!(build_copula(g).cdf(0.4, 0.0), 0.0);
        }
    }

    #[test]
    fn fallback_paths_agree_with_closed_form() {
        let theta = 0.6;
        let fgm = Fgm::new(theta).unwrap();
        let custom = build_copula(CustomGenerator::new("fgm", move |u, v| {
            theta * (1.0 - 2.0 * u) * (1.0 - 2.0 * v)
        }));
        let product = build_copula(ProductGenerator::new(
            "fgm",
            move |x| theta * (1.0 - 2.0 * x),
            |y| 1.0 - 2.0 * y,
        ));
        for &(u, v) in &[(0.2, 0.3), (0.7, 0.5), (1.0, 0.45)] {
            assert!((custom.cdf(u, v) - fgm.cdf(u, v)).abs() < 1e-13);
            assert!((product.cdf(u, v) - fgm.cdf(u, v)).abs() < 1e-13);
            assert!((custom.partial_u(u, v).unwrap() - fgm.partial_u(u, v)).abs() < 1e-13);
            assert!((product.partial_u(u, v).unwrap() - fgm.partial_u(u, v)).abs() < 1e-13);
        }
        assert!(!custom.has_closed_form());
    }

    #[test]
    fn explicit_copulas_have_no_density() {
        let c = Copula::upper_frechet();
        assert_eq!(c.cdf(0.3, 0.6), 0.3);
        assert!(c.density(0.3, 0.6).is_none());
        assert!(c.partial_u(0.3, 0.6).is_none());
        assert!(c.integrated_cdf(0.3, 0.6, &QuadratureRule::default()).is_err());
        assert_eq!(Copula::lower_frechet().cdf(0.3, 0.6), 0.0);
    }
}
