//! Spearman's rho and Kendall's tau, by quadrature of
//! `ρ = 12∬C - 3`, `τ = 4∬C·c - 1` or by family closed forms.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::copula::Copula;
use crate::error::{Error, Result};
use crate::families::{ComplexFourierCoefficients, FourierCoefficients, TrigSeries};
use crate::generator::Generator;
use crate::quadrature::QuadratureRule;

/// `3/π²`, the largest |ρ| of any Fourier copula.
pub const FOURIER_RHO_BOUND: f64 = 3.0 / (PI * PI);
/// `2/π²`, the largest |τ| of any Fourier copula.
pub const FOURIER_TAU_BOUND: f64 = 2.0 / (PI * PI);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Method {
    ClosedForm,
    Quadrature,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed_form",
            Method::Quadrature => "quadrature",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DependenceReport {
    pub rho: f64,
    pub tau: f64,
    pub method: Method,
    /// Rounding estimate for closed forms; difference from a half-order rule
    /// for quadrature.
    pub est_error: f64,
}

impl DependenceReport {
    fn closed(rho: f64, tau: f64) -> Self {
        Self {
            rho,
            tau,
            method: Method::ClosedForm,
            est_error: 4.0 * f64::EPSILON * rho.abs().max(tau.abs()).max(1.0),
        }
    }
}

/// `12 ∬ C - 3`.
pub fn rho_numeric(c: &Copula, rule: &QuadratureRule) -> Result<f64> {
    let mass = integrate_fallible(rule, |u, v| c.try_cdf(u, v))?;
    Ok(12.0 * mass - 3.0)
}

/// `4 ∬ C · (1 + h) - 1`.
pub fn tau_numeric(c: &Copula, rule: &QuadratureRule) -> Result<f64> {
    if c.generator().is_none() {
        return Err(Error::MissingDensity(c.name().to_string()));
    }
    let mass = integrate_fallible(rule, |u, v| {
        Ok(c.try_cdf(u, v)? * c.density(u, v).expect("generator present"))
    })?;
    Ok(4.0 * mass - 1.0)
}

fn integrate_fallible<F>(rule: &QuadratureRule, f: F) -> Result<f64>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    let first_error = RefCell::new(None);
    let value = rule.integrate_unit_square(|u, v| match f(u, v) {
        Ok(x) => x,
        Err(e) => {
            first_error.borrow_mut().get_or_insert(e);
            f64::NAN
        }
    });
    match first_error.into_inner() {
        Some(e) => Err(e),
        None => value,
    }
}

/// Both measures by quadrature, with `est_error` taken from a rule of half
/// the order.
pub fn quadrature_measures(c: &Copula, rule: &QuadratureRule) -> Result<DependenceReport> {
    let rho = rho_numeric(c, rule)?;
    let tau = tau_numeric(c, rule)?;
    let coarse = rule.with_order((rule.order() / 2).max(2))?;
    let est_error = (rho - rho_numeric(c, &coarse)?)
        .abs()
        .max((tau - tau_numeric(c, &coarse)?).abs());
    Ok(DependenceReport {
        rho,
        tau,
        method: Method::Quadrature,
        est_error,
    })
}

/// `(3/π²) Σₙ Σₘ bₙ dₘ / (nm)`.
pub fn fourier_rho_closed(fc: &FourierCoefficients) -> f64 {
    FOURIER_RHO_BOUND * fc.sine_moment()
}

/// `(2/π²) Σₙ Σₘ bₙ dₘ / (nm)`.
pub fn fourier_tau_closed(fc: &FourierCoefficients) -> f64 {
    FOURIER_TAU_BOUND * fc.sine_moment()
}

/// With `S = Σ α_{n,m}/(nm)` and `Q = Σ |α_{n,m}|²/(nm)` over all nonzero
/// indices, `ρ = -(3/π²) S` and `τ = -(2/π²) S - Q/π²`. `Q` vanishes for
/// coefficients that factor as `γₙ δₘ`, which includes every real Fourier
/// copula.
pub fn complex_fourier_measures(cc: &ComplexFourierCoefficients) -> DependenceReport {
    let s = cc.linear_moment();
    let q = cc.quadratic_moment();
    DependenceReport::closed(-FOURIER_RHO_BOUND * s, -FOURIER_TAU_BOUND * s - q / (PI * PI))
}

/// Closed-form measures for families that have them.
pub fn closed_form_measures(g: &Generator) -> Option<DependenceReport> {
    Some(match g {
        Generator::Zero => DependenceReport::closed(0.0, 0.0),
        Generator::Fgm(p) => DependenceReport::closed(p.rho(), p.tau()),
        Generator::Fourier(fc) => DependenceReport::closed(fourier_rho_closed(fc), fourier_tau_closed(fc)),
        Generator::ComplexFourier(cc) => complex_fourier_measures(cc),
        Generator::EpsilonOptimal(e) => DependenceReport::closed(e.rho(), e.tau()),
        Generator::Frank(_) | Generator::Product(_) | Generator::Custom(_) => return None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BoundAudit {
    pub trials: usize,
    pub worst_rho: f64,
    pub worst_tau: f64,
}

/// Maximum harmonic drawn per axis by [`fourier_bound_audit`].
pub const AUDIT_MAX_HARMONICS: usize = 4;

/// Random coefficient set with 1 to 4 harmonics per axis, each axis rescaled
/// to unit amplitude sum so that the norm bound holds with equality.
pub fn random_boundary_coefficients<R: Rng>(rng: &mut R) -> Result<FourierCoefficients> {
    let axis = |rng: &mut R| -> Result<TrigSeries> {
        let len = rng.random_range(1..=AUDIT_MAX_HARMONICS);
        let cos: Vec<f64> = (0..len).map(|_| rng.random_range(-1.0..1.0)).collect();
        let sin: Vec<f64> = (0..len).map(|_| rng.random_range(-1.0..1.0)).collect();
        let raw = TrigSeries::new(cos.clone(), sin.clone())?;
        let k = 1.0 / raw.amplitude_l1();
        TrigSeries::new(cos.iter().map(|x| x * k).collect(), sin.iter().map(|x| x * k).collect())
    };
    let u = axis(rng)?;
    let v = axis(rng)?;
    FourierCoefficients::from_series(u, v)
}

/// Worst `|ρ|`, `|τ|` over `trials` boundary-scaled random coefficient
/// sets. Trial `k` draws from stream `k` of a generator seeded with `seed`,
/// so results do not depend on the thread count.
pub fn fourier_bound_audit(trials: usize, seed: u64) -> Result<BoundAudit> {
    if trials == 0 {
        return Err(Error::InvalidParameter {
            name: "trials",
            value: 0.0,
            reason: "at least one trial is required",
        });
    }
    let per_trial: Vec<(f64, f64)> = (0..trials)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let fc = random_boundary_coefficients(&mut rng)?;
            Ok((fourier_rho_closed(&fc).abs(), fourier_tau_closed(&fc).abs()))
        })
        .collect::<Result<_>>()?;
    let (worst_rho, worst_tau) = per_trial
        .into_iter()
        .fold((0.0f64, 0.0f64), |(r, t), (a, b)| (r.max(a), t.max(b)));
    Ok(BoundAudit {
        trials,
        worst_rho,
        worst_tau,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::copula::build_copula;
    use crate::families::Fgm;
    use num_complex::Complex64;

    fn b1d1(scale: f64) -> FourierCoefficients {
        FourierCoefficients::new(vec![0.0], vec![scale], vec![0.0], vec![scale]).unwrap()
    }

    fn rule() -> QuadratureRule {
        QuadratureRule::default()
    }

    #[test]
    fn independence_is_zero() {
        let c = Copula::independence();
        assert!(rho_numeric(&c, &rule()).unwrap().abs() < 1e-12);
        assert!(tau_numeric(&c, &rule()).unwrap().abs() < 1e-12);
    }

    #[test]
    fn upper_bound_rho_is_one() {
        // The kink on the diagonal limits Gauss-Legendre to algebraic convergence.
        let c = Copula::upper_frechet();
        let rho = rho_numeric(&c, &QuadratureRule::gauss_legendre(2048).unwrap()).unwrap();
        assert!((rho - 1.0).abs() < 1e-6, "{rho}");
        assert!(tau_numeric(&c, &rule()).is_err());
    }

    #[test]
    fn fourier_closed_and_numeric() {
        let fc = b1d1(1.0);
        assert!((fourier_rho_closed(&fc) - FOURIER_RHO_BOUND).abs() < 1e-15);
        assert!((fourier_tau_closed(&fc) - FOURIER_TAU_BOUND).abs() < 1e-15);
        let c = build_copula(fc);
        assert!((rho_numeric(&c, &rule()).unwrap() - FOURIER_RHO_BOUND).abs() < 1e-8);
        assert!((tau_numeric(&c, &rule()).unwrap() - FOURIER_TAU_BOUND).abs() < 1e-8);

        let half = b1d1(0.5);
        assert!((fourier_rho_closed(&half) - 0.075_990_887_4).abs() < 1e-9);
        let example = FourierCoefficients::new(vec![0.0], vec![1.0], vec![1.0], vec![0.0]).unwrap();
        assert_eq!(fourier_rho_closed(&example), 0.0);
        assert_eq!(fourier_tau_closed(&example), 0.0);
    }

    #[test]
    fn second_harmonic() {
        let fc = FourierCoefficients::new(vec![0.0, 0.0], vec![0.0, 1.0], vec![0.0], vec![1.0]).unwrap();
        let expected = FOURIER_TAU_BOUND * 0.5;
        assert!((fourier_tau_closed(&fc) - expected).abs() < 1e-15);
        let numeric = tau_numeric(&build_copula(fc), &rule()).unwrap();
        assert!((numeric - expected).abs() < 1e-8);
    }

    #[test]
    fn fgm_tau() {
        let c = build_copula(Fgm::new(1.0).unwrap());
        assert!((tau_numeric(&c, &rule()).unwrap() - 2.0 / 9.0).abs() < 1e-8);
        assert!((rho_numeric(&c, &rule()).unwrap() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn complex_from_real_matches() {
        let fc = b1d1(1.0);
        let cc = ComplexFourierCoefficients::from_real(&fc);
        let r = complex_fourier_measures(&cc);
        assert!((r.rho - FOURIER_RHO_BOUND).abs() < 1e-12);
        assert!((r.tau - FOURIER_TAU_BOUND).abs() < 1e-12);
        let empty = complex_fourier_measures(&ComplexFourierCoefficients::default());
        assert_eq!((empty.rho, empty.tau), (0.0, 0.0));
    }

    #[test]
    fn complex_non_separable_matches_quadrature() {
        // Real α on (1,1) and (-1,-1) gives h = 2α cos 2π(u+v), which does not factor.
        let alpha = Complex64::new(0.25, 0.0);
        let cc = ComplexFourierCoefficients::new([(1, 1, alpha), (-1, -1, alpha)]).unwrap();
        let closed = complex_fourier_measures(&cc);
        let c = build_copula(cc);
        let rho = rho_numeric(&c, &rule()).unwrap();
        let tau = tau_numeric(&c, &rule()).unwrap();
        assert!((closed.rho - rho).abs() < 1e-8, "{} vs {rho}", closed.rho);
        assert!((closed.tau - tau).abs() < 1e-8, "{} vs {tau}", closed.tau);
        assert!((tau + 0.113_986_33).abs() < 1e-8);
    }

    #[test]
    fn audit_respects_bounds() {
        let a = fourier_bound_audit(200, 11).unwrap();
        assert!(a.worst_rho <= FOURIER_RHO_BOUND + 1e-12);
        assert!(a.worst_tau <= FOURIER_TAU_BOUND + 1e-12);
        assert!(a.worst_rho > 0.0);
        assert_eq!(a, fourier_bound_audit(200, 11).unwrap());
        assert!(fourier_bound_audit(0, 1).is_err());
    }

    #[test]
    fn closed_form_table() {
        let r = closed_form_measures(&Fgm::new(0.9).unwrap().into()).unwrap();
        assert!((r.rho - 0.3).abs() < 1e-15 && (r.tau - 0.2).abs() < 1e-15);
        assert!(closed_form_measures(&crate::families::Frank::new(2.0).unwrap().into()).is_none());
    }
}
