//! Fourier copulas with general complex coefficients,
//! `h(s, t) = Σ_{n,m ≠ 0} α_{n,m} e^{2πi(ns + mt)}` with `α_{-n,-m} = conj(α_{n,m})`.
//!
//! Only one member of each conjugate pair is stored (the one with `n > 0`);
//! the mirror is synthesised. `h ≥ -1` holds when the stored magnitudes sum
//! to at most `1/2`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::families::fourier::{FourierCoefficients, NORM_SLACK};
use crate::sum::CompensatedSum;

/// Bound on `Σ_{n,m ≥ 1} |α_{n,m}| + |α_{-n,m}|`.
pub const COMPLEX_NORM_BOUND: f64 = 0.5;

const CONJUGATE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexTerm {
    pub n: i32,
    pub m: i32,
    pub alpha: Complex64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ComplexFourierCoefficients {
    /// Representatives with `n > 0`, sorted by `(n, m)`.
    terms: Vec<ComplexTerm>,
}

impl ComplexFourierCoefficients {
    /// Builds the coefficient set from `(n, m, α_{n,m})` entries. Either member
    /// of a conjugate pair may be given; if both are, they must be conjugate.
    pub fn new<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i32, i32, Complex64)>,
    {
        let mut reps: BTreeMap<(i32, i32), Complex64> = BTreeMap::new();
        for (n, m, alpha) in entries {
            if n == 0 || m == 0 {
                return Err(Error::InvalidCoefficients(format!(
                    "index ({n}, {m}) has a zero component"
                )));
            }
            if !alpha.re.is_finite() || !alpha.im.is_finite() {
                return Err(Error::InvalidCoefficients(format!("alpha({n}, {m}) is not finite")));
            }
            let (key, value) = if n > 0 {
                ((n, m), alpha)
            } else {
                ((-n, -m), alpha.conj())
            };
            match reps.get(&key) {
                Some(existing) => {
                    let scale = existing.norm().max(value.norm()).max(1.0);
                    if (existing - value).norm() > CONJUGATE_TOLERANCE * scale {
                        return Err(Error::SymmetryViolation { n, m });
                    }
                }
                None => {
                    reps.insert(key, value);
                }
            }
        }
        let terms: Vec<ComplexTerm> = reps
            .into_iter()
            .filter(|(_, a)| *a != Complex64::new(0.0, 0.0))
            .map(|((n, m), alpha)| ComplexTerm { n, m, alpha })
            .collect();
        let cc = Self { terms };
        let norm = cc.norm();
        if norm > COMPLEX_NORM_BOUND + NORM_SLACK {
            return Err(Error::CoefficientNorm {
                norm,
                bound: COMPLEX_NORM_BOUND,
            });
        }
        Ok(cc)
    }

    /// The complex form of a real coefficient set, via
    /// `γₙ = (aₙ - i bₙ)/2`, `δₘ = (cₘ - i dₘ)/2` and `α_{n,m} = γₙ δₘ`.
    pub fn from_real(fc: &FourierCoefficients) -> Self {
        let gamma: Vec<Complex64> = fc
            .a()
            .iter()
            .zip(fc.b())
            .map(|(&a, &b)| Complex64::new(a, -b) * 0.5)
            .collect();
        let delta: Vec<Complex64> = fc
            .c()
            .iter()
            .zip(fc.d())
            .map(|(&c, &d)| Complex64::new(c, -d) * 0.5)
            .collect();
        let mut entries = Vec::with_capacity(2 * gamma.len() * delta.len());
        for (i, g) in gamma.iter().enumerate() {
            for (j, d) in delta.iter().enumerate() {
                let (n, m) = ((i + 1) as i32, (j + 1) as i32);
                entries.push((n, m, g * d));
                entries.push((n, -m, g * d.conj()));
            }
        }
        Self::new(entries).expect("real coefficients satisfy the complex bound")
    }

    /// Stored representatives (`n > 0`).
    pub fn terms(&self) -> &[ComplexTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `α_{n,m}`, synthesising the conjugate mirror.
    pub fn alpha(&self, n: i32, m: i32) -> Complex64 {
        let (key, mirrored) = if n > 0 { ((n, m), false) } else { ((-n, -m), true) };
        self.terms
            .binary_search_by(|t| (t.n, t.m).cmp(&key))
            .map(|i| {
                let a = self.terms[i].alpha;
                if mirrored {
                    a.conj()
                } else {
                    a
                }
            })
            .unwrap_or_default()
    }

    /// `Σ_{n,m ≥ 1} |α_{n,m}| + |α_{-n,m}|`, i.e. the stored magnitudes.
    pub fn norm(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.alpha.norm())
            .collect::<CompensatedSum>()
            .value()
    }

    /// Evaluates the full sum over both members of every pair. The imaginary
    /// part vanishes up to rounding.
    pub fn h_complex(&self, u: f64, v: f64) -> Complex64 {
        let mut re = CompensatedSum::new();
        let mut im = CompensatedSum::new();
        for t in &self.terms {
            for (n, m, a) in [(t.n, t.m, t.alpha), (-t.n, -t.m, t.alpha.conj())] {
                let z = a * unit(n as f64 * u + m as f64 * v);
                re.add(z.re);
                im.add(z.im);
            }
        }
        Complex64::new(re.value(), im.value())
    }

    pub fn h(&self, u: f64, v: f64) -> f64 {
        2.0 * self
            .terms
            .iter()
            .map(|t| (t.alpha * unit(t.n as f64 * u + t.m as f64 * v)).re)
            .collect::<CompensatedSum>()
            .value()
    }

    pub fn cdf(&self, u: f64, v: f64) -> f64 {
        let s = self
            .terms
            .iter()
            .map(|t| {
                let (n, m) = (t.n as f64, t.m as f64);
                (t.alpha * unit_minus_one(n * u) * unit_minus_one(m * v)).re / (n * m)
            })
            .collect::<CompensatedSum>()
            .value();
        u * v - s / (2.0 * PI * PI)
    }

    pub fn partial_u(&self, u: f64, v: f64) -> f64 {
        let s = self
            .terms
            .iter()
            .map(|t| {
                let (n, m) = (t.n as f64, t.m as f64);
                // α e_n(u) (e_m(v) - 1) / (i m)
                (t.alpha * unit(n * u) * unit_minus_one(m * v) * Complex64::new(0.0, -1.0 / m)).re
            })
            .collect::<CompensatedSum>()
            .value();
        v + s / PI
    }

    /// `Σ_{n,m ≠ 0} α_{n,m} / (nm)`, real by Hermitian symmetry.
    pub fn linear_moment(&self) -> f64 {
        2.0 * self
            .terms
            .iter()
            .map(|t| t.alpha.re / (t.n as f64 * t.m as f64))
            .collect::<CompensatedSum>()
            .value()
    }

    /// `Σ_{n,m ≠ 0} |α_{n,m}|² / (nm)`. Zero whenever `α` factors as `γₙ δₘ`.
    pub fn quadratic_moment(&self) -> f64 {
        2.0 * self
            .terms
            .iter()
            .map(|t| t.alpha.norm_sqr() / (t.n as f64 * t.m as f64))
            .collect::<CompensatedSum>()
            .value()
    }
}

/// `e^{2πix}`.
fn unit(x: f64) -> Complex64 {
    let (s, c) = (2.0 * PI * x).sin_cos();
    Complex64::new(c, s)
}

/// `e^{2πix} - 1`, without cancellation near `x = 0`.
fn unit_minus_one(x: f64) -> Complex64 {
    let theta = 2.0 * PI * x;
    let half = (0.5 * theta).sin();
    Complex64::new(-2.0 * half * half, theta.sin())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::QuadratureRule;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn conjugate_pair_is_a_cosine() {
        let cc = ComplexFourierCoefficients::new([(1, 1, c(0.25, 0.0)), (-1, -1, c(0.25, 0.0))]).unwrap();
        for &(u, v) in &[(0.1, 0.2), (0.45, 0.9), (0.0, 0.0)] {
            let expected = 0.5 * (2.0 * PI * (u + v)).cos();
            assert!((cc.h(u, v) - expected).abs() < 1e-15);
            assert!(cc.h_complex(u, v).im.abs() <= 1e-12);
        }
        assert_eq!(cc.terms().len(), 1);
    }

    #[test]
    fn mirror_is_synthesised() {
        let cc = ComplexFourierCoefficients::new([(2, -1, c(0.1, 0.2))]).unwrap();
        assert_eq!(cc.alpha(-2, 1), c(0.1, -0.2));
        assert_eq!(cc.alpha(2, -1), c(0.1, 0.2));
        assert_eq!(cc.alpha(1, 1), c(0.0, 0.0));
        let cc = ComplexFourierCoefficients::new([(-3, 2, c(0.1, 0.2))]).unwrap();
        assert_eq!(
            cc.terms()[0],
            ComplexTerm {
                n: 3,
                m: -2,
                alpha: c(0.1, -0.2)
            }
        );
    }

    #[test]
    fn empty_support_is_independence() {
        let cc = ComplexFourierCoefficients::new([]).unwrap();
        assert_eq!(cc.h(0.3, 0.4), 0.0);
        assert_eq!(cc.cdf(0.3, 0.4), 0.3 * 0.4);
    }

    #[test]
    fn symmetry_violation_rejected() {
        let err = ComplexFourierCoefficients::new([(1, 1, c(0.1, 0.1)), (-1, -1, c(0.1, 0.1))]).unwrap_err();
        assert!(matches!(err, Error::SymmetryViolation { .. }));
        assert!(ComplexFourierCoefficients::new([(0, 1, c(0.1, 0.0))]).is_err());
        assert!(ComplexFourierCoefficients::new([(1, 1, c(0.3, 0.0)), (1, -1, c(0.3, 0.0))]).is_err());
    }

    #[test]
    fn real_form_matches_at_random_points() {
        let fc = FourierCoefficients::new(vec![0.2, -0.1], vec![0.3, 0.15], vec![0.5, 0.1], vec![-0.2, 0.4]).unwrap();
        let cc = ComplexFourierCoefficients::from_real(&fc);
        assert!(cc.norm() <= 0.5 * fc.norm() + 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let (u, v) = (rng.random::<f64>(), rng.random::<f64>());
            assert!((cc.h(u, v) - fc.h(u, v)).abs() < 1e-12);
            assert!((cc.cdf(u, v) - fc.cdf(u, v)).abs() < 1e-12);
            assert!((cc.partial_u(u, v) - fc.partial_u(u, v)).abs() < 1e-12);
        }
        assert!(cc.quadratic_moment().abs() < 1e-15);
    }

    #[test]
    fn cdf_is_cumulative_integral() {
        let cc = ComplexFourierCoefficients::new([(1, 1, c(0.1, 0.05)), (1, -2, c(-0.08, 0.1)), (2, 1, c(0.0, 0.07))])
            .unwrap();
        let rule = QuadratureRule::gauss_legendre(48).unwrap();
        for &(u, v) in &[(0.3, 0.6), (0.8, 0.15), (1.0, 0.4)] {
            let q = rule.integrate_rect(u, v, |s, t| 1.0 + cc.h(s, t)).unwrap();
            assert!((q - cc.cdf(u, v)).abs() < 1e-12);
            let step = 1e-6;
            let fd = (cc.cdf((u + step).min(1.0), v) - cc.cdf(u - step, v)) / ((u + step).min(1.0) - (u - step));
            assert!((fd - cc.partial_u(u, v)).abs() < 1e-6);
        }
    }
}
