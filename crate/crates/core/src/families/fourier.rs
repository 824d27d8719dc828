//! Fourier copulas.
//!
//! The generator is a product of two zero-mean trigonometric polynomials,
//!
//! ```text
//! h(u, v) = Σₙ (aₙ cos 2πnu + bₙ sin 2πnu) · Σₘ (cₘ cos 2πmv + dₘ sin 2πmv)
//! ```
//!
//! so both marginal integrals vanish. `h ≥ -1` is guaranteed when
//! `Σₙ Σₘ √(aₙ² + bₙ²) √(cₘ² + dₘ²) ≤ 1`. Because `h` is separable the
//! copula is `C(u, v) = uv + A(u) B(v)` with `A, B` the antiderivatives of the
//! two factors vanishing at zero.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::sum::compensated_sum;

/// Slack allowed on the l1-product bound to absorb rounding in rescaled inputs.
pub const NORM_SLACK: f64 = 1e-12;

/// A finite trigonometric series `Σ_{k≥1} cos_k cos(2πkx) + sin_k sin(2πkx)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigSeries {
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl TrigSeries {
    /// The shorter of the two arrays is zero-padded.
    pub fn new(cos: Vec<f64>, sin: Vec<f64>) -> Result<Self> {
        if cos.iter().chain(sin.iter()).any(|x| !x.is_finite()) {
            return Err(Error::InvalidCoefficients("coefficients must be finite".into()));
        }
        let len = cos.len().max(sin.len());
        if len == 0 {
            return Err(Error::InvalidCoefficients(
                "each axis needs at least one harmonic".into(),
            ));
        }
        let mut cos = cos;
        let mut sin = sin;
        cos.resize(len, 0.0);
        sin.resize(len, 0.0);
        Ok(Self { cos, sin })
    }

    pub fn len(&self) -> usize {
        self.cos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cos.is_empty()
    }

    pub fn cos_coefficients(&self) -> &[f64] {
        &self.cos
    }

    pub fn sin_coefficients(&self) -> &[f64] {
        &self.sin
    }

    fn harmonics(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.cos
            .iter()
            .zip(self.sin.iter())
            .enumerate()
            .map(|(i, (&a, &b))| ((i + 1) as f64, a, b))
    }

    pub fn value(&self, x: f64) -> f64 {
        self.harmonics()
            .map(|(k, a, b)| {
                let (s, c) = (2.0 * PI * k * x).sin_cos();
                a * c + b * s
            })
            .sum()
    }

    /// `∫₀ˣ` of the series.
    pub fn antiderivative(&self, x: f64) -> f64 {
        self.harmonics()
            .map(|(k, a, b)| {
                let angle = 2.0 * PI * k * x;
                // 1 - cos θ = 2 sin²(θ/2) avoids cancellation near zero.
                let half = (0.5 * angle).sin();
                (a * angle.sin() + b * 2.0 * half * half) / (2.0 * PI * k)
            })
            .sum()
    }

    /// `∫₀¹ ∫₀ˣ`, which only the sine terms contribute to: `Σ b_k / (2πk)`.
    pub fn double_integral(&self) -> f64 {
        compensated_sum(self.harmonics().map(|(k, _, b)| b / (2.0 * PI * k)))
    }

    /// `Σ_k √(a_k² + b_k²)`, an upper bound on `sup |series|`.
    pub fn amplitude_l1(&self) -> f64 {
        compensated_sum(self.harmonics().map(|(_, a, b)| a.hypot(b)))
    }

    fn scaled(&self, factor: f64) -> Self {
        Self {
            cos: self.cos.iter().map(|x| x * factor).collect(),
            sin: self.sin.iter().map(|x| x * factor).collect(),
        }
    }
}

/// Coefficients `(aₙ), (bₙ)` on the u-axis and `(cₘ), (dₘ)` on the v-axis.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierCoefficients {
    u_axis: TrigSeries,
    v_axis: TrigSeries,
}

impl FourierCoefficients {
    pub fn new(a: Vec<f64>, b: Vec<f64>, c: Vec<f64>, d: Vec<f64>) -> Result<Self> {
        Self::from_series(TrigSeries::new(a, b)?, TrigSeries::new(c, d)?)
    }

    pub fn from_series(u_axis: TrigSeries, v_axis: TrigSeries) -> Result<Self> {
        let fc = Self { u_axis, v_axis };
        let norm = fc.norm();
        if norm > 1.0 + NORM_SLACK {
            return Err(Error::CoefficientNorm { norm, bound: 1.0 });
        }
        Ok(fc)
    }

    /// `Σₙ Σₘ √(aₙ²+bₙ²) √(cₘ²+dₘ²)`, which factors into a product of two sums.
    pub fn norm(&self) -> f64 {
        self.u_axis.amplitude_l1() * self.v_axis.amplitude_l1()
    }

    /// Rescales both axes by `√λ` so that the norm scales by `λ`.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        if !(0.0..=1.0 + NORM_SLACK).contains(&lambda) {
            return Err(Error::InvalidParameter {
                name: "lambda",
                value: lambda,
                reason: "scale must lie in [0, 1]",
            });
        }
        let r = lambda.sqrt();
        Self::from_series(self.u_axis.scaled(r), self.v_axis.scaled(r))
    }

    pub fn u_axis(&self) -> &TrigSeries {
        &self.u_axis
    }

    pub fn v_axis(&self) -> &TrigSeries {
        &self.v_axis
    }

    pub fn a(&self) -> &[f64] {
        self.u_axis.cos_coefficients()
    }

    pub fn b(&self) -> &[f64] {
        self.u_axis.sin_coefficients()
    }

    pub fn c(&self) -> &[f64] {
        self.v_axis.cos_coefficients()
    }

    pub fn d(&self) -> &[f64] {
        self.v_axis.sin_coefficients()
    }

    pub fn h(&self, u: f64, v: f64) -> f64 {
        self.u_axis.value(u) * self.v_axis.value(v)
    }

    pub fn cdf(&self, u: f64, v: f64) -> f64 {
        u * v + self.u_axis.antiderivative(u) * self.v_axis.antiderivative(v)
    }

    pub fn partial_u(&self, u: f64, v: f64) -> f64 {
        v + self.u_axis.value(u) * self.v_axis.antiderivative(v)
    }

    /// `Σₙ Σₘ bₙ dₘ / (nm)`; the double sum factors, so each axis is summed
    /// once with compensation.
    pub fn sine_moment(&self) -> f64 {
        let bu = compensated_sum(self.b().iter().enumerate().map(|(i, b)| b / (i + 1) as f64));
        let dv = compensated_sum(self.d().iter().enumerate().map(|(i, d)| d / (i + 1) as f64));
        bu * dv
    }

    /// Maximum of `|C(u, v) - C(v, u)|` over a uniform `grid_n × grid_n` grid.
    pub fn asymmetry(&self, grid_n: usize) -> Result<f64> {
        if grid_n < 2 {
            return Err(Error::GridTooSmall { min: 2, got: grid_n });
        }
        let step = 1.0 / (grid_n - 1) as f64;
        let mut worst = 0.0f64;
        for i in 0..grid_n {
            let u = i as f64 * step;
            for j in (i + 1)..grid_n {
                let v = j as f64 * step;
                worst = worst.max((self.cdf(u, v) - self.cdf(v, u)).abs());
            }
        }
        Ok(worst)
    }
}

/// Grid resolution used for the asymmetry certificate.
pub const ASYMMETRY_GRID: usize = 201;
