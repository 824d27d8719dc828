//! Smoothed extremal generators for Spearman's rho.
//!
//! For product generators `h(x, y) = φ(x) ψ(y)` rho factors as
//! `12 ∫G ∫H` with `G, H` the antiderivatives of `φ, ψ`. The extremes are
//! attained by tent-shaped `G`, which are not differentiable at `1/2`; this
//! module uses the smoothed tent
//!
//! ```text
//! G̃(x) = (scale/2) (√(1 + 4ε²) - √((1-2x)² + 4ε²))
//! ```
//!
//! whose derivative gives `h^ε(x, y) = ± g(x) g(y)` with
//! `g(x) = (1-2x)/√((1-2x)² + 4ε²)`. The slope parameter of the tent cancels
//! between the two axes, so [`EpsilonFamily`] does not store it.

use std::fmt;

use crate::error::{Error, Result};

/// The values of epsilon in the published reference table.
pub const TABLE1_EPSILONS: [f64; 5] = [1.0, 0.1, 0.01, 0.001, 0.0001];

/// Limits of rho and tau as epsilon goes to zero.
pub const RHO_LIMIT: f64 = 0.75;
pub const TAU_LIMIT: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Extremum {
    Max,
    Min,
}

impl Extremum {
    pub fn sign(self) -> f64 {
        match self {
            Extremum::Max => 1.0,
            Extremum::Min => -1.0,
        }
    }
}

impl fmt::Display for Extremum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Extremum::Max => "max",
            Extremum::Min => "min",
        })
    }
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon.is_finite() && epsilon > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "epsilon",
            value: epsilon,
            reason: "epsilon must be strictly positive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsilonFamily {
    epsilon: f64,
    extremum: Extremum,
}

impl EpsilonFamily {
    pub fn new(epsilon: f64, extremum: Extremum) -> Result<Self> {
        check_epsilon(epsilon)?;
        Ok(Self { epsilon, extremum })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn extremum(&self) -> Extremum {
        self.extremum
    }

    /// `g(x) = (1-2x)/√((1-2x)² + 4ε²)`, the derivative of the unit-scale tent.
    pub fn profile(&self, x: f64) -> f64 {
        let d = 1.0 - 2.0 * x;
        d / d.hypot(2.0 * self.epsilon)
    }

    /// Unit-scale smoothed tent, the antiderivative of [`Self::profile`].
    pub fn tent(&self, x: f64) -> f64 {
        unit_tent(self.epsilon, x)
    }

    pub fn h(&self, x: f64, y: f64) -> f64 {
        self.extremum.sign() * self.profile(x) * self.profile(y)
    }

    pub fn cdf(&self, u: f64, v: f64) -> f64 {
        u * v + self.extremum.sign() * self.tent(u) * self.tent(v)
    }

    pub fn partial_u(&self, u: f64, v: f64) -> f64 {
        v + self.extremum.sign() * self.profile(u) * self.tent(v)
    }

    pub fn rho(&self) -> f64 {
        self.extremum.sign() * rho_max(self.epsilon)
    }

    pub fn tau(&self) -> f64 {
        self.extremum.sign() * tau_max(self.epsilon)
    }
}

/// `(1/2)(√(1+4ε²) - √((1-2x)²+4ε²))`, written as `2x(1-x)/(√(1+4ε²) + √(...))`
/// so it vanishes exactly at both ends.
fn unit_tent(epsilon: f64, x: f64) -> f64 {
    let e2 = 2.0 * epsilon;
    let outer = 1.0f64.hypot(e2);
    let inner = (1.0 - 2.0 * x).hypot(e2);
    2.0 * x * (1.0 - x) / (outer + inner)
}

/// `(scale/2)(√(1+4ε²) - √((1-2x)²+4ε²))`. A positive `scale` gives the
/// maximising tent, a negative one the minimising tent; the absolute value
/// of the derivative never exceeds `|scale|`.
pub fn smoothed_tent(epsilon: f64, x: f64, scale: f64) -> Result<f64> {
    check_epsilon(epsilon)?;
    if scale == 0.0 || !scale.is_finite() {
        return Err(Error::InvalidParameter {
            name: "scale",
            value: scale,
            reason: "scale must be finite and non-zero",
        });
    }
    Ok(scale * unit_tent(epsilon, x))
}

/// `coth⁻¹(x) = (1/2) ln((x+1)/(x-1))` for `|x| > 1`.
pub fn acoth(x: f64) -> f64 {
    0.5 * (2.0 / (x - 1.0)).ln_1p()
}

/// `coth⁻¹(√(1+4ε²))`, which simplifies to `ln((√(1+4ε²) + 1)/(2ε))`.
fn acoth_of_root(epsilon: f64) -> f64 {
    let e2 = 2.0 * epsilon;
    let root = 1.0f64.hypot(e2);
    // (root + 1)/(2ε) = 1 + (1 + 1/(root + 2ε))/(2ε) since root - 2ε = 1/(root + 2ε).
    ((1.0 + 1.0 / (root + e2)) / e2).ln_1p()
}

/// `√(1+4ε²) - 4ε² coth⁻¹(√(1+4ε²))`, which is `4 ∫₀¹ G̃`.
fn tent_moment(epsilon: f64) -> f64 {
    let root = 1.0f64.hypot(2.0 * epsilon);
    root - 4.0 * epsilon * epsilon * acoth_of_root(epsilon)
}

/// `(3/4)(√(1+4ε²) - 4ε² coth⁻¹(√(1+4ε²)))²`.
pub fn rho_max(epsilon: f64) -> f64 {
    let m = tent_moment(epsilon);
    0.75 * m * m
}

/// `(1/2)[1 + 4ε² + 4ε²(√(1+4ε²) - 2ε² coth⁻¹(√(1+4ε²))) ln((1+2ε²-√(1+4ε²))/(2ε²))]`.
///
/// The logarithm's argument cancels catastrophically for small ε; it is
/// evaluated through the identity `1 + 2ε² - √(1+4ε²) = 4ε⁴/(1 + 2ε² + √(1+4ε²))`.
pub fn tau_max(epsilon: f64) -> f64 {
    let e2 = epsilon * epsilon;
    let root = 1.0f64.hypot(2.0 * epsilon);
    let acoth = acoth_of_root(epsilon);
    let log_term = (2.0 * e2 / (1.0 + 2.0 * e2 + root)).ln();
    0.5 * (1.0 + 4.0 * e2 + 4.0 * e2 * (root - 2.0 * e2 * acoth) * log_term)
}

pub fn rho_epsilon_closed(family: &EpsilonFamily) -> f64 {
    family.rho()
}

pub fn tau_epsilon_closed(family: &EpsilonFamily) -> f64 {
    family.tau()
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Table1Row {
    pub epsilon: f64,
    pub rho_max: f64,
    pub rho_min: f64,
    pub tau_max: f64,
    pub tau_min: f64,
}

/// Closed-form rho and tau for both extremes at each epsilon.
pub fn table1(epsilons: &[f64]) -> Result<Vec<Table1Row>> {
    epsilons
        .iter()
        .map(|&epsilon| {
            let max = EpsilonFamily::new(epsilon, Extremum::Max)?;
            let min = EpsilonFamily::new(epsilon, Extremum::Min)?;
            Ok(Table1Row {
                epsilon,
                rho_max: max.rho(),
                rho_min: min.rho(),
                tau_max: max.tau(),
                tau_min: min.tau(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitAudit {
    pub epsilons: Vec<f64>,
    pub rho: Vec<f64>,
    pub tau: Vec<f64>,
    /// `0.75 - rho_max(ε)` per entry.
    pub rho_gaps: Vec<f64>,
    /// `0.5 - tau_max(ε)` per entry.
    pub tau_gaps: Vec<f64>,
    /// Rho and tau strictly increase along the sequence.
    pub monotone: bool,
    /// Every value stays strictly below its limit.
    pub below_limit: bool,
}

impl LimitAudit {
    pub fn final_rho_gap(&self) -> f64 {
        *self.rho_gaps.last().expect("audit is non-empty")
    }

    pub fn final_tau_gap(&self) -> f64 {
        *self.tau_gaps.last().expect("audit is non-empty")
    }
}

/// Follows `rho_max` and `tau_max` along a strictly decreasing epsilon sequence.
pub fn epsilon_limit_audit(epsilons: &[f64]) -> Result<LimitAudit> {
    if epsilons.is_empty() {
        return Err(Error::InvalidParameter {
            name: "epsilons",
            value: f64::NAN,
            reason: "sequence must be non-empty",
        });
    }
    for &e in epsilons {
        check_epsilon(e)?;
    }
    if let Some(w) = epsilons.windows(2).find(|w| w[1] >= w[0]) {
        return Err(Error::InvalidParameter {
            name: "epsilons",
            value: w[1],
            reason: "sequence must be strictly decreasing",
        });
    }
    let rho: Vec<f64> = epsilons.iter().map(|&e| rho_max(e)).collect();
    let tau: Vec<f64> = epsilons.iter().map(|&e| tau_max(e)).collect();
    let rho_gaps: Vec<f64> = rho.iter().map(|r| RHO_LIMIT - r).collect();
    let tau_gaps: Vec<f64> = tau.iter().map(|t| TAU_LIMIT - t).collect();
    let monotone = rho.windows(2).all(|w| w[1] > w[0]) && tau.windows(2).all(|w| w[1] > w[0]);
    let below_limit = rho_gaps.iter().chain(tau_gaps.iter()).all(|&g| g > 0.0);
    Ok(LimitAudit {
        epsilons: epsilons.to_vec(),
        rho,
        tau,
        rho_gaps,
        tau_gaps,
        monotone,
        below_limit,
    })
}

/// Formats `x` with `digits` significant figures, dropping trailing zeros.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (_, exponent) = sci.split_once('e').expect("scientific format");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
    let rounded: f64 = sci.parse().expect("round trip");
    let mut s = format!("{rounded:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}
