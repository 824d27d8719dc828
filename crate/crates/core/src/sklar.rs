//! Joint distributions `H(x, y) = C(F(x), G(y))` from a copula and two
//! marginal CDFs.

use std::fmt;
use std::str::FromStr;

use crate::copula::Copula;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum Marginal {
    Uniform { lo: f64, hi: f64 },
    Exponential { rate: f64 },
}

impl Marginal {
    pub fn uniform(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && hi > lo) {
            return Err(Error::InvalidMarginal(format!(
                "uniform({lo}, {hi}) needs finite lo < hi"
            )));
        }
        Ok(Marginal::Uniform { lo, hi })
    }

    pub fn exponential(rate: f64) -> Result<Self> {
        if !(rate.is_finite() && rate > 0.0) {
            return Err(Error::InvalidMarginal(format!(
                "exponential({rate}) needs a positive rate"
            )));
        }
        Ok(Marginal::Exponential { rate })
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match *self {
            Marginal::Uniform { lo, hi } => ((x - lo) / (hi - lo)).clamp(0.0, 1.0),
            Marginal::Exponential { rate } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-rate * x).exp_m1()
                }
            }
        }
    }
}

impl fmt::Display for Marginal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Marginal::Uniform { lo, hi } => write!(f, "uniform({lo},{hi})"),
            Marginal::Exponential { rate } => write!(f, "exponential({rate})"),
        }
    }
}

/// Parses `uniform(lo,hi)` or `exponential(rate)`.
impl FromStr for Marginal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidMarginal(s.to_string());
        let s = s.trim();
        let open = s.find('(').ok_or_else(bad)?;
        let args = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let args: Vec<f64> = args
            .split(',')
            .map(|a| a.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match (s[..open].trim(), args.as_slice()) {
            ("uniform", &[lo, hi]) => Marginal::uniform(lo, hi),
            ("exponential", &[rate]) => Marginal::exponential(rate),
            _ => Err(bad()),
        }
    }
}

/// `C(F(x), G(y))`.
pub fn sklar_compose(c: &Copula, f: &Marginal, g: &Marginal, x: f64, y: f64) -> Result<f64> {
    c.try_cdf(f.cdf(x), g.cdf(y))
}
