//! JSON copula specifications.

use std::sync::Arc;

use serde::Deserialize;

use c2copula::{
    Complex64, ComplexFourierCoefficients, EpsilonFamily, Extremum, Fgm, FourierCoefficients, Frank, Generator,
    ProductGenerator,
};

use crate::expr::{Expr, ParseError};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum Spec {
    Independence {},
    Fgm {
        theta: f64,
    },
    Frank {
        theta: f64,
    },
    Fourier {
        #[serde(default)]
        a: Vec<f64>,
        #[serde(default)]
        b: Vec<f64>,
        #[serde(default)]
        c: Vec<f64>,
        #[serde(default)]
        d: Vec<f64>,
    },
    ComplexFourier {
        alpha: Vec<AlphaEntry>,
    },
    EpsilonOptimal {
        epsilon: f64,
        sign: Sign,
    },
    CustomProduct {
        phi: String,
        psi: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphaEntry {
    pub n: i32,
    pub m: i32,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Max,
    Min,
}

/// Why a spec could not be turned into a generator.
#[derive(Debug)]
pub enum SpecError {
    /// Malformed expression text.
    Syntax(String),
    /// Well-formed but outside the family's parameter domain.
    Domain(c2copula::Error),
}

impl From<c2copula::Error> for SpecError {
    fn from(e: c2copula::Error) -> Self {
        SpecError::Domain(e)
    }
}

fn syntax(which: &str, e: ParseError) -> SpecError {
    SpecError::Syntax(format!("{which}: {e}"))
}

impl Spec {
    pub fn parse(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_generator(&self) -> Result<Generator, SpecError> {
        Ok(match self {
            Spec::Independence {} => Generator::Zero,
            Spec::Fgm { theta } => Fgm::new(*theta)?.into(),
            Spec::Frank { theta } => Frank::new(*theta)?.into(),
            Spec::Fourier { a, b, c, d } => {
                FourierCoefficients::new(a.clone(), b.clone(), c.clone(), d.clone())?.into()
            }
            Spec::ComplexFourier { alpha } => {
                ComplexFourierCoefficients::new(alpha.iter().map(|e| (e.n, e.m, Complex64::new(e.re, e.im))))?.into()
            }
            Spec::EpsilonOptimal { epsilon, sign } => {
                let extremum = match sign {
                    Sign::Max => Extremum::Max,
                    Sign::Min => Extremum::Min,
                };
                EpsilonFamily::new(*epsilon, extremum)?.into()
            }
            Spec::CustomProduct { phi, psi } => {
                let phi_expr = Arc::new(Expr::parse(phi, &["x"]).map_err(|e| syntax("phi", e))?);
                let psi_expr = Arc::new(Expr::parse(psi, &["x", "y"]).map_err(|e| syntax("psi", e))?);
                ProductGenerator::new(
                    format!("custom_product({phi}; {psi})"),
                    move |x| phi_expr.eval(x),
                    move |y| psi_expr.eval(y),
                )
                .into()
            }
        })
    }
}
