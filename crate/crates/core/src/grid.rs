//! Copula quantities sampled on a uniform grid, for contour plots.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::copula::Copula;
use crate::error::{Error, Location, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Cdf,
    Density,
    Generator,
}

impl FromStr for Quantity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "C" | "c" | "cdf" => Ok(Quantity::Cdf),
            "density" => Ok(Quantity::Density),
            "h" => Ok(Quantity::Generator),
            other => Err(format!("unknown quantity `{other}`; expected C, density or h")),
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantity::Cdf => "C",
            Quantity::Density => "density",
            Quantity::Generator => "h",
        })
    }
}

/// `n × n` values at `(i/(n-1), j/(n-1))`, row-major with `u` as the row.
#[derive(Debug, Clone, PartialEq)]
pub struct GridField {
    n: usize,
    quantity: Quantity,
    values: Vec<f64>,
}

impl GridField {
    pub fn evaluate(c: &Copula, n: usize, quantity: Quantity) -> Result<Self> {
        if n < 2 {
            return Err(Error::GridTooSmall { min: 2, got: n });
        }
        if quantity != Quantity::Cdf && c.generator().is_none() {
            return Err(Error::MissingDensity(c.name().to_string()));
        }
        let values: Vec<Vec<f64>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let u = coordinate(i, n);
                (0..n)
                    .map(|j| {
                        let v = coordinate(j, n);
                        let value = match quantity {
                            Quantity::Cdf => c.try_cdf(u, v)?,
                            Quantity::Density => c.density(u, v).expect("checked above"),
                            Quantity::Generator => c.h(u, v).expect("checked above"),
                        };
                        if value.is_finite() {
                            Ok(value)
                        } else {
                            Err(Error::NonFinite {
                                location: Location::Point2(u, v),
                                value,
                            })
                        }
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            n,
            quantity,
            values: values.into_iter().flatten().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn quantity(&self) -> Quantity {
        self.quantity
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn coordinate(&self, i: usize) -> f64 {
        coordinate(i, self.n)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    /// `(u, v, value)` in row-major order.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        (0..self.n)
            .flat_map(move |i| (0..self.n).map(move |j| (self.coordinate(i), self.coordinate(j), self.get(i, j))))
    }

    /// For a CDF field, the largest deviation of the edges from
    /// `C(·, 0) = C(0, ·) = 0`, `C(·, 1) = C(1, ·) = identity`.
    pub fn boundary_deviation(&self) -> Option<f64> {
        if self.quantity != Quantity::Cdf {
            return None;
        }
        let last = self.n - 1;
        let mut worst = 0.0f64;
        for k in 0..self.n {
            let x = self.coordinate(k);
            worst = worst
                .max(self.get(k, 0).abs())
                .max(self.get(0, k).abs())
                .max((self.get(k, last) - x).abs())
                .max((self.get(last, k) - x).abs());
        }
        Some(worst)
    }
}

fn coordinate(i: usize, n: usize) -> f64 {
    if i + 1 == n {
        1.0
    } else {
        i as f64 / (n - 1) as f64
    }
}
