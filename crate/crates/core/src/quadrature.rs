//! Fixed-order 1-D and tensor-product 2-D quadrature.
//!
//! Every closed-form quantity in this crate (copula values, Spearman's rho,
//! Kendall's tau) is cross-checked against these rules. Two structurally
//! different rules are provided so that the oracles can themselves be
//! cross-checked: Gauss-Legendre and composite Simpson.
//!
//! A [`QuadratureRule`] stores its nodes and weights on the reference
//! interval `[0, 1]`; integration over `[lo, hi]` maps them affinely.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Location, Result};
use crate::sum::CompensatedSum;

/// Default order per axis for rho/tau oracles.
pub const DEFAULT_ORDER: usize = 64;
/// Order used near the non-smooth limit of the epsilon family.
pub const HIGH_ORDER: usize = 256;
/// Order used for user-supplied generators with no smoothness certificate.
pub const CUSTOM_ORDER: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum QuadratureKind {
    GaussLegendre,
    CompositeSimpson,
}

/// A fixed quadrature rule on `[0, 1]`.
///
/// For [`QuadratureKind::CompositeSimpson`] an even `order` is bumped to the
/// next odd node count, since Simpson's rule needs an even number of panels.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    kind: QuadratureKind,
    order: usize,
    nodes: Arc<[f64]>,
    weights: Arc<[f64]>,
}

impl Default for QuadratureRule {
    fn default() -> Self {
        Self::gauss_legendre(DEFAULT_ORDER).expect("default order is valid")
    }
}

impl QuadratureRule {
    pub fn new(kind: QuadratureKind, order: usize) -> Result<Self> {
        match kind {
            QuadratureKind::GaussLegendre => Self::gauss_legendre(order),
            QuadratureKind::CompositeSimpson => Self::composite_simpson(order),
        }
    }

    pub fn gauss_legendre(order: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidOrder(order));
        }
        let (nodes, weights) = legendre_nodes_weights(order);
        Ok(Self {
            kind: QuadratureKind::GaussLegendre,
            order,
            nodes: nodes.into(),
            weights: weights.into(),
        })
    }

    pub fn composite_simpson(order: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidOrder(order));
        }
        let count = if order % 2 == 0 { order + 1 } else { order };
        let panels = count - 1;
        let step = 1.0 / panels as f64;
        let nodes: Vec<f64> = (0..count).map(|i| i as f64 * step).collect();
        let weights: Vec<f64> = (0..count)
            .map(|i| {
                let c = if i == 0 || i == panels {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                c * step / 3.0
            })
            .collect();
        Ok(Self {
            kind: QuadratureKind::CompositeSimpson,
            order: count,
            nodes: nodes.into(),
            weights: weights.into(),
        })
    }

    pub fn kind(&self) -> QuadratureKind {
        self.kind
    }

    /// Number of nodes per axis.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Nodes on the reference interval `[0, 1]`.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Weights on the reference interval `[0, 1]`; they sum to one.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Same kind of rule with a different order.
    pub fn with_order(&self, order: usize) -> Result<Self> {
        Self::new(self.kind, order)
    }

    /// Approximates `∫_lo^hi f(x) dx`.
    pub fn integrate<F>(&self, lo: f64, hi: f64, f: F) -> Result<f64>
    where
        F: Fn(f64) -> f64,
    {
        check_interval(lo, hi)?;
        let len = hi - lo;
        let mut acc = CompensatedSum::new();
        for (&t, &w) in self.nodes.iter().zip(self.weights.iter()) {
            let x = lo + len * t;
            let fx = f(x);
            if !fx.is_finite() {
                return Err(Error::NonFinite {
                    location: Location::Point1(x),
                    value: fx,
                });
            }
            acc.add(w * fx);
        }
        Ok(len * acc.value())
    }

    /// Approximates `∬ f(s, t) ds dt` over `[u_lo, u_hi] × [v_lo, v_hi]` with
    /// the tensor product of this rule with itself.
    pub fn integrate_2d<F>(&self, (u_lo, u_hi): (f64, f64), (v_lo, v_hi): (f64, f64), f: F) -> Result<f64>
    where
        F: Fn(f64, f64) -> f64,
    {
        check_interval(u_lo, u_hi)?;
        check_interval(v_lo, v_hi)?;
        let (du, dv) = (u_hi - u_lo, v_hi - v_lo);
        let mut acc = CompensatedSum::new();
        for (&ti, &wi) in self.nodes.iter().zip(self.weights.iter()) {
            let s = u_lo + du * ti;
            for (&tj, &wj) in self.nodes.iter().zip(self.weights.iter()) {
                let t = v_lo + dv * tj;
                let value = f(s, t);
                if !value.is_finite() {
                    return Err(Error::NonFinite {
                        location: Location::Point2(s, t),
                        value,
                    });
                }
                acc.add(wi * wj * value);
            }
        }
        Ok(du * dv * acc.value())
    }

    /// `∬_{[0,u]×[0,v]} f`, the cumulative integral used to build copulas.
    pub fn integrate_rect<F>(&self, u: f64, v: f64, f: F) -> Result<f64>
    where
        F: Fn(f64, f64) -> f64,
    {
        self.integrate_2d((0.0, u), (0.0, v), f)
    }

    /// `∬_{[0,1]²} f`.
    pub fn integrate_unit_square<F>(&self, f: F) -> Result<f64>
    where
        F: Fn(f64, f64) -> f64,
    {
        self.integrate_2d((0.0, 1.0), (0.0, 1.0), f)
    }
}

fn check_interval(lo: f64, hi: f64) -> Result<()> {
    if lo.is_finite() && hi.is_finite() && lo <= hi {
        Ok(())
    } else {
        Err(Error::InvalidInterval { lo, hi })
    }
}

/// Gauss-Legendre nodes and weights mapped to `[0, 1]`, ascending.
fn legendre_nodes_weights(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n.div_ceil(2);
    for i in 0..half {
        // Tricomi initial guess, refined by Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // x is the i-th largest root on [-1, 1].
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        nodes[i] = 0.5 * (1.0 - x);
        weights[n - 1 - i] = 0.5 * w;
        weights[i] = 0.5 * w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    let d = n * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
