//! Grid-based checks: generator hypotheses (`h ≥ -1`, vanishing marginal
//! integrals), copula axioms, and agreement between a closed form and the
//! integrated density.

use rayon::prelude::*;

use crate::copula::Copula;
use crate::error::{Error, Location, Result};
use crate::generator::Generator;
use crate::quadrature::{QuadratureRule, CUSTOM_ORDER};

/// Tolerance on `h ≥ -1`.
pub const RANGE_TOLERANCE: f64 = 1e-12;
/// Tolerance on the marginal integrals `∫ h dv`, `∫ h du`.
pub const MARGINAL_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_VALIDATION_GRID: usize = 201;
pub const DEFAULT_AXIOM_GRID: usize = 101;

/// One constraint breach. Marginal checks integrate out one coordinate, which
/// is then reported as `None`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Violation {
    pub magnitude: f64,
    pub u: Option<f64>,
    pub v: Option<f64>,
}

impl Violation {
    fn record(&mut self, magnitude: f64, u: Option<f64>, v: Option<f64>) {
        if magnitude > self.magnitude {
            *self = Violation { magnitude, u, v };
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ValidationReport {
    /// `h ≥ -1` on the grid.
    pub range_ok: bool,
    /// `∫₀¹ h(u, v) dv = 0` for every sampled `u`.
    pub marginal_u_ok: bool,
    /// `∫₀¹ h(u, v) du = 0` for every sampled `v`.
    pub marginal_v_ok: bool,
    pub range_violation: Violation,
    pub marginal_u_violation: Violation,
    pub marginal_v_violation: Violation,
    /// Largest of the three breaches above.
    pub worst_violation: Violation,
    pub probe_grid_size: usize,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.range_ok && self.marginal_u_ok && self.marginal_v_ok
    }
}

fn grid_points(n: usize) -> Vec<f64> {
    let step = 1.0 / (n - 1) as f64;
    (0..n).map(|i| if i + 1 == n { 1.0 } else { i as f64 * step }).collect()
}

fn effective_rule(g: &Generator, rule: &QuadratureRule) -> Result<QuadratureRule> {
    if !g.has_closed_form() && rule.order() < CUSTOM_ORDER {
        rule.with_order(CUSTOM_ORDER)
    } else {
        Ok(rule.clone())
    }
}

/// Checks the generator hypotheses on a uniform `grid_n × grid_n` grid. The
/// marginal integrals use `rule`, raised to order 128 for generators without
/// a closed form.
pub fn validate_generator(g: &Generator, grid_n: usize, rule: &QuadratureRule) -> Result<ValidationReport> {
    if grid_n < 3 {
        return Err(Error::GridTooSmall { min: 3, got: grid_n });
    }
    let rule = effective_rule(g, rule)?;
    let pts = grid_points(grid_n);

    let range_rows: Vec<Violation> = pts
        .par_iter()
        .map(|&u| {
            let mut worst = Violation::default();
            for &v in &pts {
                let h = g.h(u, v);
                if !h.is_finite() {
                    return Err(Error::NonFinite {
                        location: Location::Point2(u, v),
                        value: h,
                    });
                }
                worst.record(-1.0 - h, Some(u), Some(v));
            }
            Ok(worst)
        })
        .collect::<Result<_>>()?;
    let mut range = Violation::default();
    for row in range_rows {
        range.record(row.magnitude, row.u, row.v);
    }

    let marginals: Vec<(f64, f64)> = pts
        .par_iter()
        .map(|&x| {
            let over_v = rule.integrate(0.0, 1.0, |t| g.h(x, t))?;
            let over_u = rule.integrate(0.0, 1.0, |s| g.h(s, x))?;
            Ok((over_v, over_u))
        })
        .collect::<Result<_>>()?;
    let mut marginal_u = Violation::default();
    let mut marginal_v = Violation::default();
    for (&x, &(over_v, over_u)) in pts.iter().zip(&marginals) {
        marginal_u.record(over_v.abs(), Some(x), None);
        marginal_v.record(over_u.abs(), None, Some(x));
    }

    let mut worst = Violation::default();
    for v in [range, marginal_u, marginal_v] {
        worst.record(v.magnitude, v.u, v.v);
    }

    Ok(ValidationReport {
        range_ok: range.magnitude <= RANGE_TOLERANCE,
        marginal_u_ok: marginal_u.magnitude <= MARGINAL_TOLERANCE,
        marginal_v_ok: marginal_v.magnitude <= MARGINAL_TOLERANCE,
        range_violation: range,
        marginal_u_violation: marginal_u,
        marginal_v_violation: marginal_v,
        worst_violation: worst,
        probe_grid_size: grid_n,
    })
}

/// Worst breach of each copula axiom over a uniform grid.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct AxiomReport {
    /// `C(u, 0) = C(0, v) = 0`.
    pub grounded: Violation,
    /// `C(u, 1) = u`, `C(1, v) = v`.
    pub uniform_margins: Violation,
    /// Negative mass on rectangles between adjacent grid lines, reported at
    /// the lower-left corner.
    pub rectangle: Violation,
    /// `max(u + v - 1, 0) ≤ C ≤ min(u, v)`.
    pub frechet: Violation,
    /// Decrease of `C` along a grid line in either direction.
    pub monotone: Violation,
    pub grid_n: usize,
}

impl AxiomReport {
    pub fn worst(&self) -> f64 {
        [
            self.grounded,
            self.uniform_margins,
            self.rectangle,
            self.frechet,
            self.monotone,
        ]
        .iter()
        .map(|v| v.magnitude)
        .fold(0.0, f64::max)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.worst() <= tol
    }
}

/// Evaluates `C` on a `grid_n × grid_n` grid and reports the worst breach of
/// each axiom. Violations are data; only non-finite values are errors.
pub fn check_axioms(c: &Copula, grid_n: usize) -> Result<AxiomReport> {
    if grid_n < 3 {
        return Err(Error::GridTooSmall { min: 3, got: grid_n });
    }
    let pts = grid_points(grid_n);
    let rows: Vec<Vec<f64>> = pts
        .par_iter()
        .map(|&u| {
            pts.iter()
                .map(|&v| {
                    let value = c.try_cdf(u, v)?;
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
    let at = |i: usize, j: usize| rows[i][j];
    let last = grid_n - 1;

    let mut grounded = Violation::default();
    let mut uniform_margins = Violation::default();
    for (k, &x) in pts.iter().enumerate() {
        grounded.record(at(k, 0).abs(), Some(x), Some(0.0));
        grounded.record(at(0, k).abs(), Some(0.0), Some(x));
        uniform_margins.record((at(k, last) - x).abs(), Some(x), Some(1.0));
        uniform_margins.record((at(last, k) - x).abs(), Some(1.0), Some(x));
    }

    let mut rectangle = Violation::default();
    let mut frechet = Violation::default();
    let mut monotone = Violation::default();
    for i in 0..grid_n {
        for j in 0..grid_n {
            let (u, v) = (pts[i], pts[j]);
            let value = at(i, j);
            let lower = (u + v - 1.0).max(0.0);
            let upper = u.min(v);
            frechet.record((lower - value).max(value - upper), Some(u), Some(v));
            if i + 1 < grid_n {
                monotone.record(value - at(i + 1, j), Some(u), Some(v));
            }
            if j + 1 < grid_n {
                monotone.record(value - at(i, j + 1), Some(u), Some(v));
            }
            if i + 1 < grid_n && j + 1 < grid_n {
                let mass = at(i + 1, j + 1) + value - at(i, j + 1) - at(i + 1, j);
                rectangle.record(-mass, Some(u), Some(v));
            }
        }
    }

    Ok(AxiomReport {
        grounded,
        uniform_margins,
        rectangle,
        frechet,
        monotone,
        grid_n,
    })
}

/// Largest `|closed_form(u, v) - ∬₀^{u,v} (1 + h)|` over `grid_n × grid_n`
/// interior points `(i/(n+1), j/(n+1))`.
pub fn reconstruct_from_closed_form(c: &Copula, grid_n: usize) -> Result<f64> {
    reconstruct_with_rule(c, grid_n, &QuadratureRule::default())
}

pub fn reconstruct_with_rule(c: &Copula, grid_n: usize, rule: &QuadratureRule) -> Result<f64> {
    let g = c
        .generator()
        .ok_or_else(|| Error::MissingDensity(c.name().to_string()))?;
    if !g.has_closed_form() {
        return Err(Error::MissingClosedForm(c.name().to_string()));
    }
    if grid_n < 1 {
        return Err(Error::GridTooSmall { min: 1, got: grid_n });
    }
    let step = 1.0 / (grid_n + 1) as f64;
    let pts: Vec<f64> = (1..=grid_n).map(|i| i as f64 * step).collect();
    let deviations: Vec<f64> = pts
        .par_iter()
        .map(|&u| {
            let mut worst = 0.0f64;
            for &v in &pts {
                let closed = g.closed_form(u, v).expect("checked above");
                let integrated = c.integrated_cdf(u, v, rule)?;
                worst = worst.max((closed - integrated).abs());
            }
            Ok(worst)
        })
        .collect::<Result<_>>()?;
    Ok(deviations.into_iter().fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::copula::build_copula;
    use crate::families::{Fgm, Frank};
    use crate::generator::CustomGenerator;

    fn rule() -> QuadratureRule {
        QuadratureRule::default()
    }

    #[test]
    fn zero_generator_passes() {
        let r = validate_generator(&Generator::Zero, 21, &rule()).unwrap();
        assert!(r.passed());
        assert_eq!(r.worst_violation.magnitude, 0.0);
        assert_eq!(r.probe_grid_size, 21);
    }

    #[test]
    fn fgm_passes() {
        let r = validate_generator(&Fgm::new(1.0).unwrap().into(), 21, &rule()).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn constant_below_minus_one_fails_range() {
        let g = CustomGenerator::new("minus-two", |_, _| -2.0).into();
        let r = validate_generator(&g, 11, &rule()).unwrap();
        assert!(!r.range_ok);
        assert!((r.range_violation.magnitude - 1.0).abs() < 1e-15);
        // The marginal integrals are -2 as well, so they dominate.
        assert!((r.worst_violation.magnitude - 2.0).abs() < 1e-12);
    }

    #[test]
    fn u_shift_fails_marginal_u_only() {
        let g = CustomGenerator::new("shift", |u, _| u - 0.5).into();
        let r = validate_generator(&g, 11, &rule()).unwrap();
        assert!(!r.marginal_u_ok);
        assert!(r.marginal_v_ok);
        assert!(r.range_ok);
        assert!((r.marginal_u_violation.magnitude - 0.5).abs() < 1e-12);
    }

    #[test]
    fn non_finite_is_an_error() {
        let g = CustomGenerator::new("pole", |u, v| 1.0 / (u - 0.5) * 0.0 / v).into();
        assert!(matches!(
            validate_generator(&g, 11, &rule()),
            Err(Error::NonFinite { .. })
        ));
        assert!(validate_generator(&Generator::Zero, 2, &rule()).is_err());
    }

    #[test]
    fn frechet_bounds_are_copulas() {
        for c in [Copula::upper_frechet(), Copula::lower_frechet(), Copula::independence()] {
            let r = check_axioms(&c, 51).unwrap();
            assert!(r.passes(1e-15), "{}: {r:?}", c.name());
        }
    }

    #[test]
    fn non_copula_fails_margins() {
        let c = Copula::from_cdf("union", |u, v| u + v - u * v);
        let r = check_axioms(&c, 21).unwrap();
        assert!(r.uniform_margins.magnitude > 0.5);
        assert!(!r.passes(1e-9));
    }

    #[test]
    fn reconstruction() {
        let frank = build_copula(Frank::new(5.0).unwrap());
        assert!(reconstruct_from_closed_form(&frank, 9).unwrap() <= 1e-8);
        let fgm = build_copula(Fgm::new(-0.5).unwrap());
        assert!(reconstruct_from_closed_form(&fgm, 9).unwrap() <= 1e-10);
        let zero = build_copula(Generator::Zero);
        assert!(reconstruct_from_closed_form(&zero, 9).unwrap() <= 1e-12);
        let custom = build_copula(CustomGenerator::new("c", |_, _| 0.0));
        assert!(matches!(
            reconstruct_from_closed_form(&custom, 3),
            Err(Error::MissingClosedForm(_))
        ));
    }
}
