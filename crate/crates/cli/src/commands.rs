use std::fmt::Write as _;
use std::io::Read;

use serde_json::json;

use c2copula::measures::{closed_form_measures, quadrature_measures};
use c2copula::optimal::{format_significant, table1 as table_rows};
use c2copula::{
    build_copula, check_axioms, sklar_compose, validate_generator, Copula, GridField, Marginal, QuadratureRule,
    Quantity,
};

use crate::spec::{Spec, SpecError};
use crate::{CliError, MethodArg};

/// Worst axiom breach tolerated by `validate`.
const AXIOM_TOLERANCE: f64 = 1e-9;

fn domain(e: c2copula::Error) -> CliError {
    CliError::Domain(e.to_string())
}

fn read_source(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))
    }
}

fn load(path: &str) -> Result<(Spec, Copula), CliError> {
    let text = read_source(path)?;
    let spec = Spec::parse(&text).map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
    let generator = spec.to_generator().map_err(|e| match e {
        SpecError::Syntax(msg) => CliError::Usage(format!("{path}: {msg}")),
        SpecError::Domain(e) => domain(e),
    })?;
    Ok((spec, build_copula(generator)))
}

fn pretty(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serialisable");
    text.push('\n');
    text
}

pub fn validate(path: &str, grid: usize) -> Result<String, CliError> {
    let (_, copula) = load(path)?;
    let generator = copula.generator().expect("built from a generator");
    let report = validate_generator(generator, grid, &QuadratureRule::default()).map_err(domain)?;
    let axioms = check_axioms(&copula, grid).map_err(domain)?;
    let passed = report.passed() && axioms.passes(AXIOM_TOLERANCE);
    let text = pretty(&json!({
        "family": copula.name(),
        "grid": grid,
        "passed": passed,
        "generator": report,
        "axioms": axioms,
        "axiom_tolerance": AXIOM_TOLERANCE,
    }));
    if passed {
        Ok(text)
    } else {
        Err(CliError::Rejected(text))
    }
}

pub fn measures(path: &str, method: MethodArg, order: usize) -> Result<String, CliError> {
    let (_, copula) = load(path)?;
    let generator = copula.generator().expect("built from a generator");
    let mut doc = json!({ "family": copula.name() });
    let closed = match method {
        MethodArg::Quadrature => None,
        MethodArg::Closed => Some(
            closed_form_measures(generator)
                .ok_or_else(|| CliError::Domain(format!("family `{}` has no closed-form measures", copula.name())))?,
        ),
        MethodArg::Both => closed_form_measures(generator),
    };
    if method != MethodArg::Quadrature {
        doc["closed_form"] = json!(closed);
    }
    if method != MethodArg::Closed {
        let rule = QuadratureRule::gauss_legendre(order).map_err(domain)?;
        let report = quadrature_measures(&copula, &rule).map_err(domain)?;
        doc["quadrature"] = json!(report);
        if let Some(c) = closed {
            doc["discrepancy"] = json!({
                "rho": (c.rho - report.rho).abs(),
                "tau": (c.tau - report.tau).abs(),
            });
        }
    }
    Ok(pretty(&doc))
}

pub fn table1(epsilons: &[f64]) -> Result<String, CliError> {
    let rows = table_rows(epsilons).map_err(domain)?;
    let mut out = String::from("epsilon,rho_max,rho_min,tau_max,tau_min\n");
    for r in rows {
        let cells = [r.rho_max, r.rho_min, r.tau_max, r.tau_min].map(|x| format_significant(x, 6));
        writeln!(out, "{},{}", r.epsilon, cells.join(",")).expect("string write");
    }
    Ok(out)
}

pub fn contour(path: &str, grid: usize, quantity: Quantity) -> Result<String, CliError> {
    let (_, copula) = load(path)?;
    let field = GridField::evaluate(&copula, grid, quantity).map_err(domain)?;
    let mut out = String::from("u,v,value\n");
    for (u, v, value) in field.points() {
        writeln!(out, "{u},{v},{value}").expect("string write");
    }
    Ok(out)
}

pub fn sample(path: &str, n: usize, seed: u64) -> Result<String, CliError> {
    let (_, copula) = load(path)?;
    let batch = c2copula::sample(&copula, n, seed).map_err(domain)?;
    let mut out = String::with_capacity(40 * n + 4);
    out.push_str("u,v\n");
    for (u, v) in batch.pairs {
        writeln!(out, "{u},{v}").expect("string write");
    }
    Ok(out)
}

pub fn compose(path: &str, marginal_x: &str, marginal_y: &str, (x, y): (f64, f64)) -> Result<String, CliError> {
    let (_, copula) = load(path)?;
    let f: Marginal = marginal_x.parse().map_err(domain)?;
    let g: Marginal = marginal_y.parse().map_err(domain)?;
    let h = sklar_compose(&copula, &f, &g, x, y).map_err(domain)?;
    Ok(pretty(&json!({
        "family": copula.name(),
        "marginal_x": f.to_string(),
        "marginal_y": g.to_string(),
        "x": x,
        "y": y,
        "H": h,
    })))
}
