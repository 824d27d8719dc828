use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use c2copula::families::{archimedean_h, FrankGenerator, TrigSeries};
use c2copula::measures::{fourier_rho_closed, fourier_tau_closed, rho_numeric};
use c2copula::sampler::{empirical_rho, invert_conditional};
use c2copula::{
    build_copula, sample, Copula, EpsilonFamily, Extremum, Fgm, FourierCoefficients, Frank, Generator, QuadratureRule,
};

fn shipped() -> Vec<(&'static str, Copula)> {
    vec![
        ("frank -10", build_copula(Frank::new(-10.0).unwrap())),
        ("frank 5", build_copula(Frank::new(5.0).unwrap())),
        ("fgm -0.5", build_copula(Fgm::new(-0.5).unwrap())),
        (
            "fourier example",
            build_copula(FourierCoefficients::new(vec![0.0], vec![1.0], vec![1.0], vec![0.0]).unwrap()),
        ),
        (
            "epsilon 0.1",
            build_copula(EpsilonFamily::new(0.1, Extremum::Max).unwrap()),
        ),
        (
            "epsilon 1 min",
            build_copula(EpsilonFamily::new(1.0, Extremum::Min).unwrap()),
        ),
    ]
}

/// Coefficients with up to four harmonics per axis, scaled to norm `lambda`.
fn fourier_strategy() -> impl Strategy<Value = FourierCoefficients> {
    let axis = (1usize..=4).prop_flat_map(|n| {
        (
            prop::collection::vec(-1.0f64..1.0, n),
            prop::collection::vec(-1.0f64..1.0, n),
        )
    });
    (axis.clone(), axis, 0.0f64..=1.0).prop_filter_map("nonzero axes", |((a, b), (c, d), lambda)| {
        let u = TrigSeries::new(a.clone(), b.clone()).ok()?;
        let v = TrigSeries::new(c.clone(), d.clone()).ok()?;
        let (su, sv) = (u.amplitude_l1(), v.amplitude_l1());
        if su < 1e-6 || sv < 1e-6 {
            return None;
        }
        let ku = lambda.sqrt() / su;
        let kv = lambda.sqrt() / sv;
        let scale = |xs: Vec<f64>, k: f64| xs.into_iter().map(|x| x * k).collect::<Vec<_>>();
        FourierCoefficients::new(scale(a, ku), scale(b, ku), scale(c, kv), scale(d, kv)).ok()
    })
}

#[test]
fn partial_matches_central_difference() {
    let step = 1e-6;
    for (name, c) in shipped() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let u: f64 = rng.random_range(0.01..0.99);
            let v: f64 = rng.random_range(0.0..=1.0);
            let fd = (c.cdf(u + step, v) - c.cdf(u - step, v)) / (2.0 * step);
            let exact = c.partial_u(u, v).unwrap();
            assert!((fd - exact).abs() <= 1e-6, "{name} ({u}, {v}): {exact} vs {fd}");
        }
    }
}

#[test]
fn monotone_along_grid_lines() {
    let n = 41;
    for (name, c) in shipped() {
        for i in 0..n {
            let x = i as f64 / (n - 1) as f64;
            for j in 1..n {
                let (a, b) = ((j - 1) as f64 / (n - 1) as f64, j as f64 / (n - 1) as f64);
                assert!(c.cdf(x, b) >= c.cdf(x, a) - 1e-15, "{name}");
                assert!(c.cdf(b, x) >= c.cdf(a, x) - 1e-15, "{name}");
            }
        }
    }
}

#[test]
fn inversion_residual_over_families() {
    for (name, c) in shipped() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..1000 {
            let (u, w): (f64, f64) = (rng.random(), rng.random());
            let v = invert_conditional(&c, u, w).unwrap();
            assert!((c.partial_u(u, v).unwrap() - w).abs() <= 1e-10, "{name} u={u} w={w}");
        }
    }
}

#[test]
fn monte_carlo_rho_matches_quadrature() {
    let rule = QuadratureRule::default();
    let n = 200_000;
    for (name, c) in shipped() {
        let target = rho_numeric(&c, &rule).unwrap();
        let batch = sample(&c, n, 99).unwrap();
        let rho = empirical_rho(&batch.pairs).unwrap();
        assert!(
            (rho - target).abs() <= 0.015,
            "{name}: empirical {rho}, quadrature {target}"
        );
    }
}

#[test]
fn uniform_marginals_of_samples() {
    let c = build_copula(FourierCoefficients::new(vec![0.0], vec![1.0], vec![0.0], vec![1.0]).unwrap());
    let batch = sample(&c, 100_000, 2).unwrap();
    let ks = |mut xs: Vec<f64>| {
        xs.sort_by(f64::total_cmp);
        let n = xs.len() as f64;
        xs.iter()
            .enumerate()
            .map(|(i, &x)| (x - i as f64 / n).abs().max(((i + 1) as f64 / n - x).abs()))
            .fold(0.0, f64::max)
    };
    assert!(ks(batch.us().collect()) <= 0.006);
    assert!(ks(batch.vs().collect()) <= 0.01);
}

#[test]
fn frank_density_from_archimedean_generator() {
    for theta in [-6.0, -0.7, 1.3, 9.0] {
        let gen = FrankGenerator::new(theta).unwrap();
        let frank = Frank::new(theta).unwrap();
        for &(u, v) in &[(0.1, 0.2), (0.5, 0.5), (0.8, 0.3), (0.95, 0.9)] {
            let a = archimedean_h(&gen, u, v).unwrap();
            assert!(
                (a - frank.h(u, v)).abs() <= 1e-9 * frank.density(u, v),
                "theta={theta} ({u},{v})"
            );
        }
    }
}

#[test]
fn fgm_rho_is_linear() {
    let rule = QuadratureRule::default();
    let ratios: Vec<f64> = [0.25, 0.5, 1.0, -0.75]
        .iter()
        .map(|&t| rho_numeric(&build_copula(Fgm::new(t).unwrap()), &rule).unwrap() / t)
        .collect();
    for r in &ratios {
        assert!((r - ratios[0]).abs() <= 1e-10);
    }
    assert!((ratios[0] - 1.0 / 3.0).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fourier_measures_share_one_sum(fc in fourier_strategy()) {
        let rho = fourier_rho_closed(&fc);
        let tau = fourier_tau_closed(&fc);
        prop_assert!((2.0 * rho - 3.0 * tau).abs() <= 1e-14);
        prop_assert!(rho.abs() <= 3.0 / std::f64::consts::PI.powi(2) + 1e-12);
    }

    #[test]
    fn negating_d_negates_measures(fc in fourier_strategy()) {
        let neg: Vec<f64> = fc.d().iter().map(|x| -x).collect();
        let flipped = FourierCoefficients::new(fc.a().to_vec(), fc.b().to_vec(), fc.c().to_vec(), neg).unwrap();
        prop_assert_eq!(fourier_rho_closed(&flipped), -fourier_rho_closed(&fc));
        prop_assert_eq!(fourier_tau_closed(&flipped), -fourier_tau_closed(&fc));
    }

    #[test]
    fn fourier_copula_is_a_copula(fc in fourier_strategy(), u in 0.0f64..=1.0, v in 0.0f64..=1.0, du in 0.0f64..0.2, dv in 0.0f64..0.2) {
        let g: Generator = fc.into();
        prop_assert!(g.h(u, v) >= -1.0 - 1e-12);
        let c = build_copula(g);
        let x = c.cdf(u, v);
        prop_assert!(x >= (u + v - 1.0).max(0.0) - 1e-12 && x <= u.min(v) + 1e-12);
        prop_assert!((c.cdf(u, 1.0) - u).abs() <= 1e-12);
        prop_assert!(c.cdf(0.0, v).abs() <= 1e-12);
        let (u2, v2) = ((u + du).min(1.0), (v + dv).min(1.0));
        let mass = c.cdf(u2, v2) + c.cdf(u, v) - c.cdf(u, v2) - c.cdf(u2, v);
        prop_assert!(mass >= -1e-12);
    }

    #[test]
    fn frank_reflection(theta in 0.05f64..40.0, u in 0.0f64..=1.0, v in 0.0f64..=1.0) {
        let pos = Frank::new(theta).unwrap();
        let neg = Frank::new(-theta).unwrap();
        prop_assert!((neg.cdf(u, v) - (u - pos.cdf(u, 1.0 - v))).abs() <= 1e-13);
        prop_assert!((pos.cdf(u, v) - pos.cdf(v, u)).abs() <= 1e-14);
    }

    #[test]
    fn epsilon_family_is_a_copula(eps in 1e-3f64..2.0, u in 0.0f64..=1.0, v in 0.0f64..=1.0) {
        for extremum in [Extremum::Max, Extremum::Min] {
            let fam = EpsilonFamily::new(eps, extremum).unwrap();
            prop_assert!(fam.h(u, v) >= -1.0 - 1e-12);
            let x = fam.cdf(u, v);
            prop_assert!(x >= (u + v - 1.0).max(0.0) - 1e-12 && x <= u.min(v) + 1e-12);
            prop_assert!((fam.tau() - 2.0 * fam.rho() / 3.0).abs() <= 1e-14);
        }
    }
}
