//! Conditional-inversion sampling and rank-based ρ, τ estimators.
//!
//! Each draw takes `U, W` uniform and solves `∂C/∂u(U, V) = W` for `V` by
//! bisection. Draws are generated in fixed-size chunks; chunk `k` uses stream
//! `k` of a ChaCha8 generator seeded with the user seed, so a batch is
//! identical whatever the thread count.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::copula::Copula;
use crate::error::{Error, Result};

/// Draws per RNG stream.
pub const CHUNK_SIZE: usize = 4096;
/// Width of the final bisection bracket.
pub const BISECTION_TOLERANCE: f64 = 1e-12;
/// Slack allowed on `∂C/∂u(u, 0) = 0` and `∂C/∂u(u, 1) = 1`.
const BRACKET_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch {
    pub pairs: Vec<(f64, f64)>,
    pub seed: u64,
    /// Name of the copula the batch was drawn from.
    pub source: String,
}

impl SampleBatch {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn us(&self) -> impl Iterator<Item = f64> + '_ {
        self.pairs.iter().map(|p| p.0)
    }

    pub fn vs(&self) -> impl Iterator<Item = f64> + '_ {
        self.pairs.iter().map(|p| p.1)
    }
}

/// Draws `n` pairs from `c`.
pub fn sample(c: &Copula, n: usize, seed: u64) -> Result<SampleBatch> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: 0.0,
            reason: "at least one draw is required",
        });
    }
    if c.partial_u(0.5, 0.5).is_none() {
        return Err(Error::MissingPartial(c.name().to_string()));
    }
    let chunks = n.div_ceil(CHUNK_SIZE);
    let parts: Vec<Vec<(f64, f64)>> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let len = CHUNK_SIZE.min(n - k * CHUNK_SIZE);
            (0..len)
                .map(|_| {
                    let u: f64 = rng.random();
                    let w: f64 = rng.random();
                    invert_conditional(c, u, w).map(|v| (u, v))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(SampleBatch {
        pairs: parts.into_iter().flatten().collect(),
        seed,
        source: c.name().to_string(),
    })
}

/// Solves `∂C/∂u(u, v) = w` for `v ∈ [0, 1]`.
pub fn invert_conditional(c: &Copula, u: f64, w: f64) -> Result<f64> {
    let f = |v: f64| -> Result<f64> {
        let value = c
            .partial_u(u, v)
            .ok_or_else(|| Error::MissingPartial(c.name().to_string()))?;
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::BracketingFailure { u, w })
        }
    };
    if f(0.0)? > w + BRACKET_SLACK || f(1.0)? < w - BRACKET_SLACK {
        return Err(Error::BracketingFailure { u, w });
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > BISECTION_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if f(mid)? < w {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn check_len(pairs: &[(f64, f64)]) -> Result<()> {
    if pairs.len() < 2 {
        return Err(Error::DegenerateSample("at least two pairs are required"));
    }
    if pairs.iter().any(|&(x, y)| x.is_nan() || y.is_nan()) {
        return Err(Error::DegenerateSample("sample contains NaN"));
    }
    Ok(())
}

/// Ranks starting at 1; tied values share their average rank.
fn midranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        let rank = 0.5 * ((i + 1) + j) as f64;
        for &k in &order[i..j] {
            ranks[k] = rank;
        }
        i = j;
    }
    ranks
}

/// Sample Spearman ρ: Pearson correlation of midranks.
pub fn empirical_rho(pairs: &[(f64, f64)]) -> Result<f64> {
    check_len(pairs)?;
    let xs: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let rx = midranks(&xs);
    let ry = midranks(&ys);
    let mean = (pairs.len() as f64 + 1.0) / 2.0;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in rx.iter().zip(&ry) {
        let (dx, dy) = (a - mean, b - mean);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::DegenerateSample("ranks have zero variance"));
    }
    Ok(sxy / (sxx * syy).sqrt())
}

/// Sample Kendall τ as `(concordant - discordant) / (n choose 2)`, with tied
/// pairs counting as neither. Runs in `O(n log n)` by counting inversions
/// with a merge sort.
pub fn empirical_tau(pairs: &[(f64, f64)]) -> Result<f64> {
    check_len(pairs)?;
    let mut sorted = pairs.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));

    let total = pair_count(sorted.len());
    let x_ties = tied_pairs(&sorted, |a, b| a.0 == b.0);
    let joint_ties = tied_pairs(&sorted, |a, b| a == b);

    let mut ys: Vec<f64> = sorted.iter().map(|p| p.1).collect();
    let mut buffer = vec![0.0; ys.len()];
    let swaps = merge_count(&mut ys, &mut buffer);
    let y_ties = tied_pairs(&ys, |a, b| a == b);

    if x_ties == total || y_ties == total {
        return Err(Error::DegenerateSample("all values tied in one coordinate"));
    }
    let net = total as i128 - x_ties as i128 - y_ties as i128 + joint_ties as i128 - 2 * swaps as i128;
    Ok(net as f64 / total as f64)
}

fn pair_count(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Pairs within runs of consecutive equal elements.
fn tied_pairs<T>(sorted: &[T], eq: impl Fn(&T, &T) -> bool) -> u64 {
    let mut ties = 0;
    let mut run = 1usize;
    for w in sorted.windows(2) {
        if eq(&w[0], &w[1]) {
            run += 1;
        } else {
            ties += pair_count(run);
            run = 1;
        }
    }
    ties + pair_count(run)
}

/// Stable merge sort of `values`, returning the number of strict inversions.
fn merge_count(values: &mut [f64], buffer: &mut [f64]) -> u64 {
    let n = values.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut swaps = {
        let (left, right) = values.split_at_mut(mid);
        let (bl, br) = buffer.split_at_mut(mid);
        merge_count(left, bl) + merge_count(right, br)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if values[j].total_cmp(&values[i]) == Ordering::Less {
            buffer[k] = values[j];
            swaps += (mid - i) as u64;
            j += 1;
        } else {
            buffer[k] = values[i];
            i += 1;
        }
        k += 1;
    }
    buffer[k..k + mid - i].copy_from_slice(&values[i..mid]);
    k += mid - i;
    buffer[k..k + n - j].copy_from_slice(&values[j..n]);
    values.copy_from_slice(&buffer[..n]);
    swaps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::copula::build_copula;
    use crate::families::FourierCoefficients;
    use proptest::prelude::{prop, prop_assert, prop_assert_eq, prop_assume, proptest};

    fn brute_tau(pairs: &[(f64, f64)]) -> f64 {
        let mut net = 0i64;
        for i in 0..pairs.len() {
            for j in (i + 1)..pairs.len() {
                let s = (pairs[i].0 - pairs[j].0).signum() * (pairs[i].1 - pairs[j].1).signum();
                let tied = pairs[i].0 == pairs[j].0 || pairs[i].1 == pairs[j].1;
                if !tied {
                    net += s as i64;
                }
            }
        }
        net as f64 / pair_count(pairs.len()) as f64
    }

    #[test]
    fn independence_inverts_to_w() {
        let batch = sample(&Copula::independence(), 10, 7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        rng.set_stream(0);
        for &(u, v) in &batch.pairs {
            let u0: f64 = rng.random();
            let w: f64 = rng.random();
            assert_eq!(u, u0);
            assert!((v - w).abs() <= 1e-12);
        }
    }

    #[test]
    fn deterministic_and_chunk_consistent() {
        let c = build_copula(FourierCoefficients::new(vec![0.0], vec![1.0], vec![0.0], vec![1.0]).unwrap());
        let a = sample(&c, CHUNK_SIZE + 17, 3).unwrap();
        let b = sample(&c, CHUNK_SIZE + 17, 3).unwrap();
        assert_eq!(a, b);
        let prefix = sample(&c, 100, 3).unwrap();
        assert_eq!(&a.pairs[..100], &prefix.pairs[..]);
        assert_ne!(a.pairs[0], sample(&c, 1, 4).unwrap().pairs[0]);
    }

    #[test]
    fn inversion_residual() {
        let c = build_copula(crate::families::Frank::new(8.0).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let (u, w): (f64, f64) = (rng.random(), rng.random());
            let v = invert_conditional(&c, u, w).unwrap();
            assert!((c.partial_u(u, v).unwrap() - w).abs() <= 1e-10);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(sample(&Copula::independence(), 0, 1).is_err());
        assert!(matches!(
            sample(&Copula::upper_frechet(), 3, 1),
            Err(Error::MissingPartial(_))
        ));
        let broken = build_copula(crate::generator::CustomGenerator::new("bad", |_, _| -3.0));
        assert!(matches!(
            invert_conditional(&broken, 0.5, 0.9),
            Err(Error::BracketingFailure { .. })
        ));
    }

    #[test]
    fn comonotone_ranks() {
        let pairs: Vec<(f64, f64)> = (0..50).map(|i| (i as f64 / 50.0, i as f64 / 50.0)).collect();
        assert_eq!(empirical_rho(&pairs).unwrap(), 1.0);
        assert_eq!(empirical_tau(&pairs).unwrap(), 1.0);
        let anti: Vec<(f64, f64)> = pairs.iter().map(|&(x, y)| (x, -y)).collect();
        assert_eq!(empirical_tau(&anti).unwrap(), -1.0);
        assert!((empirical_rho(&anti).unwrap() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_samples() {
        assert!(empirical_rho(&[(0.1, 0.2)]).is_err());
        assert!(empirical_rho(&[(0.1, 0.2), (0.1, 0.3)]).is_err());
        assert!(empirical_tau(&[(0.1, 0.2), (0.5, 0.2)]).is_err());
    }

    proptest! {
        #[test]
        fn tau_matches_brute_force(pairs in prop::collection::vec((0u8..6, 0u8..6), 2..60)) {
            let pairs: Vec<(f64, f64)> = pairs.into_iter().map(|(a, b)| (a as f64, b as f64)).collect();
            let x_const = pairs.iter().all(|p| p.0 == pairs[0].0);
            let y_const = pairs.iter().all(|p| p.1 == pairs[0].1);
            prop_assume!(!x_const && !y_const);
            let fast = empirical_tau(&pairs).unwrap();
            prop_assert!((fast - brute_tau(&pairs)).abs() < 1e-12);
        }

        #[test]
        fn estimators_are_rank_invariant(pairs in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 3..80)) {
            let moved: Vec<(f64, f64)> = pairs.iter().map(|&(x, y)| (x.exp(), 3.0 * y - 1.0)).collect();
            if let (Ok(a), Ok(b)) = (empirical_rho(&pairs), empirical_rho(&moved)) {
                prop_assert!((a - b).abs() < 1e-12);
                prop_assert!((-1.0..=1.0).contains(&a));
            }
            if let (Ok(a), Ok(b)) = (empirical_tau(&pairs), empirical_tau(&moved)) {
                prop_assert_eq!(a, b);
            }
        }
    }
}
