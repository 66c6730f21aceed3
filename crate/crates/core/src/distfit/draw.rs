//! Seeded inverse-CDF sampling on the integer support.

use super::Distribution;
use crate::special::zeta;
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Past this point the cumulative walk gives way to a log-space search of the survival function.
const WALK_LIMIT: u64 = 4096;
const SEARCH_CAP: u64 = 1 << 53;

/// `n` i.i.d. draws, deterministic in `seed`.
///
/// Draws follow each family's natural support: the Poisson may return 0, every other discrete
/// family starts at 1. The continuous log-logistic is rejected.
pub fn sample_from(dist: &Distribution, n: usize, seed: u64) -> Result<Vec<u64>> {
    dist.validate()?;
    if n == 0 {
        return Err(Error::Precondition("sample size must be >= 1".into()));
    }
    if !dist.family().is_discrete() {
        return Err(Error::Domain("cannot draw integers from the log-logistic".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zeta_alpha = match *dist {
        Distribution::PowerLaw { alpha } => zeta(alpha),
        _ => 0.0,
    };
    Ok((0..n)
        .map(|_| {
            let u: f64 = rng.random();
            draw_one(dist, u, zeta_alpha)
        })
        .collect())
}

/// Smallest x with F(x) ≥ u.
fn draw_one(dist: &Distribution, u: f64, zeta_alpha: f64) -> u64 {
    let target = 1.0 - u; // find smallest x with S(x) ≤ target
    match *dist {
        Distribution::Geometric { p } => {
            if p >= 1.0 {
                return 1;
            }
            let x = (target.ln() / (-p).ln_1p()).ceil();
            (x.max(1.0) as u64).min(SEARCH_CAP)
        }
        Distribution::Poisson { lambda } => {
            let limit = (lambda + 60.0 * lambda.sqrt() + 100.0) as u64;
            if lambda < 700.0 {
                let mut pmf = (-lambda).exp();
                let mut cdf = pmf;
                let mut x = 0u64;
                while cdf < u && x < limit {
                    x += 1;
                    pmf *= lambda / x as f64;
                    cdf += pmf;
                }
                x
            } else {
                walk_ln_pmf(|x| dist.ln_pmf_unchecked_zero(x), 0, u, limit)
            }
        }
        Distribution::NegativeBinomial { r, theta } => {
            let mean = r * (1.0 - theta) / theta;
            let sd = (mean / theta).sqrt();
            let limit = (mean + 60.0 * sd + 100.0).min(SEARCH_CAP as f64) as u64;
            let p0 = r * theta.ln();
            if p0 > -700.0 {
                let mut pmf = p0.exp();
                let mut cdf = pmf;
                let mut y = 0u64;
                while cdf < u && y < limit {
                    pmf *= (y as f64 + r) / (y as f64 + 1.0) * (1.0 - theta);
                    y += 1;
                    cdf += pmf;
                }
                y + 1
            } else {
                walk_ln_pmf(|x| dist.ln_pmf_unchecked(x), 1, u, limit)
            }
        }
        Distribution::YuleSimon { rho } => {
            // S(x) = S(x−1) · x / (x + ρ)
            let mut s = 1.0;
            for x in 1..=WALK_LIMIT {
                s *= x as f64 / (x as f64 + rho);
                if s <= target {
                    return x;
                }
            }
            search_survival(dist, WALK_LIMIT, target)
        }
        Distribution::PowerLaw { alpha } => {
            let mut s = 1.0;
            for x in 1..=WALK_LIMIT {
                s -= (x as f64).powf(-alpha) / zeta_alpha;
                if s <= target {
                    return x;
                }
            }
            search_survival(dist, WALK_LIMIT, target)
        }
        Distribution::LogLogistic { .. } => unreachable!(),
    }
}

impl Distribution {
    /// Poisson ln pmf including x = 0.
    fn ln_pmf_unchecked_zero(&self, x: u64) -> f64 {
        match *self {
            Distribution::Poisson { lambda } if x == 0 => -lambda,
            _ => self.ln_pmf_unchecked(x),
        }
    }
}

fn walk_ln_pmf<F: Fn(u64) -> f64>(ln_pmf: F, start: u64, u: f64, limit: u64) -> u64 {
    let mut x = start;
    let mut cdf = ln_pmf(x).exp();
    while cdf < u && x < limit {
        x += 1;
        cdf += ln_pmf(x).exp();
    }
    x
}

/// Smallest x > `from` with S(x) ≤ target, by doubling then bisection on ln S.
fn search_survival(dist: &Distribution, from: u64, target: f64) -> u64 {
    let ln_target = target.ln();
    let mut lo = from; // S(lo) > target
    let mut hi = from.saturating_mul(2);
    while dist.ln_survival(hi) > ln_target {
        if hi >= SEARCH_CAP {
            return SEARCH_CAP;
        }
        lo = hi;
        hi = hi.saturating_mul(2).min(SEARCH_CAP);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if dist.ln_survival(mid) > ln_target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_geometric() {
        let v = sample_from(&Distribution::Geometric { p: 1.0 }, 1000, 7).unwrap();
        assert!(v.iter().all(|&x| x == 1));
    }

    #[test]
    fn deterministic_in_seed() {
        let d = Distribution::YuleSimon { rho: 1.804 };
        assert_eq!(sample_from(&d, 500, 42).unwrap(), sample_from(&d, 500, 42).unwrap());
        assert_ne!(sample_from(&d, 500, 42).unwrap(), sample_from(&d, 500, 43).unwrap());
    }

    #[test]
    fn poisson_mean() {
        let v = sample_from(&Distribution::Poisson { lambda: 2.0 }, 100_000, 1).unwrap();
        let mean = v.iter().sum::<u64>() as f64 / v.len() as f64;
        assert!((mean - 2.0).abs() < 0.02, "{mean}");
        assert!(v.contains(&0));
    }

    #[test]
    fn empirical_frequencies_match_pmf() {
        let n = 200_000;
        for d in [
            Distribution::YuleSimon { rho: 1.3 },
            Distribution::PowerLaw { alpha: 2.2 },
            Distribution::NegativeBinomial { r: 2.5, theta: 0.4 },
            Distribution::Geometric { p: 0.35 },
        ] {
            let v = sample_from(&d, n, 5).unwrap();
            for x in 1..=4u64 {
                let freq = v.iter().filter(|&&y| y == x).count() as f64 / n as f64;
                let p = d.pmf(x).unwrap();
                let se = (p * (1.0 - p) / n as f64).sqrt();
                assert!((freq - p).abs() < 5.0 * se, "{d:?} x={x}: {freq} vs {p}");
            }
        }
    }

    #[test]
    fn heavy_tail_search_agrees_with_survival() {
        // Force the search path with values far past the walk limit.
        let d = Distribution::YuleSimon { rho: 0.5 };
        for target in [1e-3, 1e-5, 1e-7] {
            let x = search_survival(&d, WALK_LIMIT, target);
            assert!(d.ln_survival(x) <= target.ln());
            assert!(d.ln_survival(x - 1) > target.ln());
        }
        let d = Distribution::PowerLaw { alpha: 1.5 };
        let x = search_survival(&d, WALK_LIMIT, 1e-3);
        assert!(d.ln_survival(x) <= 1e-3f64.ln() && d.ln_survival(x - 1) > 1e-3f64.ln());
    }

    #[test]
    fn rejects_continuous_and_bad_params() {
        assert!(sample_from(&Distribution::LogLogistic { scale: 1.0, shape: 1.0 }, 3, 0).is_err());
        assert!(sample_from(&Distribution::YuleSimon { rho: -1.0 }, 3, 0).is_err());
    }
}
