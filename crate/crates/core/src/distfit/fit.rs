//! Maximum-likelihood estimation.
//!
//! Closed forms for geometric (p̂ = 1/mean) and Poisson (λ̂ = mean). Yule–Simon ρ, power-law
//! α and negative-binomial r (with θ profiled out) are found by a log-scale grid scan over
//! [1e−6, 1e6] followed by golden-section refinement. The log-logistic uses Nelder–Mead.

use super::{Distribution, Family, FittedModel};
use crate::par::Exec;
use crate::sample::FrequencySample;
use crate::special::{ln_factorial, ln_gamma, NeumaierSum};
use crate::{Error, Result};

const LOG_LO: f64 = -13.815_510_557_964_274; // ln 1e-6
const LOG_HI: f64 = 13.815_510_557_964_274; // ln 1e6
const GRID_POINTS: usize = 241;
const REL_TOL: f64 = 1e-8;

/// One-dimensional maximizer: log-spaced scan then golden-section on the best bracket.
#[derive(Debug, Clone, Copy)]
pub struct GoldenSection {
    pub lo: f64,
    pub hi: f64,
    pub grid: usize,
    pub tol: f64,
}

impl Default for GoldenSection {
    fn default() -> Self {
        Self {
            lo: LOG_LO,
            hi: LOG_HI,
            grid: GRID_POINTS,
            tol: REL_TOL,
        }
    }
}

impl GoldenSection {
    /// Maximizes `f(u)` over `[lo, hi]`. Returns `(u*, f(u*), on_boundary)`.
    pub fn maximize<F: Fn(f64) -> f64>(&self, f: F) -> (f64, f64, bool) {
        let step = (self.hi - self.lo) / (self.grid - 1) as f64;
        let at = |i: usize| self.lo + step * i as f64;
        let mut best = 0;
        let mut best_v = f64::NEG_INFINITY;
        for i in 0..self.grid {
            let v = f(at(i));
            if v > best_v {
                best_v = v;
                best = i;
            }
        }
        let boundary = best == 0 || best == self.grid - 1;
        if boundary || !best_v.is_finite() {
            return (at(best), best_v, true);
        }
        let (mut a, mut b) = (at(best - 1), at(best + 1));
        let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
        let mut c = b - inv_phi * (b - a);
        let mut d = a + inv_phi * (b - a);
        let mut fc = f(c);
        let mut fd = f(d);
        while (b - a) > self.tol {
            if fc > fd {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = f(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = f(d);
            }
        }
        let u = 0.5 * (a + b);
        let v = f(u);
        if v >= best_v {
            (u, v, false)
        } else {
            (at(best), best_v, false)
        }
    }
}

fn yule_simon_ll(sample: &FrequencySample, rho: f64) -> f64 {
    let lg = ln_gamma(rho + 1.0);
    let lr = rho.ln();
    let mut acc = NeumaierSum::default();
    for &(x, c) in sample.histogram() {
        let xf = x as f64;
        acc.add(c as f64 * (lr + ln_gamma(xf) + lg - ln_gamma(xf + rho + 1.0)));
    }
    acc.value()
}

/// Profile log-likelihood of the shifted negative binomial at `r`, with θ̂(r) = r / (r + ȳ).
fn negbin_profile(sample: &FrequencySample, r: f64) -> (f64, f64) {
    let n = sample.len() as f64;
    let ybar = sample.mean() - 1.0;
    let theta = r / (r + ybar);
    let lgr = ln_gamma(r);
    let mut acc = NeumaierSum::default();
    for &(x, c) in sample.histogram() {
        let y = x - 1;
        acc.add(c as f64 * (ln_gamma(y as f64 + r) - lgr - ln_factorial(y)));
    }
    acc.add(n * r * theta.ln());
    if ybar > 0.0 {
        acc.add(n * ybar * (-theta).ln_1p());
    }
    (acc.value(), theta)
}

/// Fits one family by maximum likelihood.
pub fn fit_mle(family: Family, sample: &FrequencySample) -> Result<FittedModel> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    let mean = sample.mean();
    let all_ones = sample.max() == 1;
    let (dist, boundary) = match family {
        Family::Geometric => (Distribution::Geometric { p: 1.0 / mean }, false),
        Family::Poisson => (Distribution::Poisson { lambda: mean }, false),
        Family::YuleSimon => {
            let (u, _, edge) = GoldenSection::default().maximize(|u| yule_simon_ll(sample, u.exp()));
            (Distribution::YuleSimon { rho: u.exp() }, edge || all_ones)
        }
        Family::PowerLaw => {
            let ln_sum = sample.sum_ln();
            let n = sample.len() as f64;
            let (u, _, edge) = GoldenSection::default()
                .maximize(|u| {
                    let alpha = 1.0 + u.exp();
                    -alpha * ln_sum - n * crate::special::zeta(alpha).ln()
                });
            (Distribution::PowerLaw { alpha: 1.0 + u.exp() }, edge || all_ones)
        }
        Family::NegativeBinomial => {
            if all_ones {
                // Every θ̂ collapses to 1: keep the family in domain and flag it.
                let r = 1.0;
                let theta = 1.0 - 1e-12;
                (Distribution::NegativeBinomial { r, theta }, true)
            } else {
                let (u, _, edge) =
                    GoldenSection::default().maximize(|u| negbin_profile(sample, u.exp()).0);
                let r = u.exp();
                let (_, theta) = negbin_profile(sample, r);
                (Distribution::NegativeBinomial { r, theta }, edge)
            }
        }
        Family::LogLogistic => fit_log_logistic(sample)?,
    };
    dist.validate()?;
    let log_likelihood = dist.log_likelihood_unchecked(sample);
    Ok(FittedModel {
        dist,
        log_likelihood,
        n: sample.len(),
        boundary,
    })
}

/// Fits several families, in the order given.
pub fn fit_all(families: &[Family], sample: &FrequencySample, exec: Exec) -> Result<Vec<FittedModel>> {
    exec.map(families, |&f| fit_mle(f, sample)).into_iter().collect()
}

fn fit_log_logistic(sample: &FrequencySample) -> Result<(Distribution, bool)> {
    let objective = |v: &[f64; 2]| {
        let d = Distribution::LogLogistic {
            scale: v[0].exp(),
            shape: v[1].exp(),
        };
        -d.log_likelihood_unchecked(sample)
    };
    // Start at the median with unit shape.
    let half = sample.len().div_ceil(2);
    let mut seen = 0;
    let mut median = 1.0;
    for &(x, c) in sample.histogram() {
        seen += c;
        if seen >= half {
            median = x as f64;
            break;
        }
    }
    let mut start = [median.ln(), 0.0];
    let mut best = f64::INFINITY;
    // Restart from the optimum until it stops moving.
    for _ in 0..4 {
        let (x, fx) = nelder_mead(objective, start, 0.5, 1e-12, 4000);
        let settled = (best - fx).abs() <= 1e-10 * fx.abs().max(1.0);
        start = x;
        best = fx;
        if settled {
            break;
        }
    }
    let d = Distribution::LogLogistic {
        scale: start[0].exp(),
        shape: start[1].exp(),
    };
    Ok((d, !best.is_finite()))
}

/// Minimizes a 2-D function with the Nelder–Mead simplex method.
///
/// Standard coefficients (reflection 1, expansion 2, contraction ½, shrink ½). Stops when the
/// spread of simplex values falls below `ftol` (relative) or after `max_iter` iterations.
pub fn nelder_mead<F: Fn(&[f64; 2]) -> f64>(
    f: F,
    start: [f64; 2],
    step: f64,
    ftol: f64,
    max_iter: usize,
) -> ([f64; 2], f64) {
    let mut pts = [
        start,
        [start[0] + step, start[1]],
        [start[0], start[1] + step],
    ];
    let mut vals = pts.map(|p| f(&p));
    let lin = |a: &[f64; 2], b: &[f64; 2], t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
    for _ in 0..max_iter {
        // Order best..worst; ties keep index order.
        let mut order = [0usize, 1, 2];
        order.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
        pts = order.map(|i| pts[i]);
        vals = order.map(|i| vals[i]);
        let spread = (vals[2] - vals[0]).abs();
        if spread <= ftol * (vals[0].abs() + vals[2].abs()).max(1e-300) {
            break;
        }
        let centroid = [(pts[0][0] + pts[1][0]) / 2.0, (pts[0][1] + pts[1][1]) / 2.0];
        let reflected = lin(&centroid, &pts[2], -1.0);
        let fr = f(&reflected);
        if fr < vals[0] {
            let expanded = lin(&centroid, &pts[2], -2.0);
            let fe = f(&expanded);
            if fe < fr {
                pts[2] = expanded;
                vals[2] = fe;
            } else {
                pts[2] = reflected;
                vals[2] = fr;
            }
        } else if fr < vals[1] {
            pts[2] = reflected;
            vals[2] = fr;
        } else {
            let (contracted, fc) = if fr < vals[2] {
                let c = lin(&centroid, &reflected, 0.5);
                (c, f(&c))
            } else {
                let c = lin(&centroid, &pts[2], 0.5);
                (c, f(&c))
            };
            if fc < vals[2].min(fr) {
                pts[2] = contracted;
                vals[2] = fc;
            } else {
                for i in 1..3 {
                    pts[i] = lin(&pts[0], &pts[i], 0.5);
                    vals[i] = f(&pts[i]);
                }
            }
        }
    }
    let best = (0..3).min_by(|&i, &j| vals[i].total_cmp(&vals[j])).unwrap();
    (pts[best], vals[best])
}
