//! Candidate randomness models: probability mass functions, likelihoods and MLE fits.
//!
//! All discrete families live on the support x ≥ 1, the range of collection frequencies.
//! Poisson is used with its standard, untruncated pmf; negative binomial is shifted by one
//! (evaluated at x − 1). The log-logistic is continuous and is only fitted to draw comparison
//! curves; it never takes part in model selection.

mod draw;
mod fit;

pub use draw::sample_from;
pub use fit::{fit_all, fit_mle, nelder_mead, GoldenSection};

use crate::sample::FrequencySample;
use crate::special::{hurwitz_zeta, ln_factorial, ln_gamma, zeta, NeumaierSum};
use crate::{Error, Result};
use std::fmt::{self, Write as _};
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Geometric,
    LogLogistic,
    NegativeBinomial,
    Poisson,
    PowerLaw,
    YuleSimon,
}

impl Family {
    /// The five discrete candidates eligible for model selection, in name order.
    pub const DISCRETE: [Family; 5] = [
        Family::Geometric,
        Family::NegativeBinomial,
        Family::Poisson,
        Family::PowerLaw,
        Family::YuleSimon,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Geometric => "geometric",
            Family::LogLogistic => "log_logistic",
            Family::NegativeBinomial => "negative_binomial",
            Family::Poisson => "poisson",
            Family::PowerLaw => "power_law",
            Family::YuleSimon => "yule_simon",
        }
    }

    pub fn is_discrete(self) -> bool {
        self != Family::LogLogistic
    }

    /// Number of free parameters.
    pub fn num_params(self) -> usize {
        match self {
            Family::NegativeBinomial | Family::LogLogistic => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "geometric" => Family::Geometric,
            "log_logistic" => Family::LogLogistic,
            "negative_binomial" => Family::NegativeBinomial,
            "poisson" => Family::Poisson,
            "power_law" => Family::PowerLaw,
            "yule_simon" => Family::YuleSimon,
            other => return Err(Error::Domain(format!("unknown family `{other}`"))),
        })
    }
}

/// A family with concrete parameter values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Distribution {
    /// (1 − p)^(x−1) p, p ∈ (0, 1].
    Geometric { p: f64 },
    /// e^(−λ) λ^x / x!, λ > 0.
    Poisson { lambda: f64 },
    /// Γ(y + r) / (Γ(r) y!) θ^r (1 − θ)^y at y = x − 1; r > 0, θ ∈ (0, 1).
    NegativeBinomial { r: f64, theta: f64 },
    /// x^(−α) / ζ(α), α > 1.
    PowerLaw { alpha: f64 },
    /// ρ Γ(x) Γ(ρ + 1) / Γ(x + ρ + 1), ρ > 0.
    YuleSimon { rho: f64 },
    /// Continuous density (β/s)(x/s)^(β−1) / (1 + (x/s)^β)², s, β > 0.
    LogLogistic { scale: f64, shape: f64 },
}

impl Distribution {
    pub fn family(&self) -> Family {
        match self {
            Distribution::Geometric { .. } => Family::Geometric,
            Distribution::Poisson { .. } => Family::Poisson,
            Distribution::NegativeBinomial { .. } => Family::NegativeBinomial,
            Distribution::PowerLaw { .. } => Family::PowerLaw,
            Distribution::YuleSimon { .. } => Family::YuleSimon,
            Distribution::LogLogistic { .. } => Family::LogLogistic,
        }
    }

    /// Named parameter values in a fixed order.
    pub fn params(&self) -> Vec<(&'static str, f64)> {
        match *self {
            Distribution::Geometric { p } => vec![("p", p)],
            Distribution::Poisson { lambda } => vec![("lambda", lambda)],
            Distribution::NegativeBinomial { r, theta } => vec![("r", r), ("theta", theta)],
            Distribution::PowerLaw { alpha } => vec![("alpha", alpha)],
            Distribution::YuleSimon { rho } => vec![("rho", rho)],
            Distribution::LogLogistic { scale, shape } => {
                vec![("scale", scale), ("shape", shape)]
            }
        }
    }

    /// Builds from named parameters, validating the domain.
    pub fn from_params(family: Family, params: &[(String, f64)]) -> Result<Self> {
        let get = |name: &str| {
            params
                .iter()
                .find(|(k, _)| k == name)
                .map(|&(_, v)| v)
                .ok_or_else(|| Error::Domain(format!("{family} needs parameter `{name}`")))
        };
        let d = match family {
            Family::Geometric => Distribution::Geometric { p: get("p")? },
            Family::Poisson => Distribution::Poisson {
                lambda: get("lambda")?,
            },
            Family::NegativeBinomial => Distribution::NegativeBinomial {
                r: get("r")?,
                theta: get("theta")?,
            },
            Family::PowerLaw => Distribution::PowerLaw {
                alpha: get("alpha")?,
            },
            Family::YuleSimon => Distribution::YuleSimon { rho: get("rho")? },
            Family::LogLogistic => Distribution::LogLogistic {
                scale: get("scale")?,
                shape: get("shape")?,
            },
        };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Distribution::Geometric { p } => p > 0.0 && p <= 1.0,
            Distribution::Poisson { lambda } => lambda > 0.0 && lambda.is_finite(),
            Distribution::NegativeBinomial { r, theta } => {
                r > 0.0 && r.is_finite() && theta > 0.0 && theta < 1.0
            }
            Distribution::PowerLaw { alpha } => alpha > 1.0 && alpha.is_finite(),
            Distribution::YuleSimon { rho } => rho > 0.0 && rho.is_finite(),
            Distribution::LogLogistic { scale, shape } => {
                scale > 0.0 && scale.is_finite() && shape > 0.0 && shape.is_finite()
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("{self:?}")))
        }
    }

    /// P(x) for x ≥ 1 (the density at x for the log-logistic).
    pub fn pmf(&self, x: u64) -> Result<f64> {
        Ok(self.ln_pmf(x)?.exp())
    }

    /// ln P(x), computed in log space. Zero-probability points give −∞.
    pub fn ln_pmf(&self, x: u64) -> Result<f64> {
        self.validate()?;
        if x == 0 {
            return Err(Error::Domain("support starts at x = 1".into()));
        }
        Ok(self.ln_pmf_unchecked(x))
    }

    /// Log-likelihood Σ ln P(x_i) over the sample.
    pub fn log_likelihood(&self, sample: &FrequencySample) -> Result<f64> {
        self.validate()?;
        Ok(self.log_likelihood_unchecked(sample))
    }

    pub(crate) fn log_likelihood_unchecked(&self, sample: &FrequencySample) -> f64 {
        match *self {
            Distribution::PowerLaw { alpha } => {
                -alpha * sample.sum_ln() - sample.len() as f64 * zeta(alpha).ln()
            }
            _ => {
                let mut acc = NeumaierSum::default();
                for &(x, c) in sample.histogram() {
                    let lp = self.ln_pmf_unchecked(x);
                    if lp == f64::NEG_INFINITY {
                        return f64::NEG_INFINITY;
                    }
                    acc.add(c as f64 * lp);
                }
                acc.value()
            }
        }
    }

    pub(crate) fn ln_pmf_unchecked(&self, x: u64) -> f64 {
        let xf = x as f64;
        match *self {
            Distribution::Geometric { p } => {
                if x == 1 {
                    p.ln()
                } else {
                    (xf - 1.0) * (-p).ln_1p() + p.ln()
                }
            }
            Distribution::Poisson { lambda } => xf * lambda.ln() - lambda - ln_factorial(x),
            Distribution::NegativeBinomial { r, theta } => {
                let y = x - 1;
                let yf = y as f64;
                let tail = if y == 0 { 0.0 } else { yf * (-theta).ln_1p() };
                ln_gamma(yf + r) - ln_gamma(r) - ln_factorial(y) + r * theta.ln() + tail
            }
            Distribution::PowerLaw { alpha } => -alpha * xf.ln() - zeta(alpha).ln(),
            Distribution::YuleSimon { rho } => {
                rho.ln() + ln_gamma(xf) + ln_gamma(rho + 1.0) - ln_gamma(xf + rho + 1.0)
            }
            Distribution::LogLogistic { scale, shape } => {
                let z = shape * (xf.ln() - scale.ln());
                shape.ln() - scale.ln() + (shape - 1.0) * (xf.ln() - scale.ln())
                    - 2.0 * softplus(z)
            }
        }
    }

    /// P(X > x) for the discrete families in log space; used by the sampler.
    pub(crate) fn ln_survival(&self, x: u64) -> f64 {
        let xf = x as f64;
        match *self {
            Distribution::Geometric { p } => xf * (-p).ln_1p(),
            Distribution::YuleSimon { rho } => {
                ln_gamma(xf + 1.0) + ln_gamma(rho + 1.0) - ln_gamma(xf + rho + 1.0)
            }
            Distribution::PowerLaw { alpha } => {
                hurwitz_zeta(alpha, xf + 1.0).ln() - zeta(alpha).ln()
            }
            _ => unreachable!("ln_survival only for closed-form tails"),
        }
    }
}

/// ln(1 + e^z) without overflow.
fn softplus(z: f64) -> f64 {
    if z > 30.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

/// A fitted candidate.
#[derive(Debug, Clone, PartialEq)]
pub struct FittedModel {
    pub dist: Distribution,
    /// Maximized log-likelihood.
    pub log_likelihood: f64,
    /// Sample size.
    pub n: u64,
    /// The optimum sits on the edge of the search space (degenerate sample).
    pub boundary: bool,
}

impl FittedModel {
    pub fn family(&self) -> Family {
        self.dist.family()
    }

    pub fn k(&self) -> usize {
        self.family().num_params()
    }

    /// Key/value block; floats use the shortest representation that round-trips.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "family {}", self.family());
        for (name, v) in self.dist.params() {
            let _ = writeln!(out, "param {name} {v}");
        }
        let _ = writeln!(out, "log_likelihood {}", self.log_likelihood);
        let _ = writeln!(out, "k {}", self.k());
        let _ = writeln!(out, "n {}", self.n);
        let _ = writeln!(out, "boundary {}", self.boundary);
        out
    }
}

/// Serializes several fits as blank-line separated blocks.
pub fn fits_to_text(fits: &[FittedModel]) -> String {
    fits.iter()
        .map(FittedModel::to_text)
        .collect::<Vec<_>>()
        .join("\n")
}

/// Parses the output of [`fits_to_text`].
pub fn parse_fits(text: &str) -> Result<Vec<FittedModel>> {
    #[derive(Default)]
    struct Partial {
        family: Option<Family>,
        params: Vec<(String, f64)>,
        ll: Option<f64>,
        n: Option<u64>,
        boundary: bool,
        line: usize,
    }
    fn finish(p: Partial) -> Result<FittedModel> {
        let family = p
            .family
            .ok_or_else(|| Error::parse(p.line, "block without family"))?;
        let dist = Distribution::from_params(family, &p.params)?;
        Ok(FittedModel {
            dist,
            log_likelihood: p
                .ll
                .ok_or_else(|| Error::parse(p.line, "missing log_likelihood"))?,
            n: p.n.ok_or_else(|| Error::parse(p.line, "missing n"))?,
            boundary: p.boundary,
        })
    }
    let num = |s: Option<&str>, line: usize| -> Result<f64> {
        s.and_then(|v| v.parse::<f64>().ok())
            .ok_or_else(|| Error::parse(line, "expected a number"))
    };
    let mut out = Vec::new();
    let mut cur: Option<Partial> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let mut it = raw.split_whitespace();
        let key = it.next().unwrap();
        if key == "family" {
            if let Some(p) = cur.take() {
                out.push(finish(p)?);
            }
            let fam = it
                .next()
                .ok_or_else(|| Error::parse(line, "missing family name"))?
                .parse()?;
            cur = Some(Partial {
                family: Some(fam),
                line,
                ..Default::default()
            });
            continue;
        }
        let p = cur
            .as_mut()
            .ok_or_else(|| Error::parse(line, "field before family"))?;
        match key {
            "param" => {
                let name = it
                    .next()
                    .ok_or_else(|| Error::parse(line, "missing parameter name"))?;
                p.params.push((name.to_owned(), num(it.next(), line)?));
            }
            "log_likelihood" => p.ll = Some(num(it.next(), line)?),
            "n" => {
                p.n = Some(
                    it.next()
                        .and_then(|v| v.parse().ok())
                        .ok_or_else(|| Error::parse(line, "bad n"))?,
                )
            }
            "k" => {}
            "boundary" => p.boundary = it.next() == Some("true"),
            other => return Err(Error::parse(line, format!("unknown key `{other}`"))),
        }
    }
    if let Some(p) = cur.take() {
        out.push(finish(p)?);
    }
    Ok(out)
}
