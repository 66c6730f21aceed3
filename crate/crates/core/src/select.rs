//! Choosing the randomness model: AIC ranking with Vuong closeness tests as confirmation.

use crate::distfit::{Family, FittedModel};
use crate::sample::FrequencySample;
use crate::special::{normal_sf, NeumaierSum};
use crate::{Error, Result};
use std::fmt::Write as _;

/// Significance level for the Vuong test.
pub const VUONG_ALPHA: f64 = 0.05;

/// 2k − 2 ln L.
pub fn aic(fit: &FittedModel) -> Result<f64> {
    if !fit.log_likelihood.is_finite() {
        return Err(Error::Domain(format!(
            "{} has non-finite log-likelihood",
            fit.family()
        )));
    }
    Ok(2.0 * fit.k() as f64 - 2.0 * fit.log_likelihood)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preference {
    First,
    Second,
    Tie,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VuongResult {
    pub statistic: f64,
    /// Two-sided, standard normal.
    pub p_value: f64,
    pub preferred: Preference,
    /// Pointwise log-ratios have zero variance.
    pub degenerate: bool,
}

/// Vuong's closeness test of `a` against `b` on the sample both were fitted to.
///
/// d_i = ln pA(x_i) − ln pB(x_i), V = Σ d_i / (√n · s) with s the sample standard deviation.
pub fn vuong(a: &FittedModel, b: &FittedModel, sample: &FrequencySample) -> Result<VuongResult> {
    if a.n != sample.len() || b.n != sample.len() {
        return Err(Error::Precondition(
            "both fits must come from the given sample".into(),
        ));
    }
    let n = sample.len() as f64;
    let mut ratios = Vec::with_capacity(sample.histogram().len());
    for &(x, c) in sample.histogram() {
        let d = a.dist.ln_pmf(x)? - b.dist.ln_pmf(x)?;
        ratios.push((d, c as f64));
    }
    let sum: f64 = ratios
        .iter()
        .map(|&(d, c)| c * d)
        .collect::<NeumaierSum>()
        .value();
    if !sum.is_finite() || ratios.iter().any(|(d, _)| !d.is_finite()) {
        // One model assigns zero probability somewhere the other does not.
        let finite_a = ratios.iter().all(|&(d, _)| d != f64::NEG_INFINITY);
        let finite_b = ratios.iter().all(|&(d, _)| d != f64::INFINITY);
        let (statistic, preferred) = match (finite_a, finite_b) {
            (true, false) => (f64::INFINITY, Preference::First),
            (false, true) => (f64::NEG_INFINITY, Preference::Second),
            _ => (f64::NAN, Preference::Tie),
        };
        let p_value = if preferred == Preference::Tie { 1.0 } else { 0.0 };
        return Ok(VuongResult {
            statistic,
            p_value,
            preferred,
            degenerate: true,
        });
    }
    let mean = sum / n;
    let var = if n > 1.0 {
        ratios
            .iter()
            .map(|&(d, c)| c * (d - mean) * (d - mean))
            .collect::<NeumaierSum>()
            .value()
            / (n - 1.0)
    } else {
        0.0
    };
    let s = var.sqrt();
    if s == 0.0 || s <= 1e-14 * mean.abs() {
        let preferred = if sum > 0.0 {
            Preference::First
        } else if sum < 0.0 {
            Preference::Second
        } else {
            Preference::Tie
        };
        let statistic = if sum == 0.0 { 0.0 } else { sum.signum() * f64::INFINITY };
        return Ok(VuongResult {
            statistic,
            p_value: if sum == 0.0 { 1.0 } else { 0.0 },
            preferred,
            degenerate: sum != 0.0,
        });
    }
    let statistic = sum / (n.sqrt() * s);
    let p_value = (2.0 * normal_sf(statistic.abs())).min(1.0);
    let preferred = if p_value < VUONG_ALPHA {
        if statistic > 0.0 {
            Preference::First
        } else {
            Preference::Second
        }
    } else {
        Preference::Tie
    };
    Ok(VuongResult {
        statistic,
        p_value,
        preferred,
        degenerate: false,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseVuong {
    pub first: Family,
    pub second: Family,
    pub result: VuongResult,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelSelectionReport {
    /// Candidates with their AIC, in input order.
    pub candidates: Vec<(FittedModel, f64)>,
    /// Every unordered pair once, in input order.
    pub pairwise: Vec<PairwiseVuong>,
    pub winner: Family,
    /// Families that Vuong prefers over the AIC winner head-to-head.
    pub vuong_dissent: Vec<Family>,
}

impl ModelSelectionReport {
    pub fn disagreement(&self) -> bool {
        !self.vuong_dissent.is_empty()
    }

    pub fn winner_fit(&self) -> &FittedModel {
        &self
            .candidates
            .iter()
            .find(|(f, _)| f.family() == self.winner)
            .expect("winner is a candidate")
            .0
    }

    /// Machine-readable `key value` lines.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "winner {}", self.winner);
        let _ = writeln!(out, "decided_by aic");
        let _ = writeln!(out, "disagreement {}", self.disagreement());
        let dissent: Vec<_> = self.vuong_dissent.iter().map(|f| f.name()).collect();
        let _ = writeln!(out, "vuong_dissent {}", if dissent.is_empty() { "-".to_string() } else { dissent.join(",") });
        let _ = writeln!(out, "n {}", self.winner_fit().n);
        for (fit, a) in &self.candidates {
            let fam = fit.family();
            let _ = writeln!(out, "aic.{fam} {a}");
            let _ = writeln!(out, "log_likelihood.{fam} {}", fit.log_likelihood);
            for (name, v) in fit.dist.params() {
                let _ = writeln!(out, "param.{fam}.{name} {v}");
            }
        }
        for p in &self.pairwise {
            let pref = match p.result.preferred {
                Preference::First => p.first.name(),
                Preference::Second => p.second.name(),
                Preference::Tie => "tie",
            };
            let _ = writeln!(
                out,
                "vuong.{}.{} {} {} {}",
                p.first, p.second, p.result.statistic, p.result.p_value, pref
            );
        }
        out
    }

    /// Human-readable summary.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "Model selection over {} candidates (n = {})", self.candidates.len(), self.winner_fit().n);
        let _ = writeln!(out, "{:<18} {:>16} {:>16}  parameters", "family", "log-likelihood", "AIC");
        let mut sorted: Vec<_> = self.candidates.iter().collect();
        sorted.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.family().cmp(&b.0.family())));
        for (fit, a) in sorted {
            let params: Vec<String> = fit.dist.params().iter().map(|(k, v)| format!("{k}={v:.6}")).collect();
            let flag = if fit.boundary { " (boundary)" } else { "" };
            let _ = writeln!(out, "{:<18} {:>16.4} {:>16.4}  {}{}", fit.family().name(), fit.log_likelihood, a, params.join(" "), flag);
        }
        let _ = writeln!(out, "Vuong closeness tests (alpha = {VUONG_ALPHA}):");
        for p in &self.pairwise {
            let pref = match p.result.preferred {
                Preference::First => p.first.name(),
                Preference::Second => p.second.name(),
                Preference::Tie => "no preference",
            };
            let _ = writeln!(out, "  {} vs {}: V = {:.4}, p = {:.4e} -> {}", p.first, p.second, p.result.statistic, p.result.p_value, pref);
        }
        let _ = writeln!(out, "Winner: {} (by AIC)", self.winner);
        if self.disagreement() {
            let names: Vec<_> = self.vuong_dissent.iter().map(|f| f.name()).collect();
            let _ = writeln!(out, "Note: Vuong prefers {} over the AIC winner", names.join(", "));
        }
        out
    }
}

/// Reads the `winner` line of a report written by [`ModelSelectionReport::to_kv`].
pub fn parse_winner(text: &str) -> Result<Family> {
    for (i, line) in text.lines().enumerate() {
        let mut it = line.split_whitespace();
        if it.next() == Some("winner") {
            return it
                .next()
                .ok_or_else(|| Error::parse(i + 1, "winner without a family"))?
                .parse();
        }
    }
    Err(Error::parse(0, "selection report has no `winner` line"))
}

/// Picks the AIC-minimizing candidate; ties go to the lexicographically smaller family name.
pub fn select_best(fits: &[FittedModel], sample: &FrequencySample) -> Result<ModelSelectionReport> {
    if fits.len() < 2 {
        return Err(Error::Precondition(
            "model selection needs at least two candidates".into(),
        ));
    }
    if let Some(f) = fits.iter().find(|f| !f.family().is_discrete()) {
        return Err(Error::Precondition(format!(
            "{} is not a selectable candidate",
            f.family()
        )));
    }
    let candidates = fits
        .iter()
        .map(|f| Ok((f.clone(), aic(f)?)))
        .collect::<Result<Vec<_>>>()?;
    let winner = candidates
        .iter()
        .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.family().name().cmp(b.0.family().name())))
        .unwrap()
        .0
        .family();
    let mut pairwise = Vec::new();
    for i in 0..fits.len() {
        for j in i + 1..fits.len() {
            pairwise.push(PairwiseVuong {
                first: fits[i].family(),
                second: fits[j].family(),
                result: vuong(&fits[i], &fits[j], sample)?,
            });
        }
    }
    let vuong_dissent = pairwise
        .iter()
        .filter_map(|p| match p.result.preferred {
            Preference::First if p.second == winner => Some(p.first),
            Preference::Second if p.first == winner => Some(p.second),
            _ => None,
        })
        .collect();
    Ok(ModelSelectionReport {
        candidates,
        pairwise,
        winner,
        vuong_dissent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distfit::{fit_mle, sample_from, Distribution};

    fn fake(dist: Distribution, ll: f64, n: u64) -> FittedModel {
        FittedModel {
            dist,
            log_likelihood: ll,
            n,
            boundary: false,
        }
    }

    #[test]
    fn aic_arithmetic() {
        let one = fake(Distribution::Poisson { lambda: 1.0 }, -100.0, 10);
        let two = fake(Distribution::NegativeBinomial { r: 1.0, theta: 0.5 }, -100.0, 10);
        assert_eq!(aic(&one).unwrap(), 202.0);
        assert_eq!(aic(&two).unwrap(), 204.0);
        assert!(aic(&one).unwrap() < aic(&two).unwrap());
        let bad = fake(Distribution::Poisson { lambda: 1.0 }, f64::NEG_INFINITY, 10);
        assert!(aic(&bad).is_err());
    }

    #[test]
    fn aic_ordering_survives_common_shift() {
        let fits = [
            fake(Distribution::Poisson { lambda: 1.0 }, -120.0, 10),
            fake(Distribution::YuleSimon { rho: 1.0 }, -118.5, 10),
            fake(Distribution::NegativeBinomial { r: 1.0, theta: 0.5 }, -118.0, 10),
        ];
        let order = |shift: f64| {
            let mut v: Vec<(f64, Family)> = fits
                .iter()
                .map(|f| {
                    let mut g = f.clone();
                    g.log_likelihood += shift;
                    (aic(&g).unwrap(), g.family())
                })
                .collect();
            v.sort_by(|a, b| a.0.total_cmp(&b.0));
            v.into_iter().map(|x| x.1).collect::<Vec<_>>()
        };
        assert_eq!(order(0.0), order(-37.25));
    }

    #[test]
    fn vuong_identity_and_antisymmetry() {
        let s = FrequencySample::new(sample_from(&Distribution::YuleSimon { rho: 1.627 }, 2000, 9).unwrap())
            .unwrap();
        let ys = fit_mle(Family::YuleSimon, &s).unwrap();
        let same = vuong(&ys, &ys, &s).unwrap();
        assert_eq!(same.statistic, 0.0);
        assert_eq!(same.preferred, Preference::Tie);
        let g = fit_mle(Family::Geometric, &s).unwrap();
        let ab = vuong(&ys, &g, &s).unwrap();
        let ba = vuong(&g, &ys, &s).unwrap();
        assert_eq!(ab.statistic, -ba.statistic);
        assert_eq!(ab.p_value, ba.p_value);
    }

    #[test]
    fn vuong_prefers_generating_family() {
        let s = FrequencySample::new(sample_from(&Distribution::YuleSimon { rho: 1.627 }, 5000, 3).unwrap())
            .unwrap();
        let ys = fit_mle(Family::YuleSimon, &s).unwrap();
        let po = fit_mle(Family::Poisson, &s).unwrap();
        let r = vuong(&ys, &po, &s).unwrap();
        assert_eq!(r.preferred, Preference::First);
        assert!(r.p_value < 0.05);
    }

    #[test]
    fn vuong_degenerate_constant_ratio() {
        let s = FrequencySample::new(vec![1, 1, 1]).unwrap();
        let a = fake(Distribution::Geometric { p: 0.5 }, 0.0, 3);
        let b = fake(Distribution::Geometric { p: 0.25 }, 0.0, 3);
        let r = vuong(&a, &b, &s).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.preferred, Preference::First);
    }

    #[test]
    fn select_rules() {
        let s = FrequencySample::new(sample_from(&Distribution::YuleSimon { rho: 1.7 }, 3000, 1).unwrap())
            .unwrap();
        let fits: Vec<_> = [Family::Poisson, Family::YuleSimon]
            .iter()
            .map(|&f| fit_mle(f, &s).unwrap())
            .collect();
        let rep = select_best(&fits, &s).unwrap();
        assert_eq!(rep.winner, Family::YuleSimon);
        assert!(!rep.disagreement());
        assert_eq!(rep.pairwise.len(), 1);
        assert_eq!(parse_winner(&rep.to_kv()).unwrap(), Family::YuleSimon);
        assert!(rep.render().contains("Winner: yule_simon"));

        assert!(select_best(&fits[..1], &s).is_err());
    }

    #[test]
    fn identical_candidates_break_ties_by_name() {
        let s = FrequencySample::new(vec![1, 2, 3, 4]).unwrap();
        // Shifted NB with r = 1 equals the geometric, but k differs; compare two singletons instead.
        let a = fake(Distribution::YuleSimon { rho: 1.0 }, -5.0, 4);
        let b = fake(Distribution::Poisson { lambda: 1.0 }, -5.0, 4);
        let rep = select_best(&[a, b], &s).unwrap();
        assert_eq!(rep.winner, Family::Poisson);
    }
}
