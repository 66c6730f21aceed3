//! Per-term building blocks of the DFR score f_tq · (−log2 P1) · (1 − P2) and of the LM.

use super::{AfterEffect, Induction, Model};
use crate::index::{CollectionStats, TermStats};
use crate::special::ln_gamma;
use crate::{Error, Result};
use std::f64::consts::LN_2;

/// Values of the SPL parameter are kept inside (ε, 1 − ε) at scoring time.
pub const SPL_EPS: f64 = 1e-12;
/// Upper cap of the Bernoulli P2, keeping the risk term strictly positive.
pub const P2_CAP: f64 = 1.0 - 1e-12;

/// f_td · log2(1 + c · avg_l / |d|).
pub fn normalize_tf(f_td: u32, doc_len: u32, avg_len: f64, c: f64) -> Result<f64> {
    if doc_len == 0 {
        return Err(Error::Domain("document length is zero".into()));
    }
    if !(c > 0.0) {
        return Err(Error::Domain(format!("normalization constant c must be > 0, got {c}")));
    }
    Ok(f_td as f64 * (1.0 + c * avg_len / doc_len as f64).log2())
}

/// T_tc = cf / |C| or T_dc = df / |C|.
pub fn induce_param(stats: &TermStats, coll: &CollectionStats, mode: Induction) -> Result<f64> {
    if coll.num_docs == 0 {
        return Err(Error::EmptyCollection);
    }
    let numerator = match mode {
        Induction::Tc => stats.cf as f64,
        Induction::Dc => stats.df as f64,
    };
    if numerator == 0.0 {
        return Err(Error::Domain("term does not occur in the collection".into()));
    }
    Ok(numerator / coll.num_docs as f64)
}

/// Information content −log2 P1 of a normalized frequency `tfn` under `model`.
///
/// `param` is the induced per-term parameter (λ for PL2 and SPLL2, r for LLL2, ρ for YSL2);
/// InL2 reads `stats` and `coll` instead.
pub fn info_content(
    model: Model,
    tfn: f64,
    param: f64,
    stats: &TermStats,
    coll: &CollectionStats,
) -> Result<f64> {
    if !(tfn > 0.0) {
        return Err(Error::Domain(format!("normalized frequency must be > 0, got {tfn}")));
    }
    if !(param > 0.0) || !param.is_finite() {
        return Err(Error::Domain(format!("model parameter must be > 0, got {param}")));
    }
    match model {
        Model::PL2 => {
            let lambda = param;
            Ok((lambda - tfn * lambda.ln() + ln_gamma(tfn + 1.0)) / LN_2)
        }
        Model::InL2 => {
            let n = coll.num_docs as f64;
            Ok(tfn * ((n + 1.0) / (stats.df as f64 + 0.5)).log2())
        }
        Model::LLL2 => Ok(((tfn + param) / param).log2()),
        Model::SPLL2 => {
            if param >= 1.0 {
                return Err(Error::Domain(format!("SPL parameter must be < 1, got {param}")));
            }
            Ok(spl_info(tfn, param))
        }
        Model::YSL2 => {
            let rho = param;
            let ln_p = rho.ln() + ln_gamma(tfn) + ln_gamma(rho + 1.0) - ln_gamma(tfn + rho + 1.0);
            Ok(-ln_p / LN_2)
        }
        Model::LMDir => Err(Error::Precondition("LMDir has no information content".into())),
    }
}

/// −log2[(λ^(t/(t+1)) − λ) / (1 − λ)], arranged to stay accurate for λ near 1.
fn spl_info(tfn: f64, lambda: f64) -> f64 {
    let ln_l = (lambda - 1.0).ln_1p();
    let a = tfn / (tfn + 1.0);
    // λ^a − λ = λ (e^((a−1) ln λ) − 1)
    let num = lambda * ((a - 1.0) * ln_l).exp_m1();
    let den = 1.0 - lambda;
    -(num / den).log2()
}

/// The after-effect probability P2.
///
/// Laplace: t / (t + 1) with t the normalized (or, with `raw`, the raw) frequency.
/// Bernoulli: (cf + 1) / (df · f_td + 1), capped below 1.
pub fn after_effect(kind: AfterEffect, tfn: f64, f_td: u32, stats: &TermStats, raw: bool) -> f64 {
    match kind {
        AfterEffect::Laplace => {
            let t = if raw { f_td as f64 } else { tfn };
            t / (t + 1.0)
        }
        AfterEffect::Bernoulli => {
            let p = (stats.cf as f64 + 1.0) / (stats.df as f64 * f_td as f64 + 1.0);
            p.min(P2_CAP)
        }
    }
}

/// One query term's Dirichlet LM contribution: f_tq · log2[(f_td + μ p_C) / (|d| + μ)].
pub fn lm_dirichlet_term(f_tq: u32, f_td: u32, doc_len: u32, cf: u64, total_tokens: u64, mu: f64) -> f64 {
    let p_c = cf as f64 / total_tokens as f64;
    f_tq as f64 * ((f_td as f64 + mu * p_c) / (doc_len as f64 + mu)).log2()
}

#[cfg(test)]
#[allow(clippy::approx_constant)]
mod tests {
    use super::*;

    fn coll(n: u32) -> CollectionStats {
        CollectionStats {
            num_docs: n,
            total_tokens: 100,
            avg_len: 10.0,
        }
    }

    const ST: TermStats = TermStats { cf: 9, df: 5 };

    #[test]
    fn normalization() {
        assert_eq!(normalize_tf(3, 10, 10.0, 1.0).unwrap(), 3.0);
        assert_eq!(normalize_tf(0, 10, 10.0, 1.0).unwrap(), 0.0);
        assert!((normalize_tf(1, 50, 100.0, 2.0).unwrap() - 5f64.log2()).abs() < 1e-15);
        assert!((normalize_tf(1, 50, 100.0, 2.0).unwrap() - 2.3219).abs() < 1e-4);
        assert!(normalize_tf(1, 0, 1.0, 1.0).is_err());
    }

    #[test]
    fn induction() {
        let c = coll(1000);
        let s = TermStats { cf: 50, df: 1000 };
        assert_eq!(induce_param(&s, &c, Induction::Tc).unwrap(), 0.05);
        assert_eq!(induce_param(&s, &c, Induction::Dc).unwrap(), 1.0);
        assert!(induce_param(&TermStats { cf: 3, df: 0 }, &c, Induction::Dc).is_err());
    }

    #[test]
    fn info_content_hand_values() {
        let c = coll(10);
        let pl2 = info_content(Model::PL2, 1.0, 1.0, &ST, &c).unwrap();
        assert!((pl2 - 1.0 / LN_2).abs() < 1e-14);
        assert!((pl2 - 1.4427).abs() < 1e-4);
        let ys1 = info_content(Model::YSL2, 1.0, 1.0, &ST, &c).unwrap();
        assert!((ys1 - 1.0).abs() < 1e-14);
        let ys2 = info_content(Model::YSL2, 2.0, 1.0, &ST, &c).unwrap();
        assert!((ys2 - 6f64.log2()).abs() < 1e-13);
        assert!((ys2 - 2.585).abs() < 1e-3);
        assert_eq!(info_content(Model::LLL2, 1.0, 1.0, &ST, &c).unwrap(), 1.0);
        let inl2 = info_content(Model::InL2, 2.0, 0.3, &ST, &c).unwrap();
        assert!((inl2 - 2.0 * (11.0f64 / 5.5).log2()).abs() < 1e-14);
    }

    #[test]
    fn spl_matches_naive_formula_and_limits() {
        let c = coll(10);
        for &(t, l) in &[(0.5, 0.1), (2.0, 0.3), (7.5, 0.9)] {
            let naive = -((f64::powf(l, t / (t + 1.0)) - l) / (1.0 - l)).log2();
            let got = info_content(Model::SPLL2, t, l, &ST, &c).unwrap();
            assert!((got - naive).abs() < 1e-12, "{t} {l}");
        }
        // λ → 1 limit is log2(t + 1).
        let near = info_content(Model::SPLL2, 3.0, 1.0 - SPL_EPS, &ST, &c).unwrap();
        assert!((near - 2.0).abs() < 1e-9, "{near}");
        assert!(info_content(Model::SPLL2, 1.0, 1.0, &ST, &c).is_err());
    }

    #[test]
    fn info_content_domain() {
        let c = coll(10);
        assert!(info_content(Model::YSL2, 0.0, 1.0, &ST, &c).is_err());
        assert!(info_content(Model::PL2, 1.0, 0.0, &ST, &c).is_err());
        assert!(info_content(Model::LMDir, 1.0, 1.0, &ST, &c).is_err());
    }

    #[test]
    fn after_effects() {
        assert_eq!(after_effect(AfterEffect::Laplace, 1.0, 1, &ST, false), 0.5);
        assert_eq!(after_effect(AfterEffect::Laplace, 3.0, 1, &ST, false), 0.75);
        assert_eq!(after_effect(AfterEffect::Laplace, 3.0, 1, &ST, true), 0.5);
        let b = after_effect(AfterEffect::Bernoulli, 2.7, 2, &ST, false);
        assert!((b - 10.0 / 11.0).abs() < 1e-15);
        let capped = after_effect(AfterEffect::Bernoulli, 1.0, 1, &TermStats { cf: 50, df: 2 }, false);
        assert!(capped < 1.0 && capped == P2_CAP);
    }

    #[test]
    fn lm_term() {
        let v = lm_dirichlet_term(1, 1, 1, 1, 2, 1.0);
        assert!((v - (0.75f64).log2()).abs() < 1e-15);
        assert!((v + 0.415).abs() < 1e-3);
    }
}
