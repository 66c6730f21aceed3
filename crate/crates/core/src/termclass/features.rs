//! Corpus-level term weights used as classifier features.

use crate::index::{CollectionStats, TermStats};
use crate::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// Named features, declared in name order (that order breaks subset ties).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FeatureKind {
    Gain,
    Idf,
    Ridf,
}

impl FeatureKind {
    pub const ALL: [FeatureKind; 3] = [FeatureKind::Gain, FeatureKind::Idf, FeatureKind::Ridf];

    pub fn name(self) -> &'static str {
        match self {
            FeatureKind::Gain => "gain",
            FeatureKind::Idf => "idf",
            FeatureKind::Ridf => "ridf",
        }
    }
}

impl fmt::Display for FeatureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FeatureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gain" => Ok(FeatureKind::Gain),
            "idf" => Ok(FeatureKind::Idf),
            "ridf" => Ok(FeatureKind::Ridf),
            other => Err(Error::Domain(format!("unknown feature `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TermFeatures {
    pub gain: f64,
    pub idf: f64,
    pub ridf: f64,
}

impl TermFeatures {
    pub fn get(&self, kind: FeatureKind) -> f64 {
        match kind {
            FeatureKind::Gain => self.gain,
            FeatureKind::Idf => self.idf,
            FeatureKind::Ridf => self.ridf,
        }
    }
}

fn check(stats: &TermStats, coll: &CollectionStats) -> Result<f64> {
    if coll.num_docs == 0 {
        return Err(Error::EmptyCollection);
    }
    if stats.df == 0 {
        return Err(Error::Domain("document frequency is zero".into()));
    }
    Ok(stats.df as f64 / coll.num_docs as f64)
}

/// −log2(df / N).
pub fn idf(stats: &TermStats, coll: &CollectionStats) -> Result<f64> {
    Ok(-check(stats, coll)?.log2())
}

/// Observed IDF minus the IDF a Poisson spread of the same occurrences would give:
/// −log2(df/N) + log2(1 − e^(−cf/N)).
pub fn ridf(stats: &TermStats, coll: &CollectionStats) -> Result<f64> {
    let x = check(stats, coll)?;
    if stats.cf == 0 {
        return Err(Error::Domain("collection frequency is zero".into()));
    }
    let rate = stats.cf as f64 / coll.num_docs as f64;
    Ok(-x.log2() + (-(-rate).exp_m1()).log2())
}

/// x (x − 1 − ln x) with x = df / N.
pub fn gain(stats: &TermStats, coll: &CollectionStats) -> Result<f64> {
    let x = check(stats, coll)?;
    Ok(x * (x - 1.0 - x.ln()))
}

pub fn term_features(term: &str, stats: &TermStats, coll: &CollectionStats) -> Result<TermFeatures> {
    let wrap = |e: Error| Error::UndefinedFeature {
        term: term.to_owned(),
        reason: e.to_string(),
    };
    Ok(TermFeatures {
        gain: gain(stats, coll).map_err(wrap)?,
        idf: idf(stats, coll).map_err(wrap)?,
        ridf: ridf(stats, coll).map_err(wrap)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coll(n: u32) -> CollectionStats {
        CollectionStats {
            num_docs: n,
            total_tokens: 0,
            avg_len: 0.0,
        }
    }

    fn ts(cf: u64, df: u32) -> TermStats {
        TermStats { cf, df }
    }

    #[test]
    fn idf_values() {
        assert_eq!(idf(&ts(5, 5), &coll(5)).unwrap(), 0.0);
        assert_eq!(idf(&ts(1, 1), &coll(2)).unwrap(), 1.0);
        assert!((idf(&ts(1, 1), &coll(1024)).unwrap() - 10.0).abs() < 1e-12);
        assert!(idf(&ts(0, 0), &coll(10)).is_err());
    }

    #[test]
    fn ridf_values() {
        let n = 1_000_000;
        let r = ridf(&ts(n as u64, n), &coll(n)).unwrap();
        assert!((r - (1.0 - (-1f64).exp()).log2()).abs() < 1e-12);
        assert!((r + 0.661_728).abs() < 1e-5);
        let r = ridf(&ts(100, 1), &coll(1000)).unwrap();
        let want = -(0.001f64).log2() + (1.0 - (-0.1f64).exp()).log2();
        assert!((r - want).abs() < 1e-12);
        assert!((r - 6.573).abs() < 1e-3);
        assert!(ridf(&ts(0, 1), &coll(10)).is_err());
    }

    #[test]
    fn gain_values() {
        assert_eq!(gain(&ts(9, 9), &coll(9)).unwrap(), 0.0);
        let g = gain(&ts(1, 1), &coll(2)).unwrap();
        assert!((g - 0.5 * (0.5 - 1.0 - 0.5f64.ln())).abs() < 1e-15);
        assert!((g - 0.0966).abs() < 1e-4);
        let tiny = gain(&ts(1, 1), &coll(1_000_000)).unwrap();
        assert!(tiny > 0.0 && tiny < 1e-4);
    }

    #[test]
    fn undefined_feature_names_term() {
        let err = term_features("ghost", &ts(0, 0), &coll(3)).unwrap_err();
        assert!(matches!(err, Error::UndefinedFeature { ref term, .. } if term == "ghost"));
    }
}
