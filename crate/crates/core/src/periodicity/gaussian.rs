use libm::erfc;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Upper tail `P(Z >= z)` of the standard normal.
pub fn standard_tail(z: f64) -> f64 {
    0.5 * erfc(z / std::f64::consts::SQRT_2)
}

/// `P(X >= x)` for `X ~ N(mean, variance)`.
pub fn gaussian_tail(x: f64, mean: f64, variance: f64) -> Result<f64> {
    if !(variance > 0.0 && variance.is_finite()) {
        return Err(invalid("variance", format!("{variance} is not positive")));
    }
    Ok(standard_tail((x - mean) / variance.sqrt()))
}

/// Which tail probability drives flagging.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tail {
    /// `P(Z >= z)`
    #[default]
    One,
    /// `P(|Z| >= |z|)`
    Two,
}

impl Tail {
    pub fn probability(self, z: f64) -> f64 {
        match self {
            Tail::One => standard_tail(z),
            Tail::Two => (2.0 * standard_tail(z.abs())).min(1.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

/// A value plotted against its normalized rank.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankPoint {
    /// Absolute value.
    pub value: f64,
    pub sign: Sign,
    /// 1 for the largest magnitude within its sign class.
    pub rank: usize,
    /// `rank / (number of values with this sign)`.
    pub fraction: f64,
}

/// Ranks the non-negative values and the negative values separately by
/// magnitude, largest first, and normalizes each rank by the size of its
/// class. Non-negative values come first in the output.
pub fn rank_distribution(values: &[f64]) -> Result<Vec<RankPoint>> {
    if values.is_empty() {
        return Err(invalid("rank input", "no values"));
    }
    if values.iter().any(|v| v.is_nan()) {
        return Err(invalid("rank input", "contains NaN"));
    }
    let mut positive: Vec<f64> = values.iter().copied().filter(|&v| v >= 0.0).collect();
    let mut negative: Vec<f64> = values.iter().filter(|&&v| v < 0.0).map(|v| -v).collect();
    let mut out = Vec::with_capacity(values.len());
    for (class, sign) in [
        (&mut positive, Sign::Positive),
        (&mut negative, Sign::Negative),
    ] {
        class.sort_by(|a, b| b.total_cmp(a));
        let total = class.len() as f64;
        out.extend(class.iter().enumerate().map(|(i, &value)| RankPoint {
            value,
            sign,
            rank: i + 1,
            fraction: (i + 1) as f64 / total,
        }));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_at_mean_is_half() {
        assert_eq!(gaussian_tail(3.0, 3.0, 2.0).unwrap(), 0.5);
    }

    #[test]
    fn rejects_nonpositive_variance() {
        assert!(gaussian_tail(0.0, 0.0, 0.0).is_err());
        assert!(gaussian_tail(0.0, 0.0, -1.0).is_err());
    }

    #[test]
    fn four_sigma_chain() {
        // Q_4 = 0.7218 against mean 0.6914 and sigma 0.007219
        let p = gaussian_tail(0.7218, 0.6914, 0.007219f64.powi(2)).unwrap();
        assert!((p - 1.3e-5).abs() < 0.15 * 1.3e-5, "{p}");
    }

    #[test]
    fn two_sided_doubles() {
        let z = 2.5;
        assert!((Tail::Two.probability(-z) - 2.0 * Tail::One.probability(z)).abs() < 1e-18);
        assert_eq!(Tail::Two.probability(0.0), 1.0);
    }

    #[test]
    fn ranks() {
        let r = rank_distribution(&[3.0]).unwrap();
        assert_eq!(
            r,
            [RankPoint {
                value: 3.0,
                sign: Sign::Positive,
                rank: 1,
                fraction: 1.0
            }]
        );
        let r = rank_distribution(&[1.0, 2.0, 3.0]).unwrap();
        let pairs: Vec<_> = r.iter().map(|p| (p.value, p.fraction)).collect();
        assert_eq!(pairs, [(3.0, 1.0 / 3.0), (2.0, 2.0 / 3.0), (1.0, 1.0)]);
        let r = rank_distribution(&[-1.0, 2.0, -4.0]).unwrap();
        let neg: Vec<_> = r
            .iter()
            .filter(|p| p.sign == Sign::Negative)
            .map(|p| (p.value, p.fraction))
            .collect();
        assert_eq!(neg, [(4.0, 0.5), (1.0, 1.0)]);
        assert!(rank_distribution(&[]).is_err());
    }
}
