use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::seqmodel::LengthSequence;

/// Normalized circular autocorrelation `G_0..=G_L` of word-length deviations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationProfile {
    pub values: Vec<f64>,
    pub words: usize,
}

impl CorrelationProfile {
    pub fn max_lag(&self) -> usize {
        self.values.len() - 1
    }

    pub fn at(&self, lag: usize) -> Option<f64> {
        self.values.get(lag).copied()
    }
}

/// `G_l = sum_k d_k d_{k+l} / sum_k d_k^2` with `d_k = S_k - mean` and
/// positions taken modulo `K`.
///
/// With `T = sum S_k`, both sums are `(K sum S_k S_{k+l} - T^2) / K`, so the
/// numerator and denominator are evaluated exactly in integers and only the
/// final ratio is rounded. `G_0` is exactly one and `|G_l| <= 1` holds
/// without rounding slack.
pub fn correlation(seq: &LengthSequence, max_lag: usize) -> Result<CorrelationProfile> {
    let k = seq.len();
    if k < 2 {
        return Err(Error::TooShort {
            what: "the correlation function",
            need: 2,
            got: k,
        });
    }
    if max_lag >= k {
        return Err(invalid(
            "maximum lag",
            format!("{max_lag} must be below the word count {k}"),
        ));
    }
    if seq.is_constant() {
        return Err(Error::DegenerateConstant);
    }
    let s = seq.lengths();
    let total = seq.total_syllables() as i128;
    let centered = |lag: usize| -> i128 {
        let cross: u64 = (0..k).map(|i| s[i] as u64 * s[(i + lag) % k] as u64).sum();
        k as i128 * cross as i128 - total * total
    };
    let denom = centered(0);
    let values = (0..=max_lag)
        .map(|lag| centered(lag) as f64 / denom as f64)
        .collect();
    Ok(CorrelationProfile { values, words: k })
}
