//! Word-length sequences and the random-segmentation reference model.
//!
//! Under random segmentation every syllable ends a word with the same
//! probability `q`, so word lengths are geometric:
//! `P{S = n} = q (1 - q)^(n - 1)`, with mean `1/q` and variance
//! `(1 - q) / q^2`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Syllable counts of consecutive words. Every entry is at least one.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LengthSequence {
    lengths: Vec<u32>,
}

impl LengthSequence {
    pub fn new(lengths: Vec<u32>) -> Result<Self> {
        if let Some(&bad) = lengths.iter().find(|&&s| s == 0) {
            return Err(Error::InvalidLength(bad as u64));
        }
        Ok(Self { lengths })
    }

    /// Builds a sequence from counts already known to be positive.
    pub(crate) fn from_counts(lengths: Vec<u32>) -> Self {
        debug_assert!(lengths.iter().all(|&s| s >= 1));
        Self { lengths }
    }

    /// Number of words, `K`.
    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.lengths
    }

    pub fn total_syllables(&self) -> u64 {
        self.lengths.iter().map(|&s| s as u64).sum()
    }

    pub fn mean(&self) -> Option<f64> {
        (!self.is_empty()).then(|| self.total_syllables() as f64 / self.len() as f64)
    }

    /// Population variance of the word lengths (divides by `K`).
    pub fn empirical_variance(&self) -> Option<f64> {
        let mean = self.mean()?;
        let ss: f64 = self
            .lengths
            .iter()
            .map(|&s| (s as f64 - mean).powi(2))
            .sum();
        Some(ss / self.len() as f64)
    }

    pub fn is_constant(&self) -> bool {
        self.lengths.windows(2).all(|w| w[0] == w[1])
    }
}

impl TryFrom<Vec<u32>> for LengthSequence {
    type Error = Error;

    fn try_from(lengths: Vec<u32>) -> Result<Self> {
        Self::new(lengths)
    }
}

/// Geometric word-length model fitted by matching the mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SegmentationModel {
    q: f64,
    s: f64,
    delta: f64,
}

impl SegmentationModel {
    pub fn from_boundary_probability(q: f64) -> Result<Self> {
        if !(q > 0.0 && q <= 1.0) {
            return Err(invalid(
                "boundary probability q",
                format!("{q} is not in (0, 1]"),
            ));
        }
        Ok(Self {
            q,
            s: 1.0 / q,
            delta: (1.0 - q) / (q * q),
        })
    }

    pub fn from_mean(s: f64) -> Result<Self> {
        if !(s >= 1.0 && s.is_finite()) {
            return Err(invalid("mean syllable length", format!("{s} is below 1")));
        }
        let q = 1.0 / s;
        Ok(Self {
            q,
            s,
            delta: (1.0 - q) / (q * q),
        })
    }

    /// Boundary probability `q`.
    pub fn q(&self) -> f64 {
        self.q
    }

    /// Mean word length `s = 1/q`.
    pub fn mean(&self) -> f64 {
        self.s
    }

    /// Model variance `Δ = (1 - q)/q²`.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn pmf(&self, syllables: u32) -> Result<f64> {
        geometric_pmf(self, syllables)
    }
}

pub fn fit_model(seq: &LengthSequence) -> Result<SegmentationModel> {
    let s = seq.mean().ok_or(Error::EmptySequence {
        what: "fitting the segmentation model",
    })?;
    SegmentationModel::from_mean(s)
}

pub fn geometric_pmf(model: &SegmentationModel, syllables: u32) -> Result<f64> {
    if syllables == 0 {
        return Err(Error::InvalidLength(0));
    }
    let q = model.q();
    Ok(q * (1.0 - q).powi(syllables as i32 - 1))
}

/// Empirical distribution of word lengths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LengthHistogram {
    words: usize,
    counts: BTreeMap<u32, u64>,
}

impl LengthHistogram {
    pub fn words(&self) -> usize {
        self.words
    }

    pub fn count(&self, syllables: u32) -> u64 {
        self.counts.get(&syllables).copied().unwrap_or(0)
    }

    pub fn probability(&self, syllables: u32) -> f64 {
        self.count(syllables) as f64 / self.words as f64
    }

    pub fn max_length(&self) -> u32 {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }

    /// `(S, P{S})` for every length that occurs.
    pub fn probabilities(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.counts
            .iter()
            .map(move |(&s, &c)| (s, c as f64 / self.words as f64))
    }
}

pub fn histogram(seq: &LengthSequence) -> Result<LengthHistogram> {
    if seq.is_empty() {
        return Err(Error::EmptySequence {
            what: "the length histogram",
        });
    }
    let mut counts = BTreeMap::new();
    for &s in seq.lengths() {
        *counts.entry(s).or_insert(0u64) += 1;
    }
    Ok(LengthHistogram {
        words: seq.len(),
        counts,
    })
}

/// One row of the empirical-vs-geometric comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExcessRow {
    #[serde(rename = "S")]
    pub syllables: u32,
    pub p_empirical: f64,
    pub p_geometric: f64,
    pub excess: f64,
}

/// `P_emp{S} - P_geom{S}` for `S = 1..=max_syllables`. A positive entry at
/// `S = 2` marks more disyllables than the fitted model predicts.
pub fn excess_table(
    hist: &LengthHistogram,
    model: &SegmentationModel,
    max_syllables: u32,
) -> Vec<ExcessRow> {
    (1..=max_syllables)
        .map(|s| {
            let p_empirical = hist.probability(s);
            let p_geometric = geometric_pmf(model, s).expect("s >= 1");
            ExcessRow {
                syllables: s,
                p_empirical,
                p_geometric,
                excess: p_empirical - p_geometric,
            }
        })
        .collect()
}
