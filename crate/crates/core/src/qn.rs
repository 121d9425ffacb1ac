//! The `Q_n` word-boundary correlation distribution.
//!
//! `Q_n` is the probability that a word boundary falls exactly `n` syllables
//! after a word boundary. It is the number of (start word, run length) pairs
//! whose syllables total `n`, divided by the word count `K`. Under random
//! segmentation every `Q_n` equals the boundary probability `q`; isometric
//! verse raises `Q_n` at the line length and its multiples.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::periodicity::Tail;
use crate::seqmodel::{LengthSequence, SegmentationModel};
use crate::synth::random_segmented;

/// How runs that pass the end of the text are treated.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Counting {
    /// Positions wrap modulo `K`, so every start contributes runs of every
    /// length and `sum_n L_{n,k} = K` exactly.
    #[default]
    Circular,
    /// Runs stop at the last word.
    Truncated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QnProfile {
    values: Vec<f64>,
    counts: Vec<u64>,
    words: usize,
    counting: Counting,
}

impl QnProfile {
    /// Largest `n` computed.
    pub fn n_max(&self) -> usize {
        self.values.len()
    }

    /// `Q_n` for `n >= 1`.
    pub fn get(&self, n: usize) -> Option<f64> {
        n.checked_sub(1).and_then(|i| self.values.get(i)).copied()
    }

    /// `Q_1..=Q_N`; index 0 holds `Q_1`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Raw run counts `sum_k L_{n,k}` per `n`.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn words(&self) -> usize {
        self.words
    }

    pub fn counting(&self) -> Counting {
        self.counting
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.values.iter().enumerate().map(|(i, &q)| (i + 1, q))
    }
}

pub fn qn_profile(seq: &LengthSequence, n_max: usize) -> Result<QnProfile> {
    qn_profile_with(seq, n_max, Counting::Circular)
}

const PARALLEL_STARTS: usize = 8192;

/// Accumulates running sums from every start position until they exceed
/// `n_max`, counting each partial sum. Cost is `O(K * n_max / s)`. Large
/// inputs split start positions into fixed chunks whose integer counts are
/// summed, so the result does not depend on the thread count.
pub fn qn_profile_with(
    seq: &LengthSequence,
    n_max: usize,
    counting: Counting,
) -> Result<QnProfile> {
    if n_max < 1 {
        return Err(invalid("maximum n", "must be at least 1"));
    }
    let k = seq.len();
    if k == 0 {
        return Err(Error::EmptySequence {
            what: "the Q_n profile",
        });
    }
    let s = seq.lengths();
    let count_range = |starts: std::ops::Range<usize>| -> Vec<u64> {
        let mut counts = vec![0u64; n_max];
        for start in starts {
            let mut total = 0usize;
            let mut idx = start;
            loop {
                total += s[idx] as usize;
                if total > n_max {
                    break;
                }
                counts[total - 1] += 1;
                idx += 1;
                if idx == k {
                    if counting == Counting::Truncated {
                        break;
                    }
                    idx = 0;
                }
            }
        }
        counts
    };
    let counts = if k <= PARALLEL_STARTS {
        count_range(0..k)
    } else {
        (0..k.div_ceil(PARALLEL_STARTS))
            .into_par_iter()
            .map(|c| count_range(c * PARALLEL_STARTS..((c + 1) * PARALLEL_STARTS).min(k)))
            .reduce(
                || vec![0u64; n_max],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
    };
    let values = counts.iter().map(|&c| c as f64 / k as f64).collect();
    Ok(QnProfile {
        values,
        counts,
        words: k,
        counting,
    })
}

/// `L_{n,k}`: how many runs of `k` consecutive words total `n` syllables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunLengthTable {
    words: usize,
    rows: Vec<BTreeMap<u64, u64>>,
}

impl RunLengthTable {
    pub fn max_run(&self) -> usize {
        self.rows.len()
    }

    pub fn count(&self, syllables: u64, run: usize) -> u64 {
        self.rows
            .get(run.wrapping_sub(1))
            .and_then(|r| r.get(&syllables))
            .copied()
            .unwrap_or(0)
    }

    /// `sum_n L_{n,k}` for run length `k`.
    pub fn row_total(&self, run: usize) -> u64 {
        self.rows
            .get(run.wrapping_sub(1))
            .map_or(0, |r| r.values().sum())
    }

    pub fn words(&self) -> usize {
        self.words
    }
}

pub fn run_length_table(
    seq: &LengthSequence,
    max_run: usize,
    counting: Counting,
) -> Result<RunLengthTable> {
    let k = seq.len();
    if k == 0 {
        return Err(Error::EmptySequence {
            what: "the run-length table",
        });
    }
    let s = seq.lengths();
    let mut sums: Vec<u64> = vec![0; k];
    let mut rows = Vec::with_capacity(max_run);
    for run in 1..=max_run {
        let mut row = BTreeMap::new();
        for (start, sum) in sums.iter_mut().enumerate() {
            let end = start + run - 1;
            *sum += s[end % k] as u64;
            if counting == Counting::Truncated && end >= k {
                continue;
            }
            *row.entry(*sum).or_insert(0u64) += 1;
        }
        rows.push(row);
    }
    Ok(RunLengthTable { words: k, rows })
}

/// Range of `n` (inclusive) used to estimate the centre and spread of `Q_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QnWindow {
    pub start: usize,
    pub end: usize,
}

impl QnWindow {
    pub fn new(start: usize, end: usize) -> Result<Self> {
        if start < 1 || end < start + 1 {
            return Err(invalid(
                "Q_n window",
                format!("{start}..{end} must start at 1 or later and span at least two values"),
            ));
        }
        Ok(Self { start, end })
    }

    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, n: usize) -> bool {
        (self.start..=self.end).contains(&n)
    }
}

impl Default for QnWindow {
    fn default() -> Self {
        Self { start: 1, end: 200 }
    }
}

impl fmt::Display for QnWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

impl FromStr for QnWindow {
    type Err = Error;

    /// Parses `A..B` (inclusive; `A..=B` is also accepted).
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once("..")
            .ok_or_else(|| invalid("Q_n window", format!("{s:?} is not of the form A..B")))?;
        let b = b.strip_prefix('=').unwrap_or(b);
        let parse = |v: &str| {
            v.trim()
                .parse::<usize>()
                .map_err(|_| invalid("Q_n window", format!("{v:?} is not an integer")))
        };
        Self::new(parse(a)?, parse(b)?)
    }
}

/// Spread estimate used to turn `Q_n` into z-scores.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SigmaMode {
    /// Mean, and `sqrt(sum (Q_n - mean)^2) / N`.
    RootSum,
    /// Mean, and `sqrt(sum (Q_n - mean)^2 / N)`.
    Conventional,
    /// Median, and `1.4826 * MAD`. Harmonics of a verse line do not inflate it.
    #[default]
    Robust,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QnOptions {
    pub window: QnWindow,
    /// Flag `n` when `p * window length < threshold`.
    pub threshold: f64,
    pub tail: Tail,
    pub sigma: SigmaMode,
}

impl Default for QnOptions {
    fn default() -> Self {
        Self {
            window: QnWindow::default(),
            threshold: 0.01,
            tail: Tail::One,
            sigma: SigmaMode::Robust,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QnPoint {
    pub n: usize,
    pub q: f64,
    pub z: f64,
    pub p: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlaggedN {
    pub n: usize,
    pub q: f64,
    pub z: f64,
    pub p: f64,
    pub expected_count: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QnSignificance {
    pub window: QnWindow,
    pub mean: f64,
    pub sigma_root_sum: f64,
    pub sigma_conventional: f64,
    pub median: f64,
    pub sigma_robust: f64,
    /// Set when the MAD was zero and the conventional spread was used.
    pub robust_fallback: bool,
    pub sigma_mode: SigmaMode,
    /// Centre and spread in force: `z = (Q_n - center) / sigma`.
    pub center: f64,
    pub sigma: f64,
    pub tail: Tail,
    pub threshold: f64,
    /// z and p for every `n` of the profile.
    pub points: Vec<QnPoint>,
    pub flagged: Vec<FlaggedN>,
    /// The window values have zero spread; nothing can be flagged.
    pub degenerate_flat: bool,
}

pub fn z_score(value: f64, center: f64, sigma: f64) -> f64 {
    (value - center) / sigma
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

const MAD_TO_SIGMA: f64 = 1.482_602_218_505_602;

/// Scores every `Q_n` against the centre and spread of the window and flags
/// upward peaks whose tail probability times the window length falls below
/// the threshold.
pub fn qn_significance(profile: &QnProfile, opts: &QnOptions) -> Result<QnSignificance> {
    let window = QnWindow::new(opts.window.start, opts.window.end)?;
    if window.end > profile.n_max() {
        return Err(invalid(
            "Q_n window",
            format!(
                "{window} extends past the computed maximum n = {}",
                profile.n_max()
            ),
        ));
    }
    let vals = &profile.values()[window.start - 1..window.end];
    let nw = vals.len() as f64;
    let mean = vals.iter().sum::<f64>() / nw;
    let mut sorted = vals.to_vec();
    sorted.sort_by(f64::total_cmp);
    let flat = sorted[0] == sorted[sorted.len() - 1];
    let ss: f64 = if flat {
        0.0
    } else {
        vals.iter().map(|q| (q - mean).powi(2)).sum()
    };
    let sigma_root_sum = ss.sqrt() / nw;
    let sigma_conventional = (ss / nw).sqrt();
    let med = median(&sorted);
    let mut dev: Vec<f64> = vals.iter().map(|q| (q - med).abs()).collect();
    dev.sort_by(f64::total_cmp);
    let mad_sigma = MAD_TO_SIGMA * median(&dev);
    let robust_fallback = mad_sigma == 0.0 && sigma_conventional > 0.0;
    let sigma_robust = if robust_fallback {
        sigma_conventional
    } else {
        mad_sigma
    };

    let (center, sigma) = match opts.sigma {
        SigmaMode::RootSum => (mean, sigma_root_sum),
        SigmaMode::Conventional => (mean, sigma_conventional),
        SigmaMode::Robust => (med, sigma_robust),
    };
    let degenerate_flat = flat || sigma.is_nan() || sigma <= 0.0;
    let points: Vec<QnPoint> = profile
        .iter()
        .map(|(n, q)| {
            let (z, p) = if degenerate_flat {
                (0.0, 0.5)
            } else {
                let z = z_score(q, center, sigma);
                (z, opts.tail.probability(z))
            };
            QnPoint { n, q, z, p }
        })
        .collect();
    let flagged = if degenerate_flat {
        Vec::new()
    } else {
        points
            .iter()
            .filter(|pt| window.contains(pt.n) && pt.z > 0.0)
            .map(|pt| FlaggedN {
                n: pt.n,
                q: pt.q,
                z: pt.z,
                p: pt.p,
                expected_count: pt.p * nw,
            })
            .filter(|f| f.expected_count < opts.threshold)
            .collect()
    };
    Ok(QnSignificance {
        window,
        mean,
        sigma_root_sum,
        sigma_conventional,
        median: med,
        sigma_robust,
        robust_fallback,
        sigma_mode: opts.sigma,
        center,
        sigma,
        tail: opts.tail,
        threshold: opts.threshold,
        points,
        flagged,
        degenerate_flat,
    })
}

/// Flagged `n` grouped under a common fundamental line length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarmonicFamily {
    pub fundamental: usize,
    /// Flagged members, ascending.
    pub members: Vec<usize>,
    pub fundamental_flagged: bool,
}

impl HarmonicFamily {
    /// A single flagged peak with no flagged multiples.
    pub fn is_isolated(&self) -> bool {
        self.fundamental_flagged && self.members.len() == 1
    }

    pub fn has_harmonics(&self) -> bool {
        self.members.iter().any(|&m| m != self.fundamental)
    }
}

/// Groups flagged `n` into harmonic families.
///
/// A length `d` that is not itself flagged still becomes a fundamental when
/// `2d`, `3d` and `4d` are all flagged; it then collects every flagged
/// multiple (peaks at 4, 6, 8, 10 give fundamental 2). The remaining flagged
/// values are grouped greedily from the smallest: each starts a family and
/// absorbs its flagged multiples.
pub fn peak_scan(profile: &QnProfile, sig: &QnSignificance) -> Result<Vec<HarmonicFamily>> {
    let same = sig.points.len() == profile.n_max()
        && sig
            .points
            .iter()
            .zip(profile.values())
            .all(|(p, &q)| p.q == q);
    if !same {
        return Err(invalid("significance", "was not computed on this profile"));
    }
    let mut remaining: Vec<usize> = sig.flagged.iter().map(|f| f.n).collect();
    remaining.sort_unstable();
    let is_flagged = |n: usize, set: &[usize]| set.binary_search(&n).is_ok();
    let all = remaining.clone();
    let mut families = Vec::new();

    let largest = all.last().copied().unwrap_or(0);
    for d in 2..=largest / 4 {
        if is_flagged(d, &all) {
            continue;
        }
        if (2..=4).all(|h| is_flagged(h * d, &remaining)) {
            let members: Vec<usize> = remaining.iter().copied().filter(|n| n % d == 0).collect();
            remaining.retain(|n| n % d != 0);
            families.push(HarmonicFamily {
                fundamental: d,
                members,
                fundamental_flagged: false,
            });
        }
    }
    while let Some(&base) = remaining.first() {
        let members: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|n| n % base == 0)
            .collect();
        remaining.retain(|n| n % base != 0);
        families.push(HarmonicFamily {
            fundamental: base,
            members,
            fundamental_flagged: true,
        });
    }
    families.sort_by_key(|f| f.fundamental);
    Ok(families)
}

/// Geometric-corpus `Q_n` profiles used as the expectation for a text.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Baseline {
    pub q: f64,
    pub profiles: Vec<QnProfile>,
}

impl Baseline {
    /// `replicates` random-segmented corpora of `words` words, seeds
    /// `seed, seed + 1, ...`.
    pub fn generate(
        q: f64,
        words: usize,
        n_max: usize,
        replicates: usize,
        seed: u64,
    ) -> Result<Self> {
        if replicates == 0 {
            return Err(invalid("baseline replicates", "must be at least 1"));
        }
        let profiles = (0..replicates as u64)
            .into_par_iter()
            .map(|i| {
                let seq = random_segmented(q, words, seed.wrapping_add(i))?;
                qn_profile(&seq, n_max)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { q, profiles })
    }

    pub fn from_profiles(q: f64, profiles: Vec<QnProfile>) -> Result<Self> {
        if profiles.is_empty() {
            return Err(invalid("baseline", "needs at least one profile"));
        }
        Ok(Self { q, profiles })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Q2Deviation {
    pub text_q2: f64,
    pub baseline_mean: f64,
    /// Spread of `Q_2` across baseline replicates.
    pub baseline_sd: f64,
    pub replicates: usize,
    /// `Q_2(text) - mean Q_2(baseline)`.
    pub deviation: f64,
    /// Error bar of the deviation: `baseline_sd * sqrt(1 + 1/R)`.
    pub error: f64,
}

impl Q2Deviation {
    pub fn z(&self) -> Option<f64> {
        (self.error > 0.0).then(|| self.deviation / self.error)
    }
}

pub fn q2_dip_report(
    profile: &QnProfile,
    model: &SegmentationModel,
    baseline: &Baseline,
) -> Result<Q2Deviation> {
    if (baseline.q - model.q()).abs() > 1e-9 * model.q() {
        return Err(Error::BaselineMismatch {
            model: model.q(),
            baseline: baseline.q,
        });
    }
    let text_q2 = profile
        .get(2)
        .ok_or_else(|| invalid("profile", "needs n_max >= 2"))?;
    let q2: Vec<f64> = baseline
        .profiles
        .iter()
        .map(|p| {
            p.get(2)
                .ok_or_else(|| invalid("baseline profile", "needs n_max >= 2"))
        })
        .collect::<Result<_>>()?;
    let r = q2.len() as f64;
    let baseline_mean = q2.iter().sum::<f64>() / r;
    let baseline_sd = if q2.len() > 1 {
        (q2.iter().map(|v| (v - baseline_mean).powi(2)).sum::<f64>() / (r - 1.0)).sqrt()
    } else {
        0.0
    };
    Ok(Q2Deviation {
        text_q2,
        baseline_mean,
        baseline_sd,
        replicates: q2.len(),
        deviation: text_q2 - baseline_mean,
        error: baseline_sd * (1.0 + 1.0 / r).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[u32]) -> LengthSequence {
        LengthSequence::new(v.to_vec()).unwrap()
    }

    fn profile_of(values: &[f64]) -> QnProfile {
        QnProfile {
            values: values.to_vec(),
            counts: vec![0; values.len()],
            words: 1,
            counting: Counting::Circular,
        }
    }

    fn flags(profile: &QnProfile, n: &[usize]) -> QnSignificance {
        let mut sig = qn_significance(
            profile,
            &QnOptions {
                window: QnWindow::new(1, profile.n_max()).unwrap(),
                ..Default::default()
            },
        )
        .unwrap();
        sig.flagged = n
            .iter()
            .map(|&n| FlaggedN {
                n,
                q: 1.0,
                z: 5.0,
                p: 0.0,
                expected_count: 0.0,
            })
            .collect();
        sig
    }

    #[test]
    fn monosyllables() {
        let p = qn_profile(&seq(&[1; 7]), 20).unwrap();
        assert!(p.values().iter().all(|&q| q == 1.0));
    }

    #[test]
    fn disyllables() {
        let p = qn_profile(&seq(&[2; 6]), 20).unwrap();
        for (n, q) in p.iter() {
            assert_eq!(q, if n % 2 == 0 { 1.0 } else { 0.0 }, "n={n}");
        }
    }

    #[test]
    fn alternating_two_one() {
        let p = qn_profile(&seq(&[2, 1, 2, 1, 2, 1, 2, 1]), 30).unwrap();
        for (n, q) in p.iter() {
            assert_eq!(q, if n % 3 == 0 { 1.0 } else { 0.5 }, "n={n}");
        }
    }

    #[test]
    fn short_circular_sequence_wraps_repeatedly() {
        // K = 2 with N far above the total syllable count
        let p = qn_profile(&seq(&[1, 2]), 12).unwrap();
        assert_eq!(p.get(3), Some(1.0));
        assert_eq!(p.get(1), Some(0.5));
        assert_eq!(p.get(12), Some(1.0));
    }

    #[test]
    fn truncated_counting_drops_wrapping_runs() {
        let p = qn_profile_with(&seq(&[1, 1, 1]), 3, Counting::Truncated).unwrap();
        assert_eq!(p.counts(), [3, 2, 1]);
    }

    #[test]
    fn rejects_zero_n() {
        assert!(qn_profile(&seq(&[1]), 0).is_err());
        assert!(qn_profile(&LengthSequence::default(), 3).is_err());
    }

    #[test]
    fn run_table_identity() {
        let s = seq(&[3, 1, 1, 2, 1, 4, 1]);
        let t = run_length_table(&s, 20, Counting::Circular).unwrap();
        for run in 1..=20 {
            assert_eq!(t.row_total(run), 7);
        }
        assert_eq!(t.count(3, 1), 1);
        assert_eq!(t.count(13, 7), 7);
        let t = run_length_table(&s, 3, Counting::Truncated).unwrap();
        assert_eq!(t.row_total(3), 5);
    }

    #[test]
    fn window_parsing() {
        assert_eq!(
            "1..200".parse::<QnWindow>().unwrap(),
            QnWindow { start: 1, end: 200 }
        );
        assert_eq!(
            "3..=9".parse::<QnWindow>().unwrap(),
            QnWindow { start: 3, end: 9 }
        );
        assert!("5..5".parse::<QnWindow>().is_err());
        assert!("0..5".parse::<QnWindow>().is_err());
        assert!("x..5".parse::<QnWindow>().is_err());
        assert!("15".parse::<QnWindow>().is_err());
    }

    #[test]
    fn flat_profile_is_degenerate() {
        let p = profile_of(&[0.7; 10]);
        let sig = qn_significance(
            &p,
            &QnOptions {
                window: QnWindow::new(1, 10).unwrap(),
                sigma: SigmaMode::Conventional,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(sig.degenerate_flat);
        assert_eq!(sig.sigma_conventional, 0.0);
        assert!(sig.flagged.is_empty());
    }

    #[test]
    fn window_errors() {
        let p = profile_of(&[0.7; 10]);
        let opts = |s, e| QnOptions {
            window: QnWindow { start: s, end: e },
            ..Default::default()
        };
        assert!(qn_significance(&p, &opts(1, 11)).is_err());
        assert!(qn_significance(&p, &opts(4, 4)).is_err());
        assert!(qn_significance(&p, &opts(0, 4)).is_err());
    }

    #[test]
    fn both_sigma_normalizations_reported() {
        let vals: Vec<f64> = (0..20).map(|i| 0.7 + 0.001 * (i % 5) as f64).collect();
        let p = profile_of(&vals);
        let opts = QnOptions {
            window: QnWindow::new(1, 20).unwrap(),
            ..Default::default()
        };
        let sig = qn_significance(&p, &opts).unwrap();
        assert!((sig.sigma_root_sum * 20f64.sqrt() - sig.sigma_conventional).abs() < 1e-15);
        for mode in [
            SigmaMode::RootSum,
            SigmaMode::Conventional,
            SigmaMode::Robust,
        ] {
            let sig = qn_significance(
                &p,
                &QnOptions {
                    sigma: mode,
                    ..opts
                },
            )
            .unwrap();
            for pt in &sig.points {
                assert!((pt.z - (pt.q - sig.center) / sig.sigma).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn isolated_spike_is_flagged() {
        let mut vals: Vec<f64> = (0..200)
            .map(|i| 0.69 + 0.002 * ((i * 37 % 11) as f64 - 5.0) / 5.0)
            .collect();
        vals[3] = 0.76;
        let p = profile_of(&vals);
        for mode in [SigmaMode::Conventional, SigmaMode::Robust] {
            let sig = qn_significance(
                &p,
                &QnOptions {
                    sigma: mode,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(
                sig.flagged.iter().map(|f| f.n).collect::<Vec<_>>(),
                [4],
                "{mode:?}"
            );
        }
    }

    #[test]
    fn scan_harmonics() {
        let p = profile_of(&[0.5; 20]);
        let fam = peak_scan(&p, &flags(&p, &[4, 8, 12])).unwrap();
        assert_eq!(
            fam,
            [HarmonicFamily {
                fundamental: 4,
                members: vec![4, 8, 12],
                fundamental_flagged: true
            }]
        );
        assert!(fam[0].has_harmonics());
    }

    #[test]
    fn scan_isolated() {
        let p = profile_of(&[0.5; 20]);
        let fam = peak_scan(&p, &flags(&p, &[4])).unwrap();
        assert_eq!(fam.len(), 1);
        assert!(fam[0].is_isolated());
    }

    #[test]
    fn scan_missing_fundamental() {
        let p = profile_of(&[0.5; 20]);
        let fam = peak_scan(&p, &flags(&p, &[4, 6, 8, 10])).unwrap();
        assert_eq!(
            fam,
            [HarmonicFamily {
                fundamental: 2,
                members: vec![4, 6, 8, 10],
                fundamental_flagged: false
            }]
        );
    }

    #[test]
    fn scan_unrelated_peaks() {
        let p = profile_of(&[0.5; 60]);
        let fam = peak_scan(&p, &flags(&p, &[8, 16, 24, 50])).unwrap();
        let f: Vec<_> = fam
            .iter()
            .map(|f| (f.fundamental, f.members.len()))
            .collect();
        assert_eq!(f, [(8, 3), (50, 1)]);
    }

    #[test]
    fn scan_rejects_foreign_significance() {
        let p = profile_of(&[0.5; 20]);
        let other = profile_of(&[0.4; 20]);
        assert!(peak_scan(&other, &flags(&p, &[4])).is_err());
    }

    #[test]
    fn q2_self_baseline_is_zero() {
        let s = random_segmented(0.75, 2000, 5).unwrap();
        let model = crate::seqmodel::fit_model(&s).unwrap();
        let p = qn_profile(&s, 10).unwrap();
        let base = Baseline::from_profiles(model.q(), vec![p.clone()]).unwrap();
        let d = q2_dip_report(&p, &model, &base).unwrap();
        assert_eq!(d.deviation, 0.0);
    }

    #[test]
    fn q2_mismatch_errors() {
        let s = random_segmented(0.75, 500, 5).unwrap();
        let model = crate::seqmodel::fit_model(&s).unwrap();
        let p = qn_profile(&s, 10).unwrap();
        let base = Baseline::from_profiles(0.5, vec![p.clone()]).unwrap();
        assert!(matches!(
            q2_dip_report(&p, &model, &base),
            Err(Error::BaselineMismatch { .. })
        ));
    }
}
