//! End-to-end analysis of one length sequence.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::periodicity::{
    coefficient_significance, comparable_points, correlation, dft, Component, CorrelationProfile,
    NyquistVariance, SpectralOptions, SpectralPeak, Tail,
};
use crate::qn::{
    peak_scan, qn_profile_with, qn_significance, Counting, HarmonicFamily, QnOptions, QnProfile,
    QnSignificance, QnWindow, SigmaMode,
};
use crate::seqmodel::{excess_table, fit_model, histogram, ExcessRow, LengthSequence};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalysisOptions {
    pub qn_max: usize,
    pub window: QnWindow,
    pub threshold: f64,
    pub tail: Tail,
    pub sigma: SigmaMode,
    pub counting: Counting,
    pub nyquist_variance: NyquistVariance,
    pub max_lag: usize,
    pub excess_max: u32,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            qn_max: 200,
            window: QnWindow::default(),
            threshold: 0.01,
            tail: Tail::One,
            sigma: SigmaMode::Robust,
            counting: Counting::Circular,
            nyquist_variance: NyquistVariance::Full,
            max_lag: 200,
            excess_max: 8,
        }
    }
}

impl AnalysisOptions {
    pub fn spectral(&self) -> SpectralOptions {
        SpectralOptions {
            threshold: self.threshold,
            tail: self.tail,
            nyquist_variance: self.nyquist_variance,
        }
    }

    pub fn qn(&self) -> QnOptions {
        QnOptions {
            window: self.window,
            threshold: self.threshold,
            tail: self.tail,
            sigma: self.sigma,
        }
    }
}

/// Where a sequence came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputKind {
    Text,
    Lengths,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SourceSummary {
    pub name: String,
    pub input: InputKind,
    pub words: usize,
    pub syllables: u64,
    pub s: f64,
    pub q: f64,
    pub delta: f64,
    pub sqrt_delta: f64,
    pub empirical_variance: f64,
}

/// Every convention that affects a reported number.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Conventions {
    pub options: AnalysisOptions,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralSection {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
    pub comparable_real: usize,
    pub comparable_imaginary: usize,
    /// Real part of `S~_{K/2}` scored under the options in force (even K only).
    pub nyquist: Option<SpectralPeak>,
    pub peaks: Vec<SpectralPeak>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QnSection {
    pub profile: QnProfile,
    pub significance: QnSignificance,
    pub families: Vec<HarmonicFamily>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub tool_version: String,
    pub source: SourceSummary,
    pub conventions: Conventions,
    pub histogram: Vec<ExcessRow>,
    pub spectrum: Option<SpectralSection>,
    pub correlation: Option<CorrelationProfile>,
    pub qn: QnSection,
    pub notices: Vec<String>,
}

impl AnalysisReport {
    pub fn spectral_peaks(&self) -> &[SpectralPeak] {
        self.spectrum.as_ref().map_or(&[], |s| &s.peaks)
    }

    /// Any `Q_n` peak was flagged.
    pub fn lineation_detected(&self) -> bool {
        !self.qn.significance.flagged.is_empty()
    }

    pub fn periodicity_detected(&self) -> bool {
        !self.spectral_peaks().is_empty()
    }

    pub fn any_detection(&self) -> bool {
        self.lineation_detected() || self.periodicity_detected()
    }
}

fn convention_notes(opts: &AnalysisOptions, input: InputKind) -> Vec<String> {
    let mut notes = vec![
        "spectral p_one_sided = P(X >= |value|) and p_two_sided = 2 p_one_sided, with X ~ N(0, variance)".to_owned(),
        format!(
            "spectral variance is delta/2 per component for 0 < m < K/2; S_(K/2) uses {}",
            match opts.nyquist_variance {
                NyquistVariance::Full => "delta",
                NyquistVariance::Half => "delta/2",
            }
        ),
        "spectral expected_count = tail probability x number of independent components of the same kind (K/2 real, (K-1)/2 imaginary)".to_owned(),
        format!(
            "Q_n significance: sigma_root_sum = sqrt(sum (Q_n - mean)^2) / N and sigma_conventional = sqrt(sum (Q_n - mean)^2 / N) are both reported; flags use {:?}",
            opts.sigma
        ),
        format!(
            "Q_n runs are counted {}",
            match opts.counting {
                Counting::Circular => "circularly (positions modulo K)",
                Counting::Truncated => "without wrapping past the last word",
            }
        ),
        "delta is the geometric-model variance (1 - q)/q^2 with q = 1/s; empirical_variance is diagnostic only".to_owned(),
    ];
    if input == InputKind::Text {
        notes.push(
            "contractions and elisions are single words counted by the syllable heuristic; hyphenated compounds are single words with summed syllables; numerals are dropped".to_owned(),
        );
    }
    notes
}

pub fn analyze_sequence(
    name: &str,
    input: InputKind,
    seq: &LengthSequence,
    opts: &AnalysisOptions,
) -> Result<AnalysisReport> {
    if seq.is_empty() {
        return Err(Error::EmptySequence { what: "analysis" });
    }
    if opts.window.end > opts.qn_max {
        return Err(invalid(
            "Q_n window",
            format!("{} extends past --qn-max {}", opts.window, opts.qn_max),
        ));
    }
    let model = fit_model(seq)?;
    let hist = histogram(seq)?;
    let mut notices = Vec::new();

    let spectrum = match dft(seq) {
        Ok(spec) => {
            if seq.is_constant() {
                notices.push("degenerate-constant: every word has the same length; no spectral test is possible".to_owned());
            }
            let k = spec.len();
            let sopts = opts.spectral();
            let nyquist = (k % 2 == 0 && model.delta() > 0.0)
                .then(|| SpectralPeak::evaluate(&spec, k / 2, Component::Real, &sopts));
            Some(SpectralSection {
                re: spec.coefficients().iter().map(|c| c.re).collect(),
                im: spec.coefficients().iter().map(|c| c.im).collect(),
                comparable_real: comparable_points(k, Component::Real),
                comparable_imaginary: comparable_points(k, Component::Imaginary),
                nyquist,
                peaks: coefficient_significance(&spec, &sopts),
            })
        }
        Err(Error::TooShort { .. }) => {
            notices.push("spectrum skipped: fewer than two words".to_owned());
            None
        }
        Err(e) => return Err(e),
    };

    let correlation = if seq.len() < 2 {
        None
    } else {
        match correlation(seq, opts.max_lag.min(seq.len() - 1)) {
            Ok(c) => Some(c),
            Err(Error::DegenerateConstant) => {
                notices.push("degenerate-constant: correlation function undefined".to_owned());
                None
            }
            Err(e) => return Err(e),
        }
    };

    let profile = qn_profile_with(seq, opts.qn_max, opts.counting)?;
    let significance = qn_significance(&profile, &opts.qn())?;
    if significance.degenerate_flat {
        notices.push(
            "degenerate-flat: Q_n has zero spread over the window; no peaks can be scored"
                .to_owned(),
        );
    }
    if significance.robust_fallback && opts.sigma == SigmaMode::Robust {
        notices.push(
            "robust spread was zero; conventional standard deviation used instead".to_owned(),
        );
    }
    let families = peak_scan(&profile, &significance)?;

    Ok(AnalysisReport {
        tool_version: TOOL_VERSION.to_owned(),
        source: SourceSummary {
            name: name.to_owned(),
            input,
            words: seq.len(),
            syllables: seq.total_syllables(),
            s: model.mean(),
            q: model.q(),
            delta: model.delta(),
            sqrt_delta: model.delta().sqrt(),
            empirical_variance: seq.empirical_variance().unwrap_or(0.0),
        },
        conventions: Conventions {
            options: *opts,
            notes: convention_notes(opts, input),
        },
        histogram: excess_table(&hist, &model, opts.excess_max.max(hist.max_length())),
        spectrum,
        correlation,
        qn: QnSection {
            profile,
            significance,
            families,
        },
        notices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::isometric_lines;
    use crate::textprep::{syllabify_text, ExceptionLexicon};

    #[test]
    fn repeated_short_sentence() {
        let text = "the cat sat ".repeat(40);
        let seq = syllabify_text(&text, &ExceptionLexicon::new());
        assert_eq!(seq.len() % 3, 0);
        let r =
            analyze_sequence("cats", InputKind::Text, &seq, &AnalysisOptions::default()).unwrap();
        assert_eq!(r.source.s, 1.0);
        assert!(r
            .notices
            .iter()
            .any(|n| n.starts_with("degenerate-constant")));
        assert!(r.correlation.is_none());
        assert!(!r.any_detection());
    }

    #[test]
    fn empty_is_error() {
        let r = analyze_sequence(
            "e",
            InputKind::Text,
            &LengthSequence::default(),
            &AnalysisOptions::default(),
        );
        assert!(r.is_err());
    }

    #[test]
    fn window_past_qn_max() {
        let seq = LengthSequence::new(vec![1, 2, 1]).unwrap();
        let opts = AnalysisOptions {
            qn_max: 50,
            ..Default::default()
        };
        assert!(analyze_sequence("x", InputKind::Lengths, &seq, &opts).is_err());
    }

    #[test]
    fn verse_fundamental() {
        let seq = isometric_lines(8, 3000, 0.7, 21).unwrap();
        let r =
            analyze_sequence("v", InputKind::Lengths, &seq, &AnalysisOptions::default()).unwrap();
        assert_eq!(r.qn.families.first().map(|f| f.fundamental), Some(8));
    }

    #[test]
    fn report_round_trips_json() {
        let seq = isometric_lines(6, 200, 0.7, 2).unwrap();
        let r =
            analyze_sequence("v", InputKind::Lengths, &seq, &AnalysisOptions::default()).unwrap();
        let back: AnalysisReport =
            serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }
}
