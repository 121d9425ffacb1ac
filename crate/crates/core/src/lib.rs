//! Statistics for detecting mathematical lineation in English text.
//!
//! A text becomes a sequence of per-word syllable counts ([`textprep`]),
//! which is compared against the random-segmentation model ([`seqmodel`])
//! with three detectors: Fourier coefficients and the word-length
//! correlation function ([`periodicity`]), and the `Q_n` word-boundary
//! distribution ([`qn`]). [`synth`] generates seeded reference corpora.

pub mod analysis;
pub mod error;
pub mod lengthfile;
pub mod periodicity;
pub mod qn;
pub mod seqmodel;
pub mod synth;
pub mod textprep;

pub use analysis::{analyze_sequence, AnalysisOptions, AnalysisReport, InputKind};
pub use error::{Error, Result};
pub use lengthfile::LengthFile;
pub use periodicity::{
    coefficient_significance, correlation, dft, gaussian_tail, rank_distribution,
    CorrelationProfile, NyquistVariance, SpectralOptions, SpectralPeak, Spectrum, Tail,
};
pub use qn::{
    peak_scan, q2_dip_report, qn_profile, qn_significance, Counting, HarmonicFamily, QnOptions,
    QnProfile, QnSignificance, QnWindow, SigmaMode,
};
pub use seqmodel::{
    excess_table, fit_model, geometric_pmf, histogram, LengthHistogram, LengthSequence,
    SegmentationModel,
};
pub use synth::GeneratorSpec;
pub use textprep::{count_syllables, syllabify_text, tokenize, ExceptionLexicon, Token};
