//! False-positive rates of the detectors on random-segmented corpora.

use lineometer_core::synth::random_segmented;
use lineometer_core::{analyze_sequence, AnalysisOptions, InputKind, Result};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Calibration {
    pub q: f64,
    pub words: usize,
    pub seeds: usize,
    pub first_seed: u64,
    pub options: AnalysisOptions,
    /// Corpora where a `Q_n` peak was flagged.
    pub qn_flagged: usize,
    /// Corpora where a Fourier coefficient was flagged.
    pub spectral_flagged: usize,
    /// Corpora where either detector fired.
    pub any_flagged: usize,
    pub rate: f64,
}

/// Analyzes `seeds` geometric corpora with seeds `first_seed..`.
pub fn calibrate(
    q: f64,
    words: usize,
    seeds: usize,
    first_seed: u64,
    opts: &AnalysisOptions,
) -> Result<Calibration> {
    let flags = (0..seeds as u64)
        .into_par_iter()
        .map(|i| {
            let seed = first_seed.wrapping_add(i);
            let seq = random_segmented(q, words, seed)?;
            let r = analyze_sequence(&format!("seed {seed}"), InputKind::Lengths, &seq, opts)?;
            Ok((r.lineation_detected(), r.periodicity_detected()))
        })
        .collect::<Result<Vec<_>>>()?;
    let any_flagged = flags.iter().filter(|(a, b)| *a || *b).count();
    Ok(Calibration {
        q,
        words,
        seeds,
        first_seed,
        options: *opts,
        qn_flagged: flags.iter().filter(|f| f.0).count(),
        spectral_flagged: flags.iter().filter(|f| f.1).count(),
        any_flagged,
        rate: any_flagged as f64 / seeds.max(1) as f64,
    })
}

impl Calibration {
    pub fn text(&self) -> String {
        format!(
            "{} geometric corpora (q = {}, {} words, seeds {}..{})\n  Q_n detector fired: {}\n  spectral detector fired: {}\n  either fired: {} ({:.1}%)\n",
            self.seeds,
            self.q,
            self.words,
            self.first_seed,
            self.first_seed.wrapping_add(self.seeds as u64),
            self.qn_flagged,
            self.spectral_flagged,
            self.any_flagged,
            100.0 * self.rate
        )
    }
}
