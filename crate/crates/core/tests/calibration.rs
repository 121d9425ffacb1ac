//! Monte Carlo behaviour of the detectors on synthetic corpora.

use rayon::prelude::*;

use lineometer_core::analysis::{analyze_sequence, AnalysisOptions, InputKind};
use lineometer_core::qn::{q2_dip_report, Baseline};
use lineometer_core::synth::{alternating, isometric_lines, random_segmented, SynthRng};
use lineometer_core::{
    coefficient_significance, dft, fit_model, qn_profile, qn_significance, LengthSequence,
    QnOptions, SpectralOptions,
};

#[test]
fn full_suite_false_positive_rate() {
    let fired = (0..100u64)
        .into_par_iter()
        .filter(|&seed| {
            let seq = random_segmented(0.77, 20_000, 50_000 + seed).unwrap();
            analyze_sequence("g", InputKind::Lengths, &seq, &AnalysisOptions::default())
                .unwrap()
                .any_detection()
        })
        .count();
    assert!(fired <= 5, "{fired}/100 geometric corpora flagged");
}

#[test]
fn geometric_moments() {
    let q = 0.77;
    let k = 100_000;
    let (mean, var) = (1.0 / q, (1.0 - q) / (q * q));
    for seed in 0..10 {
        let s = random_segmented(q, k, seed).unwrap();
        let m = s.mean().unwrap();
        assert!(
            (m - mean).abs() < 4.0 * (var / k as f64).sqrt(),
            "seed {seed} mean {m}"
        );
        let v = s.empirical_variance().unwrap();
        // fourth central moment of the geometric law sets the variance error
        let mu4 = var * (9.0 * (1.0 - q) + q * q) / (q * q);
        let se = ((mu4 - var * var) / k as f64).sqrt();
        assert!((v - var).abs() < 4.0 * se, "seed {seed} variance {v}");
    }
}

#[test]
fn large_sample_mean() {
    let s = random_segmented(0.75, 1_000_000, 42).unwrap();
    assert!((s.mean().unwrap() - 4.0 / 3.0).abs() < 0.003);
}

#[test]
fn equal_means_look_random() {
    let flagged = (0..100u64)
        .into_par_iter()
        .filter(|&seed| {
            let s = alternating(20_000, 1.3, 1.3, seed).unwrap();
            let spec = dft(&s).unwrap();
            coefficient_significance(&spec, &SpectralOptions::default())
                .iter()
                .any(|p| 2 * p.m == s.len())
        })
        .count();
    assert!(flagged <= 5, "{flagged}/100");
}

#[test]
fn isometric_peak_at_line_length() {
    let s = isometric_lines(8, 10_000, 0.7, 3).unwrap();
    assert!(s.len() >= 50_000);
    let p = qn_profile(&s, 200).unwrap();
    let sig = qn_significance(&p, &QnOptions::default()).unwrap();
    let q8 = sig.flagged.iter().find(|f| f.n == 8).expect("Q_8 flagged");
    assert!(q8.z > 4.0);
}

#[test]
fn q2_against_own_baseline() {
    let s = random_segmented(0.77, 20_000, 1).unwrap();
    let model = fit_model(&s).unwrap();
    let p = qn_profile(&s, 10).unwrap();
    let base = Baseline::from_profiles(model.q(), vec![p.clone(), p.clone()]).unwrap();
    let d = q2_dip_report(&p, &model, &base).unwrap();
    assert_eq!(d.deviation, 0.0);
}

/// Geometric words, a quarter of them replaced by disyllables at random.
fn disyllable_enriched(words: usize, seed: u64) -> LengthSequence {
    let mut rng = SynthRng::new(seed);
    let v = (0..words)
        .map(|_| {
            if rng.unit() <= 0.25 {
                2
            } else {
                rng.geometric(0.8)
            }
        })
        .collect();
    LengthSequence::new(v).unwrap()
}

#[test]
fn disyllable_excess_raises_q2() {
    let s = disyllable_enriched(50_000, 4);
    let model = fit_model(&s).unwrap();
    let base = Baseline::generate(model.q(), 50_000, 10, 20, 900).unwrap();
    let d = q2_dip_report(&qn_profile(&s, 10).unwrap(), &model, &base).unwrap();
    assert!(d.z().unwrap() > 3.0, "{d:?}");
}

#[test]
fn q2_geometric_pairs_within_error() {
    let within = (0..40u64)
        .into_par_iter()
        .filter(|&seed| {
            let s = random_segmented(0.77, 20_000, 3_000 + seed).unwrap();
            let model = fit_model(&s).unwrap();
            let base = Baseline::generate(model.q(), 20_000, 4, 10, 10_000 * (seed + 1)).unwrap();
            let d = q2_dip_report(&qn_profile(&s, 4).unwrap(), &model, &base).unwrap();
            d.z().unwrap().abs() < 4.0
        })
        .count();
    assert!(within >= 36, "{within}/40");
}

#[test]
fn mismatched_baseline_rejected() {
    let s = random_segmented(0.77, 1_000, 1).unwrap();
    let model = fit_model(&s).unwrap();
    let base = Baseline::generate(0.5, 1_000, 4, 2, 0).unwrap();
    assert!(q2_dip_report(&qn_profile(&s, 4).unwrap(), &model, &base).is_err());
}
