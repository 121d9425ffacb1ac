use lineometer_cli::plot::{chart, rank_chart, Which};
use lineometer_core::periodicity::{rank_distribution, standard_tail, Sign};
use lineometer_core::synth::SynthRng;
use lineometer_core::{analyze_sequence, AnalysisOptions, InputKind, LengthSequence};

/// Standard normal sample by the Box-Muller transform.
fn gaussian_sample(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = SynthRng::new(seed);
    (0..n)
        .map(|_| {
            let (u, v) = (rng.unit(), rng.unit());
            (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos()
        })
        .collect()
}

#[test]
fn gaussian_ranks_follow_half_normal() {
    let z = gaussian_sample(4000, 11);
    for r in rank_distribution(&z).unwrap() {
        if r.fraction > 0.05 && r.sign == Sign::Positive {
            let expected = 2.0 * standard_tail(r.value);
            assert!((r.fraction - expected).abs() < 0.05, "{r:?} vs {expected}");
        }
    }
}

#[test]
fn rank_plot_matches_golden() {
    let svg = rank_chart("Gaussian sample", &gaussian_sample(300, 11))
        .unwrap()
        .render();
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/rank_gaussian.svg");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(path, &svg).unwrap();
    }
    let golden = std::fs::read_to_string(path).expect("golden SVG; rerun with UPDATE_GOLDEN=1");
    assert_eq!(svg, golden);
}

#[test]
fn disyllables_give_a_comb() {
    let seq = LengthSequence::new(vec![2; 200]).unwrap();
    let r = analyze_sequence("d", InputKind::Lengths, &seq, &AnalysisOptions::default()).unwrap();
    let values = r.qn.profile.values();
    assert!(values
        .iter()
        .enumerate()
        .all(|(i, &q)| q == if i % 2 == 1 { 1.0 } else { 0.0 }));
    let svg = chart(&r, Which::Qn).unwrap().render();
    assert!(svg.contains("<polyline"));
}

#[test]
fn empty_series_is_an_error() {
    assert!(rank_chart("none", &[]).is_err());
    let seq = LengthSequence::new(vec![3]).unwrap();
    let r = analyze_sequence(
        "one",
        InputKind::Lengths,
        &seq,
        &AnalysisOptions {
            qn_max: 200,
            ..Default::default()
        },
    )
    .unwrap();
    assert!(chart(&r, Which::Spectrum).is_err());
    assert!(chart(&r, Which::Correlation).is_err());
}
