//! Reference implementations that share no code with the library.
#![allow(dead_code)]

use std::f64::consts::PI;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Direct `O(K^2)` transform with 1-based positions and unitary scaling.
pub fn direct_dft(s: &[u32]) -> Vec<(f64, f64)> {
    let k = s.len();
    let scale = 1.0 / (k as f64).sqrt();
    (0..k)
        .map(|m| {
            let (mut re, mut im) = (0.0, 0.0);
            for (j, &v) in s.iter().enumerate() {
                // reduce the phase index exactly before converting to an angle
                let idx = (m * (j + 1)) % k;
                let angle = -2.0 * PI * idx as f64 / k as f64;
                re += v as f64 * angle.cos();
                im += v as f64 * angle.sin();
            }
            (re * scale, im * scale)
        })
        .collect()
}

/// Counts runs of `r` consecutive words (positions modulo `K`) totalling
/// exactly `n` syllables by re-summing every run from scratch.
pub fn brute_qn_counts(s: &[u32], n_max: usize, circular: bool) -> Vec<u64> {
    let k = s.len();
    let mut counts = vec![0u64; n_max];
    for start in 0..k {
        for run in 1..=n_max {
            if !circular && start + run > k {
                break;
            }
            let total: usize = (0..run).map(|j| s[(start + j) % k] as usize).sum();
            if total <= n_max {
                counts[total - 1] += 1;
            }
        }
    }
    counts
}

fn normal_density(t: f64) -> f64 {
    (-0.5 * t * t).exp() / (2.0 * PI).sqrt()
}

/// Upper Gaussian tail by composite Gauss-Legendre quadrature on `[z, z + 12]`.
pub fn quadrature_tail(z: f64) -> f64 {
    // 5-point Gauss-Legendre nodes and weights on [-1, 1]
    const X: [f64; 5] = [
        0.0,
        0.538_469_310_105_683_1,
        -0.538_469_310_105_683_1,
        0.906_179_845_938_664,
        -0.906_179_845_938_664,
    ];
    const W: [f64; 5] = [
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_5,
        0.478_628_670_499_366_5,
        0.236_926_885_056_189_1,
        0.236_926_885_056_189_1,
    ];
    let panels = 4000;
    let h = 12.0 / panels as f64;
    let mut sum = 0.0;
    let mut comp = 0.0;
    for i in 0..panels {
        let mid = z + (i as f64 + 0.5) * h;
        let panel: f64 = X
            .iter()
            .zip(W)
            .map(|(x, w)| w * normal_density(mid + 0.5 * h * x))
            .sum::<f64>()
            * 0.5
            * h;
        // Kahan summation
        let y = panel - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Word lengths drawn uniformly from `1..=max_len`.
pub fn random_lengths(seed: u64, k: usize, max_len: u32) -> Vec<u32> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..k).map(|_| rng.random_range(1..=max_len)).collect()
}

/// Spearman rank correlation without tie handling.
pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    fn ranks(v: &[f64]) -> Vec<f64> {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
        let mut r = vec![0.0; v.len()];
        for (rank, i) in idx.into_iter().enumerate() {
            r[i] = rank as f64;
        }
        r
    }
    let (rx, ry) = (ranks(x), ranks(y));
    let n = x.len() as f64;
    let d2: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - b).powi(2)).sum();
    1.0 - 6.0 * d2 / (n * (n * n - 1.0))
}
