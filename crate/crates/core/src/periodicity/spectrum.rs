//! Fourier coefficients of a length sequence and their significance.
//!
//! Coefficients use 1-based word positions and unitary scaling:
//! `S~_m = K^(-1/2) * sum_{k=1..K} S_k exp(-2 pi i m k / K)`.
//! The 1-based index only contributes a phase `exp(-2 pi i m / K)` relative
//! to a standard FFT, but it fixes the sign of `S~_{K/2}`: a negative value
//! means words at even positions are shorter than words at odd positions.

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use super::gaussian::{standard_tail, Tail};
use crate::error::{Error, Result};
use crate::seqmodel::{fit_model, LengthSequence, SegmentationModel};

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    coefficients: Vec<Complex64>,
    model: SegmentationModel,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// Coefficient `m`, taken modulo `K`.
    pub fn get(&self, m: i64) -> Complex64 {
        let k = self.len() as i64;
        self.coefficients[m.rem_euclid(k) as usize]
    }

    pub fn model(&self) -> &SegmentationModel {
        &self.model
    }

    /// `S~_{K/2}` when `K` is even.
    pub fn nyquist(&self) -> Option<Complex64> {
        self.len()
            .is_multiple_of(2)
            .then(|| self.coefficients[self.len() / 2])
    }
}

pub fn dft(seq: &LengthSequence) -> Result<Spectrum> {
    let k = seq.len();
    if k < 2 {
        return Err(Error::TooShort {
            what: "the Fourier transform",
            need: 2,
            got: k,
        });
    }
    let model = fit_model(seq)?;
    let mut buf: Vec<Complex64> = seq
        .lengths()
        .iter()
        .map(|&s| Complex64::new(s as f64, 0.0))
        .collect();
    FftPlanner::new().plan_fft_forward(k).process(&mut buf);
    let scale = 1.0 / (k as f64).sqrt();
    for (m, c) in buf.iter_mut().enumerate() {
        // shift from 0-based to 1-based positions
        let angle = -2.0 * std::f64::consts::PI * m as f64 / k as f64;
        *c *= Complex64::from_polar(scale, angle);
    }
    // the 1-based phase leaves S~_0 and S~_{K/2} real in exact arithmetic
    buf[0].im = 0.0;
    if k.is_multiple_of(2) {
        buf[k / 2].im = 0.0;
    }
    Ok(Spectrum {
        coefficients: buf,
        model,
    })
}

/// Variance assigned to the white-noise coefficient at `S~_{K/2}`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NyquistVariance {
    /// `Δ`: the coefficient is purely real and carries the full variance.
    #[default]
    Full,
    /// `Δ/2`, the same as every interior component.
    Half,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralOptions {
    /// Flag a component when `p * comparable_points < threshold`.
    pub threshold: f64,
    pub tail: Tail,
    pub nyquist_variance: NyquistVariance,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        Self {
            threshold: 0.01,
            tail: Tail::One,
            nyquist_variance: NyquistVariance::Full,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    Real,
    Imaginary,
}

/// White-noise variance of one real or imaginary component at frequency `m`.
pub fn component_variance(delta: f64, m: usize, k: usize, nyquist: NyquistVariance) -> f64 {
    if 2 * m == k && nyquist == NyquistVariance::Full {
        delta
    } else {
        delta / 2.0
    }
}

/// Number of independent components of one kind: real parts for
/// `m = 1..=K/2`, imaginary parts for `0 < m < K/2`.
pub fn comparable_points(k: usize, component: Component) -> usize {
    match component {
        Component::Real => k / 2,
        Component::Imaginary => k.saturating_sub(1) / 2,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComponentScore {
    pub z: f64,
    /// `P(X >= |value|)`
    pub p_one_sided: f64,
    /// `P(|X| >= |value|)`
    pub p_two_sided: f64,
    /// Whichever of the two the tail convention selects.
    pub tail_probability: f64,
    pub expected_count: f64,
}

/// Scores a single component against `N(0, variance)`.
pub fn score_component(
    value: f64,
    variance: f64,
    comparisons: usize,
    tail: Tail,
) -> ComponentScore {
    let z = value / variance.sqrt();
    let p_one_sided = standard_tail(z.abs());
    let p_two_sided = (2.0 * p_one_sided).min(1.0);
    let tail_probability = match tail {
        Tail::One => p_one_sided,
        Tail::Two => p_two_sided,
    };
    ComponentScore {
        z,
        p_one_sided,
        p_two_sided,
        tail_probability,
        expected_count: tail_probability * comparisons as f64,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralPeak {
    pub m: usize,
    pub component: Component,
    pub value: f64,
    /// `K / m`, in words.
    pub period: f64,
    pub variance: f64,
    pub z: f64,
    pub p_one_sided: f64,
    pub p_two_sided: f64,
    pub tail_probability: f64,
    pub expected_count: f64,
    pub flagged: bool,
}

impl SpectralPeak {
    pub fn evaluate(
        spectrum: &Spectrum,
        m: usize,
        component: Component,
        opts: &SpectralOptions,
    ) -> Self {
        let k = spectrum.len();
        let c = spectrum.coefficients[m];
        let value = match component {
            Component::Real => c.re,
            Component::Imaginary => c.im,
        };
        let variance = component_variance(spectrum.model.delta(), m, k, opts.nyquist_variance);
        let score = score_component(value, variance, comparable_points(k, component), opts.tail);
        Self {
            m,
            component,
            value,
            period: k as f64 / m as f64,
            variance,
            z: score.z,
            p_one_sided: score.p_one_sided,
            p_two_sided: score.p_two_sided,
            tail_probability: score.tail_probability,
            expected_count: score.expected_count,
            flagged: score.expected_count < opts.threshold,
        }
    }
}

/// Tests every independent real and imaginary component against the
/// white-noise Gaussian of the spectrum's model and returns the flagged
/// ones, strongest first. Nothing is flagged when the model variance is
/// zero (all words have the same length).
pub fn coefficient_significance(spectrum: &Spectrum, opts: &SpectralOptions) -> Vec<SpectralPeak> {
    if spectrum.model.delta().is_nan() || spectrum.model.delta() <= 0.0 {
        return Vec::new();
    }
    let k = spectrum.len();
    let mut peaks = Vec::new();
    for m in 1..=k / 2 {
        let mut components = vec![Component::Real];
        if 2 * m != k {
            components.push(Component::Imaginary);
        }
        for component in components {
            let peak = SpectralPeak::evaluate(spectrum, m, component, opts);
            if peak.flagged {
                peaks.push(peak);
            }
        }
    }
    peaks.sort_by(|a, b| a.expected_count.total_cmp(&b.expected_count));
    peaks
}
