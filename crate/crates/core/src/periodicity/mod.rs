//! Periodicity detection in the frequency and lag domains.

mod correlation;
mod gaussian;
mod spectrum;

pub use correlation::{correlation, CorrelationProfile};
pub use gaussian::{gaussian_tail, rank_distribution, standard_tail, RankPoint, Sign, Tail};
pub use spectrum::{
    coefficient_significance, comparable_points, component_variance, dft, score_component,
    Component, ComponentScore, NyquistVariance, SpectralOptions, SpectralPeak, Spectrum,
};
