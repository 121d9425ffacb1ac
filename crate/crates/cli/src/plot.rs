//! Charts drawn from analysis reports.

use anyhow::{bail, Context, Result};
use lineometer_core::periodicity::{rank_distribution, standard_tail, Sign};
use lineometer_core::AnalysisReport;

use crate::svg::{Axis, Chart, Mark, Series};

const BLUE: &str = "#1f5fa8";
const RED: &str = "#c0392b";
const GREY: &str = "#555555";

/// Which series of a report to draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    /// `Q_n` against `n`, flagged points highlighted.
    Qn,
    /// Word-length correlation `G_l` against lag.
    Correlation,
    /// Real and imaginary Fourier coefficients against frequency.
    Spectrum,
    /// Standardized Fourier coefficients against their normalized rank.
    Rank,
    /// Standardized `Q_n` values against their normalized rank.
    QnRank,
    /// Word-length histogram with the fitted geometric law.
    Histogram,
}

pub fn chart(report: &AnalysisReport, which: Which) -> Result<Chart> {
    let name = &report.source.name;
    match which {
        Which::Qn => qn_chart(report),
        Which::Correlation => {
            let g = report
                .correlation
                .as_ref()
                .context("report has no correlation series")?;
            let pts: Vec<(f64, f64)> = g
                .values
                .iter()
                .enumerate()
                .skip(1)
                .map(|(l, &v)| (l as f64, v))
                .collect();
            if pts.is_empty() {
                bail!("correlation series is empty");
            }
            let mut c = Chart::new(
                &format!("Word-length correlation: {name}"),
                Axis::linear("lag (words)", 0.0, pts.len() as f64 + 1.0),
                Axis::fit("G", pts.iter().map(|p| p.1).chain([0.0])),
            );
            c.rules.push((0.0, String::new()));
            c.series.push(Series::new("G_l", pts, Mark::Stems, BLUE));
            Ok(c)
        }
        Which::Spectrum => {
            let sp = report.spectrum.as_ref().context("report has no spectrum")?;
            let half = sp.re.len() / 2;
            if half == 0 {
                bail!("spectrum is empty");
            }
            let re: Vec<(f64, f64)> = (1..=half).map(|m| (m as f64, sp.re[m])).collect();
            let im: Vec<(f64, f64)> = (1..=half).map(|m| (m as f64, sp.im[m])).collect();
            let mut c = Chart::new(
                &format!("Fourier coefficients: {name}"),
                Axis::linear("m", 0.0, half as f64),
                Axis::fit("coefficient", re.iter().chain(&im).map(|p| p.1)),
            );
            c.series.push(Series::new("real", re, Mark::Points, BLUE));
            c.series
                .push(Series::new("imaginary", im, Mark::Points, RED));
            Ok(c)
        }
        Which::Rank => {
            let sp = report.spectrum.as_ref().context("report has no spectrum")?;
            let k = sp.re.len();
            let delta = report.source.delta;
            if delta.is_nan() || delta <= 0.0 {
                bail!("model variance is zero; coefficients cannot be standardized");
            }
            let sd = (delta / 2.0).sqrt();
            let mut z: Vec<f64> = (1..k.div_ceil(2))
                .flat_map(|m| [sp.re[m] / sd, sp.im[m] / sd])
                .collect();
            if k % 2 == 0 && k >= 2 {
                let nyq_sd = sp.nyquist.map_or(delta.sqrt(), |p| p.variance.sqrt());
                z.push(sp.re[k / 2] / nyq_sd);
            }
            rank_chart(&format!("Coefficient rank distribution: {name}"), &z)
        }
        Which::QnRank => {
            let sig = &report.qn.significance;
            if sig.sigma.is_nan() || sig.sigma <= 0.0 {
                bail!("Q_n spread is zero; values cannot be standardized");
            }
            let z: Vec<f64> = sig
                .points
                .iter()
                .filter(|p| sig.window.contains(p.n))
                .map(|p| p.z)
                .collect();
            rank_chart(&format!("Q_n rank distribution: {name}"), &z)
        }
        Which::Histogram => {
            let rows = &report.histogram;
            if rows.is_empty() {
                bail!("histogram is empty");
            }
            let emp: Vec<(f64, f64)> = rows
                .iter()
                .map(|r| (r.syllables as f64, r.p_empirical))
                .collect();
            let geo: Vec<(f64, f64)> = rows
                .iter()
                .map(|r| (r.syllables as f64, r.p_geometric))
                .collect();
            let floor = emp
                .iter()
                .chain(&geo)
                .map(|p| p.1)
                .filter(|&p| p > 0.0)
                .fold(1.0, f64::min);
            let mut c = Chart::new(
                &format!("Word lengths: {name} (s = {:.3})", report.source.s),
                Axis::linear("syllables per word", 0.5, rows.len() as f64 + 0.5),
                Axis::log("probability", floor, 1.0),
            );
            c.series
                .push(Series::new("observed", emp, Mark::Stems, BLUE));
            c.series
                .push(Series::new("geometric model", geo, Mark::Line, RED));
            Ok(c)
        }
    }
}

fn qn_chart(report: &AnalysisReport) -> Result<Chart> {
    let profile = &report.qn.profile;
    let sig = &report.qn.significance;
    let pts: Vec<(f64, f64)> = profile.iter().map(|(n, q)| (n as f64, q)).collect();
    if pts.is_empty() {
        bail!("Q_n profile is empty");
    }
    let flagged: Vec<(f64, f64)> = sig.flagged.iter().map(|f| (f.n as f64, f.q)).collect();
    let mut c = Chart::new(
        &format!("Word-boundary distribution: {}", report.source.name),
        Axis::linear("n (syllables)", 0.0, pts.len() as f64),
        Axis::fit("Q_n", pts.iter().map(|p| p.1)),
    );
    c.rules.push((sig.center, "centre".to_owned()));
    c.series.push(Series::new("Q_n", pts, Mark::Line, BLUE));
    c.series
        .push(Series::new("flagged", flagged, Mark::Points, RED));
    Ok(c)
}

/// Plots standardized values against their normalized rank on a log scale,
/// positive and negative values ranked separately, with the half-normal
/// expectation `2 P(Z >= s)`.
pub fn rank_chart(title: &str, standardized: &[f64]) -> Result<Chart> {
    let ranks = rank_distribution(standardized).context("no values to rank")?;
    let split = |sign| -> Vec<(f64, f64)> {
        ranks
            .iter()
            .filter(|r| r.sign == sign)
            .map(|r| (r.value, r.fraction))
            .collect()
    };
    let (pos, neg) = (split(Sign::Positive), split(Sign::Negative));
    let smax = ranks.iter().map(|r| r.value).fold(0.0, f64::max);
    let fmin = ranks.iter().map(|r| r.fraction).fold(1.0, f64::min);
    let xmax = (smax * 1.05).max(1.0).ceil();
    let curve: Vec<(f64, f64)> = (0..=200)
        .map(|i| {
            let s = xmax * i as f64 / 200.0;
            (s, 2.0 * standard_tail(s))
        })
        .collect();
    let mut c = Chart::new(
        title,
        Axis::linear("standardized magnitude", 0.0, xmax),
        Axis::log("normalized rank", fmin, 1.0),
    );
    c.series
        .push(Series::new("2 P(Z >= s)", curve, Mark::Line, GREY));
    c.series
        .push(Series::new("positive", pos, Mark::Points, BLUE));
    c.series
        .push(Series::new("negative", neg, Mark::Points, RED));
    Ok(c)
}
