//! Report output in text, JSON and CSV.

use std::fmt::Write;

use anyhow::{bail, Result};
use lineometer_core::periodicity::{Component, SpectralPeak};
use lineometer_core::qn::HarmonicFamily;
use lineometer_core::{AnalysisReport, Tail};
use serde::{Deserialize, Serialize};

/// The outcome for one source: a report or the error that prevented it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<AnalysisReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

/// Series written by `--format csv`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum CsvSeries {
    #[default]
    Qn,
    Peaks,
    Spectrum,
    Correlation,
    Histogram,
}

fn component(c: Component) -> &'static str {
    match c {
        Component::Real => "re",
        Component::Imaginary => "im",
    }
}

fn peak_line(p: &SpectralPeak) -> String {
    format!(
        "m={:<7} {}  value={:+.4}  period={:.3}  z={:+.3}  p_one={:.3e}  p_two={:.3e}  expected={:.3e}",
        p.m,
        component(p.component),
        p.value,
        p.period,
        p.z,
        p.p_one_sided,
        p.p_two_sided,
        p.expected_count
    )
}

fn family_line(f: &HarmonicFamily) -> String {
    let others: Vec<String> = f
        .members
        .iter()
        .filter(|&&m| m != f.fundamental)
        .map(usize::to_string)
        .collect();
    let mut s = format!("line length {}", f.fundamental);
    if !f.fundamental_flagged {
        s.push_str(" (not itself flagged)");
    }
    if f.is_isolated() {
        s.push_str(", isolated peak");
    } else if !others.is_empty() {
        let _ = write!(s, ", multiples {}", others.join(", "));
    }
    s
}

pub fn text_report(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let src = &r.source;
    let opts = &r.conventions.options;
    let _ = writeln!(
        s,
        "== {} ({:?}, {} words, {} syllables)",
        src.name, src.input, src.words, src.syllables
    );
    let _ = writeln!(
        s,
        "model: s = {:.4}  q = {:.4}  delta = {:.4}  sqrt(delta) = {:.4}  (sample variance {:.4})",
        src.s, src.q, src.delta, src.sqrt_delta, src.empirical_variance
    );
    let _ = writeln!(s, "\nword lengths (S, observed, geometric, excess):");
    for row in &r.histogram {
        let _ = writeln!(
            s,
            "  {:>3}  {:.5}  {:.5}  {:+.5}",
            row.syllables, row.p_empirical, row.p_geometric, row.excess
        );
    }
    let tail = match opts.tail {
        Tail::One => "one-sided",
        Tail::Two => "two-sided",
    };
    if let Some(sp) = &r.spectrum {
        let _ = writeln!(
            s,
            "\nFourier coefficients: {} real and {} imaginary comparisons, {tail}, threshold {}",
            sp.comparable_real, sp.comparable_imaginary, opts.threshold
        );
        if let Some(n) = &sp.nyquist {
            let _ = writeln!(s, "  half-frequency term: {}", peak_line(n));
        }
        if sp.peaks.is_empty() {
            let _ = writeln!(s, "  no flagged coefficients");
        }
        for p in &sp.peaks {
            let _ = writeln!(s, "  flagged {}", peak_line(p));
        }
    }
    if let Some(g) = &r.correlation {
        let head: Vec<String> = g
            .values
            .iter()
            .skip(1)
            .take(8)
            .map(|v| format!("{v:+.4}"))
            .collect();
        let _ = writeln!(s, "\ncorrelation G_1..: {}", head.join(" "));
    }
    let sig = &r.qn.significance;
    let _ = writeln!(
        s,
        "\nQ_n over n = {}: mean {:.5}  sigma_root_sum {:.3e}  sigma_conventional {:.3e}  median {:.5}  sigma_robust {:.3e}",
        sig.window, sig.mean, sig.sigma_root_sum, sig.sigma_conventional, sig.median, sig.sigma_robust
    );
    let _ = writeln!(
        s,
        "  scored with {:?} spread (centre {:.5}, sigma {:.3e}), {tail}, threshold {}",
        sig.sigma_mode, sig.center, sig.sigma, sig.threshold
    );
    if sig.flagged.is_empty() {
        let _ = writeln!(s, "  no flagged n");
    }
    for f in &sig.flagged {
        let _ = writeln!(
            s,
            "  flagged n={:<4} Q={:.5}  z={:+.3}  p={:.3e}  expected={:.3e}",
            f.n, f.q, f.z, f.p, f.expected_count
        );
    }
    for f in &r.qn.families {
        let _ = writeln!(s, "  {}", family_line(f));
    }
    if !r.notices.is_empty() {
        let _ = writeln!(s, "\nnotices:");
        for n in &r.notices {
            let _ = writeln!(s, "  {n}");
        }
    }
    let _ = writeln!(s, "\nconventions (lineometer {}):", r.tool_version);
    let _ = writeln!(
        s,
        "  qn_max={} window={} threshold={} tail={:?} sigma={:?} counting={:?} nyquist_variance={:?} max_lag={}",
        opts.qn_max,
        opts.window,
        opts.threshold,
        opts.tail,
        opts.sigma,
        opts.counting,
        opts.nyquist_variance,
        opts.max_lag
    );
    for n in &r.conventions.notes {
        let _ = writeln!(s, "  - {n}");
    }
    s
}

pub fn text(records: &[ReportRecord]) -> String {
    let mut out = String::new();
    for (i, rec) in records.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        match (&rec.report, &rec.error) {
            (Some(r), _) => out.push_str(&text_report(r)),
            (None, Some(e)) => {
                let _ = writeln!(out, "== {}: error: {e}", rec.source);
            }
            (None, None) => {}
        }
    }
    out
}

pub fn json(records: &[ReportRecord]) -> Result<String> {
    let mut s = serde_json::to_string_pretty(records)?;
    s.push('\n');
    Ok(s)
}

pub fn csv(records: &[ReportRecord], series: CsvSeries) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let header: &[&str] = match series {
        CsvSeries::Qn => &["source", "n", "q", "z", "p", "flagged"],
        CsvSeries::Peaks => &[
            "source",
            "m",
            "component",
            "value",
            "period",
            "variance",
            "z",
            "p_one_sided",
            "p_two_sided",
            "expected_count",
        ],
        CsvSeries::Spectrum => &["source", "m", "re", "im"],
        CsvSeries::Correlation => &["source", "lag", "g"],
        CsvSeries::Histogram => &["source", "S", "p_empirical", "p_geometric", "excess"],
    };
    w.write_record(header)?;
    for rec in records {
        let Some(r) = &rec.report else { continue };
        let src = rec.source.as_str();
        match series {
            CsvSeries::Qn => {
                let sig = &r.qn.significance;
                for p in &sig.points {
                    let flagged = sig.flagged.iter().any(|f| f.n == p.n);
                    w.serialize((src, p.n, p.q, p.z, p.p, flagged))?;
                }
            }
            CsvSeries::Peaks => {
                for p in r.spectral_peaks() {
                    w.serialize((
                        src,
                        p.m,
                        component(p.component),
                        p.value,
                        p.period,
                        p.variance,
                        p.z,
                        p.p_one_sided,
                        p.p_two_sided,
                        p.expected_count,
                    ))?;
                }
            }
            CsvSeries::Spectrum => {
                if let Some(sp) = &r.spectrum {
                    for (m, (re, im)) in sp.re.iter().zip(&sp.im).enumerate() {
                        w.serialize((src, m, re, im))?;
                    }
                }
            }
            CsvSeries::Correlation => {
                if let Some(g) = &r.correlation {
                    for (lag, v) in g.values.iter().enumerate() {
                        w.serialize((src, lag, v))?;
                    }
                }
            }
            CsvSeries::Histogram => {
                for row in &r.histogram {
                    w.serialize((
                        src,
                        row.syllables,
                        row.p_empirical,
                        row.p_geometric,
                        row.excess,
                    ))?;
                }
            }
        }
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Reads records written by [`json`], or a single bare report.
pub fn parse_records(text: &str) -> Result<Vec<ReportRecord>> {
    if let Ok(records) = serde_json::from_str::<Vec<ReportRecord>>(text) {
        return Ok(records);
    }
    match serde_json::from_str::<AnalysisReport>(text) {
        Ok(r) => Ok(vec![ReportRecord {
            source: r.source.name.clone(),
            report: Some(r),
            error: None,
        }]),
        Err(e) => bail!("not an analysis report: {e}"),
    }
}
