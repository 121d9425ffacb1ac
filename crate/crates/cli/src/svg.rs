//! Minimal SVG line/scatter charts.

use std::fmt::Write;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 72.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 56.0;

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub label: String,
    pub min: f64,
    pub max: f64,
    /// Base-10 logarithmic scale; `min` must be positive.
    pub log: bool,
}

impl Axis {
    pub fn linear(label: &str, min: f64, max: f64) -> Self {
        let (min, max) = if max > min {
            (min, max)
        } else {
            (min - 0.5, min + 0.5)
        };
        Self {
            label: label.to_owned(),
            min,
            max,
            log: false,
        }
    }

    pub fn log(label: &str, min: f64, max: f64) -> Self {
        let lo = 10f64.powf(min.log10().floor());
        let hi = 10f64.powf(max.log10().ceil()).max(lo * 10.0);
        Self {
            label: label.to_owned(),
            min: lo,
            max: hi,
            log: true,
        }
    }

    /// Linear axis covering `values` with a small margin.
    pub fn fit(label: &str, values: impl IntoIterator<Item = f64>) -> Self {
        let (lo, hi) = values
            .into_iter()
            .filter(|v| v.is_finite())
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            });
        if !lo.is_finite() {
            return Self::linear(label, 0.0, 1.0);
        }
        let pad = 0.05 * (hi - lo);
        Self::linear(label, lo - pad, hi + pad)
    }

    fn unit(&self, v: f64) -> f64 {
        if self.log {
            (v.log10() - self.min.log10()) / (self.max.log10() - self.min.log10())
        } else {
            (v - self.min) / (self.max - self.min)
        }
    }

    fn ticks(&self) -> Vec<(f64, String)> {
        if self.log {
            let (a, b) = (
                self.min.log10().round() as i32,
                self.max.log10().round() as i32,
            );
            let stride = ((b - a) as f64 / 8.0).ceil().max(1.0) as i32;
            return (a..=b)
                .step_by(stride as usize)
                .map(|e| (10f64.powi(e), format!("1e{e}")))
                .collect();
        }
        let raw = (self.max - self.min) / 6.0;
        let mag = 10f64.powf(raw.log10().floor());
        let step = [1.0, 2.0, 5.0, 10.0]
            .into_iter()
            .map(|f| f * mag)
            .find(|s| *s >= raw)
            .unwrap_or(10.0 * mag);
        let decimals = (-step.log10().floor()).max(0.0) as usize;
        let first = (self.min / step).ceil() as i64;
        let last = (self.max / step).floor() as i64;
        (first..=last)
            .map(|i| {
                let v = i as f64 * step;
                let v = if v.abs() < step * 1e-9 { 0.0 } else { v };
                (v, format!("{v:.decimals$}"))
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mark {
    Line,
    Points,
    /// Vertical segments from zero (or the axis floor) to each point.
    Stems,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
    pub mark: Mark,
    pub color: &'static str,
}

impl Series {
    pub fn new(name: &str, points: Vec<(f64, f64)>, mark: Mark, color: &'static str) -> Self {
        Self {
            name: name.to_owned(),
            points,
            mark,
            color,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Chart {
    pub title: String,
    pub x: Axis,
    pub y: Axis,
    pub series: Vec<Series>,
    /// Dashed horizontal reference lines.
    pub rules: Vec<(f64, String)>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

impl Chart {
    pub fn new(title: &str, x: Axis, y: Axis) -> Self {
        Self {
            title: title.to_owned(),
            x,
            y,
            series: Vec::new(),
            rules: Vec::new(),
        }
    }

    fn px(&self, x: f64) -> f64 {
        LEFT + self.x.unit(x) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - self.y.unit(y) * (HEIGHT - TOP - BOTTOM)
    }

    fn visible(&self, (x, y): (f64, f64)) -> bool {
        let inside =
            |a: &Axis, v: f64| v.is_finite() && v >= a.min && v <= a.max && (!a.log || v > 0.0);
        inside(&self.x, x) && inside(&self.y, y)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
            WIDTH / 2.0,
            escape(&self.title)
        );
        let (x0, x1, y0, y1) = (LEFT, WIDTH - RIGHT, TOP, HEIGHT - BOTTOM);
        let _ = writeln!(
            s,
            r##"<rect x="{x0}" y="{y0}" width="{:.1}" height="{:.1}" fill="none" stroke="#444"/>"##,
            x1 - x0,
            y1 - y0
        );
        for (v, label) in self.x.ticks() {
            let x = self.px(v);
            let _ = writeln!(
                s,
                r##"<line x1="{x:.2}" y1="{y1}" x2="{x:.2}" y2="{:.1}" stroke="#444"/><text x="{x:.2}" y="{:.1}" text-anchor="middle">{label}</text>"##,
                y1 + 5.0,
                y1 + 19.0
            );
        }
        for (v, label) in self.y.ticks() {
            let y = self.py(v);
            let _ = writeln!(
                s,
                r##"<line x1="{:.1}" y1="{y:.2}" x2="{x0}" y2="{y:.2}" stroke="#444"/><text x="{:.1}" y="{:.2}" text-anchor="end">{label}</text>"##,
                x0 - 5.0,
                x0 - 8.0,
                y + 4.0
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            (x0 + x1) / 2.0,
            HEIGHT - 14.0,
            escape(&self.x.label)
        );
        let _ = writeln!(
            s,
            r#"<text x="18" y="{:.1}" text-anchor="middle" transform="rotate(-90 18 {:.1})">{}</text>"#,
            (y0 + y1) / 2.0,
            (y0 + y1) / 2.0,
            escape(&self.y.label)
        );
        for (v, label) in &self.rules {
            if !self.visible((self.x.min, *v)) {
                continue;
            }
            let y = self.py(*v);
            let _ = writeln!(
                s,
                r##"<line x1="{x0}" y1="{y:.2}" x2="{x1}" y2="{y:.2}" stroke="#888" stroke-dasharray="4 3"/><text x="{:.1}" y="{:.2}" text-anchor="end" fill="#666">{}</text>"##,
                x1 - 4.0,
                y - 4.0,
                escape(label)
            );
        }
        for series in &self.series {
            self.render_series(&mut s, series);
        }
        for (i, series) in self.series.iter().enumerate() {
            let y = y0 + 14.0 + 16.0 * i as f64;
            let _ = writeln!(
                s,
                r#"<rect x="{:.1}" y="{:.1}" width="10" height="10" fill="{}"/><text x="{:.1}" y="{:.1}">{}</text>"#,
                x0 + 10.0,
                y - 9.0,
                series.color,
                x0 + 26.0,
                y,
                escape(&series.name)
            );
        }
        s.push_str("</svg>\n");
        s
    }

    fn render_series(&self, s: &mut String, series: &Series) {
        let pts: Vec<(f64, f64)> = series
            .points
            .iter()
            .copied()
            .filter(|&p| self.visible(p))
            .map(|(x, y)| (self.px(x), self.py(y)))
            .collect();
        match series.mark {
            Mark::Line => {
                let path: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
                let _ = writeln!(
                    s,
                    r#"<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"/>"#,
                    series.color,
                    path.join(" ")
                );
            }
            Mark::Points => {
                let _ = writeln!(s, r#"<g fill="{}">"#, series.color);
                for (x, y) in pts {
                    let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="2.5"/>"#);
                }
                s.push_str("</g>\n");
            }
            Mark::Stems => {
                let base = if self.y.log {
                    self.py(self.y.min)
                } else {
                    self.py(0f64.clamp(self.y.min, self.y.max))
                };
                let _ = writeln!(s, r#"<g stroke="{}" stroke-width="2">"#, series.color);
                for (x, y) in pts {
                    let _ = writeln!(
                        s,
                        r#"<line x1="{x:.2}" y1="{base:.2}" x2="{x:.2}" y2="{y:.2}"/>"#
                    );
                }
                s.push_str("</g>\n");
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_ticks_are_round() {
        let t = Axis::linear("x", 0.0, 200.0).ticks();
        assert_eq!(t.first().unwrap().1, "0");
        assert_eq!(t.last().unwrap().1, "200");
        let t = Axis::linear("y", -0.93, 1.02).ticks();
        assert!(t.iter().any(|(_, l)| l == "0.0"));
    }

    #[test]
    fn log_axis_spans_decades() {
        let a = Axis::log("p", 3e-4, 1.0);
        assert_eq!((a.min, a.max), (1e-4, 1.0));
        assert_eq!(a.ticks().len(), 5);
    }

    #[test]
    fn escapes_text() {
        let c = Chart::new(
            "a < b & c",
            Axis::linear("x", 0.0, 1.0),
            Axis::linear("y", 0.0, 1.0),
        );
        assert!(c.render().contains("a &lt; b &amp; c"));
    }

    #[test]
    fn hides_points_outside_axes() {
        let mut c = Chart::new(
            "t",
            Axis::linear("x", 0.0, 1.0),
            Axis::linear("y", 0.0, 1.0),
        );
        c.series.push(Series::new(
            "s",
            vec![(0.5, 0.5), (2.0, 0.5)],
            Mark::Points,
            "black",
        ));
        assert_eq!(c.render().matches("<circle").count(), 1);
    }
}
