//! Minimal standalone SVG charts, one chart per file.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

const W: f64 = 800.0;
const H: f64 = 500.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// A named polyline.
pub struct Line<'a> {
    pub label: &'a str,
    pub x: &'a [f64],
    pub y: &'a [f64],
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    log_y: bool,
}

impl Frame {
    fn fit(lines: &[Line], log_y: bool) -> Frame {
        let mut f = Frame {
            x0: f64::INFINITY,
            x1: f64::NEG_INFINITY,
            y0: f64::INFINITY,
            y1: f64::NEG_INFINITY,
            log_y,
        };
        for l in lines {
            for (&x, &y) in l.x.iter().zip(l.y) {
                let y = if log_y { y.max(f64::MIN_POSITIVE).log10() } else { y };
                if x.is_finite() && y.is_finite() {
                    f.x0 = f.x0.min(x);
                    f.x1 = f.x1.max(x);
                    f.y0 = f.y0.min(y);
                    f.y1 = f.y1.max(y);
                }
            }
        }
        if !(f.x1 > f.x0) {
            f.x1 = f.x0 + 1.0;
        }
        if !(f.y1 > f.y0) {
            f.y1 = f.y0 + 1.0;
        }
        f
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) / (self.x1 - self.x0) * (W - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        let y = if self.log_y { y.max(f64::MIN_POSITIVE).log10() } else { y };
        H - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (H - 2.0 * MARGIN)
    }
}

fn axes(svg: &mut String, f: &Frame, title: &str, xlabel: &str, ylabel: &str) {
    let _ = write!(
        svg,
        r##"<rect x="{m}" y="{m}" width="{w}" height="{h}" fill="none" stroke="#444"/>
<text x="{cx}" y="30" text-anchor="middle" font-size="18">{title}</text>
<text x="{cx}" y="{by}" text-anchor="middle" font-size="14">{xlabel}</text>
<text x="18" y="{cy}" text-anchor="middle" font-size="14" transform="rotate(-90 18 {cy})">{ylabel}</text>
<text x="{m}" y="{ty}" font-size="11">{x0:.4}</text>
<text x="{xr}" y="{ty}" font-size="11" text-anchor="end">{x1:.4}</text>
<text x="{ly}" y="{yb}" font-size="11" text-anchor="end">{y0}</text>
<text x="{ly}" y="{yt}" font-size="11" text-anchor="end">{y1}</text>
"##,
        m = MARGIN,
        w = W - 2.0 * MARGIN,
        h = H - 2.0 * MARGIN,
        cx = W / 2.0,
        cy = H / 2.0,
        by = H - 15.0,
        ty = H - MARGIN + 15.0,
        xr = W - MARGIN,
        ly = MARGIN - 4.0,
        yb = H - MARGIN,
        yt = MARGIN + 10.0,
        x0 = f.x0,
        x1 = f.x1,
        y0 = tick(f.y0, f.log_y),
        y1 = tick(f.y1, f.log_y),
    );
}

fn tick(v: f64, log: bool) -> String {
    if log {
        format!("1e{v:.1}")
    } else {
        format!("{v:.4}")
    }
}

fn write_svg(path: &Path, body: String) -> Result<()> {
    let svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{body}</svg>\n"
    );
    fs::write(path, svg).map_err(|e| Error::io(path.display().to_string(), e))
}

/// Line chart of one or more series; `log_y` plots `log10 y`.
pub fn line_chart(path: &Path, title: &str, xlabel: &str, ylabel: &str, lines: &[Line], log_y: bool) -> Result<()> {
    let f = Frame::fit(lines, log_y);
    let mut svg = String::new();
    axes(&mut svg, &f, title, xlabel, ylabel);
    for (k, l) in lines.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        // Long runs are decimated to keep files small.
        let stride = (l.x.len() / 4000).max(1);
        let pts: String = l
            .x
            .iter()
            .zip(l.y)
            .step_by(stride)
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|(x, y)| format!("{:.2},{:.2} ", f.px(*x), f.py(*y)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1" points="{pts}"/>
<text x="{lx}" y="{ly}" font-size="12" fill="{color}">{label}</text>"#,
            lx = W - MARGIN - 120.0,
            ly = MARGIN + 16.0 * (k + 1) as f64,
            label = l.label,
        );
    }
    write_svg(path, svg)
}

/// Horizontal bars, one row per mode, spanning `(start, end)`.
pub fn timeline(path: &Path, title: &str, spans: &[(f64, f64, usize)]) -> Result<()> {
    let modes = spans.iter().map(|s| s.2).max().map_or(1, |m| m + 1);
    let x0 = spans.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
    let x1 = spans.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max);
    let f = Frame {
        x0,
        x1: if x1 > x0 { x1 } else { x0 + 1.0 },
        y0: 0.0,
        y1: modes as f64,
        log_y: false,
    };
    let mut svg = String::new();
    axes(&mut svg, &f, title, "t (μs)", "mode");
    for (a, b, m) in spans {
        let (y_top, y_bot) = (f.py(*m as f64 + 0.9), f.py(*m as f64 + 0.1));
        let _ = writeln!(
            svg,
            r#"<rect x="{x:.2}" y="{y:.2}" width="{w:.2}" height="{h:.2}" fill="{c}"/>"#,
            x = f.px(*a),
            y = y_top,
            w = f.px(*b) - f.px(*a),
            h = y_bot - y_top,
            c = COLORS[m % COLORS.len()],
        );
    }
    write_svg(path, svg)
}
