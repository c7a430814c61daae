//! Attractor-mode segmentation of a scalar series.
//!
//! Each window yields four features: mean and standard deviation (both in
//! units of the whole-series standard deviation), log₂ of the dominant
//! frequency bin and normalised spectral entropy. Change-points come from
//! binary segmentation of the feature sequence; segments are then labelled
//! by nearest centroid.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::spectrum::power_spectrum;
use crate::error::{Error, Result};
use crate::numerics::{mean, median, variance};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SegmentConfig {
    /// Window length in samples.
    pub window: usize,
    /// A split is kept when it lowers the within-segment squared feature
    /// spread by more than `penalty` per window of the parent segment.
    pub penalty: f64,
    /// Smallest segment, in windows.
    pub min_windows: usize,
    /// Feature distance under which a segment joins an existing mode.
    pub merge_radius: f64,
}

impl Default for SegmentConfig {
    fn default() -> Self {
        SegmentConfig {
            window: 256,
            penalty: 0.05,
            min_windows: 2,
            merge_radius: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub t_start: f64,
    pub t_end: f64,
    pub mode: usize,
    pub dwell: f64,
    pub features: [f64; 4],
    /// Window index range `[first, last)`.
    pub windows: (usize, usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SegmentReport {
    pub segments: Vec<Segment>,
    pub n_modes: usize,
    /// Per-window feature vectors.
    pub features: Vec<[f64; 4]>,
}

impl SegmentReport {
    pub fn median_dwell(&self) -> f64 {
        median(&self.segments.iter().map(|s| s.dwell).collect::<Vec<_>>())
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        crate::io::write_csv(
            path,
            &["t_start", "t_end", "mode", "dwell", "mean", "std", "log2_fdom", "entropy"],
            self.segments.iter().map(|s| {
                let f = s.features;
                [s.t_start, s.t_end, s.mode as f64, s.dwell, f[0], f[1], f[2], f[3]]
            }),
        )
    }
}

fn window_features(chunk: &[f64], dt: f64, centre: f64, scale: f64) -> [f64; 4] {
    let m = (mean(chunk) - centre) / scale;
    let s = variance(chunk).sqrt() / scale;
    let sp = match power_spectrum(chunk, dt, 1) {
        Ok(sp) => sp,
        Err(_) => return [m, s, 0.0, 0.0],
    };
    let p = &sp.power[1..];
    let total: f64 = p.iter().sum();
    if !(total > 0.0) {
        return [m, s, 0.0, 0.0];
    }
    let k = p.iter().enumerate().fold(0, |b, (i, v)| if *v > p[b] { i } else { b }) + 1;
    let entropy = -p
        .iter()
        .filter(|v| **v > 0.0)
        .map(|v| {
            let q = v / total;
            q * q.ln()
        })
        .sum::<f64>()
        / (p.len() as f64).ln();
    [m, s, (k as f64).log2(), entropy]
}

fn spread(f: &[[f64; 4]]) -> f64 {
    let n = f.len() as f64;
    (0..4)
        .map(|d| {
            let m = f.iter().map(|v| v[d]).sum::<f64>() / n;
            f.iter().map(|v| (v[d] - m).powi(2)).sum::<f64>()
        })
        .sum()
}

fn centroid(f: &[[f64; 4]]) -> [f64; 4] {
    let n = f.len() as f64;
    let mut c = [0.0; 4];
    for v in f {
        for d in 0..4 {
            c[d] += v[d] / n;
        }
    }
    c
}

fn dist(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

fn split(f: &[[f64; 4]], lo: usize, hi: usize, cfg: &SegmentConfig, cuts: &mut Vec<usize>) {
    let n = hi - lo;
    if n < 2 * cfg.min_windows {
        return;
    }
    let whole = spread(&f[lo..hi]);
    let mut best = (0.0, 0);
    for k in lo + cfg.min_windows..=hi - cfg.min_windows {
        let gain = whole - spread(&f[lo..k]) - spread(&f[k..hi]);
        if gain > best.0 {
            best = (gain, k);
        }
    }
    if best.0 > cfg.penalty * n as f64 {
        let k = best.1;
        split(f, lo, k, cfg, cuts);
        cuts.push(k);
        split(f, k, hi, cfg, cuts);
    }
}

/// Segments `series` (uniformly sampled at `dt` μs, starting at `t0`) into
/// attractor modes. Input shorter than ten windows is rejected.
pub fn itinerancy_segments(series: &[f64], t0: f64, dt: f64, cfg: &SegmentConfig) -> Result<SegmentReport> {
    if cfg.window < 8 {
        return Err(Error::invalid("window", "must be at least 8 samples"));
    }
    if cfg.min_windows == 0 {
        return Err(Error::invalid("min_windows", "must be at least 1"));
    }
    let n_win = series.len() / cfg.window;
    if n_win < 10 {
        return Err(Error::Analysis(format!(
            "series of {} samples holds fewer than 10 windows of {}",
            series.len(),
            cfg.window
        )));
    }
    let centre = mean(series);
    let sd = variance(series).sqrt();
    let scale = if sd > 0.0 { sd } else { 1.0 };
    let features: Vec<[f64; 4]> = series
        .chunks_exact(cfg.window)
        .map(|c| window_features(c, dt, centre, scale))
        .collect();

    let mut cuts = Vec::new();
    split(&features, 0, n_win, cfg, &mut cuts);
    let mut bounds = vec![0];
    bounds.extend(cuts);
    bounds.push(n_win);

    let mut modes: Vec<[f64; 4]> = Vec::new();
    let wt = cfg.window as f64 * dt;
    let segments = bounds
        .windows(2)
        .map(|b| {
            let c = centroid(&features[b[0]..b[1]]);
            let nearest = modes
                .iter()
                .enumerate()
                .map(|(i, m)| (i, dist(m, &c)))
                .min_by(|a, b| a.1.total_cmp(&b.1));
            let mode = match nearest {
                Some((i, d)) if d < cfg.merge_radius => i,
                _ => {
                    modes.push(c);
                    modes.len() - 1
                }
            };
            let t_start = t0 + b[0] as f64 * wt;
            let t_end = t0 + b[1] as f64 * wt;
            Segment {
                t_start,
                t_end,
                mode,
                dwell: t_end - t_start,
                features: c,
                windows: (b[0], b[1]),
            }
        })
        .collect();
    Ok(SegmentReport {
        segments,
        n_modes: modes.len(),
        features,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    #[test]
    fn sine_is_one_segment() {
        let s: Vec<f64> = (0..256 * 40).map(|k| (TAU * k as f64 / 23.7).sin()).collect();
        let r = itinerancy_segments(&s, 0.0, 1.0, &SegmentConfig::default()).unwrap();
        assert_eq!(r.segments.len(), 1);
    }

    #[test]
    fn short_series_is_rejected() {
        assert!(itinerancy_segments(&[0.0; 1000], 0.0, 1.0, &SegmentConfig::default()).is_err());
    }

    #[test]
    fn constant_is_one_segment() {
        let r = itinerancy_segments(&[1.5; 256 * 12], 0.0, 1.0, &SegmentConfig::default()).unwrap();
        assert_eq!(r.segments.len(), 1);
        assert_eq!(r.n_modes, 1);
    }
}
