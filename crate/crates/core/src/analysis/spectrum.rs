use std::f64::consts::PI;
use std::path::Path;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// One-sided power spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub freq_mhz: Vec<f64>,
    pub power: Vec<f64>,
    /// Taper applied to each segment.
    pub window: &'static str,
    /// Number of averaged segments.
    pub segments: usize,
}

impl Spectrum {
    pub fn bin_width(&self) -> f64 {
        self.freq_mhz.get(1).copied().unwrap_or(0.0)
    }

    /// Frequency of the largest bin above DC.
    pub fn dominant(&self) -> f64 {
        let k = argmax(&self.power[1..]) + 1;
        self.freq_mhz[k]
    }

    /// Fraction of total power within `half_width` bins of the peak.
    pub fn peak_concentration(&self, half_width: usize) -> f64 {
        let k = argmax(&self.power);
        let lo = k.saturating_sub(half_width);
        let hi = (k + half_width).min(self.power.len() - 1);
        let total: f64 = self.power.iter().sum();
        self.power[lo..=hi].iter().sum::<f64>() / total
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        crate::io::write_csv(
            path,
            &["f_MHz", "power"],
            self.freq_mhz.iter().zip(&self.power).map(|(f, p)| [*f, *p]),
        )
    }
}

fn argmax(xs: &[f64]) -> usize {
    xs.iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |(bi, bv), (i, &v)| if v > bv { (i, v) } else { (bi, bv) })
        .0
}

pub fn hann(n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![1.0];
    }
    (0..n).map(|k| 0.5 - 0.5 * (2.0 * PI * k as f64 / n as f64).cos()).collect()
}

/// Hann-tapered periodogram with mean removal, averaged over `segments`
/// non-overlapping pieces (Welch). `dt` in μs, so frequencies come out in
/// MHz.
pub fn power_spectrum(series: &[f64], dt: f64, segments: usize) -> Result<Spectrum> {
    if !(dt > 0.0) {
        return Err(Error::invalid("dt", "must be > 0"));
    }
    let segments = segments.max(1);
    let n = series.len() / segments;
    if n < 4 {
        return Err(Error::Analysis(format!(
            "{} samples are too few for {segments} segments",
            series.len()
        )));
    }
    let taper = hann(n);
    let fft = FftPlanner::<f64>::new().plan_fft_forward(n);
    let half = n / 2 + 1;
    let mut power = vec![0.0; half];
    for seg in series.chunks_exact(n) {
        let m = seg.iter().sum::<f64>() / n as f64;
        let mut buf: Vec<Complex<f64>> = seg.iter().zip(&taper).map(|(x, w)| Complex::new((x - m) * w, 0.0)).collect();
        fft.process(&mut buf);
        for (p, z) in power.iter_mut().zip(&buf) {
            *p += z.norm_sqr() / segments as f64;
        }
    }
    let df = 1.0 / (n as f64 * dt);
    Ok(Spectrum {
        freq_mhz: (0..half).map(|k| k as f64 * df).collect(),
        power,
        window: "hann",
        segments,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    #[test]
    fn tone_lands_in_its_bin() {
        let dt = 0.01;
        let s: Vec<f64> = (0..1000).map(|k| (TAU * 5.0 * k as f64 * dt).sin()).collect();
        let sp = power_spectrum(&s, dt, 1).unwrap();
        assert!((sp.dominant() - 5.0).abs() <= sp.bin_width());
        assert!(sp.peak_concentration(1) >= 0.9);
    }

    #[test]
    fn constant_has_no_power() {
        let sp = power_spectrum(&[2.0; 64], 1.0, 1).unwrap();
        assert!(sp.power.iter().all(|p| *p == 0.0));
    }
}
