use std::f64::consts::{PI, TAU};

use crate::error::{require_positive, Error, Result};

/// Scales `x` so its largest magnitude is 1. An all-zero input is returned
/// unchanged.
pub fn normalize(x: &[f64]) -> Vec<f64> {
    let m = x.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if m > 0.0 {
        x.iter().map(|v| v / m).collect()
    } else {
        x.to_vec()
    }
}

fn check_rates(f_c: f64, fs: f64) -> Result<()> {
    require_positive("f_c", f_c)?;
    require_positive("fs", fs)?;
    if fs <= 2.0 * f_c {
        return Err(Error::invalid("fs", format!("{fs} MHz does not exceed twice the carrier {f_c} MHz")));
    }
    Ok(())
}

/// `s = I cos(2π f_c t) − Q sin(2π f_c t)` sampled at `fs` (MHz, so
/// `t = k / fs` in μs). `q` defaults to zero.
pub fn iq_modulate(i: &[f64], q: Option<&[f64]>, f_c: f64, fs: f64) -> Result<Vec<f64>> {
    check_rates(f_c, fs)?;
    if let Some(q) = q {
        if q.len() != i.len() {
            return Err(Error::invalid("q", "must match the length of i"));
        }
    }
    Ok(i.iter()
        .enumerate()
        .map(|(k, iv)| {
            let ph = TAU * f_c * k as f64 / fs;
            let qv = q.map_or(0.0, |q| q[k]);
            iv * ph.cos() - qv * ph.sin()
        })
        .collect())
}

/// Hamming-windowed sinc low-pass with unit DC gain; `cutoff` as a fraction
/// of the sample rate.
pub fn lowpass_taps(cutoff: f64, taps: usize) -> Vec<f64> {
    let m = (taps - 1) as f64;
    let mut h: Vec<f64> = (0..taps)
        .map(|k| {
            let x = k as f64 - m / 2.0;
            let sinc = if x == 0.0 { 2.0 * cutoff } else { (TAU * cutoff * x).sin() / (PI * x) };
            sinc * (0.54 - 0.46 * (TAU * k as f64 / m).cos())
        })
        .collect();
    let g: f64 = h.iter().sum();
    h.iter_mut().for_each(|v| *v /= g);
    h
}

/// Zero-phase FIR filtering (centred taps, zero padding at the ends).
pub fn filter_centered(x: &[f64], h: &[f64]) -> Vec<f64> {
    let half = h.len() / 2;
    (0..x.len())
        .map(|n| {
            h.iter()
                .enumerate()
                .filter_map(|(k, hk)| (n + half).checked_sub(k).and_then(|j| x.get(j)).map(|xj| hk * xj))
                .sum()
        })
        .collect()
}

/// Coherent demodulation: mix with `2cos` and `−2sin`, then low-pass at
/// `f_c / 2`. Returns `(I, Q)` estimates.
pub fn envelope_demod(passband: &[f64], f_c: f64, fs: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    check_rates(f_c, fs)?;
    let taps = (8.0 * fs / f_c).ceil() as usize | 1;
    let h = lowpass_taps(0.5 * f_c / fs, taps.max(31));
    let (mut mi, mut mq) = (Vec::with_capacity(passband.len()), Vec::with_capacity(passband.len()));
    for (k, s) in passband.iter().enumerate() {
        let ph = TAU * f_c * k as f64 / fs;
        mi.push(2.0 * s * ph.cos());
        mq.push(-2.0 * s * ph.sin());
    }
    Ok((filter_centered(&mi, &h), filter_centered(&mq, &h)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_in_zero_out() {
        let s = iq_modulate(&[0.0; 50], None, 20.0, 200.0).unwrap();
        assert!(s.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn dc_gives_carrier() {
        let s = iq_modulate(&[1.0; 20], None, 20.0, 200.0).unwrap();
        for (k, v) in s.iter().enumerate() {
            assert!((v - (TAU * 0.1 * k as f64).cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn undersampling_is_rejected() {
        assert!(iq_modulate(&[1.0], None, 20.0, 40.0).is_err());
        assert!(envelope_demod(&[1.0], 20.0, 30.0).is_err());
    }

    #[test]
    fn dc_round_trip_away_from_edges() {
        let s = iq_modulate(&[0.7; 2000], None, 20.0, 200.0).unwrap();
        let (i, q) = envelope_demod(&s, 20.0, 200.0).unwrap();
        for k in 200..1800 {
            assert!((i[k] - 0.7).abs() < 1e-3, "{}", i[k]);
            assert!(q[k].abs() < 1e-3);
        }
    }
}
