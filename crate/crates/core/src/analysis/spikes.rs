use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{require_finite, require_non_negative, require_positive, Error, Result};
use crate::numerics::median;

/// Schmitt-trigger spike detector settings. Levels in V, times in μs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpikeConfig {
    pub threshold: f64,
    pub hysteresis_band: f64,
    pub refractory: f64,
}

impl SpikeConfig {
    pub fn validate(&self) -> Result<()> {
        require_finite("threshold", self.threshold)?;
        require_non_negative("hysteresis_band", self.hysteresis_band)?;
        require_non_negative("refractory", self.refractory)
    }

    /// Defaults derived from the run itself: threshold at half the peak,
    /// band 10 % of the threshold, refractory 0.2 of the median ISI found
    /// by a first pass without one.
    pub fn auto(t: &[f64], v: &[f64]) -> Result<Self> {
        let peak = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if !peak.is_finite() {
            return Err(Error::Analysis("cannot derive a spike threshold from an empty or non-finite series".into()));
        }
        let threshold = 0.5 * peak;
        let mut cfg = SpikeConfig {
            threshold,
            hysteresis_band: 0.1 * threshold.abs(),
            refractory: 0.0,
        };
        let first = detect_spikes(t, v, &cfg)?;
        let isis = first.isis();
        if !isis.is_empty() {
            cfg.refractory = 0.2 * median(&isis);
        }
        Ok(cfg)
    }
}

/// Spike times of one channel, in μs.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SpikeTrain {
    pub times: Vec<f64>,
    pub channel: String,
}

impl SpikeTrain {
    pub fn new(times: Vec<f64>) -> Self {
        SpikeTrain {
            times,
            channel: String::new(),
        }
    }

    pub fn with_channel(mut self, channel: impl Into<String>) -> Self {
        self.channel = channel.into();
        self
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn isis(&self) -> Vec<f64> {
        self.times.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// `(n − 1) / (t_last − t_first)` in kHz, or `None` with fewer than two
    /// spikes.
    pub fn mean_rate_khz(&self) -> Option<f64> {
        let n = self.times.len();
        if n < 2 {
            return None;
        }
        Some(1e3 * (n - 1) as f64 / (self.times[n - 1] - self.times[0]))
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        crate::io::write_csv(path, &["spike_t_us"], self.times.iter().map(|t| [*t]))
    }
}

/// Sample spacing of a uniform grid, or an error naming the first
/// irregular step.
pub fn uniform_step(t: &[f64]) -> Result<f64> {
    if t.len() < 2 {
        return Err(Error::Analysis("series needs at least two samples".into()));
    }
    let dt = (t[t.len() - 1] - t[0]) / (t.len() - 1) as f64;
    if !(dt > 0.0) {
        return Err(Error::Analysis("time axis must be increasing".into()));
    }
    for (k, w) in t.windows(2).enumerate() {
        if ((w[1] - w[0]) - dt).abs() > 1e-6 * dt {
            return Err(Error::Analysis(format!(
                "non-uniform sampling at index {k}: step {} vs mean {dt}",
                w[1] - w[0]
            )));
        }
    }
    Ok(dt)
}

/// Upward Schmitt-trigger crossings.
///
/// The detector arms once the signal drops below `threshold − band` and
/// fires at the first armed sample at or above `threshold`. A firing inside
/// the refractory window of the previous spike is dropped, though it still
/// disarms the trigger.
pub fn detect_spikes(t: &[f64], v: &[f64], cfg: &SpikeConfig) -> Result<SpikeTrain> {
    cfg.validate()?;
    if t.len() != v.len() {
        return Err(Error::invalid("series", "time and value columns differ in length"));
    }
    uniform_step(t)?;
    let low = cfg.threshold - cfg.hysteresis_band;
    let mut armed = false;
    let mut times: Vec<f64> = Vec::new();
    for (&ti, &vi) in t.iter().zip(v) {
        if vi < low {
            armed = true;
        } else if armed && vi >= cfg.threshold {
            armed = false;
            if times.last().map_or(true, |&last| ti - last >= cfg.refractory) {
                times.push(ti);
            }
        }
    }
    Ok(SpikeTrain::new(times))
}

/// Sliding-window firing rate.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RateCurve {
    /// Window end times (μs) and rates (kHz).
    pub points: Vec<(f64, f64)>,
    pub window: f64,
    /// Rate in the window starting at the first spike.
    pub first_rate: f64,
    /// Rate in the window ending at the last spike.
    pub last_rate: f64,
}

impl RateCurve {
    /// `first_rate / last_rate`, the adaptation ratio.
    pub fn adaptation_ratio(&self) -> f64 {
        self.first_rate / self.last_rate
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        crate::io::write_csv(path, &["t_us", "rate_khz"], self.points.iter().map(|(t, r)| [*t, *r]))
    }
}

fn count_in(times: &[f64], lo: f64, hi: f64) -> usize {
    // Half-open (lo, hi].
    times.partition_point(|&s| s <= hi) - times.partition_point(|&s| s <= lo)
}

/// Count-in-window rate in kHz, evaluated at every spike time `t` from
/// `t_first + window` on over the trailing window `(t − window, t]`.
///
/// With fewer than two spikes the curve is empty.
pub fn rate_curve(train: &SpikeTrain, window: f64) -> Result<RateCurve> {
    require_positive("window", window)?;
    let s = &train.times;
    if s.len() < 2 {
        return Ok(RateCurve {
            window,
            ..RateCurve::default()
        });
    }
    let to_khz = 1e3 / window;
    let (first, last) = (s[0], s[s.len() - 1]);
    let points = s
        .iter()
        .filter(|&&t| t >= first + window)
        .map(|&t| (t, count_in(s, t - window, t) as f64 * to_khz))
        .collect();
    // First window is [first, first + window).
    let first_count = s.partition_point(|&x| x < first + window);
    Ok(RateCurve {
        points,
        window,
        first_rate: first_count as f64 * to_khz,
        last_rate: count_in(s, last - window, last) as f64 * to_khz,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize, dt: f64) -> Vec<f64> {
        (0..n).map(|k| k as f64 * dt).collect()
    }

    #[test]
    fn flat_signal_has_no_spikes() {
        let t = grid(100, 1.0);
        let v = vec![0.2; 100];
        let cfg = SpikeConfig {
            threshold: 0.5,
            hysteresis_band: 0.05,
            refractory: 0.0,
        };
        assert!(detect_spikes(&t, &v, &cfg).unwrap().is_empty());
    }

    #[test]
    fn irregular_grid_is_rejected() {
        let t = vec![0.0, 1.0, 2.5, 3.0];
        let cfg = SpikeConfig {
            threshold: 0.5,
            hysteresis_band: 0.0,
            refractory: 0.0,
        };
        assert!(detect_spikes(&t, &[0.0; 4], &cfg).is_err());
    }

    #[test]
    fn refractory_drops_close_events() {
        let t = grid(10, 1.0);
        let v = [0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0];
        let cfg = SpikeConfig {
            threshold: 0.5,
            hysteresis_band: 0.1,
            refractory: 3.0,
        };
        assert_eq!(detect_spikes(&t, &v, &cfg).unwrap().times, vec![1.0, 6.0]);
    }

    #[test]
    fn periodic_train_has_flat_rate() {
        let train = SpikeTrain::new((0..100).map(|k| 10.0 * k as f64).collect());
        let rc = rate_curve(&train, 95.0).unwrap();
        let (lo, hi) = rc
            .points
            .iter()
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), p| (lo.min(p.1), hi.max(p.1)));
        assert!(hi - lo <= 1e3 / 95.0 + 1e-12);
    }

    #[test]
    fn single_spike_gives_empty_curve() {
        let rc = rate_curve(&SpikeTrain::new(vec![3.0]), 10.0).unwrap();
        assert!(rc.points.is_empty());
    }
}
