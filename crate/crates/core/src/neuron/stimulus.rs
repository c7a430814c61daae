use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{require_finite, require_non_negative, require_positive, Error, Result};

/// An external drive waveform. Times in μs, frequencies in MHz, levels in V.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StimulusSpec {
    Dc {
        level: f64,
    },
    /// `amplitude` is peak-to-peak.
    Sine {
        amplitude: f64,
        frequency: f64,
        #[serde(default)]
        phase: f64,
    },
    /// `high` while `(t − delay) mod period < width`, `low` otherwise.
    PulseTrain {
        width: f64,
        period: f64,
        high: f64,
        #[serde(default)]
        low: f64,
        #[serde(default)]
        delay: f64,
    },
    Sum {
        components: Vec<StimulusSpec>,
    },
}

impl Default for StimulusSpec {
    fn default() -> Self {
        StimulusSpec::Dc { level: 0.0 }
    }
}

impl StimulusSpec {
    pub fn dc(level: f64) -> Self {
        StimulusSpec::Dc { level }
    }

    pub fn validate(&self, field: &str) -> Result<()> {
        match self {
            StimulusSpec::Dc { level } => require_finite(&format!("{field}.level"), *level),
            StimulusSpec::Sine {
                amplitude,
                frequency,
                phase,
            } => {
                require_finite(&format!("{field}.amplitude"), *amplitude)?;
                require_non_negative(&format!("{field}.frequency"), *frequency)?;
                require_finite(&format!("{field}.phase"), *phase)
            }
            StimulusSpec::PulseTrain {
                width,
                period,
                high,
                low,
                delay,
            } => {
                require_positive(&format!("{field}.period"), *period)?;
                require_non_negative(&format!("{field}.width"), *width)?;
                if width > period {
                    return Err(Error::invalid(format!("{field}.width"), "must not exceed period"));
                }
                require_finite(&format!("{field}.high"), *high)?;
                require_finite(&format!("{field}.low"), *low)?;
                require_finite(&format!("{field}.delay"), *delay)
            }
            StimulusSpec::Sum { components } => components
                .iter()
                .enumerate()
                .try_for_each(|(k, c)| c.validate(&format!("{field}.components[{k}]"))),
        }
    }

    /// Drive voltage at time `t`.
    pub fn value(&self, t: f64) -> f64 {
        match self {
            StimulusSpec::Dc { level } => *level,
            StimulusSpec::Sine {
                amplitude,
                frequency,
                phase,
            } => 0.5 * amplitude * (TAU * frequency * t + phase).sin(),
            StimulusSpec::PulseTrain {
                width,
                period,
                high,
                low,
                delay,
            } => {
                if (t - delay).rem_euclid(*period) < *width {
                    *high
                } else {
                    *low
                }
            }
            StimulusSpec::Sum { components } => components.iter().map(|c| c.value(t)).sum(),
        }
    }

    /// The same waveform played `k` times slower.
    pub fn time_scaled(&self, k: f64) -> Self {
        match self {
            StimulusSpec::Dc { .. } => self.clone(),
            StimulusSpec::Sine {
                amplitude,
                frequency,
                phase,
            } => StimulusSpec::Sine {
                amplitude: *amplitude,
                frequency: frequency / k,
                phase: *phase,
            },
            StimulusSpec::PulseTrain {
                width,
                period,
                high,
                low,
                delay,
            } => StimulusSpec::PulseTrain {
                width: width * k,
                period: period * k,
                high: *high,
                low: *low,
                delay: delay * k,
            },
            StimulusSpec::Sum { components } => StimulusSpec::Sum {
                components: components.iter().map(|c| c.time_scaled(k)).collect(),
            },
        }
    }
}

/// Drive voltage of `s` at time `t`.
pub fn render_stimulus(s: &StimulusSpec, t: f64) -> f64 {
    s.value(t)
}
