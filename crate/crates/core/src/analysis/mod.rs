//! Post-processing of simulated series: spikes and firing rates, phase
//! portraits and embeddings, spectra, itinerancy segmentation and I/Q
//! modulation.
//!
//! Time axes are in μs and frequencies in MHz throughout.

mod embed;
mod modulation;
mod segments;
mod spectrum;
mod spikes;

pub use embed::{correlation_dimension, delay_embed, phase_portrait, CorrDim, CorrDimConfig};
pub use modulation::{envelope_demod, filter_centered, iq_modulate, lowpass_taps, normalize};
pub use segments::{itinerancy_segments, Segment, SegmentConfig, SegmentReport};
pub use spectrum::{hann, power_spectrum, Spectrum};
pub use spikes::{detect_spikes, rate_curve, uniform_step, RateCurve, SpikeConfig, SpikeTrain};

/// Lag (in samples, within `±max_lag`) maximising the cross-correlation of
/// the mean-removed series; positive when `b` trails `a`.
pub fn xcorr_lag(a: &[f64], b: &[f64], max_lag: usize) -> isize {
    let n = a.len().min(b.len());
    let ma = crate::numerics::mean(&a[..n]);
    let mb = crate::numerics::mean(&b[..n]);
    let mut best = (f64::NEG_INFINITY, 0isize);
    for lag in -(max_lag as isize)..=max_lag as isize {
        let mut s = 0.0;
        for i in 0..n {
            let j = i as isize + lag;
            if j >= 0 && (j as usize) < n {
                s += (a[i] - ma) * (b[j as usize] - mb);
            }
        }
        if s > best.0 {
            best = (s, lag);
        }
    }
    best.1
}
