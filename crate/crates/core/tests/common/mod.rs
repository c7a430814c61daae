//! Independent reference computations shared by the integration tests and
//! the acceptance runner. Nothing here calls the library code it checks.

#![allow(dead_code)]

use ionic_neuron::analysis::SpikeConfig;
use ionic_neuron::quantum::{CMatrix, DecayChannel, QmeSpec};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Cavity lowering and qubit lowering operators on qubit ⊗ cavity, built
/// element by element (index `q·N + n`).
pub fn lowering_ops(n: usize) -> (CMatrix, CMatrix) {
    let d = 2 * n;
    let mut a = CMatrix::zeros(d, d);
    let mut s = CMatrix::zeros(d, d);
    for q in 0..2 {
        for k in 1..n {
            a[(q * n + k - 1, q * n + k)] = Complex64::from((k as f64).sqrt());
        }
    }
    for k in 0..n {
        s[(k, n + k)] = Complex64::from(1.0);
    }
    (a, s)
}

pub fn hamiltonian_at(spec: &QmeSpec, t: f64) -> CMatrix {
    let (a, s) = lowering_ops(spec.n_levels);
    let ad = a.adjoint();
    let sd = s.adjoint();
    let drive = spec.a_drive * (t / spec.e).powi(2).sin();
    (&sd * &a + &ad * &s) * Complex64::from(-spec.g) - (&sd + &s) * Complex64::from(drive)
}

/// Column-stacked superoperator: `vec(AXB) = (Bᵀ ⊗ A) vec(X)`.
pub fn liouvillian_matrix(spec: &QmeSpec, t: f64) -> CMatrix {
    let (a, s) = lowering_ops(spec.n_levels);
    let d = 2 * spec.n_levels;
    let id = CMatrix::identity(d, d);
    let h = hamiltonian_at(spec, t);
    let mut l = (id.kronecker(&h) - h.transpose().kronecker(&id)) * (-I);
    for decay in &spec.decay_rates {
        let op = match decay.operator {
            DecayChannel::CavityA => &a,
            DecayChannel::QubitSigma => &s,
        };
        let c = op * Complex64::from(decay.rate.sqrt());
        let cdc = c.adjoint() * &c;
        l += c.conjugate().kronecker(&c);
        l -= (id.kronecker(&cdc) + cdc.transpose().kronecker(&id)) * Complex64::from(0.5);
    }
    l
}

/// Propagates `rho0` to `spec.t_end` with `substeps` exponentials of the
/// Liouvillian frozen at each substep midpoint.
pub fn expm_propagate(spec: &QmeSpec, rho0: &CMatrix, substeps: usize) -> CMatrix {
    let d = rho0.nrows();
    let dt = spec.t_end / substeps as f64;
    let mut v = nalgebra::DVector::from_column_slice(rho0.as_slice());
    for k in 0..substeps {
        let step = (liouvillian_matrix(spec, (k as f64 + 0.5) * dt) * Complex64::from(dt)).exp();
        v = step * v;
    }
    CMatrix::from_column_slice(d, d, v.as_slice())
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Schmitt-trigger onsets by exhaustive backward search: sample `k` is an
/// onset when it reaches the threshold and the most recent sample that was
/// either above the threshold or below the lower level was below it.
/// Refractory filtering is applied afterwards, relative to kept spikes.
pub fn brute_force_spikes(t: &[f64], v: &[f64], cfg: &SpikeConfig) -> Vec<f64> {
    let low = cfg.threshold - cfg.hysteresis_band;
    let mut onsets = Vec::new();
    for k in 0..v.len() {
        if v[k] < cfg.threshold {
            continue;
        }
        let previous = (0..k).rev().find(|&j| v[j] >= cfg.threshold || v[j] < low);
        if matches!(previous, Some(j) if v[j] < low) {
            onsets.push(t[k]);
        }
    }
    let mut kept: Vec<f64> = Vec::new();
    for s in onsets {
        if kept.last().map_or(true, |&l| s - l >= cfg.refractory) {
            kept.push(s);
        }
    }
    kept
}

pub struct Waveform {
    pub name: &'static str,
    pub t: Vec<f64>,
    pub v: Vec<f64>,
    pub cfg: SpikeConfig,
}

/// Synthetic detector test signals: clean pulses, ripple that straddles the
/// threshold, a chattering noisy trace and a waveform with close doublets.
pub fn spike_corpus(seed: u64) -> Vec<Waveform> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 4000;
    let t: Vec<f64> = (0..n).map(|k| k as f64 * 0.5).collect();
    let cfg = SpikeConfig {
        threshold: 1.0,
        hysteresis_band: 0.2,
        refractory: 0.0,
    };
    let mut out = Vec::new();

    let pulses: Vec<f64> = (0..n).map(|k| if k % 200 >= 50 && k % 200 < 70 { 2.0 } else { 0.0 }).collect();
    out.push(Waveform {
        name: "pulses",
        t: t.clone(),
        v: pulses,
        cfg,
    });

    let ripple: Vec<f64> = (0..n)
        .map(|k| {
            let base = if (k / 250) % 2 == 1 { 1.05 } else { 0.3 };
            base + 0.1 * (k as f64 * 0.9).sin()
        })
        .collect();
    out.push(Waveform {
        name: "ripple",
        t: t.clone(),
        v: ripple,
        cfg,
    });

    let noisy: Vec<f64> = (0..n)
        .map(|k| 1.2 * (k as f64 * 2.0 * std::f64::consts::PI / 300.0).sin().max(0.0) + rng.gen_range(-0.15..0.15))
        .collect();
    out.push(Waveform {
        name: "noisy",
        t: t.clone(),
        v: noisy,
        cfg,
    });

    let doublets: Vec<f64> = (0..n)
        .map(|k| {
            let m = k % 400;
            if (100..110).contains(&m) || (130..140).contains(&m) {
                1.5
            } else {
                0.0
            }
        })
        .collect();
    out.push(Waveform {
        name: "doublets",
        t: t.clone(),
        v: doublets.clone(),
        cfg: SpikeConfig { refractory: 50.0, ..cfg },
    });
    out.push(Waveform {
        name: "doublets_no_refractory",
        t,
        v: doublets,
        cfg,
    });
    out
}

/// Damped linear oscillator `v'' + a v' + b v = 0` from `(v0, u0)`.
pub fn linear_oscillator(a: f64, b: f64, v0: f64, u0: f64, t: f64) -> f64 {
    let disc = a * a - 4.0 * b;
    let re = -a / 2.0;
    if disc < 0.0 {
        let w = (-disc).sqrt() / 2.0;
        let c2 = (u0 - re * v0) / w;
        (re * t).exp() * (v0 * (w * t).cos() + c2 * (w * t).sin())
    } else {
        let r = disc.sqrt() / 2.0;
        let (l1, l2) = (re + r, re - r);
        let c1 = (u0 - l2 * v0) / (l1 - l2);
        c1 * (l1 * t).exp() + (v0 - c1) * (l2 * t).exp()
    }
}

/// Small-signal conductance of the two-branch memristor law, by series
/// expansion of `α(1 − e^{βV})` and `γ sinh(δV)`.
pub fn small_signal_conductance(alpha: f64, beta: f64, gamma: f64, delta: f64, x: f64) -> f64 {
    -(1.0 - x) * alpha * beta + x * gamma * delta
}

pub fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let mut sab = 0.0;
    let mut saa = 0.0;
    let mut sbb = 0.0;
    for (x, y) in a.iter().zip(b) {
        sab += (x - ma) * (y - mb);
        saa += (x - ma) * (x - ma);
        sbb += (y - mb) * (y - mb);
    }
    sab / (saa * sbb).sqrt()
}

/// Sine at `f1` for the first half and at `f2` for the second.
pub fn planted_two_regime(n: usize, dt: f64, f1: f64, f2: f64) -> Vec<f64> {
    let tau = 2.0 * std::f64::consts::PI;
    let half = n / 2;
    (0..n)
        .map(|k| {
            let t = k as f64 * dt;
            if k < half {
                (tau * f1 * t).sin()
            } else {
                (tau * f2 * t).sin()
            }
        })
        .collect()
}
