//! Calibrated parameter decks.
//!
//! The values come from the search in `examples/calibrate.rs` and are mirrored
//! as JSON under `decks/`. They are tuned for behaviour (sustained spiking,
//! adaptation, irregular firing), not fitted to measured devices.

use crate::analysis::{CorrDimConfig, SegmentConfig};
use crate::device::{RetentionMode, MemristorParams, SuperconductingParams};
use crate::error::Result;
use crate::network::{build_ring, hybrid_pair, NetworkDeck, NodeStimulus};
use crate::neuron::{CircuitParams, ForcingMode, NeuronDeck, NeuronState, Regime, StimulusSpec};
use crate::ode::SolverConfig;

fn mem(alpha: f64, beta: f64, gamma: f64, delta: f64, lambda: f64, eta1: f64, eta2: f64, tau: f64) -> MemristorParams {
    MemristorParams {
        alpha,
        beta,
        gamma,
        delta,
        lambda,
        eta1,
        eta2,
        tau,
        ..MemristorParams::default()
    }
}

/// Self-oscillating neuron used as the default circuit.
pub fn spiking() -> CircuitParams {
    CircuitParams {
        r3: 1.1182247034297716,
        r4: 9.471153226946825,
        c1: 186.12366702142955,
        c2: 774.5292362526413,
        v_sat: 5.0,
        mem1: mem(
            0.31888874166133074,
            -2.162721813102345,
            4.041399717409413,
            0.34906184436760823,
            0.3399896885757576,
            0.0055495881125411884,
            1.9237729244885342,
            155.24904759811812,
        ),
        mem2: mem(
            0.07994247351935267,
            -0.5262819275709676,
            0.06010905157374988,
            7.494588893269737,
            0.6785262022639632,
            0.17468944322604912,
            0.32131712941072266,
            1.604470359412079,
        ),
        regime1: Regime::Warm,
        regime2: Regime::Warm,
        forcing: ForcingMode::InputBranch,
    }
}

/// DC bias at which [`spiking`] fires.
pub const SPIKING_BIAS: f64 = 1.1963598440555492;

pub fn spiking_deck() -> NeuronDeck {
    NeuronDeck {
        circuit: spiking(),
        stimulus: StimulusSpec::dc(SPIKING_BIAS),
        init: NeuronState::default(),
        solver: SolverConfig::default(),
        t_end: 200_000.0,
    }
}

/// [`spiking_deck`] with a slow, strongly voltage-dependent second memory.
/// The state drifts over the run and the firing rate falls.
pub fn adaptation_deck() -> NeuronDeck {
    let mut d = spiking_deck();
    let m = &mut d.circuit.mem2;
    m.f_mode = RetentionMode::ArrheniusSinh;
    m.eta2 = 2.3025;
    m.tau = 1000.0;
    m.eta1 = 0.015 / (1000.0 * (0.5f64 * 2.3025).sinh());
    m.lambda = 0.01;
    d.init.x2 = 0.11;
    d.t_end = 300_000.0;
    d
}

/// Natural firing frequency of [`spiking_deck`] in MHz.
pub const SPIKING_FREQUENCY: f64 = 0.00017098;

/// [`spiking_deck`] driven by a sinusoid at 1.4 times its own rate. The
/// spike train does not settle onto a lock and the embedded attractor
/// fills a sheet rather than a closed curve.
pub fn chaotic_deck() -> NeuronDeck {
    let mut d = spiking_deck();
    d.stimulus = StimulusSpec::Sum {
        components: vec![
            StimulusSpec::dc(SPIKING_BIAS),
            StimulusSpec::Sine {
                amplitude: 0.8,
                frequency: 1.4 * SPIKING_FREQUENCY,
                phase: 0.0,
            },
        ],
    };
    d.solver.sample_interval = 40.0;
    d.t_end = 3_000_000.0;
    d
}

/// Grassberger–Procaccia settings for [`chaotic_deck`] runs. The fit sits
/// at small radii: larger ones only see the fast spike excursions, which
/// look one-dimensional.
pub fn chaotic_dimension_config() -> CorrDimConfig {
    CorrDimConfig {
        max_points: 5000,
        quantiles: (0.001, 0.01),
        ..CorrDimConfig::default()
    }
}

/// Superconducting conduction with volt-scale gap parameters. With
/// millivolt gaps the branch resistance only rises with bias and the
/// circuit cannot oscillate.
pub fn cryo_params() -> SuperconductingParams {
    SuperconductingParams {
        critical_current: 0.01283026127925419,
        sum_gap: 414.90584298872096,
        quasiparticle_conductance: 0.004300586627130253,
        subgap_conductance: 0.0002119347368564416,
        gap_smoothing: 3.2185008269631408,
        kappa: 0.44428334899572947,
        junction_voltage: 4.217368837583646,
    }
}

/// [`spiking`] with both memristors in the superconducting regime.
pub fn cryo() -> CircuitParams {
    CircuitParams {
        regime1: Regime::Superconducting(cryo_params()),
        regime2: Regime::Superconducting(cryo_params()),
        ..spiking()
    }
}

/// DC bias at which [`cryo`] fires.
pub const CRYO_BIAS: f64 = 0.7757;

pub fn cryo_deck() -> NeuronDeck {
    NeuronDeck {
        circuit: cryo(),
        stimulus: StimulusSpec::dc(CRYO_BIAS),
        ..spiking_deck()
    }
}

/// Default coupling of the hybrid pair.
pub const HYBRID_GAIN: f64 = 0.07;

/// Warm neuron (the [`adaptation_deck`] circuit) and [`cryo`] neuron
/// coupled both ways.
pub fn hybrid_deck(gain: f64) -> Result<NetworkDeck> {
    let warm = adaptation_deck();
    let mut network = hybrid_pair(&warm.circuit, &cryo(), gain)?;
    network.init = vec![warm.init, NeuronState::default()];
    network.stimuli = vec![
        NodeStimulus {
            neuron: 0,
            stimulus: StimulusSpec::dc(SPIKING_BIAS),
        },
        NodeStimulus {
            neuron: 1,
            stimulus: StimulusSpec::dc(CRYO_BIAS),
        },
    ];
    Ok(NetworkDeck {
        network,
        solver: SolverConfig::default(),
        t_end: 1_500_000.0,
    })
}

/// Gains scanned by the hybrid itinerancy check.
pub const HYBRID_SWEEP: &[f64] = &[0.0, 0.02, 0.04, 0.07, 0.1];

/// Segmentation settings for hybrid runs: windows span a few spikes.
pub fn hybrid_segment_config() -> SegmentConfig {
    SegmentConfig {
        window: 2048,
        ..SegmentConfig::default()
    }
}

/// Default coupling of the ring.
pub const RING_GAIN: f64 = 0.05;
/// Default edge delay of the ring, μs. Instantaneous coupling pulls the
/// ring into in-phase firing; this delay settles it into alternating
/// anti-phase.
pub const RING_DELAY: f64 = 1000.0;

/// `n` [`spiking`] neurons in a directed ring, all biased at
/// [`SPIKING_BIAS`], started from staggered output voltages.
pub fn ring_deck(n: usize, gain: f64) -> Result<NetworkDeck> {
    let mut network = build_ring(n, gain, &spiking())?;
    network.edges.iter_mut().for_each(|e| e.delay = RING_DELAY);
    network.stimuli = (0..n)
        .map(|neuron| NodeStimulus {
            neuron,
            stimulus: StimulusSpec::dc(SPIKING_BIAS),
        })
        .collect();
    network.init = (0..n)
        .map(|k| NeuronState {
            v: 1e-3 * (1.0 + k as f64),
            ..NeuronState::default()
        })
        .collect();
    Ok(NetworkDeck {
        network,
        solver: SolverConfig::default(),
        t_end: 200_000.0,
    })
}
