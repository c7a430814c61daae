mod common;

use std::f64::consts::TAU;

use ionic_neuron::analysis::*;
use ionic_neuron::decks;
use rand::{Rng, SeedableRng};

#[test]
fn detector_agrees_with_brute_force_on_corpus() {
    for seed in 0..5 {
        for w in common::spike_corpus(seed) {
            let got = detect_spikes(&w.t, &w.v, &w.cfg).unwrap();
            assert_eq!(got.times, common::brute_force_spikes(&w.t, &w.v, &w.cfg), "{} seed {seed}", w.name);
        }
    }
}

#[test]
fn pulse_train_spikes_sit_on_leading_edges() {
    let w = &common::spike_corpus(0)[0];
    let sp = detect_spikes(&w.t, &w.v, &w.cfg).unwrap();
    assert_eq!(sp.len(), 20);
    for (k, s) in sp.times.iter().enumerate() {
        let edge = (200 * k + 50) as f64 * 0.5;
        assert!((s - edge).abs() <= 0.5, "{s} vs {edge}");
    }
}

#[test]
fn ripple_around_threshold_does_not_chatter() {
    let w = common::spike_corpus(0).into_iter().find(|w| w.name == "ripple").unwrap();
    // Eight raised plateaus, one spike each.
    assert_eq!(detect_spikes(&w.t, &w.v, &w.cfg).unwrap().len(), 8);
}

#[test]
fn simulated_trace_matches_brute_force() {
    let mut deck = decks::spiking_deck();
    deck.t_end = 60_000.0;
    let tr = deck.run().unwrap();
    let cfg = SpikeConfig::auto(&tr.t, &tr.v_o).unwrap();
    let sp = detect_spikes(&tr.t, &tr.v_o, &cfg).unwrap();
    assert!(sp.len() > 3);
    assert_eq!(sp.times, common::brute_force_spikes(&tr.t, &tr.v_o, &cfg));
}

#[test]
fn geometric_isis_give_decreasing_rate() {
    let mut t = 0.0;
    let mut isi = 1.0;
    let mut times = Vec::new();
    for _ in 0..60 {
        times.push(t);
        t += isi;
        isi *= 1.08;
    }
    let curve = rate_curve(&SpikeTrain::new(times), 10.0).unwrap();
    assert!(curve.points.len() > 10);
    assert!(curve.points.windows(2).all(|p| p[1].1 <= p[0].1));
    assert!(curve.adaptation_ratio() > 1.5);
}

#[test]
fn quarter_period_embedding_of_sine_is_a_circle() {
    let period = 200;
    let s: Vec<f64> = (0..5000).map(|k| (TAU * k as f64 / period as f64).sin()).collect();
    let rows = delay_embed(&s, 2, period / 4).unwrap();
    for r in &rows {
        assert!((r[0].hypot(r[1]) - 1.0).abs() < 0.01);
    }
}

#[test]
fn constant_embeds_to_a_point() {
    let rows = delay_embed(&[2.5; 50], 3, 4).unwrap();
    assert_eq!(rows.len(), 42);
    assert!(rows.iter().all(|r| r == &vec![2.5; 3]));
}

#[test]
fn white_noise_spectrum_is_flat() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let s: Vec<f64> = (0..10_000).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let sp = power_spectrum(&s, 1.0, 20).unwrap();
    let mut p = sp.power[1..].to_vec();
    p.sort_by(f64::total_cmp);
    let ratio = p[p.len() - 1] / p[p.len() / 2];
    assert!(ratio < 10.0, "{ratio}");
}

#[test]
fn spiking_fundamental_is_the_mean_rate() {
    let tr = decks::spiking_deck().run().unwrap();
    let cfg = SpikeConfig::auto(&tr.t, &tr.v_o).unwrap();
    let rate_mhz = detect_spikes(&tr.t, &tr.v_o, &cfg).unwrap().mean_rate_khz().unwrap() * 1e-3;
    let sp = power_spectrum(&tr.v_o, tr.dt(), 1).unwrap();
    assert!((sp.dominant() - rate_mhz).abs() <= sp.bin_width(), "{} vs {rate_mhz}", sp.dominant());
}

#[test]
fn planted_regime_change_is_found() {
    let win = SegmentConfig::default().window;
    let n = 40 * win;
    let s = common::planted_two_regime(n, 1.0, 1.0 / 64.0, 3.0 / 64.0);
    let r = itinerancy_segments(&s, 0.0, 1.0, &SegmentConfig::default()).unwrap();
    assert_eq!(r.segments.len(), 2);
    assert_eq!(r.n_modes, 2);
    let boundary = r.segments[0].t_end;
    assert!((boundary - (n / 2) as f64).abs() <= 2.0 * win as f64, "{boundary}");
}

#[test]
fn chaotic_deck_has_fractional_dimension() {
    let deck = decks::chaotic_deck();
    let tr = deck.run().unwrap();
    let cfg = SpikeConfig::auto(&tr.t, &tr.v_o).unwrap();
    let period = 1e3 / detect_spikes(&tr.t, &tr.v_o, &cfg).unwrap().mean_rate_khz().unwrap();
    let v = &tr.v_o[tr.v_o.len() / 6..];
    let lag = (period / tr.dt() / 4.0).round().max(1.0) as usize;
    let d = correlation_dimension(&delay_embed(v, 3, lag).unwrap(), &decks::chaotic_dimension_config()).unwrap();
    assert!(d.dimension > 1.5, "D2 = {}", d.dimension);
}

#[test]
fn modulation_round_trip_preserves_neuron_output() {
    // Samples are replayed at 200 MHz.
    let mut deck = decks::spiking_deck();
    deck.t_end = 60_000.0;
    let tr = deck.run().unwrap();
    let base = normalize(&tr.v_o);
    let pass = iq_modulate(&base, None, 20.0, 200.0).unwrap();
    let (i, _) = envelope_demod(&pass, 20.0, 200.0).unwrap();
    let r = common::pearson(&base, &i);
    assert!(r >= 0.95, "{r}");
}
