mod common;

use ionic_neuron::analysis::*;
use ionic_neuron::decks;
use ionic_neuron::device::*;
use ionic_neuron::io::{parse_config, to_canonical};
use ionic_neuron::neuron::NeuronDeck;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn memristance_times_current_is_voltage(v in prop_oneof![-3.0..-1e-5f64, 1e-5..3.0f64], x in 0.0..=1.0f64) {
        let p = MemristorParams::default();
        let r = memristance(v, x, &p).unwrap();
        prop_assert!((r * chang_current(v, x, &p) / v - 1.0).abs() < 1e-10);
    }

    #[test]
    fn chang_current_is_continuous(v in -3.0..3.0f64, x in 0.0..=1.0f64) {
        let p = MemristorParams::default();
        let h = 1e-9;
        prop_assert!((chang_current(v + h, x, &p) - chang_current(v, x, &p)).abs() < 1e-6);
        prop_assert!((chang_current(v, (x + h).min(1.0), &p) - chang_current(v, x, &p)).abs() < 1e-6);
    }

    #[test]
    fn tunnel_current_is_odd(v in 0.01..2.0f64) {
        let b = BarrierSpec::default();
        let plus = nin_tunnel_current(v, &b, 300.0).unwrap();
        let minus = nin_tunnel_current(-v, &b, 300.0).unwrap();
        prop_assert!((plus + minus).abs() <= 1e-9 * plus.abs().max(1e-300));
    }

    #[test]
    fn tunnel_current_rises_below_half_height(v in 0.01..1.0f64, dv in 0.01..0.09f64) {
        let b = BarrierSpec::default();
        prop_assert!(nin_tunnel_current(v + dv, &b, 300.0).unwrap() > nin_tunnel_current(v, &b, 300.0).unwrap());
    }

    #[test]
    fn sc_current_is_odd_and_monotone(v in -6.0..6.0f64, dv in 0.0..0.5f64, x in 0.0..=1.0f64) {
        let p = decks::cryo_params();
        prop_assert!((sc_current(v, x, &p) + sc_current(-v, x, &p)).abs() < 1e-12);
        prop_assert!(sc_current(v + dv, x, &p) >= sc_current(v, x, &p));
    }

    #[test]
    fn embedding_rows_copy_the_input(len in 20usize..200, dim in 2usize..=3, lag in 1usize..6) {
        let s: Vec<f64> = (0..len).map(|k| (k as f64 * 0.37).sin()).collect();
        let rows = delay_embed(&s, dim, lag).unwrap();
        prop_assert_eq!(rows.len(), len - (dim - 1) * lag);
        for (i, r) in rows.iter().enumerate() {
            for (j, val) in r.iter().enumerate() {
                prop_assert_eq!(*val, s[i + j * lag]);
            }
        }
    }

    #[test]
    fn periodic_train_has_flat_rate(period in 1.0..20.0f64, window in 5.0..200.0f64) {
        let times: Vec<f64> = (0..200).map(|k| k as f64 * period).collect();
        let curve = rate_curve(&SpikeTrain::new(times), window).unwrap();
        let rates: Vec<f64> = curve.points.iter().map(|p| p.1).collect();
        if let (Some(lo), Some(hi)) = (rates.iter().cloned().reduce(f64::min), rates.iter().cloned().reduce(f64::max)) {
            prop_assert!(hi - lo <= 1e3 / window + 1e-9);
        }
    }

    #[test]
    fn detector_matches_brute_force_on_random_walks(seed in 0u64..1000) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut v = 0.0;
        let walk: Vec<f64> = (0..2000).map(|_| { v += rng.gen_range(-0.1..0.1); v }).collect();
        let t: Vec<f64> = (0..2000).map(|k| k as f64).collect();
        let cfg = SpikeConfig { threshold: 0.3, hysteresis_band: 0.1, refractory: rng.gen_range(0.0..30.0) };
        let got = detect_spikes(&t, &walk, &cfg).unwrap().times;
        prop_assert_eq!(got, common::brute_force_spikes(&t, &walk, &cfg));
    }

    #[test]
    fn deck_json_round_trip_is_idempotent(scale in 0.5..2.0f64, bias in -2.0..2.0f64) {
        let mut deck = decks::spiking_deck();
        deck.circuit.c1 *= scale;
        deck.circuit.mem2.tau *= scale;
        deck.stimulus = ionic_neuron::neuron::StimulusSpec::dc(bias);
        let once = to_canonical(&deck);
        let back: NeuronDeck = parse_config(&once, "prop").unwrap();
        prop_assert_eq!(&back, &deck);
        prop_assert_eq!(to_canonical(&back), once);
    }
}
