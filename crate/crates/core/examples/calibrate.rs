//! Scans behind the tuned constants in `decks`: ring delay, hybrid gain
//! and the rate window used for adaptation. Slow; pass a section name
//! (`ring`, `hybrid`, `adapt`) to run only one.

use ionic_neuron::analysis::*;
use ionic_neuron::decks;
use ionic_neuron::network::NetworkDeck;

fn ring(delay: f64) -> ionic_neuron::Result<Vec<isize>> {
    let mut deck: NetworkDeck = decks::ring_deck(4, decks::RING_GAIN)?;
    for e in &mut deck.network.edges {
        e.delay = delay;
    }
    let tr = deck.run()?;
    let h = tr.t.len() / 2;
    Ok((0..4).map(|k| xcorr_lag(&tr.neurons[k].v_o[h..], &tr.neurons[(k + 1) % 4].v_o[h..], h / 4)).collect())
}

fn hybrid(gain: f64) -> ionic_neuron::Result<String> {
    let tr = decks::hybrid_deck(gain)?.run()?;
    let seg = decks::hybrid_segment_config();
    let mut s = String::new();
    for n in &tr.neurons {
        let cfg = SpikeConfig::auto(&n.t, &n.v_o)?;
        let period = 1e3 / detect_spikes(&n.t, &n.v_o, &cfg)?.mean_rate_khz().unwrap_or(f64::NAN);
        let rep = itinerancy_segments(&n.v_o, 0.0, n.dt(), &seg)?;
        s += &format!(" | {} modes, dwell {:.1} periods", rep.n_modes, rep.median_dwell() / period);
    }
    Ok(s)
}

fn main() -> ionic_neuron::Result<()> {
    let only = std::env::args().nth(1);
    let want = |name: &str| only.as_deref().is_none_or(|o| o == name);
    if want("ring") {
        for delay in [0.0, 250.0, 500.0, 1000.0, 2000.0] {
            println!("ring delay {delay:6.0}: lags {:?}", ring(delay)?);
        }
    }
    if want("hybrid") {
        for &g in decks::HYBRID_SWEEP {
            println!("hybrid gain {g:.3}{}", hybrid(g)?);
        }
    }
    if want("adapt") {
        let tr = decks::adaptation_deck().run()?;
        let sp = detect_spikes(&tr.t, &tr.v_o, &SpikeConfig::auto(&tr.t, &tr.v_o)?)?;
        let mut isi = sp.isis();
        isi.sort_by(f64::total_cmp);
        for mult in [5.0, 10.0, 15.0] {
            let c = rate_curve(&sp, mult * isi[isi.len() / 2])?;
            println!("rate window {mult:>4}× median ISI: ratio {:.2}", c.adaptation_ratio());
        }
    }
    Ok(())
}
