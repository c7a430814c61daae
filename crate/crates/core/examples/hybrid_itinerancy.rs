//! Warm neuron coupled to a cryogenic one. The cryogenic output wanders
//! between attractor modes; the segmentation prints where.

use ionic_neuron::analysis::{detect_spikes, itinerancy_segments, SpikeConfig};
use ionic_neuron::decks;

fn main() -> ionic_neuron::Result<()> {
    let tr = decks::hybrid_deck(decks::HYBRID_GAIN)?.run()?;
    let seg = decks::hybrid_segment_config();
    for (j, n) in tr.neurons.iter().enumerate() {
        let cfg = SpikeConfig::auto(&n.t, &n.v_o)?;
        let period = 1e3 / detect_spikes(&n.t, &n.v_o, &cfg)?.mean_rate_khz().unwrap_or(f64::NAN);
        let rep = itinerancy_segments(&n.v_o, 0.0, n.dt(), &seg)?;
        println!("neuron {j}: {} modes, median dwell {:.1} periods", rep.n_modes, rep.median_dwell() / period);
        for s in &rep.segments {
            println!("  mode {} from {:.0} to {:.0} μs", s.mode, s.t_start, s.t_end);
        }
    }
    Ok(())
}
