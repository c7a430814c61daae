//! Default warm neuron under DC bias: spike times and mean rate.

use ionic_neuron::analysis::{detect_spikes, SpikeConfig};
use ionic_neuron::decks;

fn main() -> ionic_neuron::Result<()> {
    let deck = decks::spiking_deck();
    let tr = deck.run()?;
    let cfg = SpikeConfig::auto(&tr.t, &tr.v_o)?;
    let spikes = detect_spikes(&tr.t, &tr.v_o, &cfg)?;
    println!("{} spikes in {} μs, threshold {:.3} V", spikes.len(), deck.t_end, cfg.threshold);
    if let Some(r) = spikes.mean_rate_khz() {
        println!("mean rate {r:.4} kHz");
    }
    for t in spikes.times.iter().take(5) {
        println!("  spike at {t:.1} μs");
    }
    Ok(())
}
