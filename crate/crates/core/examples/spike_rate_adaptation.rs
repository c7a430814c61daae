//! Slow drift of the second memory lowers the firing rate over the run.

use ionic_neuron::analysis::{detect_spikes, rate_curve, SpikeConfig};
use ionic_neuron::decks;

fn main() -> ionic_neuron::Result<()> {
    let tr = decks::adaptation_deck().run()?;
    let cfg = SpikeConfig::auto(&tr.t, &tr.v_o)?;
    let spikes = detect_spikes(&tr.t, &tr.v_o, &cfg)?;
    let mut isi = spikes.isis();
    isi.sort_by(f64::total_cmp);
    let window = 10.0 * isi[isi.len() / 2];
    let curve = rate_curve(&spikes, window)?;
    println!("{} spikes, window {window:.0} μs", spikes.len());
    println!("first {:.4} kHz → last {:.4} kHz (ratio {:.2})", curve.first_rate, curve.last_rate, curve.adaptation_ratio());
    println!("x2: {:.4} → {:.4}", tr.x2[0], tr.x2[tr.x2.len() - 1]);
    Ok(())
}
