//! Four neurons in a delayed ring settle with phase offsets between
//! neighbours.

use ionic_neuron::analysis::xcorr_lag;
use ionic_neuron::decks;

fn main() -> ionic_neuron::Result<()> {
    let tr = decks::ring_deck(4, decks::RING_GAIN)?.run()?;
    let h = tr.t.len() / 2;
    let dt = tr.t[1] - tr.t[0];
    for k in 0..4 {
        let lag = xcorr_lag(&tr.neurons[k].v_o[h..], &tr.neurons[(k + 1) % 4].v_o[h..], h / 4);
        println!("node {k} → {}: lag {:.0} μs", (k + 1) % 4, lag as f64 * dt);
    }
    Ok(())
}
