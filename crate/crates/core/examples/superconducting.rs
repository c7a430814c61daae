//! Josephson/quasiparticle branch used for cryogenic memristors and the
//! Nb coherence length at a few temperatures.

use ionic_neuron::decks;
use ionic_neuron::device::{coherence_length, sc_current, SuperconductingParams};

fn main() -> ionic_neuron::Result<()> {
    let lab = SuperconductingParams::default();
    let deck = decks::cryo_params();
    println!("default parameters (millivolt gap):");
    for k in 0..=6 {
        let mv = k as f64 * 0.1;
        println!("  {mv:4.1} mV  {:11.4e} mA", sc_current(mv * 1e-3, 0.5, &lab));
    }
    println!("cryo deck (volt-scale gap):");
    for k in 0..=6 {
        let v = k as f64 * 0.2;
        println!("  {v:4.1} V   {:11.4e} mA", sc_current(v, 0.5, &deck));
    }
    for t in [4.2, 8.1, 9.0] {
        // Fermi velocity 1000 km/s, mean free path 5 nm.
        println!("ξ({t} K) = {:.1} nm", coherence_length(1000.0, 5.0, t)?);
    }
    Ok(())
}
