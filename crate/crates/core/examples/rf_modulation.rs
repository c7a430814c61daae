//! Neuron output as the I channel of a 20 MHz carrier, then recovered by
//! mixing and low-pass filtering.

use ionic_neuron::analysis::{envelope_demod, iq_modulate, normalize};
use ionic_neuron::decks;

fn main() -> ionic_neuron::Result<()> {
    let tr = decks::spiking_deck().run()?;
    // Output samples are played out at fs.
    let (f_c, fs) = (20.0, 200.0);
    let base = normalize(&tr.v_o);
    let pass = iq_modulate(&base, None, f_c, fs)?;
    let (i, _) = envelope_demod(&pass, f_c, fs)?;
    let err = base.iter().zip(&i).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    println!("{} samples, max round-trip error {err:.3e}", base.len());
    Ok(())
}
