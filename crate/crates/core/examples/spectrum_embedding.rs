//! Spectrum, delay embedding and correlation dimension of a periodically
//! forced neuron.

use ionic_neuron::analysis::*;
use ionic_neuron::decks;

fn main() -> ionic_neuron::Result<()> {
    let tr = decks::chaotic_deck().run()?;
    let sp = power_spectrum(&tr.v_o, tr.dt(), 8)?;
    println!("dominant {:.3e} MHz (bin {:.1e})", sp.dominant(), sp.bin_width());
    let cfg = SpikeConfig::auto(&tr.t, &tr.v_o)?;
    let period = 1e3 / detect_spikes(&tr.t, &tr.v_o, &cfg)?.mean_rate_khz().unwrap_or(f64::NAN);
    let lag = (period / tr.dt() / 4.0).round().max(1.0) as usize;
    let v = &tr.v_o[tr.v_o.len() / 6..];
    let cd = correlation_dimension(&delay_embed(v, 3, lag)?, &decks::chaotic_dimension_config())?;
    println!("lag {lag} samples, D2 {:.3} (R² {:.3})", cd.dimension, cd.r_squared);
    Ok(())
}
