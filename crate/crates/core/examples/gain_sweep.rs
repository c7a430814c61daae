//! Runs the bundled coupling-gain sweep into a temporary directory.

use std::path::Path;

use ionic_neuron::cli::{run_sweep, SweepSpec};
use ionic_neuron::io::load_config;

fn main() -> ionic_neuron::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("sweeps/gain_scan.json");
    let spec: SweepSpec = load_config(&path)?;
    let out = std::env::temp_dir().join("ionic-neuron-gain-sweep");
    for p in run_sweep(&spec, &out, &[], 0, false)? {
        println!("{} {} → {:?}", p.index, p.value, p.summary);
    }
    println!("results in {}", out.display());
    Ok(())
}
