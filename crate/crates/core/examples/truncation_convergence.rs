//! Peak cavity population as the Fock truncation grows under strong drive.

use ionic_neuron::quantum::{evolve, ground_state, QmeSpec};

fn main() -> ionic_neuron::Result<()> {
    let mut prev: Option<f64> = None;
    for n in [4, 8, 12] {
        let spec = QmeSpec { a_drive: 40.0, n_levels: n, ..QmeSpec::default() };
        let peak = evolve(&ground_state(n), &spec)?.max_cavity_population();
        let change = prev.map(|p| format!("{:.1}%", 100.0 * (peak - p).abs() / p)).unwrap_or_default();
        println!("N {n:2}: max ⟨a†a⟩ {peak:.4} {change}");
        prev = Some(peak);
    }
    Ok(())
}
