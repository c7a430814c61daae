//! Driven Jaynes–Cummings model with loss: cavity and qubit populations.

use ionic_neuron::quantum::{evolve, ground_state, QmeSpec};

fn main() -> ionic_neuron::Result<()> {
    let spec = QmeSpec::default();
    let evo = evolve(&ground_state(spec.n_levels), &spec)?;
    for k in (0..evo.t.len()).step_by(10) {
        println!("t {:4.2}  ⟨a†a⟩ {:.5}  ⟨σ†σ⟩ {:.5}", evo.t[k], evo.n_cavity[k], evo.n_qubit[k]);
    }
    println!("worst invariants: {:?}", evo.worst);
    Ok(())
}
