//! First- and second-order cavity correlations by quantum regression,
//! starting once the cavity has been populated.

use ionic_neuron::quantum::{correlation_g1, correlation_g2, correlation_origin, evolve, ground_state, QmeSpec};

fn main() -> ionic_neuron::Result<()> {
    let spec = QmeSpec::default();
    let evo = evolve(&ground_state(spec.n_levels), &spec)?;
    let k0 = correlation_origin(&evo, spec.pop_floor)?;
    let t0 = evo.t[k0];
    let taus: Vec<f64> = (0..=20).map(|k| k as f64 * 0.1).collect();
    let g1 = correlation_g1(&spec, &evo.states[k0], t0, &taus)?;
    let g2 = correlation_g2(&spec, &evo.states[k0], t0, &taus)?;
    // g2 is normalised by ⟨a†a⟩(t0)², so it climbs as the drive fills the cavity.
    println!("origin t0 = {t0:.2}");
    for (k, tau) in taus.iter().enumerate().step_by(4) {
        println!("τ {tau:.1}  |g1| {:.4}  g2 {:.4}", g1.values[k].norm(), g2.values[k].re);
    }
    Ok(())
}
