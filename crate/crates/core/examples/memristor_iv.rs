//! Quasi-static I–V of the warm memristor law at a few memory states.

use ionic_neuron::decks;
use ionic_neuron::device::{chang_current, memristance};

fn main() {
    let p = decks::spiking().mem2;
    println!("{:>6} {:>12} {:>12} {:>12}", "V", "I(x=0)", "I(x=0.5)", "I(x=1)");
    for k in -6..=6 {
        let v = 0.5 * k as f64;
        let row: Vec<String> = [0.0, 0.5, 1.0].iter().map(|&x| format!("{:12.4e}", chang_current(v, x, &p))).collect();
        println!("{v:6.2} {}", row.join(" "));
    }
    for x in [0.1, 0.9] {
        println!("R(0.01 V, x = {x}) = {:.3} kΩ", memristance(0.01, x, &p).unwrap());
    }
}
