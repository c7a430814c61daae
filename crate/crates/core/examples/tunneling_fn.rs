//! NIN tunnelling I–V and the Fowler–Nordheim plot used to find the
//! direct-tunnelling / field-emission crossover.

use ionic_neuron::device::{fn_analysis, nin_tunnel_current, BarrierSpec, IvCurve};

fn main() -> ionic_neuron::Result<()> {
    let barrier = BarrierSpec::default();
    let volts: Vec<f64> = (1..=120).map(|k| k as f64 * 0.05).collect();
    let curve = IvCurve::sample(&volts, |v| nin_tunnel_current(v, &barrier, 300.0))?;
    let rep = fn_analysis(&curve)?;
    println!("field-emission window {:.2}–{:.2} V, slope {:.3} V, R² {:.4}", rep.fe_region.0, rep.fe_region.1, rep.fe_slope, rep.r_squared);
    match rep.dt_region {
        Some((a, b)) => println!("direct tunnelling below {b:.2} V (from {a:.2} V)"),
        None => println!("no direct-tunnelling region in range"),
    }
    println!("barrier slope estimate {:.3} V", barrier.fowler_nordheim_slope());
    Ok(())
}
