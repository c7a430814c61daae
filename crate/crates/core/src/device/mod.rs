//! Device-level physics: memristor conduction and state laws, the NIN
//! tunneling integral, the superconducting IV branch and the proximity
//! coherence length.

mod coherence;
mod iv;
mod memristor;
mod superconducting;
mod tunneling;

pub use coherence::coherence_length;
pub use iv::IvCurve;
pub use memristor::{
    chang_current, ion_velocity_factor, memristance, state_derivative, MemristorParams,
    RetentionMode, Warm, V_EPS,
};
pub use superconducting::{sc_current, Superconducting, SuperconductingParams};
pub use tunneling::{fn_analysis, nin_tunnel_current, BarrierSpec, DosModel, FnReport, FN_MIN_WINDOW, FN_R2_THRESHOLD};

use crate::error::{Error, Result};

/// A static conduction law `I(V, x)` together with the partial derivatives
/// the circuit model needs. Voltages in V, currents in mA.
pub trait Conduction {
    fn current(&self, v: f64, x: f64) -> f64;
    fn di_dv(&self, v: f64, x: f64) -> f64;
    fn di_dx(&self, v: f64, x: f64) -> f64;
    /// `∂²I/∂V²` at `V = 0`.
    fn d2i_dv2_at_zero(&self, x: f64) -> f64;
    /// `∂G(0, x)/∂x` where `G(0, x) = ∂I/∂V` at `V = 0`.
    fn dg0_dx(&self, x: f64) -> f64;

    /// Small-signal conductance at zero bias.
    fn g0(&self, x: f64) -> f64 {
        self.di_dv(0.0, x)
    }

    /// `V / I(V, x)` in kΩ, or `1 / G(0, x)` for `|V| < V_EPS`.
    fn resistance(&self, v: f64, x: f64) -> Result<f64> {
        if v.abs() < V_EPS {
            let g0 = self.g0(x);
            if !(g0 > 0.0) {
                return Err(Error::invalid(
                    "memristor",
                    format!("small-signal conductance G(0, {x}) = {g0:.3e} is not positive"),
                ));
            }
            return Ok(1.0 / g0);
        }
        let i = self.current(v, x);
        if i == 0.0 || (i > 0.0) != (v > 0.0) {
            return Err(Error::invalid(
                "memristor",
                format!("non-passive conduction: I({v:.3e}, {x}) = {i:.3e}"),
            ));
        }
        Ok(v / i)
    }

    /// `(∂R/∂V, ∂R/∂x)` of [`Conduction::resistance`].
    fn resistance_partials(&self, v: f64, x: f64) -> Result<(f64, f64)> {
        if v.abs() < V_EPS {
            let r = self.resistance(v, x)?;
            // R = 1/G(V) with G(V) ≈ G0 + I''(0)·V/2 near zero bias.
            let r_v = -0.5 * self.d2i_dv2_at_zero(x) * r * r;
            let r_x = -self.dg0_dx(x) * r * r;
            return Ok((r_v, r_x));
        }
        let i = self.current(v, x);
        let i2 = i * i;
        Ok(((i - v * self.di_dv(v, x)) / i2, -v * self.di_dx(v, x) / i2))
    }
}

/// Voltage across a device in series with `r_series` when the pair is driven
/// by `v_total`: solves `I(V, x) = (v_total − V) / r_series` for `V` between
/// 0 and `v_total`.
pub fn solve_series_node<C: Conduction>(law: &C, x: f64, v_total: f64, r_series: f64) -> Result<f64> {
    if v_total == 0.0 {
        return Ok(0.0);
    }
    let residual = |v: f64| law.current(v, x) - (v_total - v) / r_series;
    let (mut lo, mut hi) = if v_total > 0.0 { (0.0, v_total) } else { (v_total, 0.0) };
    let mut f_lo = residual(lo);
    let f_hi = residual(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if (f_lo > 0.0) == (f_hi > 0.0) {
        return Err(Error::numerical(
            f64::NAN,
            format!("device node voltage not bracketed for drive {v_total:.6e} V"),
        ));
    }
    // Start from the linearised divider solution.
    let g0 = law.g0(x).max(0.0);
    let mut v = (v_total / (1.0 + g0 * r_series)).clamp(lo, hi);
    for _ in 0..200 {
        let f = residual(v);
        if f == 0.0 {
            return Ok(v);
        }
        if (f > 0.0) == (f_lo > 0.0) {
            lo = v;
            f_lo = f;
        } else {
            hi = v;
        }
        let df = law.di_dv(v, x) + 1.0 / r_series;
        let newton = v - f / df;
        let next = if df > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - v).abs() <= 4.0 * f64::EPSILON * v.abs().max(1e-300) || hi - lo <= f64::EPSILON * hi.abs().max(lo.abs()) {
            return Ok(next);
        }
        v = next;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_node_satisfies_current_balance() {
        let p = MemristorParams {
            alpha: 0.3,
            beta: -2.0,
            gamma: 0.5,
            delta: 1.5,
            ..MemristorParams::default()
        };
        let law = Warm(&p);
        for &(v, x) in &[(1.3, 0.2), (-2.1, 0.8), (1e-7, 0.5), (4.9, 1.0)] {
            let vn = solve_series_node(&law, x, v, 1.7).unwrap();
            let balance = law.current(vn, x) - (v - vn) / 1.7;
            assert!(balance.abs() < 1e-12, "residual {balance}");
        }
    }

    #[test]
    fn resistance_partials_match_finite_differences() {
        let p = MemristorParams {
            alpha: 0.3,
            beta: -2.0,
            gamma: 0.5,
            delta: 1.5,
            ..MemristorParams::default()
        };
        let law = Warm(&p);
        let (v, x, h) = (0.4, 0.3, 1e-6);
        let (rv, rx) = law.resistance_partials(v, x).unwrap();
        let r = |v, x| law.resistance(v, x).unwrap();
        assert!((rv - (r(v + h, x) - r(v - h, x)) / (2.0 * h)).abs() < 1e-6);
        assert!((rx - (r(v, x + h) - r(v, x - h)) / (2.0 * h)).abs() < 1e-6);
        // The small-signal branch joins the ratio smoothly.
        let (rv0, rx0) = law.resistance_partials(0.0, x).unwrap();
        let (rv1, rx1) = law.resistance_partials(2e-6, x).unwrap();
        assert!((rv0 - rv1).abs() < 1e-4 * rv0.abs().max(1.0));
        assert!((rx0 - rx1).abs() < 1e-4 * rx0.abs().max(1.0));
    }
}
