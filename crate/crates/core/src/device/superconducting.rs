//! Cryogenic (superconducting-electrode) conduction law.
//!
//! A smooth static IV with three ingredients: a steep supercurrent-like
//! branch saturating at `±I_c·(1 − κx)`, a subgap conductance below the sum
//! gap `Δ`, and a quasiparticle branch of conductance `G_qp` above it. The
//! memory state only shifts the effective critical current.

use serde::{Deserialize, Serialize};

use super::Conduction;
use crate::error::{require_non_negative, require_positive, Error, Result};
use crate::numerics::{logistic, softplus};

/// Parameters of [`sc_current`]. Voltages in mV, currents in mA,
/// conductances in mA/mV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SuperconductingParams {
    pub critical_current: f64,
    pub sum_gap: f64,
    pub quasiparticle_conductance: f64,
    pub subgap_conductance: f64,
    pub gap_smoothing: f64,
    /// Fractional suppression of the critical current at `x = 1`.
    pub kappa: f64,
    /// Voltage scale of the supercurrent rise.
    pub junction_voltage: f64,
}

impl Default for SuperconductingParams {
    fn default() -> Self {
        SuperconductingParams {
            critical_current: 0.05,
            sum_gap: 0.31,
            quasiparticle_conductance: 1e-3,
            subgap_conductance: 1e-4,
            gap_smoothing: 0.02,
            kappa: 0.5,
            junction_voltage: 0.005,
        }
    }
}

impl SuperconductingParams {
    pub fn validate(&self, prefix: &str) -> Result<()> {
        let f = |name: &str| format!("{prefix}.{name}");
        require_positive(&f("critical_current"), self.critical_current)?;
        require_positive(&f("sum_gap"), self.sum_gap)?;
        require_positive(&f("quasiparticle_conductance"), self.quasiparticle_conductance)?;
        require_non_negative(&f("subgap_conductance"), self.subgap_conductance)?;
        require_positive(&f("gap_smoothing"), self.gap_smoothing)?;
        require_positive(&f("junction_voltage"), self.junction_voltage)?;
        if self.subgap_conductance > self.quasiparticle_conductance {
            return Err(Error::invalid(
                f("subgap_conductance"),
                "must not exceed quasiparticle_conductance",
            ));
        }
        if !(0.0..1.0).contains(&self.kappa) {
            return Err(Error::invalid(f("kappa"), "must lie in [0, 1)"));
        }
        Ok(())
    }
}

const MV_PER_V: f64 = 1000.0;

/// Junction current in mA at bias `v` (volts) and memory state `x`.
pub fn sc_current(v: f64, x: f64, p: &SuperconductingParams) -> f64 {
    let vm = v * MV_PER_V;
    let w = p.gap_smoothing;
    let ic = p.critical_current * (1.0 - p.kappa * x);
    ic * (vm / p.junction_voltage).tanh()
        + p.subgap_conductance * vm
        + (p.quasiparticle_conductance - p.subgap_conductance)
            * w
            * (softplus((vm - p.sum_gap) / w) - softplus((-vm - p.sum_gap) / w))
}

/// [`Conduction`] view of [`sc_current`].
#[derive(Debug, Clone, Copy)]
pub struct Superconducting<'a>(pub &'a SuperconductingParams);

impl Conduction for Superconducting<'_> {
    fn current(&self, v: f64, x: f64) -> f64 {
        sc_current(v, x, self.0)
    }

    fn di_dv(&self, v: f64, x: f64) -> f64 {
        let p = self.0;
        let vm = v * MV_PER_V;
        let w = p.gap_smoothing;
        let ic = p.critical_current * (1.0 - p.kappa * x);
        let sech2 = 1.0 / (vm / p.junction_voltage).cosh().powi(2);
        let dvm = ic * sech2 / p.junction_voltage
            + p.subgap_conductance
            + (p.quasiparticle_conductance - p.subgap_conductance)
                * (logistic((vm - p.sum_gap) / w) + logistic((-vm - p.sum_gap) / w));
        dvm * MV_PER_V
    }

    fn di_dx(&self, v: f64, _x: f64) -> f64 {
        let p = self.0;
        -p.critical_current * p.kappa * (v * MV_PER_V / p.junction_voltage).tanh()
    }

    fn d2i_dv2_at_zero(&self, _x: f64) -> f64 {
        0.0
    }

    fn dg0_dx(&self, _x: f64) -> f64 {
        let p = self.0;
        -p.critical_current * p.kappa / p.junction_voltage * MV_PER_V
    }
}
