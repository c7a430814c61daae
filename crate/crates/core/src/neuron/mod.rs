//! Single artificial-neuron oscillator.

mod circuit;
mod stimulus;
pub(crate) mod system;

use std::path::Path;

use serde::{Deserialize, Serialize};

pub use circuit::{
    kcl_residuals, neuron_rhs, node_voltages, CircuitParams, ForcingMode, NeuronEval, NeuronState,
    Regime,
};
pub use stimulus::{render_stimulus, StimulusSpec};
pub use system::max_kcl_residual;

use crate::error::{require_positive, Result};
use crate::ode::SolverConfig;
use system::CoupledCircuits;

/// Uniformly sampled output of one neuron. Times in μs, voltages in V.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub t: Vec<f64>,
    pub v_o: Vec<f64>,
    /// `dv_o/dt` (V/μs); not part of the CSV export.
    pub u: Vec<f64>,
    pub x1: Vec<f64>,
    pub x2: Vec<f64>,
    pub v_mem1: Vec<f64>,
    pub v_mem2: Vec<f64>,
    /// Total drive applied (external stimulus plus coupling).
    pub stim: Vec<f64>,
}

pub const TRAJECTORY_HEADER: [&str; 7] = ["t_us", "v_o", "x1", "x2", "V_mem1", "V_mem2", "stim"];

impl Trajectory {
    pub(crate) fn with_capacity(n: usize) -> Self {
        let v = || Vec::with_capacity(n);
        Trajectory {
            t: v(),
            v_o: v(),
            u: v(),
            x1: v(),
            x2: v(),
            v_mem1: v(),
            v_mem2: v(),
            stim: v(),
        }
    }

    pub(crate) fn push(&mut self, t: f64, s: &NeuronState, v_mem1: f64, v_mem2: f64, stim: f64) {
        self.t.push(t);
        self.v_o.push(s.v);
        self.u.push(s.u);
        self.x1.push(s.x1);
        self.x2.push(s.x2);
        self.v_mem1.push(v_mem1);
        self.v_mem2.push(v_mem2);
        self.stim.push(stim);
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// Sample spacing in μs.
    pub fn dt(&self) -> f64 {
        if self.t.len() < 2 {
            0.0
        } else {
            self.t[1] - self.t[0]
        }
    }

    /// The CSV columns other than time, in header order.
    pub fn columns(&self) -> [&[f64]; 6] {
        [&self.v_o, &self.x1, &self.x2, &self.v_mem1, &self.v_mem2, &self.stim]
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let cols = self.columns();
        let rows = (0..self.len()).map(|k| {
            let mut r = Vec::with_capacity(7);
            r.push(self.t[k]);
            r.extend(cols.iter().map(|c| c[k]));
            r
        });
        crate::io::write_csv(path, &TRAJECTORY_HEADER, rows)
    }
}

/// Integrates one neuron from `t = 0` to `t_end` (μs).
pub fn integrate_neuron(
    c: &CircuitParams,
    stim: &StimulusSpec,
    t_end: f64,
    cfg: &SolverConfig,
    init: &NeuronState,
) -> Result<Trajectory> {
    c.validate("circuit")?;
    stim.validate("stimulus")?;
    init.validate("init")?;
    require_positive("t_end", t_end)?;
    let sys = CoupledCircuits::new(vec![c], vec![stim], vec![Vec::new()], std::slice::from_ref(init));
    let mut out = sys.run(std::slice::from_ref(init), t_end, cfg)?;
    Ok(out.remove(0))
}

/// A complete single-neuron run description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NeuronDeck {
    pub circuit: CircuitParams,
    pub stimulus: StimulusSpec,
    pub init: NeuronState,
    pub solver: SolverConfig,
    /// Run length in μs.
    pub t_end: f64,
}

impl Default for NeuronDeck {
    fn default() -> Self {
        crate::decks::spiking_deck()
    }
}

impl NeuronDeck {
    pub fn validate(&self) -> Result<()> {
        self.circuit.validate("circuit")?;
        self.stimulus.validate("stimulus")?;
        self.init.validate("init")?;
        self.solver.validate()?;
        require_positive("t_end", self.t_end)
    }

    pub fn run(&self) -> Result<Trajectory> {
        integrate_neuron(&self.circuit, &self.stimulus, self.t_end, &self.solver, &self.init)
    }
}
