//! Driven Jaynes–Cummings model with Lindblad damping.
//!
//! Units: ħ = 1; energies and rates in units of the coupling `g` (default
//! 1), times in `1/g`.

mod correlation;
mod ops;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use nalgebra::SymmetricEigen;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use correlation::{correlation_g1, correlation_g2, correlation_origin, CorrelationSeries};
pub use ops::{
    annihilation, build_operators, coherent_dm, drive_amplitude, fock_dm, ground_state, hamiltonian, kron,
    lindblad_rhs, projector, thermal_dm, trace_product, with_ground_qubit, CMatrix, Liouvillian, Operators,
};

use crate::error::{require_non_negative, require_positive, Error, Result};
use crate::ode::{integrate, uniform_grid, OdeSystem, SolverConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecayChannel {
    CavityA,
    QubitSigma,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Decay {
    pub operator: DecayChannel,
    pub rate: f64,
}

/// Model and run parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QmeSpec {
    pub g: f64,
    /// Drive intensity `A`.
    #[serde(rename = "A")]
    pub a_drive: f64,
    /// Drive time scale `e` in `sin((t/e)²)`.
    pub e: f64,
    /// Cavity truncation (total dimension `2N`).
    #[serde(rename = "N")]
    pub n_levels: usize,
    pub decay_rates: Vec<Decay>,
    pub t_end: f64,
    pub sample_interval: f64,
    /// Smallest cavity population accepted as a correlation origin.
    pub pop_floor: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_step: f64,
}

impl Default for QmeSpec {
    fn default() -> Self {
        QmeSpec {
            g: 1.0,
            a_drive: 10.0,
            e: 4.0,
            n_levels: 4,
            decay_rates: vec![
                Decay {
                    operator: DecayChannel::CavityA,
                    rate: 0.15,
                },
                Decay {
                    operator: DecayChannel::QubitSigma,
                    rate: 0.15,
                },
            ],
            t_end: 4.0,
            sample_interval: 0.05,
            pop_floor: 1e-3,
            abs_tol: 1e-11,
            rel_tol: 1e-10,
            max_step: 0.05,
        }
    }
}

impl QmeSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_levels < 2 {
            return Err(Error::invalid("N", "cavity truncation must be at least 2"));
        }
        crate::error::require_finite("g", self.g)?;
        crate::error::require_finite("A", self.a_drive)?;
        require_positive("e", self.e)?;
        for (k, d) in self.decay_rates.iter().enumerate() {
            require_non_negative(&format!("decay_rates[{k}].rate"), d.rate)?;
        }
        require_positive("t_end", self.t_end)?;
        require_positive("sample_interval", self.sample_interval)?;
        require_positive("pop_floor", self.pop_floor)?;
        self.solver().validate()
    }

    /// Same spec with every decay channel set to `rate`.
    pub fn with_decay(mut self, rate: f64) -> Self {
        for d in &mut self.decay_rates {
            d.rate = rate;
        }
        self
    }

    pub fn solver(&self) -> SolverConfig {
        SolverConfig {
            abs_tol: self.abs_tol,
            rel_tol: self.rel_tol,
            max_step: self.max_step,
            sample_interval: self.sample_interval,
            max_steps: 10_000_000,
        }
    }

    /// Output times `0, Δt, …, t_end`.
    pub fn t_grid(&self) -> Vec<f64> {
        uniform_grid(0.0, self.t_end, self.sample_interval)
    }
}

/// Tolerances on the density-matrix invariants.
pub const TRACE_TOL: f64 = 1e-8;
pub const HERMITICITY_TOL: f64 = 1e-8;
pub const POSITIVITY_TOL: f64 = 1e-7;

/// Measured departure of a matrix from being a density matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Invariants {
    pub trace_error: f64,
    pub hermiticity_error: f64,
    pub min_eigenvalue: f64,
}

impl Invariants {
    pub fn of(rho: &CMatrix) -> Self {
        let trace_error = (rho.trace() - Complex64::from(1.0)).norm();
        let adj = rho.adjoint();
        let hermiticity_error = rho.iter().zip(adj.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        let hermitian_part = (rho + adj) * Complex64::from(0.5);
        let min_eigenvalue = SymmetricEigen::new(hermitian_part).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        Invariants {
            trace_error,
            hermiticity_error,
            min_eigenvalue,
        }
    }

    pub fn check(&self, t: f64) -> Result<()> {
        if !(self.trace_error < TRACE_TOL) {
            return Err(Error::numerical(t, format!("trace drifted by {:.3e}", self.trace_error)));
        }
        if !(self.hermiticity_error < HERMITICITY_TOL) {
            return Err(Error::numerical(t, format!("hermiticity lost ({:.3e})", self.hermiticity_error)));
        }
        if !(self.min_eigenvalue > -POSITIVITY_TOL) {
            return Err(Error::numerical(t, format!("negative eigenvalue {:.3e}", self.min_eigenvalue)));
        }
        Ok(())
    }
}

/// Several matrices evolved side by side under the same Liouvillian.
pub(crate) struct MatrixFlow {
    pub liouvillian: Liouvillian,
    pub dim: usize,
    pub count: usize,
}

pub(crate) fn flatten(ms: &[&CMatrix]) -> Vec<f64> {
    ms.iter().flat_map(|m| m.iter().flat_map(|z| [z.re, z.im])).collect()
}

pub(crate) fn unflatten(y: &[f64], dim: usize, k: usize) -> CMatrix {
    let block = &y[2 * dim * dim * k..2 * dim * dim * (k + 1)];
    CMatrix::from_iterator(dim, dim, block.chunks_exact(2).map(|c| Complex64::new(c[0], c[1])))
}

impl OdeSystem for MatrixFlow {
    fn dim(&self) -> usize {
        2 * self.dim * self.dim * self.count
    }

    fn rhs(&self, t: f64, y: &[f64], dydt: &mut [f64]) -> Result<()> {
        let h = self.liouvillian.hamiltonian(t);
        let block = 2 * self.dim * self.dim;
        for k in 0..self.count {
            let m = unflatten(y, self.dim, k);
            let d = self.liouvillian.apply_with(&h, &m);
            for (slot, z) in dydt[block * k..block * (k + 1)].chunks_exact_mut(2).zip(d.iter()) {
                slot[0] = z.re;
                slot[1] = z.im;
            }
        }
        Ok(())
    }
}

/// Integrates the stacked matrices `init` from `t0` and returns their values
/// at each time in `samples`.
pub(crate) fn propagate(spec: &QmeSpec, init: &[&CMatrix], t0: f64, samples: &[f64]) -> Result<Vec<Vec<CMatrix>>> {
    let liouvillian = Liouvillian::new(spec);
    let dim = liouvillian.ops.dim();
    for m in init {
        if m.nrows() != dim || m.ncols() != dim {
            return Err(Error::invalid("rho0", format!("expected a {dim}×{dim} matrix")));
        }
    }
    let t_end = *samples.last().unwrap_or(&t0);
    if t_end <= t0 {
        return Ok(vec![init.iter().map(|m| (*m).clone()).collect(); samples.len()]);
    }
    let mut sys = MatrixFlow {
        liouvillian,
        dim,
        count: init.len(),
    };
    let (ys, _) = integrate(&mut sys, t0, &flatten(init), t_end, samples, &spec.solver())?;
    Ok(ys.iter().map(|y| (0..init.len()).map(|k| unflatten(y, dim, k)).collect()).collect())
}

/// Result of [`evolve`].
#[derive(Debug, Clone)]
pub struct Evolution {
    pub t: Vec<f64>,
    pub states: Vec<CMatrix>,
    /// `⟨a†a⟩`.
    pub n_cavity: Vec<f64>,
    /// `⟨σ†σ⟩`.
    pub n_qubit: Vec<f64>,
    /// Worst invariant values seen over the run.
    pub worst: Invariants,
}

impl Evolution {
    pub fn max_cavity_population(&self) -> f64 {
        self.n_cavity.iter().copied().fold(f64::MIN, f64::max)
    }

    /// Writes `t,n_cavity,n_qubit`.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let rows = (0..self.t.len()).map(|k| [self.t[k], self.n_cavity[k], self.n_qubit[k]]);
        crate::io::write_csv(path, &["t", "n_cavity", "n_qubit"], rows)
    }
}

/// `Re Tr(a†·(a·ρ))`, evaluated the same way as the correlation numerators.
pub fn cavity_population(ops: &Operators, rho: &CMatrix) -> f64 {
    trace_product(&ops.a_dag, &(&ops.a * rho)).re
}

pub fn qubit_population(ops: &Operators, rho: &CMatrix) -> f64 {
    trace_product(&ops.sigma_dag, &(&ops.sigma * rho)).re
}

/// Evolves `rho0` from `t = 0` over `spec.t_grid()`, checking the density
/// matrix invariants at every output time.
pub fn evolve(rho0: &CMatrix, spec: &QmeSpec) -> Result<Evolution> {
    spec.validate()?;
    let ops = build_operators(spec.n_levels);
    Invariants::of(rho0).check(0.0).map_err(|e| match e {
        Error::Numerical { reason, .. } => Error::invalid("rho0", reason),
        other => other,
    })?;
    let t = spec.t_grid();
    let states: Vec<CMatrix> = propagate(spec, &[rho0], 0.0, &t)?.into_iter().map(|mut v| v.remove(0)).collect();
    let mut worst = Invariants {
        trace_error: 0.0,
        hermiticity_error: 0.0,
        min_eigenvalue: f64::INFINITY,
    };
    for (tk, rho) in t.iter().zip(&states) {
        let inv = Invariants::of(rho);
        inv.check(*tk)?;
        worst.trace_error = worst.trace_error.max(inv.trace_error);
        worst.hermiticity_error = worst.hermiticity_error.max(inv.hermiticity_error);
        worst.min_eigenvalue = worst.min_eigenvalue.min(inv.min_eigenvalue);
    }
    Ok(Evolution {
        n_cavity: states.iter().map(|r| cavity_population(&ops, r)).collect(),
        n_qubit: states.iter().map(|r| qubit_population(&ops, r)).collect(),
        t,
        states,
        worst,
    })
}

/// Writes `ρ` as a header (`dim`, `t`) followed by `dim` rows of
/// `re,im` pairs in row-major order.
pub fn write_density_matrix(path: &Path, rho: &CMatrix, t: f64) -> Result<()> {
    let name = path.display().to_string();
    let file = File::create(path).map_err(|e| Error::io(&name, e))?;
    let mut w = BufWriter::new(file);
    let emit = |w: &mut BufWriter<File>| -> std::io::Result<()> {
        writeln!(w, "# dim={} t={}", rho.nrows(), t)?;
        for i in 0..rho.nrows() {
            let row: Vec<String> = (0..rho.ncols()).map(|j| format!("{},{}", rho[(i, j)].re, rho[(i, j)].im)).collect();
            writeln!(w, "{}", row.join(","))?;
        }
        w.flush()
    };
    emit(&mut w).map_err(|e| Error::io(&name, e))
}
