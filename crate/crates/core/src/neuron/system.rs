//! Coupled ODE system shared by single-neuron and network integration.

use super::circuit::{kcl_residuals, neuron_rhs, CircuitParams, NeuronState};
use super::stimulus::StimulusSpec;
use super::Trajectory;
use crate::error::Result;
use crate::ode::{integrate, uniform_grid, OdeSystem, SolverConfig};

/// An incoming connection: `gain · v_o[source](t − delay)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Input {
    pub source: usize,
    pub gain: f64,
    pub delay: f64,
}

/// Accepted-step record of one neuron's output for delayed coupling.
#[derive(Debug, Default)]
struct History {
    t: Vec<f64>,
    v: Vec<f64>,
    dv: Vec<f64>,
}

impl History {
    fn at(&self, t: f64, initial: f64) -> f64 {
        if self.t.is_empty() || t <= self.t[0] {
            return initial;
        }
        let n = self.t.len();
        if t >= self.t[n - 1] {
            return self.v[n - 1] + (t - self.t[n - 1]) * self.dv[n - 1];
        }
        let k = self.t.partition_point(|&s| s <= t) - 1;
        let (t0, t1) = (self.t[k], self.t[k + 1]);
        let h = t1 - t0;
        let s = (t - t0) / h;
        let (h00, h10, h01, h11) = (
            (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s),
            s * (1.0 - s) * (1.0 - s),
            s * s * (3.0 - 2.0 * s),
            s * s * (s - 1.0),
        );
        h00 * self.v[k] + h10 * h * self.dv[k] + h01 * self.v[k + 1] + h11 * h * self.dv[k + 1]
    }
}

pub(crate) struct CoupledCircuits<'a> {
    pub circuits: Vec<&'a CircuitParams>,
    pub stimuli: Vec<&'a StimulusSpec>,
    pub inputs: Vec<Vec<Input>>,
    initial_v: Vec<f64>,
    history: Vec<History>,
    record: bool,
}

impl<'a> CoupledCircuits<'a> {
    pub fn new(
        circuits: Vec<&'a CircuitParams>,
        stimuli: Vec<&'a StimulusSpec>,
        inputs: Vec<Vec<Input>>,
        init: &[NeuronState],
    ) -> Self {
        let record = inputs.iter().flatten().any(|i| i.delay > 0.0);
        let n = circuits.len();
        CoupledCircuits {
            circuits,
            stimuli,
            inputs,
            initial_v: init.iter().map(|s| s.v).collect(),
            history: (0..n).map(|_| History::default()).collect(),
            record,
        }
    }

    fn drive(&self, j: usize, t: f64, y: &[f64]) -> f64 {
        let external = self.stimuli[j].value(t);
        let inputs = &self.inputs[j];
        if inputs.is_empty() {
            return external;
        }
        let mut terms: Vec<f64> = inputs
            .iter()
            .map(|i| {
                let v = if i.delay > 0.0 {
                    self.history[i.source].at(t - i.delay, self.initial_v[i.source])
                } else {
                    y[4 * i.source]
                };
                i.gain * v
            })
            .collect();
        // Summing in value order makes the result independent of labelling.
        terms.sort_by(f64::total_cmp);
        external + terms.iter().sum::<f64>()
    }

    /// Integrates from `t = 0` to `t_end`, sampling every
    /// `cfg.sample_interval`.
    pub fn run(mut self, init: &[NeuronState], t_end: f64, cfg: &SolverConfig) -> Result<Vec<Trajectory>> {
        let y0: Vec<f64> = init.iter().flat_map(|s| s.to_array()).collect();
        let grid = uniform_grid(0.0, t_end, cfg.sample_interval);
        let (ys, _) = integrate(&mut self, 0.0, &y0, t_end, &grid, cfg)?;
        let n = self.circuits.len();
        let mut out: Vec<Trajectory> = (0..n).map(|_| Trajectory::with_capacity(grid.len())).collect();
        for (&t, y) in grid.iter().zip(&ys) {
            for (j, traj) in out.iter_mut().enumerate() {
                let s = NeuronState::from_slice(&y[4 * j..4 * j + 4]);
                let drive = self.drive(j, t, y);
                let e = neuron_rhs(&s, t, drive, self.circuits[j])?;
                traj.push(t, &s, e.v_mem1, e.v_mem2, drive);
            }
        }
        Ok(out)
    }
}

impl OdeSystem for CoupledCircuits<'_> {
    fn dim(&self) -> usize {
        4 * self.circuits.len()
    }

    fn rhs(&self, t: f64, y: &[f64], dydt: &mut [f64]) -> Result<()> {
        for (j, c) in self.circuits.iter().enumerate() {
            let s = NeuronState::from_slice(&y[4 * j..4 * j + 4]);
            let e = neuron_rhs(&s, t, self.drive(j, t, y), c)?;
            dydt[4 * j..4 * j + 4].copy_from_slice(&e.derivative);
        }
        Ok(())
    }

    fn project(&self, y: &mut [f64]) -> bool {
        let mut changed = false;
        for (j, c) in self.circuits.iter().enumerate() {
            let b = 4 * j;
            let v = y[b].clamp(-c.v_sat, c.v_sat);
            let x1 = y[b + 2].clamp(0.0, 1.0);
            let x2 = y[b + 3].clamp(0.0, 1.0);
            changed |= v != y[b] || x1 != y[b + 2] || x2 != y[b + 3];
            y[b] = v;
            y[b + 2] = x1;
            y[b + 3] = x2;
        }
        changed
    }

    fn accept(&mut self, t: f64, y: &[f64], dydt: &[f64]) {
        if !self.record {
            return;
        }
        for (j, h) in self.history.iter_mut().enumerate() {
            h.t.push(t);
            h.v.push(y[4 * j]);
            h.dv.push(dydt[4 * j]);
        }
    }

    fn step_limit(&self) -> f64 {
        self.inputs
            .iter()
            .flatten()
            .filter(|i| i.delay > 0.0)
            .map(|i| i.delay)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Largest KCL residual (mA) over the recorded samples of a trajectory.
pub fn max_kcl_residual(traj: &Trajectory, c: &CircuitParams) -> f64 {
    (0..traj.t.len())
        .map(|k| {
            let (a, b) = kcl_residuals(traj.v_o[k], traj.x1[k], traj.x2[k], traj.v_mem1[k], traj.v_mem2[k], c);
            a.abs().max(b.abs())
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_history_is_exact_for_cubics() {
        let f = |t: f64| 0.5 * t * t * t - t * t + 2.0;
        let df = |t: f64| 1.5 * t * t - 2.0 * t;
        let mut h = History::default();
        for t in [0.0, 0.4, 1.1, 2.0] {
            h.t.push(t);
            h.v.push(f(t));
            h.dv.push(df(t));
        }
        for t in [0.1, 0.75, 1.9] {
            assert!((h.at(t, 0.0) - f(t)).abs() < 1e-12);
        }
        assert_eq!(h.at(-1.0, 7.0), 7.0);
    }
}
