//! Networks of neurons coupled through their input branches.
//!
//! Neuron `j` is driven by its external stimulus plus
//! `Σ gain · v_o[i](t − delay)` over its incoming edges. Weakly connected
//! components are integrated independently, so uncoupled neurons reproduce
//! their standalone runs exactly.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{require_finite, require_non_negative, require_positive, Error, Result};
use crate::neuron::system::{CoupledCircuits, Input};
use crate::neuron::{CircuitParams, NeuronState, Regime, StimulusSpec, Trajectory, TRAJECTORY_HEADER};
use crate::ode::SolverConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub gain: f64,
    /// Transmission delay in μs.
    #[serde(default)]
    pub delay: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeStimulus {
    pub neuron: usize,
    pub stimulus: StimulusSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct NetworkSpec {
    pub neurons: Vec<CircuitParams>,
    pub edges: Vec<Edge>,
    pub stimuli: Vec<NodeStimulus>,
    /// Initial states; missing entries use [`NeuronState::default`].
    pub init: Vec<NeuronState>,
}

impl NetworkSpec {
    pub fn validate(&self) -> Result<()> {
        let n = self.neurons.len();
        if n == 0 {
            return Err(Error::invalid("neurons", "network has no neurons"));
        }
        for (k, c) in self.neurons.iter().enumerate() {
            c.validate(&format!("neurons[{k}]"))?;
        }
        for (k, e) in self.edges.iter().enumerate() {
            if e.from >= n || e.to >= n {
                return Err(Error::invalid(format!("edges[{k}]"), format!("node index out of range (n = {n})")));
            }
            require_finite(&format!("edges[{k}].gain"), e.gain)?;
            require_non_negative(&format!("edges[{k}].delay"), e.delay)?;
        }
        for (k, s) in self.stimuli.iter().enumerate() {
            if s.neuron >= n {
                return Err(Error::invalid(format!("stimuli[{k}].neuron"), format!("out of range (n = {n})")));
            }
            s.stimulus.validate(&format!("stimuli[{k}].stimulus"))?;
        }
        if self.init.len() > n {
            return Err(Error::invalid("init", "more initial states than neurons"));
        }
        for (k, s) in self.init.iter().enumerate() {
            s.validate(&format!("init[{k}]"))?;
        }
        Ok(())
    }

    pub fn initial_state(&self, j: usize) -> NeuronState {
        self.init.get(j).copied().unwrap_or_default()
    }

    /// External drive of neuron `j`; several entries for one neuron add up.
    pub fn stimulus(&self, j: usize) -> StimulusSpec {
        let mut parts: Vec<StimulusSpec> =
            self.stimuli.iter().filter(|s| s.neuron == j).map(|s| s.stimulus.clone()).collect();
        match parts.len() {
            0 => StimulusSpec::dc(0.0),
            1 => parts.remove(0),
            _ => StimulusSpec::Sum { components: parts },
        }
    }

    /// Relabels neurons so that old index `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.neurons.len();
        let mut neurons = vec![CircuitParams::default(); n];
        let mut init = vec![NeuronState::default(); n];
        for i in 0..n {
            neurons[perm[i]] = self.neurons[i].clone();
            init[perm[i]] = self.initial_state(i);
        }
        NetworkSpec {
            neurons,
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    from: perm[e.from],
                    to: perm[e.to],
                    ..e.clone()
                })
                .collect(),
            stimuli: self
                .stimuli
                .iter()
                .map(|s| NodeStimulus {
                    neuron: perm[s.neuron],
                    stimulus: s.stimulus.clone(),
                })
                .collect(),
            init,
        }
    }

    /// Groups of neurons linked by non-zero-gain edges, each sorted, in
    /// order of their smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.neurons.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for e in self.edges.iter().filter(|e| e.gain != 0.0) {
            let (a, b) = (find(&mut parent, e.from), find(&mut parent, e.to));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for i in 0..n {
            let r = find(&mut parent, i);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(i);
        }
        groups
    }
}

/// Uniformly sampled output of every neuron in a network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkTrajectory {
    pub t: Vec<f64>,
    pub neurons: Vec<Trajectory>,
}

impl NetworkTrajectory {
    pub fn header(&self) -> Vec<String> {
        let mut h = vec!["t_us".to_string()];
        for j in 0..self.neurons.len() {
            h.extend(TRAJECTORY_HEADER[1..].iter().map(|c| format!("n{j}_{c}")));
        }
        h
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let header = self.header();
        let header: Vec<&str> = header.iter().map(String::as_str).collect();
        let rows = (0..self.t.len()).map(|k| {
            let mut r = vec![self.t[k]];
            for n in &self.neurons {
                r.extend(n.columns().iter().map(|c| c[k]));
            }
            r
        });
        crate::io::write_csv(path, &header, rows)
    }
}

/// Integrates every neuron of `spec` from `t = 0` to `t_end` (μs).
pub fn integrate_network(spec: &NetworkSpec, t_end: f64, cfg: &SolverConfig) -> Result<NetworkTrajectory> {
    spec.validate()?;
    cfg.validate()?;
    require_positive("t_end", t_end)?;
    let n = spec.neurons.len();
    let stimuli: Vec<StimulusSpec> = (0..n).map(|j| spec.stimulus(j)).collect();
    let mut results: Vec<Option<Trajectory>> = vec![None; n];
    for group in spec.components() {
        let mut local = vec![usize::MAX; n];
        for (k, &g) in group.iter().enumerate() {
            local[g] = k;
        }
        let mut inputs: Vec<Vec<Input>> = vec![Vec::new(); group.len()];
        for e in spec.edges.iter().filter(|e| e.gain != 0.0 && local[e.to] != usize::MAX) {
            inputs[local[e.to]].push(Input {
                source: local[e.from],
                gain: e.gain,
                delay: e.delay,
            });
        }
        let init: Vec<NeuronState> = group.iter().map(|&g| spec.initial_state(g)).collect();
        let sys = CoupledCircuits::new(
            group.iter().map(|&g| &spec.neurons[g]).collect(),
            group.iter().map(|&g| &stimuli[g]).collect(),
            inputs,
            &init,
        );
        for (traj, &g) in sys.run(&init, t_end, cfg)?.into_iter().zip(&group) {
            results[g] = Some(traj);
        }
    }
    let neurons: Vec<Trajectory> = results.into_iter().map(|t| t.expect("every neuron is in a component")).collect();
    Ok(NetworkTrajectory {
        t: neurons[0].t.clone(),
        neurons,
    })
}

/// `n` copies of `deck` coupled in a directed cycle `i → i+1 (mod n)`.
pub fn build_ring(n: usize, gain: f64, deck: &CircuitParams) -> Result<NetworkSpec> {
    if n < 2 {
        return Err(Error::invalid("n", "a ring needs at least 2 neurons"));
    }
    Ok(NetworkSpec {
        neurons: vec![deck.clone(); n],
        edges: (0..n)
            .map(|i| Edge {
                from: i,
                to: (i + 1) % n,
                gain,
                delay: 0.0,
            })
            .collect(),
        ..NetworkSpec::default()
    })
}

/// `rows × cols` copies of `deck` with symmetric nearest-neighbour coupling.
/// Neuron `(r, c)` has index `r·cols + c`.
pub fn build_grid(rows: usize, cols: usize, gain: f64, deck: &CircuitParams) -> Result<NetworkSpec> {
    if rows == 0 || cols == 0 {
        return Err(Error::invalid("grid", "rows and cols must be positive"));
    }
    let mut edges = Vec::new();
    let idx = |r: usize, c: usize| r * cols + c;
    for r in 0..rows {
        for c in 0..cols {
            let mut link = |a: usize, b: usize| {
                for (from, to) in [(a, b), (b, a)] {
                    edges.push(Edge {
                        from,
                        to,
                        gain,
                        delay: 0.0,
                    });
                }
            };
            if c + 1 < cols {
                link(idx(r, c), idx(r, c + 1));
            }
            if r + 1 < rows {
                link(idx(r, c), idx(r + 1, c));
            }
        }
    }
    Ok(NetworkSpec {
        neurons: vec![deck.clone(); rows * cols],
        edges,
        ..NetworkSpec::default()
    })
}

/// A warm neuron (index 0) and a cryogenic neuron (index 1) coupled both
/// ways with the same gain.
pub fn hybrid_pair(warm: &CircuitParams, cryo: &CircuitParams, gain: f64) -> Result<NetworkSpec> {
    let sc = |r: &Regime| matches!(r, Regime::Superconducting(_));
    if !(sc(&cryo.regime1) && sc(&cryo.regime2)) {
        return Err(Error::invalid("cryo", "both memristors must use the superconducting regime"));
    }
    Ok(NetworkSpec {
        neurons: vec![warm.clone(), cryo.clone()],
        edges: vec![
            Edge {
                from: 0,
                to: 1,
                gain,
                delay: 0.0,
            },
            Edge {
                from: 1,
                to: 0,
                gain,
                delay: 0.0,
            },
        ],
        ..NetworkSpec::default()
    })
}

/// A complete network run description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct NetworkDeck {
    pub network: NetworkSpec,
    pub solver: SolverConfig,
    pub t_end: f64,
}

impl NetworkDeck {
    pub fn validate(&self) -> Result<()> {
        self.network.validate()?;
        self.solver.validate()?;
        require_positive("t_end", self.t_end)
    }

    pub fn run(&self) -> Result<NetworkTrajectory> {
        integrate_network(&self.network, self.t_end, &self.solver)
    }
}
