//! The oscillator equation with time-varying memristances.
//!
//! Second-order output dynamics
//!
//! ```text
//! v'' + a·v' + b·v = forcing
//! a = (R₂/R₃ + C₁/C₂ + Ṙ₂·C₁ + R₁/R₄) / (R₂·C₁)
//! b = (1/(R₃·C₂) + Ṙ₂/R₃) / (R₂·C₁)
//! ```
//!
//! are reduced to first order with `u = v'` and coupled to one state equation
//! per memristor. `R₁`, `R₂` are the memristances of the devices in series
//! with `R₄` and `R₃`; each device's voltage solves the series divider
//! `I(V, x) = (v − V)/R`.
//!
//! Amplitude is limited by a smooth rail: `dv/dt = u·(1 − (v/V_sat)²)`.

use serde::{Deserialize, Serialize};

use crate::device::{
    solve_series_node, state_derivative, Conduction, MemristorParams, Superconducting,
    SuperconductingParams, Warm,
};
use crate::error::{require_positive, Error, Result};

/// Conduction law used by one memristor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Regime {
    #[default]
    Warm,
    Superconducting(SuperconductingParams),
}

/// How the external drive enters the output equation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ForcingMode {
    /// `s / (R₃C₂ · R₂C₁)`: drive through the input branch.
    #[default]
    InputBranch,
    /// `scale · s` added to `du/dt` (scale in 1/μs²).
    Direct { scale: f64 },
}

/// Component values of one neuron. Resistances in kΩ, capacitances in nF,
/// voltages in V.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CircuitParams {
    #[serde(rename = "R3")]
    pub r3: f64,
    #[serde(rename = "R4")]
    pub r4: f64,
    #[serde(rename = "C1")]
    pub c1: f64,
    #[serde(rename = "C2")]
    pub c2: f64,
    pub v_sat: f64,
    pub mem1: MemristorParams,
    pub mem2: MemristorParams,
    pub regime1: Regime,
    pub regime2: Regime,
    pub forcing: ForcingMode,
}

impl Default for CircuitParams {
    fn default() -> Self {
        crate::decks::spiking()
    }
}

impl CircuitParams {
    pub fn validate(&self, prefix: &str) -> Result<()> {
        let f = |name: &str| {
            if prefix.is_empty() {
                name.to_string()
            } else {
                format!("{prefix}.{name}")
            }
        };
        require_positive(&f("R3"), self.r3)?;
        require_positive(&f("R4"), self.r4)?;
        require_positive(&f("C1"), self.c1)?;
        require_positive(&f("C2"), self.c2)?;
        require_positive(&f("v_sat"), self.v_sat)?;
        self.mem1.validate(&f("mem1"))?;
        self.mem2.validate(&f("mem2"))?;
        for (name, regime) in [("regime1", &self.regime1), ("regime2", &self.regime2)] {
            if let Regime::Superconducting(p) = regime {
                p.validate(&f(name))?;
            }
        }
        if let ForcingMode::Direct { scale } = self.forcing {
            crate::error::require_finite(&f("forcing.scale"), scale)?;
        }
        Ok(())
    }

    /// Same circuit with every time constant multiplied by `k`: capacitances
    /// and retention times scale by `k`, drive prefactors by `1/k`.
    pub fn time_scaled(&self, k: f64) -> Self {
        let scale_mem = |m: &MemristorParams| MemristorParams {
            tau: m.tau * k,
            eta1: m.eta1 / k,
            ..m.clone()
        };
        CircuitParams {
            c1: self.c1 * k,
            c2: self.c2 * k,
            mem1: scale_mem(&self.mem1),
            mem2: scale_mem(&self.mem2),
            forcing: match self.forcing {
                ForcingMode::Direct { scale } => ForcingMode::Direct { scale: scale / (k * k) },
                ForcingMode::InputBranch => ForcingMode::InputBranch,
            },
            ..self.clone()
        }
    }

    /// Same circuit with both memristor states frozen.
    pub fn frozen(&self) -> Self {
        let mut c = self.clone();
        c.mem1.lambda = 0.0;
        c.mem2.lambda = 0.0;
        c
    }
}

/// Dynamical state of one neuron.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NeuronState {
    /// Output voltage `v_o` (V).
    pub v: f64,
    /// `dv_o/dt` (V/μs).
    pub u: f64,
    pub x1: f64,
    pub x2: f64,
}

impl Default for NeuronState {
    fn default() -> Self {
        NeuronState {
            v: 1e-3,
            u: 0.0,
            x1: 0.1,
            x2: 0.1,
        }
    }
}

impl NeuronState {
    pub fn to_array(self) -> [f64; 4] {
        [self.v, self.u, self.x1, self.x2]
    }

    pub fn from_slice(y: &[f64]) -> Self {
        NeuronState {
            v: y[0],
            u: y[1],
            x1: y[2],
            x2: y[3],
        }
    }

    pub fn validate(&self, prefix: &str) -> Result<()> {
        for (name, x) in [("x1", self.x1), ("x2", self.x2)] {
            if !(0.0..=1.0).contains(&x) {
                return Err(Error::invalid(format!("{prefix}.{name}"), "must lie in [0, 1]"));
            }
        }
        crate::error::require_finite(&format!("{prefix}.v"), self.v)?;
        crate::error::require_finite(&format!("{prefix}.u"), self.u)
    }
}

/// Everything computed while evaluating the right-hand side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeuronEval {
    /// `(dv/dt, du/dt, dx1/dt, dx2/dt)`.
    pub derivative: [f64; 4],
    pub v_mem1: f64,
    pub v_mem2: f64,
    /// Memristances (kΩ).
    pub r1: f64,
    pub r2: f64,
    /// `dR₂/dt` (kΩ/μs).
    pub rdot2: f64,
    /// Damping and stiffness coefficients of the output equation.
    pub damping: f64,
    pub stiffness: f64,
}

fn law<'a>(regime: &'a Regime, m: &'a MemristorParams) -> Law<'a> {
    match regime {
        Regime::Warm => Law::Warm(Warm(m)),
        Regime::Superconducting(p) => Law::Sc(Superconducting(p)),
    }
}

enum Law<'a> {
    Warm(Warm<'a>),
    Sc(Superconducting<'a>),
}

impl Conduction for Law<'_> {
    fn current(&self, v: f64, x: f64) -> f64 {
        match self {
            Law::Warm(l) => l.current(v, x),
            Law::Sc(l) => l.current(v, x),
        }
    }
    fn di_dv(&self, v: f64, x: f64) -> f64 {
        match self {
            Law::Warm(l) => l.di_dv(v, x),
            Law::Sc(l) => l.di_dv(v, x),
        }
    }
    fn di_dx(&self, v: f64, x: f64) -> f64 {
        match self {
            Law::Warm(l) => l.di_dx(v, x),
            Law::Sc(l) => l.di_dx(v, x),
        }
    }
    fn d2i_dv2_at_zero(&self, x: f64) -> f64 {
        match self {
            Law::Warm(l) => l.d2i_dv2_at_zero(x),
            Law::Sc(l) => l.d2i_dv2_at_zero(x),
        }
    }
    fn dg0_dx(&self, x: f64) -> f64 {
        match self {
            Law::Warm(l) => l.dg0_dx(x),
            Law::Sc(l) => l.dg0_dx(x),
        }
    }
}

fn clamp_unit(x: f64) -> f64 {
    x.clamp(0.0, 1.0)
}

/// State rate with the boundary of `[0, 1]` made absorbing for outward flow.
fn bounded_rate(rate: f64, x: f64) -> f64 {
    if (x <= 0.0 && rate < 0.0) || (x >= 1.0 && rate > 0.0) {
        0.0
    } else {
        rate
    }
}

/// Voltages across memristor 1 (in series with `R₄`) and memristor 2 (in
/// series with `R₃`) for output voltage `v`.
pub fn node_voltages(state: &NeuronState, c: &CircuitParams) -> Result<(f64, f64)> {
    let (x1, x2) = (clamp_unit(state.x1), clamp_unit(state.x2));
    let v1 = solve_series_node(&law(&c.regime1, &c.mem1), x1, state.v, c.r4)?;
    let v2 = solve_series_node(&law(&c.regime2, &c.mem2), x2, state.v, c.r3)?;
    Ok((v1, v2))
}

/// Branch-current balance `(I₁(V₁) − (v − V₁)/R₄, I₂(V₂) − (v − V₂)/R₃)` in mA.
pub fn kcl_residuals(v: f64, x1: f64, x2: f64, v_mem1: f64, v_mem2: f64, c: &CircuitParams) -> (f64, f64) {
    let l1 = law(&c.regime1, &c.mem1);
    let l2 = law(&c.regime2, &c.mem2);
    (
        l1.current(v_mem1, clamp_unit(x1)) - (v - v_mem1) / c.r4,
        l2.current(v_mem2, clamp_unit(x2)) - (v - v_mem2) / c.r3,
    )
}

/// Right-hand side of the neuron equations at time `t` under drive voltage
/// `drive`.
pub fn neuron_rhs(state: &NeuronState, t: f64, drive: f64, c: &CircuitParams) -> Result<NeuronEval> {
    let attach_time = |e: Error| match e {
        Error::Numerical { reason, .. } => Error::numerical(t, reason),
        other => other,
    };
    let NeuronState { v, u, .. } = *state;
    let (x1, x2) = (clamp_unit(state.x1), clamp_unit(state.x2));
    let l1 = law(&c.regime1, &c.mem1);
    let l2 = law(&c.regime2, &c.mem2);

    let v1 = solve_series_node(&l1, x1, v, c.r4).map_err(attach_time)?;
    let v2 = solve_series_node(&l2, x2, v, c.r3).map_err(attach_time)?;
    let r1 = l1.resistance(v1, x1)?;
    let r2 = l2.resistance(v2, x2)?;

    let dx1 = bounded_rate(state_derivative(v1, x1, c.mem1.temperature, &c.mem1), x1);
    let dx2 = bounded_rate(state_derivative(v2, x2, c.mem2.temperature, &c.mem2), x2);

    let vdot = u * (1.0 - (v / c.v_sat).powi(2));
    // Differentiating the divider relation gives V₂' exactly.
    let v2dot = (vdot / c.r3 - l2.di_dx(v2, x2) * dx2) / (l2.di_dv(v2, x2) + 1.0 / c.r3);
    let (r_v, r_x) = l2.resistance_partials(v2, x2)?;
    let rdot2 = r_v * v2dot + r_x * dx2;

    let damping = (r2 / c.r3 + c.c1 / c.c2 + rdot2 * c.c1 + r1 / c.r4) / (r2 * c.c1);
    let stiffness = (1.0 / (c.r3 * c.c2) + rdot2 / c.r3) / (r2 * c.c1);
    let forcing = match c.forcing {
        ForcingMode::InputBranch => drive / (c.r3 * c.c2 * r2 * c.c1),
        ForcingMode::Direct { scale } => scale * drive,
    };
    let udot = -damping * u - stiffness * v + forcing;

    Ok(NeuronEval {
        derivative: [vdot, udot, dx1, dx2],
        v_mem1: v1,
        v_mem2: v2,
        r1,
        r2,
        rdot2,
        damping,
        stiffness,
    })
}
