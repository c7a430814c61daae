//! Warm-regime memristor: tunneling/diode conduction mixed by a single
//! internal state `x ∈ [0, 1]`, with a sinh-driven state equation and a
//! temperature-aware retention factor.

use serde::{Deserialize, Serialize};

use super::Conduction;
use crate::error::{require_non_negative, require_positive, Error, Result};
use crate::units::BOLTZMANN_EV;

/// Below this node voltage the memristance is taken from its small-signal
/// limit instead of the 0/0 ratio `V / I`.
pub const V_EPS: f64 = 1e-6;

/// How the retention term depends on bias and temperature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RetentionMode {
    /// `f ≡ 1`.
    Constant,
    /// Thermally activated ion hopping, `e^{-U_a/k_BT}·|sinh(qEa/2k_BT)|`,
    /// normalised to 1 at the reference bias and temperature.
    ArrheniusSinh,
}

/// Device constants of one memristor.
///
/// Units: `alpha`, `gamma` in mA; `beta`, `delta`, `eta2` in 1/V; `lambda` in
/// 1/μs; `tau` in μs; energies in eV; lengths in nm; temperatures in K.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MemristorParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub lambda: f64,
    pub eta1: f64,
    pub eta2: f64,
    pub tau: f64,
    pub activation_energy: f64,
    pub ion_periodicity: f64,
    pub oxide_thickness: f64,
    pub temperature: f64,
    pub f_mode: RetentionMode,
    pub v_ref: f64,
    pub t_ref: f64,
}

impl Default for MemristorParams {
    fn default() -> Self {
        MemristorParams {
            alpha: 0.1,
            beta: -2.0,
            gamma: 0.1,
            delta: 2.0,
            lambda: 0.1,
            eta1: 0.01,
            eta2: 2.0,
            tau: 10.0,
            activation_energy: 0.1,
            ion_periodicity: 0.5,
            oxide_thickness: 4.2,
            temperature: 300.0,
            f_mode: RetentionMode::Constant,
            v_ref: 0.5,
            t_ref: 300.0,
        }
    }
}

impl MemristorParams {
    /// Checks the parameter invariants, naming fields relative to `prefix`.
    pub fn validate(&self, prefix: &str) -> Result<()> {
        let f = |name: &str| format!("{prefix}.{name}");
        require_positive(&f("alpha"), self.alpha)?;
        require_positive(&f("gamma"), self.gamma)?;
        require_positive(&f("delta"), self.delta)?;
        require_positive(&f("eta2"), self.eta2)?;
        require_positive(&f("tau"), self.tau)?;
        require_positive(&f("ion_periodicity"), self.ion_periodicity)?;
        require_positive(&f("oxide_thickness"), self.oxide_thickness)?;
        require_positive(&f("temperature"), self.temperature)?;
        require_positive(&f("t_ref"), self.t_ref)?;
        // Zero rate freezes the state; used for linear reference runs.
        require_non_negative(&f("lambda"), self.lambda)?;
        require_non_negative(&f("eta1"), self.eta1)?;
        require_non_negative(&f("activation_energy"), self.activation_energy)?;
        if !self.beta.is_finite() {
            return Err(Error::invalid(f("beta"), "must be finite"));
        }
        if self.f_mode == RetentionMode::ArrheniusSinh && self.v_ref == 0.0 {
            return Err(Error::invalid(
                f("v_ref"),
                "must be non-zero for arrhenius_sinh retention",
            ));
        }
        Ok(())
    }

    fn raw_velocity(&self, v: f64, t: f64) -> f64 {
        let kt = BOLTZMANN_EV * t;
        // qEa with E = V/thickness, expressed in eV for a unit charge.
        let barrier_lowering = v * self.ion_periodicity / self.oxide_thickness;
        (-self.activation_energy / kt).exp() * (barrier_lowering / (2.0 * kt)).sinh().abs()
    }
}

/// Conduction current `I(V, x)` in mA.
pub fn chang_current(v: f64, x: f64, p: &MemristorParams) -> f64 {
    (1.0 - x) * p.alpha * (1.0 - (p.beta * v).exp()) + x * p.gamma * (p.delta * v).sinh()
}

/// Mem-resistance `V / I(V, x)` in kΩ, using the analytic small-signal limit
/// `1 / G(0, x)` for `|V| < V_EPS`.
pub fn memristance(v: f64, x: f64, p: &MemristorParams) -> Result<f64> {
    Warm(p).resistance(v, x)
}

/// Dimensionless retention factor `f(V, T)`.
pub fn ion_velocity_factor(v: f64, t: f64, p: &MemristorParams) -> f64 {
    match p.f_mode {
        RetentionMode::Constant => 1.0,
        RetentionMode::ArrheniusSinh => p.raw_velocity(v, t) / p.raw_velocity(p.v_ref, p.t_ref),
    }
}

/// State rate `dx/dt` in 1/μs.
pub fn state_derivative(v: f64, x: f64, t: f64, p: &MemristorParams) -> f64 {
    p.lambda * (p.eta1 * (p.eta2 * v).sinh() - ion_velocity_factor(v, t, p) * x / p.tau)
}

/// [`Conduction`] view of the warm-regime law.
#[derive(Debug, Clone, Copy)]
pub struct Warm<'a>(pub &'a MemristorParams);

impl Conduction for Warm<'_> {
    fn current(&self, v: f64, x: f64) -> f64 {
        chang_current(v, x, self.0)
    }

    fn di_dv(&self, v: f64, x: f64) -> f64 {
        let p = self.0;
        -(1.0 - x) * p.alpha * p.beta * (p.beta * v).exp() + x * p.gamma * p.delta * (p.delta * v).cosh()
    }

    fn di_dx(&self, v: f64, _x: f64) -> f64 {
        let p = self.0;
        -p.alpha * (1.0 - (p.beta * v).exp()) + p.gamma * (p.delta * v).sinh()
    }

    fn d2i_dv2_at_zero(&self, x: f64) -> f64 {
        let p = self.0;
        -(1.0 - x) * p.alpha * p.beta * p.beta
    }

    fn dg0_dx(&self, _x: f64) -> f64 {
        let p = self.0;
        p.alpha * p.beta + p.gamma * p.delta
    }
}
