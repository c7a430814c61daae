//! Physical constants in the toolkit's working units.
//!
//! Circuit quantities use volts, microseconds, kilo-ohms, nanofarads and
//! milliamps, so that kΩ·nF = μs and V/kΩ = mA. Device physics uses eV for
//! energies, nm for lengths and ps for the coherence-length time scale.

/// Boltzmann constant in eV/K.
pub const BOLTZMANN_EV: f64 = 8.617_333_262e-5;

/// Reduced Planck constant in eV·ps.
pub const HBAR_EV_PS: f64 = 6.582_119_569e-4;

/// Reduced Planck constant in eV·s.
pub const HBAR_EV_S: f64 = 6.582_119_569e-16;

/// Elementary charge in coulombs.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// `sqrt(2 m_e · 1 eV) / ħ` in 1/nm: the decay constant of a free electron
/// 1 eV below a barrier top.
pub const KAPPA_FREE_ELECTRON_PER_NM: f64 = 5.123_167_6;

/// Thermal energy k_B·T in eV.
pub fn thermal_energy_ev(temperature_k: f64) -> f64 {
    BOLTZMANN_EV * temperature_k
}
