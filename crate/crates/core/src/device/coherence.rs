use crate::error::{require_positive, Result};
use crate::units::{BOLTZMANN_EV, HBAR_EV_PS};

/// Proximity coherence length `ξ_n = sqrt(D·ħ / (2π·k_B·T))` in nm, with
/// diffusion constant `D = v_f·l_n / 3`.
///
/// `fermi_velocity` in nm/ps, `mean_free_path` in nm, `temperature` in K.
pub fn coherence_length(fermi_velocity: f64, mean_free_path: f64, temperature: f64) -> Result<f64> {
    require_positive("fermi_velocity", fermi_velocity)?;
    require_positive("mean_free_path", mean_free_path)?;
    require_positive("temperature", temperature)?;
    let diffusion = fermi_velocity * mean_free_path / 3.0; // nm²/ps
    let thermal = BOLTZMANN_EV * temperature; // eV
    Ok((diffusion * HBAR_EV_PS / (2.0 * std::f64::consts::PI * thermal)).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_scaling_laws() {
        let base = coherence_length(1000.0, 5.0, 8.1).unwrap();
        let hot = coherence_length(1000.0, 5.0, 4.0 * 8.1).unwrap();
        let long = coherence_length(1000.0, 20.0, 8.1).unwrap();
        assert!((hot / base - 0.5).abs() < 1e-15);
        assert!((long / base - 2.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_positive_inputs() {
        assert!(coherence_length(0.0, 5.0, 8.1).is_err());
        assert!(coherence_length(1.0, 5.0, -1.0).is_err());
    }
}
