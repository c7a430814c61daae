//! Two-time cavity correlations by quantum regression: an operator-weighted
//! kernel is propagated under the same Liouvillian as the state.

use std::path::Path;

use num_complex::Complex64;

use super::{build_operators, cavity_population, propagate, trace_product, CMatrix, Evolution, QmeSpec};
use crate::error::{Error, Result};

/// A correlation function sampled at times `t0 + tau`.
#[derive(Debug, Clone)]
pub struct CorrelationSeries {
    pub t0: f64,
    pub tau: Vec<f64>,
    /// Normalised correlation.
    pub values: Vec<Complex64>,
    /// Un-normalised two-time expectation value.
    pub raw: Vec<Complex64>,
}

impl CorrelationSeries {
    /// Writes `t,re,im` with `t` the delay from the origin.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let rows = self.tau.iter().zip(&self.values).map(|(t, z)| [*t, z.re, z.im]);
        crate::io::write_csv(path, &["t", "re", "im"], rows)
    }
}

/// Index of the first sample with `⟨a†a⟩ ≥ pop_floor`.
pub fn correlation_origin(evo: &Evolution, pop_floor: f64) -> Result<usize> {
    evo.n_cavity
        .iter()
        .position(|&n| n >= pop_floor)
        .ok_or_else(|| Error::Analysis(format!("cavity population never reaches {pop_floor:.1e}")))
}

fn origin_population(spec: &QmeSpec, rho_ref: &CMatrix) -> Result<f64> {
    let ops = build_operators(spec.n_levels);
    let n0 = cavity_population(&ops, rho_ref);
    if !(n0 >= spec.pop_floor) {
        return Err(Error::Analysis(format!(
            "correlation origin underpopulated: <a†a> = {n0:.3e} < {:.1e}",
            spec.pop_floor
        )));
    }
    Ok(n0)
}

fn check_taus(taus: &[f64]) -> Result<()> {
    if taus.first().map_or(true, |&t| t < 0.0) || taus.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("tau", "delays must be non-negative and strictly increasing"));
    }
    Ok(())
}

/// `g¹(τ) = ⟨a†(t0+τ) a(t0)⟩ / sqrt(⟨a†a⟩(t0+τ) · ⟨a†a⟩(t0))` with
/// `rho_ref = ρ(t0)`.
pub fn correlation_g1(spec: &QmeSpec, rho_ref: &CMatrix, t0: f64, taus: &[f64]) -> Result<CorrelationSeries> {
    spec.validate()?;
    check_taus(taus)?;
    let n0 = origin_population(spec, rho_ref)?;
    let ops = build_operators(spec.n_levels);
    let kernel = &ops.a * rho_ref;
    let samples: Vec<f64> = taus.iter().map(|tau| t0 + tau).collect();
    let evolved = propagate(spec, &[rho_ref, &kernel], t0, &samples)?;
    let mut raw = Vec::with_capacity(taus.len());
    let mut values = Vec::with_capacity(taus.len());
    for pair in &evolved {
        let numerator = trace_product(&ops.a_dag, &pair[1]);
        let n_t = cavity_population(&ops, &pair[0]);
        raw.push(numerator);
        values.push(numerator / (n_t * n0).sqrt());
    }
    Ok(CorrelationSeries {
        t0,
        tau: taus.to_vec(),
        values,
        raw,
    })
}

/// `g²(τ) = ⟨a†(t0) a†(t0+τ) a(t0+τ) a(t0)⟩ / ⟨a†a⟩(t0)²`.
pub fn correlation_g2(spec: &QmeSpec, rho_ref: &CMatrix, t0: f64, taus: &[f64]) -> Result<CorrelationSeries> {
    spec.validate()?;
    check_taus(taus)?;
    let n0 = origin_population(spec, rho_ref)?;
    let ops = build_operators(spec.n_levels);
    let kernel = &ops.a * rho_ref * &ops.a_dag;
    let samples: Vec<f64> = taus.iter().map(|tau| t0 + tau).collect();
    let evolved = propagate(spec, &[&kernel], t0, &samples)?;
    let raw: Vec<Complex64> = evolved.iter().map(|k| trace_product(&ops.number, &k[0])).collect();
    let values = raw.iter().map(|z| Complex64::from(z.re / (n0 * n0))).collect();
    Ok(CorrelationSeries {
        t0,
        tau: taus.to_vec(),
        values,
        raw,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{coherent_dm, fock_dm, with_ground_qubit};

    fn free_cavity(decay: f64) -> QmeSpec {
        QmeSpec {
            g: 0.0,
            a_drive: 0.0,
            n_levels: 12,
            decay_rates: vec![crate::quantum::Decay {
                operator: crate::quantum::DecayChannel::CavityA,
                rate: decay,
            }],
            ..QmeSpec::default()
        }
    }

    #[test]
    fn g1_is_one_at_origin() {
        let spec = free_cavity(0.15);
        let rho = with_ground_qubit(&coherent_dm(12, Complex64::new(0.8, 0.3)));
        let g1 = correlation_g1(&spec, &rho, 0.0, &[0.0, 0.5]).unwrap();
        assert_eq!(g1.values[0].re, 1.0);
    }

    #[test]
    fn fock_one_is_antibunched() {
        let spec = free_cavity(0.0);
        let rho = with_ground_qubit(&fock_dm(12, 1));
        let g2 = correlation_g2(&spec, &rho, 0.0, &[0.0]).unwrap();
        assert_eq!(g2.values[0].re, 0.0);
    }

    #[test]
    fn vacuum_origin_is_rejected() {
        let spec = free_cavity(0.15);
        let rho = with_ground_qubit(&fock_dm(4, 0));
        let spec = QmeSpec { n_levels: 4, ..spec };
        let err = correlation_g1(&spec, &rho, 0.0, &[0.0]).unwrap_err();
        assert!(err.to_string().contains("underpopulated"));
    }
}
