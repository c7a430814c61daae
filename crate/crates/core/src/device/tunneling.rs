//! Electrode–insulator–electrode tunneling current and Fowler–Nordheim
//! regime extraction.
//!
//! The barrier is a trapezoid whose left edge sits at `φ + V` and right edge
//! at `φ` (energies measured from the right electrode's Fermi level), so the
//! WKB exponent has a closed form for every energy. With a constant density
//! of states the current is
//!
//! ```text
//! I = scale · A · ∫ T(ε, V) [f(ε − V) − f(ε)] dε
//! ```

use serde::{Deserialize, Serialize};

use super::IvCurve;
use crate::error::{require_positive, Error, Result};
use crate::numerics::{fit_line, integrate_adaptive, logistic};
use crate::units::{BOLTZMANN_EV, KAPPA_FREE_ELECTRON_PER_NM};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DosModel {
    Constant,
}

/// Geometry and material constants of a tunnel barrier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BarrierSpec {
    /// Barrier height in eV.
    pub height: f64,
    /// Insulator thickness in nm.
    pub thickness: f64,
    /// Junction area in nm².
    pub junction_area: f64,
    pub dos_model: DosModel,
    /// Tunneling effective mass in units of the free-electron mass.
    pub effective_mass: f64,
    /// Prefactor in mA/(eV·nm²), absorbing the densities of states.
    pub current_scale: f64,
}

impl Default for BarrierSpec {
    fn default() -> Self {
        BarrierSpec {
            height: 2.2,
            thickness: 4.2,
            junction_area: 1.0e4,
            dos_model: DosModel::Constant,
            effective_mass: 0.1,
            current_scale: 1.0,
        }
    }
}

impl BarrierSpec {
    pub fn validate(&self) -> Result<()> {
        require_positive("barrier.height", self.height)?;
        require_positive("barrier.thickness", self.thickness)?;
        require_positive("barrier.junction_area", self.junction_area)?;
        require_positive("barrier.effective_mass", self.effective_mass)?;
        require_positive("barrier.current_scale", self.current_scale)?;
        Ok(())
    }

    /// WKB transmission `exp(−2∫κ dz)` at energy `e` (eV) under bias `v`.
    pub fn transmission(&self, e: f64, v: f64) -> f64 {
        let ua = self.height + v;
        let ub = self.height;
        let d = self.thickness;
        let action = if v.abs() < 1e-12 {
            d * (ub - e).max(0.0).sqrt()
        } else {
            let p = |u: f64| (u - e).max(0.0).powf(1.5);
            (2.0 / 3.0) * d / (ua - ub) * (p(ua) - p(ub))
        };
        let kappa = KAPPA_FREE_ELECTRON_PER_NM * self.effective_mass.sqrt();
        (-2.0 * kappa * action).exp()
    }

    /// Fowler–Nordheim slope `b` (in V) of `ln(I/V²) ≈ c − b/V` for the
    /// triangular-barrier limit.
    pub fn fowler_nordheim_slope(&self) -> f64 {
        let kappa = KAPPA_FREE_ELECTRON_PER_NM * self.effective_mass.sqrt();
        (4.0 / 3.0) * kappa * self.height.powf(1.5) * self.thickness
    }
}

/// Tunneling current in mA at bias `v` (volts) and temperature `t` (K).
pub fn nin_tunnel_current(v: f64, b: &BarrierSpec, t: f64) -> Result<f64> {
    b.validate()?;
    require_positive("temperature", t)?;
    if v == 0.0 {
        return Ok(0.0);
    }
    let kt = BOLTZMANN_EV * t;
    let occupation_difference = |e: f64| logistic(-(e - v) / kt) - logistic(-e / kt);
    let integrand = |e: f64| b.transmission(e, v) * occupation_difference(e);

    let margin = b.height + 10.0 * kt;
    let lo = v.min(0.0) - margin;
    let hi = v.max(0.0) + margin;
    let mut breaks = vec![lo, 0.0, v, b.height, b.height + v, hi];
    breaks.retain(|x| *x >= lo && *x <= hi);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let mut total = 0.0;
    let mut abs_err = 0.0;
    let mut evaluations = 0;
    for w in breaks.windows(2) {
        let q = integrate_adaptive(integrand, w[0], w[1], 0.0, 1e-10, 4000, f64::INFINITY)?;
        total += q.value;
        abs_err += q.abs_error;
        evaluations += q.evaluations;
    }
    if abs_err > 1e-6 * total.abs() {
        return Err(Error::Quadrature {
            rel_err: abs_err / total.abs().max(f64::MIN_POSITIVE),
            evals: evaluations,
        });
    }
    Ok(b.current_scale * b.junction_area * total)
}

/// Regimes found by [`fn_analysis`]. Voltage ranges are `(low, high)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FnReport {
    pub fe_region: (f64, f64),
    pub dt_region: Option<(f64, f64)>,
    /// Slope of `ln(I/V²)` against `1/V` in the field-emission window (V).
    pub fe_slope: f64,
    pub fe_intercept: f64,
    pub r_squared: f64,
    pub fe_points: usize,
}

/// Smallest number of points accepted as a field-emission window.
pub const FN_MIN_WINDOW: usize = 6;
/// Linearity threshold for the field-emission window.
pub const FN_R2_THRESHOLD: f64 = 0.995;

/// Splits the positive-bias part of `curve` into a high-bias field-emission
/// window, where `ln(I/V²)` is linear in `1/V` with negative slope, and a
/// direct-tunneling remainder.
pub fn fn_analysis(curve: &IvCurve) -> Result<FnReport> {
    curve.validate()?;
    let mut pts: Vec<(f64, f64)> = curve.points.iter().copied().filter(|p| p.0 > 0.0).collect();
    if pts.len() < 16 {
        return Err(Error::invalid(
            "iv_curve",
            format!("need at least 16 positive-bias samples, got {}", pts.len()),
        ));
    }
    if let Some(p) = pts.iter().find(|p| !(p.1 > 0.0)) {
        return Err(Error::invalid(
            "iv_curve",
            format!("current must be positive at positive bias (V = {})", p.0),
        ));
    }
    // Highest bias first.
    pts.sort_by(|a, b| b.0.total_cmp(&a.0));
    let x: Vec<f64> = pts.iter().map(|p| 1.0 / p.0).collect();
    let y: Vec<f64> = pts.iter().map(|p| (p.1 / (p.0 * p.0)).ln()).collect();

    let mut best = None;
    for k in FN_MIN_WINDOW..=pts.len() {
        let fit = fit_line(&x[..k], &y[..k]);
        if fit.r_squared >= FN_R2_THRESHOLD && fit.slope < 0.0 {
            best = Some((k, fit));
        }
    }
    let (k, fit) = best.ok_or_else(|| Error::Analysis("no field-emission regime detected".into()))?;
    let dt_region = (k < pts.len()).then(|| (pts[pts.len() - 1].0, pts[k].0));
    Ok(FnReport {
        fe_region: (pts[k - 1].0, pts[0].0),
        dt_region,
        fe_slope: fit.slope,
        fe_intercept: fit.intercept,
        r_squared: fit.r_squared,
        fe_points: k,
    })
}
