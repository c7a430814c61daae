//! Dormand–Prince 5(4) integrator with dense output.
//!
//! The step-size controller uses a max-norm of the scaled local error, so the
//! accepted step sequence does not depend on the order of the state
//! components. Networks rely on this for exact permutation invariance.

use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};

/// Tolerances and sampling for an adaptive integration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Upper bound on the step size, in the problem's time unit.
    pub max_step: f64,
    /// Spacing of the uniform output grid.
    pub sample_interval: f64,
    pub max_steps: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            abs_tol: 1e-9,
            rel_tol: 1e-7,
            max_step: 50.0,
            sample_interval: 10.0,
            max_steps: 5_000_000,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        require_positive("solver.abs_tol", self.abs_tol)?;
        require_positive("solver.rel_tol", self.rel_tol)?;
        require_positive("solver.max_step", self.max_step)?;
        require_positive("solver.sample_interval", self.sample_interval)?;
        if self.max_steps == 0 {
            return Err(Error::invalid("solver.max_steps", "must be >= 1"));
        }
        Ok(())
    }

    /// Copy with both tolerances multiplied by `factor`.
    pub fn scaled_tolerances(&self, factor: f64) -> Self {
        SolverConfig {
            abs_tol: self.abs_tol * factor,
            rel_tol: self.rel_tol * factor,
            ..self.clone()
        }
    }
}

/// A first-order system `dy/dt = f(t, y)`.
pub trait OdeSystem {
    fn dim(&self) -> usize;

    fn rhs(&self, t: f64, y: &[f64], dydt: &mut [f64]) -> Result<()>;

    /// Projects an accepted state back onto its admissible set. Returns
    /// `true` when any component changed.
    fn project(&self, _y: &mut [f64]) -> bool {
        false
    }

    /// Called after every accepted step with the (projected) state and its
    /// derivative.
    fn accept(&mut self, _t: f64, _y: &[f64], _dydt: &[f64]) {}

    /// Largest step the system tolerates, e.g. the shortest coupling delay.
    fn step_limit(&self) -> f64 {
        f64::INFINITY
    }
}

/// Counters reported by [`integrate`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
}

// Butcher tableau.
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
// Error coefficients (5th minus embedded 4th order).
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
// Continuous extension.
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

/// Quartic interpolant over one accepted step.
struct DenseStep {
    t: f64,
    h: f64,
    cont: [Vec<f64>; 5],
}

impl DenseStep {
    fn eval(&self, t: f64, out: &mut [f64]) {
        let s = (t - self.t) / self.h;
        let s1 = 1.0 - s;
        let [c0, c1, c2, c3, c4] = &self.cont;
        for i in 0..out.len() {
            out[i] = c0[i] + s * (c1[i] + s1 * (c2[i] + s * (c3[i] + s1 * c4[i])));
        }
    }
}

fn error_norm(err: &[f64], y0: &[f64], y1: &[f64], atol: f64, rtol: f64) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..err.len() {
        let sc = atol + rtol * y0[i].abs().max(y1[i].abs());
        let e = (err[i] / sc).abs();
        if e.is_nan() {
            return f64::NAN;
        }
        worst = worst.max(e);
    }
    worst
}

fn max_scaled(v: &[f64], y: &[f64], atol: f64, rtol: f64) -> f64 {
    v.iter()
        .zip(y)
        .map(|(vi, yi)| (vi / (atol + rtol * yi.abs())).abs())
        .fold(0.0, f64::max)
}

fn initial_step<S: OdeSystem>(
    sys: &S,
    t0: f64,
    y0: &[f64],
    f0: &[f64],
    cfg: &SolverConfig,
    h_max: f64,
) -> Result<f64> {
    let (atol, rtol) = (cfg.abs_tol, cfg.rel_tol);
    let dnf = max_scaled(f0, y0, atol, rtol);
    let dny = max_scaled(y0, y0, atol, rtol);
    let mut h = if dnf <= 1e-10 || dny <= 1e-10 {
        1e-6
    } else {
        0.01 * dny / dnf
    };
    h = h.min(h_max);
    let y1: Vec<f64> = y0.iter().zip(f0).map(|(y, f)| y + h * f).collect();
    let mut f1 = vec![0.0; y0.len()];
    sys.rhs(t0 + h, &y1, &mut f1)?;
    let diff: Vec<f64> = f1.iter().zip(f0).map(|(a, b)| a - b).collect();
    let der2 = max_scaled(&diff, y0, atol, rtol) / h;
    let der12 = dnf.max(der2);
    let h1 = if der12 <= 1e-15 {
        (h * 1e-3).max(1e-6)
    } else {
        (0.01 / der12).powf(0.2)
    };
    Ok((100.0 * h).min(h1).min(h_max))
}

/// Integrates `sys` from `t0` to `t_end`, returning the state at every time
/// in `samples` (sorted, inside `[t0, t_end]`).
pub fn integrate<S: OdeSystem>(
    sys: &mut S,
    t0: f64,
    y0: &[f64],
    t_end: f64,
    samples: &[f64],
    cfg: &SolverConfig,
) -> Result<(Vec<Vec<f64>>, Stats)> {
    cfg.validate()?;
    let n = sys.dim();
    if y0.len() != n {
        return Err(Error::invalid(
            "y0",
            format!("expected {n} components, got {}", y0.len()),
        ));
    }
    if !(t_end > t0) {
        return Err(Error::invalid("t_span", "end time must exceed start time"));
    }
    let h_max = cfg.max_step.min(sys.step_limit()).min(t_end - t0);
    let (atol, rtol) = (cfg.abs_tol, cfg.rel_tol);

    let mut out = Vec::with_capacity(samples.len());
    let mut next_sample = 0;

    let mut t = t0;
    let mut y = y0.to_vec();
    sys.project(&mut y);
    let mut k1 = vec![0.0; n];
    sys.rhs(t, &y, &mut k1)?;
    check_finite(t, &k1)?;
    sys.accept(t, &y, &k1);
    let mut stats = Stats {
        evaluations: 1,
        ..Stats::default()
    };

    while next_sample < samples.len() && samples[next_sample] <= t0 {
        out.push(y.clone());
        next_sample += 1;
    }

    let mut h = initial_step(sys, t, &y, &k1, cfg, h_max)?;
    stats.evaluations += 1;

    let mut k2 = vec![0.0; n];
    let mut k3 = vec![0.0; n];
    let mut k4 = vec![0.0; n];
    let mut k5 = vec![0.0; n];
    let mut k6 = vec![0.0; n];
    let mut k7 = vec![0.0; n];
    let mut ys = vec![0.0; n];
    let mut y_new = vec![0.0; n];
    let mut err = vec![0.0; n];
    let mut last_rejected = false;

    loop {
        if stats.accepted + stats.rejected >= cfg.max_steps {
            return Err(Error::numerical(t, "maximum number of steps exceeded"));
        }
        let remaining = t_end - t;
        let mut finishing = false;
        if h >= remaining * (1.0 - 1e-12) {
            h = remaining;
            finishing = true;
        }
        if h <= 1e-13 * t.abs().max(1.0) {
            return Err(Error::numerical(
                t,
                format!("step size underflow (h = {h:.3e}); the system may be stiff"),
            ));
        }

        for i in 0..n {
            ys[i] = y[i] + h * A21 * k1[i];
        }
        sys.rhs(t + C2 * h, &ys, &mut k2)?;
        for i in 0..n {
            ys[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
        }
        sys.rhs(t + C3 * h, &ys, &mut k3)?;
        for i in 0..n {
            ys[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        }
        sys.rhs(t + C4 * h, &ys, &mut k4)?;
        for i in 0..n {
            ys[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        }
        sys.rhs(t + C5 * h, &ys, &mut k5)?;
        for i in 0..n {
            ys[i] = y[i]
                + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
        }
        let t_new = if finishing { t_end } else { t + h };
        sys.rhs(t_new, &ys, &mut k6)?;
        for i in 0..n {
            y_new[i] = y[i]
                + h * (A71 * k1[i] + A73 * k3[i] + A74 * k4[i] + A75 * k5[i] + A76 * k6[i]);
        }
        sys.rhs(t_new, &y_new, &mut k7)?;
        stats.evaluations += 6;
        for i in 0..n {
            err[i] = h
                * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        }
        let en = error_norm(&err, &y, &y_new, atol, rtol);
        if !en.is_finite() {
            // Non-finite trial state: shrink hard and retry.
            stats.rejected += 1;
            h *= 0.1;
            last_rejected = true;
            continue;
        }

        if en <= 1.0 {
            stats.accepted += 1;
            // Dense output coefficients.
            let mut cont: [Vec<f64>; 5] = Default::default();
            cont[0] = y.clone();
            cont[1] = y_new.iter().zip(&y).map(|(a, b)| a - b).collect();
            cont[2] = (0..n).map(|i| h * k1[i] - cont[1][i]).collect();
            cont[3] = (0..n).map(|i| cont[1][i] - h * k7[i] - cont[2][i]).collect();
            cont[4] = (0..n)
                .map(|i| {
                    h * (D1 * k1[i]
                        + D3 * k3[i]
                        + D4 * k4[i]
                        + D5 * k5[i]
                        + D6 * k6[i]
                        + D7 * k7[i])
                })
                .collect();
            let dense = DenseStep { t, h, cont };

            let projected = sys.project(&mut y_new);
            if projected {
                sys.rhs(t_new, &y_new, &mut k7)?;
                stats.evaluations += 1;
            }
            check_finite(t_new, &y_new)?;

            while next_sample < samples.len() && samples[next_sample] <= t_new {
                let ts = samples[next_sample];
                if ts == t_new {
                    out.push(y_new.clone());
                } else {
                    let mut v = vec![0.0; n];
                    dense.eval(ts, &mut v);
                    sys.project(&mut v);
                    out.push(v);
                }
                next_sample += 1;
            }

            t = t_new;
            std::mem::swap(&mut y, &mut y_new);
            std::mem::swap(&mut k1, &mut k7);
            sys.accept(t, &y, &k1);

            if finishing {
                break;
            }
            let fac = (0.9 * en.max(1e-10).powf(-0.2)).clamp(0.2, 5.0);
            let fac = if last_rejected { fac.min(1.0) } else { fac };
            h = (h * fac).min(h_max);
            last_rejected = false;
        } else {
            stats.rejected += 1;
            let fac = (0.9 * en.powf(-0.2)).clamp(0.1, 1.0);
            h *= fac;
            last_rejected = true;
        }
    }

    while next_sample < samples.len() {
        // Samples at (or numerically just past) the end time.
        out.push(y.clone());
        next_sample += 1;
    }
    Ok((out, stats))
}

fn check_finite(t: f64, v: &[f64]) -> Result<()> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::numerical(t, "non-finite value in state or derivative"))
    }
}

/// Uniform grid `t0, t0 + dt, …` up to and including `t_end` (within
/// rounding).
pub fn uniform_grid(t0: f64, t_end: f64, dt: f64) -> Vec<f64> {
    let n = ((t_end - t0) / dt + 1e-9).floor() as usize;
    (0..=n).map(|k| t0 + k as f64 * dt).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Decay(f64);
    impl OdeSystem for Decay {
        fn dim(&self) -> usize {
            1
        }
        fn rhs(&self, _t: f64, y: &[f64], dy: &mut [f64]) -> Result<()> {
            dy[0] = -self.0 * y[0];
            Ok(())
        }
    }

    struct Harmonic;
    impl OdeSystem for Harmonic {
        fn dim(&self) -> usize {
            2
        }
        fn rhs(&self, _t: f64, y: &[f64], dy: &mut [f64]) -> Result<()> {
            dy[0] = y[1];
            dy[1] = -y[0];
            Ok(())
        }
    }

    #[test]
    fn exponential_decay_matches_closed_form() {
        let cfg = SolverConfig {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_step: 1.0,
            sample_interval: 0.1,
            max_steps: 100_000,
        };
        let grid = uniform_grid(0.0, 5.0, 0.1);
        let (ys, _) = integrate(&mut Decay(1.3), 0.0, &[2.0], 5.0, &grid, &cfg).unwrap();
        for (t, y) in grid.iter().zip(&ys) {
            let exact = 2.0 * (-1.3 * t).exp();
            assert!((y[0] - exact).abs() < 1e-9, "t={t}: {} vs {exact}", y[0]);
        }
    }

    #[test]
    fn dense_output_is_accurate_between_steps() {
        let cfg = SolverConfig {
            abs_tol: 1e-9,
            rel_tol: 1e-9,
            max_step: 2.0,
            sample_interval: 0.01,
            max_steps: 100_000,
        };
        let grid = uniform_grid(0.0, 20.0, 0.013);
        let (ys, stats) = integrate(&mut Harmonic, 0.0, &[1.0, 0.0], 20.0, &grid, &cfg).unwrap();
        assert!(stats.accepted < grid.len() / 4, "steps should be much coarser than samples");
        for (t, y) in grid.iter().zip(&ys) {
            assert!((y[0] - t.cos()).abs() < 1e-6);
            assert!((y[1] + t.sin()).abs() < 1e-6);
        }
    }

    #[test]
    fn rejects_empty_span() {
        let cfg = SolverConfig::default();
        assert!(integrate(&mut Decay(1.0), 1.0, &[1.0], 1.0, &[], &cfg).is_err());
    }

    struct Blowup;
    impl OdeSystem for Blowup {
        fn dim(&self) -> usize {
            1
        }
        fn rhs(&self, _t: f64, y: &[f64], dy: &mut [f64]) -> Result<()> {
            dy[0] = y[0] * y[0];
            Ok(())
        }
    }

    #[test]
    fn finite_time_blowup_is_reported_with_time() {
        let cfg = SolverConfig {
            max_steps: 200_000,
            ..SolverConfig::default()
        };
        let err = integrate(&mut Blowup, 0.0, &[1.0], 2.0, &[], &cfg).unwrap_err();
        match err {
            Error::Numerical { t, .. } => assert!(t > 0.9 && t < 1.0 + 1e-6, "t = {t}"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
