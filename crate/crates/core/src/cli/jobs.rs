//! Fully resolved run descriptions. A manifest stores one [`Job`]; executing
//! it again reproduces the result directory.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::analysis::{self, SegmentConfig, SpikeConfig};
use crate::device::{
    chang_current, coherence_length, fn_analysis, nin_tunnel_current, sc_current, BarrierSpec, IvCurve,
    MemristorParams, SuperconductingParams,
};
use crate::error::{require_positive, Error, Result};
use crate::io::plot::{self, Line};
use crate::io::{read_csv, write_csv, Validate};
use crate::network::NetworkDeck;
use crate::neuron::system::max_kcl_residual;
use crate::neuron::NeuronDeck;
use crate::numerics::{median, pearson};
use crate::quantum::{
    coherent_dm, correlation_g1, correlation_g2, correlation_origin, evolve, fock_dm, thermal_dm,
    with_ground_qubit, write_density_matrix, CMatrix, QmeSpec,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "job", rename_all = "snake_case")]
pub enum Job {
    DeviceIv(IvJob),
    DeviceFn(FnJob),
    DeviceCoherence(CoherenceJob),
    Neuron(NeuronDeck),
    Network(NetworkDeck),
    QuantumEvolve(QuantumJob),
    QuantumCorrelation(CorrelationJob),
    QuantumConverge(ConvergeJob),
    Analyze(AnalyzeJob),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum IvLaw {
    Chang {
        #[serde(default)]
        params: MemristorParams,
        #[serde(default)]
        x: f64,
    },
    Tunnel {
        #[serde(default)]
        barrier: BarrierSpec,
        temperature: f64,
    },
    Superconducting {
        #[serde(default)]
        params: SuperconductingParams,
        #[serde(default)]
        x: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IvJob {
    pub law: IvLaw,
    pub v_min: f64,
    pub v_max: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FnJob {
    /// Curve to analyse; when absent the tunnel law is swept instead.
    pub iv_path: Option<String>,
    pub barrier: BarrierSpec,
    pub temperature: f64,
    pub v_min: f64,
    pub v_max: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoherenceJob {
    /// nm/ps.
    pub fermi_velocity: f64,
    /// nm.
    pub mean_free_path: f64,
    /// K.
    pub temperatures: Vec<f64>,
}

/// Initial cavity state; the qubit starts in its ground state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitState {
    #[default]
    Ground,
    Fock {
        n: usize,
    },
    Coherent {
        re: f64,
        im: f64,
    },
    Thermal {
        nbar: f64,
    },
}

impl InitState {
    pub fn density_matrix(&self, n_levels: usize) -> Result<CMatrix> {
        let cavity = match *self {
            InitState::Ground => fock_dm(n_levels, 0),
            InitState::Fock { n } => {
                if n >= n_levels {
                    return Err(Error::invalid("init.n", format!("Fock level {n} is outside N = {n_levels}")));
                }
                fock_dm(n_levels, n)
            }
            InitState::Coherent { re, im } => coherent_dm(n_levels, Complex64::new(re, im)),
            InitState::Thermal { nbar } => {
                crate::error::require_non_negative("init.nbar", nbar)?;
                thermal_dm(n_levels, nbar)
            }
        };
        Ok(with_ground_qubit(&cavity))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantumJob {
    pub spec: QmeSpec,
    #[serde(default)]
    pub init: InitState,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorrelationJob {
    pub spec: QmeSpec,
    #[serde(default)]
    pub init: InitState,
    /// 1 for `g¹`, 2 for `g²`.
    pub order: u8,
    /// Correlation origin; by default the first sample whose cavity
    /// population reaches `spec.pop_floor`.
    pub t0: Option<f64>,
    pub tau_max: f64,
    pub tau_step: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvergeJob {
    pub spec: QmeSpec,
    pub levels: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum AnalysisOp {
    Spikes {
        spike: Option<SpikeConfig>,
    },
    Rate {
        spike: Option<SpikeConfig>,
        /// μs; defaults to ten median inter-spike intervals.
        window: Option<f64>,
    },
    Phase {
        column_y: String,
    },
    Embed {
        dim: usize,
        lag: usize,
    },
    Spectrum {
        segments: usize,
    },
    Segments {
        segment: SegmentConfig,
    },
    Modulate {
        f_c: f64,
        fs: f64,
        /// Q channel as the I channel delayed by this many samples.
        q_delay: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalyzeJob {
    /// CSV whose first column is time in μs.
    pub input: String,
    pub column: String,
    pub op: AnalysisOp,
}

impl Validate for Job {
    fn validate(&self) -> Result<()> {
        match self {
            Job::DeviceIv(j) => {
                sweep_voltages(j.v_min, j.v_max, j.points)?;
                match &j.law {
                    IvLaw::Chang { params, x } => {
                        params.validate("law.params")?;
                        unit_state(*x)
                    }
                    IvLaw::Tunnel { barrier, temperature } => {
                        barrier.validate()?;
                        crate::error::require_non_negative("law.temperature", *temperature)
                    }
                    IvLaw::Superconducting { params, x } => {
                        params.validate("law.params")?;
                        unit_state(*x)
                    }
                }
            }
            Job::DeviceFn(j) => {
                j.barrier.validate()?;
                crate::error::require_non_negative("temperature", j.temperature)?;
                if j.iv_path.is_none() {
                    sweep_voltages(j.v_min, j.v_max, j.points)?;
                }
                Ok(())
            }
            Job::DeviceCoherence(j) => {
                require_positive("fermi_velocity", j.fermi_velocity)?;
                require_positive("mean_free_path", j.mean_free_path)?;
                if j.temperatures.is_empty() {
                    return Err(Error::invalid("temperatures", "at least one temperature is required"));
                }
                j.temperatures
                    .iter()
                    .try_for_each(|t| require_positive("temperatures", *t))
            }
            Job::Neuron(d) => d.validate(),
            Job::Network(d) => d.validate(),
            Job::QuantumEvolve(j) => {
                j.spec.validate()?;
                j.init.density_matrix(j.spec.n_levels).map(|_| ())
            }
            Job::QuantumCorrelation(j) => {
                j.spec.validate()?;
                j.init.density_matrix(j.spec.n_levels)?;
                if j.order != 1 && j.order != 2 {
                    return Err(Error::invalid("order", "must be 1 or 2"));
                }
                require_positive("tau_max", j.tau_max)?;
                require_positive("tau_step", j.tau_step)?;
                if let Some(t0) = j.t0 {
                    crate::error::require_non_negative("t0", t0)?;
                }
                Ok(())
            }
            Job::QuantumConverge(j) => {
                j.spec.validate()?;
                if j.levels.len() < 2 || j.levels.windows(2).any(|w| w[1] <= w[0]) || j.levels[0] < 2 {
                    return Err(Error::invalid("levels", "need at least two increasing truncations >= 2"));
                }
                Ok(())
            }
            Job::Analyze(j) => match &j.op {
                AnalysisOp::Spikes { spike } | AnalysisOp::Rate { spike, .. } => {
                    spike.as_ref().map_or(Ok(()), |s| s.validate())
                }
                AnalysisOp::Embed { dim, lag } => {
                    if !(2..=3).contains(dim) {
                        return Err(Error::invalid("op.dim", "must be 2 or 3"));
                    }
                    if *lag == 0 {
                        return Err(Error::invalid("op.lag", "must be at least 1"));
                    }
                    Ok(())
                }
                AnalysisOp::Modulate { f_c, fs, .. } => {
                    require_positive("op.f_c", *f_c)?;
                    require_positive("op.fs", *fs)
                }
                _ => Ok(()),
            },
        }
    }
}

fn unit_state(x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::invalid("law.x", format!("must lie in [0, 1], got {x}")))
    }
}

fn sweep_voltages(v_min: f64, v_max: f64, points: usize) -> Result<Vec<f64>> {
    if !(v_max > v_min) {
        return Err(Error::invalid("v_max", "must exceed v_min"));
    }
    if points < 2 {
        return Err(Error::invalid("points", "need at least 2"));
    }
    Ok((0..points)
        .map(|k| v_min + (v_max - v_min) * k as f64 / (points - 1) as f64)
        .collect())
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("json values serialise") + "\n";
    fs::write(path, text).map_err(|e| Error::io(path.display().to_string(), e))
}

fn column<'a>(header: &[String], rows: &'a [Vec<f64>], name: &str) -> Result<Vec<f64>> {
    let k = header
        .iter()
        .position(|h| h == name)
        .ok_or_else(|| Error::invalid("column", format!("no column `{name}` (have {})", header.join(", "))))?;
    Ok(rows.iter().map(|r| r[k]).collect())
}

/// Runs `job`, writing its results into `out` (which already holds the
/// manifest). Returns a short summary for the terminal.
pub fn execute(job: &Job, out: &Path, plots: bool) -> Result<String> {
    job.validate()?;
    match job {
        Job::DeviceIv(j) => {
            let vs = sweep_voltages(j.v_min, j.v_max, j.points)?;
            let curve = match &j.law {
                IvLaw::Chang { params, x } => IvCurve::sample(&vs, |v| Ok(chang_current(v, *x, params)))?,
                IvLaw::Tunnel { barrier, temperature } => {
                    IvCurve::sample(&vs, |v| nin_tunnel_current(v, barrier, *temperature))?
                }
                IvLaw::Superconducting { params, x } => IvCurve::sample(&vs, |v| Ok(sc_current(v, *x, params)))?,
            };
            curve.write_csv(&out.join("iv.csv"))?;
            if plots {
                let (v, i) = (curve.voltages(), curve.currents());
                plot::line_chart(&out.join("iv.svg"), "I-V", "V (V)", "I (mA)", &[Line { label: "I", x: &v, y: &i }], false)?;
            }
            Ok(format!("{} points written to iv.csv", curve.points.len()))
        }
        Job::DeviceFn(j) => {
            let curve = match &j.iv_path {
                Some(p) => IvCurve::read_csv(Path::new(p))?,
                None => {
                    let vs = sweep_voltages(j.v_min, j.v_max, j.points)?;
                    IvCurve::sample(&vs, |v| nin_tunnel_current(v, &j.barrier, j.temperature))?
                }
            };
            curve.write_csv(&out.join("iv.csv"))?;
            let report = fn_analysis(&curve)?;
            let fn_rows: Vec<[f64; 2]> = curve
                .points
                .iter()
                .filter(|(v, i)| *v > 0.0 && *i > 0.0)
                .map(|(v, i)| [1.0 / v, (i / (v * v)).ln()])
                .collect();
            write_csv(&out.join("fn_points.csv"), &["inv_V", "ln_I_over_V2"], &fn_rows)?;
            write_json(&out.join("fn_report.json"), &serde_json::to_value(&report).expect("report serialises"))?;
            if plots {
                let (x, y): (Vec<f64>, Vec<f64>) = fn_rows.iter().map(|r| (r[0], r[1])).unzip();
                plot::line_chart(&out.join("fn.svg"), "Fowler-Nordheim", "1/V (1/V)", "ln(I/V²)", &[Line { label: "FN", x: &x, y: &y }], false)?;
            }
            Ok(format!(
                "field emission {:.3}..{:.3} V, slope {:.4} V (R² {:.5})",
                report.fe_region.0, report.fe_region.1, report.fe_slope, report.r_squared
            ))
        }
        Job::DeviceCoherence(j) => {
            let rows = j
                .temperatures
                .iter()
                .map(|&t| coherence_length(j.fermi_velocity, j.mean_free_path, t).map(|xi| [t, xi]))
                .collect::<Result<Vec<_>>>()?;
            write_csv(&out.join("coherence.csv"), &["T_K", "xi_nm"], &rows)?;
            Ok(format!("xi_n({} K) = {:.4} nm", rows[0][0], rows[0][1]))
        }
        Job::Neuron(deck) => {
            let tr = deck.run()?;
            tr.write_csv(&out.join("trajectory.csv"))?;
            let cfg = SpikeConfig::auto(&tr.t, &tr.v_o)?;
            let spikes = analysis::detect_spikes(&tr.t, &tr.v_o, &cfg)?;
            spikes.write_csv(&out.join("spikes.csv"))?;
            let kcl = max_kcl_residual(&tr, &deck.circuit);
            write_json(
                &out.join("summary.json"),
                &json!({
                    "samples": tr.len(),
                    "spikes": spikes.len(),
                    "mean_rate_khz": spikes.mean_rate_khz(),
                    "spike_config": cfg,
                    "max_kcl_residual_mA": kcl,
                }),
            )?;
            if plots {
                plot::line_chart(&out.join("v_o.svg"), "output", "t (μs)", "v_o (V)", &[Line { label: "v_o", x: &tr.t, y: &tr.v_o }], false)?;
                plot::line_chart(
                    &out.join("memory.svg"),
                    "memory states",
                    "t (μs)",
                    "x",
                    &[Line { label: "x1", x: &tr.t, y: &tr.x1 }, Line { label: "x2", x: &tr.t, y: &tr.x2 }],
                    false,
                )?;
                plot::line_chart(&out.join("phase.svg"), "phase portrait", "v_o (V)", "dv_o/dt (V/μs)", &[Line { label: "", x: &tr.v_o, y: &tr.u }], false)?;
            }
            Ok(format!("{} samples, {} spikes", tr.len(), spikes.len()))
        }
        Job::Network(deck) => {
            let tr = deck.run()?;
            tr.write_csv(&out.join("trajectory.csv"))?;
            if plots {
                let labels: Vec<String> = (0..tr.neurons.len()).map(|j| format!("n{j}")).collect();
                let lines: Vec<Line> = tr
                    .neurons
                    .iter()
                    .zip(&labels)
                    .map(|(n, l)| Line { label: l, x: &n.t, y: &n.v_o })
                    .collect();
                plot::line_chart(&out.join("v_o.svg"), "network outputs", "t (μs)", "v_o (V)", &lines, false)?;
            }
            Ok(format!("{} neurons, {} samples", tr.neurons.len(), tr.t.len()))
        }
        Job::QuantumEvolve(j) => {
            let rho0 = j.init.density_matrix(j.spec.n_levels)?;
            let evo = evolve(&rho0, &j.spec)?;
            evo.write_csv(&out.join("expectations.csv"))?;
            let last = evo.t.len() - 1;
            write_density_matrix(&out.join("rho_final.csv"), &evo.states[last], evo.t[last])?;
            write_json(
                &out.join("summary.json"),
                &json!({
                    "max_n_cavity": evo.max_cavity_population(),
                    "trace_error": evo.worst.trace_error,
                    "hermiticity_error": evo.worst.hermiticity_error,
                    "min_eigenvalue": evo.worst.min_eigenvalue,
                }),
            )?;
            if plots {
                plot::line_chart(
                    &out.join("expectations.svg"),
                    "expectation values",
                    "t",
                    "population",
                    &[Line { label: "<a†a>", x: &evo.t, y: &evo.n_cavity }, Line { label: "<σ†σ>", x: &evo.t, y: &evo.n_qubit }],
                    false,
                )?;
            }
            Ok(format!("max <a†a> = {:.6}", evo.max_cavity_population()))
        }
        Job::QuantumCorrelation(j) => {
            let rho0 = j.init.density_matrix(j.spec.n_levels)?;
            let (t0, rho_ref) = match j.t0 {
                Some(t0) if t0 == 0.0 => (0.0, rho0),
                Some(t0) => {
                    let spec = QmeSpec { t_end: t0, ..j.spec.clone() };
                    let states = crate::quantum::propagate(&spec, &[&rho0], 0.0, &[t0])?;
                    (t0, states[0][0].clone())
                }
                None => {
                    let evo = evolve(&rho0, &j.spec)?;
                    let k = correlation_origin(&evo, j.spec.pop_floor)?;
                    (evo.t[k], evo.states[k].clone())
                }
            };
            let taus = crate::ode::uniform_grid(0.0, j.tau_max, j.tau_step);
            let series = if j.order == 1 {
                correlation_g1(&j.spec, &rho_ref, t0, &taus)?
            } else {
                correlation_g2(&j.spec, &rho_ref, t0, &taus)?
            };
            let name = format!("g{}", j.order);
            series.write_csv(&out.join(format!("{name}.csv")))?;
            if plots {
                let re: Vec<f64> = series.values.iter().map(|z| z.re).collect();
                let im: Vec<f64> = series.values.iter().map(|z| z.im).collect();
                plot::line_chart(
                    &out.join(format!("{name}.svg")),
                    &name,
                    "τ",
                    &name,
                    &[Line { label: "re", x: &series.tau, y: &re }, Line { label: "im", x: &series.tau, y: &im }],
                    false,
                )?;
            }
            Ok(format!("{name} from t0 = {t0}, {} delays", taus.len()))
        }
        Job::QuantumConverge(j) => {
            let mut rows = Vec::new();
            let mut prev: Option<f64> = None;
            for &n in &j.levels {
                let spec = QmeSpec { n_levels: n, ..j.spec.clone() };
                let evo = evolve(&crate::quantum::ground_state(n), &spec)?;
                let m = evo.max_cavity_population();
                let change = prev.map_or(f64::NAN, |p| (m - p).abs() / m);
                rows.push([n as f64, m, change]);
                prev = Some(m);
            }
            write_csv(&out.join("converge.csv"), &["N", "max_n_cavity", "rel_change"], &rows)?;
            let line: Vec<String> = rows.iter().map(|r| format!("N={} {:.4}", r[0], r[1])).collect();
            Ok(line.join(", "))
        }
        Job::Analyze(j) => analyze(j, out, plots),
    }
}

fn analyze(j: &AnalyzeJob, out: &Path, plots: bool) -> Result<String> {
    let (header, rows) = read_csv(Path::new(&j.input))?;
    if header.is_empty() || rows.is_empty() {
        return Err(Error::invalid("input", "empty table"));
    }
    let t: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    let y = column(&header, &rows, &j.column)?;
    match &j.op {
        AnalysisOp::Spikes { spike } => {
            let cfg = match spike {
                Some(c) => *c,
                None => SpikeConfig::auto(&t, &y)?,
            };
            let train = analysis::detect_spikes(&t, &y, &cfg)?.with_channel(&j.column);
            train.write_csv(&out.join("spikes.csv"))?;
            Ok(format!("{} spikes", train.len()))
        }
        AnalysisOp::Rate { spike, window } => {
            let cfg = match spike {
                Some(c) => *c,
                None => SpikeConfig::auto(&t, &y)?,
            };
            let train = analysis::detect_spikes(&t, &y, &cfg)?;
            let window = match window {
                Some(w) => *w,
                None if train.len() >= 2 => 10.0 * median(&train.isis()),
                None => return Err(Error::Analysis("fewer than two spikes; give an explicit window".into())),
            };
            let rc = analysis::rate_curve(&train, window)?;
            rc.write_csv(&out.join("rate.csv"))?;
            write_json(
                &out.join("summary.json"),
                &json!({"window_us": window, "first_rate_khz": rc.first_rate, "last_rate_khz": rc.last_rate}),
            )?;
            if plots {
                let (x, r): (Vec<f64>, Vec<f64>) = rc.points.iter().copied().unzip();
                plot::line_chart(&out.join("rate.svg"), "firing rate", "t (μs)", "rate (kHz)", &[Line { label: "rate", x: &x, y: &r }], false)?;
            }
            Ok(format!("rate {:.4} -> {:.4} kHz", rc.first_rate, rc.last_rate))
        }
        AnalysisOp::Phase { column_y } => {
            let y2 = column(&header, &rows, column_y)?;
            let pts = analysis::phase_portrait(&y, &y2)?;
            write_csv(&out.join("phase.csv"), &[j.column.as_str(), column_y.as_str()], &pts)?;
            if plots {
                plot::line_chart(&out.join("phase.svg"), "phase portrait", &j.column, column_y, &[Line { label: "", x: &y, y: &y2 }], false)?;
            }
            Ok(format!("{} points", pts.len()))
        }
        AnalysisOp::Embed { dim, lag } => {
            let e = analysis::delay_embed(&y, *dim, *lag)?;
            let names: Vec<String> = (0..*dim).map(|d| format!("x{d}")).collect();
            let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            write_csv(&out.join("embedding.csv"), &refs, &e)?;
            let cd = analysis::correlation_dimension(&e, &analysis::CorrDimConfig::default())?;
            write_json(&out.join("summary.json"), &json!({"correlation_dimension": cd.dimension, "fit_r_squared": cd.r_squared}))?;
            if plots {
                let (a, b): (Vec<f64>, Vec<f64>) = e.iter().map(|r| (r[0], r[1])).unzip();
                plot::line_chart(&out.join("embedding.svg"), "delay embedding", "s(t)", "s(t + lag)", &[Line { label: "", x: &a, y: &b }], false)?;
            }
            Ok(format!("{} rows, correlation dimension {:.3}", e.len(), cd.dimension))
        }
        AnalysisOp::Spectrum { segments } => {
            let dt = analysis::uniform_step(&t)?;
            let sp = analysis::power_spectrum(&y, dt, *segments)?;
            sp.write_csv(&out.join("spectrum.csv"))?;
            write_json(&out.join("summary.json"), &json!({"window": sp.window, "segments": sp.segments, "dominant_MHz": sp.dominant()}))?;
            if plots {
                plot::line_chart(&out.join("spectrum.svg"), "power spectrum", "f (MHz)", "power", &[Line { label: "", x: &sp.freq_mhz, y: &sp.power }], true)?;
            }
            Ok(format!("dominant {:.6} MHz", sp.dominant()))
        }
        AnalysisOp::Segments { segment } => {
            let dt = analysis::uniform_step(&t)?;
            let rep = analysis::itinerancy_segments(&y, t[0], dt, segment)?;
            rep.write_csv(&out.join("segments.csv"))?;
            if plots {
                let spans: Vec<(f64, f64, usize)> = rep.segments.iter().map(|s| (s.t_start, s.t_end, s.mode)).collect();
                plot::timeline(&out.join("segments.svg"), "attractor modes", &spans)?;
            }
            Ok(format!("{} segments, {} modes", rep.segments.len(), rep.n_modes))
        }
        AnalysisOp::Modulate { f_c, fs, q_delay } => {
            let i = analysis::normalize(&y);
            let q: Option<Vec<f64>> = q_delay.map(|d| (0..i.len()).map(|k| if k >= d { i[k - d] } else { 0.0 }).collect());
            let s = analysis::iq_modulate(&i, q.as_deref(), *f_c, *fs)?;
            let (di, dq) = analysis::envelope_demod(&s, *f_c, *fs)?;
            let rows = (0..s.len()).map(|k| [k as f64 / fs, i[k], s[k], di[k], dq[k]]);
            write_csv(&out.join("modulation.csv"), &["t_us", "baseband", "passband", "demod_i", "demod_q"], rows)?;
            let r = pearson(&i, &di);
            write_json(&out.join("summary.json"), &json!({"round_trip_correlation": r}))?;
            Ok(format!("round-trip correlation {r:.4}"))
        }
    }
}
