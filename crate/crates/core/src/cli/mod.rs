//! Command-line front end. Every command resolves its arguments into a
//! [`Job`], writes a manifest holding that job, then executes it.
//!
//! Exit codes: 0 on success, 1 for invalid input (bad flags, configs or
//! files), 2 for numerical or analysis failures.

mod jobs;
mod sweep;

use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

pub use jobs::{
    execute, AnalysisOp, AnalyzeJob, CoherenceJob, ConvergeJob, CorrelationJob, FnJob, InitState, IvJob, IvLaw, Job,
    QuantumJob,
};
pub use sweep::{run_sweep, PointResult, SweepSpec};

use crate::analysis::{SegmentConfig, SpikeConfig};
use crate::device::{BarrierSpec, MemristorParams, SuperconductingParams};
use crate::error::{Error, Result};
use crate::io::{load_config, RunManifest, Validate, OUT_ENV};
use crate::network::NetworkDeck;
use crate::neuron::{NeuronDeck, StimulusSpec};
use crate::quantum::QmeSpec;

#[derive(Parser, Debug)]
#[command(name = "ionic-neuron", version, about = "Memristive neuron, network and Lindblad simulations")]
struct Cli {
    /// Output directory (default: $IONIC_NEURON_OUT/<command> or runs/<command>).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also write SVG charts.
    #[arg(long, global = true)]
    plot: bool,
    /// Seed recorded in the manifest.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Device I–V curves, FN analysis and coherence length.
    #[command(subcommand)]
    Device(DeviceCmd),
    /// Single-neuron runs.
    #[command(subcommand)]
    Neuron(NeuronCmd),
    /// Coupled networks: deck, ring or warm/cryo pair.
    #[command(subcommand)]
    Network(NetworkCmd),
    /// Driven Lindblad model and cavity correlations.
    #[command(subcommand)]
    Quantum(QuantumCmd),
    /// Post-process a CSV column.
    #[command(subcommand)]
    Analyze(AnalyzeCmd),
    /// Run every point of a sweep config in parallel.
    Sweep { config: PathBuf },
    /// Re-run the job recorded in a manifest.
    Replay { manifest: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum LawArg {
    Chang,
    Tunnel,
    Sc,
}

#[derive(Args, Debug)]
struct IvArgs {
    /// JSON job file (an `IvJob`).
    #[arg(long)]
    deck: Option<PathBuf>,
    #[arg(long, value_enum)]
    law: Option<LawArg>,
    #[arg(long, allow_hyphen_values = true)]
    v_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    v_max: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    /// Memory state for the chang and sc laws.
    #[arg(long)]
    x: Option<f64>,
    /// Kelvin, for the tunnel law.
    #[arg(long)]
    temperature: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum DeviceCmd {
    /// Sample a conduction law into an I-V table.
    Iv(IvArgs),
    /// Fowler-Nordheim regime analysis of a tunnel curve.
    Fn {
        #[arg(long)]
        deck: Option<PathBuf>,
        /// Analyse this V_volts,I_mA table instead of sweeping the tunnel law.
        #[arg(long)]
        iv: Option<PathBuf>,
        #[arg(long)]
        v_min: Option<f64>,
        #[arg(long)]
        v_max: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
        #[arg(long)]
        temperature: Option<f64>,
    },
    /// Superconducting I-V branch (voltages in V).
    Sc(IvArgs),
    /// Proximity coherence length.
    Coherence {
        /// nm/ps.
        #[arg(long, default_value_t = 1000.0)]
        v_f: f64,
        /// nm.
        #[arg(long, default_value_t = 5.0)]
        l_n: f64,
        /// K; repeat for several temperatures.
        #[arg(long = "temperature", default_values_t = [8.1])]
        temperatures: Vec<f64>,
    },
}

#[derive(Subcommand, Debug)]
enum NeuronCmd {
    /// Integrate one neuron deck.
    Run {
        #[arg(long)]
        deck: Option<PathBuf>,
        #[arg(long)]
        t_end: Option<f64>,
        /// Replace the stimulus with a DC level (V).
        #[arg(long, allow_hyphen_values = true)]
        bias: Option<f64>,
    },
}

#[derive(Subcommand, Debug)]
enum NetworkCmd {
    /// Integrate a network deck.
    Run {
        #[arg(long)]
        deck: PathBuf,
        #[arg(long)]
        t_end: Option<f64>,
    },
    /// Directed ring of identical spiking neurons.
    Ring {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        gain: Option<f64>,
        #[arg(long)]
        delay: Option<f64>,
        #[arg(long)]
        t_end: Option<f64>,
    },
    /// Warm neuron coupled to a cryogenic neuron.
    Hybrid {
        #[arg(long, allow_hyphen_values = true)]
        gain: Option<f64>,
        #[arg(long)]
        t_end: Option<f64>,
    },
}

#[derive(Args, Debug)]
struct QmeArgs {
    /// JSON model file (a `QmeSpec`).
    #[arg(long)]
    deck: Option<PathBuf>,
    /// Drive intensity.
    #[arg(long = "A", allow_hyphen_values = true)]
    a_drive: Option<f64>,
    /// Cavity truncation.
    #[arg(long = "N")]
    n_levels: Option<usize>,
    /// Rate applied to every decay channel.
    #[arg(long)]
    decay: Option<f64>,
    /// Drive time scale.
    #[arg(long)]
    e: Option<f64>,
    #[arg(long)]
    g: Option<f64>,
    #[arg(long)]
    t_end: Option<f64>,
    /// ground, fock:<n>, coherent:<re>[,<im>] or thermal:<nbar>.
    #[arg(long, default_value = "ground")]
    init: String,
}

#[derive(Args, Debug)]
struct CorrArgs {
    #[command(flatten)]
    qme: QmeArgs,
    /// Correlation origin (default: first time the cavity population
    /// reaches the floor).
    #[arg(long)]
    t0: Option<f64>,
    #[arg(long, default_value_t = 2.0)]
    tau_max: f64,
    #[arg(long, default_value_t = 0.05)]
    tau_step: f64,
}

#[derive(Subcommand, Debug)]
enum QuantumCmd {
    /// Density-matrix evolution and expectation values.
    Evolve(QmeArgs),
    /// First-order two-time correlation.
    G1(CorrArgs),
    /// Second-order two-time correlation.
    G2(CorrArgs),
    /// Peak cavity population against truncation.
    Converge {
        #[command(flatten)]
        qme: QmeArgs,
        #[arg(long, value_delimiter = ',', default_values_t = [4usize, 8, 12])]
        levels: Vec<usize>,
    },
}

#[derive(Args, Debug)]
struct Input {
    /// CSV with time (μs) in the first column.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "v_o")]
    column: String,
}

#[derive(Args, Debug)]
struct SpikeArgs {
    #[arg(long, allow_hyphen_values = true)]
    threshold: Option<f64>,
    #[arg(long)]
    band: Option<f64>,
    #[arg(long)]
    refractory: Option<f64>,
}

impl SpikeArgs {
    fn resolve(&self) -> Option<SpikeConfig> {
        self.threshold.map(|threshold| SpikeConfig {
            threshold,
            hysteresis_band: self.band.unwrap_or(0.1 * threshold.abs()),
            refractory: self.refractory.unwrap_or(0.0),
        })
    }
}

#[derive(Subcommand, Debug)]
enum AnalyzeCmd {
    Spikes {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        spike: SpikeArgs,
    },
    Rate {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        spike: SpikeArgs,
        /// μs.
        #[arg(long)]
        window: Option<f64>,
    },
    Phase {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        column_y: String,
    },
    Embed {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// Samples.
        #[arg(long)]
        lag: usize,
    },
    Spectrum {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1)]
        segments: usize,
    },
    Segments {
        #[command(flatten)]
        input: Input,
        /// Samples per window.
        #[arg(long)]
        window: Option<usize>,
        #[arg(long)]
        penalty: Option<f64>,
    },
    Modulate {
        #[command(flatten)]
        input: Input,
        /// Carrier, MHz.
        #[arg(long, default_value_t = 20.0)]
        f_c: f64,
        /// Sample rate, MHz.
        #[arg(long, default_value_t = 200.0)]
        fs: f64,
        #[arg(long)]
        q_delay: Option<usize>,
    },
}

fn parse_init(s: &str) -> Result<InitState> {
    let bad = || Error::invalid("init", format!("cannot parse `{s}`"));
    let (kind, arg) = s.split_once(':').unwrap_or((s, ""));
    let num = |a: &str| a.trim().parse::<f64>().map_err(|_| bad());
    match kind {
        "ground" => Ok(InitState::Ground),
        "fock" => Ok(InitState::Fock {
            n: arg.trim().parse().map_err(|_| bad())?,
        }),
        "coherent" => {
            let (re, im) = arg.split_once(',').unwrap_or((arg, "0"));
            Ok(InitState::Coherent { re: num(re)?, im: num(im)? })
        }
        "thermal" => Ok(InitState::Thermal { nbar: num(arg)? }),
        _ => Err(bad()),
    }
}

fn qme_spec(a: &QmeArgs) -> Result<QmeSpec> {
    let mut spec: QmeSpec = match &a.deck {
        Some(p) => load_config(p)?,
        None => QmeSpec::default(),
    };
    if let Some(v) = a.a_drive {
        spec.a_drive = v;
    }
    if let Some(v) = a.n_levels {
        spec.n_levels = v;
    }
    if let Some(v) = a.decay {
        spec = spec.with_decay(v);
    }
    if let Some(v) = a.e {
        spec.e = v;
    }
    if let Some(v) = a.g {
        spec.g = v;
    }
    if let Some(v) = a.t_end {
        spec.t_end = v;
    }
    Ok(spec)
}

fn load_job<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(&name, e))?;
    serde_json::from_str(&text).map_err(|source| Error::Json { path: name, source })
}

fn iv_job(a: &IvArgs, forced: Option<LawArg>) -> Result<Job> {
    let mut job: IvJob = match &a.deck {
        Some(p) => load_job(p)?,
        None => match forced.or(a.law).unwrap_or(LawArg::Chang) {
            LawArg::Chang => IvJob {
                law: IvLaw::Chang {
                    params: MemristorParams::default(),
                    x: 0.5,
                },
                v_min: -1.0,
                v_max: 1.0,
                points: 201,
            },
            LawArg::Tunnel => IvJob {
                law: IvLaw::Tunnel {
                    barrier: BarrierSpec::default(),
                    temperature: 300.0,
                },
                v_min: -3.0,
                v_max: 3.0,
                points: 121,
            },
            LawArg::Sc => IvJob {
                law: IvLaw::Superconducting {
                    params: SuperconductingParams::default(),
                    x: 0.0,
                },
                v_min: -1e-3,
                v_max: 1e-3,
                points: 401,
            },
        },
    };
    if let Some(v) = a.v_min {
        job.v_min = v;
    }
    if let Some(v) = a.v_max {
        job.v_max = v;
    }
    if let Some(v) = a.points {
        job.points = v;
    }
    match &mut job.law {
        IvLaw::Chang { x, .. } | IvLaw::Superconducting { x, .. } => {
            if let Some(v) = a.x {
                *x = v;
            }
        }
        IvLaw::Tunnel { temperature, .. } => {
            if let Some(v) = a.temperature {
                *temperature = v;
            }
        }
    }
    Ok(Job::DeviceIv(job))
}

/// Resolves a parsed command into its name, config path and job.
fn resolve(cmd: &Command) -> Result<(&'static str, Option<PathBuf>, Job)> {
    Ok(match cmd {
        Command::Device(d) => match d {
            DeviceCmd::Iv(a) => ("device iv", a.deck.clone(), iv_job(a, None)?),
            DeviceCmd::Sc(a) => ("device sc", a.deck.clone(), iv_job(a, Some(LawArg::Sc))?),
            DeviceCmd::Fn {
                deck,
                iv,
                v_min,
                v_max,
                points,
                temperature,
            } => {
                let mut job: FnJob = match deck {
                    Some(p) => load_job(p)?,
                    None => FnJob {
                        iv_path: None,
                        barrier: BarrierSpec::default(),
                        temperature: 300.0,
                        v_min: 0.05,
                        v_max: 8.0,
                        points: 160,
                    },
                };
                if let Some(p) = iv {
                    job.iv_path = Some(p.display().to_string());
                }
                job.v_min = v_min.unwrap_or(job.v_min);
                job.v_max = v_max.unwrap_or(job.v_max);
                job.points = points.unwrap_or(job.points);
                job.temperature = temperature.unwrap_or(job.temperature);
                ("device fn", deck.clone(), Job::DeviceFn(job))
            }
            DeviceCmd::Coherence { v_f, l_n, temperatures } => (
                "device coherence",
                None,
                Job::DeviceCoherence(CoherenceJob {
                    fermi_velocity: *v_f,
                    mean_free_path: *l_n,
                    temperatures: temperatures.clone(),
                }),
            ),
        },
        Command::Neuron(NeuronCmd::Run { deck, t_end, bias }) => {
            let mut d: NeuronDeck = match deck {
                Some(p) => load_config(p)?,
                None => NeuronDeck::default(),
            };
            if let Some(t) = t_end {
                d.t_end = *t;
            }
            if let Some(b) = bias {
                d.stimulus = StimulusSpec::dc(*b);
            }
            ("neuron run", deck.clone(), Job::Neuron(d))
        }
        Command::Network(n) => {
            let (name, path, mut d, t_end) = match n {
                NetworkCmd::Run { deck, t_end } => ("network run", Some(deck.clone()), load_config::<NetworkDeck>(deck)?, t_end),
                NetworkCmd::Ring { n, gain, delay, t_end } => {
                    let mut d = crate::decks::ring_deck(*n, gain.unwrap_or(crate::decks::RING_GAIN))?;
                    if let Some(delay) = delay {
                        d.network.edges.iter_mut().for_each(|e| e.delay = *delay);
                    }
                    ("network ring", None, d, t_end)
                }
                NetworkCmd::Hybrid { gain, t_end } => (
                    "network hybrid",
                    None,
                    crate::decks::hybrid_deck(gain.unwrap_or(crate::decks::HYBRID_GAIN))?,
                    t_end,
                ),
            };
            if let Some(t) = t_end {
                d.t_end = *t;
            }
            (name, path, Job::Network(d))
        }
        Command::Quantum(q) => match q {
            QuantumCmd::Evolve(a) => (
                "quantum evolve",
                a.deck.clone(),
                Job::QuantumEvolve(QuantumJob {
                    spec: qme_spec(a)?,
                    init: parse_init(&a.init)?,
                }),
            ),
            QuantumCmd::G1(c) | QuantumCmd::G2(c) => {
                let order = if matches!(q, QuantumCmd::G1(_)) { 1 } else { 2 };
                (
                    if order == 1 { "quantum g1" } else { "quantum g2" },
                    c.qme.deck.clone(),
                    Job::QuantumCorrelation(CorrelationJob {
                        spec: qme_spec(&c.qme)?,
                        init: parse_init(&c.qme.init)?,
                        order,
                        t0: c.t0,
                        tau_max: c.tau_max,
                        tau_step: c.tau_step,
                    }),
                )
            }
            QuantumCmd::Converge { qme, levels } => (
                "quantum converge",
                qme.deck.clone(),
                Job::QuantumConverge(ConvergeJob {
                    spec: qme_spec(qme)?,
                    levels: levels.clone(),
                }),
            ),
        },
        Command::Analyze(a) => {
            let (name, input, op) = match a {
                AnalyzeCmd::Spikes { input, spike } => ("analyze spikes", input, AnalysisOp::Spikes { spike: spike.resolve() }),
                AnalyzeCmd::Rate { input, spike, window } => (
                    "analyze rate",
                    input,
                    AnalysisOp::Rate {
                        spike: spike.resolve(),
                        window: *window,
                    },
                ),
                AnalyzeCmd::Phase { input, column_y } => ("analyze phase", input, AnalysisOp::Phase { column_y: column_y.clone() }),
                AnalyzeCmd::Embed { input, dim, lag } => ("analyze embed", input, AnalysisOp::Embed { dim: *dim, lag: *lag }),
                AnalyzeCmd::Spectrum { input, segments } => ("analyze spectrum", input, AnalysisOp::Spectrum { segments: *segments }),
                AnalyzeCmd::Segments { input, window, penalty } => {
                    let mut segment = SegmentConfig::default();
                    segment.window = window.unwrap_or(segment.window);
                    segment.penalty = penalty.unwrap_or(segment.penalty);
                    ("analyze segments", input, AnalysisOp::Segments { segment })
                }
                AnalyzeCmd::Modulate { input, f_c, fs, q_delay } => (
                    "analyze modulate",
                    input,
                    AnalysisOp::Modulate {
                        f_c: *f_c,
                        fs: *fs,
                        q_delay: *q_delay,
                    },
                ),
            };
            (
                name,
                None,
                Job::Analyze(AnalyzeJob {
                    input: input.input.display().to_string(),
                    column: input.column.clone(),
                    op,
                }),
            )
        }
        Command::Sweep { .. } | Command::Replay { .. } => unreachable!("handled by dispatch"),
    })
}

/// Output directory for a command: `--out`, else the environment root, else
/// `runs/`, joined with the command name.
pub fn output_dir(explicit: Option<&Path>, command: &str) -> PathBuf {
    if let Some(p) = explicit {
        return p.to_path_buf();
    }
    let root = std::env::var_os(OUT_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("runs"));
    root.join(command.replace(' ', "-"))
}

fn run_job(argv: &[String], command: &str, config: Option<&Path>, job: &Job, seed: u64, out: &Path, plots: bool) -> Result<String> {
    job.validate()?;
    let manifest = RunManifest::new(
        argv.to_vec(),
        command,
        config,
        serde_json::to_value(job).expect("jobs serialise"),
        seed,
        out,
    );
    manifest.write(out)?;
    let summary = execute(job, out, plots)?;
    Ok(format!("{summary}\nresults in {}", out.display()))
}

fn sweep_cmd(argv: &[String], spec: &SweepSpec, config: Option<&Path>, seed: u64, out: &Path, plots: bool) -> Result<String> {
    spec.validate()?;
    let manifest = RunManifest::new(
        argv.to_vec(),
        "sweep",
        config,
        serde_json::to_value(spec).expect("sweeps serialise"),
        seed,
        out,
    );
    manifest.write(out)?;
    let results = run_sweep(spec, out, argv, seed, plots)?;
    let failed = results.iter().filter(|r| r.summary.is_err()).count();
    let text = serde_json::to_string_pretty(&results).expect("results serialise") + "\n";
    std::fs::write(out.join("sweep.json"), text).map_err(|e| Error::io(out.display().to_string(), e))?;
    if failed > 0 {
        return Err(Error::Analysis(format!("{failed} of {} sweep points failed (see sweep.json)", results.len())));
    }
    Ok(format!("{} points in {}", results.len(), out.display()))
}

fn dispatch(cli: &Cli, argv: &[String]) -> Result<String> {
    match &cli.cmd {
        Command::Sweep { config } => {
            let spec: SweepSpec = load_config(config)?;
            let out = output_dir(cli.out.as_deref(), "sweep");
            sweep_cmd(argv, &spec, Some(config), cli.seed, &out, cli.plot)
        }
        Command::Replay { manifest } => {
            let m = RunManifest::read(manifest)?;
            let out = output_dir(cli.out.as_deref(), "replay");
            let config = m.config_path.as_deref().map(Path::new);
            if m.command == "sweep" {
                let spec: SweepSpec = serde_json::from_value(m.job).map_err(|e| Error::invalid("job", e.to_string()))?;
                sweep_cmd(argv, &spec, config, m.seed, &out, cli.plot)
            } else {
                let job: Job = serde_json::from_value(m.job).map_err(|e| Error::invalid("job", e.to_string()))?;
                run_job(argv, &m.command, config, &job, m.seed, &out, cli.plot)
            }
        }
        cmd => {
            let (name, config, job) = resolve(cmd)?;
            let out = output_dir(cli.out.as_deref(), name);
            run_job(argv, name, config.as_deref(), &job, cli.seed, &out, cli.plot)
        }
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code.
pub fn run(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    match dispatch(&cli, &argv) {
        Ok(msg) => {
            println!("{msg}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
