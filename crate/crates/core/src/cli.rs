//! Command-line front end: `target`, `train` and `demo`.
//!
//! A run is described by a JSON [`RunConfig`]; `--seed` and `--out-dir`
//! override the corresponding fields. Structured results are written as JSON,
//! time series as CSV.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::adversarial::{train, TrainConfig, TrainTrace};
use crate::discriminator::DiscriminatorConfig;
use crate::error::{QuganError, Result};
use crate::fourier::qft;
use crate::generator::{generate_state, GeneratorParams};
use crate::phase_estimation::qpe_distribution;
use crate::qneuron::{
    decode_signed, min_signed_ancillas, mode, neuron_forward, qip, qip_signed_distribution,
    ActivationFn, WeightVector,
};
use crate::statevec::{diagonal, StateVector};
use crate::svi::{density, discretize, SviParams};

/// Header of the per-epoch trace.
pub const TRACE_HEADER: &str = "epoch,score,fidelity,kl,trace_distance";

/// Serializable choice of activation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ActivationSpec {
    Sigmoid,
    HalfSigmoid,
    Linear { scale: f64 },
    Constant { value: f64 },
}

impl ActivationSpec {
    pub fn to_fn(self) -> ActivationFn {
        match self {
            ActivationSpec::Sigmoid => ActivationFn::Sigmoid,
            ActivationSpec::HalfSigmoid => ActivationFn::HalfSigmoid,
            ActivationSpec::Linear { scale } => ActivationFn::Linear(scale),
            ActivationSpec::Constant { value } => ActivationFn::Constant(value),
        }
    }

    /// `sigmoid`, `half_sigmoid`, `linear:<scale>` or `constant:<value>`.
    pub fn parse(s: &str) -> std::result::Result<Self, String> {
        let (kind, arg) = match s.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (s, None),
        };
        let num = |a: Option<&str>| -> std::result::Result<f64, String> {
            a.ok_or_else(|| format!("activation `{kind}` needs a value"))?
                .parse()
                .map_err(|e| format!("bad activation value: {e}"))
        };
        match kind {
            "sigmoid" => Ok(ActivationSpec::Sigmoid),
            "half_sigmoid" => Ok(ActivationSpec::HalfSigmoid),
            "linear" => Ok(ActivationSpec::Linear { scale: num(arg)? }),
            "constant" => Ok(ActivationSpec::Constant { value: num(arg)? }),
            _ => Err(format!("unknown activation `{s}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DiscriminatorSection {
    pub m1: usize,
    /// Defaults to the fewest ancillas that keep signed readouts unambiguous.
    pub m2: Option<usize>,
    pub activation: ActivationSpec,
}

impl Default for DiscriminatorSection {
    fn default() -> Self {
        Self {
            m1: 1,
            m2: None,
            activation: ActivationSpec::HalfSigmoid,
        }
    }
}

/// Everything a run needs. Unknown keys are rejected.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub n_qubits: usize,
    pub epochs: usize,
    pub n_d: usize,
    pub n_g: usize,
    pub lr_d: f64,
    pub lr_g: f64,
    pub shots: usize,
    pub seed: u64,
    pub fd_step: f64,
    pub theta_init_max: f64,
    pub parallel: bool,
    pub svi: SviParams,
    pub discriminator: DiscriminatorSection,
    pub out_dir: PathBuf,
    /// Points of the density curve written by `target`.
    pub density_points: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        let t = TrainConfig::new(4);
        Self {
            n_qubits: t.n_qubits,
            epochs: t.epochs,
            n_d: t.n_d,
            n_g: t.n_g,
            lr_d: t.lr_d,
            lr_g: t.lr_g,
            shots: t.shots,
            seed: t.seed,
            fd_step: t.fd_step,
            theta_init_max: t.theta_init_max,
            parallel: t.parallel,
            svi: SviParams::REFERENCE,
            discriminator: DiscriminatorSection::default(),
            out_dir: PathBuf::from("out"),
            density_points: 401,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| QuganError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn discriminator_config(&self) -> DiscriminatorConfig {
        DiscriminatorConfig {
            m1: self.discriminator.m1,
            m2: self
                .discriminator
                .m2
                .unwrap_or_else(|| min_signed_ancillas(self.n_qubits)),
            activation: self.discriminator.activation.to_fn(),
        }
    }

    pub fn train_config(&self) -> TrainConfig {
        TrainConfig {
            n_qubits: self.n_qubits,
            epochs: self.epochs,
            n_d: self.n_d,
            n_g: self.n_g,
            lr_d: self.lr_d,
            lr_g: self.lr_g,
            shots: self.shots,
            seed: self.seed,
            fd_step: self.fd_step,
            theta_init_max: self.theta_init_max,
            parallel: self.parallel,
            discriminator: self.discriminator_config(),
        }
    }
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    let mut text =
        serde_json::to_string_pretty(value).map_err(|e| QuganError::Io(e.to_string()))?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

/// Writes `target.json` (bin edges, masses, truncated mass) and
/// `density.csv` (`k,density` on `[−1, 1]`). Returns the written paths.
pub fn cmd_target(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    cfg.svi.validate()?;
    let disc = discretize(&cfg.svi, cfg.n_qubits)?;
    fs::create_dir_all(&cfg.out_dir)?;

    let target_path = cfg.out_dir.join("target.json");
    write_json(
        &target_path,
        &json!({
            "n_qubits": cfg.n_qubits,
            "svi": cfg.svi,
            "bin_edges": disc.bin_edges,
            "masses": disc.distribution.masses(),
            "raw_masses": disc.raw_masses,
            "truncated_mass": disc.truncated_mass,
        }),
    )?;

    let points = cfg.density_points.max(2);
    let mut csv = String::from("k,density\n");
    for i in 0..points {
        let k = -1.0 + 2.0 * i as f64 / (points - 1) as f64;
        writeln!(csv, "{k},{}", density(&cfg.svi, k)?).expect("write to string");
    }
    let density_path = cfg.out_dir.join("density.csv");
    fs::write(&density_path, csv)?;
    Ok(vec![target_path, density_path])
}

/// The per-epoch CSV body for a trace.
pub fn trace_csv(trace: &TrainTrace) -> String {
    let mut csv = format!("{TRACE_HEADER}\n");
    for r in &trace.records {
        writeln!(
            csv,
            "{},{},{},{},{}",
            r.epoch, r.score, r.fidelity, r.kl, r.trace_distance
        )
        .expect("write to string");
    }
    csv
}

/// Trains on the discretized SVI target and writes `trace.csv` and
/// `result.json`. Returns the written paths.
pub fn cmd_train(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let tc = cfg.train_config();
    tc.validate()?;
    cfg.svi.validate()?;
    let target = discretize(&cfg.svi, cfg.n_qubits)?.distribution;
    let trace = train(&tc, &target)?;
    fs::create_dir_all(&cfg.out_dir)?;

    let trace_path = cfg.out_dir.join("trace.csv");
    fs::write(&trace_path, trace_csv(&trace))?;

    let last = trace.last();
    let generated = generate_state(cfg.n_qubits, &GeneratorParams::new(last.theta.clone())?)?;
    let result_path = cfg.out_dir.join("result.json");
    write_json(
        &result_path,
        &json!({
            "config": cfg,
            "theta": last.theta,
            "w": last.w,
            "target_masses": target.masses(),
            "generated_masses": generated.probabilities(),
            "initial": {
                "score": trace.initial.score,
                "fidelity": trace.initial.fidelity,
                "kl": trace.initial.kl,
                "trace_distance": trace.initial.trace_distance,
            },
            "final": {
                "epoch": last.epoch,
                "score": last.score,
                "fidelity": last.fidelity,
                "kl": last.kl,
                "trace_distance": last.trace_distance,
            },
        }),
    )?;
    Ok(vec![trace_path, result_path])
}

#[derive(Debug, Clone, Subcommand)]
pub enum DemoCommand {
    /// Amplitudes of the QFT of a basis state.
    Qft {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        basis: usize,
    },
    /// Readout distribution of phase estimation for `diag(1, e^{2iπφ})` on `|1⟩`.
    Qpe {
        #[arg(long)]
        phase: f64,
        #[arg(long, default_value_t = 3)]
        ancillas: usize,
    },
    /// Inner-product readout distribution and estimate.
    Qip(QipArgs),
    /// Activation register distribution of a single neuron.
    Neuron {
        #[arg(
            long,
            value_delimiter = ',',
            num_args = 1,
            allow_hyphen_values = true,
            required = true
        )]
        x: Vec<f64>,
        #[arg(
            long,
            value_delimiter = ',',
            num_args = 1,
            allow_hyphen_values = true,
            required = true
        )]
        w: Vec<f64>,
        #[arg(long, default_value_t = 1)]
        precision: usize,
        #[arg(long, default_value_t = 2)]
        m1: usize,
        #[arg(long, default_value_t = 2)]
        m2: usize,
        #[arg(long, default_value = "sigmoid", value_parser = ActivationSpec::parse)]
        activation: ActivationSpec,
    },
}

#[derive(Debug, Clone, Args)]
pub struct QipArgs {
    #[arg(
        long,
        value_delimiter = ',',
        num_args = 1,
        allow_hyphen_values = true,
        required = true
    )]
    x: Vec<f64>,
    #[arg(
        long,
        value_delimiter = ',',
        num_args = 1,
        allow_hyphen_values = true,
        required = true
    )]
    w: Vec<f64>,
    #[arg(long, default_value_t = 1)]
    precision: usize,
    #[arg(long, default_value_t = 1)]
    ancillas: usize,
    /// Use the halved-phase scheme for negative weights.
    #[arg(long)]
    signed: bool,
}

/// Prints the demo output as JSON lines into `out`.
pub fn cmd_demo(cmd: &DemoCommand, out: &mut String) -> Result<()> {
    let mut line = |v: serde_json::Value| {
        out.push_str(&v.to_string());
        out.push('\n');
    };
    match cmd {
        DemoCommand::Qft { n, basis } => {
            let s = qft(&StateVector::basis(*n, *basis)?);
            for (k, a) in s.amplitudes().iter().enumerate() {
                line(json!({"outcome": k, "re": a.re, "im": a.im, "prob": a.norm_sqr()}));
            }
        }
        DemoCommand::Qpe { phase, ancillas } => {
            let u = diagonal(&[0.0, *phase])?;
            let probs = qpe_distribution(&u, &StateVector::basis(1, 1)?, *ancillas)?;
            for (k, p) in probs.iter().enumerate() {
                line(
                    json!({"outcome": k, "phase": k as f64 / (1u64 << ancillas) as f64, "prob": p}),
                );
            }
        }
        DemoCommand::Qip(a) => {
            let w = WeightVector::new(a.w.clone())?;
            let x = &a.x;
            let (probs, value): (Vec<f64>, Box<dyn Fn(usize) -> f64>) = if a.signed {
                let m = a.ancillas;
                (
                    qip_signed_distribution(x, &w, m, a.precision)?,
                    Box::new(move |k| decode_signed(k, m)),
                )
            } else {
                (
                    qip(x, &w, a.ancillas, a.precision)?.distribution,
                    Box::new(|k| k as f64),
                )
            };
            for (k, p) in probs.iter().enumerate() {
                line(json!({"outcome": k, "value": value(k), "prob": p}));
            }
            line(json!({"estimate": value(mode(&probs))}));
        }
        DemoCommand::Neuron {
            x,
            w,
            precision,
            m1,
            m2,
            activation,
        } => {
            let w = WeightVector::new(w.clone())?;
            let probs = neuron_forward(x, &w, &activation.to_fn(), *m1, *m2, *precision)?;
            for (k, p) in probs.iter().enumerate() {
                line(json!({"outcome": k, "phase": k as f64 / (1u64 << m1) as f64, "prob": p}));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Parser)]
#[command(
    name = "qugan",
    version,
    about = "Quantum GAN simulation on an SVI target"
)]
pub struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Overrides the configured seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Overrides the configured output directory.
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Discretize the SVI density and write the target distribution.
    Target,
    /// Train the generator and discriminator against the SVI target.
    Train,
    /// Evaluate a primitive and print its exact output as JSON lines.
    #[command(subcommand)]
    Demo(DemoCommand),
}

fn resolve_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(dir) = &cli.out_dir {
        cfg.out_dir = dir.clone();
    }
    Ok(cfg)
}

fn execute(cli: &Cli) -> Result<String> {
    let mut out = String::new();
    match &cli.command {
        Command::Target => {
            for p in cmd_target(&resolve_config(cli)?)? {
                writeln!(out, "wrote {}", p.display()).expect("write to string");
            }
        }
        Command::Train => {
            for p in cmd_train(&resolve_config(cli)?)? {
                writeln!(out, "wrote {}", p.display()).expect("write to string");
            }
        }
        Command::Demo(d) => cmd_demo(d, &mut out)?,
    }
    Ok(out)
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            print!("{out}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                QuganError::Config(_)
                | QuganError::OutOfDomain { .. }
                | QuganError::InvalidArgument(_) => 2,
                _ => 1,
            }
        }
    }
}
