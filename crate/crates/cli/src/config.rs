//! Run specifications: a TOML config file plus flag overrides, flags winning.
//! Unknown keys in the file are rejected.

use std::path::Path;

use serde::Deserialize;

use vqekit_core::adapt::{AdaptConfig, GradientNorm};
use vqekit_core::ansatz::Entanglement;
use vqekit_core::optim::{FdBfgsConfig, NelderMeadConfig, OptimizerKind, SpsaConfig};
use vqekit_core::pauli::PauliOp;

use crate::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnsatzChoice {
    Hea,
    Uccsd,
    AdaptFermionic,
    AdaptQubit,
    AdaptQeb,
}

impl AnsatzChoice {
    pub fn parse(s: &str) -> Result<AnsatzChoice> {
        match s {
            "hea" => Ok(AnsatzChoice::Hea),
            "uccsd" => Ok(AnsatzChoice::Uccsd),
            "adapt-ferm" => Ok(AnsatzChoice::AdaptFermionic),
            "adapt-qubit" => Ok(AnsatzChoice::AdaptQubit),
            "adapt-qeb" => Ok(AnsatzChoice::AdaptQeb),
            other => Err(CliError::config(format!(
                "unknown ansatz `{other}` (expected hea, uccsd, adapt-ferm, adapt-qubit, adapt-qeb)"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            AnsatzChoice::Hea => "hea",
            AnsatzChoice::Uccsd => "uccsd",
            AnsatzChoice::AdaptFermionic => "adapt-ferm",
            AnsatzChoice::AdaptQubit => "adapt-qubit",
            AnsatzChoice::AdaptQeb => "adapt-qeb",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptimizerChoice {
    FdBfgs,
    NelderMead,
    Spsa,
}

impl OptimizerChoice {
    pub fn parse(s: &str) -> Result<OptimizerChoice> {
        match s {
            "fd-bfgs" => Ok(OptimizerChoice::FdBfgs),
            "nelder-mead" => Ok(OptimizerChoice::NelderMead),
            "spsa" => Ok(OptimizerChoice::Spsa),
            other => Err(CliError::config(format!(
                "unknown optimizer `{other}` (expected fd-bfgs, nelder-mead, spsa)"
            ))),
        }
    }
}

/// Hardware-efficient-ansatz settings.
#[derive(Debug, Clone)]
pub struct HeaSpec {
    pub reps: usize,
    pub axes: Vec<PauliOp>,
    pub entanglement: Entanglement,
    /// Random restarts sharing the evaluation budget.
    pub starts: usize,
    /// Half-width of the uniform initial-angle distribution (radians).
    pub init_scale: f64,
}

impl Default for HeaSpec {
    fn default() -> HeaSpec {
        HeaSpec {
            reps: 3,
            axes: vec![PauliOp::Y, PauliOp::Z],
            entanglement: Entanglement::Linear,
            starts: 8,
            init_scale: 0.4,
        }
    }
}

pub fn parse_axes(s: &str) -> Result<Vec<PauliOp>> {
    let mut axes = Vec::new();
    for ch in s.chars() {
        match ch.to_ascii_uppercase() {
            'X' => axes.push(PauliOp::X),
            'Y' => axes.push(PauliOp::Y),
            'Z' => axes.push(PauliOp::Z),
            other => return Err(CliError::config(format!("invalid rotation axis `{other}`"))),
        }
    }
    if axes.is_empty() {
        return Err(CliError::config("at least one rotation axis is required"));
    }
    Ok(axes)
}

pub fn parse_entanglement(s: &str) -> Result<Entanglement> {
    match s {
        "linear" => Ok(Entanglement::Linear),
        "full" => Ok(Entanglement::Full),
        other => Err(CliError::config(format!(
            "unknown entanglement `{other}` (expected linear or full)"
        ))),
    }
}

pub fn parse_gradient_norm(s: &str) -> Result<GradientNorm> {
    match s {
        "l2" => Ok(GradientNorm::L2),
        "max" => Ok(GradientNorm::Max),
        other => Err(CliError::config(format!("unknown gradient norm `{other}` (expected l2 or max)"))),
    }
}

/// Fully resolved run specification.
#[derive(Debug, Clone)]
pub struct RunSpec {
    pub ansatz: AnsatzChoice,
    pub optimizer: OptimizerChoice,
    pub epsilon: f64,
    pub max_operators: usize,
    pub top_k: usize,
    pub keep_fraction: f64,
    pub seed: u64,
    /// Objective-evaluation budget: total across restarts for HEA and
    /// direct runs, per inner optimization for adaptive runs.
    pub max_evals: u64,
    pub gradient_norm: GradientNorm,
    pub hea: HeaSpec,
    /// Report measured wall time in the CSV instead of the deterministic
    /// `0.000` placeholder.
    pub timing: bool,
}

impl Default for RunSpec {
    fn default() -> RunSpec {
        RunSpec {
            ansatz: AnsatzChoice::Uccsd,
            optimizer: OptimizerChoice::FdBfgs,
            epsilon: 1e-3,
            max_operators: 30,
            top_k: 3,
            keep_fraction: 0.25,
            seed: 0,
            max_evals: 3000,
            gradient_norm: GradientNorm::L2,
            hea: HeaSpec::default(),
            timing: false,
        }
    }
}

impl RunSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0) {
            return Err(CliError::config("epsilon must be positive"));
        }
        if self.max_operators == 0 {
            return Err(CliError::config("max-operators must be at least 1"));
        }
        if self.top_k == 0 {
            return Err(CliError::config("top-k must be at least 1"));
        }
        if !(self.keep_fraction > 0.0 && self.keep_fraction <= 1.0) {
            return Err(CliError::config("keep-fraction must be in (0, 1]"));
        }
        if self.max_evals == 0 {
            return Err(CliError::config("max-evals must be at least 1"));
        }
        if self.hea.reps == 0 || self.hea.starts == 0 {
            return Err(CliError::config("hea reps and starts must be at least 1"));
        }
        Ok(())
    }

    /// Optimizer instance for one optimization run under `budget` evals.
    pub fn optimizer_kind(&self, budget: u64) -> OptimizerKind {
        match self.optimizer {
            OptimizerChoice::FdBfgs => OptimizerKind::FdBfgs(FdBfgsConfig {
                max_evals: budget,
                max_iter: usize::MAX / 2,
                ..FdBfgsConfig::default()
            }),
            OptimizerChoice::NelderMead => {
                OptimizerKind::NelderMead(NelderMeadConfig { max_evals: budget, ..Default::default() })
            }
            OptimizerChoice::Spsa => OptimizerKind::Spsa(SpsaConfig {
                max_iter: (budget.saturating_sub(1) / 2) as usize,
                seed: self.seed,
                ..Default::default()
            }),
        }
    }

    pub fn adapt_config(&self) -> AdaptConfig {
        AdaptConfig {
            epsilon: self.epsilon,
            max_operators: self.max_operators,
            optimizer: self.optimizer_kind(self.max_evals),
            qeb_top_k: self.top_k,
            gradient_norm: self.gradient_norm,
        }
    }
}

/// The config-file image of [`RunSpec`]; every field optional, unknown keys
/// rejected.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub ansatz: Option<String>,
    pub optimizer: Option<String>,
    pub epsilon: Option<f64>,
    pub max_operators: Option<usize>,
    pub top_k: Option<usize>,
    pub keep_fraction: Option<f64>,
    pub seed: Option<u64>,
    pub max_evals: Option<u64>,
    pub gradient_norm: Option<String>,
    pub timing: Option<bool>,
    pub hea: Option<FileHeaConfig>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileHeaConfig {
    pub reps: Option<usize>,
    pub axes: Option<String>,
    pub entanglement: Option<String>,
    pub starts: Option<usize>,
    pub init_scale: Option<f64>,
}

pub fn load_file_config(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("reading config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::config(format!("config {}: {e}", path.display())))
}

/// Flag-level overrides; `None` means "not given on the command line".
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub ansatz: Option<String>,
    pub optimizer: Option<String>,
    pub epsilon: Option<f64>,
    pub max_operators: Option<usize>,
    pub top_k: Option<usize>,
    pub keep_fraction: Option<f64>,
    pub seed: Option<u64>,
    pub max_evals: Option<u64>,
    pub gradient_norm: Option<String>,
    pub timing: bool,
    pub hea_reps: Option<usize>,
    pub hea_axes: Option<String>,
    pub hea_entanglement: Option<String>,
    pub hea_starts: Option<usize>,
    pub hea_init_scale: Option<f64>,
}

/// Resolution order: built-in defaults, then the config file, then flags.
pub fn resolve_spec(file: Option<FileConfig>, flags: &Overrides) -> Result<RunSpec> {
    let mut spec = RunSpec::default();
    if let Some(cfg) = file {
        if let Some(v) = cfg.ansatz {
            spec.ansatz = AnsatzChoice::parse(&v)?;
        }
        if let Some(v) = cfg.optimizer {
            spec.optimizer = OptimizerChoice::parse(&v)?;
        }
        if let Some(v) = cfg.epsilon {
            spec.epsilon = v;
        }
        if let Some(v) = cfg.max_operators {
            spec.max_operators = v;
        }
        if let Some(v) = cfg.top_k {
            spec.top_k = v;
        }
        if let Some(v) = cfg.keep_fraction {
            spec.keep_fraction = v;
        }
        if let Some(v) = cfg.seed {
            spec.seed = v;
        }
        if let Some(v) = cfg.max_evals {
            spec.max_evals = v;
        }
        if let Some(v) = cfg.gradient_norm {
            spec.gradient_norm = parse_gradient_norm(&v)?;
        }
        if let Some(v) = cfg.timing {
            spec.timing = v;
        }
        if let Some(hea) = cfg.hea {
            if let Some(v) = hea.reps {
                spec.hea.reps = v;
            }
            if let Some(v) = hea.axes {
                spec.hea.axes = parse_axes(&v)?;
            }
            if let Some(v) = hea.entanglement {
                spec.hea.entanglement = parse_entanglement(&v)?;
            }
            if let Some(v) = hea.starts {
                spec.hea.starts = v;
            }
            if let Some(v) = hea.init_scale {
                spec.hea.init_scale = v;
            }
        }
    }

    if let Some(v) = &flags.ansatz {
        spec.ansatz = AnsatzChoice::parse(v)?;
    }
    if let Some(v) = &flags.optimizer {
        spec.optimizer = OptimizerChoice::parse(v)?;
    }
    if let Some(v) = flags.epsilon {
        spec.epsilon = v;
    }
    if let Some(v) = flags.max_operators {
        spec.max_operators = v;
    }
    if let Some(v) = flags.top_k {
        spec.top_k = v;
    }
    if let Some(v) = flags.keep_fraction {
        spec.keep_fraction = v;
    }
    if let Some(v) = flags.seed {
        spec.seed = v;
    }
    if let Some(v) = flags.max_evals {
        spec.max_evals = v;
    }
    if let Some(v) = &flags.gradient_norm {
        spec.gradient_norm = parse_gradient_norm(v)?;
    }
    if flags.timing {
        spec.timing = true;
    }
    if let Some(v) = flags.hea_reps {
        spec.hea.reps = v;
    }
    if let Some(v) = &flags.hea_axes {
        spec.hea.axes = parse_axes(v)?;
    }
    if let Some(v) = &flags.hea_entanglement {
        spec.hea.entanglement = parse_entanglement(v)?;
    }
    if let Some(v) = flags.hea_starts {
        spec.hea.starts = v;
    }
    if let Some(v) = flags.hea_init_scale {
        spec.hea.init_scale = v;
    }

    spec.validate()?;
    Ok(spec)
}
