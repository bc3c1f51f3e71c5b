use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use vqekit_cli::config::{load_file_config, resolve_spec, Overrides, RunSpec};
use vqekit_cli::report::{
    read_existing_labels, render_csv, render_csv_with_resumed, to_json_pretty, write_text, Row,
};
use vqekit_cli::runner::{load_molecule, pool_report, run_one, sweep_inputs};
use vqekit_cli::{CliError, Result};

/// Variational-eigensolver toolkit on a statevector simulator: single-point
/// runs, potential-energy-surface sweeps, operator-pool dumps, and exact
/// diagonalization baselines over FCIDUMP inputs.
#[derive(Parser)]
#[command(name = "vqekit", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpecFlags {
    /// TOML config file; command-line flags override its values.
    #[arg(long, env = "VQEKIT_CONFIG")]
    config: Option<PathBuf>,
    /// Ansatz: hea, uccsd, adapt-ferm, adapt-qubit, adapt-qeb.
    #[arg(long, env = "VQEKIT_ANSATZ")]
    ansatz: Option<String>,
    /// Optimizer: fd-bfgs, nelder-mead, spsa.
    #[arg(long, env = "VQEKIT_OPTIMIZER")]
    optimizer: Option<String>,
    /// Pool-gradient stopping threshold (Hartree/radian).
    #[arg(long, env = "VQEKIT_EPSILON")]
    epsilon: Option<f64>,
    /// Cap on adaptive growth steps.
    #[arg(long, env = "VQEKIT_MAX_OPERATORS")]
    max_operators: Option<usize>,
    /// Candidates per iteration for adapt-qeb (clamped to the pool size).
    #[arg(long, env = "VQEKIT_TOP_K")]
    top_k: Option<usize>,
    /// Fraction of qubit-pool strings kept after the seeded shuffle.
    #[arg(long, env = "VQEKIT_KEEP_FRACTION")]
    keep_fraction: Option<f64>,
    /// Seed for every stochastic choice (pool thinning, SPSA, HEA starts).
    #[arg(long, env = "VQEKIT_SEED")]
    seed: Option<u64>,
    /// Objective-evaluation budget (total for hea/uccsd, per inner
    /// optimization for adaptive runs).
    #[arg(long, env = "VQEKIT_MAX_EVALS")]
    max_evals: Option<u64>,
    /// Stopping norm on the pool-gradient vector: l2 or max.
    #[arg(long, env = "VQEKIT_GRADIENT_NORM")]
    gradient_norm: Option<String>,
    /// HEA repetitions.
    #[arg(long, env = "VQEKIT_HEA_REPS")]
    hea_reps: Option<usize>,
    /// HEA rotation axes, e.g. yz or x.
    #[arg(long, env = "VQEKIT_HEA_AXES")]
    hea_axes: Option<String>,
    /// HEA entanglement: linear or full.
    #[arg(long, env = "VQEKIT_HEA_ENTANGLEMENT")]
    hea_entanglement: Option<String>,
    /// HEA random restarts sharing the evaluation budget.
    #[arg(long, env = "VQEKIT_HEA_STARTS")]
    hea_starts: Option<usize>,
    /// Half-width of the HEA initial-angle distribution (radians).
    #[arg(long, env = "VQEKIT_HEA_INIT_SCALE")]
    hea_init_scale: Option<f64>,
    /// Record measured wall time in the CSV (breaks byte reproducibility).
    #[arg(long, env = "VQEKIT_TIMING")]
    timing: bool,
}

impl SpecFlags {
    fn resolve(&self) -> Result<RunSpec> {
        let file = match &self.config {
            Some(path) => Some(load_file_config(path)?),
            None => None,
        };
        let overrides = Overrides {
            ansatz: self.ansatz.clone(),
            optimizer: self.optimizer.clone(),
            epsilon: self.epsilon,
            max_operators: self.max_operators,
            top_k: self.top_k,
            keep_fraction: self.keep_fraction,
            seed: self.seed,
            max_evals: self.max_evals,
            gradient_norm: self.gradient_norm.clone(),
            timing: self.timing,
            hea_reps: self.hea_reps,
            hea_axes: self.hea_axes.clone(),
            hea_entanglement: self.hea_entanglement.clone(),
            hea_starts: self.hea_starts,
            hea_init_scale: self.hea_init_scale,
        };
        resolve_spec(file, &overrides)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run one method on one FCIDUMP file and emit a one-row report.
    Run {
        /// Input FCIDUMP file.
        #[arg(long, env = "VQEKIT_FCIDUMP")]
        fcidump: PathBuf,
        /// Write the CSV report here instead of stdout.
        #[arg(long, env = "VQEKIT_OUT")]
        out: Option<PathBuf>,
        /// Also write the full run detail (adaptive trace) as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        spec: SpecFlags,
    },
    /// Sweep every FCIDUMP file in a directory into a multi-row report.
    Pes {
        /// Directory of .fcidump files with sortable geometry labels.
        #[arg(long, env = "VQEKIT_DIR")]
        dir: PathBuf,
        /// Output CSV path.
        #[arg(long, env = "VQEKIT_OUT")]
        out: PathBuf,
        /// Skip labels already present in the output CSV.
        #[arg(long)]
        resume: bool,
        #[command(flatten)]
        spec: SpecFlags,
    },
    /// Dump the three operator pools (sizes, labels, gate costs) as JSON.
    Pools {
        #[arg(long, env = "VQEKIT_FCIDUMP")]
        fcidump: PathBuf,
        #[arg(long, env = "VQEKIT_OUT")]
        out: Option<PathBuf>,
        #[command(flatten)]
        spec: SpecFlags,
    },
    /// Exact-diagonalization baseline only (no variational run).
    Fci {
        #[arg(long, env = "VQEKIT_FCIDUMP")]
        fcidump: Option<PathBuf>,
        #[arg(long, env = "VQEKIT_DIR")]
        dir: Option<PathBuf>,
        #[arg(long, env = "VQEKIT_OUT")]
        out: Option<PathBuf>,
        #[command(flatten)]
        spec: SpecFlags,
    },
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => write_text(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_run(fcidump: &PathBuf, out: Option<&PathBuf>, json: Option<&PathBuf>, spec: &RunSpec) -> Result<()> {
    let detail = run_one(spec, fcidump)?;
    emit(out, &render_csv(std::slice::from_ref(&detail.row)))?;
    if let Some(path) = json {
        write_text(path, &to_json_pretty(&detail))?;
    }
    Ok(())
}

fn cmd_pes(dir: &PathBuf, out: &PathBuf, resume: bool, spec: &RunSpec) -> Result<()> {
    let inputs = sweep_inputs(dir)?;
    let resumed = if resume { read_existing_labels(out)? } else { BTreeMap::new() };
    let mut rows: Vec<Row> = Vec::new();
    for input in &inputs {
        let label = input
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        if resumed.contains_key(&label) {
            eprintln!("{label}: resumed from existing report");
            continue;
        }
        rows.push(run_one(spec, input)?.row);
    }
    write_text(out, &render_csv_with_resumed(&rows, &resumed))
}

fn cmd_pools(fcidump: &PathBuf, out: Option<&PathBuf>, spec: &RunSpec) -> Result<()> {
    let molecule = load_molecule(fcidump)?;
    let pools = pool_report(spec, &molecule)?;
    emit(out, &to_json_pretty(&pools))
}

fn cmd_fci(
    fcidump: Option<&PathBuf>,
    dir: Option<&PathBuf>,
    out: Option<&PathBuf>,
) -> Result<()> {
    let inputs: Vec<PathBuf> = match (fcidump, dir) {
        (Some(file), None) => vec![file.clone()],
        (None, Some(dir)) => sweep_inputs(dir)?,
        _ => return Err(CliError::config("fci needs exactly one of --fcidump or --dir")),
    };
    let mut text = String::from("label,bond_length,e_hf,e_fci\n");
    for input in &inputs {
        let molecule = load_molecule(input)?;
        let fci = vqekit_core::fci::fci_ground_state(
            &vqekit_core::integrals::to_spin_orbital(&molecule.integrals),
            molecule.integrals.n_electrons,
            molecule.integrals.ms2,
        )?;
        text.push_str(&format!(
            "{},{},{},{}\n",
            molecule.label,
            molecule.bond_length.as_deref().unwrap_or(""),
            vqekit_cli::report::fmt_energy(molecule.e_hf),
            vqekit_cli::report::fmt_energy(fci.energy),
        ));
    }
    emit(out, &text)
}

fn dispatch(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::Run { fcidump, out, json, spec } => {
            cmd_run(fcidump, out.as_ref(), json.as_ref(), &spec.resolve()?)
        }
        Command::Pes { dir, out, resume, spec } => cmd_pes(dir, out, *resume, &spec.resolve()?),
        Command::Pools { fcidump, out, spec } => cmd_pools(fcidump, out.as_ref(), &spec.resolve()?),
        Command::Fci { fcidump, dir, out, spec } => {
            spec.resolve()?;
            cmd_fci(fcidump.as_ref(), dir.as_ref(), out.as_ref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("vqekit: {e}");
            ExitCode::from(e.kind.exit_code() as u8)
        }
    }
}
