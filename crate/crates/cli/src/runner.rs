//! Per-verb drivers: single runs, PES sweeps, pool dumps, FCI baselines.

use std::path::{Path, PathBuf};
use std::time::Instant;

use vqekit_core::adapt::{run_adapt, run_qeb_adapt, run_vqe, AdaptResult, Problem};
use vqekit_core::ansatz::{
    build_fermionic_pool, build_hea, build_qeb_pool, build_qubit_pool, build_uccsd, Ansatz,
    OperatorPool,
};
use vqekit_core::fci::fci_ground_state;
use vqekit_core::fermion::build_qubit_hamiltonian;
use vqekit_core::integrals::{
    hf_determinant, hf_energy, parse_fcidump, to_spin_orbital, MolecularIntegrals,
};
use vqekit_core::sim::generator_cost;

use crate::config::{AnsatzChoice, RunSpec};
use crate::report::{
    AdaptIterationReport, PoolEntry, PoolReport, Row, RunDetail,
};
use crate::{CliError, Result};

/// A parsed problem instance plus its reference data.
#[derive(Debug)]
pub struct Molecule {
    pub label: String,
    pub bond_length: Option<String>,
    pub integrals: MolecularIntegrals,
    pub problem: Problem,
    pub n_so: usize,
    pub e_hf: f64,
}

pub fn load_molecule(path: &Path) -> Result<Molecule> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("reading {}: {e}", path.display())))?;
    let integrals = parse_fcidump(&text)?;
    let so = to_spin_orbital(&integrals);
    let hamiltonian = build_qubit_hamiltonian(&so);
    let reference = hf_determinant(&integrals)?;
    let e_hf = hf_energy(&integrals)?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "input".to_string());
    let bond_length = label
        .rsplit('_')
        .next()
        .filter(|tail| tail.parse::<f64>().is_ok())
        .map(|tail| tail.to_string());
    Ok(Molecule {
        label,
        bond_length,
        n_so: so.n_so,
        integrals,
        problem: Problem { hamiltonian, reference },
        e_hf,
    })
}

/// Deterministic start-angle generator (splitmix64 under the hood).
fn seeded_angles(arity: usize, seed: u64, start: u64, scale: f64) -> Vec<f64> {
    let mut state = seed ^ start.wrapping_mul(0x9E3779B97F4A7C15);
    let mut next = move || {
        state = state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    };
    (0..arity)
        .map(|_| {
            let u = next() as f64 / u64::MAX as f64;
            (2.0 * u - 1.0) * scale
        })
        .collect()
}

/// Result of running the selected method on one molecule.
pub struct MethodOutcome {
    pub e_method: f64,
    pub n_params: u64,
    pub n_cnots: u64,
    pub n_evals: u64,
    pub stop_reason: Option<String>,
    pub adapt_iterations: Vec<AdaptIterationReport>,
}

fn outcome_from_adapt(result: &AdaptResult) -> MethodOutcome {
    let cost = result.ansatz.cost();
    MethodOutcome {
        e_method: result.final_energy,
        n_params: cost.parameter_count,
        n_cnots: cost.cnot_count,
        n_evals: result.n_evaluations,
        stop_reason: Some(result.stop_reason.name().to_string()),
        adapt_iterations: result
            .iterations
            .iter()
            .enumerate()
            .map(|(i, it)| AdaptIterationReport {
                iteration: i + 1,
                operator: it.label.clone(),
                pool_index: it.pool_index,
                gradient: it.gradient,
                energy: it.energy,
                n_params: it.cost.parameter_count,
                n_cnots: it.cost.cnot_count,
                particle_number: it.particle_number,
                candidate_vqes: it.candidate_count,
            })
            .collect(),
    }
}

fn direct_vqe(spec: &RunSpec, molecule: &Molecule, ansatz: &Ansatz, multi_start: bool) -> Result<MethodOutcome> {
    let arity = ansatz.parameter_count();
    let cost = ansatz.cost();
    if arity == 0 {
        let e = molecule.problem.energy(ansatz, &[])?;
        return Ok(MethodOutcome {
            e_method: e,
            n_params: 0,
            n_cnots: cost.cnot_count,
            n_evals: 0,
            stop_reason: None,
            adapt_iterations: Vec::new(),
        });
    }

    let budget = spec.max_evals;
    let starts = if multi_start { spec.hea.starts as u64 } else { 1 };
    let mut used = 0u64;
    let mut best: Option<f64> = None;
    for start in 0..starts {
        // A start is only worth launching if the first evaluation and
        // gradient fit in the remaining budget.
        if used + 2 * arity as u64 + 1 > budget {
            break;
        }
        let x0 = if multi_start {
            seeded_angles(arity, spec.seed, start, spec.hea.init_scale)
        } else {
            vec![0.0; arity]
        };
        let optimizer = spec.optimizer_kind(budget - used);
        let result = run_vqe(&molecule.problem, ansatz, &x0, &optimizer)?;
        used += result.n_evaluations;
        if best.map_or(true, |b| result.best_value < b) {
            best = Some(result.best_value);
        }
    }
    let e_method =
        best.ok_or_else(|| CliError::numerical("no optimization fit in the evaluation budget"))?;
    Ok(MethodOutcome {
        e_method,
        n_params: cost.parameter_count,
        n_cnots: cost.cnot_count,
        n_evals: used,
        stop_reason: None,
        adapt_iterations: Vec::new(),
    })
}

pub fn solve(spec: &RunSpec, molecule: &Molecule) -> Result<MethodOutcome> {
    let n_so = molecule.n_so;
    let n_electrons = molecule.integrals.n_electrons;
    match spec.ansatz {
        AnsatzChoice::Uccsd => {
            let ansatz = build_uccsd(n_so, n_electrons)?;
            direct_vqe(spec, molecule, &ansatz, false)
        }
        AnsatzChoice::Hea => {
            let ansatz = build_hea(n_so, spec.hea.reps, &spec.hea.axes, spec.hea.entanglement)?;
            direct_vqe(spec, molecule, &ansatz, true)
        }
        AnsatzChoice::AdaptFermionic => {
            let pool = build_fermionic_pool(n_so, n_electrons)?;
            let result = run_adapt(&molecule.problem, &pool, &spec.adapt_config())?;
            Ok(outcome_from_adapt(&result))
        }
        AnsatzChoice::AdaptQubit => {
            let fermionic = build_fermionic_pool(n_so, n_electrons)?;
            let pool = build_qubit_pool(&fermionic, spec.keep_fraction, spec.seed)?;
            let result = run_adapt(&molecule.problem, &pool, &spec.adapt_config())?;
            Ok(outcome_from_adapt(&result))
        }
        AnsatzChoice::AdaptQeb => {
            let pool = build_qeb_pool(n_so, n_electrons)?;
            let mut cfg = spec.adapt_config();
            cfg.qeb_top_k = cfg.qeb_top_k.min(pool.len());
            let result = run_qeb_adapt(&molecule.problem, &pool, &cfg)?;
            Ok(outcome_from_adapt(&result))
        }
    }
}

/// Executes one molecule end to end and assembles the report row.
pub fn run_one(spec: &RunSpec, path: &Path) -> Result<RunDetail> {
    let started = Instant::now();
    let molecule = load_molecule(path)?;
    let fci = fci_ground_state(
        &to_spin_orbital(&molecule.integrals),
        molecule.integrals.n_electrons,
        molecule.integrals.ms2,
    )?;
    let outcome = solve(spec, &molecule)?;
    if !outcome.e_method.is_finite() {
        return Err(CliError::numerical(format!("{}: non-finite energy", molecule.label)));
    }
    let elapsed = started.elapsed().as_secs_f64();
    eprintln!(
        "{}: {} E = {} Ha (error {:+.3e} Ha, {} evals, {:.3} s)",
        molecule.label,
        spec.ansatz.name(),
        crate::report::fmt_energy(outcome.e_method),
        outcome.e_method - fci.energy,
        outcome.n_evals,
        elapsed
    );
    let row = Row {
        label: molecule.label.clone(),
        bond_length: molecule.bond_length.clone(),
        e_hf: molecule.e_hf,
        e_fci: fci.energy,
        e_method: outcome.e_method,
        error: outcome.e_method - fci.energy,
        n_params: outcome.n_params,
        n_cnots: outcome.n_cnots,
        n_evals: outcome.n_evals,
        wall_s: if spec.timing { elapsed } else { 0.0 },
    };
    Ok(RunDetail {
        label: molecule.label,
        ansatz: spec.ansatz.name().to_string(),
        optimizer: format!("{:?}", spec.optimizer).to_lowercase(),
        seed: spec.seed,
        row,
        stop_reason: outcome.stop_reason,
        adapt_iterations: outcome.adapt_iterations,
    })
}

/// FCIDUMP files of a sweep directory, sorted by file name.
pub fn sweep_inputs(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| CliError::parse(format!("reading {}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "fcidump"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CliError::config(format!(
            "no .fcidump files in {}",
            dir.display()
        )));
    }
    Ok(files)
}

/// Pool dump for the `pools` verb: sizes, labels, and per-generator costs
/// for all three flavors under the given spec.
pub fn pool_report(spec: &RunSpec, molecule: &Molecule) -> Result<Vec<PoolReport>> {
    let n_so = molecule.n_so;
    let n_electrons = molecule.integrals.n_electrons;
    let fermionic = build_fermionic_pool(n_so, n_electrons)?;
    let qubit = build_qubit_pool(&fermionic, spec.keep_fraction, spec.seed)?;
    let qeb = build_qeb_pool(n_so, n_electrons)?;
    let render = |pool: &OperatorPool| PoolReport {
        flavor: pool.flavor.name().to_string(),
        n_qubits: pool.n_qubits,
        size: pool.len(),
        generators: pool
            .generators
            .iter()
            .zip(pool.labels.iter())
            .enumerate()
            .map(|(index, (g, label))| PoolEntry {
                index,
                label: label.clone(),
                terms: g.len(),
                cnot_count: generator_cost(g).cnot_count,
            })
            .collect(),
    };
    Ok(vec![render(&fermionic), render(&qubit), render(&qeb)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture(name: &str) -> PathBuf {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
    }

    #[test]
    fn labels_and_bond_lengths_parse_from_names() {
        let m = load_molecule(&fixture("h2_0.735.fcidump")).unwrap();
        assert_eq!(m.label, "h2_0.735");
        assert_eq!(m.bond_length.as_deref(), Some("0.735"));
        let m = load_molecule(&fixture("lih_fc_1.595.fcidump")).unwrap();
        assert_eq!(m.bond_length.as_deref(), Some("1.595"));
    }

    #[test]
    fn missing_file_is_a_parse_error() {
        let err = load_molecule(Path::new("no_such_file.fcidump")).unwrap_err();
        assert_eq!(err.kind, crate::ErrorKind::Parse);
    }

    #[test]
    fn uccsd_run_produces_consistent_row() {
        let spec = RunSpec::default();
        let detail = run_one(&spec, &fixture("h2_0.735.fcidump")).unwrap();
        let row = &detail.row;
        assert_eq!(row.n_params, 3);
        assert!((row.error - (row.e_method - row.e_fci)).abs() < 1e-12);
        assert!(row.error.abs() < 1.6e-3, "chemical accuracy, got {}", row.error);
        assert!(row.e_fci <= row.e_method + 1e-9, "variational bound");
        assert_eq!(row.wall_s, 0.0);
    }

    #[test]
    fn seeded_angles_are_deterministic() {
        let a = seeded_angles(5, 7, 2, 0.4);
        let b = seeded_angles(5, 7, 2, 0.4);
        assert_eq!(a, b);
        let c = seeded_angles(5, 7, 3, 0.4);
        assert_ne!(a, c);
        assert!(a.iter().all(|x| x.abs() <= 0.4));
    }

    #[test]
    fn sweep_rejects_empty_directory() {
        let dir = tempfile::tempdir().unwrap();
        let err = sweep_inputs(dir.path()).unwrap_err();
        assert_eq!(err.kind, crate::ErrorKind::Config);
    }
}
