//! Adaptive ansatz construction: pool-gradient screening, operator
//! selection, ansatz growth, and inner re-optimization.
//!
//! The selection signal is the commutator expectation `<psi|[H, A]|psi>`,
//! which equals the energy derivative along `exp(theta A)|psi>` at
//! `theta = 0`. It is evaluated as `2 Re <H psi|A psi>` from two operator
//! applications; a symbolic-commutator route is provided as a cross-check.
//!
//! [`run_adapt`] grows the ansatz one operator at a time (largest absolute
//! gradient, ties to the lowest pool index) and re-optimizes all parameters
//! after each growth step, warm-started from the previous optimum with the
//! new parameter at zero. [`run_qeb_adapt`] instead short-lists the top `k`
//! candidates by gradient, runs a full inner optimization for each, and
//! commits the candidate with the lowest optimized energy. Operators may be
//! selected again in later iterations; repeats are visible in the labels.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::ansatz::{Ansatz, AnsatzElement, OperatorPool};
use crate::error::{Error, Result};
use crate::fermion::number_operator;
use crate::optim::{Objective, OptimizerKind, OptimizerResult};
use crate::pauli::PauliSum;
use crate::sim::{GateCost, Statevector};

/// A ground-state problem: Hamiltonian plus reference determinant.
#[derive(Debug, Clone)]
pub struct Problem {
    pub hamiltonian: PauliSum,
    pub reference: u64,
}

impl Problem {
    pub fn n_qubits(&self) -> usize {
        self.hamiltonian.n_qubits()
    }

    pub fn reference_state(&self) -> Result<Statevector> {
        Statevector::basis_state(self.n_qubits(), self.reference)
    }

    /// Energy of the ansatz at the given parameters.
    pub fn energy(&self, ansatz: &Ansatz, params: &[f64]) -> Result<f64> {
        let state = ansatz.prepare(&self.reference_state()?, params)?;
        state.expectation(&self.hamiltonian)
    }

    /// Counting objective evaluating the ansatz energy; non-finite on
    /// internal failure so optimizers can bail out.
    pub fn objective<'a>(&'a self, ansatz: &'a Ansatz) -> Objective<'a> {
        Objective::new(ansatz.parameter_count(), move |params| {
            self.energy(ansatz, params).unwrap_or(f64::NAN)
        })
    }
}

/// Runs one full inner optimization of an ansatz from a warm start.
pub fn run_vqe(
    problem: &Problem,
    ansatz: &Ansatz,
    x0: &[f64],
    optimizer: &OptimizerKind,
) -> Result<OptimizerResult> {
    let mut objective = problem.objective(ansatz);
    optimizer.minimize(&mut objective, x0)
}

/// `<state|[H, A]|state>` evaluated as `2 Re <H state|A state>`; real for
/// Hermitian `H` and anti-Hermitian `A`.
pub fn pool_gradient(state: &Statevector, h: &PauliSum, a: &PauliSum) -> Result<f64> {
    if !h.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    if !a.is_antihermitian() {
        return Err(Error::NotAntiHermitian);
    }
    let h_psi = state.apply_sum(h)?;
    let a_psi = state.apply_sum(a)?;
    Ok(2.0 * h_psi.inner(&a_psi)?.re)
}

/// Same quantity through the symbolic commutator; the two routes must agree
/// and cross-check each other in the test suite.
pub fn pool_gradient_via_commutator(
    state: &Statevector,
    h: &PauliSum,
    a: &PauliSum,
) -> Result<f64> {
    if !h.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    if !a.is_antihermitian() {
        return Err(Error::NotAntiHermitian);
    }
    state.expectation(&h.commutator(a)?)
}

/// All pool gradients at one state, sharing a single `H|psi>` application.
pub fn pool_gradients(state: &Statevector, h: &PauliSum, pool: &OperatorPool) -> Result<Vec<f64>> {
    if !h.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    let h_psi = state.apply_sum(h)?;
    let mut out = Vec::with_capacity(pool.len());
    for a in &pool.generators {
        if !a.is_antihermitian() {
            return Err(Error::NotAntiHermitian);
        }
        let a_psi = state.apply_sum(a)?;
        out.push(2.0 * h_psi.inner(&a_psi)?.re);
    }
    Ok(out)
}

/// Norm used on the pool-gradient vector by the stopping rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GradientNorm {
    /// Euclidean norm of the full gradient vector (default).
    L2,
    /// Largest absolute component.
    Max,
}

#[derive(Debug, Clone)]
pub struct AdaptConfig {
    /// Stop once the pool-gradient norm is at or below this (Hartree/radian).
    pub epsilon: f64,
    /// Hard cap on the number of growth steps.
    pub max_operators: usize,
    pub optimizer: OptimizerKind,
    /// Candidates short-listed per iteration by [`run_qeb_adapt`].
    pub qeb_top_k: usize,
    pub gradient_norm: GradientNorm,
}

impl AdaptConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0) {
            return Err(Error::InvalidConfig(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if self.max_operators == 0 {
            return Err(Error::InvalidConfig("max_operators must be at least 1".into()));
        }
        if self.qeb_top_k == 0 {
            return Err(Error::InvalidConfig("qeb_top_k must be at least 1".into()));
        }
        Ok(())
    }
}

impl Default for AdaptConfig {
    fn default() -> AdaptConfig {
        AdaptConfig {
            epsilon: 1e-3,
            max_operators: 30,
            optimizer: OptimizerKind::FdBfgs(Default::default()),
            qeb_top_k: 3,
            gradient_norm: GradientNorm::L2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// Pool-gradient norm fell to or below epsilon.
    GradientConverged,
    /// The operator cap was reached.
    MaxOperators,
    /// The inner optimizer failed; best state so far is reported.
    Stalled,
}

impl StopReason {
    pub fn name(&self) -> &'static str {
        match self {
            StopReason::GradientConverged => "gradient_converged",
            StopReason::MaxOperators => "max_operators",
            StopReason::Stalled => "stalled",
        }
    }
}

/// Per-iteration record of an adaptive run.
#[derive(Debug, Clone)]
pub struct AdaptIteration {
    pub label: String,
    pub pool_index: usize,
    /// Selection gradient of the committed operator.
    pub gradient: f64,
    /// Energy after the inner re-optimization.
    pub energy: f64,
    /// Cumulative gate cost of the grown ansatz.
    pub cost: GateCost,
    pub parameters: Vec<f64>,
    /// `<N>` of the optimized state; conserved by fermionic and
    /// qubit-excitation pools, reported (not asserted) for qubit pools.
    pub particle_number: f64,
    /// Inner optimizations spent this iteration (k for the top-k variant).
    pub candidate_count: usize,
}

#[derive(Debug, Clone)]
pub struct AdaptResult {
    pub iterations: Vec<AdaptIteration>,
    pub final_energy: f64,
    pub stop_reason: StopReason,
    /// Total objective evaluations across all inner optimizations.
    pub n_evaluations: u64,
    pub ansatz: Ansatz,
    pub parameters: Vec<f64>,
}

fn gradient_norm(gradients: &[f64], norm: GradientNorm) -> f64 {
    match norm {
        GradientNorm::L2 => libm::sqrt(gradients.iter().map(|g| g * g).sum()),
        GradientNorm::Max => gradients.iter().map(|g| libm::fabs(*g)).fold(0.0, f64::max),
    }
}

/// The adaptive loop: screen, select the single largest-gradient operator,
/// grow, re-optimize everything, repeat.
pub fn run_adapt(problem: &Problem, pool: &OperatorPool, cfg: &AdaptConfig) -> Result<AdaptResult> {
    run_adapt_with_top_k(problem, pool, cfg, 1)
}

/// Top-k variant: each short-listed candidate gets its own full inner
/// optimization and the lowest optimized energy wins.
pub fn run_qeb_adapt(problem: &Problem, pool: &OperatorPool, cfg: &AdaptConfig) -> Result<AdaptResult> {
    if cfg.qeb_top_k > pool.len() {
        return Err(Error::InvalidConfig(format!(
            "qeb_top_k {} exceeds pool size {}",
            cfg.qeb_top_k,
            pool.len()
        )));
    }
    run_adapt_with_top_k(problem, pool, cfg, cfg.qeb_top_k)
}

fn run_adapt_with_top_k(
    problem: &Problem,
    pool: &OperatorPool,
    cfg: &AdaptConfig,
    top_k: usize,
) -> Result<AdaptResult> {
    cfg.validate()?;
    if pool.is_empty() {
        return Err(Error::EmptyPool);
    }
    if pool.n_qubits != problem.n_qubits() {
        return Err(Error::DimensionMismatch { left: pool.n_qubits, right: problem.n_qubits() });
    }

    let n_particles = number_operator(problem.n_qubits());
    let reference = problem.reference_state()?;
    let mut ansatz = Ansatz::new(problem.n_qubits());
    let mut parameters: Vec<f64> = Vec::new();
    let mut state = reference.clone();
    let mut energy = state.expectation(&problem.hamiltonian)?;
    let mut iterations = Vec::new();
    let mut total_evals = 0u64;
    let mut stop_reason = StopReason::MaxOperators;

    while iterations.len() < cfg.max_operators {
        let gradients = pool_gradients(&state, &problem.hamiltonian, pool)?;
        if gradient_norm(&gradients, cfg.gradient_norm) <= cfg.epsilon {
            stop_reason = StopReason::GradientConverged;
            break;
        }

        // Candidate indices: the k largest |gradient|, ties to lower index.
        let k = top_k.min(pool.len());
        let mut order: Vec<usize> = (0..pool.len()).collect();
        order.sort_by(|&a, &b| {
            libm::fabs(gradients[b])
                .partial_cmp(&libm::fabs(gradients[a]))
                .unwrap_or(core::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        });
        let candidates = &order[..k];

        let mut committed: Option<(usize, OptimizerResult)> = None;
        for &idx in candidates {
            let mut candidate_ansatz = ansatz.clone();
            candidate_ansatz.push(AnsatzElement::generator(
                pool.generators[idx].clone(),
                pool.labels[idx].clone(),
            )?);
            let mut warm = parameters.clone();
            warm.push(0.0);
            match run_vqe(problem, &candidate_ansatz, &warm, &cfg.optimizer) {
                Ok(result) => {
                    total_evals += result.n_evaluations;
                    let better = match &committed {
                        None => true,
                        Some((_, best)) => result.best_value < best.best_value,
                    };
                    if better {
                        committed = Some((idx, result));
                    }
                }
                Err(Error::Diverged(_)) => {}
                Err(other) => return Err(other),
            }
        }

        let Some((idx, result)) = committed else {
            stop_reason = StopReason::Stalled;
            break;
        };
        if !result.best_value.is_finite() {
            stop_reason = StopReason::Stalled;
            break;
        }

        ansatz.push(AnsatzElement::generator(
            pool.generators[idx].clone(),
            pool.labels[idx].clone(),
        )?);
        parameters = result.best_parameters.clone();
        energy = result.best_value;
        state = ansatz.prepare(&reference, &parameters)?;

        iterations.push(AdaptIteration {
            label: pool.labels[idx].clone(),
            pool_index: idx,
            gradient: gradients[idx],
            energy,
            cost: ansatz.cost(),
            parameters: parameters.clone(),
            particle_number: state.expectation(&n_particles)?,
            candidate_count: k,
        });
    }

    Ok(AdaptResult {
        iterations,
        final_energy: energy,
        stop_reason,
        n_evaluations: total_evals,
        ansatz,
        parameters,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ansatz::{build_fermionic_pool, build_qeb_pool};
    use crate::fermion::build_qubit_hamiltonian;
    use crate::integrals::{hf_determinant, hf_energy, parse_fcidump, to_spin_orbital};
    use crate::fci::fci_ground_state;
    use crate::optim::FdBfgsConfig;
    use crate::pauli::{PauliOp, PauliSum, PauliTerm};
    use crate::Complex64;
    use alloc::vec;

    const TWO_ORBITAL: &str = "&FCI NORB=2,NELEC=2,MS2=0,\n&END\n0.674755926814 1 1 1 1\n0.181288808211 1 2 1 2\n0.663468096423 1 1 2 2\n0.697396949021 2 2 2 2\n-1.252477495998 1 1 0 0\n-0.475934275145 2 2 0 0\n0.713753971134 0 0 0 0\n";

    fn two_orbital_problem() -> (Problem, f64, f64) {
        let m = parse_fcidump(TWO_ORBITAL).unwrap();
        let so = to_spin_orbital(&m);
        let h = build_qubit_hamiltonian(&so);
        let e_hf = hf_energy(&m).unwrap();
        let e_fci = fci_ground_state(&so, 2, 0).unwrap().energy;
        (Problem { hamiltonian: h, reference: hf_determinant(&m).unwrap() }, e_hf, e_fci)
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gradient_zero_for_commuting_operator() {
        let h = PauliSum::from_term(PauliTerm::from_label("ZI", c(1.0, 0.0)).unwrap());
        let a = PauliSum::from_term(PauliTerm::from_label("IZ", c(0.0, 1.0)).unwrap());
        let state = Statevector::basis_state(2, 0b01).unwrap();
        let state = state.apply_rotation(PauliOp::Y, 0, 0.3).unwrap();
        assert_eq!(pool_gradient(&state, &h, &a).unwrap(), 0.0);
    }

    #[test]
    fn gradient_routes_agree() {
        let (problem, _, _) = two_orbital_problem();
        let pool = build_fermionic_pool(4, 2).unwrap();
        let state = problem
            .reference_state()
            .unwrap()
            .apply_generator_exponential(&pool.generators[2], 0.21)
            .unwrap()
            .apply_generator_exponential(&pool.generators[0], -0.4)
            .unwrap();
        for a in &pool.generators {
            let fast = pool_gradient(&state, &problem.hamiltonian, a).unwrap();
            let symbolic = pool_gradient_via_commutator(&state, &problem.hamiltonian, a).unwrap();
            assert!((fast - symbolic).abs() < 1e-10, "{fast} vs {symbolic}");
        }
    }

    #[test]
    fn gradient_matches_finite_difference() {
        let (problem, _, _) = two_orbital_problem();
        let pool = build_fermionic_pool(4, 2).unwrap();
        let reference = problem.reference_state().unwrap();
        // A generic state away from stationary points.
        let state = reference
            .apply_generator_exponential(&pool.generators[2], 0.17)
            .unwrap()
            .apply_generator_exponential(&pool.generators[1], 0.23)
            .unwrap();
        let h = &problem.hamiltonian;
        let step = 1e-5;
        for a in &pool.generators {
            let analytic = pool_gradient(&state, h, a).unwrap();
            let e_plus = state.apply_generator_exponential(a, step).unwrap().expectation(h).unwrap();
            let e_minus = state.apply_generator_exponential(a, -step).unwrap().expectation(h).unwrap();
            let numeric = (e_plus - e_minus) / (2.0 * step);
            assert!((analytic - numeric).abs() < 1e-6, "{analytic} vs {numeric}");
        }
    }

    #[test]
    fn config_validation() {
        let cfg = AdaptConfig { max_operators: 0, ..AdaptConfig::default() };
        assert!(cfg.validate().is_err());
        let cfg = AdaptConfig { epsilon: 0.0, ..AdaptConfig::default() };
        assert!(cfg.validate().is_err());
        let cfg = AdaptConfig { qeb_top_k: 0, ..AdaptConfig::default() };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn huge_epsilon_stops_immediately_at_reference_energy() {
        let (problem, e_hf, _) = two_orbital_problem();
        let pool = build_fermionic_pool(4, 2).unwrap();
        let cfg = AdaptConfig { epsilon: 1e3, ..AdaptConfig::default() };
        let r = run_adapt(&problem, &pool, &cfg).unwrap();
        assert!(r.iterations.is_empty());
        assert_eq!(r.stop_reason, StopReason::GradientConverged);
        assert!((r.final_energy - e_hf).abs() < 1e-10);
        assert_eq!(r.n_evaluations, 0);
    }

    #[test]
    fn adapt_descends_monotonically_toward_fci() {
        let (problem, e_hf, e_fci) = two_orbital_problem();
        let pool = build_fermionic_pool(4, 2).unwrap();
        let cfg = AdaptConfig {
            epsilon: 1e-6,
            max_operators: 6,
            optimizer: OptimizerKind::FdBfgs(FdBfgsConfig { gtol: 1e-9, ..Default::default() }),
            ..AdaptConfig::default()
        };
        let r = run_adapt(&problem, &pool, &cfg).unwrap();
        assert!(!r.iterations.is_empty());
        let mut prev = e_hf;
        for it in &r.iterations {
            assert!(it.energy <= prev + 1e-9, "non-increasing energies");
            assert!((it.particle_number - 2.0).abs() < 1e-10, "particle number conserved");
            prev = it.energy;
        }
        assert!(r.final_energy >= e_fci - 1e-9, "variational bound");
        assert!(r.final_energy < e_hf - 1e-4, "recovered correlation energy");
        // Cost bookkeeping matches the final ansatz.
        assert_eq!(r.iterations.last().unwrap().cost, r.ansatz.cost());
        assert_eq!(r.parameters.len(), r.iterations.len());
    }

    #[test]
    fn qeb_top_one_matches_plain_adapt() {
        let (problem, _, _) = two_orbital_problem();
        let pool = build_qeb_pool(4, 2).unwrap();
        let cfg = AdaptConfig {
            epsilon: 1e-6,
            max_operators: 4,
            qeb_top_k: 1,
            ..AdaptConfig::default()
        };
        let plain = run_adapt(&problem, &pool, &cfg).unwrap();
        let qeb = run_qeb_adapt(&problem, &pool, &cfg).unwrap();
        assert_eq!(plain.iterations.len(), qeb.iterations.len());
        for (a, b) in plain.iterations.iter().zip(qeb.iterations.iter()) {
            assert_eq!(a.pool_index, b.pool_index);
            assert!((a.energy - b.energy).abs() < 1e-9);
        }
    }

    #[test]
    fn qeb_candidate_counting_and_validation() {
        let (problem, _, _) = two_orbital_problem();
        let pool = build_qeb_pool(4, 2).unwrap();
        let cfg = AdaptConfig {
            epsilon: 1e-6,
            max_operators: 2,
            qeb_top_k: 3,
            ..AdaptConfig::default()
        };
        let r = run_qeb_adapt(&problem, &pool, &cfg).unwrap();
        for it in &r.iterations {
            assert_eq!(it.candidate_count, 3);
        }
        let too_big = AdaptConfig { qeb_top_k: 10, ..cfg };
        assert!(run_qeb_adapt(&problem, &pool, &too_big).is_err());
    }

    #[test]
    fn empty_pool_is_rejected() {
        let (problem, _, _) = two_orbital_problem();
        let pool = OperatorPool {
            flavor: crate::ansatz::PoolFlavor::Fermionic,
            n_qubits: 4,
            generators: vec![],
            labels: vec![],
        };
        assert!(matches!(
            run_adapt(&problem, &pool, &AdaptConfig::default()),
            Err(Error::EmptyPool)
        ));
    }
}
