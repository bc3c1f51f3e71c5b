//! Parameterized ansatz structures and ADAPT operator pools.
//!
//! An [`Ansatz`] is an ordered list of elements applied to a reference state:
//! Pauli-string exponentials, anti-Hermitian generator exponentials sharing
//! one parameter, and hardware-efficient rotation / entangling layers. Gate
//! costs are tracked analytically per element.
//!
//! Pools come in three flavors. The fermionic pool is the set of UCCSD
//! excitation generators. The qubit pool collects the Pauli skeletons of the
//! fermionic generators with every Z letter stripped (the Z strings only
//! carry antisymmetry bookkeeping) and can be randomly thinned with a seeded
//! shuffle. The qubit-excitation pool rebuilds the excitations from
//! `Q_j = (X_j + iY_j)/2` ladder operators lifted with identities, i.e.
//! fermionic excitations without their Z strings.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fermion::{excitation_generator, uccsd_excitations, Excitation};
use crate::pauli::{PauliOp, PauliSum, PauliTerm};
use crate::sim::{generator_cost, pauli_exponential_cost, GateCost, Statevector};
use crate::Complex64;

/// Entangling-layer topology of the hardware-efficient ansatz.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Entanglement {
    /// CNOTs on adjacent pairs, `n - 1` per layer.
    Linear,
    /// A CNOT on every pair, `n (n - 1) / 2` per layer.
    Full,
}

/// One unit of a parameterized ansatz.
#[derive(Debug, Clone)]
pub enum AnsatzElement {
    /// `exp(i theta P)` for a Pauli string with unit coefficient.
    PauliExponential { term: PauliTerm, label: String },
    /// `exp(theta G)` for an anti-Hermitian generator; one shared parameter.
    GeneratorExponential { generator: PauliSum, label: String },
    /// One rotation `R_axis(theta_q)` per qubit; `n` parameters.
    HeaRotationLayer { axis: PauliOp },
    /// A ladder of CNOTs; no parameters.
    HeaEntangleLayer { entanglement: Entanglement },
}

impl AnsatzElement {
    pub fn generator(generator: PauliSum, label: String) -> Result<AnsatzElement> {
        if !generator.is_antihermitian() {
            return Err(Error::NotAntiHermitian);
        }
        Ok(AnsatzElement::GeneratorExponential { generator, label })
    }

    pub fn parameter_count(&self, n_qubits: usize) -> usize {
        match self {
            AnsatzElement::PauliExponential { .. } => 1,
            AnsatzElement::GeneratorExponential { .. } => 1,
            AnsatzElement::HeaRotationLayer { .. } => n_qubits,
            AnsatzElement::HeaEntangleLayer { .. } => 0,
        }
    }

    pub fn cost(&self, n_qubits: usize) -> GateCost {
        match self {
            AnsatzElement::PauliExponential { term, .. } => pauli_exponential_cost(term.weight()),
            AnsatzElement::GeneratorExponential { generator, .. } => generator_cost(generator),
            AnsatzElement::HeaRotationLayer { .. } => GateCost::new(0, n_qubits as u64),
            AnsatzElement::HeaEntangleLayer { entanglement } => {
                let n = n_qubits as u64;
                let cnots = match entanglement {
                    Entanglement::Linear => n - 1,
                    Entanglement::Full => n * (n - 1) / 2,
                };
                GateCost::new(cnots, 0)
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            AnsatzElement::PauliExponential { label, .. } => label.clone(),
            AnsatzElement::GeneratorExponential { label, .. } => label.clone(),
            AnsatzElement::HeaRotationLayer { axis } => format!("rot[{}]", axis.label()),
            AnsatzElement::HeaEntangleLayer { entanglement } => match entanglement {
                Entanglement::Linear => "ent[linear]".into(),
                Entanglement::Full => "ent[full]".into(),
            },
        }
    }
}

/// An ordered sequence of ansatz elements over a fixed qubit count.
/// At the all-zeros parameter vector every exponential and rotation is the
/// identity; ansatzes without entangling layers then reproduce the reference
/// state exactly.
#[derive(Debug, Clone, Default)]
pub struct Ansatz {
    n_qubits: usize,
    elements: Vec<AnsatzElement>,
}

impl Ansatz {
    pub fn new(n_qubits: usize) -> Ansatz {
        Ansatz { n_qubits, elements: Vec::new() }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn elements(&self) -> &[AnsatzElement] {
        &self.elements
    }

    pub fn push(&mut self, element: AnsatzElement) {
        self.elements.push(element);
    }

    pub fn parameter_count(&self) -> usize {
        self.elements.iter().map(|e| e.parameter_count(self.n_qubits)).sum()
    }

    pub fn cost(&self) -> GateCost {
        self.elements
            .iter()
            .fold(GateCost::default(), |acc, e| acc.plus(e.cost(self.n_qubits)))
    }

    /// Applies the ansatz to `reference` with the given parameter vector.
    pub fn prepare(&self, reference: &Statevector, params: &[f64]) -> Result<Statevector> {
        if params.len() != self.parameter_count() {
            return Err(Error::InvalidConfig(format!(
                "expected {} parameters, got {}",
                self.parameter_count(),
                params.len()
            )));
        }
        let mut state = reference.clone();
        let mut next = 0usize;
        for element in &self.elements {
            match element {
                AnsatzElement::PauliExponential { term, .. } => {
                    state = state.apply_pauli_exponential(term, params[next])?;
                    next += 1;
                }
                AnsatzElement::GeneratorExponential { generator, .. } => {
                    state = state.apply_generator_exponential(generator, params[next])?;
                    next += 1;
                }
                AnsatzElement::HeaRotationLayer { axis } => {
                    for q in 0..self.n_qubits {
                        state = state.apply_rotation(*axis, q, params[next])?;
                        next += 1;
                    }
                }
                AnsatzElement::HeaEntangleLayer { entanglement } => match entanglement {
                    Entanglement::Linear => {
                        for q in 0..self.n_qubits - 1 {
                            state = state.apply_cnot(q, q + 1)?;
                        }
                    }
                    Entanglement::Full => {
                        for q in 0..self.n_qubits {
                            for p in (q + 1)..self.n_qubits {
                                state = state.apply_cnot(q, p)?;
                            }
                        }
                    }
                },
            }
        }
        Ok(state)
    }
}

/// Hardware-efficient ansatz: `reps` repetitions of one rotation layer per
/// axis followed by an entangling layer, closed by a final rotation block.
/// Parameter count is `n_qubits * axes.len() * (reps + 1)`.
pub fn build_hea(
    n_qubits: usize,
    reps: usize,
    axes: &[PauliOp],
    entanglement: Entanglement,
) -> Result<Ansatz> {
    if axes.is_empty() {
        return Err(Error::InvalidConfig("HEA needs at least one rotation axis".into()));
    }
    if axes.iter().any(|&a| a == PauliOp::I) {
        return Err(Error::InvalidConfig("identity is not a rotation axis".into()));
    }
    if reps == 0 {
        return Err(Error::InvalidConfig("HEA needs at least one repetition".into()));
    }
    let mut ansatz = Ansatz::new(n_qubits);
    for _ in 0..reps {
        for &axis in axes {
            ansatz.push(AnsatzElement::HeaRotationLayer { axis });
        }
        ansatz.push(AnsatzElement::HeaEntangleLayer { entanglement });
    }
    for &axis in axes {
        ansatz.push(AnsatzElement::HeaRotationLayer { axis });
    }
    Ok(ansatz)
}

/// Trotterized UCCSD: one generator exponential per excitation, in the
/// deterministic excitation order, one parameter each.
pub fn build_uccsd(n_so: usize, n_electrons: usize) -> Result<Ansatz> {
    let mut ansatz = Ansatz::new(n_so);
    for e in uccsd_excitations(n_so, n_electrons)? {
        let g = excitation_generator(&e, n_so)?;
        debug_assert!(g.terms_mutually_commute(), "excitation sub-terms commute");
        ansatz.push(AnsatzElement::generator(g, e.label())?);
    }
    Ok(ansatz)
}

/// Which construction produced an operator pool.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoolFlavor {
    Fermionic,
    Qubit,
    QubitExcitation,
}

impl PoolFlavor {
    pub fn name(&self) -> &'static str {
        match self {
            PoolFlavor::Fermionic => "fermionic",
            PoolFlavor::Qubit => "qubit",
            PoolFlavor::QubitExcitation => "qeb",
        }
    }
}

/// An ordered set of anti-Hermitian generators with stable indices and
/// provenance labels.
#[derive(Debug, Clone)]
pub struct OperatorPool {
    pub flavor: PoolFlavor,
    pub n_qubits: usize,
    pub generators: Vec<PauliSum>,
    pub labels: Vec<String>,
}

impl OperatorPool {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Pool of all UCCSD excitation generators in excitation order.
pub fn build_fermionic_pool(n_so: usize, n_electrons: usize) -> Result<OperatorPool> {
    let mut generators = Vec::new();
    let mut labels = Vec::new();
    for e in uccsd_excitations(n_so, n_electrons)? {
        let g = excitation_generator(&e, n_so)?;
        debug_assert!(g.terms_mutually_commute());
        generators.push(g);
        labels.push(e.label());
    }
    if generators.is_empty() {
        return Err(Error::EmptyPool);
    }
    Ok(OperatorPool { flavor: PoolFlavor::Fermionic, n_qubits: n_so, generators, labels })
}

/// Qubit pool: every Pauli string of the fermionic pool with its Z letters
/// replaced by identities (the X/Y skeleton), deduplicated in order of first
/// appearance, each lifted to the anti-Hermitian generator `i P`. A seeded
/// uniform shuffle then keeps `ceil(keep_fraction * count)` strings; the
/// survivors stay in skeleton-discovery order.
pub fn build_qubit_pool(
    fermionic: &OperatorPool,
    keep_fraction: f64,
    seed: u64,
) -> Result<OperatorPool> {
    if !(keep_fraction > 0.0 && keep_fraction <= 1.0) {
        return Err(Error::InvalidConfig(format!(
            "keep_fraction must be in (0, 1], got {keep_fraction}"
        )));
    }
    let n = fermionic.n_qubits;
    let mut seen: BTreeSet<Vec<PauliOp>> = BTreeSet::new();
    let mut skeletons: Vec<Vec<PauliOp>> = Vec::new();
    for g in &fermionic.generators {
        for term in g.iter_terms() {
            let stripped: Vec<PauliOp> = term
                .letters()
                .iter()
                .map(|&p| if p == PauliOp::Z { PauliOp::I } else { p })
                .collect();
            if stripped.iter().all(|&p| p == PauliOp::I) {
                continue;
            }
            if seen.insert(stripped.clone()) {
                skeletons.push(stripped);
            }
        }
    }
    if skeletons.is_empty() {
        return Err(Error::EmptyPool);
    }

    let keep = ceil_mul(skeletons.len(), keep_fraction);
    let mut order: Vec<usize> = (0..skeletons.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in (1..order.len()).rev() {
        let j = uniform_index(&mut rng, (i + 1) as u64) as usize;
        order.swap(i, j);
    }
    let mut kept: Vec<usize> = order.into_iter().take(keep).collect();
    kept.sort_unstable();

    let mut generators = Vec::with_capacity(keep);
    let mut labels = Vec::with_capacity(keep);
    for idx in kept {
        let letters = skeletons[idx].clone();
        let term = PauliTerm::new(letters, Complex64::new(0.0, 1.0));
        labels.push(term.label());
        generators.push(PauliSum::from_term(term));
    }
    Ok(OperatorPool { flavor: PoolFlavor::Qubit, n_qubits: n, generators, labels })
}

fn ceil_mul(count: usize, fraction: f64) -> usize {
    let raw = libm::ceil(fraction * count as f64) as usize;
    raw.clamp(1, count)
}

/// Unbiased `[0, bound)` draw from a 64-bit generator.
fn uniform_index(rng: &mut ChaCha8Rng, bound: u64) -> u64 {
    debug_assert!(bound > 0);
    let rem = (u64::MAX % bound + 1) % bound;
    if rem == 0 {
        return rng.next_u64() % bound;
    }
    let threshold = 0u64.wrapping_sub(rem);
    loop {
        let x = rng.next_u64();
        if x < threshold {
            return x % bound;
        }
    }
}

/// Ladder operator `Q_j = (X_j + i Y_j) / 2` (annihilation without the Z
/// string), or its adjoint, lifted to `n` qubits.
fn qubit_ladder(j: usize, dagger: bool, n: usize) -> PauliSum {
    let y_coeff = if dagger { Complex64::new(0.0, -0.5) } else { Complex64::new(0.0, 0.5) };
    let mut sum = PauliSum::zero(n);
    sum.add_term(PauliTerm::single(n, j, PauliOp::X, Complex64::new(0.5, 0.0)))
        .expect("same size");
    sum.add_term(PauliTerm::single(n, j, PauliOp::Y, y_coeff)).expect("same size");
    sum
}

fn qeb_generator(e: &Excitation, n: usize) -> Result<PauliSum> {
    let prod = |modes: &[(usize, bool)]| -> Result<PauliSum> {
        let mut acc = PauliSum::identity(n, Complex64::new(1.0, 0.0));
        for &(j, dagger) in modes {
            acc = acc.mul(&qubit_ladder(j, dagger, n))?;
        }
        Ok(acc)
    };
    match *e {
        Excitation::Single { occ: i, virt: k } => {
            // Q+_k Q_i - Q+_i Q_k
            let forward = prod(&[(k, true), (i, false)])?;
            let backward = prod(&[(i, true), (k, false)])?;
            forward.sub(&backward)
        }
        Excitation::Double { occ: [i, j], virt: [k, l] } => {
            // Q+_k Q+_l Q_i Q_j - Q+_i Q+_j Q_k Q_l
            let forward = prod(&[(k, true), (l, true), (i, false), (j, false)])?;
            let backward = prod(&[(i, true), (j, true), (k, false), (l, false)])?;
            forward.sub(&backward)
        }
    }
}

/// Qubit-excitation pool: one generator per UCCSD excitation, built from the
/// ladder operators above, so no Z strings appear outside the acting qubits.
pub fn build_qeb_pool(n_so: usize, n_electrons: usize) -> Result<OperatorPool> {
    let mut generators = Vec::new();
    let mut labels = Vec::new();
    for e in uccsd_excitations(n_so, n_electrons)? {
        let g = qeb_generator(&e, n_so)?;
        debug_assert!(g.terms_mutually_commute());
        generators.push(g);
        labels.push(e.label());
    }
    if generators.is_empty() {
        return Err(Error::EmptyPool);
    }
    Ok(OperatorPool { flavor: PoolFlavor::QubitExcitation, n_qubits: n_so, generators, labels })
}
