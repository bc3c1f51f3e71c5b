//! Dense statevector simulation.
//!
//! A [`Statevector`] holds `2^n` complex amplitudes with qubit 0 as the
//! least-significant bit of the basis index. Operations are value-semantic:
//! they return new states and never mutate their input, so states can be
//! shared freely across threads and screened concurrently.
//!
//! Pauli exponentials use `exp(i t P) = cos(t) I + i sin(t) P`, valid because
//! every Pauli string squares to the identity. Exponentials of anti-Hermitian
//! generators are applied as a single Trotter step over the generator's terms
//! in their deterministic stored order; for single- and double-excitation
//! generators the terms mutually commute, making that product exact.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::pauli::{PauliOp, PauliSum, PauliTerm};
use crate::Complex64;

/// Gate-count metadata: CNOTs from the staircase decomposition of Pauli
/// exponentials plus entangling layers, and the number of variational
/// parameters. Additive under ansatz concatenation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GateCost {
    pub cnot_count: u64,
    pub parameter_count: u64,
}

impl GateCost {
    pub fn new(cnot_count: u64, parameter_count: u64) -> GateCost {
        GateCost { cnot_count, parameter_count }
    }

    pub fn plus(self, rhs: GateCost) -> GateCost {
        GateCost {
            cnot_count: self.cnot_count + rhs.cnot_count,
            parameter_count: self.parameter_count + rhs.parameter_count,
        }
    }
}

/// Staircase cost of one parameterized Pauli-string exponential of the given
/// weight: `2 (w - 1)` CNOTs and one parameter.
pub fn pauli_exponential_cost(weight: usize) -> GateCost {
    let cnots = if weight > 1 { 2 * (weight as u64 - 1) } else { 0 };
    GateCost::new(cnots, 1)
}

/// Cost of exponentiating a multi-term generator under one shared parameter:
/// the CNOT counts of its term exponentials add up, the parameter is one.
pub fn generator_cost(g: &PauliSum) -> GateCost {
    let cnots: u64 = g
        .iter_terms()
        .map(|t| pauli_exponential_cost(t.weight()).cnot_count)
        .sum();
    GateCost::new(cnots, 1)
}

/// `2^n` complex amplitudes; qubit 0 is the least-significant index bit.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// Computational basis state `|mask>`.
    pub fn basis_state(n_qubits: usize, mask: u64) -> Result<Statevector> {
        assert!(n_qubits > 0 && n_qubits < 64);
        let dim = 1usize << n_qubits;
        if mask as usize >= dim {
            return Err(Error::DimensionMismatch {
                left: 64 - mask.leading_zeros() as usize,
                right: n_qubits,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[mask as usize] = Complex64::new(1.0, 0.0);
        Ok(Statevector { n_qubits, amps })
    }

    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex64>) -> Statevector {
        assert_eq!(amps.len(), 1 << n_qubits);
        Statevector { n_qubits, amps }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `<self|rhs>`.
    pub fn inner(&self, rhs: &Statevector) -> Result<Complex64> {
        self.check_size(rhs.n_qubits)?;
        Ok(self
            .amps
            .iter()
            .zip(rhs.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    fn check_size(&self, n: usize) -> Result<()> {
        if self.n_qubits != n {
            return Err(Error::DimensionMismatch { left: self.n_qubits, right: n });
        }
        Ok(())
    }

    /// `P|self>` for a single weighted Pauli string.
    pub fn apply_term(&self, term: &PauliTerm) -> Result<Statevector> {
        self.check_size(term.n_qubits())?;
        let (flip, zy, base) = term.mask_parts();
        let flip = flip as usize;
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (k, &a) in self.amps.iter().enumerate() {
            let phase = if (k as u64 & zy).count_ones() % 2 == 0 { base } else { -base };
            out[k ^ flip] = phase * a;
        }
        Ok(Statevector { n_qubits: self.n_qubits, amps: out })
    }

    /// `A|self>` for a Pauli sum (not unitary in general).
    pub fn apply_sum(&self, sum: &PauliSum) -> Result<Statevector> {
        self.check_size(sum.n_qubits())?;
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for term in sum.iter_terms() {
            let (flip, zy, base) = term.mask_parts();
            let flip = flip as usize;
            for (k, &a) in self.amps.iter().enumerate() {
                let phase = if (k as u64 & zy).count_ones() % 2 == 0 { base } else { -base };
                out[k ^ flip] += phase * a;
            }
        }
        Ok(Statevector { n_qubits: self.n_qubits, amps: out })
    }

    /// Real part of `<self|h|self>` for Hermitian `h`. The imaginary part is
    /// zero up to rounding and is checked in debug builds.
    pub fn expectation(&self, h: &PauliSum) -> Result<f64> {
        self.check_size(h.n_qubits())?;
        if !h.is_hermitian() {
            return Err(Error::NotHermitian);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for term in h.iter_terms() {
            let (flip, zy, base) = term.mask_parts();
            let flip = flip as usize;
            let mut term_acc = Complex64::new(0.0, 0.0);
            for (k, &a) in self.amps.iter().enumerate() {
                let sign = if (k as u64 & zy).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                term_acc += self.amps[k ^ flip].conj() * a * sign;
            }
            acc += base * term_acc;
        }
        debug_assert!(acc.im.abs() < 1e-10, "Hermitian expectation has imag {}", acc.im);
        Ok(acc.re)
    }

    /// `exp(i theta P)|self>` for a single Hermitian term with coefficient
    /// `+/- 1`; the sign folds into the angle.
    pub fn apply_pauli_exponential(&self, p: &PauliTerm, theta: f64) -> Result<Statevector> {
        self.check_size(p.n_qubits())?;
        let coeff = p.coeff();
        if coeff.im.abs() > 1e-12 || (coeff.re.abs() - 1.0).abs() > 1e-12 {
            return Err(Error::NonUnitCoefficient);
        }
        let t = if coeff.re < 0.0 { -theta } else { theta };
        let (cos_t, sin_t) = (libm::cos(t), libm::sin(t));
        let unit = p.with_coeff(Complex64::new(1.0, 0.0));
        let (flip, zy, base) = unit.mask_parts();
        let flip = flip as usize;
        let i_sin = Complex64::new(0.0, sin_t) * base;
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (k, &a) in self.amps.iter().enumerate() {
            let phase = if (k as u64 & zy).count_ones() % 2 == 0 { i_sin } else { -i_sin };
            out[k ^ flip] += phase * a;
            out[k] += cos_t * a;
        }
        Ok(Statevector { n_qubits: self.n_qubits, amps: out })
    }

    /// Single-Trotter-step `prod_k exp(theta g_k)|self>` over the terms of an
    /// anti-Hermitian generator, in their deterministic stored order. Exact
    /// whenever the terms mutually commute.
    pub fn apply_generator_exponential(&self, g: &PauliSum, theta: f64) -> Result<Statevector> {
        self.check_size(g.n_qubits())?;
        if !g.is_antihermitian() {
            return Err(Error::NotAntiHermitian);
        }
        let mut state = self.clone();
        for term in g.iter_terms() {
            // c = i b with b real, so exp(theta c P) = exp(i (theta b) P).
            let b = term.coeff().im;
            let unit = term.with_coeff(Complex64::new(1.0, 0.0));
            state = state.apply_pauli_exponential(&unit, theta * b)?;
        }
        Ok(state)
    }

    /// Controlled-X gate.
    pub fn apply_cnot(&self, control: usize, target: usize) -> Result<Statevector> {
        if control >= self.n_qubits || target >= self.n_qubits || control == target {
            return Err(Error::InvalidConfig(alloc::format!(
                "cnot({control}, {target}) on {} qubits",
                self.n_qubits
            )));
        }
        let cmask = 1usize << control;
        let tmask = 1usize << target;
        let mut out = self.amps.clone();
        for k in 0..out.len() {
            if k & cmask != 0 && k & tmask == 0 {
                out.swap(k, k | tmask);
            }
        }
        Ok(Statevector { n_qubits: self.n_qubits, amps: out })
    }

    /// Standard rotation gate `R_p(theta) = exp(-i theta P / 2)` on one qubit.
    pub fn apply_rotation(&self, axis: PauliOp, qubit: usize, theta: f64) -> Result<Statevector> {
        if axis == PauliOp::I {
            return Err(Error::InvalidConfig("rotation about the identity".into()));
        }
        let p = PauliTerm::single(self.n_qubits, qubit, axis, Complex64::new(1.0, 0.0));
        self.apply_pauli_exponential(&p, -theta / 2.0)
    }
}
