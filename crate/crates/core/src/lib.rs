//! Core algorithms for a statevector-based variational quantum eigensolver
//! toolkit: exact Pauli-string algebra, molecular-integral handling,
//! Jordan-Wigner mapping, a dense statevector simulator, hardware-efficient /
//! unitary-coupled-cluster / adaptive ansatz construction, classical
//! optimizers, and exact-diagonalization oracles.
//!
//! The crate is `no_std` (with `alloc`); everything here is pure computation
//! on owned data. File formats, the command-line front end, and report
//! writing live in the companion `vqekit-cli` crate.
//!
//! Global conventions, fixed across all modules:
//!
//! * Qubit 0 is the least-significant bit of a basis-state index.
//! * Spin orbitals are block ordered: `0..n_spatial` are alpha,
//!   `n_spatial..2*n_spatial` are beta.
//! * Energies are in Hartree.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod adapt;
pub mod ansatz;
pub mod error;
pub mod fci;
pub mod fermion;
pub mod integrals;
pub mod linalg;
pub mod optim;
pub mod pauli;
pub mod sim;

pub use error::{Error, Result};

/// A complex amplitude or operator coefficient.
pub type Complex64 = num_complex::Complex<f64>;
