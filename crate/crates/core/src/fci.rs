//! Exact ground-state oracles.
//!
//! [`fci_ground_state`] diagonalizes the second-quantized Hamiltonian in the
//! basis of occupation-number determinants of a fixed particle-number (and
//! optionally S_z) sector. Matrix elements come from direct application of
//! creation/annihilation operators to bitmask determinants with explicit
//! parity tracking, so this code path shares nothing with the Jordan-Wigner
//! route; agreement between the two is the central correctness check of the
//! whole crate.
//!
//! Determinant convention: `|mask>` is the product of creation operators in
//! ascending mode order applied to the vacuum, which matches the phase
//! convention of the Jordan-Wigner basis states.
//!
//! Sectors up to dimension 4096 are solved densely; larger ones run Lanczos
//! against the matrix-free operator.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::integrals::SpinOrbitalHamiltonian;
use crate::linalg;
use crate::pauli::PauliSum;
use crate::Complex64;

/// Sector dimension above which the solver switches from a dense build to
/// matrix-free Lanczos.
pub const DENSE_SECTOR_LIMIT: usize = 4096;

/// The occupation-number determinants of one symmetry sector, sorted
/// ascending by bitmask.
#[derive(Debug, Clone)]
pub struct SectorBasis {
    pub n_so: usize,
    pub n_electrons: usize,
    /// `Some(2 Sz)` when the sector is additionally spin-projected.
    pub ms2: Option<i32>,
    pub determinants: Vec<u64>,
}

impl SectorBasis {
    /// Enumerates the sector. Block ordering puts alpha spin orbitals at
    /// bits `0..n_so/2` and beta at `n_so/2..n_so`.
    pub fn new(n_so: usize, n_electrons: usize, ms2: Option<i32>) -> Result<SectorBasis> {
        assert!(n_so < 64);
        let n_spatial = n_so / 2;
        let alpha_mask: u64 = (1u64 << n_spatial) - 1;
        let mut determinants = Vec::new();
        for mask in 0u64..(1u64 << n_so) {
            if mask.count_ones() as usize != n_electrons {
                continue;
            }
            if let Some(target) = ms2 {
                let n_alpha = (mask & alpha_mask).count_ones() as i32;
                let n_beta = mask.count_ones() as i32 - n_alpha;
                if n_alpha - n_beta != target {
                    continue;
                }
            }
            determinants.push(mask);
        }
        if determinants.is_empty() {
            return Err(Error::EmptySector);
        }
        Ok(SectorBasis { n_so, n_electrons, ms2, determinants })
    }

    pub fn dimension(&self) -> usize {
        self.determinants.len()
    }

    fn index_of(&self, det: u64) -> Option<usize> {
        self.determinants.binary_search(&det).ok()
    }
}

/// Ground eigenpair of a sector Hamiltonian.
#[derive(Debug, Clone)]
pub struct FciResult {
    pub energy: f64,
    /// Ground vector over [`SectorBasis::determinants`].
    pub ground_vector: Vec<f64>,
    pub dimension: usize,
    /// `||H v - E v||`, computed explicitly.
    pub residual: f64,
}

/// Sparse view of the spin-orbital tensors: only nonzero entries.
struct SparseHamiltonian {
    e_core: f64,
    one_body: Vec<(usize, usize, f64)>,
    two_body: Vec<(usize, usize, usize, usize, f64)>,
}

impl SparseHamiltonian {
    fn from_spin_orbital(h: &SpinOrbitalHamiltonian) -> SparseHamiltonian {
        let n = h.n_so;
        let mut one_body = Vec::new();
        for p in 0..n {
            for q in 0..n {
                let v = h.h_at(p, q);
                if v != 0.0 {
                    one_body.push((p, q, v));
                }
            }
        }
        let mut two_body = Vec::new();
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        let v = h.g_at(p, q, r, s);
                        if v != 0.0 {
                            two_body.push((p, q, r, s, v));
                        }
                    }
                }
            }
        }
        SparseHamiltonian { e_core: h.e_core, one_body, two_body }
    }
}

#[inline]
fn parity_below(mask: u64, p: usize) -> f64 {
    if (mask & ((1u64 << p) - 1)).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

#[inline]
fn annihilate(mask: u64, p: usize) -> Option<(u64, f64)> {
    let bit = 1u64 << p;
    if mask & bit == 0 {
        None
    } else {
        Some((mask & !bit, parity_below(mask, p)))
    }
}

#[inline]
fn create(mask: u64, p: usize) -> Option<(u64, f64)> {
    let bit = 1u64 << p;
    if mask & bit != 0 {
        None
    } else {
        Some((mask | bit, parity_below(mask, p)))
    }
}

/// Applies the Hamiltonian to one determinant, emitting
/// `(target determinant, amplitude)` pairs. The two-body part applies
/// `1/2 <pq|rs> a+_p a+_q a_s a_r` operator by operator.
fn apply_to_determinant<F: FnMut(u64, f64)>(h: &SparseHamiltonian, det: u64, mut emit: F) {
    emit(det, h.e_core);
    for &(p, q, v) in &h.one_body {
        if let Some((d1, s1)) = annihilate(det, q) {
            if let Some((d2, s2)) = create(d1, p) {
                emit(d2, v * s1 * s2);
            }
        }
    }
    for &(p, q, r, s, v) in &h.two_body {
        if let Some((d1, s1)) = annihilate(det, r) {
            if let Some((d2, s2)) = annihilate(d1, s) {
                if let Some((d3, s3)) = create(d2, q) {
                    if let Some((d4, s4)) = create(d3, p) {
                        emit(d4, 0.5 * v * s1 * s2 * s3 * s4);
                    }
                }
            }
        }
    }
}

/// Matrix-free `out = H in` over the sector basis. Targets outside the basis
/// are dropped, which realizes the sector-projected operator.
fn sector_apply(h: &SparseHamiltonian, basis: &SectorBasis, input: &[f64], out: &mut [f64]) {
    out.fill(0.0);
    for (col, &det) in basis.determinants.iter().enumerate() {
        let amp = input[col];
        if amp == 0.0 {
            continue;
        }
        apply_to_determinant(h, det, |target, value| {
            if let Some(row) = basis.index_of(target) {
                out[row] += value * amp;
            }
        });
    }
}

fn sector_dense(h: &SparseHamiltonian, basis: &SectorBasis) -> Vec<f64> {
    let dim = basis.dimension();
    let mut m = vec![0.0; dim * dim];
    for (col, &det) in basis.determinants.iter().enumerate() {
        apply_to_determinant(h, det, |target, value| {
            if let Some(row) = basis.index_of(target) {
                m[row * dim + col] += value;
            }
        });
    }
    m
}

/// Lowest eigenpair of the Hamiltonian restricted to the given sector,
/// built from Slater determinants independently of any Pauli representation.
pub fn fci_ground_state_in_basis(
    h: &SpinOrbitalHamiltonian,
    basis: &SectorBasis,
) -> Result<FciResult> {
    if basis.n_so != h.n_so {
        return Err(Error::DimensionMismatch { left: basis.n_so, right: h.n_so });
    }
    let sparse = SparseHamiltonian::from_spin_orbital(h);
    let dim = basis.dimension();
    let (energy, ground_vector) = if dim <= DENSE_SECTOR_LIMIT {
        let m = sector_dense(&sparse, basis);
        linalg::lowest_eigenpair_symmetric(&m, dim)?
    } else {
        let r = linalg::lanczos_lowest(
            |x, out| sector_apply(&sparse, basis, x, out),
            dim,
            1e-10,
            None,
        )?;
        (r.value, r.vector)
    };

    let mut hv = vec![0.0; dim];
    sector_apply(&sparse, basis, &ground_vector, &mut hv);
    let mut res_sq = 0.0;
    for (a, b) in hv.iter().zip(ground_vector.iter()) {
        res_sq += (a - energy * b) * (a - energy * b);
    }
    Ok(FciResult { energy, ground_vector, dimension: dim, residual: libm::sqrt(res_sq) })
}

/// Ground state in the `(n_electrons, ms2)` sector.
pub fn fci_ground_state(
    h: &SpinOrbitalHamiltonian,
    n_electrons: usize,
    ms2: i32,
) -> Result<FciResult> {
    let basis = SectorBasis::new(h.n_so, n_electrons, Some(ms2))?;
    fci_ground_state_in_basis(h, &basis)
}

/// Lowest eigenvalue of the dense realization of a Pauli sum. Test oracle;
/// capped at [`crate::pauli::DEFAULT_DENSE_CAP`] qubits.
pub fn dense_ground_energy(h: &PauliSum) -> Result<f64> {
    let dim = 1usize << h.n_qubits();
    let m = h.to_dense()?;
    let (value, _) = linalg::hermitian_lowest_eigenpair(&m, dim)?;
    Ok(value)
}

/// Lowest eigenvalue of a Pauli sum restricted to the span of the given
/// basis states. This is the Jordan-Wigner side of the cross-oracle check:
/// the matrix is assembled from Pauli masks, not from fermionic algebra.
pub fn sector_ground_energy_jw(h: &PauliSum, determinants: &[u64]) -> Result<f64> {
    if determinants.is_empty() {
        return Err(Error::EmptySector);
    }
    let dim = determinants.len();
    let mut m = vec![Complex64::new(0.0, 0.0); dim * dim];
    for (col, &det) in determinants.iter().enumerate() {
        for term in h.iter_terms() {
            let (flip, zy, base) = term.mask_parts();
            let target = det ^ flip;
            if let Ok(row) = determinants.binary_search(&target) {
                let phase = if (det & zy).count_ones() % 2 == 0 { base } else { -base };
                m[row * dim + col] += phase;
            }
        }
    }
    let (value, _) = linalg::hermitian_lowest_eigenpair(&m, dim)?;
    Ok(value)
}
