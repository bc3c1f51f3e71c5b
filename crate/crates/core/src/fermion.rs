//! Second-quantized operators and the Jordan-Wigner mapping.
//!
//! Creation and annihilation operators map to Pauli strings as
//! `a^dag_j -> (X_j - iY_j)/2 (x) Z_{j-1} ... Z_0` (and `+i` for `a_j`); the
//! Z string on the qubits below `j` carries the fermionic antisymmetry.
//! Products map through [`crate::pauli::PauliSum::mul`], so arbitrary operator
//! strings are supported without normal ordering.
//!
//! This module also generates the spin-conserving single and double
//! excitations of the UCCSD ansatz and their anti-Hermitian Jordan-Wigner
//! generators, which double as the fermionic ADAPT pool.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::integrals::{spin_of, SpinOrbitalHamiltonian};
use crate::pauli::{PauliOp, PauliSum, PauliTerm};
use crate::Complex64;

/// A linear combination of products of creation/annihilation operators.
/// Each factor is `(mode index, dagger)`; factors are written in operator
/// order, so the rightmost factor acts on the ket first.
#[derive(Debug, Clone, Default)]
pub struct FermionOperator {
    pub products: Vec<(Complex64, Vec<(usize, bool)>)>,
}

impl FermionOperator {
    pub fn new() -> FermionOperator {
        FermionOperator { products: Vec::new() }
    }

    pub fn add_product(&mut self, coeff: Complex64, factors: Vec<(usize, bool)>) {
        self.products.push((coeff, factors));
    }

    fn max_mode(&self) -> Option<usize> {
        self.products
            .iter()
            .flat_map(|(_, factors)| factors.iter().map(|&(m, _)| m))
            .max()
    }
}

/// Jordan-Wigner image of a single `a_j` / `a^dag_j` factor.
fn jw_factor(j: usize, dagger: bool, n_so: usize) -> PauliSum {
    let mut x_letters = vec![PauliOp::I; n_so];
    let mut y_letters = vec![PauliOp::I; n_so];
    for k in 0..j {
        x_letters[k] = PauliOp::Z;
        y_letters[k] = PauliOp::Z;
    }
    x_letters[j] = PauliOp::X;
    y_letters[j] = PauliOp::Y;
    let y_coeff = if dagger { Complex64::new(0.0, -0.5) } else { Complex64::new(0.0, 0.5) };
    let mut sum = PauliSum::zero(n_so);
    sum.add_term(PauliTerm::new(x_letters, Complex64::new(0.5, 0.0))).expect("same size");
    sum.add_term(PauliTerm::new(y_letters, y_coeff)).expect("same size");
    sum
}

fn jw_product(coeff: Complex64, factors: &[(usize, bool)], n_so: usize) -> Result<PauliSum> {
    let mut acc = PauliSum::identity(n_so, coeff);
    for &(mode, dagger) in factors {
        if mode >= n_so {
            return Err(Error::DimensionMismatch { left: mode + 1, right: n_so });
        }
        acc = acc.mul(&jw_factor(mode, dagger, n_so))?;
    }
    Ok(acc)
}

/// Maps a fermionic operator to a merged Pauli sum on `n_so` qubits.
pub fn jordan_wigner(f: &FermionOperator, n_so: usize) -> Result<PauliSum> {
    if let Some(max) = f.max_mode() {
        if max >= n_so {
            return Err(Error::DimensionMismatch { left: max + 1, right: n_so });
        }
    }
    let mut acc = PauliSum::zero(n_so.max(1));
    for (coeff, factors) in &f.products {
        acc = acc.add(&jw_product(*coeff, factors, n_so)?)?;
    }
    Ok(acc)
}

/// Jordan-Wigner image of the full second-quantized Hamiltonian
/// `sum_pq h_pq a^dag_p a_q
///  + 1/2 sum_pqrs <pq|rs> a^dag_p a^dag_q a_s a_r + e_core`.
/// The result is Hermitian with real coefficients.
pub fn build_qubit_hamiltonian(h: &SpinOrbitalHamiltonian) -> PauliSum {
    let n = h.n_so;
    let mut acc = PauliSum::identity(n, Complex64::new(h.e_core, 0.0));
    for p in 0..n {
        for q in 0..n {
            let coeff = h.h_at(p, q);
            if coeff == 0.0 {
                continue;
            }
            let term = jw_product(Complex64::new(coeff, 0.0), &[(p, true), (q, false)], n)
                .expect("indices in range");
            acc = acc.add(&term).expect("same size");
        }
    }
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    let coeff = h.g_at(p, q, r, s);
                    if coeff == 0.0 {
                        continue;
                    }
                    let term = jw_product(
                        Complex64::new(0.5 * coeff, 0.0),
                        &[(p, true), (q, true), (s, false), (r, false)],
                        n,
                    )
                    .expect("indices in range");
                    acc = acc.add(&term).expect("same size");
                }
            }
        }
    }
    acc
}

/// Total-number operator `sum_j (I - Z_j) / 2`.
pub fn number_operator(n_so: usize) -> PauliSum {
    let mut acc = PauliSum::identity(n_so, Complex64::new(n_so as f64 / 2.0, 0.0));
    for j in 0..n_so {
        acc.add_term(PauliTerm::single(n_so, j, PauliOp::Z, Complex64::new(-0.5, 0.0)))
            .expect("same size");
    }
    acc
}

/// Total spin-projection operator `S_z = (N_alpha - N_beta) / 2` under block
/// ordering.
pub fn sz_operator(n_so: usize) -> PauliSum {
    let n_spatial = n_so / 2;
    let mut acc = PauliSum::zero(n_so);
    for j in 0..n_so {
        // n_j = (I - Z_j)/2; the identity parts cancel between the blocks.
        let sign = if spin_of(j, n_spatial) { 0.25 } else { -0.25 };
        acc.add_term(PauliTerm::single(n_so, j, PauliOp::Z, Complex64::new(sign, 0.0)))
            .expect("same size");
    }
    acc
}

/// A spin-conserving excitation out of the reference determinant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Excitation {
    /// `occ -> virt`, same spin.
    Single { occ: usize, virt: usize },
    /// `(occ[0], occ[1]) -> (virt[0], virt[1])`, S_z preserving,
    /// with `occ[0] < occ[1]` and `virt[0] < virt[1]`.
    Double { occ: [usize; 2], virt: [usize; 2] },
}

impl Excitation {
    pub fn label(&self) -> String {
        match self {
            Excitation::Single { occ, virt } => format!("{occ}->{virt}"),
            Excitation::Double { occ, virt } => {
                format!("({},{})->({},{})", occ[0], occ[1], virt[0], virt[1])
            }
        }
    }
}

/// All spin-conserving singles and S_z-preserving doubles out of the
/// closed-shell reference, in deterministic order: singles lexicographic by
/// `(i, a)`, then doubles by `(i, j, a, b)`.
pub fn uccsd_excitations(n_so: usize, n_electrons: usize) -> Result<Vec<Excitation>> {
    if n_electrons > n_so {
        return Err(Error::UnsupportedOccupation(format!(
            "{n_electrons} electrons in {n_so} spin orbitals"
        )));
    }
    if n_electrons % 2 != 0 || n_so % 2 != 0 {
        return Err(Error::UnsupportedOccupation(format!(
            "closed shell requires even counts, got {n_electrons} electrons, {n_so} spin orbitals"
        )));
    }
    let n_spatial = n_so / 2;
    let nocc_spatial = n_electrons / 2;
    let occupied: Vec<usize> = (0..nocc_spatial)
        .chain((0..nocc_spatial).map(|i| i + n_spatial))
        .collect();
    let is_occ = |p: usize| {
        let sp = if p >= n_spatial { p - n_spatial } else { p };
        sp < nocc_spatial
    };
    let virtuals: Vec<usize> = (0..n_so).filter(|&p| !is_occ(p)).collect();

    let mut out = Vec::new();
    for &i in &occupied {
        for &a in &virtuals {
            if spin_of(i, n_spatial) == spin_of(a, n_spatial) {
                out.push(Excitation::Single { occ: i, virt: a });
            }
        }
    }
    let spin_count = |p: usize| usize::from(spin_of(p, n_spatial));
    for (x, &i) in occupied.iter().enumerate() {
        for &j in occupied.iter().skip(x + 1) {
            for (y, &a) in virtuals.iter().enumerate() {
                for &b in virtuals.iter().skip(y + 1) {
                    if spin_count(i) + spin_count(j) == spin_count(a) + spin_count(b) {
                        let (i, j) = if i < j { (i, j) } else { (j, i) };
                        out.push(Excitation::Double { occ: [i, j], virt: [a, b] });
                    }
                }
            }
        }
    }
    out.sort_by_key(|e| match *e {
        Excitation::Single { occ, virt } => (0, occ, virt, 0, 0),
        Excitation::Double { occ, virt } => (1, occ[0], occ[1], virt[0], virt[1]),
    });
    Ok(out)
}

/// Anti-Hermitian Jordan-Wigner generator `JW(tau - tau^dag)` of an
/// excitation with unit amplitude. For a single `i -> a` this is
/// `(i/2) Z_{i+1} ... Z_{a-1} (Y_i X_a - X_i Y_a)`; a double expands to eight
/// strings with coefficients `+/- i/8`.
pub fn excitation_generator(e: &Excitation, n_so: usize) -> Result<PauliSum> {
    let mut f = FermionOperator::new();
    let one = Complex64::new(1.0, 0.0);
    match *e {
        Excitation::Single { occ: i, virt: a } => {
            f.add_product(one, vec![(a, true), (i, false)]);
            f.add_product(-one, vec![(i, true), (a, false)]);
        }
        Excitation::Double { occ: [i, j], virt: [a, b] } => {
            f.add_product(one, vec![(a, true), (b, true), (i, false), (j, false)]);
            f.add_product(-one, vec![(j, true), (i, true), (b, false), (a, false)]);
        }
    }
    jordan_wigner(&f, n_so)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrals::{parse_fcidump, to_spin_orbital};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn letters(label: &str) -> Vec<PauliOp> {
        label.chars().rev().map(|ch| PauliOp::from_label(ch).unwrap()).collect()
    }

    #[test]
    fn jw_lowest_mode_has_no_z_string() {
        let mut f = FermionOperator::new();
        f.add_product(c(1.0, 0.0), vec![(0, true)]);
        let p = jordan_wigner(&f, 1).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.coeff_of(&letters("X")), c(0.5, 0.0));
        assert_eq!(p.coeff_of(&letters("Y")), c(0.0, -0.5));
    }

    #[test]
    fn jw_mode_two_carries_z_string() {
        let mut f = FermionOperator::new();
        f.add_product(c(1.0, 0.0), vec![(2, true)]);
        let p = jordan_wigner(&f, 4).unwrap();
        assert_eq!(p.len(), 2);
        // (X_2 - iY_2)/2 * Z_1 Z_0, identity on qubit 3.
        assert_eq!(p.coeff_of(&letters("IXZZ")), c(0.5, 0.0));
        assert_eq!(p.coeff_of(&letters("IYZZ")), c(0.0, -0.5));
    }

    #[test]
    fn jw_preserves_anticommutation_exhaustively() {
        let n = 4;
        let identity = PauliSum::identity(n, c(1.0, 0.0));
        for p in 0..n {
            for q in 0..n {
                let mut ap = FermionOperator::new();
                ap.add_product(c(1.0, 0.0), vec![(p, false)]);
                let mut aq_dag = FermionOperator::new();
                aq_dag.add_product(c(1.0, 0.0), vec![(q, true)]);
                let jp = jordan_wigner(&ap, n).unwrap();
                let jq = jordan_wigner(&aq_dag, n).unwrap();
                let anti = jp.mul(&jq).unwrap().add(&jq.mul(&jp).unwrap()).unwrap();
                if p == q {
                    assert_eq!(anti, identity, "{{a_{p}, a^dag_{q}}} = 1");
                } else {
                    assert!(anti.is_empty(), "{{a_{p}, a^dag_{q}}} = 0");
                }

                let mut aq = FermionOperator::new();
                aq.add_product(c(1.0, 0.0), vec![(q, false)]);
                let jq2 = jordan_wigner(&aq, n).unwrap();
                let anti2 = jp.mul(&jq2).unwrap().add(&jq2.mul(&jp).unwrap()).unwrap();
                assert!(anti2.is_empty(), "{{a_{p}, a_{q}}} = 0");
            }
        }
    }

    #[test]
    fn hamiltonian_of_zero_tensors_is_core_energy() {
        let so = SpinOrbitalHamiltonian {
            n_so: 2,
            h_so: vec![0.0; 4],
            g_phys: vec![0.0; 16],
            e_core: 0.25,
        };
        let h = build_qubit_hamiltonian(&so);
        assert_eq!(h.len(), 1);
        assert_eq!(h.coeff_of(&letters("II")), c(0.25, 0.0));
    }

    #[test]
    fn hamiltonian_is_hermitian_with_real_coefficients() {
        let text = "&FCI NORB=2,NELEC=2,MS2=0,\n&END\n0.674755926814 1 1 1 1\n0.181288808211 1 2 1 2\n0.663468096423 1 1 2 2\n0.697396949021 2 2 2 2\n-1.252477495998 1 1 0 0\n-0.475934275145 2 2 0 0\n0.713753971134 0 0 0 0\n";
        let m = parse_fcidump(text).unwrap();
        let h = build_qubit_hamiltonian(&to_spin_orbital(&m));
        assert!(h.is_hermitian());
        assert!(h.max_imag() < 1e-12);
        assert!(h.len() <= 15, "two-orbital Hamiltonian has at most 15 strings, got {}", h.len());
    }

    #[test]
    fn uccsd_excitations_for_minimal_two_orbital_case() {
        let ex = uccsd_excitations(4, 2).unwrap();
        assert_eq!(
            ex,
            vec![
                Excitation::Single { occ: 0, virt: 1 },
                Excitation::Single { occ: 2, virt: 3 },
                Excitation::Double { occ: [0, 2], virt: [1, 3] },
            ]
        );
    }

    #[test]
    fn uccsd_excitations_empty_when_fully_occupied() {
        assert!(uccsd_excitations(4, 4).unwrap().is_empty());
    }

    #[test]
    fn uccsd_excitation_count_lih_sized() {
        // 12 spin orbitals, 4 electrons: 16 spin-conserving singles and 76
        // S_z-preserving doubles.
        let ex = uccsd_excitations(12, 4).unwrap();
        let singles = ex.iter().filter(|e| matches!(e, Excitation::Single { .. })).count();
        let doubles = ex.iter().filter(|e| matches!(e, Excitation::Double { .. })).count();
        assert_eq!(singles, 16);
        assert_eq!(doubles, 76);
    }

    #[test]
    fn single_generator_closed_form() {
        let e = Excitation::Single { occ: 0, virt: 1 };
        let g = excitation_generator(&e, 2).unwrap();
        assert_eq!(g.len(), 2);
        // (i/2)(Y_0 X_1 - X_0 Y_1)
        assert_eq!(g.coeff_of(&letters("XY")), c(0.0, 0.5));
        assert_eq!(g.coeff_of(&letters("YX")), c(0.0, -0.5));
        assert!(g.is_antihermitian());
    }

    #[test]
    fn single_generator_with_z_string() {
        let e = Excitation::Single { occ: 0, virt: 3 };
        let g = excitation_generator(&e, 4).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.coeff_of(&letters("XZZY")), c(0.0, 0.5));
        assert_eq!(g.coeff_of(&letters("YZZX")), c(0.0, -0.5));
    }

    #[test]
    fn double_generator_has_eight_terms() {
        let e = Excitation::Double { occ: [0, 2], virt: [1, 3] };
        let g = excitation_generator(&e, 4).unwrap();
        assert_eq!(g.len(), 8);
        for t in g.iter_terms() {
            assert_eq!(t.weight(), 4);
            assert!((t.coeff().re).abs() < 1e-15);
            assert!((t.coeff().im.abs() - 0.125).abs() < 1e-15, "coeff +/- i/8, got {}", t.coeff());
        }
        assert!(g.is_antihermitian());
    }

    #[test]
    fn generators_commute_with_number_and_sz() {
        let n_so = 6;
        let nd = number_operator(n_so);
        let sz = sz_operator(n_so);
        for e in uccsd_excitations(n_so, 2).unwrap() {
            let g = excitation_generator(&e, n_so).unwrap();
            assert!(g.is_antihermitian(), "{}", e.label());
            assert!(g.commutator(&nd).unwrap().is_empty(), "number: {}", e.label());
            assert!(g.commutator(&sz).unwrap().is_empty(), "sz: {}", e.label());
        }
    }

    #[test]
    fn generator_antihermitian_via_dense_matrix() {
        let e = Excitation::Single { occ: 0, virt: 2 };
        let g = excitation_generator(&e, 3).unwrap();
        let m = g.to_dense().unwrap();
        let dim = 8;
        for i in 0..dim {
            for j in 0..dim {
                let upper = m[i * dim + j];
                let lower = m[j * dim + i];
                assert!((upper + lower.conj()).norm() < 1e-14, "M^dag = -M");
            }
        }
    }
}
