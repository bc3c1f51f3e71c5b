//! Exact symbolic algebra of n-qubit Pauli strings and complex-weighted sums
//! of them.
//!
//! A [`PauliTerm`] is a tensor product of single-qubit Paulis with a complex
//! coefficient; a [`PauliSum`] is a linear combination with like-letter terms
//! merged. All operations are pure and exact up to the pruning tolerance.
//!
//! Convention: qubit 0 is the least-significant bit of a basis-state index.
//! In the text rendering the rightmost letter is qubit 0, so `"XZIY"` on four
//! qubits puts `Y` on qubit 0 and `X` on qubit 3.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::Complex64;

/// Coefficients with modulus below this are dropped after every arithmetic
/// operation. Well above f64 rounding noise, far below chemical accuracy.
pub const DEFAULT_PRUNE_TOLERANCE: f64 = 1e-12;

/// Default cap on dense realizations (`2^n x 2^n` matrices).
pub const DEFAULT_DENSE_CAP: usize = 14;

/// A single-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PauliOp {
    I,
    X,
    Y,
    Z,
}

impl PauliOp {
    /// All four operators, in canonical order.
    pub const ALL: [PauliOp; 4] = [PauliOp::I, PauliOp::X, PauliOp::Y, PauliOp::Z];

    pub fn label(self) -> char {
        match self {
            PauliOp::I => 'I',
            PauliOp::X => 'X',
            PauliOp::Y => 'Y',
            PauliOp::Z => 'Z',
        }
    }

    pub fn from_label(c: char) -> Option<PauliOp> {
        match c {
            'I' => Some(PauliOp::I),
            'X' => Some(PauliOp::X),
            'Y' => Some(PauliOp::Y),
            'Z' => Some(PauliOp::Z),
            _ => None,
        }
    }

    /// Single-qubit product `self * rhs`, returned as (power of i, operator).
    ///
    /// The phase exponent is in `{0,1,3}`: products of distinct non-identity
    /// Paulis pick up `+/-i`, everything else is phase-free.
    fn mul(self, rhs: PauliOp) -> (u8, PauliOp) {
        use PauliOp::*;
        match (self, rhs) {
            (I, p) => (0, p),
            (p, I) => (0, p),
            (X, X) | (Y, Y) | (Z, Z) => (0, I),
            (X, Y) => (1, Z),
            (Y, X) => (3, Z),
            (Y, Z) => (1, X),
            (Z, Y) => (3, X),
            (Z, X) => (1, Y),
            (X, Z) => (3, Y),
        }
    }
}

fn i_power(k: u8) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// A complex-weighted tensor product of single-qubit Paulis.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    n_qubits: usize,
    letters: Vec<PauliOp>,
    coeff: Complex64,
}

impl PauliTerm {
    /// Builds a term from its letter sequence; `letters[j]` acts on qubit `j`.
    pub fn new(letters: Vec<PauliOp>, coeff: Complex64) -> PauliTerm {
        assert!(!letters.is_empty(), "a Pauli term needs at least one qubit");
        PauliTerm { n_qubits: letters.len(), letters, coeff }
    }

    /// The identity on `n_qubits` qubits with the given coefficient.
    pub fn identity(n_qubits: usize, coeff: Complex64) -> PauliTerm {
        PauliTerm::new(alloc::vec![PauliOp::I; n_qubits], coeff)
    }

    /// A single non-identity letter at `qubit`, identity elsewhere.
    pub fn single(n_qubits: usize, qubit: usize, op: PauliOp, coeff: Complex64) -> PauliTerm {
        assert!(qubit < n_qubits);
        let mut letters = alloc::vec![PauliOp::I; n_qubits];
        letters[qubit] = op;
        PauliTerm::new(letters, coeff)
    }

    /// Parses a label like `"XZIY"` where the rightmost character is qubit 0.
    pub fn from_label(label: &str, coeff: Complex64) -> Option<PauliTerm> {
        let letters: Option<Vec<PauliOp>> =
            label.chars().rev().map(PauliOp::from_label).collect();
        let letters = letters?;
        if letters.is_empty() {
            return None;
        }
        Some(PauliTerm::new(letters, coeff))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn coeff(&self) -> Complex64 {
        self.coeff
    }

    pub fn letters(&self) -> &[PauliOp] {
        &self.letters
    }

    pub fn with_coeff(&self, coeff: Complex64) -> PauliTerm {
        PauliTerm { n_qubits: self.n_qubits, letters: self.letters.clone(), coeff }
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|&&p| p != PauliOp::I).count()
    }

    pub fn is_identity_string(&self) -> bool {
        self.letters.iter().all(|&p| p == PauliOp::I)
    }

    /// Label with qubit 0 rightmost, e.g. `"XZIY"`.
    pub fn label(&self) -> String {
        self.letters.iter().rev().map(|p| p.label()).collect()
    }

    /// Product of two terms; coefficients and the per-qubit `+/-1, +/-i`
    /// phases accumulate into the result coefficient.
    pub fn mul(&self, rhs: &PauliTerm) -> Result<PauliTerm> {
        if self.n_qubits != rhs.n_qubits {
            return Err(Error::DimensionMismatch { left: self.n_qubits, right: rhs.n_qubits });
        }
        let mut phase = 0u8;
        let mut letters = Vec::with_capacity(self.n_qubits);
        for (&a, &b) in self.letters.iter().zip(rhs.letters.iter()) {
            let (k, p) = a.mul(b);
            phase = (phase + k) % 4;
            letters.push(p);
        }
        Ok(PauliTerm { n_qubits: self.n_qubits, letters, coeff: self.coeff * rhs.coeff * i_power(phase) })
    }

    /// Two Pauli strings either commute or anticommute; they anticommute
    /// exactly when the letters differ and are both non-identity on an odd
    /// number of qubits.
    pub fn commutes_with(&self, rhs: &PauliTerm) -> bool {
        let clashes = self
            .letters
            .iter()
            .zip(rhs.letters.iter())
            .filter(|(&a, &b)| a != PauliOp::I && b != PauliOp::I && a != b)
            .count();
        clashes % 2 == 0
    }

    /// Bit masks driving dense realization and statevector application:
    /// `flip` marks X/Y qubits, `zy` marks Z/Y qubits, and `base` is the
    /// coefficient times `i^(#Y)`. Requires `n_qubits <= 64`.
    pub(crate) fn mask_parts(&self) -> (u64, u64, Complex64) {
        assert!(self.n_qubits <= 64, "mask representation limited to 64 qubits");
        let mut flip = 0u64;
        let mut zy = 0u64;
        let mut n_y = 0u8;
        for (j, &p) in self.letters.iter().enumerate() {
            match p {
                PauliOp::I => {}
                PauliOp::X => flip |= 1 << j,
                PauliOp::Y => {
                    flip |= 1 << j;
                    zy |= 1 << j;
                    n_y = (n_y + 1) % 4;
                }
                PauliOp::Z => zy |= 1 << j,
            }
        }
        (flip, zy, self.coeff * i_power(n_y))
    }
}

impl fmt::Display for PauliTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = self.coeff.re;
        let im = self.coeff.im;
        let sign = if im < 0.0 || im.is_sign_negative() { '-' } else { '+' };
        write!(f, "({re}{sign}{im}j) * {}", self.label(), im = abs_f64(im))
    }
}

fn abs_f64(x: f64) -> f64 {
    libm::fabs(x)
}

/// A linear combination of Pauli strings over a common qubit count, stored
/// with like-letter terms merged. Term storage is keyed by letter sequence,
/// so merging is one map lookup and iteration order is deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: BTreeMap<Vec<PauliOp>, Complex64>,
}

impl PauliSum {
    /// The additive zero on `n_qubits` qubits.
    pub fn zero(n_qubits: usize) -> PauliSum {
        assert!(n_qubits > 0);
        PauliSum { n_qubits, terms: BTreeMap::new() }
    }

    pub fn from_term(term: PauliTerm) -> PauliSum {
        let mut sum = PauliSum::zero(term.n_qubits);
        sum.accumulate(term);
        sum.prune(DEFAULT_PRUNE_TOLERANCE);
        sum
    }

    pub fn from_terms<I: IntoIterator<Item = PauliTerm>>(n_qubits: usize, terms: I) -> Result<PauliSum> {
        let mut sum = PauliSum::zero(n_qubits);
        for t in terms {
            if t.n_qubits != n_qubits {
                return Err(Error::DimensionMismatch { left: n_qubits, right: t.n_qubits });
            }
            sum.accumulate(t);
        }
        sum.prune(DEFAULT_PRUNE_TOLERANCE);
        Ok(sum)
    }

    /// The identity with coefficient `coeff`.
    pub fn identity(n_qubits: usize, coeff: Complex64) -> PauliSum {
        PauliSum::from_term(PauliTerm::identity(n_qubits, coeff))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in deterministic (letter-sorted) order.
    pub fn iter_terms(&self) -> impl Iterator<Item = PauliTerm> + '_ {
        self.terms.iter().map(move |(letters, &coeff)| PauliTerm {
            n_qubits: self.n_qubits,
            letters: letters.clone(),
            coeff,
        })
    }

    /// Coefficient of the given letter sequence, zero if absent.
    pub fn coeff_of(&self, letters: &[PauliOp]) -> Complex64 {
        self.terms.get(letters).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    fn accumulate(&mut self, term: PauliTerm) {
        debug_assert_eq!(term.n_qubits, self.n_qubits);
        let entry = self.terms.entry(term.letters).or_insert(Complex64::new(0.0, 0.0));
        *entry += term.coeff;
    }

    /// Adds `term` into the sum, merging and pruning.
    pub fn add_term(&mut self, term: PauliTerm) -> Result<()> {
        if term.n_qubits != self.n_qubits {
            return Err(Error::DimensionMismatch { left: self.n_qubits, right: term.n_qubits });
        }
        self.accumulate(term);
        self.prune(DEFAULT_PRUNE_TOLERANCE);
        Ok(())
    }

    /// Drops stored terms with `|coeff| < tol`.
    pub fn prune(&mut self, tol: f64) {
        let tol_sq = tol * tol;
        self.terms.retain(|_, c| c.norm_sqr() >= tol_sq);
    }

    pub fn add(&self, rhs: &PauliSum) -> Result<PauliSum> {
        if self.n_qubits != rhs.n_qubits {
            return Err(Error::DimensionMismatch { left: self.n_qubits, right: rhs.n_qubits });
        }
        let mut out = self.clone();
        for (letters, &coeff) in rhs.terms.iter() {
            let entry = out.terms.entry(letters.clone()).or_insert(Complex64::new(0.0, 0.0));
            *entry += coeff;
        }
        out.prune(DEFAULT_PRUNE_TOLERANCE);
        Ok(out)
    }

    pub fn sub(&self, rhs: &PauliSum) -> Result<PauliSum> {
        self.add(&rhs.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> PauliSum {
        let mut out = PauliSum::zero(self.n_qubits);
        for (letters, &coeff) in self.terms.iter() {
            out.terms.insert(letters.clone(), coeff * c);
        }
        out.prune(DEFAULT_PRUNE_TOLERANCE);
        out
    }

    /// Operator product, expanded term by term and merged.
    pub fn mul(&self, rhs: &PauliSum) -> Result<PauliSum> {
        if self.n_qubits != rhs.n_qubits {
            return Err(Error::DimensionMismatch { left: self.n_qubits, right: rhs.n_qubits });
        }
        let mut out = PauliSum::zero(self.n_qubits);
        for a in self.iter_terms() {
            for b in rhs.iter_terms() {
                out.accumulate(a.mul(&b)?);
            }
        }
        out.prune(DEFAULT_PRUNE_TOLERANCE);
        Ok(out)
    }

    /// `self * rhs - rhs * self`, merged and pruned.
    pub fn commutator(&self, rhs: &PauliSum) -> Result<PauliSum> {
        self.mul(rhs)?.sub(&rhs.mul(self)?)
    }

    /// Adjoint: Pauli strings are Hermitian, so only coefficients conjugate.
    pub fn adjoint(&self) -> PauliSum {
        let mut out = PauliSum::zero(self.n_qubits);
        for (letters, coeff) in self.terms.iter() {
            out.terms.insert(letters.clone(), coeff.conj());
        }
        out
    }

    /// True when every merged coefficient is real within `tol`.
    pub fn is_hermitian_with(&self, tol: f64) -> bool {
        self.terms.values().all(|c| abs_f64(c.im) <= tol)
    }

    /// True when every merged coefficient is purely imaginary within `tol`.
    pub fn is_antihermitian_with(&self, tol: f64) -> bool {
        self.terms.values().all(|c| abs_f64(c.re) <= tol)
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_hermitian_with(DEFAULT_PRUNE_TOLERANCE)
    }

    pub fn is_antihermitian(&self) -> bool {
        self.is_antihermitian_with(DEFAULT_PRUNE_TOLERANCE)
    }

    /// Largest |imaginary part| over stored coefficients.
    pub fn max_imag(&self) -> f64 {
        self.terms.values().map(|c| abs_f64(c.im)).fold(0.0, f64::max)
    }

    /// True when all stored term pairs commute as Pauli strings.
    pub fn terms_mutually_commute(&self) -> bool {
        let terms: Vec<PauliTerm> = self.iter_terms().collect();
        for (i, a) in terms.iter().enumerate() {
            for b in terms.iter().skip(i + 1) {
                if !a.commutes_with(b) {
                    return false;
                }
            }
        }
        true
    }

    /// Dense `2^n x 2^n` matrix, row-major, with qubit 0 as the
    /// least-significant bit of the basis index.
    pub fn to_dense(&self) -> Result<Vec<Complex64>> {
        self.to_dense_capped(DEFAULT_DENSE_CAP)
    }

    pub fn to_dense_capped(&self, cap: usize) -> Result<Vec<Complex64>> {
        if self.n_qubits > cap {
            return Err(Error::QubitCapExceeded { n_qubits: self.n_qubits, cap });
        }
        let dim = 1usize << self.n_qubits;
        let mut m = alloc::vec![Complex64::new(0.0, 0.0); dim * dim];
        for term in self.iter_terms() {
            let (flip, zy, base) = term.mask_parts();
            for col in 0..dim {
                let row = col ^ (flip as usize);
                let sign = if ((col as u64 & zy).count_ones()) % 2 == 0 { 1.0 } else { -1.0 };
                m[row * dim + col] += base * sign;
            }
        }
        Ok(m)
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "(0+0j) * {}", PauliTerm::identity(self.n_qubits, Complex64::new(0.0, 0.0)).label());
        }
        let mut first = true;
        for term in self.iter_terms() {
            if !first {
                writeln!(f)?;
            }
            write!(f, "{term}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn term(label: &str, coeff: Complex64) -> PauliTerm {
        PauliTerm::from_label(label, coeff).unwrap()
    }

    /// Naive dense matrix product, the oracle for symbolic multiplication.
    fn matmul(a: &[Complex64], b: &[Complex64], dim: usize) -> Vec<Complex64> {
        let mut out = vec![c(0.0, 0.0); dim * dim];
        for i in 0..dim {
            for k in 0..dim {
                let aik = a[i * dim + k];
                if aik.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..dim {
                    out[i * dim + j] += aik * b[k * dim + j];
                }
            }
        }
        out
    }

    fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
        a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn single_qubit_products() {
        let x = term("X", c(1.0, 0.0));
        let y = term("Y", c(1.0, 0.0));
        let xx = x.mul(&x).unwrap();
        assert_eq!(xx.label(), "I");
        assert_eq!(xx.coeff(), c(1.0, 0.0));
        let xy = x.mul(&y).unwrap();
        assert_eq!(xy.label(), "Z");
        assert_eq!(xy.coeff(), c(0.0, 1.0));
        let yx = y.mul(&x).unwrap();
        assert_eq!(yx.coeff(), c(0.0, -1.0));
    }

    #[test]
    fn two_qubit_product_matches_dense_oracle() {
        // (X (x) Z) * (Y (x) I) = (Z (x) Z, i). Label order: qubit 0 rightmost.
        let a = term("XZ", c(1.0, 0.0)); // X on qubit 1, Z on qubit 0
        let b = term("YI", c(1.0, 0.0));
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.label(), "ZZ");
        assert_eq!(prod.coeff(), c(0.0, 1.0));

        let da = PauliSum::from_term(a).to_dense().unwrap();
        let db = PauliSum::from_term(b).to_dense().unwrap();
        let dp = PauliSum::from_term(prod).to_dense().unwrap();
        assert!(max_abs_diff(&matmul(&da, &db, 4), &dp) < 1e-14);
    }

    #[test]
    fn mismatched_sizes_error() {
        let a = term("X", c(1.0, 0.0));
        let b = term("XX", c(1.0, 0.0));
        assert!(matches!(a.mul(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn dense_single_qubit() {
        let z = PauliSum::from_term(term("Z", c(1.0, 0.0))).to_dense().unwrap();
        assert_eq!(z, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]);
        let x = PauliSum::from_term(term("X", c(1.0, 0.0))).to_dense().unwrap();
        assert_eq!(x, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let y = PauliSum::from_term(term("Y", c(1.0, 0.0))).to_dense().unwrap();
        assert_eq!(y, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]);
    }

    #[test]
    fn dense_zz_is_diagonal() {
        // ZZ on 2 qubits -> diag(1, -1, -1, 1), hand Kronecker.
        let zz = PauliSum::from_term(term("ZZ", c(1.0, 0.0))).to_dense().unwrap();
        for (idx, expect) in [1.0, -1.0, -1.0, 1.0].iter().enumerate() {
            assert_eq!(zz[idx * 4 + idx], c(*expect, 0.0));
        }
        let off: f64 = (0..16)
            .filter(|k| k / 4 != k % 4)
            .map(|k| zz[k].norm())
            .sum();
        assert_eq!(off, 0.0);
    }

    #[test]
    fn dense_cap_enforced() {
        let p = PauliSum::identity(3, c(1.0, 0.0));
        assert!(matches!(p.to_dense_capped(2), Err(Error::QubitCapExceeded { .. })));
    }

    #[test]
    fn addition_merges_and_cancels() {
        let x = PauliSum::from_term(term("X", c(1.0, 0.0)));
        let two_x = x.add(&x).unwrap();
        assert_eq!(two_x.len(), 1);
        assert_eq!(two_x.coeff_of(&[PauliOp::X]), c(2.0, 0.0));

        let cancel = x.add(&x.scale(c(-1.0, 0.0))).unwrap();
        assert!(cancel.is_empty());

        let sum_a = PauliSum::from_terms(1, [term("X", c(0.5, 0.0)), term("Y", c(0.5, 0.0))]).unwrap();
        let sum_b = PauliSum::from_terms(1, [term("X", c(0.5, 0.0)), term("Y", c(-0.5, 0.0))]).unwrap();
        let merged = sum_a.add(&sum_b).unwrap();
        assert_eq!(merged.len(), 1);
        assert_eq!(merged.coeff_of(&[PauliOp::X]), c(1.0, 0.0));
    }

    #[test]
    fn commutator_basics() {
        let x = PauliSum::from_term(term("X", c(1.0, 0.0)));
        let y = PauliSum::from_term(term("Y", c(1.0, 0.0)));
        assert!(x.commutator(&x).unwrap().is_empty());
        let comm = x.commutator(&y).unwrap();
        assert_eq!(comm.len(), 1);
        assert_eq!(comm.coeff_of(&[PauliOp::Z]), c(0.0, 2.0));
    }

    #[test]
    fn single_term_commutators_are_zero_or_one_term() {
        // Brute force over all 16 two-qubit letter pairs against dense matrices.
        let dim = 4;
        for a_letters in pair_letters() {
            for b_letters in pair_letters() {
                let a = PauliSum::from_term(PauliTerm::new(a_letters.clone(), c(1.0, 0.0)));
                let b = PauliSum::from_term(PauliTerm::new(b_letters.clone(), c(1.0, 0.0)));
                let comm = a.commutator(&b).unwrap();
                assert!(comm.len() <= 1, "commutator of single terms has at most one term");

                let da = a.to_dense().unwrap();
                let db = b.to_dense().unwrap();
                let mut dense_comm = matmul(&da, &db, dim);
                let ba = matmul(&db, &da, dim);
                for k in 0..dim * dim {
                    dense_comm[k] -= ba[k];
                }
                let dc = comm.to_dense().unwrap();
                assert!(max_abs_diff(&dense_comm, &dc) < 1e-14);

                if comm.len() == 1 {
                    let t = comm.iter_terms().next().unwrap();
                    assert!((t.coeff().norm() - 2.0).abs() < 1e-14, "coeff is 2 * phase");
                }
            }
        }
    }

    fn pair_letters() -> Vec<Vec<PauliOp>> {
        let mut out = Vec::new();
        for &a in PauliOp::ALL.iter() {
            for &b in PauliOp::ALL.iter() {
                out.push(vec![a, b]);
            }
        }
        out
    }

    #[test]
    fn hermiticity_checks() {
        let x = PauliSum::from_term(term("X", c(1.0, 0.0)));
        assert!(x.is_hermitian());
        assert!(!x.is_antihermitian());
        let ix = PauliSum::from_term(term("X", c(0.0, 1.0)));
        assert!(ix.is_antihermitian());
        assert!(!ix.is_hermitian());
    }

    #[test]
    fn zero_coeff_term_equals_zero_sum() {
        let zero = PauliSum::from_term(term("X", c(0.0, 0.0)));
        assert_eq!(zero, PauliSum::zero(1));
    }

    #[test]
    fn display_format() {
        let t = term("XZIY", c(-0.5, 0.0));
        assert_eq!(alloc::format!("{t}"), "(-0.5+0j) * XZIY");
        let u = term("Z", c(0.0, -1.5));
        assert_eq!(alloc::format!("{u}"), "(0-1.5j) * Z");
    }

    #[test]
    fn commute_or_anticommute_rule() {
        for a_letters in pair_letters() {
            for b_letters in pair_letters() {
                let a = PauliTerm::new(a_letters.clone(), c(1.0, 0.0));
                let b = PauliTerm::new(b_letters.clone(), c(1.0, 0.0));
                let clashes = a_letters
                    .iter()
                    .zip(b_letters.iter())
                    .filter(|(&x, &y)| x != PauliOp::I && y != PauliOp::I && x != y)
                    .count();
                let sum_a = PauliSum::from_term(a.clone());
                let sum_b = PauliSum::from_term(b.clone());
                let comm_is_zero = sum_a.commutator(&sum_b).unwrap().is_empty();
                assert_eq!(comm_is_zero, clashes % 2 == 0);
                assert_eq!(a.commutes_with(&b), clashes % 2 == 0);
            }
        }
    }
}
