//! Molecular-integral ingestion and the Hartree-Fock reference.
//!
//! Integrals arrive pre-computed in the canonical molecular-orbital basis as
//! Molpro-style FCIDUMP text. Parsing expands the 8-fold permutational
//! symmetry of the two-electron tensor; [`to_spin_orbital`] lifts spatial
//! tensors to spin orbitals in block ordering (all alpha, then all beta) and
//! converts chemists' `(PQ|RS)` to physicists' `<pq|rs> = (PR|QS)` notation.
//!
//! Closed-shell occupation is assumed throughout: the reference determinant
//! fills the alpha and beta copies of the lowest `n_electrons / 2` spatial
//! orbitals.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// One- and two-body integral tensors over spatial orbitals, plus the core
/// (nuclear repulsion, and any frozen-core contribution) energy. All values
/// are in Hartree. `g2_chem` is in chemists' notation `(PQ|RS)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MolecularIntegrals {
    pub n_spatial: usize,
    pub n_electrons: usize,
    pub ms2: i32,
    /// `h1[p * n_spatial + q]`, symmetric.
    pub h1: Vec<f64>,
    /// `(PQ|RS)` at index `((p * n + q) * n + r) * n + s`, 8-fold symmetric.
    pub g2_chem: Vec<f64>,
    pub e_core: f64,
}

impl MolecularIntegrals {
    pub fn h1_at(&self, p: usize, q: usize) -> f64 {
        self.h1[p * self.n_spatial + q]
    }

    pub fn g2_at(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        let n = self.n_spatial;
        self.g2_chem[((p * n + q) * n + r) * n + s]
    }

    fn set_h1(&mut self, p: usize, q: usize, value: f64) {
        let n = self.n_spatial;
        self.h1[p * n + q] = value;
        self.h1[q * n + p] = value;
    }

    fn set_g2(&mut self, p: usize, q: usize, r: usize, s: usize, value: f64) {
        let n = self.n_spatial;
        let images = [
            (p, q, r, s),
            (q, p, r, s),
            (p, q, s, r),
            (q, p, s, r),
            (r, s, p, q),
            (s, r, p, q),
            (r, s, q, p),
            (s, r, q, p),
        ];
        for (a, b, c, d) in images {
            self.g2_chem[((a * n + b) * n + c) * n + d] = value;
        }
    }
}

/// Second-quantized Hamiltonian data over spin orbitals. `g_phys` is in
/// physicists' notation `<pq|rs>` with electron 1 carrying indices `(p, r)`
/// and electron 2 carrying `(q, s)`; entries are zero unless spins match
/// pairwise.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinOrbitalHamiltonian {
    pub n_so: usize,
    /// `h_so[p * n_so + q]`.
    pub h_so: Vec<f64>,
    /// `<pq|rs>` at index `((p * n + q) * n + r) * n + s`.
    pub g_phys: Vec<f64>,
    pub e_core: f64,
}

impl SpinOrbitalHamiltonian {
    pub fn h_at(&self, p: usize, q: usize) -> f64 {
        self.h_so[p * self.n_so + q]
    }

    pub fn g_at(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        let n = self.n_so;
        self.g_phys[((p * n + q) * n + r) * n + s]
    }
}

fn parse_f64(token: &str, line_no: usize) -> Result<f64> {
    // Fortran writers emit D exponents.
    let normalized: String = token
        .chars()
        .map(|c| match c {
            'D' | 'd' => 'E',
            other => other,
        })
        .collect();
    normalized.parse::<f64>().map_err(|_| Error::Parse {
        line: line_no,
        message: format!("expected a floating-point value, got `{token}`"),
    })
}

fn parse_index(token: &str, norb: usize, line_no: usize) -> Result<usize> {
    let idx: usize = token.parse().map_err(|_| Error::Parse {
        line: line_no,
        message: format!("expected an orbital index, got `{token}`"),
    })?;
    if idx > norb {
        return Err(Error::Parse {
            line: line_no,
            message: format!("orbital index {idx} out of range [0, {norb}]"),
        });
    }
    Ok(idx)
}

/// Parses Molpro-style FCIDUMP text.
///
/// The namelist header must provide `NORB` and `NELEC`; `MS2` defaults to 0.
/// `ORBSYM` and `ISYM` are accepted and ignored. Data lines are
/// `value i j k l` with 1-based indices: `i j 0 0` is a one-body entry,
/// all-nonzero is a chemists' `(ij|kl)` two-body entry, and `0 0 0 0` is the
/// core energy. Orbital-energy lines (`i 0 0 0`) are skipped. Duplicate
/// entries overwrite earlier ones; all 8 symmetric images are filled.
pub fn parse_fcidump(text: &str) -> Result<MolecularIntegrals> {
    let mut lines = text.lines().enumerate();

    let mut header = String::new();
    let mut header_done = false;
    for (no, line) in lines.by_ref() {
        let trimmed = line.trim();
        if no == 0 && !trimmed.starts_with('&') {
            return Err(Error::Parse {
                line: 1,
                message: "missing &FCI namelist header".to_string(),
            });
        }
        header.push(' ');
        header.push_str(trimmed);
        if trimmed.contains("&END") || trimmed.contains("$END") || trimmed.ends_with('/') {
            header_done = true;
            break;
        }
    }
    if !header_done {
        return Err(Error::Parse {
            line: 1,
            message: "unterminated namelist header (no &END or /)".to_string(),
        });
    }

    let norb = header_field(&header, "NORB")?
        .ok_or_else(|| Error::Parse { line: 1, message: "missing NORB".to_string() })?;
    let nelec = header_field(&header, "NELEC")?
        .ok_or_else(|| Error::Parse { line: 1, message: "missing NELEC".to_string() })?;
    let ms2: i32 = header_field(&header, "MS2")?.unwrap_or(0) as i32;

    if norb <= 0 {
        return Err(Error::Parse { line: 1, message: "NORB must be positive".to_string() });
    }
    if nelec < 0 {
        return Err(Error::Parse { line: 1, message: "NELEC must be non-negative".to_string() });
    }
    let norb = norb as usize;
    let nelec = nelec as usize;
    if nelec > 2 * norb {
        return Err(Error::Parse {
            line: 1,
            message: format!("NELEC={nelec} exceeds 2*NORB={}", 2 * norb),
        });
    }

    let mut out = MolecularIntegrals {
        n_spatial: norb,
        n_electrons: nelec,
        ms2,
        h1: vec![0.0; norb * norb],
        g2_chem: vec![0.0; norb * norb * norb * norb],
        e_core: 0.0,
    };

    for (no, line) in lines {
        let line_no = no + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 5 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected `value i j k l`, got {} fields", tokens.len()),
            });
        }
        let value = parse_f64(tokens[0], line_no)?;
        let i = parse_index(tokens[1], norb, line_no)?;
        let j = parse_index(tokens[2], norb, line_no)?;
        let k = parse_index(tokens[3], norb, line_no)?;
        let l = parse_index(tokens[4], norb, line_no)?;

        match (i, j, k, l) {
            (0, 0, 0, 0) => out.e_core = value,
            (_, 0, 0, 0) => {
                // Orbital energies; not part of the Hamiltonian tensors.
            }
            (i, j, 0, 0) if i > 0 && j > 0 => out.set_h1(i - 1, j - 1, value),
            (i, j, k, l) if i > 0 && j > 0 && k > 0 && l > 0 => {
                out.set_g2(i - 1, j - 1, k - 1, l - 1, value)
            }
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("unsupported index pattern {i} {j} {k} {l}"),
                })
            }
        }
    }

    Ok(out)
}

fn header_field(header: &str, key: &str) -> Result<Option<i64>> {
    // Tolerates `KEY=value`, `KEY = value`, and trailing commas.
    let upper = header.to_uppercase();
    let Some(pos) = upper.find(key) else {
        return Ok(None);
    };
    let after = &upper[pos + key.len()..];
    let after = after.trim_start();
    let Some(rest) = after.strip_prefix('=') else {
        return Ok(None);
    };
    let rest = rest.trim_start();
    let end = rest
        .find(|c: char| !(c.is_ascii_digit() || c == '-' || c == '+'))
        .unwrap_or(rest.len());
    rest[..end]
        .parse::<i64>()
        .map(Some)
        .map_err(|_| Error::Parse { line: 1, message: format!("malformed {key} in header") })
}

/// Serializes integrals back to FCIDUMP text. Values are written with 17
/// significant digits so that a parse round-trip is bit-exact. Only the
/// canonical representative of each 8-fold symmetry class is emitted
/// (`p >= q`, `r >= s`, `(p, q) >= (r, s)`), and exact zeros are skipped.
pub fn serialize_fcidump(m: &MolecularIntegrals) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "&FCI NORB={},NELEC={},MS2={},\n ORBSYM={}\n ISYM=1,\n&END\n",
        m.n_spatial,
        m.n_electrons,
        m.ms2,
        "1,".repeat(m.n_spatial)
    ));
    let n = m.n_spatial;
    for p in 0..n {
        for q in 0..=p {
            for r in 0..=p {
                let s_max = if r == p { q } else { r };
                for s in 0..=s_max {
                    let v = m.g2_at(p, q, r, s);
                    if v != 0.0 {
                        out.push_str(&format!(
                            "{:.16E} {} {} {} {}\n",
                            v,
                            p + 1,
                            q + 1,
                            r + 1,
                            s + 1
                        ));
                    }
                }
            }
        }
    }
    for p in 0..n {
        for q in 0..=p {
            let v = m.h1_at(p, q);
            if v != 0.0 {
                out.push_str(&format!("{:.16E} {} {} 0 0\n", v, p + 1, q + 1));
            }
        }
    }
    out.push_str(&format!("{:.16E} 0 0 0 0\n", m.e_core));
    out
}

/// Spin of a block-ordered spin orbital: `false` for alpha, `true` for beta.
#[inline]
pub fn spin_of(p: usize, n_spatial: usize) -> bool {
    p >= n_spatial
}

/// Spatial orbital underlying a block-ordered spin orbital.
#[inline]
pub fn spatial_of(p: usize, n_spatial: usize) -> usize {
    if p >= n_spatial {
        p - n_spatial
    } else {
        p
    }
}

/// Lifts spatial-orbital tensors to spin orbitals in block ordering and
/// converts to physicists' notation: `g_phys[pqrs] = (PR|QS) d(sp,sr) d(sq,ss)`.
pub fn to_spin_orbital(m: &MolecularIntegrals) -> SpinOrbitalHamiltonian {
    let n = m.n_spatial;
    let n_so = 2 * n;
    let mut h_so = vec![0.0; n_so * n_so];
    for p in 0..n_so {
        for q in 0..n_so {
            if spin_of(p, n) == spin_of(q, n) {
                h_so[p * n_so + q] = m.h1_at(spatial_of(p, n), spatial_of(q, n));
            }
        }
    }
    let mut g_phys = vec![0.0; n_so * n_so * n_so * n_so];
    for p in 0..n_so {
        for q in 0..n_so {
            for r in 0..n_so {
                if spin_of(p, n) != spin_of(r, n) {
                    continue;
                }
                for s in 0..n_so {
                    if spin_of(q, n) != spin_of(s, n) {
                        continue;
                    }
                    g_phys[((p * n_so + q) * n_so + r) * n_so + s] = m.g2_at(
                        spatial_of(p, n),
                        spatial_of(r, n),
                        spatial_of(q, n),
                        spatial_of(s, n),
                    );
                }
            }
        }
    }
    SpinOrbitalHamiltonian { n_so, h_so, g_phys, e_core: m.e_core }
}

fn require_closed_shell(m: &MolecularIntegrals) -> Result<usize> {
    if m.n_electrons % 2 != 0 {
        return Err(Error::UnsupportedOccupation(format!(
            "closed shell requires an even electron count, got {}",
            m.n_electrons
        )));
    }
    if m.ms2 != 0 {
        return Err(Error::UnsupportedOccupation(format!(
            "closed shell requires MS2 = 0, got {}",
            m.ms2
        )));
    }
    Ok(m.n_electrons / 2)
}

/// Closed-shell Hartree-Fock energy from canonical-basis integrals:
/// `E = e_core + 2 sum_i h_ii + sum_ij (2 (ii|jj) - (ij|ji))` over the first
/// `n_electrons / 2` spatial orbitals.
pub fn hf_energy(m: &MolecularIntegrals) -> Result<f64> {
    let nocc = require_closed_shell(m)?;
    let mut e = m.e_core;
    for i in 0..nocc {
        e += 2.0 * m.h1_at(i, i);
        for j in 0..nocc {
            e += 2.0 * m.g2_at(i, i, j, j) - m.g2_at(i, j, j, i);
        }
    }
    Ok(e)
}

/// Occupation bitmask of the Hartree-Fock determinant over block-ordered
/// spin orbitals: alpha and beta copies of the lowest `n_electrons / 2`
/// spatial orbitals.
pub fn hf_determinant(m: &MolecularIntegrals) -> Result<u64> {
    let nocc = require_closed_shell(m)?;
    let mut mask = 0u64;
    for i in 0..nocc {
        mask |= 1 << i;
        mask |= 1 << (i + m.n_spatial);
    }
    Ok(mask)
}
