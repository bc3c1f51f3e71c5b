//! Dense and iterative symmetric eigensolvers.
//!
//! Everything here operates on row-major `&[f64]` matrices. The dense path is
//! Householder tridiagonalization (`tred2`) followed by implicit-shift QL
//! (`tqli`); the iterative path is Lanczos with full reorthogonalization,
//! suitable for matrix-free operators. Complex Hermitian problems are solved
//! through the real embedding `[[A, -B], [B, A]]` of `M = A + iB`, which
//! carries each eigenvalue of `M` twice.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::Complex64;

fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

fn hypot(a: f64, b: f64) -> f64 {
    libm::hypot(a, b)
}

fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

fn copysign(a: f64, b: f64) -> f64 {
    libm::copysign(a, b)
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    sqrt(dot(a, a))
}

/// Householder reduction of a real symmetric matrix to tridiagonal form.
/// On exit `a` holds the accumulated orthogonal transform, `d` the diagonal,
/// and `e[1..]` the subdiagonal (`e[0]` is zero).
fn tred2(a: &mut [f64], n: usize, d: &mut [f64], e: &mut [f64]) {
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let mut scale = 0.0;
            for k in 0..=l {
                scale += abs(a[i * n + k]);
            }
            if scale == 0.0 {
                e[i] = a[i * n + l];
            } else {
                for k in 0..=l {
                    a[i * n + k] /= scale;
                    h += a[i * n + k] * a[i * n + k];
                }
                let mut f = a[i * n + l];
                let g = if f >= 0.0 { -sqrt(h) } else { sqrt(h) };
                e[i] = scale * g;
                h -= f * g;
                a[i * n + l] = f - g;
                f = 0.0;
                for j in 0..=l {
                    a[j * n + i] = a[i * n + j] / h;
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[j * n + k] * a[i * n + k];
                    }
                    for k in (j + 1)..=l {
                        g += a[k * n + j] * a[i * n + k];
                    }
                    e[j] = g / h;
                    f += e[j] * a[i * n + j];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let f = a[i * n + j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j * n + k] -= f * e[k] + g * a[i * n + k];
                    }
                }
            }
        } else {
            e[i] = a[i * n + l];
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for i in 0..n {
        if d[i] != 0.0 {
            for j in 0..i {
                let mut g = 0.0;
                for k in 0..i {
                    g += a[i * n + k] * a[k * n + j];
                }
                for k in 0..i {
                    a[k * n + j] -= g * a[k * n + i];
                }
            }
        }
        d[i] = a[i * n + i];
        a[i * n + i] = 1.0;
        for j in 0..i {
            a[j * n + i] = 0.0;
            a[i * n + j] = 0.0;
        }
    }
}

/// Implicit-shift QL iteration on a symmetric tridiagonal matrix.
///
/// `d` holds the diagonal, `e[1..]` the subdiagonal (as produced by `tred2`).
/// On success `d` contains the eigenvalues. When `z` is given (row-major
/// `n x n`, typically the `tred2` output or the identity), its columns are
/// rotated into the eigenvectors.
fn tqli(d: &mut [f64], e: &mut [f64], n: usize, mut z: Option<&mut [f64]>) -> Result<()> {
    if n == 0 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = abs(d[m]) + abs(d[m + 1]);
                if abs(e[m]) <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::Diverged(alloc::format!(
                    "QL iteration failed to converge for eigenvalue {l} of {n}"
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + copysign(r, g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(zm) = z.as_deref_mut() {
                    for k in 0..n {
                        f = zm[k * n + i + 1];
                        zm[k * n + i + 1] = s * zm[k * n + i] + c * f;
                        zm[k * n + i] = c * zm[k * n + i] - s * f;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Lowest eigenvalue and eigenvector of a dense real symmetric matrix.
pub fn lowest_eigenpair_symmetric(a: &[f64], n: usize) -> Result<(f64, Vec<f64>)> {
    assert_eq!(a.len(), n * n);
    if n == 1 {
        return Ok((a[0], vec![1.0]));
    }
    let mut q = a.to_vec();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tred2(&mut q, n, &mut d, &mut e);
    tqli(&mut d, &mut e, n, Some(&mut q))?;
    let mut best = 0;
    for i in 1..n {
        if d[i] < d[best] {
            best = i;
        }
    }
    let vector: Vec<f64> = (0..n).map(|k| q[k * n + best]).collect();
    Ok((d[best], vector))
}

/// All eigenvalues of a dense real symmetric matrix, sorted ascending.
pub fn eigenvalues_symmetric(a: &[f64], n: usize) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n);
    if n == 1 {
        return Ok(vec![a[0]]);
    }
    let mut q = a.to_vec();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tred2(&mut q, n, &mut d, &mut e);
    tqli(&mut d, &mut e, n, None)?;
    d.sort_unstable_by(|x, y| x.partial_cmp(y).expect("eigenvalues are finite"));
    Ok(d)
}

/// Eigenpairs of a symmetric tridiagonal matrix given by its diagonal and
/// subdiagonal. Returns `(values, vectors)` with `vectors[k*n + i]` the k-th
/// component of the eigenvector belonging to `values[i]`.
fn tridiagonal_eigen(diag: &[f64], sub: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = diag.len();
    assert_eq!(sub.len(), n.saturating_sub(1));
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    for i in 1..n {
        e[i] = sub[i - 1];
    }
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }
    tqli(&mut d, &mut e, n, Some(&mut z))?;
    Ok((d, z))
}

/// Outcome of a Lanczos run.
pub struct LanczosResult {
    pub value: f64,
    pub vector: Vec<f64>,
    /// `||A v - value * v||` computed explicitly at the end.
    pub residual: f64,
    pub iterations: usize,
}

/// Lowest eigenpair of a real symmetric operator by Lanczos iteration with
/// full reorthogonalization, restarted from the best Ritz vector until the
/// explicit residual drops below `tol`.
pub fn lanczos_lowest<F>(mut matvec: F, dim: usize, tol: f64, init: Option<&[f64]>) -> Result<LanczosResult>
where
    F: FnMut(&[f64], &mut [f64]),
{
    assert!(dim > 0);
    if dim == 1 {
        let mut out = vec![0.0];
        matvec(&[1.0], &mut out);
        return Ok(LanczosResult { value: out[0], vector: vec![1.0], residual: 0.0, iterations: 1 });
    }

    let max_krylov = dim.min(220);
    let max_restarts = 30;

    // Deterministic pseudo-random start with no zero structure.
    let mut v: Vec<f64> = match init {
        Some(x) => x.to_vec(),
        None => (0..dim)
            .map(|i| libm::fmod((i as f64 + 1.0) * 0.618033988749895, 1.0) - 0.5)
            .collect(),
    };
    let nv = norm(&v);
    if nv == 0.0 {
        return Err(Error::Diverged("zero start vector for Lanczos".into()));
    }
    for x in v.iter_mut() {
        *x /= nv;
    }

    let mut total_iters = 0usize;
    let mut best: Option<(f64, Vec<f64>, f64)> = None;

    for _restart in 0..max_restarts {
        let mut basis: Vec<Vec<f64>> = vec![v.clone()];
        let mut alpha: Vec<f64> = Vec::new();
        let mut beta: Vec<f64> = Vec::new();
        let mut w = vec![0.0; dim];

        for j in 0..max_krylov {
            matvec(&basis[j], &mut w);
            total_iters += 1;
            let a = dot(&basis[j], &w);
            alpha.push(a);
            // Two Gram-Schmidt passes against the whole basis subsume the
            // alpha/beta subtractions and keep orthogonality near machine
            // precision.
            for _pass in 0..2 {
                for q in basis.iter() {
                    let ov = dot(q, &w);
                    for (wi, qi) in w.iter_mut().zip(q.iter()) {
                        *wi -= ov * qi;
                    }
                }
            }
            let b = norm(&w);
            if b < 1e-13 || j + 1 == max_krylov {
                break;
            }
            beta.push(b);
            basis.push(w.iter().map(|x| x / b).collect());
        }

        let m = alpha.len();
        let (vals, vecs) = tridiagonal_eigen(&alpha, &beta[..m - 1])?;
        let mut lo = 0;
        for i in 1..m {
            if vals[i] < vals[lo] {
                lo = i;
            }
        }
        let mut ritz = vec![0.0; dim];
        for (j, q) in basis.iter().enumerate().take(m) {
            let s = vecs[j * m + lo];
            for (ri, qi) in ritz.iter_mut().zip(q.iter()) {
                *ri += s * qi;
            }
        }
        let rn = norm(&ritz);
        for x in ritz.iter_mut() {
            *x /= rn;
        }

        matvec(&ritz, &mut w);
        let value = dot(&ritz, &w);
        let mut res_sq = 0.0;
        for (wi, ri) in w.iter().zip(ritz.iter()) {
            let r = wi - value * ri;
            res_sq += r * r;
        }
        let residual = sqrt(res_sq);

        let improved = best.as_ref().map_or(true, |(_, _, r)| residual < *r);
        if improved {
            best = Some((value, ritz.clone(), residual));
        }
        if residual < tol {
            break;
        }
        v = ritz;
    }

    let (value, vector, residual) = best.expect("at least one restart ran");
    Ok(LanczosResult { value, vector, residual, iterations: total_iters })
}

/// Embeds a complex Hermitian matrix `M = A + iB` (row-major, `dim x dim`)
/// into the real symmetric `[[A, -B], [B, A]]` of size `2 dim`.
fn embed_hermitian(m: &[Complex64], dim: usize) -> Vec<f64> {
    let n2 = 2 * dim;
    let mut out = vec![0.0; n2 * n2];
    for i in 0..dim {
        for j in 0..dim {
            let a = m[i * dim + j].re;
            let b = m[i * dim + j].im;
            out[i * n2 + j] = a;
            out[(i + dim) * n2 + (j + dim)] = a;
            out[i * n2 + (j + dim)] = -b;
            out[(i + dim) * n2 + j] = b;
        }
    }
    out
}

/// Lowest eigenvalue and eigenvector of a dense complex Hermitian matrix.
///
/// Small problems go through the dense real-embedding solver; larger ones
/// run Lanczos on the embedded operator without materializing it.
pub fn hermitian_lowest_eigenpair(m: &[Complex64], dim: usize) -> Result<(f64, Vec<Complex64>)> {
    assert_eq!(m.len(), dim * dim);
    if dim == 1 {
        return Ok((m[0].re, vec![Complex64::new(1.0, 0.0)]));
    }
    let n2 = 2 * dim;
    let (value, evec) = if n2 <= 2048 {
        let embedded = embed_hermitian(m, dim);
        lowest_eigenpair_symmetric(&embedded, n2)?
    } else {
        let matvec = |x: &[f64], out: &mut [f64]| {
            // (A + iB)(u + iw): real part A u - B w, imaginary part B u + A w.
            for i in 0..dim {
                let mut re = 0.0;
                let mut im = 0.0;
                for j in 0..dim {
                    let a = m[i * dim + j].re;
                    let b = m[i * dim + j].im;
                    re += a * x[j] - b * x[dim + j];
                    im += b * x[j] + a * x[dim + j];
                }
                out[i] = re;
                out[dim + i] = im;
            }
        };
        let r = lanczos_lowest(matvec, n2, 1e-10, None)?;
        (r.value, r.vector)
    };
    let vector: Vec<Complex64> =
        (0..dim).map(|k| Complex64::new(evec[k], evec[dim + k])).collect();
    Ok((value, vector))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_eigen_small_known() {
        // [[2, 1], [1, 2]] has eigenvalues 1 and 3.
        let a = [2.0, 1.0, 1.0, 2.0];
        let vals = eigenvalues_symmetric(&a, 2).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-12);
        assert!((vals[1] - 3.0).abs() < 1e-12);
        let (lo, v) = lowest_eigenpair_symmetric(&a, 2).unwrap();
        assert!((lo - 1.0).abs() < 1e-12);
        // Eigenvector proportional to (1, -1).
        assert!((v[0] + v[1]).abs() < 1e-10);
    }

    fn pseudo_random_symmetric(n: usize, seed: u64) -> Vec<f64> {
        let mut a = vec![0.0; n * n];
        let mut state = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(1);
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for i in 0..n {
            for j in 0..=i {
                let x = next();
                a[i * n + j] = x;
                a[j * n + i] = x;
            }
        }
        a
    }

    fn check_residual(a: &[f64], n: usize, value: f64, v: &[f64]) {
        let mut r = 0.0;
        for i in 0..n {
            let mut s = 0.0;
            for j in 0..n {
                s += a[i * n + j] * v[j];
            }
            r += (s - value * v[i]) * (s - value * v[i]);
        }
        assert!(r.sqrt() < 1e-9, "residual {} too large", r.sqrt());
    }

    #[test]
    fn dense_eigen_random_residuals() {
        for n in [3usize, 8, 17, 40] {
            let a = pseudo_random_symmetric(n, n as u64);
            let (lo, v) = lowest_eigenpair_symmetric(&a, n).unwrap();
            check_residual(&a, n, lo, &v);
            // Trace equals the eigenvalue sum.
            let vals = eigenvalues_symmetric(&a, n).unwrap();
            let trace: f64 = (0..n).map(|i| a[i * n + i]).sum();
            let sum: f64 = vals.iter().sum();
            assert!((trace - sum).abs() < 1e-9 * (1.0 + trace.abs()));
            assert!((vals[0] - lo).abs() < 1e-10);
        }
    }

    #[test]
    fn lanczos_matches_dense() {
        for n in [5usize, 30, 120] {
            let a = pseudo_random_symmetric(n, 7 * n as u64 + 1);
            let (dense_lo, _) = lowest_eigenpair_symmetric(&a, n).unwrap();
            let matvec = |x: &[f64], out: &mut [f64]| {
                for i in 0..n {
                    out[i] = (0..n).map(|j| a[i * n + j] * x[j]).sum();
                }
            };
            let r = lanczos_lowest(matvec, n, 1e-10, None).unwrap();
            assert!(
                (r.value - dense_lo).abs() < 1e-8,
                "lanczos {} vs dense {} at n={n}",
                r.value,
                dense_lo
            );
            assert!(r.residual < 1e-9);
            check_residual(&a, n, r.value, &r.vector);
        }
    }

    #[test]
    fn lanczos_diagonal_operator() {
        // Degenerate lowest eigenvalue and early Krylov breakdown.
        let d = [4.0, -2.0, 0.5, 0.5, 9.0, -2.0];
        let matvec = |x: &[f64], out: &mut [f64]| {
            for i in 0..6 {
                out[i] = d[i] * x[i];
            }
        };
        let r = lanczos_lowest(matvec, 6, 1e-10, None).unwrap();
        assert!((r.value + 2.0).abs() < 1e-10);
    }

    #[test]
    fn hermitian_embedding() {
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2.
        let m = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(1.0, 0.0),
        ];
        let (lo, v) = hermitian_lowest_eigenpair(&m, 2).unwrap();
        assert!(lo.abs() < 1e-12);
        // Check M v = 0 for the eigenvector.
        for i in 0..2 {
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..2 {
                s += m[i * 2 + j] * v[j];
            }
            assert!(s.norm() < 1e-10);
        }
    }
}
