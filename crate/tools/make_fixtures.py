#!/usr/bin/env python3
"""Generate the FCIDUMP fixtures under fixtures/.

Self-contained STO-3G restricted Hartree-Fock over contracted Cartesian
Gaussians (McMurchie-Davidson integral scheme), followed by an MO
transformation and FCIDUMP output in chemists' notation with canonical
(Fock-diagonal, energy-ordered) orbitals.

Outputs:
  h2_<R>.fcidump       H2 at 8 bond lengths (Angstrom labels)
  lih_1.595.fcidump    LiH, all 6 spatial orbitals
  lih_fc_1.595.fcidump LiH with the Li 1s core orbital frozen

A small determinant-basis FCI is run on each dump as a sanity check and the
reference energies are printed for fixtures/README.md.
"""

import itertools
import math
import os
import sys
from functools import lru_cache

import numpy as np
from scipy.special import hyp1f1

BOHR_PER_ANGSTROM = 1.0 / 0.52917721067

STO3G = {
    "H": [
        ("S", [3.42525091, 0.62391373, 0.16885540], [0.15432897, 0.53532814, 0.44463454]),
    ],
    "Li": [
        ("S", [16.1195750, 2.9362007, 0.7946505], [0.15432897, 0.53532814, 0.44463454]),
        (
            "SP",
            [0.6362897, 0.1478601, 0.0480887],
            ([-0.09996723, 0.39951283, 0.70011547], [0.15591627, 0.60768372, 0.39195739]),
        ),
    ],
}

CHARGES = {"H": 1, "Li": 3}


def double_factorial(n):
    if n <= 0:
        return 1
    return n * double_factorial(n - 2)


def primitive_norm(alpha, lmn):
    l, m, n = lmn
    L = l + m + n
    pref = (2.0 * alpha / math.pi) ** 0.75 * (4.0 * alpha) ** (L / 2.0)
    denom = math.sqrt(
        double_factorial(2 * l - 1) * double_factorial(2 * m - 1) * double_factorial(2 * n - 1)
    )
    return pref / denom


class Contracted:
    def __init__(self, center, lmn, exps, coefs):
        self.center = np.asarray(center, dtype=float)
        self.lmn = lmn
        self.exps = list(exps)
        self.coefs = [c * primitive_norm(a, lmn) for a, c in zip(exps, coefs)]
        s = overlap_contracted(self, self)
        self.coefs = [c / math.sqrt(s) for c in self.coefs]


def hermite_e(i, j, t, Qx, a, b):
    p = a + b
    q = a * b / p
    if t < 0 or t > i + j:
        return 0.0
    if i == j == t == 0:
        return math.exp(-q * Qx * Qx)
    if j == 0:
        return (
            (1.0 / (2.0 * p)) * hermite_e(i - 1, j, t - 1, Qx, a, b)
            - (q * Qx / a) * hermite_e(i - 1, j, t, Qx, a, b)
            + (t + 1) * hermite_e(i - 1, j, t + 1, Qx, a, b)
        )
    return (
        (1.0 / (2.0 * p)) * hermite_e(i, j - 1, t - 1, Qx, a, b)
        + (q * Qx / b) * hermite_e(i, j - 1, t, Qx, a, b)
        + (t + 1) * hermite_e(i, j - 1, t + 1, Qx, a, b)
    )


def overlap_prim(a, lmn1, A, b, lmn2, B):
    l1, m1, n1 = lmn1
    l2, m2, n2 = lmn2
    s1 = hermite_e(l1, l2, 0, A[0] - B[0], a, b)
    s2 = hermite_e(m1, m2, 0, A[1] - B[1], a, b)
    s3 = hermite_e(n1, n2, 0, A[2] - B[2], a, b)
    return s1 * s2 * s3 * (math.pi / (a + b)) ** 1.5


def overlap_contracted(f1, f2):
    s = 0.0
    for a, ca in zip(f1.exps, f1.coefs):
        for b, cb in zip(f2.exps, f2.coefs):
            s += ca * cb * overlap_prim(a, f1.lmn, f1.center, b, f2.lmn, f2.center)
    return s


def kinetic_prim(a, lmn1, A, b, lmn2, B):
    l2, m2, n2 = lmn2
    term0 = b * (2 * (l2 + m2 + n2) + 3) * overlap_prim(a, lmn1, A, b, lmn2, B)
    term1 = (
        -2.0
        * b
        * b
        * (
            overlap_prim(a, lmn1, A, b, (l2 + 2, m2, n2), B)
            + overlap_prim(a, lmn1, A, b, (l2, m2 + 2, n2), B)
            + overlap_prim(a, lmn1, A, b, (l2, m2, n2 + 2), B)
        )
    )
    term2 = -0.5 * (
        l2 * (l2 - 1) * overlap_prim(a, lmn1, A, b, (l2 - 2, m2, n2), B)
        + m2 * (m2 - 1) * overlap_prim(a, lmn1, A, b, (l2, m2 - 2, n2), B)
        + n2 * (n2 - 1) * overlap_prim(a, lmn1, A, b, (l2, m2, n2 - 2), B)
    )
    return term0 + term1 + term2


def kinetic_contracted(f1, f2):
    t = 0.0
    for a, ca in zip(f1.exps, f1.coefs):
        for b, cb in zip(f2.exps, f2.coefs):
            t += ca * cb * kinetic_prim(a, f1.lmn, f1.center, b, f2.lmn, f2.center)
    return t


@lru_cache(maxsize=None)
def boys(n, T):
    return hyp1f1(n + 0.5, n + 1.5, -T) / (2.0 * n + 1.0)


def hermite_coulomb(t, u, v, n, p, PCx, PCy, PCz, RPC):
    T = p * RPC * RPC
    if t == u == v == 0:
        return (-2.0 * p) ** n * boys(n, round(T, 14))
    if t == u == 0:
        val = 0.0
        if v > 1:
            val += (v - 1) * hermite_coulomb(t, u, v - 2, n + 1, p, PCx, PCy, PCz, RPC)
        val += PCz * hermite_coulomb(t, u, v - 1, n + 1, p, PCx, PCy, PCz, RPC)
        return val
    if t == 0:
        val = 0.0
        if u > 1:
            val += (u - 1) * hermite_coulomb(t, u - 2, v, n + 1, p, PCx, PCy, PCz, RPC)
        val += PCy * hermite_coulomb(t, u - 1, v, n + 1, p, PCx, PCy, PCz, RPC)
        return val
    val = 0.0
    if t > 1:
        val += (t - 1) * hermite_coulomb(t - 2, u, v, n + 1, p, PCx, PCy, PCz, RPC)
    val += PCx * hermite_coulomb(t - 1, u, v, n + 1, p, PCx, PCy, PCz, RPC)
    return val


def nuclear_prim(a, lmn1, A, b, lmn2, B, C):
    l1, m1, n1 = lmn1
    l2, m2, n2 = lmn2
    p = a + b
    P = (a * np.asarray(A) + b * np.asarray(B)) / p
    RPC = float(np.linalg.norm(P - np.asarray(C)))
    val = 0.0
    for t in range(l1 + l2 + 1):
        for u in range(m1 + m2 + 1):
            for v in range(n1 + n2 + 1):
                val += (
                    hermite_e(l1, l2, t, A[0] - B[0], a, b)
                    * hermite_e(m1, m2, u, A[1] - B[1], a, b)
                    * hermite_e(n1, n2, v, A[2] - B[2], a, b)
                    * hermite_coulomb(t, u, v, 0, p, P[0] - C[0], P[1] - C[1], P[2] - C[2], RPC)
                )
    return 2.0 * math.pi / p * val


def nuclear_contracted(f1, f2, C):
    v = 0.0
    for a, ca in zip(f1.exps, f1.coefs):
        for b, cb in zip(f2.exps, f2.coefs):
            v += ca * cb * nuclear_prim(a, f1.lmn, f1.center, b, f2.lmn, f2.center, C)
    return v


def eri_prim(a, lmn1, A, b, lmn2, B, c, lmn3, C, d, lmn4, D):
    l1, m1, n1 = lmn1
    l2, m2, n2 = lmn2
    l3, m3, n3 = lmn3
    l4, m4, n4 = lmn4
    p = a + b
    q = c + d
    alpha = p * q / (p + q)
    P = (a * np.asarray(A) + b * np.asarray(B)) / p
    Q = (c * np.asarray(C) + d * np.asarray(D)) / q
    RPQ = float(np.linalg.norm(P - Q))
    val = 0.0
    for t in range(l1 + l2 + 1):
        for u in range(m1 + m2 + 1):
            for v in range(n1 + n2 + 1):
                e1 = (
                    hermite_e(l1, l2, t, A[0] - B[0], a, b)
                    * hermite_e(m1, m2, u, A[1] - B[1], a, b)
                    * hermite_e(n1, n2, v, A[2] - B[2], a, b)
                )
                if e1 == 0.0:
                    continue
                for tau in range(l3 + l4 + 1):
                    for nu in range(m3 + m4 + 1):
                        for phi in range(n3 + n4 + 1):
                            e2 = (
                                hermite_e(l3, l4, tau, C[0] - D[0], c, d)
                                * hermite_e(m3, m4, nu, C[1] - D[1], c, d)
                                * hermite_e(n3, n4, phi, C[2] - D[2], c, d)
                            )
                            if e2 == 0.0:
                                continue
                            val += (
                                e1
                                * e2
                                * (-1.0) ** (tau + nu + phi)
                                * hermite_coulomb(
                                    t + tau,
                                    u + nu,
                                    v + phi,
                                    0,
                                    alpha,
                                    P[0] - Q[0],
                                    P[1] - Q[1],
                                    P[2] - Q[2],
                                    RPQ,
                                )
                            )
    val *= 2.0 * math.pi ** 2.5 / (p * q * math.sqrt(p + q))
    return val


def eri_contracted(f1, f2, f3, f4):
    v = 0.0
    for a, ca in zip(f1.exps, f1.coefs):
        for b, cb in zip(f2.exps, f2.coefs):
            for c, cc in zip(f3.exps, f3.coefs):
                for d, cd in zip(f4.exps, f4.coefs):
                    v += ca * cb * cc * cd * eri_prim(
                        a, f1.lmn, f1.center, b, f2.lmn, f2.center,
                        c, f3.lmn, f3.center, d, f4.lmn, f4.center,
                    )
    return v


def build_basis(atoms):
    funcs = []
    for symbol, center in atoms:
        for shell in STO3G[symbol]:
            kind, exps, coefs = shell
            if kind == "S":
                funcs.append(Contracted(center, (0, 0, 0), exps, coefs))
            elif kind == "SP":
                s_coefs, p_coefs = coefs
                funcs.append(Contracted(center, (0, 0, 0), exps, s_coefs))
                for lmn in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]:
                    funcs.append(Contracted(center, lmn, exps, p_coefs))
    return funcs


def nuclear_repulsion(atoms):
    e = 0.0
    for (s1, c1), (s2, c2) in itertools.combinations(atoms, 2):
        r = np.linalg.norm(np.asarray(c1) - np.asarray(c2))
        e += CHARGES[s1] * CHARGES[s2] / r
    return e


def integrals(atoms):
    basis = build_basis(atoms)
    n = len(basis)
    S = np.zeros((n, n))
    T = np.zeros((n, n))
    V = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            S[i, j] = S[j, i] = overlap_contracted(basis[i], basis[j])
            T[i, j] = T[j, i] = kinetic_contracted(basis[i], basis[j])
            v = sum(
                -CHARGES[sym] * nuclear_contracted(basis[i], basis[j], np.asarray(center))
                for sym, center in atoms
            )
            V[i, j] = V[j, i] = v
    eri = np.zeros((n, n, n, n))
    for i in range(n):
        for j in range(i + 1):
            for k in range(n):
                for l in range(k + 1):
                    if (i * (i + 1) // 2 + j) < (k * (k + 1) // 2 + l):
                        continue
                    val = eri_contracted(basis[i], basis[j], basis[k], basis[l])
                    for (p, q, r, s) in {
                        (i, j, k, l), (j, i, k, l), (i, j, l, k), (j, i, l, k),
                        (k, l, i, j), (l, k, i, j), (k, l, j, i), (l, k, j, i),
                    }:
                        eri[p, q, r, s] = val
    return S, T, V, eri


def rhf(S, Hcore, eri, n_electrons, e_nuc, max_iter=200, tol=1e-12):
    nocc = n_electrons // 2
    s_val, s_vec = np.linalg.eigh(S)
    X = s_vec @ np.diag(s_val ** -0.5) @ s_vec.T

    def density(F):
        eps, Cp = np.linalg.eigh(X.T @ F @ X)
        C = X @ Cp
        return C, eps, 2.0 * C[:, :nocc] @ C[:, :nocc].T

    C, eps, D = density(Hcore)
    e_old = math.inf
    for _ in range(max_iter):
        J = np.einsum("pqrs,rs->pq", eri, D)
        K = np.einsum("prqs,rs->pq", eri, D)
        F = Hcore + J - 0.5 * K
        e_elec = 0.5 * np.sum(D * (Hcore + F))
        if abs(e_elec - e_old) < tol:
            break
        e_old = e_elec
        C, eps, D = density(F)
    else:
        raise RuntimeError("SCF did not converge")
    return e_elec + e_nuc, C, eps


def mo_integrals(Hcore, eri, C):
    h_mo = C.T @ Hcore @ C
    g_mo = np.einsum("pi,qj,pqrs,rk,sl->ijkl", C, C, eri, C, C, optimize=True)
    return h_mo, g_mo


def write_fcidump(path, h_mo, g_mo, e_core, n_electrons, threshold=1e-12):
    n = h_mo.shape[0]
    lines = [f"&FCI NORB={n},NELEC={n_electrons},MS2=0,"]
    lines.append(" ORBSYM=" + "1," * n)
    lines.append(" ISYM=1,")
    lines.append("&END")
    for p in range(n):
        for q in range(p + 1):
            for r in range(p + 1):
                s_max = q if r == p else r
                for s in range(s_max + 1):
                    v = g_mo[p, q, r, s]
                    if abs(v) > threshold:
                        lines.append(f"{v:.16E} {p+1} {q+1} {r+1} {s+1}")
    for p in range(n):
        for q in range(p + 1):
            v = h_mo[p, q]
            if abs(v) > threshold:
                lines.append(f"{v:.16E} {p+1} {q+1} 0 0")
    lines.append(f"{e_core:.16E} 0 0 0 0")
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def freeze_core(h_mo, g_mo, e_core, n_core):
    """Effective integrals over the active orbitals with the lowest n_core
    spatial orbitals doubly occupied and folded into the core energy."""
    core = range(n_core)
    e = e_core
    for c in core:
        e += 2.0 * h_mo[c, c]
        for c2 in core:
            e += 2.0 * g_mo[c, c, c2, c2] - g_mo[c, c2, c2, c]
    act = slice(n_core, h_mo.shape[0])
    h_eff = h_mo[act, act].copy()
    n_act = h_eff.shape[0]
    for p in range(n_act):
        for q in range(n_act):
            for c in core:
                h_eff[p, q] += 2.0 * g_mo[n_core + p, n_core + q, c, c] - g_mo[n_core + p, c, c, n_core + q]
    g_eff = g_mo[act, act, act, act].copy()
    return h_eff, g_eff, e


def fci_energy(h_mo, g_mo, e_core, n_electrons):
    """Determinant-basis FCI in the Sz=0 sector; independent sanity check."""
    n = h_mo.shape[0]
    n_so = 2 * n
    spat = lambda p: p % n
    spin = lambda p: p // n

    h_so = np.zeros((n_so, n_so))
    for p in range(n_so):
        for q in range(n_so):
            if spin(p) == spin(q):
                h_so[p, q] = h_mo[spat(p), spat(q)]

    def g_phys(p, q, r, s):
        if spin(p) != spin(r) or spin(q) != spin(s):
            return 0.0
        return g_mo[spat(p), spat(r), spat(q), spat(s)]

    dets = []
    for occ in itertools.combinations(range(n_so), n_electrons):
        mask = sum(1 << p for p in occ)
        n_alpha = sum(1 for p in occ if p < n)
        if 2 * n_alpha == n_electrons:
            dets.append(mask)
    dets.sort()
    index = {d: i for i, d in enumerate(dets)}
    dim = len(dets)

    def parity(mask, p):
        return -1.0 if bin(mask & ((1 << p) - 1)).count("1") % 2 else 1.0

    H = np.zeros((dim, dim))
    for col, det in enumerate(dets):
        H[col, col] += e_core
        occ = [p for p in range(n_so) if det >> p & 1]
        for q in occ:
            d1 = det & ~(1 << q)
            s1 = parity(det, q)
            for p in range(n_so):
                if d1 >> p & 1 or h_so[p, q] == 0.0:
                    continue
                H[index[d1 | 1 << p], col] += h_so[p, q] * s1 * parity(d1, p)
        for r in occ:
            d1 = det & ~(1 << r)
            s1 = parity(det, r)
            for s in occ:
                if s == r:
                    continue
                d2 = d1 & ~(1 << s)
                s2 = parity(d1, s)
                for q in range(n_so):
                    if d2 >> q & 1:
                        continue
                    d3 = d2 | 1 << q
                    s3 = parity(d2, q)
                    for p in range(n_so):
                        if d3 >> p & 1:
                            continue
                        g = g_phys(p, q, r, s)
                        if g == 0.0:
                            continue
                        tgt = d3 | 1 << p
                        if tgt in index:
                            H[index[tgt], col] += 0.5 * g * s1 * s2 * s3 * parity(d3, p)
    return float(np.linalg.eigvalsh(H)[0])


def make_h2(outdir, bond_angstrom):
    r = bond_angstrom * BOHR_PER_ANGSTROM
    atoms = [("H", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, r))]
    S, T, V, eri = integrals(atoms)
    e_nuc = nuclear_repulsion(atoms)
    e_hf, C, _ = rhf(S, T + V, eri, 2, e_nuc)
    h_mo, g_mo = mo_integrals(T + V, eri, C)
    label = f"{bond_angstrom:.3f}"
    path = os.path.join(outdir, f"h2_{label}.fcidump")
    write_fcidump(path, h_mo, g_mo, e_nuc, 2)
    e_fci = fci_energy(h_mo, g_mo, e_nuc, 2)
    assert e_fci <= e_hf + 1e-12
    print(f"h2_{label}: E_HF = {e_hf:.9f}  E_FCI = {e_fci:.9f}")
    return e_hf, e_fci


def make_lih(outdir, bond_angstrom):
    r = bond_angstrom * BOHR_PER_ANGSTROM
    atoms = [("Li", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, r))]
    S, T, V, eri = integrals(atoms)
    e_nuc = nuclear_repulsion(atoms)
    e_hf, C, _ = rhf(S, T + V, eri, 4, e_nuc)
    h_mo, g_mo = mo_integrals(T + V, eri, C)
    label = f"{bond_angstrom:.3f}"

    path = os.path.join(outdir, f"lih_{label}.fcidump")
    write_fcidump(path, h_mo, g_mo, e_nuc, 4)
    e_fci = fci_energy(h_mo, g_mo, e_nuc, 4)
    print(f"lih_{label}: E_HF = {e_hf:.9f}  E_FCI = {e_fci:.9f}")

    h_fc, g_fc, e_core_fc = freeze_core(h_mo, g_mo, e_nuc, 1)
    path_fc = os.path.join(outdir, f"lih_fc_{label}.fcidump")
    write_fcidump(path_fc, h_fc, g_fc, e_core_fc, 2)
    e_fci_fc = fci_energy(h_fc, g_fc, e_core_fc, 2)
    print(f"lih_fc_{label}: E_HF = {e_hf:.9f}  E_FCI(frozen core) = {e_fci_fc:.9f}")
    assert e_fci <= e_fci_fc + 1e-8, "frozen-core FCI is above full FCI"


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else "fixtures"
    os.makedirs(outdir, exist_ok=True)
    bonds = [0.300, 0.500, 0.735, 1.000, 1.250, 1.500, 2.000, 2.500]
    results = {}
    for b in bonds:
        results[b] = make_h2(outdir, b)
    # Equilibrium sanity: the well-known STO-3G values near 0.735 A.
    e_hf, e_fci = results[0.735]
    assert abs(e_hf - (-1.1167)) < 5e-3, e_hf
    assert abs(e_fci - (-1.1373)) < 5e-3, e_fci
    # PES minimum is interior.
    fcis = [results[b][1] for b in bonds]
    assert min(fcis) not in (fcis[0], fcis[-1])
    make_lih(outdir, 1.595)


if __name__ == "__main__":
    main()
