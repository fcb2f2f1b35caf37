"""Linear algebra over F_p with numpy int64 arrays.

Entries stay below p.  Products go through float64 matmul whenever every
partial sum stays below 2^53, which is exact; the default prime is just
under 2^20 so this holds up to dimension 8192.
Rank over F_p never exceeds rank over Q for p-integral matrices, which
lets a full-rank answer modulo p certify full rank over Q.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np
from scipy import sparse

from .matrix import ExactMatrix

DEFAULT_PRIME = 1048573


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """a @ b mod p, through float64 BLAS when every partial sum is exactly representable."""
    if a.shape[1] * (p - 1) ** 2 < 2**53:
        return np.fmod(a.astype(np.float64) @ b.astype(np.float64), p).astype(np.int64)
    return (a.astype(object) @ b.astype(object) % p).astype(np.int64)


def rref_mod(a: np.ndarray, p: int):
    """Reduced row echelon form over F_p; returns (nonzero rows, pivot columns)."""
    a = np.array(a, dtype=np.int64) % p
    a = a[a.any(axis=1)]
    rows, cols = a.shape
    pivots = []
    r = 0
    c = 0
    while r < rows and c < cols:
        live = a[r:, c:].any(axis=0)
        if not live.any():
            break
        c += int(np.argmax(live))
        k = r + int(np.flatnonzero(a[r:, c])[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        nz = np.flatnonzero(col)
        if nz.shape[0]:
            a[nz] = (a[nz] - np.outer(col[nz], a[r])) % p
        pivots.append(c)
        r += 1
        c += 1
    return a[:r], pivots


def nullspace_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of {x : a x = 0} as columns."""
    cols = a.shape[1]
    reduced, pivots = rref_mod(a, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for t, f in enumerate(free):
        basis[f, t] = 1
        for r, c in enumerate(pivots):
            basis[c, t] = (-reduced[r, f]) % p
    return basis


def normalise_columns(v: np.ndarray, p: int):
    """Column-echelon basis of the span of v with identity on its pivot rows."""
    reduced, pivots = rref_mod(v.T, p)
    return reduced.T.copy(), pivots




def reduce_mod(m: ExactMatrix, p: int = DEFAULT_PRIME) -> np.ndarray:
    """Entrywise image of a rational matrix in F_p (denominators must be prime to p)."""
    out = np.zeros(m.shape, dtype=np.int64)
    for (i, j), x in m.items():
        x = Fraction(x)
        out[i, j] = x.numerator * pow(x.denominator, -1, p) % p
    return out


def rank_mod(a: np.ndarray, p: int = DEFAULT_PRIME) -> int:
    if a.shape[0] == 0 or a.shape[1] == 0:
        return 0
    return len(rref_mod(a, p)[1])


def _prepare(g, p):
    if sparse.issparse(g):
        g = sparse.csr_matrix(g, dtype=np.int64, copy=True)
        g.data %= p
        return g
    return np.asarray(g, dtype=np.int64).T % p


def _apply_rows(g, rows, p):
    """Rows of (g @ rows.T).T mod p; sparse products stay exact in int64."""
    if sparse.issparse(g):
        return np.asarray((g @ rows.T).T, dtype=np.int64) % p
    return matmul_mod(rows, g, p)


def invariant_closure_mod(generators, start: np.ndarray, p: int = DEFAULT_PRIME) -> np.ndarray:
    """Basis (as columns) of the smallest subspace containing the columns of
    ``start`` and stable under every matrix in ``generators``, over F_p.

    Generators may be dense arrays or scipy sparse matrices.
    """
    dim = start.shape[0]
    basis, pivots = rref_mod(start.T, p)
    frontier = basis
    gens = [_prepare(g, p) for g in generators]
    while frontier.shape[0] and basis.shape[0] < dim:
        added = []
        for g in gens:
            cand = _apply_rows(g, frontier, p)
            cand = (cand - matmul_mod(cand[:, pivots], basis, p)) % p
            new, new_piv = rref_mod(cand, p)
            if not new_piv:
                continue
            basis = (basis - matmul_mod(basis[:, new_piv], new, p)) % p
            basis = np.concatenate([basis, new])
            pivots = pivots + new_piv
            added.append(new)
        frontier = np.concatenate(added) if added else basis[:0]
    return basis.T.copy()
