"""Projective spaces over Z/ℓ and their permutation representations.

For ℓ prime these are the usual finite projective spaces P(F_ℓ^n).  For
general ℓ we use unimodular vectors modulo units, which is what SL_n(Z/ℓ)
permutes transitively; over Z/4 in rank 3 this gives 28 points.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from sympy import isprime

from ..errors import CapExceededError, PreconditionError
from ..linalg.polys import prime_factors
from . import modular
from .modular import encode

DEFAULT_POINT_CAP = 200_000


class ProjectiveSpace:
    """Points of P((Z/ℓ)^n): unimodular vectors up to unit scaling."""

    def __init__(self, n: int, ell: int, cap: int = DEFAULT_POINT_CAP):
        if n < 1 or ell < 2:
            raise PreconditionError("need n >= 1 and ℓ >= 2")
        if ell**n > 50 * cap:
            raise CapExceededError(f"(Z/{ell})^{n} is too large to enumerate")
        self.n = n
        self.ell = ell
        self.units = modular.units(ell)
        grid = np.indices((ell,) * n).reshape(n, -1).T[:, ::-1].astype(np.int64)
        mask = np.ones(grid.shape[0], dtype=bool)
        for p in prime_factors(ell):
            mask &= (grid % p).any(axis=1)
        vecs = grid[mask]
        canon = self._canonical(vecs)
        keys, first = np.unique(self._keys(canon), return_index=True)
        self.points = canon[first]
        if self.points.shape[0] > cap:
            raise CapExceededError(f"{self.points.shape[0]} points exceed the cap {cap}")
        self._sorted_keys = keys

    def _keys(self, vecs: np.ndarray) -> np.ndarray:
        return encode(vecs[:, :, None], self.ell)

    def _canonical(self, vecs: np.ndarray) -> np.ndarray:
        best = vecs % self.ell
        best_keys = self._keys(best)
        for u in self.units:
            cand = (vecs * u) % self.ell
            k = self._keys(cand)
            better = k < best_keys
            best[better] = cand[better]
            best_keys = np.where(better, k, best_keys)
        return best

    def __len__(self) -> int:
        return int(self.points.shape[0])

    def index_of(self, vecs: np.ndarray) -> np.ndarray:
        canon = self._canonical(np.asarray(vecs, dtype=np.int64))
        keys = self._keys(canon)
        idx = np.searchsorted(self._sorted_keys, keys)
        if (idx >= len(self)).any() or (self._sorted_keys[np.minimum(idx, len(self) - 1)] != keys).any():
            raise PreconditionError("vector is not unimodular")
        return idx

    def action(self, g) -> np.ndarray:
        """images[i] = index of the line g·p_i."""
        g = np.asarray(g, dtype=np.int64) % self.ell
        return self.index_of(self.points @ g.T)

    def orbit_count_on_pairs(self, generators) -> int:
        """Number of orbits of ⟨generators⟩ on ordered pairs of points (the permutation character norm)."""
        m = len(self)
        rows, cols = [], []
        base = np.arange(m * m)
        for g in generators:
            img = self.action(g)
            rows.append(base)
            cols.append((img[:, None] * m + img[None, :]).ravel())
        rows, cols = np.concatenate(rows), np.concatenate(cols)
        graph = coo_matrix((np.ones(rows.shape[0], dtype=np.int8), (rows, cols)), shape=(m * m, m * m))
        count, _ = connected_components(graph, directed=True, connection="weak")
        return int(count)


@lru_cache(maxsize=32)
def projective_space(n: int, ell: int) -> ProjectiveSpace:
    return ProjectiveSpace(n, ell)


def point_count(n: int, q: int) -> int:
    return (q**n - 1) // (q - 1)


def projective_space_rep(n: int, q: int):
    """Permutation representation on P(F_q^n) and its sum-zero subrepresentation."""
    from ..reps import PermutationRep

    if not isprime(q):
        raise PreconditionError("projective_space_rep supports prime q only")
    perm = PermutationRep.projective(n, q)
    return perm, perm.sum_zero()


def permutation_character_norm(n: int, q: int) -> int:
    space = projective_space(n, q)
    return space.orbit_count_on_pairs(modular.standard_generators(n, q, "SL"))
