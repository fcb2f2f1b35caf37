"""Enumerated matrix groups over Z/ℓ.

Elements live in one (N, n, n) numpy array in breadth-first order from the
identity, so every element has a recorded parent and generator and can be
written as a word.  Membership uses integer keys Σ a_t ℓ^t with a sorted
copy for binary search.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..errors import CapExceededError, PreconditionError
from ..linalg.polys import divisors
from . import modular
from .modular import batch_matmul, canonical_variant, encode

DEFAULT_GROUP_CAP = 10**7
_BITMAP_LIMIT = 60_000_000


def _closure(generators, n: int, ell: int, cap: int):
    """Breadth-first closure of the identity under right multiplication."""
    gens = np.array([np.asarray(g, dtype=np.int64) % ell for g in generators], dtype=np.int64).reshape(-1, n, n)
    ident = np.eye(n, dtype=np.int64)[None] % ell
    id_key = encode(ident, ell)
    space = ell ** (n * n)
    use_bitmap = space <= _BITMAP_LIMIT
    if use_bitmap:
        seen = np.zeros(space, dtype=bool)
        seen[id_key] = True
    else:
        seen_keys = id_key.copy()
    chunks = [ident]
    parents = [np.array([-1], dtype=np.int64)]
    pgens = [np.array([-1], dtype=np.int64)]
    frontier = ident
    frontier_start = 0
    total = 1
    while frontier.shape[0] and gens.shape[0]:
        cand = np.concatenate([batch_matmul(frontier, g, ell) for g in gens])
        m = frontier.shape[0]
        cand_parent = np.tile(np.arange(frontier_start, frontier_start + m), gens.shape[0])
        cand_gen = np.repeat(np.arange(gens.shape[0]), m)
        keys = encode(cand, ell)
        keys, first = np.unique(keys, return_index=True)
        order = np.argsort(first, kind="stable")
        keys, first = keys[order], first[order]
        if use_bitmap:
            fresh = ~seen[keys]
            keys, first = keys[fresh], first[fresh]
            seen[keys] = True
        else:
            fresh = ~np.isin(keys, seen_keys, assume_unique=True)
            keys, first = keys[fresh], first[fresh]
            seen_keys = np.union1d(seen_keys, keys)
        if not keys.shape[0]:
            break
        total += keys.shape[0]
        if total > cap:
            raise CapExceededError(f"group closure exceeded the cap of {cap} elements")
        frontier = cand[first]
        chunks.append(frontier)
        parents.append(cand_parent[first])
        pgens.append(cand_gen[first])
        frontier_start = total - keys.shape[0]
    return np.concatenate(chunks), np.concatenate(parents), np.concatenate(pgens), gens


@dataclass
class ConjugacyClasses:
    labels: np.ndarray
    reps: list[int]
    sizes: list[int]
    orders: list[int]
    inverse: list[int]
    power_table: list[list[int]]

    @property
    def count(self) -> int:
        return len(self.reps)

    def power(self, k: int, t: int) -> int:
        row = self.power_table[k]
        return row[t % len(row)]

    def members(self, k: int) -> np.ndarray:
        return np.flatnonzero(self.labels == k)


class FiniteMatrixGroup:
    def __init__(self, n: int, ell: int, variant: str, elements, generators, parents, parent_gens,
                 description: str | None = None):
        self.n = n
        self.ell = ell
        self.variant = variant
        self.elements = np.asarray(elements, dtype=np.int16 if ell < 2**15 else np.int64)
        self.generators = [np.asarray(g, dtype=np.int64) for g in generators]
        self.parents = parents
        self.parent_gens = parent_gens
        self.description = description or f"{variant}_{n}(Z/{ell})"
        self.keys = encode(self.elements, ell)
        self._sort = np.argsort(self.keys, kind="stable")
        self._sorted_keys = self.keys[self._sort]

    def __repr__(self):
        return f"FiniteMatrixGroup({self.description}, order={self.order})"

    @property
    def order(self) -> int:
        return int(self.elements.shape[0])

    def __len__(self):
        return self.order

    def element(self, i: int) -> np.ndarray:
        return self.elements[i].astype(np.int64)

    def index_of(self, mats) -> np.ndarray:
        """Indices of the given matrices (stack or single); -1 when absent."""
        mats = np.asarray(mats, dtype=np.int64) % self.ell
        single = mats.ndim == 2
        if single:
            mats = mats[None]
        keys = encode(mats, self.ell)
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, len(self._sorted_keys) - 1)
        found = self._sorted_keys[pos] == keys
        out = np.where(found, self._sort[pos], -1)
        return int(out[0]) if single else out

    def contains(self, mat) -> bool:
        return self.index_of(mat) >= 0

    def word(self, i: int) -> list[int]:
        """Generator indices w with element i = g_{w[0]} g_{w[1]} ...."""
        out = []
        while i > 0:
            out.append(int(self.parent_gens[i]))
            i = int(self.parents[i])
        return out[::-1]

    def multiply_indices(self, a, b) -> np.ndarray:
        prod = batch_matmul(self.elements[np.asarray(a)], self.elements[np.asarray(b)], self.ell)
        return self.index_of(prod)

    @cached_property
    def inverse_indices(self) -> np.ndarray:
        """Index of x^{-1} for every x, using x^{|G|-1} = x^{-1}."""
        e = self.order - 1
        result = np.broadcast_to(np.eye(self.n, dtype=np.int64), (self.order, self.n, self.n)).copy()
        base = self.elements.astype(np.int64)
        while e:
            if e & 1:
                result = batch_matmul(result, base, self.ell)
            e >>= 1
            if e:
                base = batch_matmul(base, base, self.ell)
        return self.index_of(result)

    def element_order(self, i: int) -> int:
        g = self.element(i)
        x = g.copy()
        k = 1
        ident = np.eye(self.n, dtype=np.int64)
        while not np.array_equal(x, ident):
            x = (x @ g) % self.ell
            k += 1
        return k

    def conjugation_permutation(self, g: np.ndarray) -> np.ndarray:
        """Indices of g x g^{-1} for all elements x."""
        ginv = modular.inverse_mod(g, self.ell)
        conj = batch_matmul(self.elements, ginv, self.ell)
        conj = np.matmul(g[None], conj) % self.ell
        idx = self.index_of(conj)
        if (idx < 0).any():
            raise PreconditionError("conjugating element does not normalise the group")
        return idx

    @cached_property
    def classes(self) -> ConjugacyClasses:
        N = self.order
        rows, cols = [], []
        for g in self.generators:
            rows.append(np.arange(N))
            cols.append(self.conjugation_permutation(g))
        rows = np.concatenate(rows)
        cols = np.concatenate(cols)
        graph = coo_matrix((np.ones(rows.shape[0], dtype=np.int8), (rows, cols)), shape=(N, N))
        _, raw = connected_components(graph, directed=True, connection="weak")
        # relabel so that classes are numbered by their first element (identity first)
        _, first = np.unique(raw, return_index=True)
        order = np.argsort(first)
        relabel = np.empty_like(order)
        relabel[order] = np.arange(order.shape[0])
        labels = relabel[raw].astype(np.int32)
        reps = [int(x) for x in np.sort(first)]
        sizes = [int(c) for c in np.bincount(labels)]
        orders = [self.element_order(r) for r in reps]
        inv = self.inverse_indices
        inverse = [int(labels[inv[r]]) for r in reps]
        powers = []
        for k, r in enumerate(reps):
            g = self.element(r)
            x = np.eye(self.n, dtype=np.int64)
            row = []
            for _ in range(orders[k]):
                row.append(int(labels[self.index_of(x)]))
                x = (x @ g) % self.ell
            powers.append(row)
        return ConjugacyClasses(labels, reps, sizes, orders, inverse, powers)

    def exponent(self) -> int:
        e = 1
        for o in self.classes.orders:
            e = e * o // gcd(e, o)
        return e

    def class_of(self, mat) -> int:
        idx = self.index_of(mat)
        if idx < 0:
            raise PreconditionError("matrix is not in the group")
        return int(self.classes.labels[idx])

    def subgroup_mask(self, mask: np.ndarray, description: str) -> "FiniteMatrixGroup":
        """Subgroup given by a boolean mask over the elements (closure is the caller's claim)."""
        idx = np.flatnonzero(mask)
        return subgroup_generated(self, [self.element(i) for i in idx], description=description)

    def reduction_kernel(self, ell_prime: int) -> "FiniteMatrixGroup":
        """Γ̄(ℓ'|ℓ): elements congruent to the identity mod ℓ'."""
        if self.ell % ell_prime:
            raise PreconditionError(f"{ell_prime} does not divide {self.ell}")
        mask = self.kernel_mask(ell_prime)
        idx = np.flatnonzero(mask)
        elems = self.elements[idx]
        return FiniteMatrixGroup(self.n, self.ell, f"kernel({ell_prime}|{self.ell})", elems, [],
                                 np.full(len(idx), -1), np.full(len(idx), -1),
                                 description=f"Γ̄({ell_prime}|{self.ell}) in {self.description}")

    def kernel_mask(self, ell_prime: int) -> np.ndarray:
        ident = np.eye(self.n, dtype=np.int64)
        diff = (self.elements.astype(np.int64) - ident[None]) % ell_prime
        return ~diff.reshape(self.order, -1).any(axis=1)

    def kernel_classes(self, ell_prime: int) -> set[int]:
        return {int(c) for c in np.unique(self.classes.labels[self.kernel_mask(ell_prime)])}

    def elementary_class(self) -> int:
        return self.class_of(modular.elementary(self.n, 0, 1, self.ell))

    def divisors_of_modulus(self) -> list[int]:
        return divisors(self.ell)


def enumerate_group(n: int, ell: int, variant: str = "SL", cap: int = DEFAULT_GROUP_CAP) -> FiniteMatrixGroup:
    """Enumerate SL, SL±, GL or U over Z/ℓ from the standard generators."""
    variant = canonical_variant(variant)
    if n < 1 or ell < 2:
        raise PreconditionError("need n >= 1 and ℓ >= 2")
    predicted = modular.predicted_order(n, ell, variant)
    if predicted > cap:
        raise CapExceededError(f"predicted order {predicted} of {variant}_{n}(Z/{ell}) exceeds the cap {cap}")
    gens = modular.standard_generators(n, ell, variant)
    elems, parents, pgens, gens = _closure(gens, n, ell, cap)
    group = FiniteMatrixGroup(n, ell, variant, elems, list(gens), parents, pgens)
    if group.order != predicted:
        raise AssertionError(f"enumerated {group.order} elements, expected {predicted}")
    return group


def subgroup_generated(ambient: FiniteMatrixGroup, generators, description: str = "subgroup",
                       cap: int = DEFAULT_GROUP_CAP) -> FiniteMatrixGroup:
    gens = [np.asarray(g, dtype=np.int64) % ambient.ell for g in generators]
    if not gens:
        gens = []
    elems, parents, pgens, garr = _closure(gens, ambient.n, ambient.ell, cap)
    return FiniteMatrixGroup(ambient.n, ambient.ell, "subgroup", elems, list(garr), parents, pgens,
                             description=description)


def conjugacy_orbit(group: FiniteMatrixGroup, g) -> np.ndarray:
    """Indices of all G-conjugates of g, by breadth-first search over generator conjugations."""
    start = group.index_of(g)
    if start < 0:
        raise PreconditionError("element is not in the group")
    seen = {start}
    frontier = np.array([start])
    gens = group.generators
    invs = [modular.inverse_mod(s, group.ell) for s in gens]
    while frontier.shape[0]:
        mats = group.elements[frontier].astype(np.int64)
        nxt = []
        for s, si in zip(gens, invs):
            conj = np.matmul(np.matmul(s[None], mats) % group.ell, si[None]) % group.ell
            nxt.append(group.index_of(conj))
        nxt = np.unique(np.concatenate(nxt))
        fresh = np.array([i for i in nxt if i not in seen], dtype=np.int64)
        seen.update(int(i) for i in fresh)
        frontier = fresh
    return np.array(sorted(seen))


def normal_closure(g, group: FiniteMatrixGroup) -> FiniteMatrixGroup:
    """Smallest normal subgroup of the group containing g."""
    orbit = conjugacy_orbit(group, g)
    gens = [group.element(i) for i in orbit]
    return subgroup_generated(group, gens, description=f"normal closure in {group.description}")


def crt_reduction(group: FiniteMatrixGroup, modulus: int) -> np.ndarray:
    """Elements reduced mod a divisor of ℓ (as a stack)."""
    return group.elements.astype(np.int64) % modulus
