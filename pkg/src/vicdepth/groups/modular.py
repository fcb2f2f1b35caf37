"""Matrices over Z/ℓ stored as numpy integer arrays, plus order formulas."""
from __future__ import annotations

from math import gcd, prod

import numpy as np

from ..errors import PreconditionError
from ..linalg.polys import prime_factors

VARIANTS = ("SL", "SL±", "GL", "U")
_VARIANT_ALIASES = {"SL": "SL", "SL±": "SL±", "SLpm": "SL±", "SL+-": "SL±", "SLPM": "SL±", "GL": "GL", "U": "U"}


def canonical_variant(name: str) -> str:
    try:
        return _VARIANT_ALIASES[name]
    except KeyError:
        raise PreconditionError(f"unknown group variant {name!r}; expected one of SL, SL±, GL, U") from None


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def elementary(n: int, i: int, j: int, ell: int = 0, power: int = 1) -> np.ndarray:
    """E_ij^power, 0-based indices, reduced mod ℓ when ℓ > 0."""
    m = identity(n)
    m[i, j] = power
    return m % ell if ell else m


def diagonal_unit(n: int, i: int, u: int, ell: int = 0) -> np.ndarray:
    m = identity(n)
    m[i, i] = u
    return m % ell if ell else m


def units(ell: int) -> list[int]:
    return [u for u in range(1, ell) if gcd(u, ell) == 1] if ell > 1 else [0]


def crt_split(ell: int) -> list[tuple[int, int]]:
    """ℓ = ∏ p^k as a sorted list of (p, k)."""
    if ell < 2:
        raise ValueError("ℓ must be at least 2")
    return sorted(prime_factors(ell).items())


def sl_order_prime_power(n: int, p: int, k: int) -> int:
    base = p ** (n * (n - 1) // 2) * prod(p**i - 1 for i in range(2, n + 1))
    return p ** ((k - 1) * (n * n - 1)) * base


def predicted_order(n: int, ell: int, variant: str) -> int:
    variant = canonical_variant(variant)
    if ell == 1:
        return 1
    if variant == "U":
        return ell ** (n * (n - 1) // 2)
    sl = prod(sl_order_prime_power(n, p, k) for p, k in crt_split(ell))
    if variant == "SL":
        return sl
    if variant == "SL±":
        return sl * (2 if ell > 2 else 1)
    phi = sum(1 for u in range(1, ell) if gcd(u, ell) == 1)
    return sl * phi


def standard_generators(n: int, ell: int, variant: str) -> list[np.ndarray]:
    variant = canonical_variant(variant)
    gens = []
    if variant == "U":
        for i in range(n - 1):
            gens.append(elementary(n, i, i + 1, ell))
        return gens
    for i in range(n):
        for j in range(n):
            if i != j:
                gens.append(elementary(n, i, j, ell))
    if variant == "SL±" and ell > 2:
        gens.append(diagonal_unit(n, 0, -1, ell))
    if variant == "GL":
        for u in units(ell):
            if u != 1:
                gens.append(diagonal_unit(n, 0, u, ell))
    return gens


def batch_matmul(a: np.ndarray, b: np.ndarray, ell: int) -> np.ndarray:
    """Products of stacks (N, n, n) @ (n, n) or (N, n, n) @ (N, n, n), mod ℓ."""
    return np.matmul(a.astype(np.int64), b.astype(np.int64)) % ell


def encode(mats: np.ndarray, ell: int) -> np.ndarray:
    """Integer keys Σ entry_t ℓ^t for a stack of matrices."""
    flat = mats.reshape(mats.shape[0], -1).astype(np.int64)
    weights = ell ** np.arange(flat.shape[1], dtype=np.int64)
    return flat @ weights


def decode(keys: np.ndarray, ell: int, n: int) -> np.ndarray:
    keys = np.asarray(keys, dtype=np.int64).copy()
    out = np.empty((keys.shape[0], n * n), dtype=np.int64)
    for t in range(n * n):
        out[:, t] = keys % ell
        keys //= ell
    return out.reshape(-1, n, n)


def det_mod(m: np.ndarray, ell: int) -> int:
    """Determinant of a single integer matrix reduced mod ℓ (Bareiss-free cofactor route)."""
    from sympy import Matrix

    return int(Matrix(m.tolist()).det()) % ell


def inverse_mod(m: np.ndarray, ell: int) -> np.ndarray:
    from sympy import Matrix

    return np.array(Matrix(m.tolist()).inv_mod(ell).tolist(), dtype=np.int64) % ell
