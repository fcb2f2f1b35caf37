"""Dimension bounds for representations of SL_n(Z/ℓ)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import HypothesisError, PreconditionError
from ..linalg.polys import prime_factors


def min_nontrivial_dim(n: int, p: int) -> int:
    """Smallest nontrivial dimension (pⁿ − p)/(p − 1), valid when n ≥ 5 or p > 3."""
    if n < 2 or p < 2:
        raise PreconditionError("need n >= 2 and a prime p")
    if not (n >= 5 or p > 3):
        raise HypothesisError(f"the minimal-dimension formula needs n >= 5 or p > 3, got n={n}, p={p}")
    return (p**n - p) // (p - 1)


def bmk_lower_bound(n: int, p: int, k: int) -> Fraction:
    """Lower bound p^{(n−1)k}(1 − 1/p) for irreducibles not factoring through level p^{k−1}."""
    if k < 1:
        raise PreconditionError("k must be at least 1")
    return Fraction(p ** ((n - 1) * k)) * (1 - Fraction(1, p))


@dataclass(frozen=True)
class DepthBound:
    ell: int
    n: int
    bound: Fraction
    floor: int

    def to_json(self):
        return {"ell": self.ell, "n": self.n, "bound": str(self.bound), "floor": self.floor}


def depth_dim_lower_bound(ell: int, n: int) -> DepthBound:
    """ℓ^{n−1} ∏_{p|ℓ} (1 − 1/p), together with the weaker ℓ^{n−2}."""
    if ell < 1:
        raise PreconditionError("ℓ must be positive")
    bound = Fraction(ell ** (n - 1))
    for p in prime_factors(ell):
        bound *= 1 - Fraction(1, p)
    return DepthBound(ell, n, bound, ell ** (n - 2) if n >= 2 else 1)


def max_depth_for_dim(N: int, n: int) -> int:
    """Largest ℓ with depth_dim_lower_bound(ℓ, n) ≤ N."""
    if N < 1 or n < 3:
        raise PreconditionError("need N >= 1 and n >= 3")
    limit = int(round(N ** (1 / (n - 2)))) + 2
    best = 1
    for ell in range(2, limit + 1):
        if depth_dim_lower_bound(ell, n).bound <= N:
            best = ell
    return best


def algebraic_forced(N: int, n: int) -> bool:
    """Irreducibles of SL_n(Z) of dimension N are forced to be algebraic (n ≥ 5, N < 2ⁿ − 2)."""
    return n >= 5 and N < 2**n - 2
