"""Algebraic representations of GL_n(C) labelled by bipartitions.

The irreducible with highest weight ω(λ⁺, λ⁻) = (λ⁺_1, ..., λ⁺_a, 0, ..., 0,
-λ⁻_b, ..., -λ⁻_1) is written V_n(λ⁺, λ⁻).  Everything here is exact integer
or Fraction arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError, RankTooSmallError
from .partitions import (
    Bipartition,
    Partition,
    hs_pairs,
    lr_coefficient,
    partitions_of,
)


@dataclass(frozen=True)
class AlgebraicLabel:
    bipartition: Bipartition
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise PreconditionError(f"rank must be positive, got {self.rank}")
        if self.bipartition.length > self.rank:
            raise RankTooSmallError(
                f"label {self.bipartition} needs rank >= {self.bipartition.length}, got {self.rank}"
            )

    @classmethod
    def of(cls, plus=(), minus=(), rank=3) -> "AlgebraicLabel":
        return cls(Bipartition(plus, minus), rank)

    @property
    def plus(self) -> Partition:
        return self.bipartition.plus

    @property
    def minus(self) -> Partition:
        return self.bipartition.minus

    def weight(self) -> tuple[int, ...]:
        return weight_of(self.bipartition, self.rank)

    def dual(self) -> "AlgebraicLabel":
        return AlgebraicLabel(self.bipartition.dual(), self.rank)

    def to_json(self) -> dict:
        return {"plus": self.plus.to_json(), "minus": self.minus.to_json(), "rank": self.rank}

    @classmethod
    def from_json(cls, data) -> "AlgebraicLabel":
        return cls(Bipartition(data.get("plus", []), data.get("minus", [])), int(data["rank"]))

    def __str__(self):
        return f"V_{self.rank}{self.bipartition}"


@dataclass(frozen=True)
class Branch:
    """One summand V_{n-1}(μ) ⊗ C_k of a restriction to GL_{n-1} × GL_1."""

    label: AlgebraicLabel
    torus_exponent: int
    multiplicity: int = 1

    def to_json(self) -> dict:
        return {
            "label": self.label.to_json(),
            "torus_exponent": self.torus_exponent,
            "multiplicity": self.multiplicity,
        }


def weight_of(b: Bipartition, n: int) -> tuple[int, ...]:
    if b.length > n:
        raise RankTooSmallError(f"label {b} needs rank >= {b.length}, got {n}")
    zeros = n - b.length
    return tuple(b.plus.parts) + (0,) * zeros + tuple(-x for x in reversed(b.minus.parts))


def _check_dominant(w):
    w = tuple(int(x) for x in w)
    if any(w[i] < w[i + 1] for i in range(len(w) - 1)):
        raise PreconditionError(f"weight {w} is not weakly decreasing")
    return w


def label_of_weight(w) -> Bipartition:
    """Bipartition read off from a dominant weight without any determinant shift."""
    w = _check_dominant(w)
    plus = [x for x in w if x > 0]
    minus = [-x for x in reversed(w) if x < 0]
    return Bipartition(plus, minus)


def normalize_weight(w) -> tuple[Bipartition, int]:
    """Write w = ω(b) + k·(1,...,1) with b in normal form.

    b is in normal form when ω(b) has a zero entry or has entries of both
    signs, so weights that already qualify are returned with k = 0.  A
    weight of a single strict sign is shifted by its entry closest to zero.
    """
    w = _check_dominant(w)
    if not w:
        return Bipartition(), 0
    if w[-1] <= 0 <= w[0]:
        k = 0
    elif w[-1] > 0:
        k = w[-1]
    else:
        k = w[0]
    return label_of_weight(tuple(x - k for x in w)), k


def weyl_dimension(label: AlgebraicLabel) -> int:
    a = label.weight()
    n = label.rank
    num = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            num *= Fraction(a[i] - a[j] + j - i, j - i)
    assert num.denominator == 1
    return int(num)


def weyl_dimension_of_weight(w) -> int:
    w = _check_dominant(w)
    n = len(w)
    num = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            num *= Fraction(w[i] - w[j] + j - i, j - i)
    return int(num)


class RationalPolynomial:
    """Polynomial in one variable with Fraction coefficients, lowest degree first."""

    def __init__(self, coeffs):
        coeffs = [Fraction(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, RationalPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RationalPolynomial({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[d]
            if c == 0:
                continue
            mono = "" if d == 0 else ("n" if d == 1 else f"n^{d}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]


def interpolate(points) -> RationalPolynomial:
    """Lagrange interpolation through (x, y) pairs, exact."""
    points = [(Fraction(x), Fraction(y)) for x, y in points]
    result = [Fraction(0)] * len(points)
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xj * basis[t + 1]
            denom *= xi - xj
        for t, c in enumerate(basis):
            result[t] += yi * c / denom
    return RationalPolynomial(result)


def dimension_polynomial(b: Bipartition) -> RationalPolynomial:
    """Polynomial p with p(n) = dim V_n(b) for every n ≥ ℓ(λ⁺)+ℓ(λ⁻).

    The dimension is a polynomial of degree |λ⁺|+|λ⁻| in n on that range, so
    degree+1 sample points determine it.
    """
    start = max(b.length, 1)
    d = b.size
    pts = [(n, weyl_dimension(AlgebraicLabel(b, n))) for n in range(start, start + d + 1)]
    return interpolate(pts)


def pieri_restrict(label: AlgebraicLabel) -> list[Branch]:
    """Restriction of V_n(λ⁺, λ⁻) to GL_{n-1} × GL_1.

    One branch V_{n-1}(μ⁺, μ⁻) ⊗ C_k per pair of horizontal strips, with
    k = |λ⁺| - |μ⁺| - |λ⁻| + |μ⁻|.  Needs ℓ(λ⁺)+ℓ(λ⁻) < n.
    """
    b = label.bipartition
    n = label.rank
    if b.length >= n:
        raise PreconditionError(
            f"Pieri restriction of {b} needs rank > {b.length}, got {n}"
        )
    out = []
    for mu in sorted(hs_pairs(b), key=lambda m: (-m.size, -m.plus.size, m.plus.parts, m.minus.parts)):
        k = b.plus.size - mu.plus.size - b.minus.size + mu.minus.size
        out.append(Branch(AlgebraicLabel(mu, n - 1), k, 1))
    return out


def _polynomial_labels(size: int, max_length: int):
    return [p for p in partitions_of(size) if p.length <= max_length]


def lr_restrict(label: AlgebraicLabel, m: int):
    """Restriction of V_n(λ⁺, λ⁻) to GL_m × GL_{n-m}.

    Twist by det^k until the weight is polynomial (all entries ≥ 0), expand
    the polynomial representation with Littlewood-Richardson coefficients,
    then twist each factor back by det^{-k}.  Returns a list of triples
    (label on GL_m, label on GL_{n-m}, multiplicity) sorted deterministically.
    """
    n = label.rank
    if not 1 <= m < n:
        raise PreconditionError(f"need 1 <= m < n, got m={m}, n={n}")
    w = label.weight()
    k = -min(w) if w else 0
    k = max(k, 0)
    nu = Partition(x + k for x in w if x + k > 0)
    found = {}
    for a in range(nu.size + 1):
        for lam in _polynomial_labels(a, m):
            for mu in _polynomial_labels(nu.size - a, n - m):
                c = lr_coefficient(lam, mu, nu)
                if c == 0:
                    continue
                wl = tuple(lam.part(i) - k for i in range(m))
                wm = tuple(mu.part(i) - k for i in range(n - m))
                left = AlgebraicLabel(label_of_weight(wl), m)
                right = AlgebraicLabel(label_of_weight(wm), n - m)
                found[(left, right)] = found.get((left, right), 0) + c
    key = lambda item: (
        item[0][0].bipartition.size + item[0][1].bipartition.size,
        item[0][0].weight(),
        item[0][1].weight(),
    )
    return [(l, r, c) for (l, r), c in sorted(found.items(), key=key, reverse=False)]


def trivial_factor_length_bound(label: AlgebraicLabel, m: int) -> bool:
    """Necessary condition ℓ(λ⁺)+ℓ(λ⁻) ≤ 2m for GL_{n-m}-invariant vectors."""
    return label.bipartition.length <= 2 * m


def unique_copy_check(b: Bipartition, m: int, n: int) -> int:
    """Multiplicity of V_m(b) ⊠ trivial inside V_n(b) restricted to GL_m × GL_{n-m}."""
    if not (b.length <= m < n):
        raise PreconditionError(f"need length({b}) <= m < n, got m={m}, n={n}")
    target_left = AlgebraicLabel(b, m)
    target_right = AlgebraicLabel(Bipartition(), n - m)
    for left, right, c in lr_restrict(AlgebraicLabel(b, n), m):
        if left == target_left and right == target_right:
            return c
    return 0


def branch_dimension(branches) -> int:
    return sum(weyl_dimension(b.label) * b.multiplicity for b in branches)


def lr_dimension(terms) -> int:
    return sum(weyl_dimension(l) * weyl_dimension(r) * c for l, r, c in terms)
