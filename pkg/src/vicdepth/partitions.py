"""Partitions, bipartitions and the combinatorics used for GL_n branching.

A partition is stored as a tuple of weakly decreasing positive integers.
The empty partition is the empty tuple and prints as ``∅``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __init__(self, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def part(self, i: int) -> int:
        """i-th part (0-based), zero past the end."""
        return self.parts[i] if i < len(self.parts) else 0

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(sum(1 for p in self.parts if p > j) for j in range(self.parts[0]))

    def cells(self):
        for r, p in enumerate(self.parts):
            for c in range(p):
                yield (r, c)

    def to_json(self) -> list[int]:
        return list(self.parts)

    def __repr__(self):
        return f"Partition({list(self.parts)})"

    def __str__(self):
        if not self.parts:
            return "∅"
        if self.parts == (1,):
            return "□"
        return "(" + ",".join(map(str, self.parts)) + ")"


EMPTY = Partition()
BOX = Partition([1])


def as_partition(x) -> Partition:
    if isinstance(x, Partition):
        return x
    return Partition(x)


@dataclass(frozen=True, order=True)
class Bipartition:
    plus: Partition
    minus: Partition

    def __init__(self, plus=(), minus=()):
        object.__setattr__(self, "plus", as_partition(plus))
        object.__setattr__(self, "minus", as_partition(minus))

    @property
    def size(self) -> int:
        return self.plus.size + self.minus.size

    @property
    def length(self) -> int:
        """ℓ(λ⁺) + ℓ(λ⁻), the smallest rank at which the label makes sense."""
        return self.plus.length + self.minus.length

    def dual(self) -> "Bipartition":
        return Bipartition(self.minus, self.plus)

    def to_json(self) -> list[list[int]]:
        return [self.plus.to_json(), self.minus.to_json()]

    @classmethod
    def from_json(cls, data) -> "Bipartition":
        if isinstance(data, dict):
            return cls(data.get("plus", []), data.get("minus", []))
        plus, minus = data
        return cls(plus, minus)

    def __repr__(self):
        return f"Bipartition({list(self.plus.parts)}, {list(self.minus.parts)})"

    def __str__(self):
        return f"({self.plus},{self.minus})"


TRIVIAL_LABEL = Bipartition()


def contains(inner, outer) -> bool:
    """True iff the Young diagram of ``inner`` sits inside that of ``outer``.

    Works for partitions and, componentwise, for bipartitions.
    """
    if isinstance(inner, Bipartition) or isinstance(outer, Bipartition):
        return contains(inner.plus, outer.plus) and contains(inner.minus, outer.minus)
    inner, outer = as_partition(inner), as_partition(outer)
    if inner.length > outer.length:
        return False
    return all(a <= b for a, b in zip(inner.parts, outer.parts))


def partitions_of(n: int, max_part: int | None = None, max_length: int | None = None):
    """All partitions of n in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield EMPTY
        return
    if max_length == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        rest_len = None if max_length is None else max_length - 1
        for rest in partitions_of(n - first, first, rest_len):
            yield Partition((first,) + rest.parts)


def partitions_up_to(n: int, max_length: int | None = None):
    for k in range(n + 1):
        yield from partitions_of(k, max_length=max_length)


def bipartitions_up_to(total: int, max_length: int | None = None):
    """Bipartitions with |λ⁺|+|λ⁻| ≤ total (and ℓ(λ⁺)+ℓ(λ⁻) ≤ max_length if given)."""
    for a in range(total + 1):
        for b in range(total - a + 1):
            for p in partitions_of(a):
                for m in partitions_of(b):
                    bp = Bipartition(p, m)
                    if max_length is None or bp.length <= max_length:
                        yield bp


def horizontal_strips(lam) -> set[Partition]:
    """All μ ⊆ λ with λ/μ a horizontal strip (λ itself included).

    λ/μ has at most one cell per column exactly when the rows interlace:
    λ_{i+1} ≤ μ_i ≤ λ_i.
    """
    lam = as_partition(lam)
    ranges = [range(lam.part(i + 1), lam.part(i) + 1) for i in range(lam.length)]
    out = set()
    for mu in itertools.product(*ranges):
        out.add(Partition(p for p in mu if p > 0))
    return out


def hs_pairs(b: Bipartition) -> set[Bipartition]:
    return {Bipartition(p, m) for p in horizontal_strips(b.plus) for m in horizontal_strips(b.minus)}


def _lr_fillings(lam: Partition, mu: Partition, nu: Partition) -> int:
    """Count LR tableaux of shape ν/λ and content μ.

    Rows are filled top to bottom and, inside a row, right to left, which is
    the reading order of the lattice-word condition.
    """
    rows = nu.length
    cells = []
    for r in range(rows):
        for c in range(nu.part(r) - 1, lam.part(r) - 1, -1):
            cells.append((r, c))
    content = list(mu.parts)
    k = len(content)
    filling: dict[tuple[int, int], int] = {}
    used = [0] * (k + 1)

    def rec(idx: int) -> int:
        if idx == len(cells):
            return 1
        r, c = cells[idx]
        hi = k
        # rows weakly increase left to right, so going right to left values can only drop
        if (r, c + 1) in filling:
            hi = min(hi, filling[(r, c + 1)])
        lo = 1
        if r > 0 and c >= lam.part(r - 1):
            lo = filling[(r - 1, c)] + 1
        total = 0
        for v in range(lo, hi + 1):
            if used[v] >= content[v - 1]:
                continue
            if v > 1 and used[v] + 1 > used[v - 1]:
                continue
            used[v] += 1
            filling[(r, c)] = v
            total += rec(idx + 1)
            del filling[(r, c)]
            used[v] -= 1
        return total

    return rec(0)


def lr_coefficient(lam, mu, nu) -> int:
    """Littlewood-Richardson coefficient c^ν_{λμ}."""
    lam, mu, nu = as_partition(lam), as_partition(mu), as_partition(nu)
    if lam.size + mu.size != nu.size:
        return 0
    if not contains(lam, nu) or not contains(mu, nu):
        return 0
    if mu.size == 0:
        return 1
    return _lr_fillings(lam, mu, nu)


def refinement_key(b: Bipartition):
    return (b.size, -b.plus.size, b.plus.parts, b.minus.parts)


def containment_refinement(bs: Iterable[Bipartition]) -> list[Bipartition]:
    """Deterministic linear order extending componentwise containment.

    Sorted by total size first, which already separates every strictly
    contained pair; ties prefer the larger plus side and then fall back to
    lexicographic order of the parts.
    """
    return sorted(set(bs), key=refinement_key)
