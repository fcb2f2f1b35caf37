"""Exact arithmetic in cyclotomic fields Q(ζ_m).

An element is stored by its conductor m and its φ(m) rational coordinates in
the power basis 1, ζ, ..., ζ^{φ(m)-1} of ζ = exp(2πi/m).  Elements of
different conductors are combined inside Q(ζ_lcm).
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

import numpy as np

from .polys import cyclotomic_polynomial, totient


@lru_cache(maxsize=64)
def reduction_table(m: int) -> np.ndarray:
    """Row k holds the coordinates of ζ_m^k, for 0 ≤ k < m.

    Rows are produced by multiplying by ζ and rewriting ζ^{φ(m)} with the
    cyclotomic polynomial, so the whole table costs O(m·φ(m)).
    """
    phi = totient(m)
    cyc = np.array(cyclotomic_polynomial(m), dtype=object)
    table = np.zeros((m, phi), dtype=object)
    row = np.zeros(phi, dtype=object)
    row[0] = 1
    for k in range(m):
        table[k] = row
        top = row[-1]
        row = np.concatenate(([0], row[:-1])).astype(object)
        if top:
            row = row - top * cyc[:phi]
    if phi < 2**20 and all(abs(int(x)) < 2**40 for x in table.ravel()):
        return table.astype(np.int64)
    return table


def _fold(coeffs_by_exponent, m):
    """Reduce an exponent→coefficient dict into φ(m) coordinates."""
    table = reduction_table(m)
    out = [Fraction(0)] * table.shape[1]
    for k, c in coeffs_by_exponent.items():
        if c == 0:
            continue
        row = table[k % m]
        for j in np.flatnonzero(row):
            out[j] += c * int(row[j])
    return out


class CyclotomicNumber:
    __slots__ = ("conductor", "coeffs")
    __hash__ = None

    def __init__(self, conductor: int, coeffs):
        conductor = int(conductor)
        if conductor < 1:
            raise ValueError("conductor must be positive")
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != totient(conductor):
            raise ValueError(
                f"expected {totient(conductor)} coordinates for conductor {conductor}, got {len(coeffs)}"
            )
        self.conductor = conductor
        self.coeffs = coeffs

    # constructors

    @classmethod
    def rational(cls, q) -> "CyclotomicNumber":
        return cls(1, [Fraction(q)])

    @classmethod
    def root(cls, m: int, k: int = 1) -> "CyclotomicNumber":
        """ζ_m^k."""
        row = reduction_table(m)[k % m]
        return cls(m, [int(x) for x in row])

    @classmethod
    def from_exponents(cls, m: int, counts) -> "CyclotomicNumber":
        """Σ_s counts[s]·ζ_m^s, counts given as a sequence or dict."""
        if not isinstance(counts, dict):
            counts = {s: c for s, c in enumerate(counts) if c}
        return cls(m, _fold(counts, m))

    @staticmethod
    def coerce(x) -> "CyclotomicNumber":
        if isinstance(x, CyclotomicNumber):
            return x
        return CyclotomicNumber.rational(x)

    # structure

    def embed(self, m: int) -> "CyclotomicNumber":
        """Same number viewed in Q(ζ_m); m must be a multiple of the conductor."""
        if m == self.conductor:
            return self
        if m % self.conductor:
            raise ValueError(f"cannot embed conductor {self.conductor} into {m}")
        step = m // self.conductor
        return CyclotomicNumber(m, _fold({j * step: c for j, c in enumerate(self.coeffs) if c}, m))

    def _common(self, other):
        other = CyclotomicNumber.coerce(other)
        if other.conductor == self.conductor:
            return self, other
        if other.conductor == 1 and self.conductor > 1:
            return self, other.embed(self.conductor)
        if self.conductor == 1 and other.conductor > 1:
            return self.embed(other.conductor), other
        m = lcm(self.conductor, other.conductor)
        return self.embed(m), other.embed(m)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def galois(self, t: int) -> "CyclotomicNumber":
        """Image under ζ ↦ ζ^t, t coprime to the conductor."""
        m = self.conductor
        if gcd(t, m) != 1:
            raise ValueError("Galois exponent must be coprime to the conductor")
        return CyclotomicNumber(m, _fold({(j * t) % m: c for j, c in enumerate(self.coeffs) if c}, m))

    def conjugate(self) -> "CyclotomicNumber":
        return self.galois(-1 % self.conductor if self.conductor > 1 else 1)

    def norm(self) -> Fraction:
        m = self.conductor
        acc = CyclotomicNumber.rational(1)
        for t in range(1, m + 1):
            if gcd(t, m) == 1:
                acc = acc * self.galois(t % m if m > 1 else 1)
        return acc.to_fraction()

    def inverse(self) -> "CyclotomicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        m = self.conductor
        acc = CyclotomicNumber.rational(1)
        for t in range(2, m):
            if gcd(t, m) == 1:
                acc = acc * self.galois(t)
        nrm = (acc * self).to_fraction()
        return acc * (1 / nrm)

    def __complex__(self):
        z = cmath.exp(2j * cmath.pi / self.conductor)
        return complex(sum(float(c) * z**j for j, c in enumerate(self.coeffs)))

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, (CyclotomicNumber, int, Fraction)):
            return NotImplemented
        a, b = self._common(other)
        return CyclotomicNumber(a.conductor, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.conductor, [-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, (CyclotomicNumber, int, Fraction)):
            return NotImplemented
        return self + (-CyclotomicNumber.coerce(other))

    def __rsub__(self, other):
        return CyclotomicNumber.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.conductor, [c * other for c in self.coeffs])
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        a, b = self._common(other)
        if a.conductor == 1:
            return CyclotomicNumber(1, [a.coeffs[0] * b.coeffs[0]])
        prod = {}
        for i, x in enumerate(a.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    prod[i + j] = prod.get(i + j, 0) + x * y
        return CyclotomicNumber(a.conductor, _fold(prod, a.conductor))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CyclotomicNumber.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = CyclotomicNumber.rational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self):
        return f"CyclotomicNumber({self.conductor}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        if self.is_rational():
            return str(self.coeffs[0])
        terms = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if j == 0 else (f"z{self.conductor}" if j == 1 else f"z{self.conductor}^{j}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self):
        if self.is_rational():
            return str(self.coeffs[0])
        return {"conductor": self.conductor, "coefficients": [str(c) for c in self.coeffs]}
