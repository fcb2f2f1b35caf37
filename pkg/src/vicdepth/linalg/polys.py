"""Univariate polynomials as coefficient lists, lowest degree first.

Coefficients are Fractions (or ints); helpers never mutate their inputs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from sympy import Poly, Symbol, cyclotomic_poly, isprime, primitive_root

from ..errors import CapExceededError, NotRootOfUnityError

DEFAULT_CYCLOTOMIC_CAP = 5040
_X = Symbol("x")


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p) -> int:
    return len(trim(p)) - 1


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out)


def poly_add(a, b):
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def poly_sub(a, b):
    return poly_add(a, [-x for x in b])


def poly_pow(a, k: int):
    out = [1]
    for _ in range(k):
        out = poly_mul(out, a)
    return out


def poly_divmod(a, b):
    """Exact long division; b must have an invertible leading coefficient."""
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    rem = list(a)
    lead = b[-1]
    q = [0] * (len(a) - len(b) + 1)
    for shift in range(len(a) - len(b), -1, -1):
        c = rem[shift + len(b) - 1]
        if c == 0:
            continue
        c = c / lead if not isinstance(c, int) or not isinstance(lead, int) else Fraction(c, lead)
        q[shift] = c
        for j, y in enumerate(b):
            rem[shift + j] -= c * y
    return trim(q), trim(rem)


def poly_eval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


@lru_cache(maxsize=None)
def totient(m: int) -> int:
    result, k, p = m, m, 2
    while p * p <= k:
        if k % p == 0:
            while k % p == 0:
                k //= p
            result -= result // p
        p += 1
    if k > 1:
        result -= result // k
    return result


def divisors(m: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d * d != m:
                large.append(m // d)
        d += 1
    return small + large[::-1]


def prime_factors(m: int) -> dict[int, int]:
    out = {}
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(d: int) -> tuple[int, ...]:
    """Integer coefficients of Φ_d, lowest degree first."""
    return tuple(int(c) for c in reversed(Poly(cyclotomic_poly(d, _X), _X).all_coeffs()))


@lru_cache(maxsize=None)
def _screen_prime(d: int) -> tuple[int, int]:
    """A prime q ≡ 1 (mod d), q > 10^6, and an element of exact order d mod q."""
    k = max(1, 10**6 // d)
    while not isprime(k * d + 1):
        k += 1
    q = k * d + 1
    return q, pow(primitive_root(q), (q - 1) // d, q)


def _integer_content(p):
    den = 1
    for c in p:
        den = lcm(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in p]
    return ints


def _may_have_root(ints, d: int) -> bool:
    """False only when Φ_d certainly does not divide the integer polynomial."""
    q, z = _screen_prime(d)
    if ints[-1] % q == 0:
        return True
    acc = 0
    for c in reversed(ints):
        acc = (acc * z + c) % q
    return acc == 0


@dataclass(frozen=True)
class CyclotomicFactorization:
    orders: tuple[tuple[int, int], ...]
    remainder: tuple[Fraction, ...]
    cap: int

    @property
    def remainder_degree(self) -> int:
        return len(self.remainder) - 1

    def order_lcm(self) -> int:
        out = 1
        for d, _ in self.orders:
            out = lcm(out, d)
        return out

    def reconstruct(self):
        out = [Fraction(c) for c in self.remainder]
        for d, mult in self.orders:
            out = poly_mul(out, poly_pow(list(cyclotomic_polynomial(d)), mult))
        return out


def _totients_upto(n: int) -> list[int]:
    phi = list(range(n + 1))
    for p in range(2, n + 1):
        if phi[p] == p:
            for k in range(p, n + 1, p):
                phi[k] -= phi[k] // p
    return phi


def cyclotomic_orders(p, cap: int = DEFAULT_CYCLOTOMIC_CAP, require_roots_of_unity: bool = False):
    """Strip every Φ_d (d ≤ cap) from a rational polynomial.

    Returns a CyclotomicFactorization whose product reconstructs p exactly.
    Each candidate d is first screened by evaluating p at an element of order
    d modulo a large prime; only survivors are tried by exact division.

    With ``require_roots_of_unity`` a nonconstant remainder raises: a
    NotRootOfUnityError when no root of unity of order above the cap has
    small enough degree to divide it, otherwise a CapExceededError.
    """
    p = [Fraction(c) for c in trim(p)]
    if not p:
        raise ValueError("zero polynomial has no factorization")
    rem = p
    phi = _totients_upto(cap)
    orders = []
    for d in range(1, cap + 1):
        deg = len(rem) - 1
        if deg < 1:
            break
        if phi[d] > deg:
            continue
        if not _may_have_root(_integer_content(rem), d):
            continue
        phid = list(cyclotomic_polynomial(d))
        mult = 0
        while len(rem) - 1 >= phi[d]:
            quo, r = poly_divmod(rem, phid)
            if r:
                break
            rem = quo
            mult += 1
        if mult:
            orders.append((d, mult))
    result = CyclotomicFactorization(tuple(orders), tuple(rem), cap)
    if require_roots_of_unity and len(rem) > 1:
        deg = len(rem) - 1
        bound = max(cap + 1, 2 * deg * deg + 2)
        big_phi = _totients_upto(bound)
        possible = any(big_phi[d] <= deg for d in range(cap + 1, bound + 1))
        if possible:
            raise CapExceededError(
                f"remainder of degree {deg} may hide roots of unity of order above the cap {cap}"
            )
        raise NotRootOfUnityError(
            f"characteristic polynomial has a factor of degree {deg} without root-of-unity roots"
        )
    return result


def is_squarefree(p) -> bool:
    """gcd(p, p') is constant."""
    p = [Fraction(c) for c in trim(p)]
    dp = trim([i * p[i] for i in range(1, len(p))])
    a, b = p, dp
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    return len(a) <= 1


def lcm_list(xs) -> int:
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


def poly_to_json(p) -> list[str]:
    return [str(c) for c in p]
