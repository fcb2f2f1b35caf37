"""Brute-force reference implementations used only by the tests.

Nothing here imports the library's formulas: dimensions come from counting
Gelfand-Tsetlin patterns and Littlewood-Richardson numbers from expanding
products of Schur polynomials monomial by monomial.
"""
from __future__ import annotations

import itertools
from functools import lru_cache


@lru_cache(maxsize=None)
def gt_pattern_count(top: tuple[int, ...]) -> int:
    """Number of Gelfand-Tsetlin patterns with the given top row."""
    if len(top) <= 1:
        return 1
    ranges = [range(top[i + 1], top[i] + 1) for i in range(len(top) - 1)]
    return sum(gt_pattern_count(row) for row in itertools.product(*ranges))


def ssyt(shape, nvars):
    """Semistandard Young tableaux of the shape with entries 1..nvars (row lists)."""
    cells = [(r, c) for r, length in enumerate(shape) for c in range(length)]
    filling = {}

    def rec(i):
        if i == len(cells):
            yield dict(filling)
            return
        r, c = cells[i]
        lo = 1
        if c > 0:
            lo = max(lo, filling[(r, c - 1)])
        if r > 0:
            lo = max(lo, filling[(r - 1, c)] + 1)
        for v in range(lo, nvars + 1):
            filling[(r, c)] = v
            yield from rec(i + 1)
            del filling[(r, c)]

    yield from rec(0)


@lru_cache(maxsize=None)
def schur_poly(shape: tuple[int, ...], nvars: int) -> dict:
    poly = {}
    for t in ssyt(shape, nvars):
        exp = [0] * nvars
        for v in t.values():
            exp[v - 1] += 1
        exp = tuple(exp)
        poly[exp] = poly.get(exp, 0) + 1
    return poly


def poly_mul(a: dict, b: dict) -> dict:
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def schur_expand(poly: dict, nvars: int) -> dict:
    """Coefficients of a symmetric polynomial in the Schur basis.

    The lexicographically largest monomial of a symmetric polynomial has a
    partition as exponent and is the leading term of the matching Schur
    polynomial, so peeling off leading terms terminates.
    """
    poly = dict(poly)
    result = {}
    while poly:
        lead = max(poly)
        c = poly[lead]
        shape = tuple(x for x in lead if x > 0)
        assert list(lead) == sorted(lead, reverse=True), "not symmetric"
        result[shape] = result.get(shape, 0) + c
        for e, v in schur_poly(shape, nvars).items():
            nv = poly.get(e, 0) - c * v
            if nv:
                poly[e] = nv
            else:
                poly.pop(e, None)
    return result


def lr_by_schur(lam, mu, nvars=None) -> dict:
    lam, mu = tuple(lam), tuple(mu)
    if nvars is None:
        nvars = max(sum(lam) + sum(mu), 6)
    prod = poly_mul(schur_poly(lam, nvars), schur_poly(mu, nvars))
    return schur_expand(prod, nvars)


def gl_character(top: tuple[int, ...]) -> dict:
    """Torus character of the GL_n irreducible with highest weight top, via GT patterns.

    The weight of a pattern has i-th entry (sum of row i) - (sum of row i-1),
    rows counted from the bottom.
    """
    n = len(top)
    out = {}

    def rec(row, sums):
        if len(row) == 1:
            s = sums
            w = tuple(s[i] - (s[i - 1] if i > 0 else 0) for i in range(n))
            out[w] = out.get(w, 0) + 1
            return
        ranges = [range(row[i + 1], row[i] + 1) for i in range(len(row) - 1)]
        for nxt in itertools.product(*ranges):
            rec(nxt, [sum(nxt)] + sums)

    rec(tuple(top), [sum(top)])
    return out
