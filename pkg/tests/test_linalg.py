import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vicdepth.errors import CapExceededError, NotRootOfUnityError
from vicdepth.linalg import (
    CyclotomicNumber,
    ExactMatrix,
    cyclotomic_orders,
    cyclotomic_polynomial,
    fixed_space,
    is_unipotent,
    matrix_order,
)
from vicdepth.linalg.matrix import _berkowitz
from vicdepth.linalg.polys import poly_mul, poly_pow, totient

Z = CyclotomicNumber


def test_cyclotomic_polynomials_known():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    assert sorted(set(cyclotomic_polynomial(105))) == [-2, -1, 0, 1]


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6, 8, 12, 15])
def test_roots_of_unity_arithmetic(m):
    z = Z.root(m)
    assert z**m == 1
    for k in range(1, m):
        if m % k == 0 and k < m:
            assert z**k != 1
    s = sum((Z.root(m, k) for k in range(m)), Z.rational(0))
    assert s == (1 if m == 1 else 0)
    # complex embedding agrees with the formal value
    assert abs(complex(Z.root(m, 1)) - complex(__import__("cmath").exp(2j * __import__("cmath").pi / m))) < 1e-12


def test_embedding_and_mixed_conductors():
    i = Z.root(4)
    w = Z.root(3)
    prod = i * w
    assert prod.conductor == 12
    assert prod == Z.root(12, 3 + 4)
    assert Z.root(6, 2) == w
    assert (i * i) == -1


def test_inverse_and_norm():
    x = Z.root(7) + 2
    assert x * x.inverse() == 1
    assert x.norm() == F(x.norm())
    assert Z.root(5).norm() == 1


def test_galois_and_conjugate():
    z = Z.root(8)
    assert z.conjugate() == z**7
    assert (z + z.conjugate()).is_rational() is False  # √2
    assert ((z + z.conjugate()) ** 2) == 2


def test_char_poly_examples():
    assert ExactMatrix.identity(2).char_poly() == [1, -2, 1]
    assert ExactMatrix.diagonal([1, -1]).char_poly() == [-1, 0, 1]
    assert ExactMatrix.companion([-1, 0, 0, 1]).char_poly() == [-1, 0, 0, 1]


def _random_matrix(rng, n, lo=-3, hi=3):
    return ExactMatrix.from_rows([[F(rng.randint(lo, hi), rng.choice([1, 1, 2])) for _ in range(n)] for _ in range(n)])


def test_char_poly_matches_berkowitz_and_cayley_hamilton():
    rng = random.Random(7)
    for n in range(1, 7):
        m = _random_matrix(rng, n)
        cp = m.char_poly()
        cyc_rows = [[Z.rational(x) for x in r] for r in m.to_rows()]
        assert [c.to_fraction() for c in _berkowitz(cyc_rows)] == cp
        acc = ExactMatrix.zeros(n)
        power = ExactMatrix.identity(n)
        for c in cp:
            acc = acc + power * c
            power = power @ m
        assert acc.is_zero()


def test_permutation_char_poly_fast_path():
    p = ExactMatrix.permutation([1, 2, 0, 4, 3])
    assert p.is_permutation()
    assert p.char_poly() == poly_mul([-1, 0, 0, 1], [-1, 0, 1])
    dense = ExactMatrix.from_rows(p.to_rows()) + ExactMatrix.zeros(5)
    assert dense.domain_matrix.charpoly() is not None


def test_cyclotomic_orders_examples():
    f = cyclotomic_orders([-1, 0, 1])
    assert f.orders == ((1, 1), (2, 1)) and f.remainder == (1,)
    f = cyclotomic_orders([-1, 3, -3, 1])
    assert f.orders == ((1, 3),)
    f = cyclotomic_orders([1, 1, 1])
    assert f.orders == ((3, 1),)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.tuples(st.sampled_from([1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 30]), st.integers(1, 2)), max_size=4),
    st.sampled_from([[1], [2, 1], [-3, 0, 1], [1, 1, 0, 1]]),
)
def test_cyclotomic_orders_reconstructs(parts, extra):
    p = list(extra)
    for d, k in parts:
        p = poly_mul(p, poly_pow(list(cyclotomic_polynomial(d)), k))
    fac = cyclotomic_orders(p)
    assert fac.reconstruct() == [F(c) for c in p]
    assert fac.remainder_degree == len(extra) - 1
    expected = {}
    for d, k in parts:
        expected[d] = expected.get(d, 0) + k
    assert dict(fac.orders) == expected


def test_cyclotomic_orders_errors():
    with pytest.raises(NotRootOfUnityError):
        cyclotomic_orders([-2, 1], require_roots_of_unity=True)
    with pytest.raises(CapExceededError):
        cyclotomic_orders(list(cyclotomic_polynomial(7)), cap=6, require_roots_of_unity=True)
    assert cyclotomic_orders(list(cyclotomic_polynomial(7)), cap=6).remainder_degree == 6


def test_unipotent_examples():
    assert is_unipotent(ExactMatrix.identity(3))
    assert is_unipotent(ExactMatrix.from_rows([[1, 5, 2], [0, 1, 7], [0, 0, 1]]))
    assert not is_unipotent(ExactMatrix.diagonal([1, -1]))


def test_unipotent_iff_char_poly():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(1, 5)
        upper = ExactMatrix.from_rows([[1 if i == j else (rng.randint(-2, 2) if j > i else 0) for j in range(n)] for i in range(n)])
        g = _random_matrix(rng, n)
        if g.rank() < n:
            continue
        m = g @ upper @ g.inverse()
        assert is_unipotent(m)
        assert m.char_poly() == [F(c) for c in poly_pow([-1, 1], n)]
        d = ExactMatrix.diagonal([rng.choice([1, -1, 2]) for _ in range(n)])
        m2 = g @ d @ g.inverse()
        assert is_unipotent(m2) == (m2.char_poly() == [F(c) for c in poly_pow([-1, 1], n)])


def test_fixed_space_examples_and_conjugation_invariance():
    assert fixed_space([], dim=3).shape == (3, 3)
    assert fixed_space([ExactMatrix.identity(2)]).shape == (2, 2)
    basis = fixed_space([ExactMatrix.diagonal([1, -1])])
    assert basis.to_rows() == [[1], [0]]
    rng = random.Random(11)
    ms = [ExactMatrix.permutation([1, 0, 2, 3]), ExactMatrix.permutation([0, 1, 3, 2])]
    g = _random_matrix(rng, 4)
    while g.rank() < 4:
        g = _random_matrix(rng, 4)
    conj = [g @ m @ g.inverse() for m in ms]
    assert fixed_space(ms).shape[1] == fixed_space(conj).shape[1] == 2


def test_matrix_order():
    assert matrix_order(ExactMatrix.companion(list(cyclotomic_polynomial(12)))) == 12
    assert matrix_order(ExactMatrix.from_rows([[1, 1], [0, 1]])) is None
    assert matrix_order(ExactMatrix.from_rows([[2, 1], [1, 1]])) is None


def test_cyclotomic_matrix_ops():
    z = Z.root(3)
    m = ExactMatrix.diagonal([z, z**2])
    assert m.is_cyclotomic
    assert (m @ m @ m).is_identity()
    assert not is_unipotent(m)
    assert is_unipotent(m @ m @ m)
    assert m.char_poly()[0] == 1 and m.char_poly()[1] == 1
    inv = m.inverse()
    assert (inv @ m).is_identity()


def test_json_round_trip():
    m = ExactMatrix.from_rows([[F(1, 2), 0], [3, F(-7, 3)]])
    assert m.to_json() == [["1/2", "0"], ["3", "-7/3"]]
    assert ExactMatrix.from_json(m.to_json()) == m


def test_solve_and_kron():
    a = ExactMatrix.from_rows([[1, 0], [0, 2], [1, 1]])
    x = ExactMatrix.from_rows([[3], [F(1, 2)]])
    assert a.solve_right(a @ x) == x
    with pytest.raises(ValueError):
        a.solve_right(ExactMatrix.from_rows([[1], [0], [0]]))
    k = ExactMatrix.diagonal([1, 2]).kron(ExactMatrix.from_rows([[0, 1], [1, 0]]))
    assert k.to_rows() == [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 2], [0, 0, 2, 0]]


def test_totient_small():
    assert [totient(m) for m in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]
