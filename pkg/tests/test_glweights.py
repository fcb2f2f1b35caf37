import pytest

from oracles import gl_character, gt_pattern_count
from vicdepth.errors import PreconditionError, RankTooSmallError
from vicdepth.glweights import (
    AlgebraicLabel,
    branch_dimension,
    dimension_polynomial,
    lr_dimension,
    lr_restrict,
    normalize_weight,
    pieri_restrict,
    trivial_factor_length_bound,
    unique_copy_check,
    weight_of,
    weyl_dimension,
)
from vicdepth.partitions import Bipartition, bipartitions_up_to, lr_coefficient, partitions_of

B = Bipartition
L = AlgebraicLabel.of


def test_weight_of_examples():
    assert weight_of(B(), 3) == (0, 0, 0)
    assert weight_of(B([1], [1]), 3) == (1, 0, -1)
    assert weight_of(B([2, 1], [1]), 4) == (2, 1, 0, -1)
    with pytest.raises(RankTooSmallError):
        weight_of(B([1, 1], [1, 1]), 3)


def test_normalize_examples():
    assert normalize_weight((1, 1, 1)) == (B(), 1)
    assert normalize_weight((1, 0, -1)) == (B([1], [1]), 0)
    assert normalize_weight((3, 2, 2)) == (B([1]), 2)
    assert normalize_weight((-1, -2, -2)) == (B([], [1, 1]), -1)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_normalize_round_trip(n):
    for b in bipartitions_up_to(4, max_length=n):
        w = weight_of(b, n)
        if (b.plus.length and b.minus.length) or b.length < n:
            assert normalize_weight(w) == (b, 0)
        for k in (-2, 3):
            shifted = tuple(x + k for x in w)
            nb, nk = normalize_weight(shifted)
            assert tuple(x + nk for x in weight_of(nb, n)) == shifted


def test_weyl_dimension_examples():
    for n in range(3, 9):
        assert weyl_dimension(L([1], [], n)) == n
    assert weyl_dimension(L([1], [1], 3)) == 8
    assert weyl_dimension(L([2, 1], [1], 4)) == 64


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_weyl_dimension_matches_gt(n):
    for b in bipartitions_up_to(3, max_length=n):
        assert weyl_dimension(AlgebraicLabel(b, n)) == gt_pattern_count(weight_of(b, n))


def test_dimension_polynomial_examples():
    assert dimension_polynomial(B()).coeffs == (1,)
    assert dimension_polynomial(B([1])).coeffs == (0, 1)
    assert dimension_polynomial(B([1], [1])).coeffs == (-1, 0, 1)


def test_dimension_polynomial_matches_weyl():
    for b in bipartitions_up_to(4):
        p = dimension_polynomial(b)
        assert p.degree == (b.size if b.size else 0)
        start = max(b.length, 1)
        for n in range(start, start + 7):
            assert p(n) == weyl_dimension(AlgebraicLabel(b, n))


def test_pieri_adjoint_matches_torus_restriction():
    branches = pieri_restrict(L([1], [1], 3))
    got = [(str(br.label.bipartition), br.torus_exponent) for br in branches]
    assert sorted(got) == sorted([("(□,□)", 0), ("(□,∅)", -1), ("(∅,□)", 1), ("(∅,∅)", 0)])
    restricted = {}
    for w, m in gl_character((1, 0, -1)).items():
        restricted[w] = restricted.get(w, 0) + m
    summed = {}
    for br in branches:
        for w, m in gl_character(br.label.weight()).items():
            key = w + (br.torus_exponent,)
            summed[key] = summed.get(key, 0) + m
    assert summed == restricted


def test_pieri_trivial_and_errors():
    (only,) = pieri_restrict(L([], [], 3))
    assert only.label == L([], [], 2) and only.torus_exponent == 0
    with pytest.raises(PreconditionError):
        pieri_restrict(L([1, 1], [1], 3))


def test_pieri_conservation_small():
    assert branch_dimension(pieri_restrict(L([2], [1], 4))) == weyl_dimension(L([2], [1], 4))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_pieri_character_identity(n):
    for b in bipartitions_up_to(3, max_length=n - 1):
        label = AlgebraicLabel(b, n)
        summed = {}
        for br in pieri_restrict(label):
            for w, m in gl_character(br.label.weight()).items():
                key = w + (br.torus_exponent,)
                summed[key] = summed.get(key, 0) + m
        assert summed == gl_character(label.weight())


def test_lr_restrict_polynomial_case():
    terms = lr_restrict(L([2, 1], [], 4), 2)
    for left, right, c in terms:
        assert not left.minus.parts and not right.minus.parts
        assert c == lr_coefficient(left.plus, right.plus, [2, 1])
    for a in range(4):
        for lam in partitions_of(a):
            for mu in partitions_of(3 - a):
                c = lr_coefficient(lam, mu, [2, 1])
                if c and lam.length <= 2 and mu.length <= 2:
                    assert (L(lam, [], 2), L(mu, [], 2), c) in terms


def test_lr_restrict_trivial():
    for n in range(2, 6):
        for m in range(1, n):
            assert lr_restrict(L([], [], n), m) == [(L([], [], m), L([], [], n - m), 1)]


def test_lr_restrict_agrees_with_pieri():
    label = L([1], [1], 3)
    from_lr = {
        (left.bipartition, right.weight()[0]): c for left, right, c in lr_restrict(label, 2)
    }
    from_pieri = {(br.label.bipartition, br.torus_exponent): br.multiplicity for br in pieri_restrict(label)}
    assert from_lr == from_pieri


@pytest.mark.parametrize("n", [3, 4, 5])
def test_lr_restrict_conservation_and_duality(n):
    for b in bipartitions_up_to(3, max_length=n):
        label = AlgebraicLabel(b, n)
        for m in range(1, n):
            terms = lr_restrict(label, m)
            assert lr_dimension(terms) == weyl_dimension(label)
            dual_terms = lr_restrict(label.dual(), m)
            assert {(l.dual(), r.dual(), c) for l, r, c in terms} == set(dual_terms)


def test_trivial_factor_bound_examples():
    assert trivial_factor_length_bound(L([1], [1], 3), 1)
    assert not trivial_factor_length_bound(L([1, 1, 1], [], 3), 1)
    assert trivial_factor_length_bound(L([2, 2], [1], 5), 2)


def test_unique_copy_examples():
    assert unique_copy_check(B([1]), 3, 5) == 1
    assert unique_copy_check(B([1], [1]), 2, 4) == 1
    assert unique_copy_check(B(), 3, 4) == 1


def test_unique_copy_property():
    for n in range(3, 7):
        for m in range(1, n):
            for b in bipartitions_up_to(3, max_length=m):
                assert unique_copy_check(b, m, n) == 1
