import json

import pytest

from vicdepth.depth import (CharacterPullback, IntegralRep, check_growth_dichotomy, classify, commutant_dimension,
                            depth, depth_divides, finite_part_dimension, gamma_u_check, p_depth)
from vicdepth.errors import NotRootOfUnityError, RelationError
from vicdepth.groups import character_table
from vicdepth.linalg import ExactMatrix
from vicdepth.reps import PermutationRep, StandardRep, TrivialRep


@pytest.fixture(scope="module")
def sum_zero():
    return IntegralRep.from_rep(PermutationRep.projective(3, 2).sum_zero())


@pytest.fixture(scope="module")
def std():
    return IntegralRep.from_rep(StandardRep(3))


def test_trivial_and_standard_are_algebraic(std):
    for n in (3, 4, 5):
        assert depth(IntegralRep.from_rep(TrivialRep(n))).depth == 1
    rep = classify(std)
    assert rep.depth == 1 and rep.classification == "algebraic"
    assert rep.p_depths == {}


def test_sum_zero_depth_two(sum_zero):
    rep = classify(sum_zero)
    assert rep.depth == 2
    assert rep.classification == "finite type"
    assert {d for d, _ in rep.eigenvalue_orders} == {1, 2}


def test_depth_divides(std, sum_zero):
    assert depth_divides(std, 1)
    assert depth_divides(sum_zero, 2)
    assert not depth_divides(sum_zero, 1)
    for rep in (std, sum_zero, std.tensor(sum_zero)):
        assert depth_divides(rep, depth(rep).depth)


def test_p_depths(std, sum_zero):
    level3 = IntegralRep.from_rep(PermutationRep.projective(3, 3).sum_zero())
    six = sum_zero.tensor(level3)
    assert depth(six).depth == 6
    assert (p_depth(six, 2), p_depth(six, 3), p_depth(six, 5)) == (1, 1, 0)
    assert all(p_depth(std, p) == 0 for p in (2, 3, 5, 7))


def test_depth_four_pullback():
    table = character_table(3, 4)
    deep = [c for c in table if c.factoring_level() == 4]
    assert deep
    pb = CharacterPullback(deep[0])
    assert depth(pb).depth == 4
    assert p_depth(pb, 2) == 2
    # the level-2 characters pull back to depth dividing 2
    shallow = [c for c in table if c.factoring_level() == 2]
    assert all(depth(CharacterPullback(c)).depth == 2 for c in shallow)


def test_gamma_u(std, sum_zero):
    assert gamma_u_check(std, 1, samples=100).passed
    assert gamma_u_check(sum_zero, 2).passed
    fail = gamma_u_check(sum_zero, 1)
    assert not fail.passed and fail.witness
    assert not fail.exact
    assert gamma_u_check(std.tensor(sum_zero), 2).passed


def test_finite_part_dimension(std, sum_zero):
    assert finite_part_dimension(sum_zero)[0] == 6
    assert finite_part_dimension(std)[0] == 1
    assert finite_part_dimension(std.tensor(sum_zero))[0] == 6


def test_mixed_classification(std, sum_zero):
    rep = classify(std.tensor(sum_zero))
    assert rep.classification == "mixed"
    assert (rep.dim_fin, rep.dim_alg) == (6, 3)


def test_commutant_detects_irreducibility(std, sum_zero):
    assert commutant_dimension(std) == 1
    assert commutant_dimension(sum_zero) == 1
    assert commutant_dimension(IntegralRep.from_rep(PermutationRep.projective(3, 2))) == 2


def test_relation_and_root_of_unity_errors():
    e = ExactMatrix.from_rows([[1, 1], [0, 1]])
    images = {(i, j): ExactMatrix.identity(2) for i in range(3) for j in range(3) if i != j}
    images[(0, 1)] = e
    with pytest.raises(RelationError):
        IntegralRep(3, images)
    bad = ExactMatrix.from_rows([[2, 0], [0, 1]])
    with pytest.raises(NotRootOfUnityError):
        images[(0, 1)] = bad
        depth(IntegralRep(3, images, check=False))


def test_json_round_trip(sum_zero, tmp_path):
    path = tmp_path / "rep.json"
    path.write_text(json.dumps(sum_zero.to_json()))
    again = IntegralRep.load(path)
    assert again.dim == 6 and depth(again).depth == 2


def test_growth_dichotomy():
    ns = list(range(1, 11))
    assert check_growth_dichotomy([n * n for n in ns], [1] * 10).status == "eventually algebraic consistent"
    assert check_growth_dichotomy([2**n for n in ns], [2] * 10).status == "consistent bounded depth"
    bad = check_growth_dichotomy(ns, [1] * 9 + [3])
    assert bad.status == "inconsistent"
    assert [v[0] for v in bad.violations] == [10]
    assert bad.violations[0][3] == 3**9 * 2 // 3
