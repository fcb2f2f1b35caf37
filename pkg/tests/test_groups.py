import itertools
from fractions import Fraction as F

import numpy as np
import pytest

from vicdepth.errors import CapExceededError, HypothesisError, PreconditionError
from vicdepth.groups import (algebraic_forced, bmk_lower_bound, crt_split, depth_dim_lower_bound,
                             enumerate_group, max_depth_for_dim, min_nontrivial_dim, normal_closure,
                             permutation_character_norm, predicted_order, projective_space,
                             projective_space_rep)
from vicdepth.groups.modular import elementary
from vicdepth.reps import integer_inverse


def _det3(m, q):
    return int(round(np.linalg.det(m))) % q


def brute_sl3_order(q):
    """Count 3x3 matrices over Z/q of determinant one by direct enumeration."""
    count = 0
    for entries in itertools.product(range(q), repeat=9):
        m = np.array(entries).reshape(3, 3)
        if _det3(m, q) == 1:
            count += 1
    return count


def naive_class_count(group):
    elems = [group.element(i) for i in range(group.order)]
    keys = {e.tobytes(): i for i, e in enumerate(elems)}
    inv = [integer_inverse(e, group.ell) for e in elems]
    seen = set()
    count = 0
    for i, x in enumerate(elems):
        if i in seen:
            continue
        count += 1
        for g, gi in zip(elems, inv):
            seen.add(keys[((g @ x @ gi) % group.ell).astype(np.int64).tobytes()])
    return count


def test_sl3_f2_matches_brute_force():
    g = enumerate_group(3, 2)
    assert g.order == 168 == brute_sl3_order(2)
    assert g.order == (2**3 - 1) * (2**3 - 2) * (2**3 - 4)
    assert g.classes.count == naive_class_count(g) == 6


def test_sl3_f3_order():
    g = enumerate_group(3, 3)
    assert g.order == 5616 == predicted_order(3, 3, "SL")
    assert g.classes.count == 12


def test_sl3_z4_and_kernel():
    g = enumerate_group(3, 4)
    assert g.order == 43008 == 168 * 2**8
    # kernel = {I + 2A : tr A = 0 mod 2}; count the A by brute force
    count = sum(1 for a in itertools.product(range(2), repeat=9) if (a[0] + a[4] + a[8]) % 2 == 0)
    assert g.reduction_kernel(2).order == count == 256


def test_unitriangular_and_closure():
    assert enumerate_group(3, 2, "U").order == 8
    g = enumerate_group(3, 2)
    for i in range(0, g.order, 17):
        for j in range(0, g.order, 23):
            assert g.contains((g.element(i) @ g.element(j)) % 2)
    assert g.contains(np.eye(3, dtype=np.int64))


def test_sl_pm_and_gl_orders():
    assert enumerate_group(3, 3, "SL±").order == 2 * 5616
    assert enumerate_group(2, 5, "GL").order == (25 - 1) * (25 - 5)


def test_invalid_variant_and_cap():
    with pytest.raises(PreconditionError):
        enumerate_group(3, 2, "Sp")
    with pytest.raises(CapExceededError):
        enumerate_group(3, 4, cap=1000)


def test_crt_split():
    assert crt_split(6) == [(2, 1), (3, 1)]
    assert crt_split(4) == [(2, 2)]
    assert crt_split(12) == [(2, 2), (3, 1)]
    assert enumerate_group(3, 6).order == enumerate_group(3, 2).order * enumerate_group(3, 3).order


def test_normal_closures():
    g2 = enumerate_group(3, 2)
    assert normal_closure(elementary(3, 0, 1, 2), g2).order == 168
    g4 = enumerate_group(3, 4)
    k = normal_closure(elementary(3, 0, 1, 4, 2), g4)
    assert k.order == 256
    kernel = g4.kernel_mask(2)
    assert kernel.sum() == 256
    assert all(g4.contains(k.element(i)) and ((k.element(i) - np.eye(3, dtype=np.int64)) % 2 == 0).all()
               for i in range(k.order))
    assert normal_closure(np.eye(3, dtype=np.int64), g4).order == 1


def test_projective_points_and_sum_zero():
    perm, sub = projective_space_rep(3, 2)
    assert (perm.dim, sub.dim) == (7, 6)
    perm, sub = projective_space_rep(3, 5)
    assert (perm.dim, sub.dim) == (31, 30)


def test_permutation_norm_by_burnside():
    # Burnside: <χ, χ> = (1/|G|) Σ_g fix(g)^2 summed over class representatives
    g = enumerate_group(3, 5)
    space = projective_space(3, 5)
    cl = g.classes
    total = 0
    for k in range(cl.count):
        rep = g.element(int(cl.members(k)[0]))
        fixed = int((space.action(rep) == np.arange(len(space))).sum())
        total += len(cl.members(k)) * fixed**2
    assert F(total, g.order) == 2 == permutation_character_norm(3, 5)


def test_min_nontrivial_dim():
    assert min_nontrivial_dim(5, 2) == 30
    assert min_nontrivial_dim(3, 5) == 30
    with pytest.raises(HypothesisError):
        min_nontrivial_dim(3, 2)


def test_bmk_bounds():
    assert bmk_lower_bound(3, 2, 2) == 8
    assert bmk_lower_bound(3, 2, 1) == 2
    assert bmk_lower_bound(4, 3, 1) == 18


def test_depth_dim_bounds():
    assert depth_dim_lower_bound(6, 4).bound == 72
    assert depth_dim_lower_bound(2, 5).bound == 8
    for ell in range(2, 13):
        for n in range(3, 8):
            b = depth_dim_lower_bound(ell, n)
            assert b.bound >= ell ** (n - 2) == b.floor


def test_max_depth_for_dim():
    assert max_depth_for_dim(8, 5) == 2
    for n in range(3, 8):
        assert max_depth_for_dim(1, n) == 1
    for n in range(5, 9):
        # below 2^n - 2 every nontrivial mod-2 irreducible is already too large
        N = 2**n - 3
        assert algebraic_forced(N, n)
        assert min_nontrivial_dim(n, 2) > N
        assert depth_dim_lower_bound(max_depth_for_dim(N, n), n).bound <= N
    assert not algebraic_forced(2**5 - 2, 5)
