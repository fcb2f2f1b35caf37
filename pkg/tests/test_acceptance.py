"""Acceptance checks, one per criterion.

Each check records a PASS/FAIL line; under pytest the lines are printed in the
terminal summary (see conftest.py), and ``python3 tests/test_acceptance.py``
runs the same checks and prints them directly.
"""
import json
import os
import subprocess
import sys
import time
from math import lcm

sys.path.insert(0, os.path.dirname(__file__))

from oracles import gt_pattern_count, lr_by_schur  # noqa: E402
from vicdepth.depth import CharacterPullback, IntegralRep, classify, depth_divides  # noqa: E402
from vicdepth.glweights import AlgebraicLabel, pieri_restrict, weight_of, weyl_dimension  # noqa: E402
from vicdepth.groups import (bmk_lower_bound, character_table, depth_dim_lower_bound, enumerate_group,  # noqa: E402
                             normal_closure, permutation_character_norm, projective_space_rep)
from vicdepth.groups.modular import elementary  # noqa: E402
from vicdepth.linalg import ExactMatrix  # noqa: E402
from vicdepth.linalg.polys import divisors  # noqa: E402
from vicdepth.partitions import Bipartition, bipartitions_up_to, lr_coefficient, partitions_of  # noqa: E402
from vicdepth.reps import PermutationRep, StandardRep, TrivialRep  # noqa: E402

RESULTS = []


def check(number, title, fn, limit=None):
    """Run one criterion, record its line, and re-raise a failure for pytest."""
    start = time.perf_counter()
    error = None
    try:
        detail = fn()
    except AssertionError as exc:
        detail, error = f"assertion failed: {exc}", exc
    except Exception as exc:  # an unexpected error is a failure of the criterion too
        detail, error = f"{type(exc).__name__}: {exc}", exc
    elapsed = time.perf_counter() - start
    if error is None and limit is not None and elapsed > limit:
        detail += f"; took {elapsed:.1f} s, over the {limit} s budget"
        error = AssertionError(detail)
    status = "PASS" if error is None else "FAIL"
    line = f"criterion {number:2d} {status}  {title}: {detail} [{elapsed:.1f} s]"
    RESULTS.append(line)
    print(line)
    if error is not None:
        raise AssertionError(line) from error
    return line


# ---------------------------------------------------------------------------
# criteria


def weyl_vs_gt():
    count = 0
    for n in range(3, 8):
        for b in bipartitions_up_to(4, max_length=n):
            got = weyl_dimension(AlgebraicLabel(b, n))
            want = gt_pattern_count(weight_of(b, n))
            assert got == want, f"{b} at rank {n}: {got} != {want}"
            count += 1
    return f"{count} labels agree with Gelfand-Tsetlin counts"


def pieri_conservation():
    count = 0
    for n in range(2, 9):
        for b in bipartitions_up_to(5, max_length=n - 1):
            label = AlgebraicLabel(b, n)
            branches = pieri_restrict(label)
            total = sum(weyl_dimension(br.label) * br.multiplicity for br in branches)
            assert total == weyl_dimension(label), f"{label}: {total}"
            for br in branches:
                mu = br.label.bipartition
                assert b.plus.length - 1 <= mu.plus.length <= b.plus.length, (b, mu)
                assert b.minus.length - 1 <= mu.minus.length <= b.minus.length, (b, mu)
            count += 1
    return f"{count} labels conserve dimension, branch lengths within one of the input"


def lr_oracle():
    count = 0
    for size in range(7):
        for a in range(size + 1):
            for lam in partitions_of(a):
                for mu in partitions_of(size - a):
                    expansion = lr_by_schur(lam.parts, mu.parts)
                    for nu in partitions_of(size):
                        assert lr_coefficient(lam, mu, nu) == expansion.get(nu.parts, 0), (lam, mu, nu)
                        count += 1
    return f"{count} coefficients with |nu| <= 6 match Schur products"


def sum_zero_irreducible():
    perm, sub = projective_space_rep(3, 5)
    assert perm.dim == 31 and sub.dim == 30 == (5**3 - 5) // (5 - 1)
    norm = permutation_character_norm(3, 5)
    assert norm == 2, norm
    return "sum-zero part of C[P(F_5^3)] has dimension 30; orbit count on ordered pairs is 2, so it is irreducible"


def normal_closures():
    g2 = enumerate_group(3, 2)
    whole = normal_closure(elementary(3, 0, 1, 2), g2)
    assert whole.order == g2.order == 168
    g4 = enumerate_group(3, 4)
    k = normal_closure(elementary(3, 0, 1, 4, 2), g4)
    kernel = g4.kernel_mask(2)
    assert k.order == int(kernel.sum()) == 256
    # every element of the closure is congruent to the identity mod 2
    assert all(((k.element(i) % 2) == _eye(3)).all() for i in range(k.order))
    return "<<E>> = SL_3(Z/2) of order 168; <<E^2>> = ker(SL_3(Z/4) -> SL_3(Z/2)) of order 256"


def _eye(n):
    import numpy as np

    return np.eye(n, dtype=np.int64)


def level_four_degrees():
    table = character_table(3, 4)
    table.verify()
    assert table.structure.order == 43008
    deep = [c for c in table if c.factoring_level() == 4]
    bound = bmk_lower_bound(3, 2, 2)
    assert deep and all(c.degree >= bound for c in deep), sorted(c.degree for c in deep)
    return (f"{len(table)} irreducibles, {len(deep)} of level 4 with degrees "
            f"{sorted(set(c.degree for c in deep))}, all >= {bound}")


def _irreducibles():
    for ell in (2, 3, 4, 5, 6):
        table = character_table(3, ell)
        table.verify()
        for c in table:
            yield ell, c


def depth_cross_validation():
    count = 0
    for ell, c in _irreducibles():
        level = c.factoring_level()
        pb = CharacterPullback(c)
        d = classify(pb).depth
        assert d == level, f"{c.label} over Z/{ell}: depth {d}, factoring level {level}"
        for e in divisors(ell):
            assert depth_divides(pb, e) == (e % level == 0) == c.factors_through(e), (ell, c.label, e)
        count += 1
    return f"{count} irreducibles over Z/2 .. Z/6: eigenvalue depth = factoring level at every divisor"


def dimension_vs_depth():
    count = 0
    for ell, c in _irreducibles():
        level = c.factoring_level()
        bound = depth_dim_lower_bound(level, 3).bound
        assert c.degree >= bound, f"{c.label} over Z/{ell}: degree {c.degree} < {bound}"
        count += 1
    return f"{count} irreducibles satisfy dim >= l^2 prod(1 - 1/p) for their depth l"


class _KronE:
    """ρ(E) of a tensor product of pullbacks."""

    def __init__(self, a, b):
        self.a, self.b = a, b
        self.dim = a.dim * b.dim

    def elementary_image(self, i=0, j=1, power=1):
        return self.a.elementary_image(i, j, power).kron(self.b.elementary_image(i, j, power))


class _DualE:
    def __init__(self, a):
        self.a, self.dim = a, a.dim

    def elementary_image(self, i=0, j=1, power=1):
        return self.a.elementary_image(i, j, power).inverse().transpose()


def duality_and_tensor():
    std = IntegralRep.from_rep(StandardRep(3))
    two = IntegralRep.from_rep(PermutationRep.projective(3, 2).sum_zero())
    three = IntegralRep.from_rep(PermutationRep.projective(3, 3).sum_zero())
    triv = IntegralRep.from_rep(TrivialRep(3))
    mixed = std.tensor(two)
    four = CharacterPullback([c for c in character_table(3, 4) if c.factoring_level() == 4][0])
    suite = {"trivial": triv, "std": std, "sum-zero F2": two, "sum-zero F3": three, "std x sum-zero F2": mixed,
             "level-4 pullback": four}
    for name, v in suite.items():
        dual = v.dual() if isinstance(v, IntegralRep) else _DualE(v)
        assert classify(dual).depth == classify(v).depth, name
    names = list(suite)
    for i, a in enumerate(names):
        for b in names[i:]:
            va, vb = suite[a], suite[b]
            if va.dim * vb.dim > 400:
                continue
            both = va.tensor(vb) if isinstance(va, IntegralRep) and isinstance(vb, IntegralRep) else _KronE(va, vb)
            d = classify(both).depth
            assert lcm(classify(va).depth, classify(vb).depth) % d == 0, (a, b, d)
    rep = classify(mixed)
    assert (rep.classification, rep.dim_fin, rep.dim_alg) == ("mixed", 6, 3), rep
    return "depth(V*) = depth(V) and depth(V x W) | lcm on the suite; std x sum-zero is (mixed, 6, 3)"


def sl_to_gl():
    from vicdepth.vic import extend_sl_to_gl, extended_submodule_check, projective_module, sum_zero_module

    p5 = projective_module(5, 3, 6)
    ext = extend_sl_to_gl(p5, 5, natural=p5)
    assert sorted(ext.levels) == [3, 4, 5]
    bad = [k for k, v in list(ext.checks.items()) + list(ext.comparison.items()) if not v]
    assert not bad, bad
    assert all(ext.comparison[f"natural_{n}"] for n in (3, 4, 5))
    assert any(k.startswith("complementary_gl1") for k in ext.checks)
    assert extended_submodule_check(ext, sum_zero_module(p5))
    return (f"GL_n(Z/5) actions for n = 3, 4, 5 equal the permutation actions on all generators; "
            f"{len(ext.checks)} structural checks pass; sum-zero subspaces preserved")


def phi_identities():
    from vicdepth.vic import phi_shift_identity, projective_module, standard_module, trivial_module

    report = []
    for mod in (trivial_module(3, 7), standard_module(3, 7), projective_module(2, 3, 7)):
        stabs = []
        for a in (0, 1, 2):
            out = phi_shift_identity(mod, a)
            assert out["equal"], (mod.name, a, out["levels"])
            assert isinstance(out["stabilization"], int), (mod.name, a, out["stabilization"])
            stabs.append(out["stabilization"])
        report.append(f"{mod.name} {stabs}")
    return "dim Phi_a(V)_n = dim Phi_0(S^a V)_{n-a}; stabilization degrees " + "; ".join(report)


def main_filtration():
    from vicdepth.vic import algebraic_isotypic_filtration, projective_module, standard_module, tensor

    p2 = projective_module(2, 3, 7)
    mod = tensor(standard_module(3, 7), p2)
    f = algebraic_isotypic_filtration(mod)
    assert len(f.layers) == 1, [str(l.label) for l in f.layers]
    layer = f.layers[0]
    assert layer.label == Bipartition((1,), ()), layer.label
    assert layer.multiplicity.dims() == p2.dims()
    assert layer.ell == 2
    for n in mod.window:
        assert mod.dim(n) == layer.dims[n] == n * (2**n - 1), n
    assert f.identity_holds and all(v == 0 for v in f.head_dims.values())
    return "one layer ((1), ()) with M_n = C[P(F_2^n)], depth 2, dim = n(2^n - 1) for n = 3..7"


def growth():
    from vicdepth.vic import (algebraic_isotypic_filtration, growth_classify, projective_module, standard_module,
                              trivial_module)

    std, triv, p2 = standard_module(3, 7), trivial_module(3, 7), projective_module(2, 3, 7)
    g = growth_classify(std)
    assert (g.kind, g.degree) == ("polynomial", 1), g
    h = growth_classify(triv)
    assert (h.kind, h.degree) == ("polynomial", 0), h
    e = growth_classify(p2)
    assert (e.kind, e.least_c, e.finite_type, e.stable_depth) == ("exponential", 2, True, 2), e
    for mod, rep in ((std, g), (triv, h)):
        assert rep.pointwise_algebraic
        f = algebraic_isotypic_filtration(mod)
        assert f.identity_holds
        # pointwise algebraic: the multiplicity spaces carry trivial actions
        for layer in f.layers:
            m = layer.multiplicity
            for n in mod.window:
                assert m.act(n, elementary(n, 0, 1)) == ExactMatrix.identity(m.dim(n)), (mod.name, n)
    return "standard: polynomial degree 1; trivial: polynomial degree 0; C[P(F_2^n)]: exponential, C = 2, depth 2"


def _cli_runs():
    env = dict(os.environ)
    src = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "src")
    env["PYTHONPATH"] = src + os.pathsep + env.get("PYTHONPATH", "")
    commands = [
        ["branch", "--plus", "1", "--minus", "1", "--rank", "3", "--pieri"],
        ["branch", "--plus", "2", "--minus", "1", "--rank", "5", "--lr", "2"],
        ["dim", "--plus", "2", "1", "--rank", "4"],
        ["depth", "--rep", "sum_zero_p2_3.json", "--samples", "50"],
        ["bounds", "--n", "5", "--dim", "29", "--ell", "6"],
        ["group-table", "3", "2", "SL"],
        ["vic-run", "--module", "std.json", "--window", "3", "5", "--ops", ",".join([
            "triple", "shift", "phi0", "phi1", "stabilization", "injectivity", "generation", "filtration", "growth",
            "length", "twist", "noetherian"])],
        ["vic-run", "--module", "p2.json", "--window", "3", "5", "--ops", "stable-depth,growth,length,noetherian"],
    ]
    out = []
    for cmd in commands:
        proc = subprocess.run([sys.executable, "-m", "vicdepth.cli", *cmd, "--json", "--seed", "0"],
                              capture_output=True, env=env, check=False)
        assert proc.returncode == 0, (cmd, proc.stderr.decode())
        json.loads(proc.stdout)
        out.append(proc.stdout)
    return out


def determinism():
    first = _cli_runs()
    second = _cli_runs()
    differing = [k for k, (a, b) in enumerate(zip(first, second)) if a != b]
    assert not differing, differing
    return f"{len(first)} CLI reports ({sum(map(len, first))} bytes) byte-identical across two runs"


CRITERIA = [
    (1, "Weyl dimension vs Gelfand-Tsetlin", weyl_vs_gt, 10),
    (2, "Pieri conservation", pieri_conservation, None),
    (3, "Littlewood-Richardson oracle", lr_oracle, 30),
    (4, "sum-zero rep on P(F_5^3)", sum_zero_irreducible, None),
    (5, "normal closures of E and E^2", normal_closures, 60),
    (6, "level-4 irreducibles of SL_3(Z/4)", level_four_degrees, 300),
    (7, "depth vs factoring level", depth_cross_validation, None),
    (8, "dimension vs depth bound", dimension_vs_depth, None),
    (9, "duality and tensor depth", duality_and_tensor, None),
    (10, "SL to GL extension of C[P(F_5^n)]", sl_to_gl, None),
    (11, "covariant identities", phi_identities, None),
    (12, "isotypic filtration of std x C[P(F_2^n)]", main_filtration, None),
    (13, "growth dichotomy", growth, None),
    (14, "determinism of CLI reports", determinism, None),
]


def _make_test(number, title, fn, limit):
    def test():
        check(number, title, fn, limit)

    test.__name__ = f"test_criterion_{number:02d}"
    return test


for _number, _title, _fn, _limit in CRITERIA:
    globals()[f"test_criterion_{_number:02d}"] = _make_test(_number, _title, _fn, _limit)


if __name__ == "__main__":
    failed = 0
    for number, title, fn, limit in CRITERIA:
        try:
            check(number, title, fn, limit)
        except AssertionError:
            failed += 1
    print(f"{len(CRITERIA) - failed}/{len(CRITERIA)} criteria pass")
    sys.exit(1 if failed else 0)
