"""Window-scoped analyses of VIC(Z)-modules.

Everything here certifies statements about a finite window only.  Matrix
identities between integral matrices are checked exactly with scipy sparse
int64 arithmetic (falling back to rational ExactMatrix arithmetic);
generation is certified by a closure modulo a large prime, since a full
mod-p span forces a full rational span.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np
from scipy import sparse

from ..depth import classify
from ..errors import DecompositionError, PreconditionError, RankTooSmallError, VerificationError
from ..glweights import AlgebraicLabel, weyl_dimension
from ..groups import modular
from ..groups.projective import ProjectiveSpace
from ..linalg import ExactMatrix, is_unipotent
from ..linalg.modp import DEFAULT_PRIME, invariant_closure_mod
from ..partitions import Bipartition, containment_refinement
from ..reps import PermutationRep, Representation, TrivialRep, embed_top_left, integer_inverse
from .module import (TRIVIAL_LABEL, Layer, VicWindowModule, complementary_generators,
                     iterated_shift, cokernel_module, sum_zero_module)

# ---------------------------------------------------------------------------
# exact matrix helpers


def to_sparse(m: ExactMatrix):
    """csr int64 copy of an integral matrix, or None if some entry is not an integer."""
    rows, cols, vals = [], [], []
    for (i, j), x in m.items():
        if x.denominator != 1 or abs(x) >= _INT64_SAFE:
            return None
        rows.append(i)
        cols.append(j)
        vals.append(int(x))
    return sparse.csr_matrix((np.array(vals, dtype=np.int64), (rows, cols)), shape=m.shape, dtype=np.int64)


_INT64_SAFE = 2**62


class _Lifted:
    """A matrix held as csr int64 when integral and as ExactMatrix otherwise."""

    __slots__ = ("exact", "csr")

    def __init__(self, exact: ExactMatrix | None = None, csr=None):
        self.exact = exact
        self.csr = csr if csr is not None else (to_sparse(exact) if exact is not None else None)

    @property
    def shape(self):
        return self.csr.shape if self.csr is not None else self.exact.shape

    def as_exact(self) -> ExactMatrix:
        if self.exact is None:
            coo = self.csr.tocoo()
            self.exact = ExactMatrix.from_dict({(int(i), int(j)): int(v) for i, j, v in zip(coo.row, coo.col, coo.data)},
                                               self.csr.shape)
        return self.exact

    def _max_abs(self) -> int:
        return int(np.abs(self.csr.data).max(initial=0))

    def __matmul__(self, other: "_Lifted") -> "_Lifted":
        if self.csr is not None and other.csr is not None:
            # each output entry is a sum of at most `inner` products, so this bounds it
            inner = self.shape[1]
            if self._max_abs() * other._max_abs() * max(inner, 1) < _INT64_SAFE:
                return _Lifted(csr=(self.csr @ other.csr).tocsr())
        return _Lifted(self.as_exact() @ other.as_exact())

    def __sub__(self, other: "_Lifted") -> "_Lifted":
        if self.csr is not None and other.csr is not None and self._max_abs() + other._max_abs() < _INT64_SAFE:
            return _Lifted(csr=(self.csr - other.csr).tocsr())
        return _Lifted(self.as_exact() - other.as_exact())

    def __eq__(self, other) -> bool:
        if self.shape != other.shape:
            return False
        if self.csr is not None and other.csr is not None:
            return (self.csr != other.csr).nnz == 0
        return self.as_exact() == other.as_exact()

    __hash__ = None

    def is_zero(self) -> bool:
        if self.csr is not None:
            return self.csr.count_nonzero() == 0
        return self.exact.is_zero()

    def power(self, k: int) -> "_Lifted":
        out = _Lifted(csr=sparse.identity(self.shape[0], dtype=np.int64, format="csr"))
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def mod_p(self, p: int):
        if self.csr is not None:
            return self.csr
        from ..linalg.modp import reduce_mod

        return reduce_mod(self.exact, p)


def _identity(d: int) -> _Lifted:
    return _Lifted(csr=sparse.identity(d, dtype=np.int64, format="csr"))


class _Actions:
    """Cache of level actions of a module, keyed by level and matrix bytes."""

    def __init__(self, module: VicWindowModule):
        self.module = module
        self._cache = {}
        self._maps = {}

    def act(self, n: int, g) -> _Lifted:
        g = np.asarray(g, dtype=np.int64)
        key = (n, g.tobytes())
        if key not in self._cache:
            self._cache[key] = _Lifted(self.module.act(n, g))
        return self._cache[key]

    def map(self, n: int) -> _Lifted:
        if n not in self._maps:
            self._maps[n] = _Lifted(self.module.maps[n])
        return self._maps[n]

    def composite(self, a: int, b: int) -> _Lifted:
        out = _identity(self.module.dim(a))
        for n in range(a, b):
            out = self.map(n) @ out
        return out


def _actions(module) -> _Actions:
    cache = getattr(module, "_vic_actions", None)
    if cache is None or cache.module is not module:
        cache = _Actions(module)
        module._vic_actions = cache
    return cache


def _columns_mod(m: _Lifted, p: int) -> np.ndarray:
    x = m.mod_p(p)
    if sparse.issparse(x):
        x = x.toarray()
    return np.asarray(x, dtype=np.int64) % p


def rank_exact(m: _Lifted) -> int:
    return m.as_exact().rank() if min(m.shape) else 0


# ---------------------------------------------------------------------------
# generation and injectivity


def generated_by_image(module: VicWindowModule, n: int, p: int = DEFAULT_PRIME,
                       generators=None, exact_fallback: int = 300) -> bool:
    """Is V_n spanned by the GL_n-translates of T_{n-1}(V_{n-1})?

    Certified modulo p (a spanning set modulo p spans over Q).  When the
    mod-p span is deficient the rational span is recomputed exactly for
    levels of dimension at most ``exact_fallback``.
    """
    acts = _actions(module)
    dim = module.dim(n)
    if dim == 0:
        return True
    t = acts.map(n - 1)
    if t.shape[1] == 0:
        return False
    gens = generators if generators is not None else module.generators(n)
    mats = [acts.act(n, g) for g in gens]
    span = invariant_closure_mod([m.mod_p(p) for m in mats], _columns_mod(t, p), p)
    if span.shape[1] == dim:
        return True
    if dim > exact_fallback:
        return False
    basis = t.as_exact().column_space()
    while True:
        grown = ExactMatrix.hstack([basis] + [m.as_exact() @ basis for m in mats]).column_space()
        if grown.shape[1] == basis.shape[1]:
            return basis.shape[1] == dim
        basis = grown


def generation_degree(module: VicWindowModule, p: int = DEFAULT_PRIME) -> int:
    """Least d in the window such that V_n is generated by V_{n-1} for every d < n ≤ n_max."""
    d = module.n_max
    for n in range(module.n_max, module.n_min, -1):
        if not generated_by_image(module, n, p):
            break
        d = n - 1
    return d


def injectivity_degree(module: VicWindowModule) -> int:
    """Least n in the window from which every T_n is injective (n_max if none within the window)."""
    acts = _actions(module)
    d = module.n_max
    for n in range(module.n_max - 1, module.n_min - 1, -1):
        t = acts.map(n)
        if rank_exact(t) != t.shape[1]:
            break
        d = n
    return d


# ---------------------------------------------------------------------------
# weak triples


@dataclass
class TripleVerdict:
    n: int
    representations: bool
    equivariant: bool
    generated: bool
    complementary_gl1: bool
    complementary_gl2: bool
    injective: tuple = (False, False)
    failures: list = field(default_factory=list)

    @property
    def weak(self) -> bool:
        return self.representations and self.equivariant and self.generated and self.complementary_gl1 \
            and self.complementary_gl2

    @property
    def strong(self) -> bool:
        return self.weak and all(self.injective)

    def to_json(self):
        return {"n": self.n, "conditions": {"representations": self.representations, "equivariant": self.equivariant,
                                            "generated": self.generated, "complementary_gl1": self.complementary_gl1,
                                            "complementary_gl2": self.complementary_gl2},
                "injective": list(self.injective), "weak": self.weak, "strong": self.strong,
                "failures": self.failures}


def _relations_hold(acts: _Actions, n: int, signed: bool) -> bool:
    """Steinberg commutator relations [E_ij, E_jk] = E_ik and the sign involution on level n."""
    e = {(i, j): acts.act(n, modular.elementary(n, i, j)) for i in range(n) for j in range(n) if i != j}
    inv = {(i, j): acts.act(n, modular.elementary(n, i, j, power=-1)) for i in range(n) for j in range(n) if i != j}
    for (i, j), x in e.items():
        if not (x @ inv[(i, j)]) == _identity(x.shape[0]):
            return False
        for k in range(n):
            if k in (i, j):
                continue
            comm = x @ e[(j, k)] @ inv[(i, j)] @ inv[(j, k)]
            if not comm == e[(i, k)]:
                return False
        for (a, b), y in e.items():
            if a != j and b != i and (a, b) != (i, j) and not (x @ y) == (y @ x):
                return False
    if signed:
        s = acts.act(n, modular.diagonal_unit(n, n - 1, -1))
        if not (s @ s) == _identity(s.shape[0]):
            return False
    return True


def _fixes(acts: _Actions, n: int, gens, image: _Lifted) -> bool:
    return all(acts.act(n, g) @ image == image for g in gens)


def _equivariant(acts: _Actions, n: int, gens) -> bool:
    t = acts.map(n)
    return all(t @ acts.act(n, g) == acts.act(n + 1, embed_top_left(g, n + 1)) @ t for g in gens)


def validate_weak_triple(module: VicWindowModule, n: int, p: int = DEFAULT_PRIME) -> TripleVerdict:
    """Check the five weak-triple conditions on V_{n-1} → V_n → V_{n+1}, plus injectivity."""
    if n - 1 < module.n_min or n + 1 > module.n_max:
        raise PreconditionError(f"levels {n - 1}, {n}, {n + 1} are not all in the window")
    acts = _actions(module)
    for k in (n - 1, n):
        if acts.map(k).shape != (module.dim(k + 1), module.dim(k)):
            raise PreconditionError(f"T_{k} does not match the level dimensions")
    failures = []
    reps_ok = all(_relations_hold(acts, k, module.signed) for k in (n - 1, n, n + 1))
    if not reps_ok:
        failures.append("representations")
    equi = _equivariant(acts, n - 1, module.generators(n - 1)) and _equivariant(acts, n, module.generators(n))
    if not equi:
        failures.append("equivariant")
    gen = True
    for k in (n, n + 1):
        if not generated_by_image(module, k, p):
            gen = False
            if module.dim(k) > 300:
                failures.append(f"generated (level {k}: mod-{p} certificate failed, exact check skipped above 300)")
            else:
                failures.append("generated")
            break
    gl1 = (_fixes(acts, n, complementary_generators(n, 1, module.signed), acts.map(n - 1))
           and _fixes(acts, n + 1, complementary_generators(n + 1, 1, module.signed), acts.map(n)))
    if not gl1:
        failures.append("complementary_gl1")
    gl2 = _fixes(acts, n + 1, complementary_generators(n + 1, 2, module.signed), acts.composite(n - 1, n + 1))
    if not gl2:
        failures.append("complementary_gl2")
    inj = tuple(rank_exact(acts.map(k)) == module.dim(k) for k in (n - 1, n))
    return TripleVerdict(n, reps_ok, equi, gen, gl1, gl2, inj, failures)


# ---------------------------------------------------------------------------
# covariants


@dataclass
class Covariants:
    """Graded covariant spaces (V_n)_{GL_{n-a}} with the maps induced by T."""

    a: int
    dims: dict
    invariant_dims: dict
    maps: dict
    ranks: dict

    def to_json(self):
        return {"a": self.a, "dimensions": {str(n): d for n, d in self.dims.items()},
                "invariant_dimensions": {str(n): d for n, d in self.invariant_dims.items()},
                "map_ranks": {str(n): r for n, r in self.ranks.items()}}


def _exact_closure(mats, start: ExactMatrix) -> ExactMatrix:
    basis = start.column_space() if start.shape[1] else start
    while basis.shape[1]:
        grown = ExactMatrix.hstack([basis] + [m @ basis for m in mats]).column_space()
        if grown.shape[1] == basis.shape[1]:
            break
        basis = grown
    return basis


def covariants_phi(module: VicWindowModule, a: int) -> Covariants:
    """Φ_a(V)_n = (V_n)_{GL_{n-a}(Z)} for n > a in the window, GL_{n-a} in the bottom-right corner.

    The coinvariant quotient is computed directly; its dimension is compared
    with the invariant dimension, which must agree for these semisimple actions.
    """
    if a < 0:
        raise PreconditionError("a must be non-negative")
    acts = _actions(module)
    levels = [n for n in module.window if n > a]
    if not levels:
        raise PreconditionError(f"the window has no level above a = {a}")
    proj, comp, dims, inv_dims = {}, {}, {}, {}
    for n in levels:
        d = module.dim(n)
        gens = complementary_generators(n, n - a, module.signed)
        mats = [acts.act(n, g).as_exact() for g in gens]
        eye = ExactMatrix.identity(d)
        moved = ExactMatrix.hstack([m - eye for m in mats]) if d else ExactMatrix.zeros(0, 0)
        w = _exact_closure(mats, moved) if d else moved
        inv_dims[n] = ExactMatrix.vstack([m - eye for m in mats]).nullspace().shape[1] if d else 0
        from ..reps import QuotientRep

        q = QuotientRep(module.levels[n], w if w.shape[1] else ExactMatrix.zeros(d, 0))
        proj[n], comp[n], dims[n] = q.projection, q.complement, q.dim
        if dims[n] != inv_dims[n]:
            raise VerificationError(f"covariants ({dims[n]}) and invariants ({inv_dims[n]}) differ at level {n}")
    maps, ranks = {}, {}
    for n in levels[:-1]:
        m = proj[n + 1] @ module.maps[n] @ comp[n]
        maps[n] = m
        ranks[n] = m.rank() if min(m.shape) else 0
    return Covariants(a, dims, inv_dims, maps, ranks)


def stabilization_degree(phi: Covariants):
    """Least n from which every induced map is an isomorphism, or "not in window"."""
    levels = sorted(phi.dims)
    if len(levels) < 2:
        return "not in window"
    best = None
    for n in reversed(levels[:-1]):
        if phi.dims[n] == phi.dims[n + 1] == phi.ranks[n]:
            best = n
        else:
            break
    return best if best is not None else "not in window"


def phi_shift_identity(module: VicWindowModule, a: int) -> dict:
    """Compare dim Φ_a(V)_{n+a} with dim Φ_0(S^a V)_n on the common levels."""
    phi = covariants_phi(module, a)
    shifted = covariants_phi(iterated_shift(module, a), 0) if a else phi
    rows = {}
    for n, d in shifted.dims.items():
        if n + a in phi.dims:
            rows[n + a] = (phi.dims[n + a], d)
    return {"a": a, "levels": rows, "equal": all(x == y for x, y in rows.values()),
            "stabilization": stabilization_degree(phi), "shift_stabilization": stabilization_degree(shifted)}


# ---------------------------------------------------------------------------
# depth on windows


@dataclass
class PropagationVerdict:
    n: int
    ell: int
    hypothesis: bool
    conclusion: bool
    witness: tuple | None
    triple: TripleVerdict | None
    status: str

    def to_json(self):
        return {"n": self.n, "ell": self.ell, "hypothesis": self.hypothesis, "conclusion": self.conclusion,
                "witness": list(self.witness) if self.witness else None,
                "triple": self.triple.to_json() if self.triple else None, "status": self.status}


def _is_permutation(x: _Lifted) -> bool:
    if x.csr is None:
        return False
    m = x.csr
    return bool((m.data == 1).all() and m.nnz == m.shape[0] and (m.getnnz(axis=0) == 1).all()
                and (m.getnnz(axis=1) == 1).all())


def _depth_witness(acts: _Actions, n: int, ell: int):
    """First (i, j) (1-based) with ρ(E_ij)^ℓ not unipotent, or None.

    No witness means the depth of level n divides ℓ.  When every ρ(E_ij)^ℓ
    is moreover the identity and n ≥ 3, the action factors through
    SL^±_n(Z/ℓ), the ℓ-th powers of elementary matrices normally generating
    the level-ℓ congruence subgroup.
    """
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            x = acts.act(n, modular.elementary(n, i, j, power=ell))
            if x == _identity(x.shape[0]):
                continue
            if _is_permutation(x) or not is_unipotent(x.as_exact()):
                return (i + 1, j + 1)
    return None


def depth_propagation_check(module: VicWindowModule, n: int, ell: int, p: int = DEFAULT_PRIME,
                            triple: TripleVerdict | None = None) -> PropagationVerdict:
    """Levels n−1, n of depth dividing ℓ ⇒ so is level n+1, on a weak triple.

    For finite-type levels depth dividing ℓ is the same as factoring through
    SL^±(Z/ℓ).  A failed conclusion on an input that still passes as a weak
    triple is raised as a VerificationError; otherwise the violated triple
    conditions are reported.
    """
    if n - 1 < 3:
        raise RankTooSmallError("the congruence criterion needs rank at least 3 on every level")
    acts = _actions(module)
    hyp = _depth_witness(acts, n - 1, ell) is None and _depth_witness(acts, n, ell) is None
    witness = _depth_witness(acts, n + 1, ell)
    conclusion = witness is None
    if triple is None:
        triple = validate_weak_triple(module, n, p)
    if not hyp:
        status = "hypothesis fails"
    elif conclusion:
        status = "pass"
    elif triple.weak:
        raise VerificationError(f"weak triple at {n} violates depth propagation with witness E_{witness}")
    else:
        status = "input is not a weak triple: " + ", ".join(triple.failures)
    return PropagationVerdict(n, ell, hyp, conclusion, witness, triple, status)


@dataclass
class StableDepth:
    ell: int
    levels: dict
    generation_degree: int
    propagation: list

    def to_json(self):
        return {"ell": self.ell, "levels": {str(n): d for n, d in self.levels.items()},
                "generation_degree": self.generation_degree,
                "propagation": [v.to_json() for v in self.propagation]}


def stable_depth(module: VicWindowModule, p: int = DEFAULT_PRIME, propagate: bool = True) -> StableDepth:
    """lcm of the per-level depths of a pointwise finite-type module, with propagation checks past generation."""
    levels = {}
    for n in module.window:
        rep = module.levels[n]
        if rep.dim == 0:
            levels[n] = 1
            continue
        report = classify(rep)
        if report.classification == "mixed" or (report.depth == 1 and not _acts_trivially(module, n)):
            raise PreconditionError(f"level {n} is not of finite type ({report.classification})")
        levels[n] = report.depth
    ell = lcm(*levels.values()) if levels else 1
    gen = generation_degree(module, p) if len(module.window) > 1 else module.n_min
    checks = []
    if propagate:
        for n in module.window:
            if n - 1 >= max(gen, 3) and n + 1 <= module.n_max:
                checks.append(depth_propagation_check(module, n, ell, p))
    return StableDepth(ell, levels, gen, checks)


def _acts_trivially(module, n) -> bool:
    acts = _actions(module)
    return all(acts.act(n, g) == _identity(module.dim(n)) for g in module.generators(n))


def depth_four_control(ell: int = 4) -> VicWindowModule:
    """Negative control: C[P(F_2^3)] → C[P(F_2^4)] → C[P((Z/ℓ)^5)].

    The last map sends a line to the sum of the lines over it whose last
    coordinate reduces to zero; it is equivariant and satisfies the
    complementary conditions but does not generate, so level 5 is free to
    have depth ℓ.
    """
    p3, p4 = PermutationRep.projective(3, 2), PermutationRep.projective(4, 2)
    p5 = PermutationRep.projective(5, ell)
    pad = np.concatenate([p3.space.points, np.zeros((len(p3.space), 1), dtype=np.int64)], axis=1)
    t3 = ExactMatrix.from_dict({(int(t), j): 1 for j, t in enumerate(p4.space.index_of(pad))}, (p4.dim, p3.dim))
    pts = p5.space.points
    entries = {}
    last_even = pts[:, 4] % 2 == 0
    head = pts[:, :4] % 2
    ok = last_even & head.any(axis=1)
    targets = p4.space.index_of(head[ok])
    for row, col in zip(np.flatnonzero(ok), targets):
        entries[(int(row), int(col))] = 1
    t4 = ExactMatrix.from_dict(entries, (p5.dim, p4.dim))
    return VicWindowModule(3, 5, {3: p3, 4: p4, 5: p5}, {3: t3, 4: t4}, f"control(depth {ell})")


def zero_map_module(n_min: int = 3, n_max: int = 5) -> VicWindowModule:
    """C[P(F_2^n)] with every structure map replaced by zero."""
    levels = {n: PermutationRep.projective(n, 2) for n in range(n_min, n_max + 1)}
    maps = {n: ExactMatrix.zeros(levels[n + 1].dim, levels[n].dim) for n in range(n_min, n_max)}
    return VicWindowModule(n_min, n_max, levels, maps, "zero maps")


def torsion_head_module(n_min: int = 3, n_max: int = 6) -> VicWindowModule:
    """Trivial module with an extra trivial summand at n_min that maps to zero."""
    levels, maps = {}, {}
    for n in range(n_min, n_max + 1):
        levels[n] = TrivialRep(n) + TrivialRep(n) if n == n_min else TrivialRep(n)
    maps[n_min] = ExactMatrix.from_rows([[1, 0]])
    for n in range(n_min + 1, n_max):
        maps[n] = ExactMatrix.identity(1)
    return VicWindowModule(n_min, n_max, levels, maps, "trivial with torsion head")


def zero_then_trivial(jump: int = 5, n_min: int = 3, n_max: int = 7) -> VicWindowModule:
    """0 below ``jump``, trivial from ``jump`` on."""
    levels, maps = {}, {}
    for n in range(n_min, n_max + 1):
        levels[n] = TrivialRep(n) if n >= jump else _ZeroRep(n)
    for n in range(n_min, n_max):
        maps[n] = ExactMatrix.zeros(levels[n + 1].dim, levels[n].dim) if n + 1 <= jump else ExactMatrix.identity(1)
    return VicWindowModule(n_min, n_max, levels, maps, f"zero below {jump}")


class _ZeroRep(Representation):
    def __init__(self, n: int):
        self.n, self.dim, self.modulus, self.name = n, 0, 0, "zero"

    def act(self, g) -> ExactMatrix:
        return ExactMatrix.zeros(0, 0)

    def trace(self, g):
        return Fraction(0)


# ---------------------------------------------------------------------------
# SL^U → GL extension


class UnitRestrictedRep(Representation):
    """A representation evaluated only on matrices whose determinant lies in ``units``."""

    def __init__(self, rep: Representation, units, modulus: int):
        self.rep, self.units, self.modulus = rep, {u % modulus for u in units}, modulus
        self.n, self.dim, self.name = rep.n, rep.dim, f"{rep.name}|SL^U"

    def act(self, g) -> ExactMatrix:
        g = np.asarray(g, dtype=np.int64) % self.modulus
        if modular.det_mod(g, self.modulus) not in self.units:
            raise PreconditionError("matrix lies outside SL^U")
        return self.rep.act(g)


def restrict_to_sl_units(module: VicWindowModule, modulus: int, units=(1, -1)) -> VicWindowModule:
    levels = {n: UnitRestrictedRep(module.levels[n], units, modulus) for n in module.window}
    return VicWindowModule(module.n_min, module.n_max, levels, dict(module.maps), f"{module.name}|SL^U",
                           module.signed)


def _left_inverse(t: ExactMatrix) -> ExactMatrix:
    """A left inverse built from pivot rows (t must have independent columns)."""
    _, pivots = t.transpose().rref()
    rows = list(pivots)
    k = t.shape[1]
    inv = t.submatrix(rows, range(k)).inverse()
    sel = ExactMatrix.from_dict({(c, r): 1 for c, r in enumerate(rows)}, (k, t.shape[0]))
    return inv @ sel


def a_hat(a: np.ndarray, modulus: int) -> tuple[np.ndarray, int]:
    """Â (last column divided by det A) and det A, so that A = Â · diag(1, …, 1, det A)."""
    d = modular.det_mod(a, modulus)
    out = np.array(a, dtype=np.int64) % modulus
    out[:, -1] = out[:, -1] * pow(int(d), -1, modulus) % modulus
    return out, int(d)


class ExtendedGLRep(Representation):
    """GL_n(R) on V_n through A ↦ diag(A, det A⁻¹) ∈ SL_{n+1}(R) acting on T_n(V_n) ⊂ V_{n+1}.

    The SL_{n+1} element is factored as diag(Â, 1) · diag(1, …, 1, det A, det A⁻¹)
    and both factors are evaluated with the SL^U action of level n+1.
    """

    def __init__(self, module: VicWindowModule, n: int, modulus: int):
        if n + 1 > module.n_max:
            raise PreconditionError("extension of level n uses level n+1")
        self.module, self.modulus = module, modulus
        self.n, self.dim, self.name = n, module.dim(n), f"GL-extension({module.name})_{n}"
        self.t = module.maps[n]
        self.t_inv = _left_inverse(self.t)

    def ambient(self, a) -> ExactMatrix:
        ah, d = a_hat(np.asarray(a) % self.modulus, self.modulus)
        first = embed_top_left(ah, self.n + 1)
        second = np.eye(self.n + 1, dtype=np.int64)
        second[self.n - 1, self.n - 1] = d
        second[self.n, self.n] = pow(d, -1, self.modulus)
        lev = self.module.levels[self.n + 1]
        return lev.act(first) @ lev.act(second)

    def direct_ambient(self, a) -> ExactMatrix:
        a = np.asarray(a) % self.modulus
        d = modular.det_mod(a, self.modulus)
        g = embed_top_left(a, self.n + 1)
        g[self.n, self.n] = pow(int(d), -1, self.modulus)
        return self.module.levels[self.n + 1].act(g)

    def act(self, g) -> ExactMatrix:
        return self.t_inv @ self.ambient(g) @ self.t

    def preserves_image(self, g) -> bool:
        moved = self.ambient(g) @ self.t
        return self.t @ (self.t_inv @ moved) == moved


@dataclass
class GLExtension:
    modulus: int
    levels: dict
    checks: dict
    comparison: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values()) and all(v for v in self.comparison.values() if v is not None)

    def to_json(self):
        return {"modulus": self.modulus, "levels": sorted(self.levels), "checks": self.checks,
                "comparison": {k: v for k, v in self.comparison.items()}, "ok": self.ok}


def gl_generators_mod(n: int, modulus: int) -> list[np.ndarray]:
    """E_ij together with diag(1, …, 1, u) for each unit u: generators of GL_n(Z/modulus)."""
    gens = [modular.elementary(n, i, j) for i in range(n) for j in range(n) if i != j]
    for u in modular.units(modulus):
        if u != 1:
            gens.append(modular.diagonal_unit(n, n - 1, u) % modulus)
    return gens


def extend_sl_to_gl(module: VicWindowModule, modulus: int, units=(1, -1), natural: VicWindowModule | None = None,
                    seed: int = 0, samples: int = 10, p: int = DEFAULT_PRIME) -> GLExtension:
    """Extend the SL^U actions of levels n_min … n_max−1 to GL_n(Z/modulus).

    Level n_max serves only as the ambient space for level n_max − 1.
    ``natural``, when given, is a GL module on the same vector spaces to compare with.
    """
    restricted = restrict_to_sl_units(module, modulus, units)
    ext = {n: ExtendedGLRep(restricted, n, modulus) for n in module.window[:-1]}
    checks = {}
    unit_gens = [u % modulus for u in units if u % modulus != 1]
    for n, rep in ext.items():
        gens = gl_generators_mod(n, modulus)
        checks[f"injective_{n}"] = module.maps[n].rank() == module.dim(n)
        checks[f"factorization_{n}"] = all(rep.ambient(g) == rep.direct_ambient(g) for g in gens)
        checks[f"preserves_image_{n}"] = all(rep.preserves_image(g) for g in gens)
        sl_gens = [modular.elementary(n, i, j) for i in range(n) for j in range(n) if i != j]
        sl_gens += [modular.diagonal_unit(n, n - 1, u) for u in unit_gens]
        checks[f"restriction_{n}"] = all(rep.act(g) == restricted.levels[n].act(g) for g in sl_gens)
        if n + 1 in ext:
            t = module.maps[n]
            checks[f"equivariant_{n}"] = all(t @ rep.act(g) == ext[n + 1].act(embed_top_left(g, n + 1)) @ t
                                             for g in gens)
            checks[f"complementary_gl1_{n}"] = all(
                ext[n + 1].act(modular.diagonal_unit(n + 1, n, u)) @ t == t for u in modular.units(modulus))
        rng = random.Random(seed * 1000 + n)
        hom = True
        for _ in range(samples):
            a = _random_word(gens, rng, modulus)
            b = _random_word(gens, rng, modulus)
            if not rep.act(a @ b % modulus) == rep.act(a) @ rep.act(b):
                hom = False
                break
        checks[f"homomorphism_{n}"] = hom
    for n in module.window[:-2]:
        verdict = validate_weak_triple(restricted_for_validation(module, modulus, unit_gens), n + 1, p) \
            if n + 2 <= module.n_max - 1 else None
        if verdict is not None:
            checks[f"sl_triple_{n + 1}"] = verdict.strong
    comparison = {}
    if natural is not None:
        for n, rep in ext.items():
            comparison[f"natural_{n}"] = all(rep.act(g) == natural.act(n, g) for g in gl_generators_mod(n, modulus))
    return GLExtension(modulus, ext, checks, comparison)


def restricted_for_validation(module: VicWindowModule, modulus: int, unit_gens) -> VicWindowModule:
    """The same module, validated with SL^U generators (elementary matrices and unit diagonals)."""
    out = VicWindowModule(module.n_min, module.n_max, module.levels, module.maps, module.name, signed=bool(unit_gens))
    return out


def _random_word(gens, rng, modulus, length: int = 6):
    n = gens[0].shape[0]
    out = np.eye(n, dtype=np.int64)
    for _ in range(length):
        out = out @ gens[rng.randrange(len(gens))] % modulus
    return out


def extended_submodule_check(ext: GLExtension, natural_sub: VicWindowModule) -> bool:
    """The extended actions preserve the subspaces of ``natural_sub`` and agree with its action there."""
    for n, rep in ext.levels.items():
        sub = natural_sub.levels[n]
        basis, coords = _Lifted(sub.basis), _Lifted(sub.coords)
        for g in gl_generators_mod(n, ext.modulus):
            moved = _Lifted(rep.act(g)) @ basis
            if not basis @ (coords @ moved) == moved:
                return False
            if not coords @ moved == _Lifted(sub.act(g)):
                return False
    return True


# ---------------------------------------------------------------------------
# filtration


@dataclass
class FiltrationLayer:
    label: Bipartition
    multiplicity: VicWindowModule
    ell: int | None
    dims: dict

    def to_json(self):
        return {"label": self.label.to_json(), "label_text": str(self.label), "multiplicity": self.multiplicity.name,
                "multiplicity_dimensions": {str(n): self.multiplicity.dim(n) for n in self.multiplicity.window},
                "ell": self.ell, "dimensions": {str(n): d for n, d in self.dims.items()}}


@dataclass
class Filtration:
    layers: list
    head_boundary: int
    head_dims: dict
    identity_holds: bool
    generation_degree: int
    injectivity_degree: int

    def to_json(self):
        return {"layers": [l.to_json() for l in self.layers], "head_boundary": self.head_boundary,
                "head_dimensions": {str(n): d for n, d in self.head_dims.items()},
                "dimension_identity": self.identity_holds, "generation_degree": self.generation_degree,
                "injectivity_degree": self.injectivity_degree}


def _algebraic_everywhere(module) -> bool:
    return all(module.dim(n) == 0 or classify(module.levels[n]).classification == "algebraic" for n in module.window)


def _decompose(module: VicWindowModule) -> list:
    if module.decomposition:
        return module.layers()
    if module.labels and all(n in module.labels for n in module.window):
        if not _algebraic_everywhere(module):
            raise DecompositionError("labelled levels must be algebraic")
        labels = sorted({b for n in module.window for b, _ in module.labels[n]}, key=str)
        layers = []
        for b in labels:
            mult = {n: dict(module.labels[n]).get(b, 0) for n in module.window}
            layers.append(Layer(b, _constant_module(module, mult)))
        return layers
    kinds = {classify(module.levels[n]).classification for n in module.window if module.dim(n)}
    if kinds <= {"finite type"} or (kinds == {"algebraic"} and all(_acts_trivially(module, n) for n in module.window)):
        return [Layer(TRIVIAL_LABEL, module)]
    raise DecompositionError(f"cannot split a level of kind {sorted(kinds)} without an explicit decomposition")


def _constant_module(module, mult: dict) -> VicWindowModule:
    levels = {n: _trivial_sum(n, mult[n]) for n in module.window}
    maps = {n: ExactMatrix.from_dict({(i, i): 1 for i in range(min(mult[n], mult[n + 1]))}, (mult[n + 1], mult[n]))
            for n in module.window[:-1]}
    return VicWindowModule(module.n_min, module.n_max, levels, maps, "trivial multiplicity")


def _trivial_sum(n, k):
    if k == 0:
        return _ZeroRep(n)
    rep = TrivialRep(n)
    for _ in range(k - 1):
        rep = rep + TrivialRep(n)
    return rep


def algebraic_isotypic_filtration(module: VicWindowModule, p: int = DEFAULT_PRIME) -> Filtration:
    layers_in = _decompose(module)
    order = containment_refinement([l.label for l in layers_in])
    rank = {b: k for k, b in enumerate(order)}
    layers_in.sort(key=lambda l: rank[l.label])
    gen = generation_degree(module, p) if len(module.window) > 1 else module.n_min
    inj = injectivity_degree(module) if len(module.window) > 1 else module.n_min
    boundary = max(gen, inj)
    layers = []
    for l in layers_in:
        m = l.multiplicity
        dims = {n: weyl_dimension(AlgebraicLabel(l.label, n)) * m.dim(n) for n in module.window}
        try:
            ell = stable_depth(m, p, propagate=False).ell
        except PreconditionError:
            ell = None
        layers.append(FiltrationLayer(l.label, m, ell, dims))
    head, ok = {}, True
    for n in module.window:
        total = sum(l.dims[n] for l in layers)
        head[n] = module.dim(n) - total
        if head[n] < 0 or (n >= boundary and head[n] != 0):
            ok = False
    return Filtration(layers, boundary, head, ok, gen, inj)


# ---------------------------------------------------------------------------
# growth


@dataclass
class GrowthReport:
    kind: str
    dims: dict
    degree: int | str | None = None
    polynomial: list | None = None
    least_c: int | None = None
    stable_depth: int | None = None
    finite_type: bool | None = None
    pointwise_algebraic: bool | None = None
    notes: list = field(default_factory=list)

    def to_json(self):
        return {"kind": self.kind, "dimensions": {str(n): d for n, d in self.dims.items()}, "degree": self.degree,
                "polynomial": self.polynomial, "least_C": self.least_c, "stable_depth": self.stable_depth,
                "finite_type": self.finite_type, "pointwise_algebraic": self.pointwise_algebraic, "notes": self.notes}


def _difference_degree(values):
    """Degree d of the interpolating polynomial if it is at most len − 2, else None."""
    diffs = list(values)
    for d in range(len(values) - 1):
        if all(x == 0 for x in diffs):
            return d - 1
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    if diffs and all(x == 0 for x in diffs):
        return len(values) - 2
    return None


def polynomial_degree(module: VicWindowModule):
    """Polynomial degree via kernels and cokernels of V → SV, −1 for modules vanishing on the window.

    Returns "degree > window budget" when the recursion reaches a window of one level.
    """
    if all(module.dim(n) == 0 for n in module.window):
        return -1
    if len(module.window) < 2:
        return "degree > window budget"
    for n in module.window[:-1]:
        if module.maps[n].rank() != module.dim(n):
            return "degree > window budget"
    sub = polynomial_degree(cokernel_module(module))
    return sub + 1 if isinstance(sub, int) else sub


def _interpolate(ns, values):
    from ..glweights import interpolate

    return interpolate(list(zip(ns, values)))


def growth_classify(module: VicWindowModule, p: int = DEFAULT_PRIME) -> GrowthReport:
    ns = module.window
    dims = {n: module.dim(n) for n in ns}
    vals = [dims[n] for n in ns]
    if vals[-1] == 0:
        return GrowthReport("torsion", dims, degree=-1, notes=["vanishes at the top of the window"])
    d = _difference_degree(vals)
    if d is not None:
        degree = polynomial_degree(module)
        poly = _interpolate(ns[:d + 1], vals[:d + 1])
        notes = []
        if degree != d:
            notes.append(f"dimension polynomial degree {d} and recursion degree {degree} differ")
        alg = _algebraic_everywhere(module)
        if not alg:
            notes.append("dimension is polynomial but some level is not algebraic")
        return GrowthReport("polynomial", dims, degree=degree, polynomial=poly.to_json(), pointwise_algebraic=alg,
                            notes=notes)
    c = 2
    while any(v > c**n for n, v in zip(ns, vals)):
        c += 1
    report = GrowthReport("exponential", dims, degree="degree > window budget", least_c=c)
    try:
        sd = stable_depth(module, p, propagate=False)
        report.stable_depth, report.finite_type = sd.ell, True
    except PreconditionError:
        report.finite_type = False
    return report


# ---------------------------------------------------------------------------
# length bound


def _permutation_length(rep: PermutationRep) -> int | None:
    space = rep.space
    if not isinstance(space, ProjectiveSpace):
        return None
    gens = modular.standard_generators(rep.n, space.ell, "SL±" if space.ell > 2 else "SL")
    norm = space.orbit_count_on_pairs(gens)
    return norm if norm <= 3 else None


def _finite_length(module: VicWindowModule, n: int):
    rep = module.levels[n]
    if rep.dim == 0:
        return 0
    if rep.dim == 1:
        return 1
    if isinstance(rep, PermutationRep):
        k = _permutation_length(rep)
        if k is not None:
            return k
    from ..depth import commutant_dimension

    norm = commutant_dimension(rep, [rep.act(g) for g in module.generators(n)])
    if norm <= 3:
        return norm
    raise DecompositionError(f"commutant of dimension {norm} at level {n} does not determine the length")


def length_bound(module: VicWindowModule) -> dict:
    """Number of irreducible summands per level and its maximum over the window.

    A layer V(λ) ⊗ M contributes the length of M, the tensor of an algebraic
    irreducible with distinct finite-type irreducibles staying irreducible
    and pairwise distinct.
    """
    layers = _decompose(module)
    per_level = {}
    for n in module.window:
        total = 0
        for l in layers:
            m = l.multiplicity
            if m.name == "trivial multiplicity":
                total += m.dim(n)
            else:
                total += _finite_length(m, n)
        per_level[n] = total
    values = list(per_level.values())
    return {"per_level": {str(n): v for n, v in per_level.items()}, "bound": max(values),
            "constant": len(set(values)) == 1}


# ---------------------------------------------------------------------------
# twist against dual on finite groups


def twist_dual_comparison(group, trace_fn) -> dict:
    """Characters of g ↦ ρ(g^{-T}) and of the dual, class by class.

    They agree on every class closed under transposition; classes whose
    transpose lies elsewhere are recorded with both values.
    """
    classes = group.classes
    ell = group.ell
    agree, differ, closed = [], [], []
    for k in range(classes.count):
        g = group.element(int(classes.reps[k]))
        gt = g.T % ell
        transpose_class = group.class_of(gt)
        twisted = trace_fn(integer_inverse(g, ell).T % ell)
        dual = Fraction(trace_fn(integer_inverse(g, ell) % ell))
        if transpose_class == k:
            closed.append(k)
        (agree if twisted == dual else differ).append((k, str(twisted), str(dual)))
    consistent = all(k not in closed for k, _, _ in differ)
    return {"classes": classes.count, "self_transpose_classes": len(closed), "agree": len(agree),
            "differ": [list(x) for x in differ], "consistent": consistent}


# ---------------------------------------------------------------------------
# Noetherianity witness


def generated_submodule(module: VicWindowModule, vector: ExactMatrix, p: int = DEFAULT_PRIME) -> VicWindowModule:
    """Submodule generated by one vector at level n_min, with exact integer spanning vectors."""
    from .module import submodule

    acts = _actions(module)
    bases = {}
    current = vector
    for n in module.window:
        if n > module.n_min:
            current = module.maps[n - 1] @ bases[n - 1]
        lifted = [acts.act(n, g) for g in module.generators(n)]
        span = invariant_closure_mod([m.mod_p(p) for m in lifted], _columns_mod(_Lifted(current), p), p)
        if span.shape[1] == module.dim(n):
            # a full span modulo p is a full span over Q
            bases[n] = ExactMatrix.identity(module.dim(n))
        else:
            bases[n] = _exact_closure([m.as_exact() for m in lifted], current)
    sub = submodule(module, bases, f"⟨v⟩ ⊂ {module.name}")
    for n in module.window:
        if not sub.levels[n].verify_invariant(module.generators(n)):
            raise VerificationError(f"closure at level {n} is not invariant")
    return sub


def noetherian_witness(module: VicWindowModule, seed: int = 0, a_values=(0, 1), p: int = DEFAULT_PRIME) -> dict:
    rng = random.Random(seed)
    d = module.dim(module.n_min)
    vec = ExactMatrix.from_rows([[rng.randint(-3, 3)] for _ in range(d)])
    sub = generated_submodule(module, vec, p)
    gen = generation_degree(sub, p)
    stab = {a: stabilization_degree(covariants_phi(sub, a)) for a in a_values}
    numeric = [s for s in stab.values() if isinstance(s, int)]
    return {"module": module.name, "seed": seed, "dimensions": {str(n): sub.dim(n) for n in sub.window},
            "generation_degree": gen, "stabilization": {str(a): s for a, s in stab.items()},
            "stabilizes": len(numeric) == len(stab), "generation_within": all(gen <= s for s in numeric)}


def shift_generation(module: VicWindowModule, p: int = DEFAULT_PRIME) -> dict:
    """Observed generation degrees of V and SV against the proven bound 2d + 1."""
    d = generation_degree(module, p)
    s = generation_degree(iterated_shift(module, 1), p)
    return {"generation_degree": d, "shift_generation_degree": s, "bound": 2 * d + 1, "within_bound": s <= 2 * d + 1}


__all__ = [
    "Covariants",
    "ExtendedGLRep",
    "Filtration",
    "FiltrationLayer",
    "GLExtension",
    "GrowthReport",
    "PropagationVerdict",
    "StableDepth",
    "TripleVerdict",
    "a_hat",
    "algebraic_isotypic_filtration",
    "covariants_phi",
    "depth_four_control",
    "depth_propagation_check",
    "extend_sl_to_gl",
    "extended_submodule_check",
    "generated_by_image",
    "generated_submodule",
    "generation_degree",
    "growth_classify",
    "injectivity_degree",
    "length_bound",
    "noetherian_witness",
    "phi_shift_identity",
    "polynomial_degree",
    "shift_generation",
    "stabilization_degree",
    "stable_depth",
    "sum_zero_module",
    "torsion_head_module",
    "twist_dual_comparison",
    "validate_weak_triple",
    "zero_map_module",
    "zero_then_trivial",
]
