"""Window truncations of VIC(Z)-modules.

A VIC(Z)-module is modelled on a window [n_min, n_max] as a sequence of
GL_n representations V_n together with maps T_n: V_n -> V_{n+1} that are
equivariant for the top-left inclusion GL_n ⊂ GL_{n+1}.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import PreconditionError, WindowError
from ..glweights import AlgebraicLabel, pieri_restrict, weyl_dimension
from ..groups import modular
from ..linalg import ExactMatrix
from ..partitions import BOX, EMPTY, Bipartition
from ..reps import PermutationRep, QuotientRep, StandardRep, SubRep, TensorRep, TrivialRep, TwistRep

TRIVIAL_LABEL = Bipartition()
STANDARD_LABEL = Bipartition(BOX, EMPTY)


def gl_generators(n: int, signed: bool = True) -> list[np.ndarray]:
    """E_ij (i ≠ j) and, when ``signed``, diag(1, …, 1, −1): generators of GL_n(Z)."""
    gens = [modular.elementary(n, i, j) for i in range(n) for j in range(n) if i != j]
    if signed:
        gens.append(modular.diagonal_unit(n, n - 1, -1))
    return gens


def complementary_generators(n: int, k: int, signed: bool = True) -> list[np.ndarray]:
    """Generators of GL_k(Z) acting on the last k coordinates of Z^n."""
    gens = []
    for i in range(n - k, n):
        for j in range(n - k, n):
            if i != j:
                gens.append(modular.elementary(n, i, j))
    if signed:
        gens.append(modular.diagonal_unit(n, n - 1, -1))
    return gens


def swap_last_two(n: int) -> np.ndarray:
    """Permutation matrix exchanging the last two coordinates of Z^n."""
    g = np.eye(n, dtype=np.int64)
    g[[n - 2, n - 1]] = g[[n - 1, n - 2]]
    return g


@dataclass
class Layer:
    """One algebraic isotypic piece V(λ) ⊗ M of a decomposed module.

    ``multiplicity`` None stands for the module itself (a finite-type module
    is its own multiplicity module for the label (∅, ∅)).
    """

    label: Bipartition
    multiplicity: "VicWindowModule | None" = None


@dataclass
class VicWindowModule:
    n_min: int
    n_max: int
    levels: dict
    maps: dict
    name: str = "module"
    signed: bool = True
    decomposition: list = field(default_factory=list)
    labels: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.n_min < 1 or self.n_max < self.n_min:
            raise WindowError(f"invalid window [{self.n_min}, {self.n_max}]")
        for n in self.window:
            if n not in self.levels:
                raise PreconditionError(f"missing level {n}")
            if self.levels[n].n != n:
                raise PreconditionError(f"level {n} carries a rank {self.levels[n].n} representation")
        for n in self.window[:-1]:
            t = self.maps.get(n)
            if t is None:
                raise PreconditionError(f"missing structure map T_{n}")
            if t.shape != (self.dim(n + 1), self.dim(n)):
                raise PreconditionError(f"T_{n} has shape {t.shape}, expected {(self.dim(n + 1), self.dim(n))}")

    @property
    def window(self) -> list[int]:
        return list(range(self.n_min, self.n_max + 1))

    def dim(self, n: int) -> int:
        return self.levels[n].dim

    def dims(self) -> dict:
        return {n: self.dim(n) for n in self.window}

    def generators(self, n: int) -> list[np.ndarray]:
        return gl_generators(n, self.signed)

    def act(self, n: int, g) -> ExactMatrix:
        return self.levels[n].act(g)

    def layers(self) -> list[Layer]:
        """The recorded decomposition with self-references resolved."""
        return [Layer(l.label, self if l.multiplicity is None else l.multiplicity) for l in self.decomposition]

    def truncate(self, lo: int, hi: int) -> "VicWindowModule":
        if lo < self.n_min or hi > self.n_max or hi < lo:
            raise WindowError(f"[{lo}, {hi}] is not inside [{self.n_min}, {self.n_max}]")
        return VicWindowModule(lo, hi, {n: self.levels[n] for n in range(lo, hi + 1)},
                               {n: self.maps[n] for n in range(lo, hi)}, self.name, self.signed,
                               [Layer(l.label, None if l.multiplicity is None else l.multiplicity.truncate(lo, hi))
                                for l in self.decomposition],
                               {n: v for n, v in self.labels.items() if lo <= n <= hi})

    def composite_map(self, a: int, b: int) -> ExactMatrix:
        """T_{b-1} ∘ … ∘ T_a : V_a → V_b."""
        out = ExactMatrix.identity(self.dim(a))
        for n in range(a, b):
            out = self.maps[n] @ out
        return out

    def summary(self):
        return {"name": self.name, "window": [self.n_min, self.n_max],
                "dimensions": {str(n): d for n, d in self.dims().items()}}


# ---------------------------------------------------------------------------
# canonical modules


def trivial_module(n_min: int = 3, n_max: int = 7, modulus: int = 0) -> VicWindowModule:
    levels = {n: TrivialRep(n, modulus) for n in range(n_min, n_max + 1)}
    maps = {n: ExactMatrix.identity(1) for n in range(n_min, n_max)}
    labels = {n: [(TRIVIAL_LABEL, 1)] for n in levels}
    mod = VicWindowModule(n_min, n_max, levels, maps, "trivial", labels=labels)
    mod.decomposition = [Layer(TRIVIAL_LABEL, _unit_module(n_min, n_max))]
    return mod


def _unit_module(n_min, n_max) -> VicWindowModule:
    levels = {n: TrivialRep(n) for n in range(n_min, n_max + 1)}
    maps = {n: ExactMatrix.identity(1) for n in range(n_min, n_max)}
    return VicWindowModule(n_min, n_max, levels, maps, "trivial")


def _inclusion(n: int) -> ExactMatrix:
    return ExactMatrix.from_dict({(i, i): 1 for i in range(n)}, (n + 1, n))


def standard_module(n_min: int = 3, n_max: int = 7) -> VicWindowModule:
    levels = {n: StandardRep(n) for n in range(n_min, n_max + 1)}
    maps = {n: _inclusion(n) for n in range(n_min, n_max)}
    labels = {n: [(STANDARD_LABEL, 1)] for n in levels}
    mod = VicWindowModule(n_min, n_max, levels, maps, "standard", labels=labels)
    mod.decomposition = [Layer(STANDARD_LABEL, _unit_module(n_min, n_max))]
    return mod


def projective_module(q: int, n_min: int = 3, n_max: int = 7) -> VicWindowModule:
    """n ↦ C[P(F_q^n)], lines mapped to lines through the first n coordinates."""
    levels = {n: PermutationRep.projective(n, q) for n in range(n_min, n_max + 1)}
    maps = {}
    for n in range(n_min, n_max):
        src, dst = levels[n].space, levels[n + 1].space
        padded = np.concatenate([src.points, np.zeros((len(src), 1), dtype=np.int64)], axis=1)
        targets = dst.index_of(padded)
        maps[n] = ExactMatrix.from_dict({(int(t), j): 1 for j, t in enumerate(targets)}, (len(dst), len(src)))
    mod = VicWindowModule(n_min, n_max, levels, maps, f"C[P(F_{q}^n)]")
    mod.decomposition = [Layer(TRIVIAL_LABEL)]
    return mod


def tensor(v: VicWindowModule, w: VicWindowModule) -> VicWindowModule:
    """Levelwise tensor product with Kronecker structure maps."""
    if v.window != w.window:
        raise WindowError("tensor factors must share a window")
    levels = {n: TensorRep(v.levels[n], w.levels[n]) for n in v.window}
    maps = {n: v.maps[n].kron(w.maps[n]) for n in v.window[:-1]}
    mod = VicWindowModule(v.n_min, v.n_max, levels, maps, f"{v.name} ⊗ {w.name}", v.signed and w.signed)
    mod.decomposition = _tensor_decomposition(v, w)
    return mod


def _finite_only(m: VicWindowModule) -> bool:
    return bool(m.decomposition) and all(l.label == TRIVIAL_LABEL for l in m.decomposition)


def _tensor_decomposition(v, w):
    if not v.decomposition or not w.decomposition:
        return []
    if _finite_only(w):
        return [Layer(l.label, _tensor_mult(l.multiplicity, w)) for l in v.layers()]
    if _finite_only(v):
        return [Layer(l.label, _tensor_mult(v, l.multiplicity)) for l in w.layers()]
    return []


def _tensor_mult(a, b):
    if a.name == "trivial" and not a.decomposition:
        return b
    if b.name == "trivial" and not b.decomposition:
        return a
    levels = {n: TensorRep(a.levels[n], b.levels[n]) for n in a.window}
    maps = {n: a.maps[n].kron(b.maps[n]) for n in a.window[:-1]}
    return VicWindowModule(a.n_min, a.n_max, levels, maps, f"{a.name} ⊗ {b.name}")


def direct_sum(v: VicWindowModule, w: VicWindowModule) -> VicWindowModule:
    from ..reps import DirectSumRep

    if v.window != w.window:
        raise WindowError("summands must share a window")
    levels = {n: DirectSumRep([v.levels[n], w.levels[n]]) for n in v.window}
    maps = {n: ExactMatrix.block_diag([v.maps[n], w.maps[n]]) for n in v.window[:-1]}
    mod = VicWindowModule(v.n_min, v.n_max, levels, maps, f"{v.name} ⊕ {w.name}", v.signed and w.signed)
    if v.decomposition and w.decomposition:
        mod.decomposition = v.layers() + w.layers()
    return mod


def submodule(v: VicWindowModule, bases: dict, name: str | None = None) -> VicWindowModule:
    """Submodule with level n spanned by the columns of bases[n] (must be invariant and map-compatible)."""
    levels = {n: bases[n] if isinstance(bases[n], SubRep) else SubRep(v.levels[n], bases[n]) for n in v.window}
    bases = {n: levels[n].basis for n in v.window}
    maps = {}
    for n in v.window[:-1]:
        moved = v.maps[n] @ bases[n]
        maps[n] = levels[n + 1].coords @ moved
        if not bases[n + 1] @ maps[n] == moved:
            raise PreconditionError(f"T_{n} does not map the subspace at level {n} into level {n + 1}")
    return VicWindowModule(v.n_min, v.n_max, levels, maps, name or f"sub({v.name})", v.signed)


def sum_zero_module(v: VicWindowModule) -> VicWindowModule:
    """Sum-zero part of a permutation module."""
    bases = {n: v.levels[n].sum_zero() for n in v.window}
    return submodule(v, bases, f"sum-zero({v.name})")


# ---------------------------------------------------------------------------
# functors


def shift(v: VicWindowModule) -> VicWindowModule:
    """SV_n = V_{n+1} restricted to GL_n; T^S_n = ρ_{n+2}(swap of the last two coordinates) T_{n+1}."""
    if v.n_max - v.n_min < 1:
        raise WindowError("shift needs a window of length at least 2")
    lo, hi = v.n_min, v.n_max - 1
    levels = {n: v.levels[n + 1].restrict(n) for n in range(lo, hi + 1)}
    maps = {n: v.act(n + 2, swap_last_two(n + 2)) @ v.maps[n + 1] for n in range(lo, hi)}
    labels = {}
    for n in range(lo, hi + 1):
        if n + 1 in v.labels:
            labels[n] = _restrict_labels(v.labels[n + 1], n + 1)
    return VicWindowModule(lo, hi, levels, maps, f"S({v.name})", v.signed, [], labels)


def _restrict_labels(labels, rank):
    out = {}
    for b, mult in labels:
        for br in pieri_restrict(AlgebraicLabel(b, rank)):
            key = br.label.bipartition
            out[key] = out.get(key, 0) + mult * br.multiplicity
    return sorted(out.items(), key=lambda kv: (kv[0].size, str(kv[0])))


def iterated_shift(v: VicWindowModule, a: int) -> VicWindowModule:
    for _ in range(a):
        v = shift(v)
    return v


def inverse_transpose_twist(v: VicWindowModule) -> VicWindowModule:
    """g ↦ ρ(g^{-T}) at every level; the structure maps are unchanged."""
    levels = {n: (v.levels[n].rep if isinstance(v.levels[n], TwistRep) else TwistRep(v.levels[n])) for n in v.window}
    labels = {n: [(b.dual(), m) for b, m in ls] for n, ls in v.labels.items()}
    mod = VicWindowModule(v.n_min, v.n_max, levels, dict(v.maps), _twist_name(v.name), v.signed, [], labels)
    mod.decomposition = [Layer(l.label.dual(), None if l.multiplicity is None else inverse_transpose_twist(l.multiplicity))
                         for l in v.decomposition]
    return mod


def _twist_name(name: str) -> str:
    if name.startswith("twist(") and name.endswith(")"):
        return name[6:-1]
    return f"twist({name})"


def cokernel_module(v: VicWindowModule) -> VicWindowModule:
    """Levels V_{n+1} / T_n V_n as GL_n-representations, with maps induced by the shift."""
    s = shift(v)
    levels, maps = {}, {}
    for n in s.window:
        levels[n] = QuotientRep(s.levels[n], v.maps[n].column_space() if v.maps[n].rank() else
                                ExactMatrix.zeros(v.dim(n + 1), 0))
    for n in s.window[:-1]:
        maps[n] = levels[n + 1].projection @ s.maps[n] @ levels[n].complement
    return VicWindowModule(s.n_min, s.n_max, levels, maps, f"coker({v.name})", v.signed)


def level_label_dimension(v: VicWindowModule, n: int) -> int | None:
    """Σ weyl_dimension · multiplicity of the recorded labels at level n."""
    if n not in v.labels:
        return None
    return sum(weyl_dimension(AlgebraicLabel(b, n)) * m for b, m in v.labels[n])


__all__ = [
    "Layer",
    "VicWindowModule",
    "cokernel_module",
    "complementary_generators",
    "direct_sum",
    "gl_generators",
    "inverse_transpose_twist",
    "iterated_shift",
    "projective_module",
    "shift",
    "standard_module",
    "submodule",
    "sum_zero_module",
    "tensor",
    "trivial_module",
]
