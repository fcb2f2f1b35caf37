"""Depth of representations of SL_n(Z) given by elementary-generator images.

The depth is read off from ρ(E), E = E_12: every eigenvalue of ρ(E) is a
root of unity, and the depth is the lcm of their orders.  Equivalently it is
the least ℓ for which ρ(E)^ℓ is unipotent.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

import numpy as np

from .errors import PreconditionError, RankTooSmallError, RelationError
from .groups.bounds import depth_dim_lower_bound
from .groups.modular import elementary
from .linalg import ExactMatrix, char_poly, cyclotomic_orders, fixed_space, is_unipotent
from .linalg.polys import DEFAULT_CYCLOTOMIC_CAP, cyclotomic_polynomial, divisors, prime_factors
from .reps import GeneratorImageRep, Representation


def _key(i: int, j: int) -> str:
    return f"{i + 1},{j + 1}"


class IntegralRep(GeneratorImageRep):
    """SL_n(Z)-representation (n ≥ 3) presented by the images of all E_ij.

    Construction checks the elementary relations: [E_ij, E_jk] = E_ik for
    distinct i, j, k, commuting pairs commute, and (E_12 E_21^{-1} E_12)^4 = 1.
    """

    def __init__(self, n: int, images: dict, diagonal: dict | None = None, name: str = "integral",
                 check: bool = True):
        if n < 3:
            raise RankTooSmallError(f"depth theory needs n >= 3, got n={n}")
        super().__init__(n, images, diagonal, 0, name)
        dims = {m.shape for m in self.images.values()}
        if len(dims) != 1 or any(a != b for a, b in dims):
            raise PreconditionError("all generator images must be square of one size")
        if check:
            self.check_relations()

    @classmethod
    def from_rep(cls, rep: Representation, name: str | None = None, check: bool = True) -> "IntegralRep":
        n = rep.n
        imgs = {(i, j): rep.act(elementary(n, i, j)) for i in range(n) for j in range(n) if i != j}
        return cls(n, imgs, None, name or rep.name, check)

    def check_relations(self) -> None:
        n, img = self.n, self.images
        for m in img.values():
            if m.rank() != m.shape[0]:
                raise RelationError("a generator image is not invertible")
        for i, j, k in permutations(range(n), 3):
            lhs = img[(i, j)] @ img[(j, k)]
            rhs = img[(i, k)] @ img[(j, k)] @ img[(i, j)]
            if not lhs == rhs:
                raise RelationError(f"[E_{_key(i, j)}, E_{_key(j, k)}] != E_{_key(i, k)}")
        keys = sorted(img)
        for a in keys:
            for b in keys:
                if a < b and a[1] != b[0] and a[0] != b[1]:
                    if not img[a] @ img[b] == img[b] @ img[a]:
                        raise RelationError(f"E_{_key(*a)} and E_{_key(*b)} do not commute")
        w = img[(0, 1)] @ img[(1, 0)].inverse() @ img[(0, 1)]
        if not (w**4).is_identity():
            raise RelationError("(E_12 E_21^{-1} E_12)^4 is not the identity")

    def dual(self) -> "IntegralRep":
        imgs = {k: m.inverse().transpose() for k, m in self.images.items()}
        return IntegralRep(self.n, imgs, None, f"dual({self.name})", check=False)

    def tensor(self, other) -> "IntegralRep":
        other = as_integral(other)
        imgs = {k: m.kron(other.images[k]) for k, m in self.images.items()}
        return IntegralRep(self.n, imgs, None, f"{self.name} ⊗ {other.name}", check=False)

    def direct_sum(self, other) -> "IntegralRep":
        other = as_integral(other)
        imgs = {k: ExactMatrix.block_diag([m, other.images[k]]) for k, m in self.images.items()}
        return IntegralRep(self.n, imgs, None, f"{self.name} ⊕ {other.name}", check=False)

    def to_json(self):
        return {
            "n": self.n,
            "dimension": self.dim,
            "name": self.name,
            "images": {_key(i, j): self.images[(i, j)].to_json() for (i, j) in sorted(self.images)},
        }

    @classmethod
    def from_json(cls, data, check: bool = True) -> "IntegralRep":
        n = int(data["n"])
        imgs = {}
        for key, rows in data["images"].items():
            i, j = (int(x) - 1 for x in key.split(","))
            imgs[(i, j)] = ExactMatrix.from_json(rows)
        rep = cls(n, imgs, None, data.get("name", "integral"), check)
        if "dimension" in data and int(data["dimension"]) != rep.dim:
            raise PreconditionError("declared dimension does not match the generator images")
        return rep

    @classmethod
    def load(cls, path, check: bool = True) -> "IntegralRep":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh), check)


def as_integral(rep) -> IntegralRep:
    if isinstance(rep, IntegralRep):
        return rep
    return IntegralRep.from_rep(rep)


class CharacterPullback:
    """Pullback to SL_n(Z) of an irreducible character of SL_n(Z/ℓ), seen through ρ(E).

    Only the image of E_12 is realised: it is the rational canonical form with
    one companion block of Φ_d per primitive d-th root of unity class in the
    spectrum of E.  This is legitimate because E is conjugate to its own
    powers E^u (u a unit) in SL_n(Z/ℓ), so the spectrum is Galois-stable.
    """

    def __init__(self, character, name: str | None = None):
        st = character.structure
        self.character = character
        self.n = st.n
        self.modulus = st.ell
        self.dim = character.degree
        self.name = name or character.label
        k = st.class_of(elementary(st.n, 0, 1, st.ell))
        spectrum = character.spectra[k]
        o = st.orders[k]
        blocks = []
        self.eigenvalue_orders = []
        for d in divisors(o):
            exps = [s for s in range(o) if o // np.gcd(s, o) == d]
            mults = {spectrum[s] for s in exps}
            if len(mults) != 1:
                raise PreconditionError("spectrum of E is not Galois-stable")
            mult = mults.pop()
            if mult:
                self.eigenvalue_orders.append((d, mult))
                block = ExactMatrix.companion(list(cyclotomic_polynomial(d)))
                blocks.extend([block] * mult)
        self._e = ExactMatrix.block_diag(blocks)

    def elementary_image(self, i: int = 0, j: int = 1, power: int = 1) -> ExactMatrix:
        if (i, j) != (0, 1):
            raise PreconditionError("only the image of E_12 is realised for a character pullback")
        return self._e**power


def _upper_images(rep):
    images = getattr(rep, "images", None)
    if isinstance(images, dict) and images:
        return [images[k] for k in sorted(images) if k[0] < k[1]]
    return [rep.elementary_image()]


@dataclass
class DepthReport:
    depth: int
    p_depths: dict
    classification: str
    dimension: int
    dim_fin: int | None = None
    dim_alg: Fraction | None = None
    eigenvalue_orders: list = field(default_factory=list)

    def to_json(self):
        return {
            "depth": self.depth,
            "p_depths": {str(p): k for p, k in sorted(self.p_depths.items())},
            "classification": self.classification,
            "dimension": self.dimension,
            "dim_fin": self.dim_fin,
            "dim_alg": None if self.dim_alg is None else str(self.dim_alg),
            "eigenvalue_orders": [[d, m] for d, m in self.eigenvalue_orders],
        }


def eigenvalue_orders(rep, cap: int = DEFAULT_CYCLOTOMIC_CAP):
    """(order, multiplicity) of the root-of-unity factors of the char poly of ρ(E)."""
    fac = cyclotomic_orders(char_poly(rep.elementary_image()), cap=cap, require_roots_of_unity=True)
    return list(fac.orders)


def depth_value(rep, cap: int = DEFAULT_CYCLOTOMIC_CAP) -> int:
    out = 1
    for d, _ in eigenvalue_orders(rep, cap):
        out = np.lcm(out, d)
    return int(out)


def depth_divides(rep, ell: int) -> bool:
    """ρ(E)^ℓ is unipotent."""
    if ell < 1:
        raise PreconditionError("ℓ must be positive")
    return is_unipotent(rep.elementary_image() ** ell)


def p_depth(rep, p: int, cap: int = DEFAULT_CYCLOTOMIC_CAP) -> int:
    if p < 2 or len(prime_factors(p)) != 1 or prime_factors(p).get(p) != 1:
        raise PreconditionError(f"{p} is not prime")
    return prime_factors(depth_value(rep, cap)).get(p, 0)


def minimal_unipotent_level(rep, limit: int) -> int | None:
    """Least ℓ ≤ limit with depth_divides(rep, ℓ)."""
    for ell in range(1, limit + 1):
        if depth_divides(rep, ell):
            return ell
    return None


def finite_part_dimension(rep, ell: int | None = None):
    """Dimension and basis of the common fixed space of ρ(E_ij)^ℓ, i < j."""
    if ell is None:
        ell = depth_value(rep)
    ms = [m**ell for m in _upper_images(rep)]
    basis = fixed_space(ms, rep.dim)
    return basis.shape[1], basis


def classify(rep, cap: int = DEFAULT_CYCLOTOMIC_CAP, irreducible: bool | None = None) -> DepthReport:
    """Depth, its prime decomposition, and algebraic / finite type / mixed."""
    orders = eigenvalue_orders(rep, cap)
    ell = 1
    for d, _ in orders:
        ell = int(np.lcm(ell, d))
    e = rep.elementary_image()
    if ell == 1:
        kind = "algebraic"
    elif (e**ell).is_identity():
        # eigenvalues are ℓ-th roots of unity, so ρ(E)^ℓ = I exactly when ρ(E) is semisimple
        kind = "finite type"
    else:
        kind = "mixed"
    dim_fin, _ = finite_part_dimension(rep, ell)
    dim_alg = None
    if irreducible is not False and dim_fin and rep.dim % dim_fin == 0:
        dim_alg = Fraction(rep.dim, dim_fin)
    return DepthReport(ell, prime_factors(ell), kind, rep.dim, dim_fin, dim_alg, orders)


def depth(rep, cap: int = DEFAULT_CYCLOTOMIC_CAP) -> DepthReport:
    return classify(rep, cap)


@dataclass
class GammaUVerdict:
    ell: int
    passed: bool
    samples: int
    exact: bool
    witness: object = None

    def to_json(self):
        w = self.witness
        if isinstance(w, np.ndarray):
            w = w.tolist()
        return {"ell": self.ell, "passed": self.passed, "samples": self.samples,
                "elementary_criterion": self.exact, "witness": w}


def gamma_u_check(rep, ell: int, samples: int = 100, seed: int = 0, max_word: int = 4) -> GammaUVerdict:
    """Sampled test that ΓU_n(ℓ) acts unipotently, alongside the exact E^ℓ criterion.

    Samples are random words in {E_ij^ℓ : i < j} and, when the representation
    can act on arbitrary matrices, random upper unitriangular integer
    matrices with off-diagonal entries divisible by ℓ.
    """
    if samples < 1:
        raise PreconditionError("samples must be at least 1")
    rng = random.Random(seed)
    exact = depth_divides(rep, ell)
    images = getattr(rep, "images", None)
    if isinstance(images, dict) and images:
        gens = {k: m**ell for k, m in images.items() if k[0] < k[1]}
    else:
        gens = {(0, 1): rep.elementary_image() ** ell}
    keys = sorted(gens)
    can_act = hasattr(rep, "act") and isinstance(images, dict)
    for s in range(samples):
        if can_act and s % 2 == 1:
            g = np.eye(rep.n, dtype=np.int64)
            for i in range(rep.n):
                for j in range(i + 1, rep.n):
                    g[i, j] = ell * rng.randint(-2, 2)
            m = rep.act(g)
            if not is_unipotent(m):
                return GammaUVerdict(ell, False, s + 1, exact, g)
            continue
        word = [rng.choice(keys) for _ in range(rng.randint(1, max_word))]
        m = ExactMatrix.identity(rep.dim)
        for k in word:
            m = m @ gens[k]
        if not is_unipotent(m):
            label = [f"E_{_key(*k)}^{ell}" for k in word]
            return GammaUVerdict(ell, False, s + 1, exact, label)
    return GammaUVerdict(ell, True, samples, exact)


def commutant_dimension(rep, matrices=None) -> int:
    """dim of {X : M X = X M for all generator images M} (Schur check; 1 for irreducibles)."""
    ms = list(matrices) if matrices is not None else list(getattr(rep, "images", {}).values())
    ops = [m.kron(m.inverse().transpose()) for m in ms]
    return fixed_space(ops, rep.dim * rep.dim).shape[1]


@dataclass
class GrowthDichotomyReport:
    status: str
    consistent: bool
    violations: list
    growth: str
    crossover: int | None

    def to_json(self):
        return {"status": self.status, "consistent": self.consistent,
                "violations": [{"n": n, "dim": d, "depth": l, "bound": str(b)} for n, d, l, b in self.violations],
                "growth": self.growth, "crossover": self.crossover}


def _is_polynomial(values) -> bool:
    diffs = list(values)
    for _ in range(max(0, len(diffs) - 2)):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        if all(x == 0 for x in diffs):
            return True
    return False


def check_growth_dichotomy(dims, depths, ns=None) -> GrowthDichotomyReport:
    """Check dim_n ≥ depth_dim_lower_bound(ℓ_n, n) and the polynomial ⇒ algebraic implication."""
    dims, depths = list(dims), list(depths)
    if len(dims) != len(depths):
        raise PreconditionError("dimension and depth sequences must be aligned")
    ns = list(ns) if ns is not None else list(range(1, len(dims) + 1))
    violations = []
    for n, d, ell in zip(ns, dims, depths):
        if ell > 1 and n >= 2:
            b = depth_dim_lower_bound(ell, n).bound
            if d < b:
                violations.append((n, d, ell, b))
    growth = "polynomial" if _is_polynomial(dims) else "exponential"
    crossover = next((n for n, d in zip(ns, dims) if n >= 2 and depth_dim_lower_bound(2, n).bound > d), None)
    if violations:
        status = "inconsistent"
    elif growth == "polynomial":
        late = [ell for n, ell in zip(ns, depths) if crossover is not None and n >= crossover]
        status = ("eventually algebraic consistent" if all(ell == 1 for ell in late)
                  else "inconsistent")
    else:
        status = "consistent bounded depth" if len(set(depths[len(depths) // 2:])) <= 1 else "consistent"
    return GrowthDichotomyReport(status, not violations and status != "inconsistent", violations, growth, crossover)
