"""Representations of GL_n(Z), SL_n(Z) and their finite quotients.

A representation here is anything with ``n``, ``dim`` and ``act(g)``, which
returns the exact matrix of an integer matrix g.  Reps that factor through
Z/ℓ record ℓ in ``modulus`` and accept g modulo ℓ.  Constructions (dual,
twist, tensor, sums, sub- and quotient representations) are functional, so
nothing beyond what is asked for is ever materialised.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

import numpy as np

from .errors import PreconditionError, VerificationError
from .groups import modular
from .linalg import ExactMatrix


def as_int_matrix(g) -> np.ndarray:
    if isinstance(g, ExactMatrix):
        rows = g.to_rows()
        if any(x.denominator != 1 for r in rows for x in r):
            raise PreconditionError("group element must be an integer matrix")
        return np.array([[int(x) for x in r] for r in rows], dtype=np.int64)
    return np.asarray(g, dtype=np.int64)


def integer_inverse(g, modulus: int = 0) -> np.ndarray:
    """Inverse over Z (det ±1) or over Z/modulus."""
    g = as_int_matrix(g)
    if modulus:
        return modular.inverse_mod(g % modulus, modulus)
    from sympy import Matrix

    inv = Matrix(g.tolist()).inv()
    if any(x.q != 1 for x in inv):
        raise PreconditionError("matrix is not invertible over Z")
    return np.array(inv.tolist(), dtype=np.int64)


def inverse_transpose(g, modulus: int = 0) -> np.ndarray:
    return integer_inverse(g, modulus).T.copy()


def block_diag_int(*blocks) -> np.ndarray:
    size = sum(b.shape[0] for b in blocks)
    out = np.zeros((size, size), dtype=np.int64)
    k = 0
    for b in blocks:
        out[k:k + b.shape[0], k:k + b.shape[0]] = b
        k += b.shape[0]
    return out


def embed_top_left(g, m: int) -> np.ndarray:
    """diag(g, I_{m-n})."""
    g = as_int_matrix(g)
    return block_diag_int(g, np.eye(m - g.shape[0], dtype=np.int64))


# ---------------------------------------------------------------------------
# factorisation into elementary and diagonal matrices


def elementary_factorization(g, modulus: int = 0):
    """Write g ∈ GL_n(Z) or GL_n(Z/m) as a product of generators.

    Returns a list of factors ("E", i, j, k) for E_ij^k and at most one
    trailing ("D", n-1, u) for diag(1, ..., 1, u), whose ordered product is g.
    Row reduction uses the Euclidean algorithm column by column; the unit
    diagonal left at the end is pushed into the last entry with Whitehead
    products E_ij(a) E_ji(-1/a) E_ij(a).
    """
    a = [[int(x) for x in row] for row in as_int_matrix(g)]
    n = len(a)
    m = modulus

    def red(x):
        return x % m if m else x

    a = [[red(x) for x in row] for row in a]
    ops = []

    def add_row(r, s, k):
        # row r += k * row s, i.e. left multiplication by E_rs(k)
        k = red(k)
        if k == 0:
            return
        for c in range(n):
            a[r][c] = red(a[r][c] + k * a[s][c])
        ops.append((r, s, k))

    def inv(x):
        if m:
            return pow(x, -1, m)
        if x not in (1, -1):
            raise PreconditionError("matrix is not invertible over Z")
        return x

    for c in range(n):
        while True:
            rows = [r for r in range(c, n) if a[r][c] != 0]
            if not rows:
                raise PreconditionError("matrix is singular")
            p = min(rows, key=lambda r: (abs(a[r][c]), r))
            if len(rows) == 1:
                if p != c:
                    add_row(c, p, 1)
                    continue
                break
            for r in rows:
                if r != p:
                    add_row(r, p, -(a[r][c] // a[p][c]))
        if m and gcd(a[c][c], m) != 1:
            raise PreconditionError("matrix is not invertible modulo the given modulus")
    for c in range(n - 1, -1, -1):
        ic = inv(a[c][c])
        for r in range(c):
            add_row(r, c, -a[r][c] * ic)
    for i in range(n - 1):
        u = a[i][i]
        if u == 1:
            continue
        # left-multiply by diag(u^{-1}, u) on rows i, i+1 = w(u^{-1}) w(-1)
        ui = inv(u)
        for (r, s, k) in [(i, i + 1, -1), (i + 1, i, 1), (i, i + 1, -1),
                          (i, i + 1, ui), (i + 1, i, -inv(ui)), (i, i + 1, ui)]:
            add_row(r, s, k)
    for i in range(n):
        for j in range(n):
            expect = (1 if i == j else 0) if i < n - 1 or j < n - 1 else a[n - 1][n - 1]
            if a[i][j] != expect:
                raise AssertionError("elementary reduction did not reach a diagonal matrix")
    factors = [("E", r, s, red(-k)) for (r, s, k) in ops]
    if a[n - 1][n - 1] != 1:
        factors.append(("D", n - 1, a[n - 1][n - 1]))
    return factors


def factors_product(factors, n: int, modulus: int = 0) -> np.ndarray:
    out = np.eye(n, dtype=object)
    for f in factors:
        if f[0] == "E":
            m = np.eye(n, dtype=object)
            m[f[1], f[2]] = f[3]
        else:
            m = np.eye(n, dtype=object)
            m[f[1], f[1]] = f[2]
        out = out.dot(m)
        if modulus:
            out = out % modulus
    return out.astype(np.int64)


# ---------------------------------------------------------------------------
# representation classes


class Representation:
    """Base class; subclasses implement act()."""

    n: int
    dim: int
    modulus: int = 0
    name: str = "rep"

    def act(self, g) -> ExactMatrix:
        raise NotImplementedError

    def _reduce(self, g) -> np.ndarray:
        g = as_int_matrix(g)
        if g.shape != (self.n, self.n):
            raise PreconditionError(f"expected a {self.n}x{self.n} matrix, got shape {g.shape}")
        return g % self.modulus if self.modulus else g

    def trace(self, g) -> Fraction:
        return self.act(g).trace()

    def elementary_image(self, i: int = 0, j: int = 1, power: int = 1) -> ExactMatrix:
        return self.act(modular.elementary(self.n, i, j, 0, power))

    def character(self, structure):
        """Character on the classes of a finite quotient SL_n(Z/ℓ)."""
        from .groups.characters import character_from_traces

        return character_from_traces(structure, lambda g: int(self.trace(g)), self.name)

    # constructions

    def dual(self) -> "Representation":
        return DualRep(self)

    def twist(self) -> "Representation":
        return TwistRep(self)

    def tensor(self, other: "Representation") -> "Representation":
        return TensorRep(self, other)

    def __add__(self, other: "Representation") -> "Representation":
        return DirectSumRep([self, other])

    def restrict(self, m: int) -> "Representation":
        """Restriction to GL_m embedded in the top-left corner."""
        return RestrictedRep(self, m)

    def __repr__(self):
        return f"{type(self).__name__}({self.name}, n={self.n}, dim={self.dim})"


class TrivialRep(Representation):
    def __init__(self, n: int, modulus: int = 0):
        self.n, self.dim, self.modulus, self.name = n, 1, modulus, "trivial"

    def act(self, g) -> ExactMatrix:
        self._reduce(g)
        return ExactMatrix.identity(1)

    def trace(self, g):
        return Fraction(1)


class DeterminantRep(Representation):
    """g ↦ det(g), a one-dimensional rep of GL_n(Z) (values ±1)."""

    def __init__(self, n: int):
        self.n, self.dim, self.name = n, 1, "det"

    def act(self, g) -> ExactMatrix:
        from sympy import Matrix

        return ExactMatrix.from_rows([[int(Matrix(self._reduce(g).tolist()).det())]])


class StandardRep(Representation):
    """The defining representation on Q^n."""

    def __init__(self, n: int):
        self.n, self.dim, self.name = n, n, "standard"

    def act(self, g) -> ExactMatrix:
        return ExactMatrix.from_rows(self._reduce(g).tolist())

    def trace(self, g):
        return Fraction(int(np.trace(self._reduce(g))))


class PermutationRep(Representation):
    """Linear span of a finite set permuted by the group through a point action."""

    def __init__(self, n: int, modulus: int, space, name: str = "permutation"):
        self.n, self.modulus, self.space, self.name = n, modulus, space, name
        self.dim = len(space)

    @classmethod
    def projective(cls, n: int, ell: int) -> "PermutationRep":
        from .groups.projective import projective_space

        return cls(n, ell, projective_space(n, ell), f"C[P((Z/{ell})^{n})]")

    def images(self, g) -> np.ndarray:
        return self.space.action(self._reduce(g))

    def act(self, g) -> ExactMatrix:
        return ExactMatrix.permutation([int(x) for x in self.images(g)])

    def trace(self, g):
        img = self.images(g)
        return Fraction(int((img == np.arange(img.shape[0])).sum()))

    def sum_zero(self) -> "SubRep":
        """Functions with total sum zero, basis e_i − e_last."""
        d = self.dim
        entries = {}
        for i in range(d - 1):
            entries[(i, i)] = 1
            entries[(d - 1, i)] = -1
        basis = ExactMatrix.from_dict(entries, (d, d - 1))
        coords = ExactMatrix.from_dict({(i, i): 1 for i in range(d - 1)}, (d - 1, d))
        return SubRep(self, basis, name=f"sum-zero({self.name})", coords=coords)

    def constants(self) -> "SubRep":
        return SubRep(self, ExactMatrix.from_dict({(i, 0): 1 for i in range(self.dim)}, (self.dim, 1)),
                      name=f"constants({self.name})")


def _pivot_rows(basis: ExactMatrix) -> list[int]:
    _, pivots = basis.transpose().rref()
    return list(pivots)


class SubRep(Representation):
    """Invariant subspace spanned by the columns of ``basis``."""

    def __init__(self, parent: Representation, basis: ExactMatrix, name: str | None = None,
                 coords: ExactMatrix | None = None):
        self.parent = parent
        self.n, self.modulus = parent.n, parent.modulus
        self.basis = basis
        self.dim = basis.shape[1]
        self.name = name or f"sub({parent.name})"
        if coords is not None:
            # a known left inverse also certifies that the columns are independent
            if not coords @ basis == ExactMatrix.identity(self.dim):
                raise PreconditionError("coordinate map is not a left inverse of the basis")
            self.coords = coords
            return
        if basis.rank() != basis.shape[1]:
            raise PreconditionError("subspace basis must have independent columns")
        rows = _pivot_rows(basis)
        inv = basis.submatrix(rows, range(self.dim)).inverse() if self.dim else ExactMatrix.zeros(0, 0)
        sel = ExactMatrix.from_dict({(k, r): 1 for k, r in enumerate(rows)}, (self.dim, parent.dim))
        self.coords = inv @ sel if self.dim else ExactMatrix.zeros(0, parent.dim)

    def act(self, g) -> ExactMatrix:
        if self.dim == 0:
            return ExactMatrix.zeros(0, 0)
        moved = self.parent.act(g) @ self.basis
        out = self.coords @ moved
        return out

    def verify_invariant(self, generators) -> bool:
        for g in generators:
            moved = self.parent.act(g) @ self.basis
            if not (self.basis @ (self.coords @ moved)) == moved:
                return False
        return True


class QuotientRep(Representation):
    """V / W for an invariant subspace W given by basis columns."""

    def __init__(self, parent: Representation, sub_basis: ExactMatrix, name: str | None = None):
        self.parent = parent
        self.n, self.modulus = parent.n, parent.modulus
        d = parent.dim
        if sub_basis.shape[1]:
            sub_basis = sub_basis.column_space()
            pivots = _pivot_rows(sub_basis)
        else:
            pivots = []
        comp = [i for i in range(d) if i not in pivots]
        self.complement = ExactMatrix.from_dict({(i, k): 1 for k, i in enumerate(comp)}, (d, len(comp)))
        full = ExactMatrix.hstack([sub_basis, self.complement]) if sub_basis.shape[1] else self.complement
        inv = full.inverse()
        k = sub_basis.shape[1]
        self.projection = inv.submatrix(range(k, d), range(d))
        self.dim = len(comp)
        self.name = name or f"quotient({parent.name})"

    def act(self, g) -> ExactMatrix:
        return self.projection @ self.parent.act(g) @ self.complement


class DualRep(Representation):
    def __init__(self, rep: Representation):
        self.rep = rep
        self.n, self.dim, self.modulus = rep.n, rep.dim, rep.modulus
        self.name = f"dual({rep.name})"

    def act(self, g) -> ExactMatrix:
        m = self.rep.act(g)
        if m.is_permutation():
            return m
        return m.inverse().transpose()


class TwistRep(Representation):
    """g ↦ ρ(g^{-T})."""

    def __init__(self, rep: Representation):
        self.rep = rep
        self.n, self.dim, self.modulus = rep.n, rep.dim, rep.modulus
        self.name = f"twist({rep.name})"

    def act(self, g) -> ExactMatrix:
        return self.rep.act(inverse_transpose(self._reduce(g), self.modulus))


class TensorRep(Representation):
    def __init__(self, a: Representation, b: Representation):
        if a.n != b.n:
            raise PreconditionError("tensor factors must have the same rank")
        self.a, self.b = a, b
        self.n, self.dim = a.n, a.dim * b.dim
        self.modulus = lcm(a.modulus, b.modulus) if a.modulus and b.modulus else 0
        self.name = f"{a.name} ⊗ {b.name}"

    def act(self, g) -> ExactMatrix:
        g = as_int_matrix(g)
        return self.a.act(g).kron(self.b.act(g))

    def trace(self, g):
        g = as_int_matrix(g)
        return self.a.trace(g) * self.b.trace(g)


class DirectSumRep(Representation):
    def __init__(self, reps):
        reps = list(reps)
        if len({r.n for r in reps}) != 1:
            raise PreconditionError("summands must have the same rank")
        self.reps = reps
        self.n = reps[0].n
        self.dim = sum(r.dim for r in reps)
        mods = [r.modulus for r in reps]
        self.modulus = lcm(*mods) if all(mods) else 0
        self.name = " ⊕ ".join(r.name for r in reps)

    def act(self, g) -> ExactMatrix:
        g = as_int_matrix(g)
        return ExactMatrix.block_diag([r.act(g) for r in self.reps])

    def trace(self, g):
        g = as_int_matrix(g)
        return sum((r.trace(g) for r in self.reps), Fraction(0))


class RestrictedRep(Representation):
    """Restriction of a rank-N rep to GL_m ⊂ GL_N in the top-left corner."""

    def __init__(self, rep: Representation, m: int):
        if m > rep.n:
            raise PreconditionError("cannot restrict to a larger rank")
        self.rep = rep
        self.n, self.dim, self.modulus = m, rep.dim, rep.modulus
        self.name = f"res^{rep.n}_{m}({rep.name})"

    def act(self, g) -> ExactMatrix:
        return self.rep.act(embed_top_left(self._reduce(g), self.rep.n))

    def trace(self, g):
        return self.rep.trace(embed_top_left(self._reduce(g), self.rep.n))


class GeneratorImageRep(Representation):
    """A representation given by images of E_ij (and optionally diag(1,…,1,u)).

    ``act`` factors its argument with elementary_factorization; the caller is
    responsible for the images satisfying the group relations.
    """

    def __init__(self, n: int, elementary: dict, diagonal: dict | None = None, modulus: int = 0,
                 name: str = "generators"):
        self.n, self.modulus, self.name = n, modulus, name
        self.images = {tuple(k): v for k, v in elementary.items()}
        missing = [(i, j) for i in range(n) for j in range(n) if i != j and (i, j) not in self.images]
        if missing:
            raise PreconditionError(f"missing elementary images {missing}")
        self.diagonal = dict(diagonal or {})
        self.dim = next(iter(self.images.values())).shape[0]
        self._inverses = {}

    @classmethod
    def from_rep(cls, rep: Representation, include_sign: bool = True) -> "GeneratorImageRep":
        n = rep.n
        imgs = {(i, j): rep.act(modular.elementary(n, i, j)) for i in range(n) for j in range(n) if i != j}
        diag = {}
        if include_sign:
            try:
                diag[-1 % rep.modulus if rep.modulus else -1] = rep.act(modular.diagonal_unit(n, n - 1, -1))
            except PreconditionError:
                pass
        return cls(n, imgs, diag, rep.modulus, name=rep.name)

    def _power(self, key, k: int) -> ExactMatrix:
        m = self.images[key]
        if k >= 0:
            return m**k
        if key not in self._inverses:
            self._inverses[key] = m.inverse()
        return self._inverses[key] ** (-k)

    def act(self, g) -> ExactMatrix:
        out = ExactMatrix.identity(self.dim)
        for f in elementary_factorization(self._reduce(g), self.modulus):
            if f[0] == "E":
                out = out @ self._power((f[1], f[2]), f[3])
            else:
                u = f[2] % self.modulus if self.modulus else f[2]
                if u not in self.diagonal:
                    raise PreconditionError(f"no image for diag(1, …, 1, {u}); not in the acting group")
                out = out @ self.diagonal[u]
        return out


class FiniteRep(Representation):
    """Representation of an enumerated group from images of its generators."""

    def __init__(self, group, images, name: str = "finite"):
        images = list(images)
        if len(images) != len(group.generators):
            raise PreconditionError("need one image per generator")
        self.group = group
        self.images = images
        self.n, self.modulus = group.n, group.ell
        self.dim = images[0].shape[0] if images else 0
        self.name = name

    @classmethod
    def from_rep(cls, group, rep: Representation, name: str | None = None) -> "FiniteRep":
        return cls(group, [rep.act(g) for g in group.generators], name or rep.name)

    def act(self, g) -> ExactMatrix:
        idx = self.group.index_of(self._reduce(g))
        if idx < 0:
            raise PreconditionError("matrix is not in the group")
        out = ExactMatrix.identity(self.dim)
        for w in self.group.word(idx):
            out = out @ self.images[w]
        return out

    def spot_check(self, rng, samples: int = 20) -> bool:
        """ρ(xy) = ρ(x)ρ(y) on random pairs of elements."""
        for _ in range(samples):
            a = rng.randrange(self.group.order)
            b = rng.randrange(self.group.order)
            x, y = self.group.element(a), self.group.element(b)
            if not self.act((x @ y) % self.modulus) == self.act(x) @ self.act(y):
                raise VerificationError(f"generator images violate a relation at elements {a}, {b}")
        return True
