"""Exact matrices over Q and over cyclotomic fields.

Rational matrices are held as sparse sympy DomainMatrix objects over QQ,
which gives exact fraction-free elimination with GMP integers.  Matrices
with genuinely cyclotomic entries use plain nested lists of
CyclotomicNumber; they only appear at small dimension.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .cyclotomic import CyclotomicNumber
from .polys import poly_mul, trim

_ONE = QQ(1)


def _qq(x):
    if isinstance(x, int):
        return QQ(x)
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    if isinstance(x, str):
        f = Fraction(x)
        return QQ(f.numerator, f.denominator)
    if isinstance(x, CyclotomicNumber):
        return _qq(x.to_fraction())
    return QQ(x)


def _frac(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def _is_cyclotomic_entry(x) -> bool:
    return isinstance(x, CyclotomicNumber) and not x.is_rational()


class ExactMatrix:
    __slots__ = ("_dm", "_cyc", "shape")
    __hash__ = None

    def __init__(self, dm: DomainMatrix | None = None, cyc=None, shape=None):
        self._dm = dm
        self._cyc = cyc
        if dm is not None:
            self.shape = tuple(dm.shape)
        else:
            self.shape = tuple(shape) if shape is not None else (len(cyc), len(cyc[0]) if cyc else 0)

    # construction

    @classmethod
    def from_rows(cls, rows) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        if any(_is_cyclotomic_entry(x) for r in rows for x in r):
            return cls(cyc=[[CyclotomicNumber.coerce(x) for x in r] for r in rows], shape=(nrows, ncols))
        dod = {}
        for i, r in enumerate(rows):
            d = {j: _qq(x) for j, x in enumerate(r) if x != 0}
            if d:
                dod[i] = d
        return cls(DomainMatrix.from_dod(dod, (nrows, ncols), QQ))

    @classmethod
    def from_dict(cls, entries: dict, shape) -> "ExactMatrix":
        dod = {}
        for (i, j), x in entries.items():
            if x != 0:
                dod.setdefault(i, {})[j] = _qq(x)
        return cls(DomainMatrix.from_dod(dod, tuple(shape), QQ))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(DomainMatrix.eye(n, QQ).to_sparse())

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "ExactMatrix":
        cols = rows if cols is None else cols
        return cls(DomainMatrix.from_dod({}, (rows, cols), QQ))

    @classmethod
    def diagonal(cls, entries) -> "ExactMatrix":
        entries = list(entries)
        n = len(entries)
        if any(_is_cyclotomic_entry(x) for x in entries):
            zero = CyclotomicNumber.rational(0)
            return cls(cyc=[[CyclotomicNumber.coerce(entries[i]) if i == j else zero for j in range(n)] for i in range(n)],
                       shape=(n, n))
        return cls.from_dict({(i, i): x for i, x in enumerate(entries)}, (n, n))

    @classmethod
    def permutation(cls, images) -> "ExactMatrix":
        """Matrix sending basis vector e_j to e_{images[j]}."""
        n = len(images)
        dod = {}
        for j, i in enumerate(images):
            dod.setdefault(int(i), {})[j] = _ONE
        return cls(DomainMatrix.from_dod(dod, (n, n), QQ))

    @classmethod
    def companion(cls, poly) -> "ExactMatrix":
        """Companion matrix of a monic polynomial (coefficients lowest first)."""
        poly = trim(poly)
        d = len(poly) - 1
        lead = Fraction(poly[-1])
        entries = {}
        for i in range(1, d):
            entries[(i, i - 1)] = 1
        for i in range(d):
            entries[(i, d - 1)] = -Fraction(poly[i]) / lead
        return cls.from_dict(entries, (d, d))

    @classmethod
    def block_diag(cls, blocks) -> "ExactMatrix":
        blocks = list(blocks)
        rows = sum(b.shape[0] for b in blocks)
        cols = sum(b.shape[1] for b in blocks)
        if any(b.is_cyclotomic for b in blocks):
            zero = CyclotomicNumber.rational(0)
            out = [[zero] * cols for _ in range(rows)]
            r0 = c0 = 0
            for b in blocks:
                for i, row in enumerate(b.to_rows()):
                    for j, x in enumerate(row):
                        out[r0 + i][c0 + j] = CyclotomicNumber.coerce(x)
                r0 += b.shape[0]
                c0 += b.shape[1]
            return cls(cyc=out, shape=(rows, cols))
        dod = {}
        r0 = c0 = 0
        for b in blocks:
            for i, row in b._dm.to_dod().items():
                dod[r0 + i] = {c0 + j: x for j, x in row.items()}
            r0 += b.shape[0]
            c0 += b.shape[1]
        return cls(DomainMatrix.from_dod(dod, (rows, cols), QQ))

    @classmethod
    def hstack(cls, mats) -> "ExactMatrix":
        mats = list(mats)
        if any(m.is_cyclotomic for m in mats):
            rows = [sum((m.to_rows()[i] for m in mats), []) for i in range(mats[0].shape[0])]
            return cls.from_rows(rows)
        rows = mats[0].shape[0]
        dod = {}
        c0 = 0
        for m in mats:
            if m.shape[0] != rows:
                raise ValueError("hstack row mismatch")
            for i, row in m._dm.to_dod().items():
                dod.setdefault(i, {}).update({c0 + j: x for j, x in row.items()})
            c0 += m.shape[1]
        return cls(DomainMatrix.from_dod(dod, (rows, c0), QQ))

    @classmethod
    def vstack(cls, mats) -> "ExactMatrix":
        mats = list(mats)
        if not mats:
            raise ValueError("nothing to stack")
        if any(m.is_cyclotomic for m in mats):
            return cls.from_rows(sum((m.to_rows() for m in mats), []))
        cols = mats[0].shape[1]
        dod = {}
        r0 = 0
        for m in mats:
            if m.shape[1] != cols:
                raise ValueError("vstack column mismatch")
            for i, row in m._dm.to_dod().items():
                dod[r0 + i] = dict(row)
            r0 += m.shape[0]
        return cls(DomainMatrix.from_dod(dod, (r0, cols), QQ))

    # inspection

    @property
    def is_cyclotomic(self) -> bool:
        return self._cyc is not None

    @property
    def dim(self) -> int:
        if self.shape[0] != self.shape[1]:
            raise ValueError(f"matrix of shape {self.shape} is not square")
        return self.shape[0]

    @property
    def domain_matrix(self) -> DomainMatrix:
        if self._dm is None:
            raise TypeError("cyclotomic matrix has no rational backend")
        return self._dm

    def __getitem__(self, ij):
        i, j = ij
        if self._cyc is not None:
            return self._cyc[i][j]
        return _frac(self._dm.to_sdm().get(i, {}).get(j, QQ(0)))

    def to_rows(self):
        if self._cyc is not None:
            return [list(r) for r in self._cyc]
        out = [[Fraction(0)] * self.shape[1] for _ in range(self.shape[0])]
        for i, row in self._dm.to_dod().items():
            for j, x in row.items():
                out[i][j] = _frac(x)
        return out

    def items(self):
        """Nonzero entries as ((i, j), Fraction)."""
        if self._cyc is not None:
            for i, r in enumerate(self._cyc):
                for j, x in enumerate(r):
                    if not x.is_zero():
                        yield (i, j), x
            return
        for i, row in self._dm.to_dod().items():
            for j, x in row.items():
                yield (i, j), _frac(x)

    def nnz(self) -> int:
        return sum(1 for _ in self.items())

    def to_json(self):
        def enc(x):
            if isinstance(x, CyclotomicNumber):
                return x.to_json()
            return str(x)

        return [[enc(x) for x in r] for r in self.to_rows()]

    @classmethod
    def from_json(cls, data) -> "ExactMatrix":
        def dec(x):
            if isinstance(x, dict):
                return CyclotomicNumber(x["conductor"], [Fraction(c) for c in x["coefficients"]])
            return Fraction(str(x))

        return cls.from_rows([[dec(x) for x in r] for r in data])

    def __repr__(self):
        return f"ExactMatrix({self.to_json()})"

    # arithmetic

    def _to_cyc(self):
        if self._cyc is not None:
            return self._cyc
        return [[CyclotomicNumber.rational(x) for x in r] for r in self.to_rows()]

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self._dm is not None and other._dm is not None:
            return ExactMatrix(self._dm.matmul(other._dm))
        a, b = self._to_cyc(), other._to_cyc()
        zero = CyclotomicNumber.rational(0)
        out = []
        for i in range(self.shape[0]):
            row = []
            for j in range(other.shape[1]):
                acc = zero
                for k in range(self.shape[1]):
                    if not a[i][k].is_zero() and not b[k][j].is_zero():
                        acc = acc + a[i][k] * b[k][j]
                row.append(acc)
            out.append(row)
        return ExactMatrix(cyc=out, shape=(self.shape[0], other.shape[1]))

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        if self._dm is not None and other._dm is not None:
            return ExactMatrix(self._dm + other._dm)
        a, b = self._to_cyc(), other._to_cyc()
        return ExactMatrix(cyc=[[x + y for x, y in zip(r, s)] for r, s in zip(a, b)], shape=self.shape)

    def __neg__(self):
        if self._dm is not None:
            return ExactMatrix(-self._dm)
        return ExactMatrix(cyc=[[-x for x in r] for r in self._cyc], shape=self.shape)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def scale(self, c) -> "ExactMatrix":
        if self._dm is not None and not _is_cyclotomic_entry(c):
            return ExactMatrix(self._dm * _qq(c))
        c = CyclotomicNumber.coerce(c)
        return ExactMatrix(cyc=[[c * x for x in r] for r in self._to_cyc()], shape=self.shape)

    def __mul__(self, c):
        if isinstance(c, ExactMatrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "ExactMatrix":
        if k < 0:
            return self.inverse() ** (-k)
        result = ExactMatrix.identity(self.dim)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        if self._dm is not None and other._dm is not None:
            return (self._dm - other._dm).is_zero_matrix
        return (self - other).is_zero()

    def trace(self):
        if self._cyc is not None:
            acc = CyclotomicNumber.rational(0)
            for i in range(self.dim):
                acc = acc + self._cyc[i][i]
            return acc
        sdm = self._dm.to_sdm()
        return sum((_frac(sdm[i][i]) for i in sdm if i in sdm[i]), Fraction(0))

    def is_zero(self) -> bool:
        if self._dm is not None:
            return self._dm.is_zero_matrix
        return all(x.is_zero() for r in self._cyc for x in r)

    def is_identity(self) -> bool:
        return self.shape[0] == self.shape[1] and self == ExactMatrix.identity(self.shape[0])

    def transpose(self) -> "ExactMatrix":
        if self._dm is not None:
            return ExactMatrix(self._dm.transpose())
        return ExactMatrix(cyc=[list(r) for r in zip(*self._cyc)], shape=(self.shape[1], self.shape[0]))

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        r2, c2 = other.shape
        shape = (self.shape[0] * r2, self.shape[1] * c2)
        if self._dm is not None and other._dm is not None:
            a, b = self._dm.to_dod(), other._dm.to_dod()
            dod = {}
            for i, row in a.items():
                for k, brow in b.items():
                    target = dod.setdefault(i * r2 + k, {})
                    for j, x in row.items():
                        for l, y in brow.items():
                            target[j * c2 + l] = x * y
            return ExactMatrix(DomainMatrix.from_dod(dod, shape, QQ))
        a, b = self._to_cyc(), other._to_cyc()
        out = [[None] * shape[1] for _ in range(shape[0])]
        for i in range(self.shape[0]):
            for j in range(self.shape[1]):
                for k in range(r2):
                    for l in range(c2):
                        out[i * r2 + k][j * c2 + l] = a[i][j] * b[k][l]
        return ExactMatrix(cyc=out, shape=shape)

    def submatrix(self, rows, cols) -> "ExactMatrix":
        rows, cols = list(rows), list(cols)
        if self._dm is not None:
            colpos = {c: k for k, c in enumerate(cols)}
            dod = self._dm.to_dod()
            out = {}
            for r_new, r in enumerate(rows):
                row = dod.get(r)
                if not row:
                    continue
                d = {colpos[j]: x for j, x in row.items() if j in colpos}
                if d:
                    out[r_new] = d
            return ExactMatrix(DomainMatrix.from_dod(out, (len(rows), len(cols)), QQ))
        return ExactMatrix(cyc=[[self._cyc[r][c] for c in cols] for r in rows], shape=(len(rows), len(cols)))

    def column(self, j: int) -> "ExactMatrix":
        return self.submatrix(range(self.shape[0]), [j])

    # linear algebra

    def rank(self) -> int:
        if self.shape[0] == 0 or self.shape[1] == 0:
            return 0
        if self._dm is not None:
            return self._dm.rank()
        return len(_cyc_rref(self._cyc)[1])

    def nullspace(self) -> "ExactMatrix":
        """Basis of the right kernel, as the columns of the returned matrix."""
        n = self.shape[1]
        if self.shape[0] == 0:
            return ExactMatrix.identity(n)
        if self._dm is not None:
            ns = self._dm.nullspace()
            if ns.shape[0] == 0:
                return ExactMatrix.zeros(n, 0)
            return ExactMatrix(ns.to_field()).transpose()
        rref, pivots = _cyc_rref(self._cyc)
        free = [j for j in range(n) if j not in pivots]
        zero, one = CyclotomicNumber.rational(0), CyclotomicNumber.rational(1)
        cols = []
        for f in free:
            v = [zero] * n
            v[f] = one
            for r, p in enumerate(pivots):
                v[p] = -rref[r][f]
            cols.append(v)
        if not cols:
            return ExactMatrix.zeros(n, 0)
        return ExactMatrix(cyc=[list(r) for r in zip(*cols)], shape=(n, len(cols)))

    def column_space(self) -> "ExactMatrix":
        """Basis of the span of the columns (a subset of the columns)."""
        if self.shape[1] == 0:
            return self
        if self._dm is not None:
            _, pivots = self._dm.rref()
            return self.submatrix(range(self.shape[0]), pivots)
        _, pivots = _cyc_rref(self._cyc)
        return self.submatrix(range(self.shape[0]), pivots)

    def rref(self):
        if self._dm is not None:
            r, pivots = self._dm.rref()
            return ExactMatrix(r), list(pivots)
        r, pivots = _cyc_rref(self._cyc)
        return ExactMatrix(cyc=r, shape=self.shape), pivots

    def inverse(self) -> "ExactMatrix":
        if self._dm is not None:
            return ExactMatrix(self._dm.to_dense().inv().to_sparse())
        n = self.dim
        aug = [list(r) + [CyclotomicNumber.rational(1 if i == j else 0) for j in range(n)] for i, r in enumerate(self._cyc)]
        r, pivots = _cyc_rref(aug)
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return ExactMatrix(cyc=[row[n:] for row in r[:n]], shape=(n, n))

    def solve_right(self, rhs: "ExactMatrix") -> "ExactMatrix":
        """X with self @ X = rhs, for self of full column rank.

        Raises ValueError when rhs is not in the column space.
        """
        m, n = self.shape
        aug = ExactMatrix.hstack([self, rhs])
        r, pivots = aug.rref()
        if any(p >= n for p in pivots):
            raise ValueError("right-hand side is not in the column space")
        if list(pivots) != list(range(n)):
            raise ValueError("matrix does not have full column rank")
        return r.submatrix(range(n), range(n, n + rhs.shape[1]))

    def char_poly(self):
        """Monic characteristic polynomial det(xI - M), lowest degree first."""
        return char_poly(self)

    def is_permutation(self) -> bool:
        if self._dm is None or self.shape[0] != self.shape[1]:
            return False
        dod = self._dm.to_dod()
        if len(dod) != self.shape[0]:
            return False
        seen = set()
        for i, row in dod.items():
            if len(row) != 1:
                return False
            (j, x), = row.items()
            if x != _ONE or j in seen:
                return False
            seen.add(j)
        return True

    def permutation_images(self) -> list[int]:
        images = [0] * self.shape[0]
        for i, row in self._dm.to_dod().items():
            (j, _), = row.items()
            images[j] = i
        return images

    def common_denominator(self) -> int:
        d = 1
        for _, x in self.items():
            if isinstance(x, Fraction):
                d = lcm(d, x.denominator)
        return d


def _cyc_rref(rows):
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def _permutation_char_poly(images):
    """Π over cycles of (x^len - 1)."""
    n = len(images)
    seen = [False] * n
    poly = [1]
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = images[j]
            length += 1
        poly = poly_mul(poly, [-1] + [0] * (length - 1) + [1])
    return [Fraction(c) for c in poly]


def _berkowitz(rows):
    """Division-free characteristic polynomial over any commutative ring."""
    n = len(rows)
    zero = CyclotomicNumber.rational(0)
    one = CyclotomicNumber.rational(1)
    if n == 0:
        return [one]
    # vector of coefficients, highest degree first, built by the Berkowitz recursion
    poly = [one, -rows[0][0]]
    for k in range(1, n):
        a = rows[k][k]
        r_row = rows[k][:k]
        c_col = [rows[i][k] for i in range(k)]
        sub = [row[:k] for row in rows[:k]]
        toeplitz_col = [one, -a]
        v = c_col
        for _ in range(k):
            s = zero
            for x, y in zip(r_row, v):
                s = s + x * y
            toeplitz_col.append(-s)
            v = [sum((sub[i][j] * v[j] for j in range(k)), zero) for i in range(k)]
        new = []
        for i in range(k + 2):
            s = zero
            for j in range(min(i, k) + 1):
                if i - j < len(toeplitz_col):
                    s = s + toeplitz_col[i - j] * poly[j]
            new.append(s)
        poly = new
    return list(reversed(poly))


def char_poly(m: ExactMatrix):
    if m._dm is not None:
        if m.is_permutation():
            return _permutation_char_poly(m.permutation_images())
        coeffs = m._dm.charpoly()
        return [_frac(c) for c in reversed(coeffs)]
    return _berkowitz(m._cyc)
