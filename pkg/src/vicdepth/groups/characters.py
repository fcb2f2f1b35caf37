"""Character tables of enumerated matrix groups.

Irreducible characters are found with the Dixon method: the class
multiplication matrices are simultaneously diagonalised modulo a prime
p ≡ 1 (mod exponent), and each character value is lifted back to
characteristic zero through its eigenvalue spectrum.  A character is
stored as one spectrum per class: for a class of element order o the
tuple (m_0, ..., m_{o-1}) records how often ζ_o^s occurs as an eigenvalue.
Values, inner products and kernels are then exact.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, isqrt, lcm

import numpy as np
from sympy import isprime, primitive_root

from ..errors import DecompositionError, IntegrityError, PreconditionError
from ..linalg.cyclotomic import CyclotomicNumber, reduction_table
from ..linalg.modp import normalise_columns as _normalise_columns
from ..linalg.modp import nullspace_mod as _nullspace_mod
from ..linalg.polys import divisors
from . import modular
from .finite import DEFAULT_GROUP_CAP, FiniteMatrixGroup, enumerate_group


# ---------------------------------------------------------------------------
# class structure shared by enumerated groups and CRT products


@dataclass
class ClassStructure:
    """Conjugacy class data of SL_n(Z/ℓ) (or a variant) needed for characters."""

    n: int
    ell: int
    order: int
    sizes: list[int]
    orders: list[int]
    power_table: list[list[int]]
    inverse: list[int]
    reps: list[np.ndarray]
    kernel_sets: dict[int, frozenset] = field(default_factory=dict)
    description: str = ""
    locator: object = None

    @property
    def count(self) -> int:
        return len(self.sizes)

    def class_of(self, g) -> int:
        """Index of the conjugacy class containing the matrix g (mod ℓ)."""
        return self.locator(np.asarray(g, dtype=np.int64) % self.ell)

    def power(self, k: int, t: int) -> int:
        row = self.power_table[k]
        return row[t % len(row)]

    @cached_property
    def exponent(self) -> int:
        e = 1
        for o in self.orders:
            e = lcm(e, o)
        return e

    def kernel_classes(self, ell_prime: int) -> frozenset:
        """Classes of elements congruent to the identity mod ℓ'."""
        if self.ell % ell_prime:
            raise PreconditionError(f"{ell_prime} does not divide {self.ell}")
        return self.kernel_sets[ell_prime]

    @classmethod
    def from_group(cls, group: FiniteMatrixGroup) -> "ClassStructure":
        c = group.classes
        kernels = {d: frozenset(group.kernel_classes(d)) for d in divisors(group.ell)}
        return cls(group.n, group.ell, group.order, list(c.sizes), list(c.orders), c.power_table,
                   list(c.inverse), [group.element(r) for r in c.reps], kernels, group.description,
                   group.class_of)


def _crt_combine(a: np.ndarray, ma: int, b: np.ndarray, mb: int) -> np.ndarray:
    """The matrix congruent to a mod ma and to b mod mb (coprime moduli)."""
    inv = pow(ma, -1, mb)
    return (a + ma * (((b - a) * inv) % mb)) % (ma * mb)


def product_structure(first: ClassStructure, second: ClassStructure) -> ClassStructure:
    """Class structure of G1 × G2 ≅ SL_n(Z/(ℓ1 ℓ2)) for coprime moduli."""
    if gcd(first.ell, second.ell) != 1 or first.n != second.n:
        raise PreconditionError("CRT product needs coprime moduli and equal rank")
    pairs = [(a, b) for a in range(first.count) for b in range(second.count)]
    index = {p: k for k, p in enumerate(pairs)}
    sizes = [first.sizes[a] * second.sizes[b] for a, b in pairs]
    orders = [lcm(first.orders[a], second.orders[b]) for a, b in pairs]
    powers = [[index[(first.power(a, t), second.power(b, t))] for t in range(o)]
              for (a, b), o in zip(pairs, orders)]
    inverse = [index[(first.inverse[a], second.inverse[b])] for a, b in pairs]
    reps = [_crt_combine(first.reps[a], first.ell, second.reps[b], second.ell) for a, b in pairs]
    ell = first.ell * second.ell
    kernels = {}
    for d in divisors(ell):
        k1 = first.kernel_classes(gcd(d, first.ell))
        k2 = second.kernel_classes(gcd(d, second.ell))
        kernels[d] = frozenset(index[(a, b)] for a in k1 for b in k2)
    desc = f"{first.description} x {second.description}"

    def locate(g):
        return index[(first.class_of(g % first.ell), second.class_of(g % second.ell))]

    return ClassStructure(first.n, ell, first.order * second.order, sizes, orders, powers, inverse,
                          reps, kernels, desc, locate)


# ---------------------------------------------------------------------------
# linear algebra modulo a prime


def _charpoly_mod(c: np.ndarray, p: int) -> list[int]:
    """Characteristic polynomial (lowest degree first) by Faddeev-LeVerrier; needs dim < p."""
    d = c.shape[0]
    coeffs = [0] * (d + 1)
    coeffs[d] = 1
    m = np.zeros_like(c)
    ident = np.eye(d, dtype=np.int64)
    for k in range(1, d + 1):
        m = (c @ m + coeffs[d - k + 1] * ident) % p
        am = (c @ m) % p
        coeffs[d - k] = (-int(np.trace(am) % p) * pow(k, -1, p)) % p
    return coeffs


def _roots_mod(poly: list[int], p: int) -> list[int]:
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(poly):
        acc = (acc * xs + c) % p
    return [int(x) for x in np.flatnonzero(acc == 0)]


def dixon_prime(exponent: int, order: int) -> int:
    """Smallest prime p ≡ 1 (mod exponent) with p > 2√|G|."""
    bound = 2 * isqrt(order) + 2
    k = max(1, bound // exponent)
    while not (k * exponent + 1 > bound and isprime(k * exponent + 1)):
        k += 1
    return k * exponent + 1


# ---------------------------------------------------------------------------
# characters


def _spectrum_value(counts, o: int) -> CyclotomicNumber:
    return CyclotomicNumber.from_exponents(o, {s: int(c) for s, c in enumerate(counts) if c})


@dataclass
class Character:
    """A character given by eigenvalue spectra per class."""

    structure: ClassStructure
    spectra: list[tuple[int, ...]]
    label: str = ""

    @property
    def degree(self) -> int:
        return int(sum(self.spectra[0]))

    def value(self, k: int) -> CyclotomicNumber:
        return _spectrum_value(self.spectra[k], self.structure.orders[k])

    @cached_property
    def values(self) -> list[CyclotomicNumber]:
        return [self.value(k) for k in range(self.structure.count)]

    def is_trivial_on(self, classes) -> bool:
        """True when every class in the set acts as the identity."""
        return all(self.spectra[k][0] == self.degree for k in classes)

    def factoring_level(self) -> int:
        """Least ℓ' | ℓ whose reduction kernel acts trivially."""
        for d in divisors(self.structure.ell):
            if self.is_trivial_on(self.structure.kernel_classes(d)):
                return d
        raise IntegrityError("no level acts trivially, not even ℓ itself")

    def factors_through(self, ell_prime: int) -> bool:
        return self.is_trivial_on(self.structure.kernel_classes(ell_prime))

    def __add__(self, other: "Character") -> "Character":
        return Character(self.structure, [tuple(a + b for a, b in zip(x, y))
                                          for x, y in zip(self.spectra, other.spectra)])

    def __mul__(self, other: "Character") -> "Character":
        out = []
        for x, y, o in zip(self.spectra, other.spectra, self.structure.orders):
            z = [0] * o
            for s, a in enumerate(x):
                if a:
                    for t, b in enumerate(y):
                        if b:
                            z[(s + t) % o] += a * b
            out.append(tuple(z))
        return Character(self.structure, out)

    def dual(self) -> "Character":
        return Character(self.structure, [tuple(x[(-s) % len(x)] for s in range(len(x))) for x in self.spectra],
                         self.label + "*" if self.label else "")

    def to_json(self):
        return {"id": self.label, "degree": self.degree, "values": [v.to_json() for v in self.values]}


def inner_product(a: Character, b: Character) -> Fraction:
    """⟨a, b⟩ = (1/|G|) Σ_g a(g) conj(b(g)), exactly."""
    st = a.structure
    e = st.exponent
    acc = np.zeros(e, dtype=np.int64)
    for k in range(st.count):
        o = st.orders[k]
        x = np.array(a.spectra[k], dtype=np.int64)
        y = np.array(b.spectra[k], dtype=np.int64)
        outer = np.multiply.outer(x, y) * st.sizes[k]
        idx = ((np.arange(o)[:, None] - np.arange(o)[None, :]) % o) * (e // o)
        np.add.at(acc, idx.ravel(), outer.ravel())
    table = reduction_table(e)
    nz = np.flatnonzero(acc)
    rows = table[nz]
    bound = int(np.abs(acc).max(initial=0)) * int(np.abs(rows).max(initial=0)) * max(1, nz.shape[0])
    if rows.dtype == np.int64 and bound < 2**62:
        coords = [int(c) for c in acc[nz] @ rows]
    else:
        coords = [int(c) for c in acc[nz].astype(object) @ rows.astype(object)]
    if any(coords[1:]):
        raise IntegrityError("inner product of characters is not rational")
    return Fraction(coords[0], st.order)


def spectrum_from_traces(traces, o: int) -> tuple[int, ...]:
    """Eigenvalue multiplicities of a finite-order operator from tr(g^t), t = 0..o-1.

    The inverse discrete Fourier transform is evaluated modulo a prime
    q ≡ 1 (mod o) larger than twice the dimension, which recovers the
    nonnegative integer multiplicities exactly.
    """
    traces = [int(t) for t in traces]
    dim = traces[0]
    k = max(1, (2 * dim + 2) // o)
    while not isprime(k * o + 1) or k * o + 1 <= 2 * dim + 1:
        k += 1
    q = k * o + 1
    z = pow(primitive_root(q), (q - 1) // o, q)
    inv_o = pow(o, -1, q)
    out = []
    for s in range(o):
        acc = sum(traces[t] * pow(z, (-t * s) % o, q) for t in range(o)) % q
        m = acc * inv_o % q
        if m > dim:
            raise IntegrityError("trace sequence is not the character of a representation")
        out.append(m)
    if sum(out) != dim:
        raise IntegrityError("eigenvalue multiplicities do not add up to the dimension")
    return tuple(out)


def character_from_traces(structure: ClassStructure, trace_fn, label: str = "") -> Character:
    """Character of a representation from a function g ↦ tr ρ(g) on matrices over Z/ℓ."""
    spectra = []
    for k, g in enumerate(structure.reps):
        o = structure.orders[k]
        traces = []
        x = np.eye(structure.n, dtype=np.int64)
        for _ in range(o):
            traces.append(trace_fn(x))
            x = (x @ g) % structure.ell
        spectra.append(spectrum_from_traces(traces, o))
    return Character(structure, spectra, label)


def _spectra_key(spectra) -> str:
    # a spectrum pins down the character value on its class, so the sorted
    # spectra give a label that does not depend on how classes are ordered
    return hashlib.sha256("|".join(sorted(",".join(map(str, s)) for s in spectra)).encode()).hexdigest()[:12]


class CharacterTable:
    def __init__(self, structure: ClassStructure, characters: list[Character], prime: int | None = None):
        self.structure = structure
        self.prime = prime
        characters = sorted(characters, key=lambda c: (c.degree, [tuple(s) for s in c.spectra]))
        keys = [f"{c.degree}:{_spectra_key(c.spectra)}" for c in characters]
        seen = {}
        for c, key in zip(characters, keys):
            seen[key] = seen.get(key, 0) + 1
            c.label = key if keys.count(key) == 1 else f"{key}#{seen[key]}"
        self.characters = characters

    def __len__(self):
        return len(self.characters)

    def __iter__(self):
        return iter(self.characters)

    @property
    def degrees(self) -> list[int]:
        return [c.degree for c in self.characters]

    def trivial(self) -> Character:
        return self.characters[0]

    def by_id(self, ident: str) -> Character:
        for c in self.characters:
            if c.label == ident:
                return c
        raise KeyError(ident)

    def decompose(self, chi: Character) -> list[tuple[str, int]]:
        """Multiset of (irreducible id, multiplicity) with nonzero multiplicity."""
        out = []
        total = 0
        for irr in self.characters:
            m = inner_product(chi, irr)
            if m.denominator != 1 or m < 0:
                raise DecompositionError(f"multiplicity {m} of {irr.label} is not a natural number")
            if m:
                out.append((irr.label, int(m)))
                total += int(m) * irr.degree
        if total != chi.degree:
            raise DecompositionError("multiplicities do not account for the whole dimension")
        return out

    def verify(self) -> None:
        """Σ d² = |G| and exact row orthonormality."""
        if sum(d * d for d in self.degrees) != self.structure.order:
            raise IntegrityError("squared degrees do not sum to the group order")
        for i, a in enumerate(self.characters):
            for b in self.characters[i:]:
                expect = 1 if a is b else 0
                if inner_product(a, b) != expect:
                    raise IntegrityError(f"orthogonality fails for {a.label}, {b.label}")

    def to_json(self):
        st = self.structure
        return {
            "group": st.description,
            "order": st.order,
            "class_count": st.count,
            "class_sizes": st.sizes,
            "class_orders": st.orders,
            "irreducibles": [
                {"id": c.label, "dimension": c.degree, "factoring_level": c.factoring_level()}
                for c in self.characters
            ],
        }


def _class_matrix(group: FiniteMatrixGroup, j: int) -> np.ndarray:
    """M[i, k] = #{x ∈ C_j : x⁻¹ g_k ∈ C_i}."""
    c = group.classes
    members = c.members(j)
    inv = group.elements[group.inverse_indices[members]].astype(np.int64)
    r = c.count
    out = np.zeros((r, r), dtype=np.int64)
    for k, rep in enumerate(c.reps):
        prod = modular.batch_matmul(inv, group.element(rep), group.ell)
        idx = group.index_of(prod)
        out[:, k] = np.bincount(c.labels[idx], minlength=r)
    return out


def dixon_characters(group: FiniteMatrixGroup) -> CharacterTable:
    structure = ClassStructure.from_group(group)
    r = structure.count
    p = dixon_prime(structure.exponent, structure.order)
    spaces = [np.eye(r, dtype=np.int64)]
    done = []
    # try small classes first: cheap to build, usually enough to split everything
    order_of_use = sorted(range(1, r), key=lambda j: (structure.sizes[j], j))
    for j in order_of_use:
        if not spaces:
            break
        m = _class_matrix(group, j) % p
        nxt = []
        for v in spaces:
            v, piv = _normalise_columns(v, p)
            img = (m @ v) % p
            c = img[piv]
            roots = _roots_mod(_charpoly_mod(c, p), p)
            found = 0
            for lam in roots:
                ns = _nullspace_mod((c - lam * np.eye(c.shape[0], dtype=np.int64)) % p, p)
                found += ns.shape[1]
                w = (v @ ns) % p
                (done if w.shape[1] == 1 else nxt).append(w)
            if found != v.shape[1]:
                raise IntegrityError("class algebra is not split semisimple modulo the chosen prime")
        spaces = nxt
    if spaces:
        raise IntegrityError("class matrices failed to separate all characters")
    chars = [_lift(structure, w[:, 0], p) for w in done]
    table = CharacterTable(structure, chars, p)
    if sum(d * d for d in table.degrees) != structure.order:
        raise IntegrityError("squared degrees do not sum to the group order")
    return table


def _lift(st: ClassStructure, w: np.ndarray, p: int) -> Character:
    omega = (w * pow(int(w[0]), -1, p)) % p
    s = 0
    for i in range(st.count):
        s = (s + int(omega[i]) * int(omega[st.inverse[i]]) * pow(st.sizes[i], -1, p)) % p
    target = st.order * pow(s, -1, p) % p
    degree = next((d for d in range(1, isqrt(st.order) + 1) if d * d % p == target), None)
    if degree is None:
        raise IntegrityError("no admissible degree for a class-algebra eigenvector")
    values = [int(omega[i]) * degree * pow(st.sizes[i], -1, p) % p for i in range(st.count)]
    g = primitive_root(p)
    spectra = []
    for k in range(st.count):
        o = st.orders[k]
        z = pow(g, (p - 1) // o, p)
        inv_o = pow(o, -1, p)
        counts = []
        for s_ in range(o):
            acc = sum(values[st.power(k, t)] * pow(z, (-t * s_) % o, p) for t in range(o)) % p
            counts.append(acc * inv_o % p)
        if any(c > degree for c in counts) or sum(counts) != degree:
            raise IntegrityError("lifted eigenvalue multiplicities are inconsistent")
        spectra.append(tuple(counts))
    return Character(st, spectra)


def product_table(first: CharacterTable, second: CharacterTable) -> CharacterTable:
    """Character table of a CRT product: irreducibles are outer tensor products."""
    st = product_structure(first.structure, second.structure)
    chars = []
    for a in first.characters:
        for b in second.characters:
            spectra = []
            for k, (x, y) in enumerate(_pair_classes(first.structure, second.structure)):
                o = st.orders[k]
                o1, o2 = first.structure.orders[x], second.structure.orders[y]
                z = [0] * o
                for s, ca in enumerate(a.spectra[x]):
                    if ca:
                        for t, cb in enumerate(b.spectra[y]):
                            if cb:
                                z[(s * (o // o1) + t * (o // o2)) % o] += ca * cb
                spectra.append(tuple(z))
            chars.append(Character(st, spectra))
    return CharacterTable(st, chars, None)


def _pair_classes(first: ClassStructure, second: ClassStructure):
    return [(a, b) for a in range(first.count) for b in range(second.count)]


_TABLE_CACHE: dict = {}


def character_table(n: int, ell: int, variant: str = "SL", cap: int = DEFAULT_GROUP_CAP) -> CharacterTable:
    """Character table of SL_n(Z/ℓ) (or a variant); composite ℓ for SL uses CRT."""
    variant = modular.canonical_variant(variant)
    key = (n, ell, variant, cap)
    if key in _TABLE_CACHE:
        return _TABLE_CACHE[key]
    parts = modular.crt_split(ell)
    if variant == "SL" and len(parts) > 1:
        tables = [character_table(n, p**k, variant, cap) for p, k in parts]
        table = tables[0]
        for other in tables[1:]:
            table = product_table(table, other)
    else:
        table = dixon_characters(enumerate_group(n, ell, variant, cap))
    _TABLE_CACHE[key] = table
    return table


def factoring_level(chi: Character) -> int:
    return chi.factoring_level()
