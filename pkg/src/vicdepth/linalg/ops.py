"""Unipotence, fixed spaces and matrix orders."""
from __future__ import annotations

from .matrix import ExactMatrix
from .polys import DEFAULT_CYCLOTOMIC_CAP, cyclotomic_orders


def is_unipotent(m: ExactMatrix) -> bool:
    """(M - I)^dim == 0, decided by repeated squaring of M - I."""
    n = m.dim
    if n == 0:
        return True
    nil = m - ExactMatrix.identity(n)
    power = 1
    while power < n:
        if nil.is_zero():
            return True
        nil = nil @ nil
        power *= 2
    return nil.is_zero()


def fixed_space(ms, dim: int | None = None) -> ExactMatrix:
    """Basis (as columns) of the common fixed space of the given square matrices."""
    ms = list(ms)
    if not ms:
        if dim is None:
            raise ValueError("dimension needed when no matrices are given")
        return ExactMatrix.identity(dim)
    n = ms[0].dim
    if any(m.dim != n for m in ms):
        raise ValueError("matrices of different dimensions")
    eye = ExactMatrix.identity(n)
    stacked = ExactMatrix.vstack([m - eye for m in ms])
    return stacked.nullspace()


def matrix_order(m: ExactMatrix, cap: int = DEFAULT_CYCLOTOMIC_CAP) -> int | None:
    """Multiplicative order of M, or None when M has infinite order.

    The candidate is the lcm of the root-of-unity orders of the eigenvalues;
    M has that order exactly when it is semisimple, which is checked by the
    matrix power itself.
    """
    fac = cyclotomic_orders(m.char_poly(), cap=cap)
    if fac.remainder_degree > 0:
        return None
    order = fac.order_lcm()
    return order if (m ** order).is_identity() else None
