"""Dense exact linear algebra over a :mod:`trimcx.field` field.

Matrices are numpy arrays (``int64`` residues for F_p, ``object`` arrays of
``Fraction`` for Q). Vectors are rows when we talk about spans and columns
when a matrix acts on them; each function says which.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import DEFAULT_FIELD


class InconsistentSystem(ValueError):
    """``solve`` was asked for a solution that does not exist."""


def _as_array(A, field):
    if isinstance(A, StrandMatrix):
        A = A.array
    A = np.asarray(A)
    if A.dtype != field.dtype:
        A = field.array(A)
    return A


def rref(A, field=DEFAULT_FIELD):
    """Reduced row echelon form.

    Returns ``(R, pivots)``: the nonzero rows of the RREF and the list of
    pivot columns (one per row of ``R``).
    """
    A = field.normalize(np.array(_as_array(A, field), dtype=field.dtype, copy=True))
    if A.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    m, n = A.shape
    pivots = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.flatnonzero(A[row:, col])
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            A[[row, piv]] = A[[piv, row]]
        inv = field.inv(field(A[row, col]))
        A[row, col:] = field.normalize(A[row, col:] * inv)
        others = np.flatnonzero(A[:, col])
        others = others[others != row]
        if others.size:
            A[others, col:] = field.normalize(
                A[others, col:] - np.outer(A[others, col], A[row, col:])
            )
        pivots.append(col)
        row += 1
    return A[:row], pivots


def rank(A, field=DEFAULT_FIELD) -> int:
    A = _as_array(A, field)
    if A.size == 0:
        return 0
    if A.shape[0] > A.shape[1]:
        A = A.T
    return len(rref(A, field)[1])


def kernel_basis(A, field=DEFAULT_FIELD) -> np.ndarray:
    """Rows spanning ``{v : A v = 0}``; shape ``(dim ker, ncols)``."""
    A = _as_array(A, field)
    n = A.shape[1]
    if A.shape[0] == 0:
        return _identity(n, field)
    R, pivots = rref(A, field)
    pivset = set(pivots)
    free = [c for c in range(n) if c not in pivset]
    K = field.zeros((len(free), n))
    if free:
        K[np.arange(len(free)), free] = field(1)
        if pivots:
            K[:, pivots] = field.normalize(-R[:, free].T)
    return K


def solve(A, b, field=DEFAULT_FIELD) -> np.ndarray:
    """Some ``x`` with ``A x = b``; raises :class:`InconsistentSystem`."""
    A = _as_array(A, field)
    b = _as_array(np.asarray(b).reshape(-1), field)
    m, n = A.shape
    if b.shape[0] != m:
        raise ValueError(f"right-hand side has length {b.shape[0]}, expected {m}")
    aug = field.zeros((m, n + 1))
    aug[:, :n] = A
    aug[:, n] = b
    R, pivots = rref(aug, field)
    if pivots and pivots[-1] == n:
        raise InconsistentSystem("system has no solution")
    x = field.zeros(n)
    for i, p in enumerate(pivots):
        x[p] = R[i, n]
    return x


def _identity(n, field):
    I = field.zeros((n, n))
    for i in range(n):
        I[i, i] = field(1)
    return I


def reduce_rows(R, pivots, V, field=DEFAULT_FIELD) -> np.ndarray:
    """Reduce the rows of ``V`` against an RREF basis ``(R, pivots)``."""
    V = _as_array(V, field)
    if not pivots or V.shape[0] == 0:
        return V.copy()
    return field.normalize(V - field.matmul(V[:, pivots], R))


def independent_rows(V, field=DEFAULT_FIELD, base=None) -> list:
    """Indices of a greedy (in order) maximal independent subset of rows of ``V``.

    With ``base = (R, pivots)`` the rows are chosen independent modulo the
    span of ``R``.
    """
    V = _as_array(V, field)
    if V.shape[0] == 0:
        return []
    if base is not None:
        V = reduce_rows(base[0], base[1], V, field)
    _, piv = rref(V.T, field)
    return list(piv)


def in_span(R, pivots, V, field=DEFAULT_FIELD) -> bool:
    """True when every row of ``V`` lies in the row span of the RREF ``R``."""
    V = _as_array(V, field)
    if V.shape[0] == 0:
        return True
    return not np.any(reduce_rows(R, pivots, V, field))


def span_intersection(A, B, field=DEFAULT_FIELD) -> np.ndarray:
    """Rows spanning ``rowspan(A) ∩ rowspan(B)``."""
    A = _as_array(A, field)
    B = _as_array(B, field)
    if A.shape[0] == 0 or B.shape[0] == 0:
        return field.zeros((0, A.shape[1] if A.ndim == 2 else B.shape[1]))
    K = kernel_basis(np.concatenate([A, B]).T, field)
    if K.shape[0] == 0:
        return field.zeros((0, A.shape[1]))
    W = field.matmul(K[:, : A.shape[0]], A)
    R, _ = rref(W, field)
    return R


@dataclass(frozen=True)
class StrandMatrix:
    """A matrix whose rows and columns carry explicit basis labels."""

    array: np.ndarray
    rows: tuple
    cols: tuple
    field: object = DEFAULT_FIELD

    def __post_init__(self):
        if self.array.shape != (len(self.rows), len(self.cols)):
            raise ValueError(
                f"array shape {self.array.shape} does not match labels "
                f"({len(self.rows)}, {len(self.cols)})"
            )

    @property
    def shape(self):
        return self.array.shape

    def rank(self) -> int:
        return rank(self.array, self.field)

    def kernel_basis(self) -> np.ndarray:
        return kernel_basis(self.array, self.field)

    def solve(self, b) -> np.ndarray:
        return solve(self.array, b, self.field)
