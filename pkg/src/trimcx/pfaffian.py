"""Skew-symmetric polynomial matrices, Pfaffians, and the U/V families.

Block convention for ``V_m^j`` (size 2m+1, blocks of sizes m, 1, m)::

    [  O        O_{x^2}     U^T ]
    [ -O_{x^2}^T   0      ^{y^2}O ]
    [ -U      -(^{y^2}O)^T   O  ]

``O`` is the m x m zero block, ``O_{x^2}`` the length-m column with ``x^2``
in its last entry, and ``^{y^2}O`` the length-m row with ``y^2`` in its
first entry (``y`` instead of ``y^2`` when j = m). Among all placements of
the two nonzero entries and both orientations of the U block, this is the
one whose Pfaffian ideals are Artinian with the expected Betti tables
(checked for m <= 4; m = 2, 3 have no other solution).
"""

from __future__ import annotations

from .field import DEFAULT_FIELD
from .ideal import Ideal
from .poly import HomogPoly, parse_poly


class SkewMatrix:
    """An n x n skew-symmetric matrix of homogeneous polynomials."""

    def __init__(self, rows, field=None):
        rows = [list(r) for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix is not square")
        if field is None:
            field = next((f.field for r in rows for f in r if isinstance(f, HomogPoly)), DEFAULT_FIELD)
        clean = []
        for r in rows:
            clean.append([f if isinstance(f, HomogPoly) else HomogPoly.zero(0, field) for f in r])
        for i in range(n):
            if clean[i][i]:
                raise ValueError(f"diagonal entry ({i}, {i}) is nonzero")
            for j in range(i + 1, n):
                if clean[i][j] != -clean[j][i]:
                    raise ValueError(f"entries ({i}, {j}) and ({j}, {i}) are not negatives")
        self.n = n
        self.rows = clean
        self.field = field

    @classmethod
    def from_upper(cls, n: int, upper: dict, field=DEFAULT_FIELD) -> "SkewMatrix":
        """Build from ``{(i, j): poly}`` with ``i < j``."""
        rows = [[HomogPoly.zero(0, field)] * n for _ in range(n)]
        rows = [list(r) for r in rows]
        for (i, j), f in upper.items():
            if i >= j:
                raise ValueError("upper entries need i < j")
            rows[i][j] = f
            rows[j][i] = -f
        return cls(rows, field)

    def __getitem__(self, ij) -> HomogPoly:
        i, j = ij
        return self.rows[i][j]

    def degrees(self) -> dict:
        """``{(i, j): degree}`` of the nonzero entries."""
        return {(i, j): f.degree for i, r in enumerate(self.rows) for j, f in enumerate(r) if f}

    def has_unit_entry(self) -> bool:
        return any(f and f.degree == 0 for r in self.rows for f in r)

    def delete(self, idx) -> "SkewMatrix":
        keep = [k for k in range(self.n) if k not in set(idx)]
        return SkewMatrix([[self.rows[a][b] for b in keep] for a in keep], self.field)

    def pretty(self) -> str:
        return "\n".join(", ".join(str(f) for f in r) for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, SkewMatrix):
            return NotImplemented
        return self.n == other.n and all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)
        )

    __hash__ = None

    def __repr__(self):
        return f"SkewMatrix(n={self.n})"


def parse_matrix(lines, field=DEFAULT_FIELD) -> SkewMatrix:
    """Rows of comma-separated polynomials, one row per line."""
    rows = [[parse_poly(tok, field) for tok in line.split(",")] for line in lines if line.strip()]
    return SkewMatrix(rows, field)


def _pf(M: SkewMatrix, idx: tuple, memo: dict) -> HomogPoly:
    got = memo.get(idx)
    if got is not None:
        return got
    F = M.field
    if not idx:
        out = HomogPoly.constant(1, F)
    else:
        i0 = idx[0]
        out = None
        for k in range(1, len(idx)):
            a = M.rows[i0][idx[k]]
            if not a:
                continue
            sub = _pf(M, idx[1:k] + idx[k + 1:], memo)
            if not sub:
                continue
            term = a * sub
            if k % 2 == 0:
                term = -term
            out = term if out is None else out + term
        if out is None:
            out = HomogPoly.zero(0, F)
    memo[idx] = out
    return out


def pfaffian(M: SkewMatrix, row: int = 0, memo: dict | None = None) -> HomogPoly:
    """Pfaffian of an even-size skew matrix, expanded along ``row``.

    ``Pf(A) = Σ_{q != p} (-1)^{p+q+1+[p>q]} a_{pq} Pf(A without rows/cols p, q)``
    with 0-based ``p = row``.
    """
    if M.n % 2:
        raise ValueError("Pfaffian of an odd-size matrix")
    memo = {} if memo is None else memo
    idx = tuple(range(M.n))
    if M.n == 0:
        return HomogPoly.constant(1, M.field)
    p = row
    out = None
    for q in range(M.n):
        if q == p or not M.rows[p][q]:
            continue
        sub = _pf(M, tuple(k for k in idx if k not in (p, q)), memo)
        if not sub:
            continue
        term = M.rows[p][q] * sub
        if (p + q + 1 + (p > q)) % 2:
            term = -term
        out = term if out is None else out + term
    return out if out is not None else HomogPoly.zero(0, M.field)


def signed_submaximal_pfaffians(M: SkewMatrix) -> list:
    """``p_i = (-1)^i Pf(M without row/col i)`` (0-based), so that ``M p = 0``."""
    if M.n % 2 == 0:
        raise ValueError("submaximal Pfaffians need an odd-size matrix")
    memo = {}
    out = []
    for i in range(M.n):
        idx = tuple(k for k in range(M.n) if k != i)
        pf = _pf(M, idx, memo)
        out.append(-pf if i % 2 else pf)
    return out


def submax_pfaffians(M: SkewMatrix) -> Ideal:
    return Ideal(signed_submaximal_pfaffians(M), M.field)


def _quadratic_or_linear(name: str, linear: bool, field) -> HomogPoly:
    v = HomogPoly.variable(name, field)
    return v if linear else v * v


def build_U(m: int, j: int, field=DEFAULT_FIELD) -> list:
    """The m x m matrix ``U_m^j`` as a dense list of rows (zero entries degree 0)."""
    if m < 1 or not 0 <= j <= m:
        raise ValueError(f"need m >= 1 and 0 <= j <= m, got m={m}, j={j}")
    zero = HomogPoly.zero(0, field)
    U = [[zero] * m for _ in range(m)]
    U = [list(r) for r in U]
    for i in range(1, m + 1):
        linear = i > m - j
        for col, var in ((m - i, "x"), (m - i + 1, "z"), (m - i + 2, "y")):
            if 1 <= col <= m:
                U[i - 1][col - 1] = _quadratic_or_linear(var, linear, field)
    return U


def build_V(m: int, j: int, field=DEFAULT_FIELD) -> SkewMatrix:
    """The (2m+1) x (2m+1) skew matrix ``V_m^j`` (block layout in the module docstring)."""
    U = build_U(m, j, field)
    n = 2 * m + 1
    mid = m
    x2 = HomogPoly.variable("x", field) ** 2
    corner = _quadratic_or_linear("y", j == m, field)
    upper = {}
    # O_{x^2}: column block (rows 0..m-1, col m), x^2 in the last row.
    upper[(m - 1, mid)] = x2
    # ^{y^2}O: row m, columns m+1..2m, entry in the first position.
    upper[(mid, mid + 1)] = corner
    # U^T in rows 0..m-1, columns m+1..2m.
    for a in range(m):
        for b in range(m):
            f = U[b][a]
            if f:
                upper[(a, mid + 1 + b)] = f
    return SkewMatrix.from_upper(n, upper, field)
