"""Graded free modules, graded maps, chain complexes, cones and Betti tables.

A map ``f: F -> G`` between graded free modules is stored sparsely as
``{(row, col): HomogPoly}``; the polynomial at ``(i, j)`` has degree
``F.twists[j] - G.twists[i]`` so that ``f`` is homogeneous of degree 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from .field import DEFAULT_FIELD
from .linalg import StrandMatrix, rank
from .poly import HomogPoly, strand_basis, strand_dim, strand_index, variables


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class GradedFreeModule:
    """The module ``R(-t_1) ⊕ ... ⊕ R(-t_n)``; order of twists is meaningful."""

    twists: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(int(t) for t in self.twists))

    @property
    def rank(self) -> int:
        return len(self.twists)

    def __len__(self):
        return len(self.twists)

    def strand_dim(self, d: int) -> int:
        return sum(strand_dim(d - t) for t in self.twists)

    def offsets(self, d: int) -> list:
        out, pos = [], 0
        for t in self.twists:
            out.append(pos)
            pos += strand_dim(d - t)
        return out

    def strand_labels(self, d: int) -> tuple:
        return tuple((i, m) for i, t in enumerate(self.twists) for m in strand_basis(d - t))

    def __add__(self, other: "GradedFreeModule") -> "GradedFreeModule":
        return GradedFreeModule(self.twists + other.twists)

    def shift(self, a: int) -> "GradedFreeModule":
        """Twist every summand by ``-a``."""
        return GradedFreeModule(tuple(t + a for t in self.twists))


@lru_cache(maxsize=None)
def _mult_index(d: int, m) -> np.ndarray:
    """Positions in S_{d+|m|} of the products m * (basis of S_d)."""
    target = strand_index(d + sum(m))
    return np.array(
        [target[(a + m[0], b + m[1], c + m[2])] for (a, b, c) in strand_basis(d)],
        dtype=np.intp,
    )


class GradedMap:
    """A degree-0 homomorphism between graded free modules."""

    __slots__ = ("source", "target", "entries", "field", "_strands", "_ranks")

    def __init__(self, source: GradedFreeModule, target: GradedFreeModule, entries=None,
                 field=DEFAULT_FIELD):
        self.source = source
        self.target = target
        self.field = field
        clean = {}
        for (i, j), f in (entries or {}).items():
            if not (0 <= i < target.rank and 0 <= j < source.rank):
                raise ComplexError(f"entry ({i}, {j}) outside a {target.rank}x{source.rank} map")
            if f is None or f == 0:
                continue
            want = source.twists[j] - target.twists[i]
            if f.degree != want:
                raise ComplexError(
                    f"entry ({i}, {j}) has degree {f.degree}, expected {want}"
                )
            clean[(i, j)] = f
        self.entries = clean
        self._strands = {}
        self._ranks = {}

    @classmethod
    def zero(cls, source, target, field=DEFAULT_FIELD) -> "GradedMap":
        return cls(source, target, {}, field)

    @classmethod
    def from_rows(cls, rows, source, target, field=DEFAULT_FIELD) -> "GradedMap":
        """Build from a dense list of rows (``None`` or zero allowed)."""
        entries = {}
        for i, row in enumerate(rows):
            for j, f in enumerate(row):
                if f is not None and f != 0:
                    entries[(i, j)] = f
        return cls(source, target, entries, field)

    @property
    def shape(self):
        return (self.target.rank, self.source.rank)

    def entry(self, i: int, j: int) -> HomogPoly:
        f = self.entries.get((i, j))
        if f is not None:
            return f
        return HomogPoly.zero(max(self.source.twists[j] - self.target.twists[i], 0), self.field)

    def dense(self) -> list:
        return [[self.entry(i, j) for j in range(self.source.rank)] for i in range(self.target.rank)]

    def column(self, j: int) -> dict:
        return {i: f for (i, jj), f in self.entries.items() if jj == j}

    def row(self, i: int) -> dict:
        return {j: f for (ii, j), f in self.entries.items() if ii == i}

    def is_zero(self) -> bool:
        return not self.entries

    def compose(self, other: "GradedMap") -> "GradedMap":
        """``self ∘ other``."""
        if other.target != self.source:
            raise ComplexError(
                f"cannot compose: {other.target.twists} vs {self.source.twists}"
            )
        by_row = {}
        for (j, k), g in other.entries.items():
            by_row.setdefault(j, []).append((k, g))
        acc = {}
        for (i, j), f in self.entries.items():
            for k, g in by_row.get(j, ()):
                prod = f * g
                key = (i, k)
                acc[key] = acc[key] + prod if key in acc else prod
        return GradedMap(other.source, self.target, acc, self.field)

    __matmul__ = compose

    def __add__(self, other: "GradedMap") -> "GradedMap":
        if other.source != self.source or other.target != self.target:
            raise ComplexError("cannot add maps with different source/target")
        acc = dict(self.entries)
        for k, g in other.entries.items():
            acc[k] = acc[k] + g if k in acc else g
        return GradedMap(self.source, self.target, acc, self.field)

    def __neg__(self) -> "GradedMap":
        return GradedMap(self.source, self.target, {k: -f for k, f in self.entries.items()},
                         self.field)

    def __sub__(self, other: "GradedMap") -> "GradedMap":
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, GradedMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and (self - other).is_zero())

    __hash__ = None

    def restrict(self, rows=None, cols=None) -> "GradedMap":
        """Submatrix on the given row and column index lists (in that order)."""
        rows = list(range(self.target.rank)) if rows is None else list(rows)
        cols = list(range(self.source.rank)) if cols is None else list(cols)
        rpos = {r: a for a, r in enumerate(rows)}
        cpos = {c: b for b, c in enumerate(cols)}
        entries = {
            (rpos[i], cpos[j]): f
            for (i, j), f in self.entries.items()
            if i in rpos and j in cpos
        }
        src = GradedFreeModule(tuple(self.source.twists[c] for c in cols))
        tgt = GradedFreeModule(tuple(self.target.twists[r] for r in rows))
        return GradedMap(src, tgt, entries, self.field)

    def constant_part(self) -> np.ndarray:
        """The scalar matrix ``f ⊗ k`` (degree-0 entries only)."""
        M = self.field.zeros(self.shape)
        for (i, j), f in self.entries.items():
            if f.degree == 0:
                M[i, j] = f.constant_term()
        return M

    def strand_matrix(self, d: int) -> StrandMatrix:
        """Matrix of the degree-``d`` piece; columns index the source strand."""
        cached = self._strands.get(d)
        if cached is not None:
            return cached
        F = self.field
        M = F.zeros((self.target.strand_dim(d), self.source.strand_dim(d)))
        roff = self.target.offsets(d)
        coff = self.source.offsets(d)
        for (i, j), f in self.entries.items():
            cdeg = d - self.source.twists[j]
            if cdeg < 0:
                continue
            ncols = strand_dim(cdeg)
            cols = coff[j] + np.arange(ncols)
            for m, c in f.terms.items():
                rows = roff[i] + _mult_index(cdeg, m)
                M[rows, cols] = F.normalize(M[rows, cols] + c)
        sm = StrandMatrix(M, self.target.strand_labels(d), self.source.strand_labels(d), F)
        self._strands[d] = sm
        return sm

    def strand_rank(self, d: int) -> int:
        if d not in self._ranks:
            if self.source.strand_dim(d) == 0 or self.target.strand_dim(d) == 0:
                self._ranks[d] = 0
            else:
                self._ranks[d] = rank(self.strand_matrix(d).array, self.field)
        return self._ranks[d]

    def apply_vector(self, vec, d: int) -> np.ndarray:
        """Image of a source strand vector of internal degree ``d``."""
        return self.field.matmul(self.strand_matrix(d).array, np.asarray(vec).reshape(-1, 1)).reshape(-1)

    def __repr__(self):
        return f"GradedMap({self.target.rank}x{self.source.rank}, nnz={len(self.entries)})"

    def pretty(self) -> str:
        rows = []
        for i in range(self.target.rank):
            rows.append(", ".join(str(self.entry(i, j)) for j in range(self.source.rank)))
        return "\n".join(rows)


def vector_to_column(vec, module: GradedFreeModule, d: int, field=DEFAULT_FIELD) -> dict:
    """Split a strand vector of ``module`` in degree ``d`` into polynomial entries."""
    out = {}
    offs = module.offsets(d)
    for i, t in enumerate(module.twists):
        n = strand_dim(d - t)
        if n == 0:
            continue
        piece = vec[offs[i]: offs[i] + n]
        if np.any(piece):
            out[i] = HomogPoly.from_vector(piece, d - t, field)
    return out


def column_to_vector(column: dict, module: GradedFreeModule, d: int, field=DEFAULT_FIELD) -> np.ndarray:
    vec = field.zeros(module.strand_dim(d))
    offs = module.offsets(d)
    for i, f in column.items():
        if f == 0:
            continue
        if f.degree != d - module.twists[i]:
            raise ComplexError("column entry has the wrong degree")
        n = strand_dim(f.degree)
        vec[offs[i]: offs[i] + n] = f.to_vector()
    return vec


class ChainComplex:
    """``F_0 <- F_1 <- ... <- F_n``; ``maps[k-1]`` is ``d_k: F_k -> F_{k-1}``."""

    def __init__(self, modules, maps, field=DEFAULT_FIELD, check: bool = True):
        self.modules = [m if isinstance(m, GradedFreeModule) else GradedFreeModule(m) for m in modules]
        self.maps = list(maps)
        self.field = field
        if len(self.maps) != max(len(self.modules) - 1, 0):
            raise ComplexError("need exactly one differential per positive index")
        for k, d in enumerate(self.maps, start=1):
            if d.source != self.modules[k] or d.target != self.modules[k - 1]:
                raise ComplexError(f"d_{k} does not go F_{k} -> F_{k-1}")
        if check and not verify_complex(self):
            raise ComplexError("d∘d != 0")

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def module(self, k: int) -> GradedFreeModule:
        if 0 <= k < len(self.modules):
            return self.modules[k]
        return GradedFreeModule(())

    def d(self, k: int) -> GradedMap:
        if 1 <= k < len(self.modules):
            return self.maps[k - 1]
        return GradedMap.zero(self.module(k), self.module(k - 1), self.field)

    def ranks(self) -> tuple:
        return tuple(m.rank for m in self.modules)

    def strand_rank(self, k: int, j: int) -> int:
        d = self.d(k)
        if d.source.rank == 0 or d.target.rank == 0:
            return 0
        return d.strand_rank(j)

    def homology_dim(self, k: int, j: int) -> int:
        """dim_k H_k(C)_j computed from strand ranks."""
        return self.module(k).strand_dim(j) - self.strand_rank(k, j) - self.strand_rank(k + 1, j)

    def max_twist(self) -> int:
        return max((t for m in self.modules for t in m.twists), default=0)

    def trimmed(self) -> "ChainComplex":
        """Drop trailing zero modules."""
        n = len(self.modules)
        while n > 1 and self.modules[n - 1].rank == 0:
            n -= 1
        return ChainComplex(self.modules[:n], self.maps[: n - 1], self.field, check=False)

    def __repr__(self):
        return f"ChainComplex(ranks={self.ranks()})"


def verify_complex(C: ChainComplex) -> bool:
    """True iff every composite d_k ∘ d_{k+1} vanishes identically."""
    for k in range(1, len(C.modules) - 1):
        if not C.d(k).compose(C.d(k + 1)).is_zero():
            return False
    return True


def koszul_complex(polys, field=None) -> ChainComplex:
    """Koszul complex on homogeneous polynomials ``f_1..f_n``.

    ``K_i`` has one summand per ``i``-subset ``S`` (lex order), twisted by
    the sum of degrees, and ``d(e_S) = Σ_t (-1)^t f_{S_t} e_{S - S_t}``.
    """
    polys = list(polys)
    if field is None:
        field = polys[0].field if polys else DEFAULT_FIELD
    n = len(polys)
    subsets = [list(itertools.combinations(range(n), i)) for i in range(n + 1)]
    modules = [
        GradedFreeModule(tuple(sum(polys[a].degree for a in S) for S in subsets[i]))
        for i in range(n + 1)
    ]
    maps = []
    for i in range(1, n + 1):
        index = {S: r for r, S in enumerate(subsets[i - 1])}
        entries = {}
        for c, S in enumerate(subsets[i]):
            for t, a in enumerate(S):
                rest = S[:t] + S[t + 1:]
                f = polys[a] if t % 2 == 0 else -polys[a]
                entries[(index[rest], c)] = f
        maps.append(GradedMap(modules[i], modules[i - 1], entries, field))
    return ChainComplex(modules, maps, field)


def residue_koszul(field=DEFAULT_FIELD) -> ChainComplex:
    """Koszul complex on (x, y, z), the minimal resolution of k = R/R_+."""
    return koszul_complex(variables(field), field)


def block_map(row_modules, col_modules, blocks, field=DEFAULT_FIELD) -> GradedMap:
    """Assemble a map ``⊕ col_modules -> ⊕ row_modules`` from ``{(r, c): GradedMap}``."""
    roffs = list(itertools.accumulate([0] + [m.rank for m in row_modules]))
    coffs = list(itertools.accumulate([0] + [m.rank for m in col_modules]))
    source = GradedFreeModule(tuple(t for m in col_modules for t in m.twists))
    target = GradedFreeModule(tuple(t for m in row_modules for t in m.twists))
    entries = {}
    for (r, c), blk in blocks.items():
        if blk.source != col_modules[c] or blk.target != row_modules[r]:
            raise ComplexError(f"block ({r}, {c}) has mismatched modules")
        for (i, j), f in blk.entries.items():
            entries[(roffs[r] + i, coffs[c] + j)] = f
    return GradedMap(source, target, entries, field)


@dataclass
class ChainMap:
    """A morphism of complexes given by ``maps[k]: source_k -> target_k``."""

    source: ChainComplex
    target: ChainComplex
    maps: list = dc_field(default_factory=list)

    def component(self, k: int) -> GradedMap:
        if 0 <= k < len(self.maps):
            return self.maps[k]
        return GradedMap.zero(self.source.module(k), self.target.module(k), self.source.field)

    def commutes(self) -> bool:
        top = max(self.source.length, self.target.length) + 1
        for k in range(1, top + 1):
            lhs = self.target.d(k).compose(self.component(k))
            rhs = self.component(k - 1).compose(self.source.d(k))
            if not (lhs - rhs).is_zero():
                return False
        return True


def mapping_cone(alpha: ChainMap, check: bool = True) -> ChainComplex:
    """Cone of ``alpha: A -> B``: ``C_n = A_{n-1} ⊕ B_n``.

    The differential is ``[[-d^A_{n-1}, 0], [alpha_{n-1}, d^B_n]]``.
    """
    A, B = alpha.source, alpha.target
    field = A.field
    if check and not alpha.commutes():
        raise ComplexError("morphism does not commute with the differentials")
    top = max(A.length + 1, B.length)
    modules = [A.module(n - 1) + B.module(n) for n in range(top + 1)]
    maps = []
    for n in range(1, top + 1):
        rows = [A.module(n - 2), B.module(n - 1)]
        cols = [A.module(n - 1), B.module(n)]
        blocks = {
            (0, 0): -A.d(n - 1),
            (1, 0): alpha.component(n - 1),
            (1, 1): B.d(n),
        }
        maps.append(block_map(rows, cols, blocks, field))
    cone = ChainComplex(modules, maps, field, check=check)
    return cone


def minimalize(C: ChainComplex) -> ChainComplex:
    """Cancel unit entries until every differential has entries in R_+.

    Each step picks a unit ``u = d_k[a, b]`` and replaces
    ``d_k`` by ``δ - γ u^{-1} β`` on the complementary summands, dropping
    row ``b`` of ``d_{k+1}`` and column ``a`` of ``d_{k-1}``.
    """
    F = C.field
    n = len(C.modules)
    twists = [list(m.twists) for m in C.modules]
    alive = [list(range(len(t))) for t in twists]
    # maps[k] holds d_k as {(row, col): poly} with original indices.
    maps = [None] + [dict(C.d(k).entries) for k in range(1, n)]

    while True:
        found = None
        for k in range(1, n):
            for (a, b), f in maps[k].items():
                if f.degree == 0 and f:
                    found = (k, a, b, f)
                    break
            if found:
                break
        if not found:
            break
        k, a, b, u = found
        uinv = F.inv(u.constant_term())
        col_b = {i: f for (i, j), f in maps[k].items() if j == b and i != a}
        row_a = {j: f for (i, j), f in maps[k].items() if i == a and j != b}
        new = {(i, j): f for (i, j), f in maps[k].items() if i != a and j != b}
        for i, g in col_b.items():
            g = g.scale(uinv)
            for j, h in row_a.items():
                key = (i, j)
                val = new[key] - g * h if key in new else -(g * h)
                if val:
                    new[key] = val
                else:
                    new.pop(key, None)
        maps[k] = new
        if k + 1 < n:
            maps[k + 1] = {(i, j): f for (i, j), f in maps[k + 1].items() if i != b}
        if k - 1 >= 1:
            maps[k - 1] = {(i, j): f for (i, j), f in maps[k - 1].items() if j != a}
        alive[k].remove(b)
        alive[k - 1].remove(a)

    modules = [GradedFreeModule(tuple(twists[k][i] for i in alive[k])) for k in range(n)]
    pos = [{old: new for new, old in enumerate(alive[k])} for k in range(n)]
    new_maps = []
    for k in range(1, n):
        entries = {(pos[k - 1][i], pos[k][j]): f for (i, j), f in maps[k].items()}
        new_maps.append(GradedMap(modules[k], modules[k - 1], entries, F))
    return ChainComplex(modules, new_maps, F, check=False).trimmed()


def is_minimal(C: ChainComplex) -> bool:
    return all(
        not (f.degree == 0 and f)
        for k in range(1, len(C.modules))
        for f in C.d(k).entries.values()
    )


class BettiTable:
    """Graded Betti numbers ``β_{i,j}`` stored as ``{(i, j): n}``."""

    def __init__(self, data=None):
        self.data = {k: int(v) for k, v in (data or {}).items() if v}
        if any(v < 0 for v in self.data.values()):
            raise ValueError("Betti numbers must be non-negative")

    @classmethod
    def from_complex(cls, C: ChainComplex) -> "BettiTable":
        data = {}
        for i, m in enumerate(C.modules):
            for t in m.twists:
                data[(i, t)] = data.get((i, t), 0) + 1
        return cls(data)

    def __getitem__(self, key) -> int:
        return self.data.get(tuple(key), 0)

    def __eq__(self, other):
        if isinstance(other, BettiTable):
            return self.data == other.data
        if isinstance(other, dict):
            return self.data == BettiTable(other).data
        return NotImplemented

    __hash__ = None

    def totals(self) -> tuple:
        n = max((i for i, _ in self.data), default=-1) + 1
        return tuple(sum(v for (i, _), v in self.data.items() if i == k) for k in range(n))

    def leq(self, other: "BettiTable") -> bool:
        return all(v <= other[k] for k, v in self.data.items())

    def rows(self) -> dict:
        """``{j - i: {i: β_{i,j}}}``, the row layout of the printed table."""
        out = {}
        for (i, j), v in sorted(self.data.items()):
            out.setdefault(j - i, {})[i] = v
        return dict(sorted(out.items()))

    def render(self) -> str:
        ncols = max(4, max((i for i, _ in self.data), default=0) + 1)
        rows = self.rows()
        label_w = max([len(str(r)) for r in rows] + [1])
        cells = [[str(rows[r].get(i, 0)) for i in range(ncols)] for r in rows]
        w = max([len(c) for row in cells for c in row] + [len(str(ncols - 1))])
        header = " " * label_w + " | " + " ".join(str(i).rjust(w) for i in range(ncols))
        lines = [header, "-" * len(header)]
        for r, row in zip(rows, cells):
            lines.append(str(r).rjust(label_w) + " | " + " ".join(c.rjust(w) for c in row))
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {f"{i},{j}": v for (i, j), v in sorted(self.data.items())}

    @classmethod
    def from_dict(cls, data: dict) -> "BettiTable":
        out = {}
        for key, v in data.items():
            i, j = (int(t) for t in key.split(","))
            out[(i, j)] = v
        return cls(out)

    def __repr__(self):
        return f"BettiTable({self.data})"


def betti_table(C: ChainComplex, minimal: bool = False) -> BettiTable:
    """Betti table of ``C``; unless ``minimal`` is set, ``C`` is minimalized first."""
    if not minimal:
        C = minimalize(C)
    return BettiTable.from_complex(C)
