"""Iterated trimming of minimal generators and the resolving mapping cone.

Given a resolution ``F`` of ``R/K`` and chosen summands ``e_0^1..e_0^m`` of
``F_1`` with ``d_1(e_0^i) = g_i``, trimming replaces each ``g_i`` by
``a_i g_i``. The resulting ideal ``J`` is resolved by the cone of a chain map

    top:    F_1' <- F_2 <- F_3 <- ...          (F_1' = complement of the e_0^i)
    bottom: R    <- ⊕ G^i_1 <- ⊕ G^i_2 <- ...  (G^i resolves R/a_i, shifted by deg g_i)

whose components are ``d_1|F_1'`` in degree 0 and lifts ``q_k`` above it.
The lifts are found by solving ``m_1 q_1 = d_0`` and ``m_k q_k = q_{k-1} d_{k+1}``
strand by strand, where ``d_0^i`` is the row of ``d_2`` at ``e_0^i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .complexes import (
    BettiTable,
    ChainComplex,
    ChainMap,
    ComplexError,
    GradedFreeModule,
    GradedMap,
    block_map,
    column_to_vector,
    is_minimal,
    mapping_cone,
    residue_koszul,
    vector_to_column,
)
from .ideal import Ideal, minimal_generators
from .linalg import InconsistentSystem, rank
from .poly import HomogPoly, variables
from .resolution import minimal_free_resolution


class LiftError(ValueError):
    """A lift does not exist; typically the containment d_0(F_2) ⊆ a·e_0 fails."""


def shift_complex(C: ChainComplex, a: int) -> ChainComplex:
    """``C(-a)``: every twist raised by ``a``."""
    modules = [m.shift(a) for m in C.modules]
    maps = [
        GradedMap(modules[k], modules[k - 1], C.d(k).entries, C.field)
        for k in range(1, len(modules))
    ]
    return ChainComplex(modules, maps, C.field, check=False)


@dataclass
class TrimmingData:
    F: ChainComplex
    cut: list
    ideals: list
    G: list
    lifts: dict = dc_field(default_factory=dict)

    @property
    def field(self):
        return self.F.field

    @property
    def m(self) -> int:
        return len(self.cut)

    @property
    def keep(self) -> list:
        return [k for k in range(self.F.module(1).rank) if k not in set(self.cut)]

    def cut_generator(self, i: int) -> HomogPoly:
        return self.F.d(1).entry(0, self.cut[i])

    def d0(self, i: int) -> GradedMap:
        """Row of ``d_2`` at ``e_0^i``, as a map ``F_2 -> R(-deg g_i) = G^i_0``."""
        return _retarget(self.F.d(2).restrict(rows=[self.cut[i]]), self.G[i].module(0))

    def d2_prime(self) -> GradedMap:
        return self.F.d(2).restrict(rows=self.keep)

    def lift(self, i: int, k: int) -> GradedMap:
        """``q_k^i: F_{k+1} -> G^i_k`` (zero where not computed or out of range)."""
        got = self.lifts.get((i, k))
        if got is not None:
            return got
        return GradedMap.zero(self.F.module(k + 1), self.G[i].module(k), self.field)

    def trimmed_generators(self) -> list:
        gens = [self.F.d(1).entry(0, k) for k in self.keep]
        for i in range(self.m):
            g = self.cut_generator(i)
            gens.extend(h * g for h in self.ideals[i].generators)
        return gens

    def trimmed_ideal(self) -> Ideal:
        return Ideal(self.trimmed_generators(), self.field)


def _retarget(phi: GradedMap, target: GradedFreeModule) -> GradedMap:
    if target.rank != phi.target.rank:
        raise ComplexError("rank mismatch when retargeting")
    return GradedMap(phi.source, target, phi.entries, phi.field)


def split_summands(F: ChainComplex, indices, a=None, check: bool = True) -> TrimmingData:
    """Choose summands ``e_0^i`` of ``F_1`` and ideals ``a_i`` (default R_+).

    The containment ``d_0^i(F_2) ⊆ a_i e_0^i`` is checked strandwise.
    """
    indices = list(indices)
    n1 = F.module(1).rank
    if len(set(indices)) != len(indices) or any(not 0 <= k < n1 for k in indices):
        raise ValueError(f"indices must be distinct and in range(0, {n1})")
    field = F.field
    if a is None:
        a = [None] * len(indices)
    ideals, G = [], []
    for k, ai in zip(indices, a):
        shift = F.module(1).twists[k]
        if ai is None:
            ai = Ideal(variables(field), field)
            res = residue_koszul(field)
        else:
            res = minimal_free_resolution(ai)
        ideals.append(ai)
        G.append(shift_complex(res, shift))
    T = TrimmingData(F, indices, ideals, G)
    if check:
        for i in range(T.m):
            row = T.d0(i)
            for f in row.entries.values():
                if not ideals[i].contains(f):
                    raise LiftError(f"d_0 entry {f} of summand {indices[i]} is not in a_{i + 1}")
    return T


def _solve_through(m_k: GradedMap, target: GradedMap) -> GradedMap:
    """``q`` with ``m_k q = target``, solved one source column at a time."""
    field = m_k.field
    src = target.source
    entries = {}
    for j, t in enumerate(src.twists):
        col = target.column(j)
        if not col:
            continue
        b = column_to_vector(col, m_k.target, t, field)
        A = m_k.strand_matrix(t)
        try:
            x = A.solve(b)
        except InconsistentSystem as exc:
            raise LiftError(f"no lift for column {j} in degree {t}") from exc
        for r, f in vector_to_column(x, m_k.source, t, field).items():
            entries[(r, j)] = f
    q = GradedMap(src, m_k.source, entries, field)
    if m_k.compose(q) != target:
        raise LiftError("lift fails to commute")
    return q


def lift_q1(T: TrimmingData) -> list:
    out = []
    for i in range(T.m):
        q = _solve_through(T.G[i].d(1), T.d0(i))
        T.lifts[(i, 1)] = q
        out.append(q)
    return out


def lift_qk(T: TrimmingData, k: int) -> list:
    if k < 2:
        raise ValueError("use lift_q1 for k = 1")
    out = []
    for i in range(T.m):
        if (i, k - 1) not in T.lifts:
            raise ValueError(f"q_{k - 1} for summand {i} is missing")
        target = T.lifts[(i, k - 1)].compose(T.F.d(k + 1))
        q = _solve_through(T.G[i].d(k), target)
        T.lifts[(i, k)] = q
        out.append(q)
    return out


def compute_lifts(T: TrimmingData) -> TrimmingData:
    if T.m == 0:
        return T
    lift_q1(T)
    top = max(T.F.length - 1, max(g.length for g in T.G))
    for k in range(2, top + 1):
        lift_qk(T, k)
    return T


def _stacked_lift(T: TrimmingData, k: int) -> GradedMap:
    rows = [T.G[i].module(k) for i in range(T.m)]
    blocks = {(i, 0): T.lift(i, k) for i in range(T.m)}
    return block_map(rows, [T.F.module(k + 1)], blocks, T.field)


def top_complex(T: TrimmingData) -> ChainComplex:
    """``F_1' <- F_2 <- F_3 <- ...``."""
    F = T.F
    keep = T.keep
    modules = [GradedFreeModule(tuple(F.module(1).twists[k] for k in keep))]
    modules += [F.module(k) for k in range(2, F.length + 1)]
    maps = []
    if len(modules) > 1:
        maps.append(_retarget(T.d2_prime(), modules[0]))
        maps += [F.d(k) for k in range(3, F.length + 1)]
    return ChainComplex(modules, maps, T.field)


def bottom_complex(T: TrimmingData) -> ChainComplex:
    """``R <- ⊕ G^i_1 <- ⊕ G^i_2 <- ...`` with augmentation ``-Σ m_1^i(-) g_i``."""
    field = T.field
    R = GradedFreeModule((0,))
    top = max(g.length for g in T.G)
    modules = [R]
    for k in range(1, top + 1):
        modules.append(GradedFreeModule(tuple(t for g in T.G for t in g.module(k).twists)))
    maps = []
    entries, off = {}, 0
    for i, g in enumerate(T.G):
        gi = T.cut_generator(i)
        for (_, c), f in g.d(1).entries.items():
            entries[(0, off + c)] = -(f * gi)
        off += g.module(1).rank
    maps.append(GradedMap(modules[1], R, entries, field))
    for k in range(2, top + 1):
        blocks = {(i, i): g.d(k) for i, g in enumerate(T.G)}
        maps.append(block_map([g.module(k - 1) for g in T.G], [g.module(k) for g in T.G],
                              blocks, field))
    return ChainComplex(modules, maps, field)


def trimming_chain_map(T: TrimmingData) -> ChainMap:
    if T.m and not T.lifts:
        compute_lifts(T)
    top, bottom = top_complex(T), bottom_complex(T)
    d1 = T.F.d(1).restrict(cols=T.keep)
    maps = [GradedMap(top.module(0), bottom.module(0), d1.entries, T.field)]
    for k in range(1, top.length + 1):
        maps.append(_stacked_lift(T, k))
    return ChainMap(top, bottom, maps)


def trimming_complex(T: TrimmingData, check: bool = True) -> ChainComplex:
    """The cone resolving ``R/J``; ``F`` itself when nothing is trimmed."""
    if T.m == 0:
        return T.F
    cone = mapping_cone(trimming_chain_map(T), check=check).trimmed()
    if check:
        J = T.trimmed_ideal()
        from .resolution import verify_resolution

        verify_resolution(cone, J, J.top_socle_degree() + cone.length + 1)
    return cone


def _graded_constant_rank(phi: GradedMap) -> dict:
    """Rank of ``phi ⊗ k`` split by twist (constants only join equal twists)."""
    const = phi.constant_part()
    out = {}
    for t in set(phi.source.twists):
        rows = [r for r, u in enumerate(phi.target.twists) if u == t]
        cols = [c for c, u in enumerate(phi.source.twists) if u == t]
        if rows and cols:
            r = rank(const[np.ix_(rows, cols)], phi.field)
            if r:
                out[t] = r
    return out


def lift_constant_ranks(T: TrimmingData, k: int) -> dict:
    """Graded rank of ``q_k ⊗ k`` (all summands stacked)."""
    if k < 1 or k + 1 > T.F.length:
        return {}
    return _graded_constant_rank(_stacked_lift(T, k))


def trimmed_betti(T: TrimmingData) -> BettiTable:
    """Betti table of ``R/J`` from ranks of ``F``, ``G^i`` and ``q_k ⊗ k`` alone."""
    if not is_minimal(T.F) or not all(is_minimal(g) for g in T.G):
        raise ValueError("trimmed_betti needs minimal F and G^i")
    if T.m and not T.lifts:
        compute_lifts(T)
    top = max([T.F.length] + [g.length for g in T.G])
    data = {(0, 0): 1}
    for i in range(1, top + 1):
        counts = {}
        twists = list(T.F.module(i).twists)
        if i == 1:
            twists = [twists[k] for k in T.keep]
        for g in T.G:
            twists += list(g.module(i).twists)
        for t in twists:
            counts[t] = counts.get(t, 0) + 1
        for ranks in (lift_constant_ranks(T, i), lift_constant_ranks(T, i - 1)):
            for t, r in ranks.items():
                counts[t] -= r
        for t, n in counts.items():
            if n < 0:
                raise AssertionError("negative Betti number from the trimming formula")
            if n:
                data[(i, t)] = n
    return BettiTable(data)


def trim_ideal(I_t: Ideal, cut, keep=None, a=None) -> Ideal:
    """Generators ``keep ∪ a_i · cut`` over a minimal generating list of ``I_t``."""
    gens = minimal_generators(I_t)
    cut = list(cut)
    if keep is None:
        keep = [k for k in range(len(gens)) if k not in set(cut)]
    if set(keep) & set(cut) or set(keep) | set(cut) != set(range(len(gens))):
        raise ValueError("keep and cut must partition the minimal generators")
    field = I_t.field
    a = a if a is not None else [None] * len(cut)
    out = [gens[k] for k in keep]
    for k, ai in zip(cut, a):
        hs = variables(field) if ai is None else list(ai.generators)
        out.extend(h * gens[k] for h in hs)
    return Ideal(out, field)


def trim_resolution(F: ChainComplex, cut, a=None, check: bool = True):
    """Convenience: ``(TrimmingData, cone)`` for the given resolution and cut."""
    T = split_summands(F, cut, a, check=check)
    compute_lifts(T)
    return T, trimming_complex(T, check=check)
