"""Minimal graded free resolutions of Artinian quotients R/I.

Syzygies are found degree by degree: in each internal degree the kernel of
the strand matrix is computed, and only the part not already spanned by
``R_1`` times the kernel one degree lower becomes new generators. This
yields minimal differentials directly.
"""

from __future__ import annotations

import numpy as np

from .complexes import ChainComplex, GradedFreeModule, GradedMap, vector_to_column
from .ideal import Ideal, NotArtinian, minimal_generators
from .linalg import independent_rows, kernel_basis, rref
from .pfaffian import SkewMatrix, signed_submaximal_pfaffians
from .poly import shift_indices, strand_dim


class IncompleteSyzygies(ValueError):
    """The degree bound was too small to capture every syzygy generator."""


class NotExact(ValueError):
    pass


def module_multiply_by_variables(V: np.ndarray, module: GradedFreeModule, d: int, field) -> np.ndarray:
    """Rows ``x*v, y*v, z*v`` in degree d+1 for rows ``v`` of degree d in ``module``."""
    src_off = module.offsets(d)
    dst_off = module.offsets(d + 1)
    out = field.zeros((3 * V.shape[0], module.strand_dim(d + 1)))
    k = V.shape[0]
    for i, t in enumerate(module.twists):
        n = strand_dim(d - t)
        if n == 0:
            continue
        block = V[:, src_off[i]: src_off[i] + n]
        for var in range(3):
            out[var * k:(var + 1) * k, dst_off[i] + shift_indices(d - t, var)] = block
    return out


def _kernel_in_degree(phi: GradedMap, d: int) -> np.ndarray:
    F = phi.field
    n = phi.source.strand_dim(d)
    if n == 0:
        return F.zeros((0, 0))
    if phi.target.strand_dim(d) == 0:
        K = kernel_basis(F.zeros((0, n)), F)
    else:
        K = kernel_basis(phi.strand_matrix(d).array, F)
    phi._ranks[d] = n - K.shape[0]
    return K


def syzygy_step(phi: GradedMap, degree_bound: int) -> GradedMap:
    """A minimal map ``ψ: G -> source(φ)`` with ``im ψ = ker φ`` through ``degree_bound``.

    Raises :class:`IncompleteSyzygies` if new generators would still appear
    in degree ``degree_bound + 1``.
    """
    F = phi.field
    module = phi.source
    if module.rank == 0:
        return GradedMap(GradedFreeModule(()), module, {}, F)
    lowest = min(module.twists)
    twists, columns = [], []
    prev = None
    for d in range(lowest, degree_bound + 2):
        K = _kernel_in_degree(phi, d)
        if prev is not None and prev.shape[0]:
            base = rref(module_multiply_by_variables(prev, module, d - 1, F), F)
        else:
            base = (F.zeros((0, K.shape[1])), [])
        if K.shape[0] > len(base[1]):
            if d > degree_bound:
                raise IncompleteSyzygies(
                    f"new syzygies in degree {d} beyond bound {degree_bound}"
                )
            chosen = independent_rows(K, F, base=base if base[1] else None)
            for c in chosen:
                twists.append(d)
                columns.append(vector_to_column(K[c], module, d, F))
        prev = K
    source = GradedFreeModule(tuple(twists))
    entries = {(i, j): f for j, col in enumerate(columns) for i, f in col.items()}
    return GradedMap(source, module, entries, F)


def generator_map(gens, field) -> GradedMap:
    """``d_1: ⊕ R(-deg g_i) -> R`` sending e_i to g_i."""
    src = GradedFreeModule(tuple(g.degree for g in gens))
    return GradedMap(src, GradedFreeModule((0,)), {(0, i): g for i, g in enumerate(gens)}, field)


def minimal_free_resolution(I: Ideal, bound: int | None = None, check: bool = True) -> ChainComplex:
    """Minimal graded free resolution of R/I (length 3 for Artinian R/I).

    The degree bound for step k defaults to ``σ + k + 1`` where σ is the top
    socle degree of R/I (Betti numbers vanish above ``σ + i``).
    """
    F = I.field
    hilb = I.hilbert_function(bound if bound is not None else None)
    sigma = len(hilb) - 1
    gens = minimal_generators(I)
    d1 = generator_map(gens, F)
    maps = [d1]
    for k in (1, 2):
        b = bound if bound is not None else sigma + k + 1
        maps.append(syzygy_step(maps[-1], b))
    b = bound if bound is not None else sigma + 4
    last = syzygy_step(maps[-1], b)
    if last.source.rank:
        raise NotExact("third differential is not injective")
    modules = [GradedFreeModule((0,))] + [m.source for m in maps]
    C = ChainComplex(modules, maps, F, check=check).trimmed()
    if check:
        verify_resolution(C, I, (bound if bound is not None else sigma + 4))
    return C


def verify_resolution(C: ChainComplex, I: Ideal, top: int) -> bool:
    """Strand-rank exactness through internal degree ``top``; raises :class:`NotExact`."""
    for j in range(top + 1):
        if C.strand_rank(1, j) != I.dim(j):
            raise NotExact(f"image of d_1 differs from I in degree {j}")
        for k in range(1, C.length + 1):
            lhs = C.strand_rank(k, j) + C.strand_rank(k + 1, j)
            if lhs != C.module(k).strand_dim(j):
                raise NotExact(f"homology at F_{k} in degree {j}")
    return True


def is_resolution_of(C: ChainComplex, I: Ideal, top: int | None = None) -> bool:
    if top is None:
        top = I.top_socle_degree() + C.length + 1
    try:
        return verify_resolution(C, I, top)
    except NotExact:
        return False


def buchsbaum_eisenbud(M: SkewMatrix, check: bool = True) -> ChainComplex:
    """``R <- R^n <- R^n <- R`` with maps ``p^T``, ``M``, ``p`` (p = signed Pfaffians)."""
    if M.n % 2 == 0:
        raise ValueError("Buchsbaum-Eisenbud needs an odd-size skew matrix")
    F = M.field
    p = signed_submaximal_pfaffians(M)
    if any(not f for f in p):
        raise ValueError("a submaximal Pfaffian vanishes; grading of F_1 undetermined")
    a = [f.degree for f in p]
    b = []
    for j in range(M.n):
        cands = {a[i] + M[i, j].degree for i in range(M.n) if M[i, j]}
        if len(cands) != 1:
            raise ValueError(f"column {j} of the matrix is not homogeneous")
        b.append(cands.pop())
    c = {b[j] + p[j].degree for j in range(M.n)}
    if len(c) != 1:
        raise ValueError("last map is not homogeneous")
    c = c.pop()
    F0, F1, F2, F3 = (GradedFreeModule(t) for t in ((0,), tuple(a), tuple(b), (c,)))
    d1 = GradedMap(F1, F0, {(0, i): p[i] for i in range(M.n)}, F)
    d2 = GradedMap(F2, F1, {(i, j): M[i, j] for i in range(M.n) for j in range(M.n) if M[i, j]}, F)
    d3 = GradedMap(F3, F2, {(j, 0): p[j] for j in range(M.n)}, F)
    C = ChainComplex([F0, F1, F2, F3], [d1, d2, d3], F, check=check)
    if check:
        I = Ideal(p, F)
        if not I.is_artinian():
            raise NotArtinian("Pfaffian ideal does not have grade 3")
    return C
