"""Homogeneous ideals of k[x, y, z] and their degree strands."""

from __future__ import annotations

from math import comb

import numpy as np

from .field import DEFAULT_FIELD
from .linalg import in_span, independent_rows, rref
from .poly import HomogPoly, shift_indices, strand_basis, strand_dim


class NotArtinian(ValueError):
    """The quotient R/I has no finite Hilbert function within the degree bound."""


def multiply_by_variables(V: np.ndarray, d: int, field=DEFAULT_FIELD) -> np.ndarray:
    """Rows ``x*v, y*v, z*v`` (in S_{d+1}) for every row ``v`` of ``V`` (in S_d)."""
    out = field.zeros((3 * V.shape[0], strand_dim(d + 1)))
    for var in range(3):
        out[var * V.shape[0]:(var + 1) * V.shape[0], shift_indices(d, var)] = V
    return out


class Ideal:
    """An ideal given by a list of homogeneous generators.

    Strands ``I_d`` are computed lazily as RREF row bases via
    ``I_d = R_1 * I_{d-1} + span(generators of degree d)``.
    """

    def __init__(self, generators, field=None):
        generators = [g for g in generators]
        if field is None:
            field = generators[0].field if generators else DEFAULT_FIELD
        for g in generators:
            if not isinstance(g, HomogPoly):
                raise TypeError("ideal generators must be HomogPoly")
            if g.field != field:
                raise ValueError("generator over a different field")
        self.generators = tuple(generators)
        self.field = field
        self._strands = {}
        self._mu = {}

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.generators]})"

    def nonzero_generators(self):
        return [g for g in self.generators if g]

    def generator_degrees(self) -> list:
        return sorted({g.degree for g in self.nonzero_generators()})

    def max_generator_degree(self) -> int:
        return max((g.degree for g in self.nonzero_generators()), default=0)

    def default_bound(self) -> int:
        return max(4 * self.max_generator_degree(), 8)

    def strand(self, d: int):
        """``(R, pivots)``: RREF basis of ``I_d`` in the monomial basis of S_d."""
        if d < 0:
            return self.field.zeros((0, 0)), []
        got = self._strands.get(d)
        if got is not None:
            return got
        for k in range(d + 1):
            if k not in self._strands:
                prev = self._strands[k - 1][0] if k else None
                self._strands[k] = self._step(k, prev)
        return self._strands[d]

    def _step(self, k: int, prev: np.ndarray):
        F = self.field
        n = strand_dim(k)
        parts = []
        if prev is not None and prev.shape[0]:
            if prev.shape[0] == strand_dim(k - 1):
                # I_{k-1} = S_{k-1}; then I_k = S_k.
                return _full(n, F)
            parts.append(multiply_by_variables(prev, k - 1, F))
        gens = [g.to_vector() for g in self.generators if g.degree == k and g]
        if gens:
            parts.append(np.stack(gens))
        if not parts:
            return F.zeros((0, n)), []
        return rref(np.concatenate(parts), F)

    def dim(self, d: int) -> int:
        return self.strand(d)[0].shape[0]

    def hilbert(self, d: int) -> int:
        """dim_k (R/I)_d."""
        return strand_dim(d) - self.dim(d)

    def hilbert_function(self, bound: int | None = None) -> list:
        """``[H(0), ..., H(σ)]`` up to the top socle degree σ; raises if not Artinian."""
        bound = self.default_bound() if bound is None else bound
        values = []
        for d in range(bound + 1):
            h = self.hilbert(d)
            if h == 0:
                return values
            values.append(h)
        raise NotArtinian(f"Hilbert function nonzero through degree {bound}")

    def is_artinian(self, bound: int | None = None) -> bool:
        try:
            self.hilbert_function(bound)
        except NotArtinian:
            return False
        return True

    def top_socle_degree(self, bound: int | None = None) -> int:
        return len(self.hilbert_function(bound)) - 1

    def contains(self, f: HomogPoly) -> bool:
        if not f:
            return True
        R, piv = self.strand(f.degree)
        return in_span(R, piv, f.to_vector().reshape(1, -1), self.field)

    def same_as(self, other: "Ideal", bound: int | None = None) -> bool:
        """Strandwise equality through the point where both strands are full."""
        bound = bound if bound is not None else max(self.default_bound(), other.default_bound())
        for d in range(bound + 1):
            a, b = self.dim(d), other.dim(d)
            if a != b:
                return False
            if a == strand_dim(d):
                return True
            R, piv = self.strand(d)
            if not in_span(R, piv, other.strand(d)[0], self.field):
                return False
        return True

    def lower_multiples(self, d: int):
        """RREF of ``R_1 * I_{d-1}`` inside S_d."""
        if d == 0:
            return self.field.zeros((0, 1)), []
        prev = self.strand(d - 1)[0]
        if prev.shape[0] == 0:
            return self.field.zeros((0, strand_dim(d))), []
        return rref(multiply_by_variables(prev, d - 1, self.field), self.field)

    def mu_in_degree(self, d: int) -> int:
        """Number of minimal generators of degree ``d``."""
        if d not in self._mu:
            self._mu[d] = self.dim(d) - self.lower_multiples(d)[0].shape[0]
        return self._mu[d]

    def quotient_basis(self, d: int) -> list:
        """Indices of standard monomials (non-pivots) spanning (R/I)_d."""
        _, piv = self.strand(d)
        pivset = set(piv)
        return [i for i in range(strand_dim(d)) if i not in pivset]

    def normal_form(self, vec: np.ndarray, d: int) -> np.ndarray:
        """Coordinates of ``vec`` (in S_d) in the standard-monomial basis of (R/I)_d."""
        R, piv = self.strand(d)
        vec = np.asarray(vec)
        if piv:
            vec = self.field.normalize(vec - self.field.matmul(vec[..., piv], R))
        return vec[..., self.quotient_basis(d)]


def _full(n, field):
    I = field.zeros((n, n))
    for i in range(n):
        I[i, i] = field(1)
    return I, list(range(n))


def minimal_generators(I: Ideal) -> list:
    """A minimal generating subset of ``I.generators`` (original order kept).

    Within each degree, generators are chosen greedily modulo ``R_1 I_{d-1}``
    so an already-minimal list comes back unchanged.
    """
    F = I.field
    keep = set()
    gens = I.nonzero_generators()
    for d in I.generator_degrees():
        base = I.lower_multiples(d)
        idx = [k for k, g in enumerate(gens) if g.degree == d]
        V = np.stack([gens[k].to_vector() for k in idx])
        chosen = independent_rows(V, F, base=base)
        keep.update(idx[c] for c in chosen)
    return [g for k, g in enumerate(gens) if k in keep]


def mu(I: Ideal) -> int:
    return len(minimal_generators(I))


def irrelevant_power(d: int, field=DEFAULT_FIELD) -> Ideal:
    """``R_+^d``, generated by all monomials of degree ``d``."""
    return Ideal([HomogPoly.monomial(m, 1, field) for m in strand_basis(d)], field)


def compressed_hilbert_bound(i: int, socle: dict, e: int = 3) -> int:
    """The compressed Hilbert value ``min{C(e-1+i, i), Σ c_l C(e-1+l-i, l-i)}``."""
    top = comb(e - 1 + i, i)
    dual = sum(c * comb(e - 1 + l - i, l - i) for l, c in socle.items() if l >= i)
    return min(top, dual)

