"""Macaulay inverse systems in three variables.

Dual polynomials are written in the divided-power basis ``X^(A) Y^(B) Z^(C)``
and the contraction action is normalized by

    x^a y^b z^c . X^(A) Y^(B) Z^(C) = X^(A-a) Y^(B-b) Z^(C-c)

(zero when an exponent goes negative). In these coordinates the pairing
``S_d x D_d -> k`` is the standard dot product of coefficient vectors, so
``I_d`` and the degree-d part of its inverse system are orthogonal
complements.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from math import comb

import numpy as np

from .field import DEFAULT_FIELD
from .ideal import Ideal, NotArtinian, compressed_hilbert_bound, minimal_generators
from .linalg import StrandMatrix, independent_rows, kernel_basis, rank, rref
from .poly import HomogPoly, shift_indices, strand_basis, strand_dim, strand_index

DUAL_NAMES = ("X", "Y", "Z")


class DualPoly(HomogPoly):
    """A homogeneous element of the divided power algebra D(V*)."""

    __slots__ = ()

    @classmethod
    def of(cls, f: HomogPoly) -> "DualPoly":
        obj = cls.__new__(cls)
        obj.degree, obj.terms, obj.field = f.degree, dict(f.terms), f.field
        return obj

    def __str__(self):
        text = HomogPoly.__str__(self)
        for lo, up in zip("xyz", DUAL_NAMES):
            text = text.replace(lo, up)
        return text

    def __repr__(self):
        return f"DualPoly({str(self)!r}, degree={self.degree})"


def contract(f: HomogPoly, phi: HomogPoly) -> DualPoly:
    """``f . phi`` for the divided-power contraction action."""
    if f.degree > phi.degree:
        raise ValueError(f"cannot contract degree {phi.degree} by degree {f.degree}")
    F = phi.field
    out = {}
    for m, c in f.terms.items():
        for M, C in phi.terms.items():
            r = (M[0] - m[0], M[1] - m[1], M[2] - m[2])
            if min(r) < 0:
                continue
            out[r] = out.get(r, 0) + c * C
    return DualPoly.of(HomogPoly(phi.degree - f.degree, out, F))


@dataclass
class InverseSystem:
    """Generators ``phi_1..phi_k`` of a graded submodule of D(V*)."""

    generators: list
    field: object = DEFAULT_FIELD

    def __post_init__(self):
        self.generators = [DualPoly.of(g) for g in self.generators]
        if any(not g for g in self.generators):
            raise ValueError("inverse system generators must be nonzero")
        if self.generators:
            self.field = self.generators[0].field

    @property
    def degrees(self) -> list:
        return [g.degree for g in self.generators]

    def __len__(self):
        return len(self.generators)


def phi_matrix(N: InverseSystem, i: int) -> StrandMatrix:
    """Matrix of ``Φ_i: S_i -> ⊕_j D_{s_j - i}``; rows index S_i, columns the codomain."""
    F = N.field
    rows = strand_basis(i)
    blocks, labels = [], []
    for j, phi in enumerate(N.generators):
        e = phi.degree - i
        if e < 0:
            continue
        cod = strand_basis(e)
        target = strand_index(phi.degree)
        vec = phi.to_vector()
        block = F.zeros((len(rows), len(cod)))
        for a, m in enumerate(rows):
            idx = [target[(m[0] + M[0], m[1] + M[1], m[2] + M[2])] for M in cod]
            block[a] = vec[idx]
        blocks.append(block)
        labels.extend((j, M) for M in cod)
    arr = np.concatenate(blocks, axis=1) if blocks else F.zeros((len(rows), 0))
    return StrandMatrix(arr, rows, tuple(labels), F)


def tipping_point(N: InverseSystem) -> int:
    """Least ``m`` for which ``Φ_m`` is surjective."""
    if not N.generators:
        raise ValueError("empty inverse system")
    for m in range(max(N.degrees) + 2):
        P = phi_matrix(N, m)
        if rank(P.array, N.field) == P.shape[1]:
            return m
    raise AssertionError("unreachable: Φ is surjective past the top degree")


def annihilator(N: InverseSystem, bound: int | None = None) -> Ideal:
    """The ideal ``0 :_R N`` with a minimal generating set.

    ``bound`` (default: top generator degree + 1) must be at least the top
    generator degree + 1, where the annihilator contains all of S_bound.
    """
    F = N.field
    top = max(N.degrees)
    if bound is None:
        bound = top + 1
    if bound < top + 1:
        raise ValueError(f"bound {bound} too small; need at least {top + 1}")
    gens = []
    for i in range(top + 1):
        P = phi_matrix(N, i).array
        K = kernel_basis(P.T, F) if P.shape[1] else _eye(strand_dim(i), F)
        gens.extend(HomogPoly.from_vector(v, i, F) for v in K)
    gens.extend(HomogPoly.monomial(m, 1, F) for m in strand_basis(top + 1))
    return Ideal(minimal_generators(Ideal(gens, F)), F)


def _eye(n, F):
    M = F.zeros((n, n))
    for i in range(n):
        M[i, i] = F(1)
    return M


def dual_contract_by_variables(V: np.ndarray, d: int) -> np.ndarray:
    """Rows ``x.v, y.v, z.v`` in D_{d-1} for rows ``v`` in D_d."""
    return np.concatenate([V[:, shift_indices(d - 1, var)] for var in range(3)])


def inverse_system(I: Ideal, bound: int | None = None) -> InverseSystem:
    """Minimal generators of ``0 :_{D} I`` (top degree down)."""
    F = I.field
    sigma = I.top_socle_degree(bound)
    gens = []
    above = None
    for d in range(sigma, -1, -1):
        R, _ = I.strand(d)
        perp = kernel_basis(R, F) if R.shape[0] else _eye(strand_dim(d), F)
        if above is not None and above.shape[0]:
            base = rref(dual_contract_by_variables(above, d + 1), F)
            chosen = independent_rows(perp, F, base=base if base[1] else None)
        else:
            chosen = list(range(perp.shape[0]))
        gens.extend(HomogPoly.from_vector(perp[c], d, F) for c in chosen)
        above = perp
    return InverseSystem(gens, F)


def socle(I: Ideal, bound: int | None = None):
    """Graded socle of R/I: ``({degree: dim}, {degree: [representatives]})``."""
    F = I.field
    sigma = I.top_socle_degree(bound)
    dims, reps = {}, {}
    for d in range(sigma + 1):
        n = strand_dim(d)
        R, piv = I.strand(d)
        # f -> (x f, y f, z f) modulo I_{d+1}
        blocks = []
        for var in range(3):
            M = F.zeros((n, strand_dim(d + 1)))
            M[np.arange(n), shift_indices(d, var)] = F(1)
            blocks.append(I.normal_form(M, d + 1))
        A = np.concatenate(blocks, axis=1)
        K = kernel_basis(A.T, F) if A.shape[1] else _eye(n, F)
        chosen = independent_rows(K, F, base=(R, piv) if piv else None)
        if chosen:
            dims[d] = len(chosen)
            reps[d] = [HomogPoly.from_vector(K[c], d, F) for c in chosen]
    return dims, reps


@dataclass
class CompressedCheck:
    compressed: bool
    failing_degree: int | None
    hilbert: list
    bound: list

    def __bool__(self):
        return self.compressed


def is_compressed(I: Ideal, bound: int | None = None) -> CompressedCheck:
    """Compare the Hilbert function with the compressed maximum in degrees 0..s."""
    hilb = I.hilbert_function(bound)
    soc, _ = socle(I, bound)
    e = hilb[1] if len(hilb) > 1 else 0
    expected = [compressed_hilbert_bound(i, soc, e) for i in range(len(hilb))]
    for i, (h, b) in enumerate(zip(hilb, expected)):
        if h != b:
            return CompressedCheck(False, i, hilb, expected)
    return CompressedCheck(True, None, hilb, expected)


@dataclass
class ArtinianProfile:
    hilbert: list
    socle_polynomial: dict
    top_socle_degree: int
    type: int
    tipping_point: int
    compressed: bool
    embedding_dimension: int
    s: int | None = None
    ell: int | None = None

    @property
    def matches_setup(self) -> bool:
        """Socle exactly ``k(-s)^ell ⊕ k(-2s+1)`` with s >= 3, ell >= 1, and compressed."""
        return self.s is not None and self.ell is not None and self.compressed

    def as_dict(self) -> dict:
        return {
            "hilbert": self.hilbert,
            "socle_polynomial": {str(k): v for k, v in sorted(self.socle_polynomial.items())},
            "top_socle_degree": self.top_socle_degree,
            "type": self.type,
            "tipping_point": self.tipping_point,
            "compressed": self.compressed,
            "embedding_dimension": self.embedding_dimension,
            "s": self.s,
            "ell": self.ell,
        }


def socle_shape(soc: dict):
    """``(s, ell)`` when the socle is ``k(-s)^ell ⊕ k(-2s+1)`` with s >= 3, else ``(None, None)``."""
    if not soc:
        return None, None
    top = max(soc)
    if soc[top] != 1 or top % 2 == 0:
        return None, None
    s = (top + 1) // 2
    rest = {d: c for d, c in soc.items() if d != top}
    if s < 3:
        return None, None
    if not rest:
        return s, 0
    if set(rest) != {s}:
        return None, None
    return s, rest[s]


def profile(I: Ideal, bound: int | None = None) -> ArtinianProfile:
    hilb = I.hilbert_function(bound)
    soc, _ = socle(I, bound)
    comp = is_compressed(I, bound)
    s, ell = socle_shape(soc)
    return ArtinianProfile(
        hilbert=hilb,
        socle_polynomial=soc,
        top_socle_degree=len(hilb) - 1,
        type=sum(soc.values()),
        tipping_point=tipping_point(inverse_system(I, bound)),
        compressed=bool(comp),
        embedding_dimension=hilb[1] if len(hilb) > 1 else 0,
        s=s,
        ell=ell,
    )


def random_dual(d: int, rng: random.Random, field=DEFAULT_FIELD) -> DualPoly:
    """Dual form of degree ``d`` with independent uniform nonzero coefficients."""
    terms = {m: field.random_element(rng, nonzero=True) for m in strand_basis(d)}
    return DualPoly.of(HomogPoly(d, terms, field))


class InstanceExhausted(RuntimeError):
    pass


@dataclass
class Instance:
    """A compressed instance with socle ``k(-s)^ell ⊕ k(-2s+1)``."""

    s: int
    ell: int
    seed: int
    I: Ideal
    I_t: Ideal
    N: InverseSystem
    attempts: int = 1
    notes: list = dc_field(default_factory=list)

    @property
    def top_dual(self) -> DualPoly:
        return self.N.generators[-1]

    @property
    def small_duals(self) -> list:
        return self.N.generators[:-1]


def random_instance(s: int, ell: int, seed: int = 0, field=DEFAULT_FIELD,
                    max_tries: int = 20) -> Instance:
    """``I = ann(phi_1..phi_ell, phi_t)`` with deg phi_i = s, deg phi_t = 2s-1; ``I_t = ann(phi_t)``.

    Each draw is validated (compressed, socle exactly k(-s)^ell ⊕ k(-2s+1),
    I_t compressed Gorenstein) and redrawn from the same stream otherwise.
    """
    if s < 3:
        raise ValueError("need s >= 3")
    if not 1 <= ell <= s + 1:
        raise ValueError(f"need 1 <= ell <= s + 1 = {s + 1}, got ell = {ell}")
    if field.characteristic and field.characteristic <= 4 * s:
        raise ValueError(f"characteristic must exceed 4s = {4 * s}")
    rng = random.Random(seed)
    for attempt in range(1, max_tries + 1):
        duals = [random_dual(s, rng, field) for _ in range(ell)]
        top = random_dual(2 * s - 1, rng, field)
        N = InverseSystem(duals + [top], field)
        I = annihilator(N)
        I_t = annihilator(InverseSystem([top], field))
        if _valid(I, I_t, s, ell):
            return Instance(s, ell, seed, I, I_t, N, attempts=attempt)
    raise InstanceExhausted(f"no valid instance for s={s}, ell={ell} in {max_tries} draws")


def _valid(I: Ideal, I_t: Ideal, s: int, ell: int) -> bool:
    try:
        soc, _ = socle(I)
        soc_t, _ = socle(I_t)
    except NotArtinian:
        return False
    if soc != {s: ell, 2 * s - 1: 1} or soc_t != {2 * s - 1: 1}:
        return False
    return bool(is_compressed(I)) and bool(is_compressed(I_t))


@dataclass
class GensetDecomposition:
    """``I = (phi_1..phi_{s+1-ell}, psi_1..psi_b) + R_+ (phi_{s+2-ell}..phi_{s+1})``."""

    s: int
    ell: int
    phis: list
    psis: list

    @property
    def b(self) -> int:
        return len(self.psis)

    @property
    def kept(self) -> list:
        return self.phis[: self.s + 1 - self.ell]

    @property
    def cut(self) -> list:
        return self.phis[self.s + 1 - self.ell:]

    def generators_of_top(self) -> list:
        """Minimal generators of I_t in the order phi_1..phi_{s+1}, psi_1..psi_b."""
        return list(self.phis) + list(self.psis)

    def cut_indices(self) -> list:
        return list(range(self.s + 1 - self.ell, self.s + 1))

    def trimmed_generators(self) -> list:
        F = self.phis[0].field
        xs = [HomogPoly.variable(v, F) for v in "xyz"]
        return self.kept + self.psis + [v * g for g in self.cut for v in xs]


class DecompositionError(ValueError):
    pass


def genset_decomposition(I: Ideal, I_t: Ideal, s: int | None = None) -> GensetDecomposition:
    """Minimal generators of I_t adapted to I, and the trimmed presentation of I."""
    F = I.field
    if s is None:
        sigma_t = I_t.top_socle_degree()
        if sigma_t % 2 == 0:
            raise DecompositionError("top socle degree of R/I_t must be odd (2s - 1)")
        s = (sigma_t + 1) // 2
    Rs, piv_s = I.strand(s)
    Rt, piv_t = I_t.strand(s)
    if Rt.shape[0] != s + 1:
        raise DecompositionError(f"dim (I_t)_s = {Rt.shape[0]}, expected {s + 1}")
    ell = Rt.shape[0] - Rs.shape[0]
    extra = independent_rows(Rt, F, base=(Rs, piv_s) if piv_s else None)
    phis = [HomogPoly.from_vector(v, s, F) for v in Rs]
    phis += [HomogPoly.from_vector(Rt[c], s, F) for c in extra]
    if len(phis) != s + 1:
        raise DecompositionError("I_s is not contained in (I_t)_s")
    # psi: complement of R_+ (I_t)_s inside I_{s+1} = (I_t)_{s+1}
    R1, _ = I.strand(s + 1)
    base = rref(np.concatenate([g.to_vector().reshape(1, -1) for g in phis]), F)
    from .ideal import multiply_by_variables

    mult = rref(multiply_by_variables(base[0], s, F), F)
    chosen = independent_rows(R1, F, base=mult if mult[1] else None)
    psis = [HomogPoly.from_vector(R1[c], s + 1, F) for c in chosen]
    dec = GensetDecomposition(s, ell, phis, psis)
    if len(psis) >= s + 1:
        raise DecompositionError(f"b = {len(psis)} is not < s + 1")
    if not Ideal(dec.generators_of_top(), F).same_as(I_t):
        raise DecompositionError("phi, psi do not generate I_t")
    if not Ideal(dec.trimmed_generators(), F).same_as(I):
        raise DecompositionError("trimmed presentation does not reproduce I")
    return dec
