"""Tor_R(R/I, k) with its algebra structure, computed as Koszul homology.

Elements of ``K(x, y, z) ⊗ R/I`` in homological degree i and internal
degree j are stored as row vectors: one block per i-subset S of {x, y, z}
(lex order), each block a vector of (R/I)_{j-i} in the standard-monomial
basis. Products multiply the polynomial parts and wedge the exterior parts.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from .ideal import Ideal
from .linalg import independent_rows, kernel_basis, rank, rref, solve
from .poly import HomogPoly, shift_indices, strand_dim

SUBSETS = [list(itertools.combinations(range(3), i)) for i in range(4)]


def wedge_sign(S, T) -> int:
    """Sign of ``e_S ∧ e_T`` relative to ``e_{S ∪ T}`` (0 if they overlap)."""
    if set(S) & set(T):
        return 0
    inversions = sum(1 for a in S for b in T if a > b)
    return -1 if inversions % 2 else 1


class _Quotient:
    """Arithmetic in R/I on standard-monomial coordinates."""

    def __init__(self, I: Ideal):
        self.I = I
        self.F = I.field
        self.sigma = I.top_socle_degree()
        self.basis = {d: I.quotient_basis(d) for d in range(self.sigma + 1)}
        self._mult = {}

    def dim(self, d: int) -> int:
        return len(self.basis[d]) if 0 <= d <= self.sigma else 0

    def embed(self, vec, d: int) -> np.ndarray:
        full = self.F.zeros(strand_dim(d))
        full[self.basis[d]] = vec
        return full

    def times_variable(self, var: int, d: int) -> np.ndarray:
        """Row-form matrix ``(R/I)_d -> (R/I)_{d+1}`` of multiplication by a variable."""
        key = (var, d)
        if key not in self._mult:
            n = self.dim(d)
            M = self.F.zeros((n, strand_dim(d + 1)))
            if n:
                M[np.arange(n), shift_indices(d, var)[self.basis[d]]] = self.F(1)
            if self.dim(d + 1):
                self._mult[key] = self.I.normal_form(M, d + 1)
            else:
                self._mult[key] = self.F.zeros((n, 0))
        return self._mult[key]

    def multiply(self, f, a: int, g, b: int) -> np.ndarray:
        if self.dim(a + b) == 0:
            return self.F.zeros(0)
        p = HomogPoly.from_vector(self.embed(f, a), a, self.F)
        q = HomogPoly.from_vector(self.embed(g, b), b, self.F)
        return self.I.normal_form((p * q).to_vector(), a + b)


@dataclass
class HomologyPiece:
    """``H_{i,j}``: representatives plus the data to reduce cycles to coordinates."""

    i: int
    j: int
    reps: np.ndarray
    boundaries: np.ndarray

    @property
    def dim(self) -> int:
        return self.reps.shape[0]


@dataclass
class TorAlgebra:
    ideal: Ideal
    pieces: dict
    basis: dict = dc_field(default_factory=dict)
    _quot: object = None

    @property
    def field(self):
        return self.ideal.field

    def dims(self) -> tuple:
        return tuple(len(self.basis.get(i, [])) for i in range(4))

    def graded_dim(self, i: int, j: int) -> int:
        p = self.pieces.get((i, j))
        return p.dim if p is not None else 0

    def graded_dims(self, i: int) -> dict:
        return {j: p.dim for (a, j), p in sorted(self.pieces.items()) if a == i and p.dim}

    def element(self, i: int, k: int):
        """``(j, representative)`` of the k-th basis element of T_i."""
        j, r = self.basis[i][k]
        return j, self.pieces[(i, j)].reps[r]

    def coordinates(self, i: int, j: int, cycle) -> np.ndarray:
        """Coordinates in the global basis of T_i of the class of ``cycle`` in degree j."""
        F = self.field
        out = F.zeros(len(self.basis.get(i, [])))
        p = self.pieces.get((i, j))
        if p is None or p.dim == 0:
            return out
        stack = np.concatenate([p.boundaries, p.reps]) if p.boundaries.shape[0] else p.reps
        c = solve(stack.T, np.asarray(cycle), F)
        local = c[p.boundaries.shape[0]:]
        for r, v in enumerate(local):
            out[self.basis[i].index((j, r))] = v
        return out

    def multiply_reps(self, i1, j1, u, i2, j2, v) -> np.ndarray:
        """Product of Koszul elements ``u`` (degree i1, j1) and ``v`` (i2, j2)."""
        Q = self._quot
        F = self.field
        i, j = i1 + i2, j1 + j2
        if i > 3:
            return F.zeros(0)
        a, b, c = j1 - i1, j2 - i2, j - i
        n = Q.dim(c)
        out = F.zeros(len(SUBSETS[i]) * n)
        if n == 0:
            return out
        na, nb = Q.dim(a), Q.dim(b)
        for s, S in enumerate(SUBSETS[i1]):
            fu = u[s * na:(s + 1) * na]
            if not np.any(fu):
                continue
            for t, T in enumerate(SUBSETS[i2]):
                sign = wedge_sign(S, T)
                if not sign:
                    continue
                gv = v[t * nb:(t + 1) * nb]
                if not np.any(gv):
                    continue
                w = Q.multiply(fu, a, gv, b)
                k = SUBSETS[i].index(tuple(sorted(S + T)))
                out[k * n:(k + 1) * n] = F.normalize(out[k * n:(k + 1) * n] + sign * w)
        return out

    def product(self, i1: int, k1: int, i2: int, k2: int) -> np.ndarray:
        """Coordinates in T_{i1+i2} of the product of two basis elements."""
        j1, u = self.element(i1, k1)
        j2, v = self.element(i2, k2)
        if i1 + i2 > 3:
            return self.field.zeros(0)
        w = self.multiply_reps(i1, j1, u, i2, j2, v)
        return self.coordinates(i1 + i2, j1 + j2, w)

    def product_table(self, i1: int, i2: int) -> np.ndarray:
        """Array ``P[k1, k2] = e_{k1} * f_{k2}`` in T_{i1+i2} coordinates."""
        n1, n2 = self.dims()[i1], self.dims()[i2]
        n3 = self.dims()[i1 + i2] if i1 + i2 <= 3 else 0
        P = self.field.zeros((n1, n2, n3))
        for k1 in range(n1):
            for k2 in range(n2):
                P[k1, k2] = self.product(i1, k1, i2, k2)
        return P


def _koszul_differential(Q: _Quotient, i: int, j: int) -> np.ndarray:
    """Row-form matrix ``K_{i,j} -> K_{i-1,j}``."""
    F = Q.F
    src, tgt = j - i, j - i + 1
    ns, nt = Q.dim(src), Q.dim(tgt)
    D = F.zeros((len(SUBSETS[i]) * ns, len(SUBSETS[i - 1]) * nt))
    if ns == 0 or nt == 0:
        return D
    index = {S: r for r, S in enumerate(SUBSETS[i - 1])}
    for c, S in enumerate(SUBSETS[i]):
        for t, var in enumerate(S):
            rest = S[:t] + S[t + 1:]
            block = Q.times_variable(var, src)
            if t % 2:
                block = F.normalize(-block)
            r = index[rest]
            D[c * ns:(c + 1) * ns, r * nt:(r + 1) * nt] = block
    return D


def koszul_tor(I: Ideal) -> TorAlgebra:
    """Koszul homology ``H(K ⊗ R/I) = Tor^R(R/I, k)`` with cycle representatives."""
    Q = _Quotient(I)
    F = I.field
    pieces = {}
    for i in range(4):
        for c in range(Q.sigma + 1):
            j = i + c
            n = len(SUBSETS[i]) * Q.dim(c)
            if n == 0:
                continue
            if i == 0:
                Z = np.eye(n, dtype=F.dtype) if hasattr(F, "dtype") else F.zeros((n, n))
                if not hasattr(F, "dtype"):
                    for a in range(n):
                        Z[a, a] = F(1)
            else:
                D = _koszul_differential(Q, i, j)
                Z = kernel_basis(D.T, F) if D.shape[1] else _identity(n, F)
            if i < 3:
                B = _koszul_differential(Q, i + 1, j)
                Bb = rref(B, F) if B.shape[0] else (F.zeros((0, n)), [])
            else:
                Bb = (F.zeros((0, n)), [])
            chosen = independent_rows(Z, F, base=Bb if Bb[1] else None) if Z.shape[0] else []
            if chosen:
                pieces[(i, j)] = HomologyPiece(i, j, Z[chosen], Bb[0])
    T = TorAlgebra(I, pieces, _quot=Q)
    for i in range(4):
        T.basis[i] = [(j, r) for (a, j), p in sorted(pieces.items()) if a == i for r in range(p.dim)]
    return T


def _identity(n, F):
    M = F.zeros((n, n))
    for a in range(n):
        M[a, a] = F(1)
    return M


def _image_dim(P: np.ndarray, F) -> int:
    if P.size == 0:
        return 0
    return rank(P.reshape(-1, P.shape[-1]), F)


def delta_rank(T: TorAlgebra) -> int:
    """Rank of ``T_2 -> Hom(T_1, T_3)``, ``f -> (e -> e f)``."""
    P = T.product_table(1, 2)
    n1, n2, n3 = P.shape
    if n1 == 0 or n2 == 0 or n3 == 0:
        return 0
    M = P.transpose(1, 0, 2).reshape(n2, n1 * n3)
    return rank(M, T.field)


@dataclass
class ClassReport:
    mu: int
    type: int
    ell: int | None
    s: int | None
    rank_T1T1: int
    rank_T1T2: int
    dim_T1T2: int
    delta_rank: int
    verdict: str
    reason: str = ""

    @property
    def is_G(self) -> bool:
        return self.verdict.startswith("G(")

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def classify_G(I: Ideal, profile=None, tor: TorAlgebra | None = None) -> ClassReport:
    """Certify class G(r) from the rank triple; otherwise name the failing condition."""
    T = tor if tor is not None else koszul_tor(I)
    n1, n2, n3 = T.dims()[1:]
    P11 = T.product_table(1, 1)
    P12 = T.product_table(1, 2)
    r11 = _image_dim(P11, T.field)
    dim12 = _image_dim(P12, T.field)
    pair_rank = rank(P12.reshape(n1 * n2, n3), T.field) if P12.size else 0
    r = delta_rank(T)
    if r11 != 0:
        verdict, reason = "not-G", f"T1*T1 != 0 (rank {r11})"
    elif dim12 != 1:
        verdict, reason = "not-G", f"dim T1*T2 = {dim12}, not 1"
    elif r < 2:
        verdict, reason = "not-G", f"delta rank {r} < 2"
    else:
        verdict, reason = f"G({r})", ""
    return ClassReport(
        mu=n1,
        type=n3,
        ell=getattr(profile, "ell", None),
        s=getattr(profile, "s", None),
        rank_T1T1=r11,
        rank_T1T2=pair_rank,
        dim_T1T2=dim12,
        delta_rank=r,
        verdict=verdict,
        reason=reason,
    )


def graded_commutativity_holds(T: TorAlgebra) -> bool:
    """``e f = f e`` for e in T_1, f in T_2, checked on representatives."""
    F = T.field
    for k1 in range(T.dims()[1]):
        j1, u = T.element(1, k1)
        for k2 in range(T.dims()[2]):
            j2, v = T.element(2, k2)
            a = T.multiply_reps(1, j1, u, 2, j2, v)
            b = T.multiply_reps(2, j2, v, 1, j1, u)
            if np.any(F.normalize(a - b)):
                return False
    return True


def perturbed(T: TorAlgebra, seed: int = 0) -> TorAlgebra:
    """Same homology, every representative shifted by a random boundary."""
    rng = random.Random(seed)
    F = T.field
    pieces = {}
    for key, p in T.pieces.items():
        reps = p.reps.copy()
        if p.boundaries.shape[0]:
            for r in range(reps.shape[0]):
                coeffs = np.array([F.random_element(rng) for _ in range(p.boundaries.shape[0])],
                                  dtype=reps.dtype)
                reps[r] = F.normalize(reps[r] + F.matmul(coeffs.reshape(1, -1), p.boundaries)[0])
        pieces[key] = HomologyPiece(p.i, p.j, reps, p.boundaries)
    return TorAlgebra(T.ideal, pieces, dict(T.basis), T._quot)


@dataclass
class BoundsReport:
    s: int
    ell: int
    b: int
    mu: int
    delta_rank: int
    lower_bound: int
    hypothesis: bool
    verdict: str
    T1_s: int
    T2_s1: int
    T2_s2: int
    checks: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list:
        return [k for k, v in self.checks.items() if not v]


def equality_hypothesis(s: int, ell: int, b: int) -> bool:
    """``ell <= s + b - 1 - min(ell * b, 3)``."""
    return ell <= s + b - 1 - min(ell * b, 3)


def check_bounds(I: Ideal, I_t: Ideal, profile=None, b: int | None = None) -> BoundsReport:
    """Delta-rank bounds and graded Tor dimensions for a socle-shaped instance.

    Checks recorded by name: ``lower_bound`` (delta >= mu - 3 ell),
    ``equality`` (delta = mu - 3 ell and verdict G(mu - 3 ell) when the
    hypothesis holds), ``T1_s`` ((T_1)_s = s + 1 - ell), ``T2_s1``
    ((T_2)_{s+1} = mu - s - 1 - 2 ell), ``T2_s2_target`` ((T_2)_{s+2} = s + 4 ell)
    and ``T2_s2_hilbert`` ((T_2)_{s+2} = s + 1 + 3 ell, from the Hilbert series).
    """
    from .inverse import genset_decomposition, profile as make_profile

    prof = profile if profile is not None else make_profile(I)
    s, ell = prof.s, prof.ell
    if s is None or ell is None:
        raise ValueError("socle is not of the form k(-s)^ell + k(-2s+1)")
    if b is None:
        b = genset_decomposition(I, I_t, s).b
    T = koszul_tor(I)
    rep = classify_G(I, prof, tor=T)
    mu = rep.mu
    hyp = equality_hypothesis(s, ell, b)
    out = BoundsReport(
        s=s, ell=ell, b=b, mu=mu, delta_rank=rep.delta_rank, lower_bound=mu - 3 * ell,
        hypothesis=hyp, verdict=rep.verdict,
        T1_s=T.graded_dim(1, s), T2_s1=T.graded_dim(2, s + 1), T2_s2=T.graded_dim(2, s + 2),
    )
    out.checks["lower_bound"] = rep.delta_rank >= mu - 3 * ell
    if hyp:
        out.checks["equality"] = (rep.delta_rank == mu - 3 * ell
                                  and rep.verdict == f"G({mu - 3 * ell})")
    out.checks["T1_s"] = out.T1_s == s + 1 - ell
    out.checks["T2_s1"] = out.T2_s1 == mu - s - 1 - 2 * ell
    out.checks["T2_s2_target"] = out.T2_s2 == s + 4 * ell
    out.checks["T2_s2_hilbert"] = out.T2_s2 == s + 1 + 3 * ell
    return out
