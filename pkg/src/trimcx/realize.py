"""Ideals of prescribed Tor class G(r) and type, built by trimming Pfaffians of V_m^0."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .complexes import BettiTable, betti_table
from .field import DEFAULT_FIELD
from .ideal import Ideal
from .pfaffian import SkewMatrix, build_V
from .resolution import buchsbaum_eisenbud, minimal_free_resolution
from .tor import ClassReport, classify_G
from .trimming import TrimmingData, compute_lifts, split_summands, trimmed_betti, trimming_complex


def expected_even_table(r: int, N: int) -> BettiTable:
    s = r + N - 2
    return BettiTable({
        (0, 0): 1,
        (1, s): r,
        (1, s + 1): 3 * (N - 1),
        (2, s + 2): r + 4 * (N - 1),
        (3, s + 3): N - 1,
        (3, 2 * s + 2): 1,
    })


@dataclass
class Realization:
    r: int
    N: int
    m: int
    even: bool
    matrix: SkewMatrix
    ideal: Ideal
    trimming: TrimmingData
    betti: BettiTable
    cone_betti: BettiTable
    formula_betti: BettiTable
    report: ClassReport
    expected_mu: int
    expected_type: int
    expected_betti: BettiTable | None
    checks: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list:
        return [k for k, v in self.checks.items() if not v]


def realize(r: int, N: int, field=DEFAULT_FIELD, check: bool = True) -> Realization:
    """Trim the last Pfaffians of ``V_m^0`` by ``R_+`` to get class G(r).

    Even ``r + N``: ``m = (r+N-2)/2``, trim the N-1 Pfaffians after the first r.
    Odd ``r + N``: ``m = (r+N-1)/2``, trim the N Pfaffians after the first r.
    """
    if r < 2 or N < 1 or r + N < 5:
        raise ValueError(f"need r >= 2, N >= 1, r + N >= 5 (got r={r}, N={N})")
    even = (r + N) % 2 == 0
    m = (r + N - 2) // 2 if even else (r + N - 1) // 2
    cut_count = N - 1 if even else N
    M = build_V(m, 0, field)
    F = buchsbaum_eisenbud(M, check=check)
    cut = list(range(r, r + cut_count))
    T = split_summands(F, cut)
    compute_lifts(T)
    cone = trimming_complex(T, check=check)
    I = T.trimmed_ideal()
    direct = betti_table(minimal_free_resolution(I, check=check), minimal=True)
    rep = classify_G(I)
    exp_mu = r + 3 * (N - 1) if even else r + 3 * N
    exp_type = N if even else N + 1
    out = Realization(
        r=r, N=N, m=m, even=even, matrix=M, ideal=I, trimming=T,
        betti=direct, cone_betti=betti_table(cone), formula_betti=trimmed_betti(T),
        report=rep, expected_mu=exp_mu, expected_type=exp_type,
        expected_betti=expected_even_table(r, N) if even else None,
    )
    out.checks["mu"] = direct.totals()[1] == exp_mu
    out.checks["type"] = direct.totals()[3] == exp_type
    out.checks["class"] = rep.verdict == f"G({r})"
    out.checks["cone_agrees"] = out.cone_betti == direct
    out.checks["formula_agrees"] = out.formula_betti == direct
    if even:
        out.checks["table"] = direct == out.expected_betti
    return out
