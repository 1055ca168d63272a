"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

All comparisons are exact. The random sweep (50 seeded instances over
s in {3, 4, 5}, ell in 1..min(4, s+1)) is computed once and shared.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np
import pytest

from _oracles import leibniz_det, perfect_matching_pfaffian
from trimcx.complexes import BettiTable, betti_table, residue_koszul, verify_complex
from trimcx.field import DEFAULT_FIELD as F
from trimcx.ideal import Ideal, mu
from trimcx.inverse import (
    InverseSystem,
    is_compressed,
    phi_matrix,
    random_dual,
    random_instance,
    socle,
    tipping_point,
)
from trimcx.linalg import kernel_basis, rank
from trimcx.pfaffian import SkewMatrix, build_V, pfaffian, submax_pfaffians
from trimcx.poly import HomogPoly, parse_poly
from trimcx.realize import realize
from trimcx.resolution import buchsbaum_eisenbud, minimal_free_resolution, verify_resolution
from trimcx.suites import sweep_parameters, trim_instance
from trimcx.tor import check_bounds, koszul_tor, perturbed
from trimcx.trimming import lift_constant_ranks, split_summands, compute_lifts, trimmed_betti, trimming_complex


def announce(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\nACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {detail}")


@dataclass
class SweepRecord:
    s: int
    ell: int
    seed: int
    inst: object
    dec: object
    trim: object
    cone: object
    direct: BettiTable
    formula: BettiTable
    cone_betti: BettiTable
    bounds: object
    tipping: int


@pytest.fixture(scope="module")
def sweep():
    out = []
    for s, ell, seed in sweep_parameters(50, seed=1000):
        inst = random_instance(s, ell, seed)
        dec, T, cone = trim_instance(inst)
        direct = betti_table(minimal_free_resolution(inst.I), minimal=True)
        out.append(SweepRecord(
            s=s, ell=ell, seed=seed, inst=inst, dec=dec, trim=T, cone=cone,
            direct=direct, formula=trimmed_betti(T), cone_betti=betti_table(cone),
            bounds=check_bounds(inst.I, inst.I_t, b=dec.b),
            tipping=tipping_point(inst.N),
        ))
    assert len(out) == 50
    return out


def pfaffian_expected(m, j):
    d = 2 * m - j
    top = 4 * m - 2 * j + 2
    table = {(0, 0): 1, (1, d): 2 * m + 1 - j, (2, top - d): 2 * m + 1 - j, (3, top): 1}
    if j:
        table[(1, d + 1)] = j
        table[(2, top - d - 1)] = j
    return BettiTable(table)


def test_criterion_1_pfaffian_tables(capsys):
    bad = []
    for m in range(1, 5):
        for j in range(m + 1):
            I = submax_pfaffians(build_V(m, j, F))
            b = betti_table(minimal_free_resolution(I), minimal=True)
            ok = (b == pfaffian_expected(m, j)
                  and socle(I)[0] == {4 * m - 2 * j - 1: 1}
                  and bool(is_compressed(I)))
            if not ok:
                bad.append((m, j))
    announce(capsys, 1, not bad, f"14 Pfaffian tables, mismatches {bad}")
    assert not bad


def realizability_expected(r, N):
    s = r + N - 2
    return BettiTable({(0, 0): 1, (1, s): r, (1, s + 1): 3 * (N - 1), (2, s + 2): r + 4 * (N - 1),
                       (3, s + 3): N - 1, (3, 2 * s + 2): 1})


def test_criterion_2_realizability(capsys):
    bad = []
    for r, N in [(2, 3), (3, 2), (3, 3), (2, 4), (4, 2), (5, 3)]:
        R = realize(r, N)
        if (r + N) % 2 == 0:
            ok = R.betti == realizability_expected(r, N)
        else:
            ok = R.betti.totals()[1] == r + 3 * N and R.betti.totals()[3] == N + 1
        ok = ok and R.report.verdict == f"G({r})"
        if not ok:
            bad.append((r, N, R.report.verdict, R.betti.totals()))
    announce(capsys, 2, not bad, f"6 (r, N) pairs, mismatches {bad}")
    assert not bad


def test_criterion_3_two_route_betti(capsys, sweep):
    bad = [(r.s, r.ell, r.seed) for r in sweep
           if not (r.formula == r.cone_betti == r.direct)]
    announce(capsys, 3, not bad, f"{len(sweep)} instances, formula = cone = direct; failures {bad}")
    assert not bad


def test_criterion_4_tipping_point(capsys, sweep):
    bad = [(r.s, r.ell, r.seed, r.tipping) for r in sweep if r.tipping != r.s]
    rng = random.Random(2024)
    for k in range(20):
        d = 3 + k % 7
        N = InverseSystem([random_dual(d, rng, F)])
        if tipping_point(N) != math.ceil(d / 2):
            bad.append(("single", d, k))
        for i in range(d + 1):
            A, B = phi_matrix(N, i).array, phi_matrix(N, d - i).array
            if (rank(A, F) == A.shape[1]) != (rank(B, F) == B.shape[0]):
                bad.append(("duality", d, i))
    announce(capsys, 4, not bad, f"sweep tipping = s and 20 single duals; failures {bad}")
    assert not bad


def test_criterion_5_generating_set(capsys, sweep):
    bad = [(r.s, r.ell, r.seed) for r in sweep
           if not Ideal(r.dec.trimmed_generators(), F).same_as(r.inst.I)
           or len(r.dec.phis) != r.s + 1 or r.dec.b >= r.s + 1 or r.dec.ell != r.ell]
    announce(capsys, 5, not bad, f"{len(sweep)} strandwise identities; failures {bad}")
    assert not bad


def test_criterion_6_delta_rank_bounds(capsys, sweep):
    bad = []
    n_hyp = 0
    for r in sweep:
        b = r.bounds
        if b.delta_rank < b.mu - 3 * b.ell:
            bad.append(("lower", r.s, r.ell, r.seed))
        if b.hypothesis:
            n_hyp += 1
            if b.delta_rank != b.mu - 3 * b.ell or b.verdict != f"G({b.mu - 3 * b.ell})":
                bad.append(("equality", r.s, r.ell, r.seed, b.delta_rank, b.verdict))
    announce(capsys, "6a", not bad,
             f"delta >= mu - 3 ell on {len(sweep)}, equality and G(mu - 3 ell) on {n_hyp} "
             f"hypothesis instances; failures {bad}")
    assert not bad


def test_criterion_6_graded_T1(capsys, sweep):
    bad = [(r.s, r.ell, r.seed, r.bounds.T1_s) for r in sweep if r.bounds.T1_s != r.s + 1 - r.ell]
    announce(capsys, "6b", not bad, f"(T_1)_s = s + 1 - ell on {len(sweep)}; failures {bad}")
    assert not bad


def test_criterion_6_graded_T2(capsys, sweep):
    bad = [(r.s, r.ell, r.bounds.T2_s2) for r in sweep if r.bounds.T2_s2 != r.s + 4 * r.ell]
    bad = sorted(set(bad))
    announce(capsys, "6c", not bad,
             f"(T_2)_(s+2) = s + 4 ell on {len(sweep)}; mismatches (s, ell, observed) {bad}")
    assert not bad


def test_criterion_7_property_backstops(capsys, sweep):
    problems = []
    # d^2 = 0 and exactness of every cone built in the sweep
    for r in sweep:
        if not verify_complex(r.cone):
            problems.append(("d2", r.seed))
        J = r.trim.trimmed_ideal()
        try:
            verify_resolution(r.cone, J, J.top_socle_degree() + 4)
        except ValueError:
            problems.append(("exact", r.seed))
    for m, j in [(2, 0), (3, 1), (4, 2)]:
        BE = buchsbaum_eisenbud(build_V(m, j, F))
        if not verify_complex(BE):
            problems.append(("be", m, j))
    # rank-nullity on strand matrices of the sweep differentials
    for r in sweep[:12]:
        d2 = r.cone.d(2)
        for deg in range(r.s, r.s + 3):
            A = d2.strand_matrix(deg).array
            if A.size and rank(A, F) + kernel_basis(A, F).shape[0] != A.shape[1]:
                problems.append(("rank-nullity", r.seed, deg))
    # Pf^2 = det on random constant skew matrices
    rng = random.Random(77)
    for _ in range(10):
        vals = [[0] * 6 for _ in range(6)]
        for i in range(6):
            for k in range(i + 1, 6):
                v = rng.randrange(F.p)
                vals[i][k], vals[k][i] = v, (-v) % F.p
        M = SkewMatrix.from_upper(6, {(i, k): HomogPoly.constant(vals[i][k], F)
                                      for i in range(6) for k in range(i + 1, 6)}, F)
        pf = pfaffian(M)
        pf = pf.constant_term() if pf else 0
        if pf * pf % F.p != leibniz_det(vals, F.p) or pf != perfect_matching_pfaffian(vals, F.p):
            problems.append(("pfaffian",))
    # Tor products do not depend on cycle representatives
    for r in sweep[:6]:
        T = koszul_tor(r.inst.I)
        T2 = perturbed(T, seed=r.seed)
        if not (np.array_equal(T.product_table(1, 1), T2.product_table(1, 1))
                and np.array_equal(T.product_table(1, 2), T2.product_table(1, 2))):
            problems.append(("tor", r.seed))
    announce(capsys, 7, not problems, f"structural backstops; problems {problems}")
    assert not problems


def test_criterion_8_koszul_micro_oracle(capsys):
    T = split_summands(residue_koszul(F), [2])
    compute_lifts(T)
    q1 = sum(lift_constant_ranks(T, 1).values())
    q2 = sum(lift_constant_ranks(T, 2).values())
    mu_formula = 3 - 1 + 3 - q1
    tor3_formula = 1 + 1 - sum(lift_constant_ranks(T, 3).values()) - q2
    J = T.trimmed_ideal()
    ci = Ideal([parse_poly(t, F) for t in ("x", "y", "z^2")], F)
    ci_betti = betti_table(minimal_free_resolution(ci), minimal=True)
    ok = (q1 == 2 and q2 == 1 and mu_formula == 3 and tor3_formula == 1
          and J.same_as(ci) and mu(J) == 3
          and trimmed_betti(T) == betti_table(trimming_complex(T)) == ci_betti)
    announce(capsys, 8, ok, f"mu = 3 - 1 + 3 - {q1} = {mu_formula}, Tor_3 = 1 + 1 - 0 - {q2} = {tor3_formula}")
    assert ok
