from __future__ import annotations

import numpy as np
import pytest

from trimcx.complexes import (
    ChainComplex,
    GradedFreeModule,
    GradedMap,
    betti_table,
    residue_koszul,
    verify_complex,
)
from trimcx.field import DEFAULT_FIELD as F
from trimcx.ideal import Ideal, irrelevant_power, mu
from trimcx.inverse import random_instance
from trimcx.pfaffian import build_V, submax_pfaffians
from trimcx.poly import HomogPoly, parse_poly
from trimcx.resolution import buchsbaum_eisenbud, minimal_free_resolution
from trimcx.suites import trim_instance
from trimcx.trimming import (
    LiftError,
    compute_lifts,
    lift_constant_ranks,
    lift_q1,
    lift_qk,
    split_summands,
    trim_ideal,
    trim_resolution,
    trimmed_betti,
    trimming_complex,
)


def P(text):
    return parse_poly(text, F)


def ideal(*texts):
    return Ideal([P(t) for t in texts], F)


def koszul_ez():
    T = split_summands(residue_koszul(F), [2])
    lift_q1(T)
    lift_qk(T, 2)
    return T


def test_koszul_split_row():
    T = split_summands(residue_koszul(F), [2])
    # d(e_xz) = x e_z - z e_x, d(e_yz) = y e_z - z e_y
    row = T.d0(0)
    assert [row.entry(0, j) for j in range(3)] == [0, P("x"), P("y")]
    assert T.keep == [0, 1]


def test_koszul_lifts():
    T = koszul_ez()
    q1 = T.lift(0, 1)
    # columns e_xy, e_xz, e_yz; rows g_x, g_y, g_z
    assert np.array_equal(q1.constant_part(), np.array([[0, 1, 0], [0, 0, 1], [0, 0, 0]]))
    assert lift_constant_ranks(T, 1) == {2: 2}
    q2 = T.lift(0, 2)
    assert q2.entry(0, 0) == HomogPoly.constant(1, F)
    assert lift_constant_ranks(T, 2) == {3: 1}
    assert T.lift(0, 3).is_zero()


def test_koszul_trim_gives_complete_intersection():
    T = koszul_ez()
    C = trimming_complex(T)
    assert verify_complex(C)
    ci = ideal("x", "y", "z^2")
    assert T.trimmed_ideal().same_as(ci)
    assert mu(T.trimmed_ideal()) == 3
    want = betti_table(minimal_free_resolution(ci), minimal=True)
    assert betti_table(C) == want == trimmed_betti(T)
    assert trimmed_betti(T).totals() == (1, 3, 3, 1)


def test_no_split_returns_input():
    K = residue_koszul(F)
    T = split_summands(K, [])
    assert trimming_complex(T) is K
    assert T.trimmed_ideal().same_as(ideal("x", "y", "z"))


def test_split_everything():
    T, C = trim_resolution(residue_koszul(F), [0, 1, 2])
    assert T.trimmed_ideal().same_as(irrelevant_power(2, F))
    assert betti_table(C) == {(0, 0): 1, (1, 2): 6, (2, 3): 8, (3, 4): 3}


def test_zero_row_gives_zero_lift():
    R = GradedFreeModule((0,))
    src = GradedFreeModule((1,))
    F0 = ChainComplex([R, src], [GradedMap(src, R, {(0, 0): P("x")}, F)], F)
    T = split_summands(F0, [0])
    compute_lifts(T)
    assert all(q.is_zero() for q in T.lifts.values())


def test_containment_violation():
    with pytest.raises(LiftError):
        split_summands(residue_koszul(F), [2], a=[ideal("x", "y^2", "z^2")])


def test_pfaffian_trim_counts():
    F5 = buchsbaum_eisenbud(build_V(2, 0, F))
    T, C = trim_resolution(F5, [3, 4])
    assert all(f.degree > 0 for f in T.lift(0, 1).entries.values())
    assert lift_constant_ranks(T, 1) == {} and lift_constant_ranks(T, 2) == {}
    b = trimmed_betti(T)
    assert b.totals()[1] == 5 + 2 * 2 == 9
    assert b.totals()[3] == 3
    assert betti_table(C) == b


def test_nonstandard_a():
    # trimming z by (x, y, z^2) instead of the maximal ideal
    a = ideal("x", "y", "z^2")
    T, C = trim_resolution(residue_koszul(F), [2], a=[a])
    J = T.trimmed_ideal()
    assert J.same_as(ideal("x", "y", "z^3"))
    assert betti_table(C) == trimmed_betti(T) == betti_table(minimal_free_resolution(J), minimal=True)


def test_trimmed_betti_needs_minimal_input():
    R = GradedFreeModule((0,))
    unit = GradedMap(R, R, {(0, 0): HomogPoly.constant(1, F)}, F)
    C = ChainComplex([R, R], [unit], F)
    with pytest.raises(ValueError):
        trimmed_betti(split_summands(C, []))


def test_trim_ideal_examples():
    J = trim_ideal(ideal("x", "y", "z"), cut=[2])
    assert [str(g) for g in J.generators] == ["x", "y", "x*z", "y*z", "z^2"]
    assert mu(J) == 3
    I = ideal("x^2", "y^2", "z^2")
    assert trim_ideal(I, cut=[]).same_as(I)
    with pytest.raises(ValueError):
        trim_ideal(I, cut=[0], keep=[0, 1, 2])


def test_trim_ideal_matches_trimming_data():
    M = build_V(2, 0, F)
    T = split_summands(buchsbaum_eisenbud(M), [3, 4])
    assert trim_ideal(submax_pfaffians(M), cut=[3, 4]).same_as(T.trimmed_ideal())


@pytest.mark.parametrize("s,ell,seed", [(3, 2, 0), (4, 1, 1), (4, 4, 2)])
def test_random_instance_two_routes_and_type(s, ell, seed):
    inst = random_instance(s, ell, seed)
    dec, T, C = trim_instance(inst)
    direct = betti_table(minimal_free_resolution(inst.I), minimal=True)
    assert betti_table(C) == trimmed_betti(T) == direct
    assert direct.totals()[3] == ell + 1
