from __future__ import annotations

import numpy as np
import pytest

from trimcx.complexes import betti_table
from trimcx.field import DEFAULT_FIELD as F
from trimcx.ideal import Ideal
from trimcx.inverse import profile, random_instance
from trimcx.pfaffian import build_V, submax_pfaffians
from trimcx.poly import parse_poly
from trimcx.realize import realize
from trimcx.resolution import minimal_free_resolution
from trimcx.tor import (
    check_bounds,
    classify_G,
    equality_hypothesis,
    delta_rank,
    graded_commutativity_holds,
    koszul_tor,
    perturbed,
    wedge_sign,
)


def ideal(*texts):
    return Ideal([parse_poly(t, F) for t in texts], F)


def test_wedge_sign():
    assert wedge_sign((0,), (1,)) == 1
    assert wedge_sign((1,), (0,)) == -1
    assert wedge_sign((2,), (0, 1)) == 1
    assert wedge_sign((1,), (0, 2)) == -1
    assert wedge_sign((0,), (0, 1)) == 0


def test_maximal_ideal_is_exterior_algebra():
    T = koszul_tor(ideal("x", "y", "z"))
    assert T.dims() == (1, 3, 3, 1)
    rep = classify_G(T.ideal, tor=T)
    assert rep.rank_T1T1 == 3
    assert rep.verdict == "not-G"
    assert "T1*T1" in rep.reason


def test_gorenstein_delta_is_isomorphism():
    I = submax_pfaffians(build_V(2, 0, F))
    T = koszul_tor(I)
    assert T.dims() == (1, 5, 5, 1)
    assert delta_rank(T) == 5
    assert classify_G(I, tor=T).verdict == "G(5)"


@pytest.mark.parametrize("s,ell,seed", [(3, 1, 0), (4, 2, 1), (5, 3, 2)])
def test_tor_matches_betti_and_euler(s, ell, seed):
    inst = random_instance(s, ell, seed)
    T = koszul_tor(inst.I)
    n0, n1, n2, n3 = T.dims()
    assert n2 == n1 + n3 - 1
    b = betti_table(minimal_free_resolution(inst.I), minimal=True)
    assert T.dims() == b.totals()
    for (i, j), v in b.data.items():
        assert T.graded_dim(i, j) == v


@pytest.mark.parametrize("s,ell,seed", [(3, 2, 4), (4, 1, 5)])
def test_products_independent_of_representatives(s, ell, seed):
    T = koszul_tor(random_instance(s, ell, seed).I)
    for k in range(3):
        T2 = perturbed(T, seed=k)
        assert np.array_equal(T.product_table(1, 1), T2.product_table(1, 1))
        assert np.array_equal(T.product_table(1, 2), T2.product_table(1, 2))
    assert graded_commutativity_holds(T)


def test_delta_rank_examples():
    assert delta_rank(koszul_tor(ideal("x", "y", "z"))) == 3
    R = realize(3, 3)
    assert R.report.delta_rank == 3
    assert R.report.mu == 9


def test_equality_hypothesis_values():
    assert equality_hypothesis(4, 1, 0)
    assert equality_hypothesis(4, 3, 0)
    assert not equality_hypothesis(4, 4, 0)
    assert not equality_hypothesis(3, 2, 1)


def test_bounds_on_instances():
    r = check_bounds(*_pair(4, 1, 0))
    assert r.hypothesis and r.checks["equality"] and r.verdict == f"G({r.mu - 3})"
    r = check_bounds(*_pair(3, 2, 1))
    assert r.checks["lower_bound"]
    assert r.T1_s == 3 + 1 - 2


def _pair(s, ell, seed):
    inst = random_instance(s, ell, seed)
    return inst.I, inst.I_t


@pytest.mark.parametrize("s,ell,seed", [(3, 1, 0), (3, 3, 1), (4, 2, 2), (5, 4, 3)])
def test_second_tor_in_degree_s_plus_two(s, ell, seed):
    # I lives in degrees s, s+1 and T_3 in degrees s+3, 2s+2, so beta_{2,s+2} is the
    # t^(s+2) coefficient of H(t)(1-t)^3 for the compressed H:
    # C(s-1,2) - 3 C(s,2) + 3 (ell + C(s+1,2)) - C(s+1,2) = s + 1 + 3 ell.
    r = check_bounds(*_pair(s, ell, seed))
    assert r.T2_s2 == s + 1 + 3 * ell
    assert r.T2_s1 == r.mu - s - 1 - 2 * ell


def test_classify_reports_profile_fields():
    inst = random_instance(4, 2, seed=3)
    p = profile(inst.I)
    rep = classify_G(inst.I, p)
    assert (rep.s, rep.ell, rep.type) == (4, 2, 3)
    assert rep.is_G == rep.verdict.startswith("G(")
