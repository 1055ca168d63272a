from __future__ import annotations

import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from _oracles import monomial_hilbert
from trimcx.complexes import betti_table
from trimcx.field import DEFAULT_FIELD as F, PrimeField
from trimcx.ideal import Ideal, minimal_generators
from trimcx.inverse import (
    DualPoly,
    InverseSystem,
    annihilator,
    contract,
    genset_decomposition,
    inverse_system,
    is_compressed,
    phi_matrix,
    profile,
    random_dual,
    random_instance,
    socle,
    tipping_point,
)
from trimcx.linalg import rank, span_intersection
from trimcx.pfaffian import build_V, submax_pfaffians
from trimcx.poly import HomogPoly, parse_poly
from trimcx.resolution import minimal_free_resolution


def P(text):
    return parse_poly(text, F)


def D(text):
    return DualPoly.of(parse_poly(text, F))


def test_contraction_rules():
    assert contract(P("x"), D("x^2")) == P("x")
    assert not contract(P("x"), D("y"))
    assert contract(P("x*y*z"), D("x*y*z")) == HomogPoly.constant(1, F)
    assert str(contract(P("x"), D("x^2*y"))) == "X*Y"
    with pytest.raises(ValueError):
        contract(P("x^2"), D("x"))


def test_phi_matrix_shapes():
    A = phi_matrix(InverseSystem([D("x")]), 1)
    assert A.shape == (3, 1) and rank(A.array, F) == 1
    phi = random_dual(3, random.Random(1), F)
    B = phi_matrix(InverseSystem([phi]), 2)
    assert B.shape == (6, 3) and rank(B.array, F) == 3
    # components with s_j - i < 0 are dropped
    assert phi_matrix(InverseSystem([D("x"), D("x^3")]), 2).shape == (6, 3)


@given(st.integers(3, 9), st.integers(0, 2**32))
@settings(max_examples=20, deadline=None)
def test_single_dual_tipping_point_and_duality(s, seed):
    phi = random_dual(s, random.Random(seed), F)
    N = InverseSystem([phi])
    assert tipping_point(N) == math.ceil(s / 2)
    for i in range(s + 1):
        A, B = phi_matrix(N, i).array, phi_matrix(N, s - i).array
        assert np.array_equal(A.T, B)
        surjective = rank(A, F) == A.shape[1]
        injective = rank(B, F) == B.shape[0]
        assert surjective == injective


def test_tipping_point_of_xyz():
    # Φ_1 sends x, y, z to YZ, XZ, XY (rank 3 < 6); Φ_2 hits X, Y, Z
    assert tipping_point(InverseSystem([D("x*y*z")])) == 2


def test_annihilator_of_single_variable():
    I = annihilator(InverseSystem([D("x")]))
    assert I.same_as(Ideal([P("y"), P("z"), P("x^2")], F))
    with pytest.raises(ValueError):
        annihilator(InverseSystem([D("x^2")]), bound=2)


def test_annihilator_inverse_system_roundtrip():
    rng = random.Random(5)
    N = InverseSystem([random_dual(3, rng, F), random_dual(5, rng, F)])
    I = annihilator(N)
    N2 = inverse_system(I)
    assert sorted(N2.degrees) == [3, 5]
    assert annihilator(N2).same_as(I)


def test_generic_odd_dual_is_compressed_gorenstein():
    phi = random_dual(7, random.Random(2), F)
    I = annihilator(InverseSystem([phi]))
    assert socle(I)[0] == {7: 1}
    assert is_compressed(I)


def test_socle_examples():
    assert socle(Ideal([P("x"), P("y"), P("z")], F))[0] == {0: 1}
    dims, reps = socle(Ideal([P("x^2"), P("y^2"), P("z^2")], F))
    assert dims == {3: 1}
    assert reps[3][0] == P("x*y*z")


def test_compressed_examples():
    # (1,3,3,1) already meets the bound for a socle k(-3)
    check = is_compressed(Ideal([P("x^2"), P("y^2"), P("z^2")], F))
    assert check and check.failing_degree is None
    # complete intersection (x^3, y^3, z^2): H = (1,3,5,5,3,1) vs (1,3,6,6,3,1)
    gens = [(3, 0, 0), (0, 3, 0), (0, 0, 2)]
    assert monomial_hilbert(gens) == [1, 3, 5, 5, 3, 1]
    check = is_compressed(Ideal([HomogPoly.monomial(g, 1, F) for g in gens], F))
    assert not check and check.failing_degree == 2
    for m, j in [(1, 0), (2, 1), (3, 0)]:
        assert is_compressed(submax_pfaffians(build_V(m, j, F)))


def test_random_instance_basics():
    inst = random_instance(3, 1, seed=4)
    p = profile(inst.I)
    assert (p.type, p.tipping_point, p.s, p.ell, p.compressed) == (2, 3, 3, 1, True)
    assert sum(p.socle_polynomial.values()) == p.type
    assert random_instance(3, 1, seed=4).I.same_as(inst.I)
    edge = random_instance(3, 4, seed=0)
    assert socle(edge.I)[0] == {3: 4, 5: 1}
    with pytest.raises(ValueError):
        random_instance(3, 5, seed=0)
    with pytest.raises(ValueError):
        random_instance(3, 1, seed=0, field=PrimeField(11))


def test_duality_type_equals_generator_count():
    for s, ell in [(3, 2), (4, 3)]:
        inst = random_instance(s, ell, seed=1)
        assert profile(inst.I).type == ell + 1 == len(inverse_system(inst.I))


def test_dropping_duals_keeps_compressed():
    inst = random_instance(4, 3, seed=2)
    for drop in range(1, 4):
        J = annihilator(InverseSystem(inst.small_duals[drop:] + [inst.top_dual]))
        assert is_compressed(J)
        want = {7: 1}
        if 3 - drop:
            want[4] = 3 - drop
        assert socle(J)[0] == want


def test_genset_decomposition():
    inst = random_instance(4, 2, seed=3)
    dec = genset_decomposition(inst.I, inst.I_t)
    assert (dec.s, dec.ell, len(dec.phis)) == (4, 2, 5)
    assert all(g.degree == 4 for g in dec.phis) and all(g.degree == 5 for g in dec.psis)
    assert Ideal(dec.trimmed_generators(), F).same_as(inst.I)
    b_res = betti_table(minimal_free_resolution(inst.I_t), minimal=True)[(1, 5)]
    assert dec.b == b_res < 5


def test_genset_without_trimming():
    inst = random_instance(3, 1, seed=9)
    dec = genset_decomposition(inst.I_t, inst.I_t)
    assert dec.ell == 0 and dec.cut == []
    assert Ideal(dec.trimmed_generators(), F).same_as(inst.I_t)


def test_dual_presentation_equals_intersection():
    # ann(phi_1, phi_t) = ann(phi_1) ∩ ann(phi_t), degree by degree
    inst = random_instance(3, 1, seed=6)
    A = annihilator(InverseSystem(inst.small_duals))
    B = annihilator(InverseSystem([inst.top_dual]))
    for d in range(2 * 3 + 1):
        W = span_intersection(A.strand(d)[0], B.strand(d)[0], F)
        assert W.shape[0] == inst.I.dim(d)
