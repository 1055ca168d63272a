from __future__ import annotations

import pytest

from trimcx.field import DEFAULT_FIELD as F
from trimcx.realize import expected_even_table, realize
from trimcx.trimming import trim_ideal
from trimcx.pfaffian import build_V, submax_pfaffians


def test_boundary_pair_uses_odd_case():
    R = realize(4, 1)
    assert (R.m, R.even) == (2, False)
    assert R.report.verdict == "G(4)"
    assert R.betti.totals() == (1, 7, 8, 2)
    assert R.ok


def test_odd_case_counts():
    R = realize(2, 3)
    assert R.report.mu == 2 + 3 * 3
    assert R.report.type == 4
    assert R.checks["class"]


def test_even_table_layout():
    # r = 3, N = 3: rows 0, 3, 4, 7 of the printed table
    assert expected_even_table(3, 3).rows() == {0: {0: 1}, 3: {1: 3}, 4: {1: 6, 2: 11, 3: 2}, 7: {3: 1}}


def test_realized_ideal_is_trimmed_pfaffian_ideal():
    R = realize(3, 3)
    J = trim_ideal(submax_pfaffians(build_V(2, 0, F)), cut=[3, 4])
    assert R.ideal.same_as(J)


@pytest.mark.parametrize("r,N", [(1, 5), (2, 2), (3, 0), (2, 1)])
def test_rejects_bad_parameters(r, N):
    with pytest.raises(ValueError):
        realize(r, N)
