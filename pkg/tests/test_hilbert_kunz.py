from fractions import Fraction

import pytest

from parafrac import cyclic, e_hk_estimate, hk_function, j_hk_bridge
from parafrac.errors import CharacteristicError, PreconditionError
from parafrac.hilbert_kunz import HKSeries

from conftest import make_ring


def test_regular_ring_values():
    r = make_ring("x y", char=2)
    s = hk_function(cyclic(r), r.gens, 3)
    assert s.values == [(2, 4), (4, 16), (8, 64)]
    est = e_hk_estimate(s, 2)
    assert est.value == 1 and est.residual == 0


def test_node():
    r = make_ring("x y", char=2)
    x, y = r.gens
    s = hk_function(cyclic(r, [x * y]), r.gens, 4)
    assert s.lengths == [3, 7, 15, 31]
    est = e_hk_estimate(s, 1)
    assert est.value == Fraction(31, 16)
    assert est.residual == Fraction(1, 16)
    assert est.extrapolated == 2


def test_double_plane_char_three():
    r = make_ring("x y z", char=3)
    z = r.gens[2]
    assert hk_function(cyclic(r, [z ** 2]), r.gens, 1).lengths == [18]


def test_single_point_estimate_rejected():
    with pytest.raises(ValueError):
        e_hk_estimate(HKSeries(2, [(2, 4)]), 2)


def test_budget_truncates():
    r = make_ring("x y", char=2)
    s = hk_function(cyclic(r), r.gens, 6, budget=100)
    assert s.truncated and s.lengths == [4, 16, 64]
    assert "budget" in s.notice


def test_char_zero_rejected():
    r = make_ring("x y", char=0)
    with pytest.raises(CharacteristicError):
        hk_function(cyclic(r), r.gens, 2)


def test_bridge_line():
    r = make_ring("x y z", char=2)
    x, y, z = r.gens
    tbl = j_hk_bridge(r, [x, y], 3)
    assert tbl.agree
    assert [(row.q, row.J) for row in tbl.rows] == [(2, 2), (4, 4), (8, 8)]


def test_bridge_needs_codim_two():
    r = make_ring("x y z", char=2)
    with pytest.raises(PreconditionError):
        j_hk_bridge(r, [r.gens[0]], 2)
