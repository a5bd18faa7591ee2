import pytest
from hypothesis import given, settings, strategies as st

from parafrac import (ExponentBox, I_fun, J_fun, ParamSystem, Submodule, a_ideals, colon, cyclic,
                      ideal_as_module, is_dd_sequence_box, limit_closure, limit_closure_dd,
                      multiplicity, p_standard_sop, submodule_equal, table, unmixed_component)
from parafrac.errors import PreconditionError, StabilizationError
from parafrac.invariants import (NotFound, TableRow, InvariantTable, is_d_sequence, limit_chain,
                                 p_estimate, pf_estimate)
from parafrac.modules import koszul_homology_lengths, quotient_by, relative_length

from conftest import make_ring


@pytest.fixture
def cor44():
    r = make_ring("x1 x2 x3")
    x1, x2, x3 = r.gens
    m = ideal_as_module(r, [x1, x2])
    return m, ParamSystem(m, [x1 + x3, x2, x3])


def test_multiplicities(kxy, two_planes):
    x, y = kxy.gens
    assert multiplicity(cyclic(kxy), [x, y]) == 1
    _, m, sop = two_planes
    assert multiplicity(m, sop) == 2
    k = make_ring("x")
    assert multiplicity(cyclic(k), [k.gens[0] ** 3]) == 3


def test_limit_closure_regular(kxy):
    x, y = kxy.gens
    m = cyclic(kxy)
    lim = limit_closure(m, ParamSystem(m, [x, y]))
    assert submodule_equal(lim, Submodule.ideal(kxy, [x, y]))
    k = make_ring("x")
    mk = cyclic(k)
    lim = limit_closure(mk, ParamSystem(mk, [k.gens[0] ** 2]))
    assert submodule_equal(lim, Submodule.ideal(k, [k.gens[0] ** 2]))


def test_limit_closure_two_planes(two_planes):
    r, m, sop = two_planes
    lim = limit_closure(m, sop)
    assert submodule_equal(lim, Submodule.ideal(r, r.gens))
    assert lim.quotient_length() == 1
    # strictly larger than (x)M: the module is not Cohen-Macaulay
    assert not submodule_equal(lim, m.expansion(sop.elements))


def test_colon_chain_is_ascending(two_planes):
    _, m, sop = two_planes
    res = limit_chain(m, sop, (2, 1))
    ks = sorted(res.colengths)
    vals = [res.colengths[k] for k in ks]
    assert all(a >= b for a, b in zip(vals, vals[1:]))
    assert "heuristically stabilized" in res.note


def test_cap_is_enforced():
    r = make_ring("x y")
    x, y = r.gens
    m = cyclic(r, [x ** 2, x * y])
    with pytest.raises(StabilizationError):
        limit_chain(m, ParamSystem(m, [y]), None, cap=1)


def test_I_and_J_values(two_planes, cor44):
    _, m, sop = two_planes
    assert I_fun(m, sop, (1, 1)) == 1
    assert I_fun(m, sop, (2, 3)) == 1
    assert J_fun(m, sop, (1, 1)) == 1
    cm, cx = cor44
    assert J_fun(cm, cx, (2, 3, 5)) == 2


def test_regular_ring_has_zero_J(kxyz):
    m = cyclic(kxyz)
    x = ParamSystem(m, kxyz.gens)
    for n in [(1, 1, 1), (3, 1, 2)]:
        assert J_fun(m, x, n) == 0
        assert I_fun(m, x, n) == 0


def test_tables(two_planes, cor44):
    _, m, sop = two_planes
    tbl = table(m, sop, ExponentBox.cube(2, 4))
    assert len(tbl.rows) == 16
    assert set(tbl.column("I").values()) == {1}
    assert set(tbl.column("J").values()) == {1}
    assert tbl.header() == ["n1", "n2", "len_quot", "mult", "I", "J", "len_mod_lim"]
    cm, cx = cor44
    tbl = table(cm, cx, ExponentBox.cube(3, 4))
    assert [r.n for r in tbl.rows] == sorted(r.n for r in tbl.rows)
    assert all(r.J == min(r.n[0], r.n[2]) for r in tbl.rows)


def test_multiplicity_scales_with_powers(two_planes):
    _, m, sop = two_planes
    e = multiplicity(m, sop)
    for n in [(2, 1), (1, 3), (2, 2)]:
        powered = [x ** k for x, k in zip(sop.elements, n)]
        ls = koszul_homology_lengths(m, powered)
        assert sum((-1) ** i * v for i, v in enumerate(ls)) == n[0] * n[1] * e


def test_threads_do_not_change_tables(two_planes):
    _, m, sop = two_planes
    box = ExponentBox.cube(2, 3)
    assert table(m, sop, box, threads=1).rows == table(m, sop, box, threads=2).rows


def test_cm_limit_closure_is_xm(kxyz):
    x, y, z = kxyz.gens
    m = cyclic(kxyz, [x * z - y ** 2])
    sop = ParamSystem(m, [x, z])
    assert submodule_equal(limit_closure(m, sop), m.expansion(sop.elements))


def test_unmixed_components(two_planes):
    _, m, sop = two_planes
    assert submodule_equal(unmixed_component(m, sop).submodule, m.relations)
    r = make_ring("x y z")
    x, y, z = r.gens
    mixed = cyclic(r, [x * y, x * z])
    u = unmixed_component(mixed, ParamSystem(mixed, [x + y, z]))
    assert submodule_equal(u.submodule, Submodule.ideal(r, [x]))
    r2 = make_ring("x y")
    x, y = r2.gens
    small = cyclic(r2, [x ** 2, x * y])
    u = unmixed_component(small, ParamSystem(small, [y]))
    assert submodule_equal(u.submodule, Submodule.ideal(r2, [x]))
    assert relative_length(u.submodule, small.relations) == 1


def test_J_sees_only_the_unmixed_part():
    r = make_ring("x y z")
    x, y, z = r.gens
    m = cyclic(r, [x * y, x * z])
    sop = ParamSystem(m, [x + y, z])
    u = unmixed_component(m, sop)
    q = ParamSystem(u.quotient, sop.elements)
    for n in ExponentBox.cube(2, 3):
        assert J_fun(m, sop, n) == J_fun(u.quotient, q, n)


def test_d_sequences(kxy, two_planes):
    x, y = kxy.gens
    assert is_d_sequence(cyclic(kxy), [x, y])
    _, m, sop = two_planes
    assert is_d_sequence(m, sop.elements)
    base = Submodule.ideal(kxy, [x ** 2])
    direct = submodule_equal(colon(base, x * y), colon(base, (x * y) ** 2))
    assert is_d_sequence(cyclic(kxy), [x ** 2, x * y]) == direct is False


def test_dd_sequence_box(kxy, two_planes):
    x, y = kxy.gens
    cert = is_dd_sequence_box(cyclic(kxy), [x, y], ExponentBox.cube(2, 3))
    assert cert.passed and cert.e == [0, 0]
    _, m, sop = two_planes
    cert = is_dd_sequence_box(m, sop.elements, ExponentBox.cube(2, 3))
    assert cert.passed and cert.e == [1, 0]


def test_dd_order_matters():
    r = make_ring("x y")
    x, y = r.gens
    m = cyclic(r, [x ** 2])
    cert = is_dd_sequence_box(m, [y, x], ExponentBox.cube(2, 2))
    # direct check: (x^2, y) : x differs from (x^2, y) : x^2
    base = Submodule.ideal(r, [x ** 2, y])
    assert not submodule_equal(colon(base, x), colon(base, x ** 2))
    assert not cert.passed


def test_dd_limit_closure(kxy, two_planes):
    _, m, sop = two_planes
    cert = is_dd_sequence_box(m, sop.elements, ExponentBox.cube(2, 3))
    assert submodule_equal(limit_closure_dd(m, sop.elements, cert), limit_closure(m, sop))
    x, y = kxy.gens
    free = cyclic(kxy)
    cert = is_dd_sequence_box(free, [x, y], ExponentBox.cube(2, 2))
    assert submodule_equal(limit_closure_dd(free, [x, y], cert), free.expansion([x, y]))


def test_dd_closure_needs_certificate(two_planes):
    r = make_ring("x y")
    x, y = r.gens
    m = cyclic(r, [x ** 2])
    cert = is_dd_sequence_box(m, [y, x], ExponentBox.cube(2, 2))
    with pytest.raises(PreconditionError):
        limit_closure_dd(m, [y, x], cert)


def test_a_ideals(kxy, two_planes):
    ai = a_ideals(cyclic(kxy))
    assert all(submodule_equal(a, Submodule.ideal(kxy, [kxy.one()])) for a in ai.a)
    r, m, _ = two_planes
    ai = a_ideals(m)
    assert submodule_equal(ai.a[1], Submodule.ideal(r, r.gens))
    assert ai.lengths == [0, 1]
    assert ai.dim_quotient() == 0
    x = kxy.gens[0]
    line = a_ideals(cyclic(kxy, [x]))
    assert submodule_equal(line.a[0], Submodule.ideal(kxy, [kxy.one()]))


def test_p_standard_sop(kxy, two_planes):
    x = p_standard_sop(cyclic(kxy))
    assert all(e.total_degree() == 1 for e in x.elements)
    r, m, _ = two_planes
    x = p_standard_sop(m, seed=5)
    assert quotient_by(m, x.elements).length() != 0
    assert len(x) == 2
    with pytest.raises(NotFound):
        p_standard_sop(m, attempts=0)


def test_type_estimates(two_planes, cor44):
    box = ExponentBox.cube(2, 2)
    zero = InvariantTable(box, 1, [TableRow(n, 1, 1, 0, 0, 0, 1) for n in box])
    assert p_estimate(zero).degree == -1
    _, m, sop = two_planes
    tbl = table(m, sop, ExponentBox.cube(2, 4))
    assert pf_estimate(tbl).degree == 0
    cm, cx = cor44
    tbl = table(cm, cx, ExponentBox.cube(3, 4))
    assert pf_estimate(tbl).degree == 1


@settings(max_examples=10, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4))
def test_xM_inside_limit_closure(n1, n2):
    r = make_ring("a b c d")
    a, b, c, d = r.gens
    m = cyclic(r, [a * c, a * d, b * c, b * d])
    sop = ParamSystem(m, [a + c, b + d])
    lim = limit_closure(m, sop, (n1, n2))
    assert m.expansion(sop.power((n1, n2))) <= lim
