"""End-to-end acceptance checks, one test per criterion.

Each test prints a PASS/FAIL line and records it for the terminal summary.
"""

import time
from contextlib import contextmanager
from math import prod

from parafrac import (ExponentBox, I_fun, J_fun, ParamSystem, Submodule, a_ideals, cyclic,
                      e_hk_estimate, hk_function, ideal_as_module, is_dd_sequence_box,
                      j_hk_bridge, limit_closure, limit_closure_dd, multiplicity, p_standard_sop,
                      submodule_equal, table, unmixed_component)
from parafrac import cli, oracles
from parafrac.invariants import p_estimate, pf_estimate
from parafrac.modules import ext_module, free_resolution, idealization, quotient_by
from parafrac.scenarios import engine_self_check, idealization_additivity

from conftest import ACCEPTANCE, make_ring


@contextmanager
def criterion(num, title, limit=None):
    start = time.perf_counter()
    ACCEPTANCE[num] = ("FAIL", 0.0, title)
    try:
        yield
        secs = time.perf_counter() - start
        if limit is not None:
            assert secs < limit, f"took {secs:.1f}s, limit {limit}s"
        ACCEPTANCE[num] = ("PASS", secs, title)
    finally:
        verdict, _, _ = ACCEPTANCE[num]
        secs = time.perf_counter() - start
        ACCEPTANCE[num] = (verdict, secs, title)
        print(f"criterion {num}: {verdict} ({secs:.2f}s) {title}")


def two_planes():
    r = make_ring("a b c d")
    a, b, c, d = r.gens
    m = cyclic(r, [a * c, a * d, b * c, b * d])
    return r, m, ParamSystem(m, [a + c, b + d])


def test_criterion_01_nonpolynomial_j():
    with criterion(1, "J = min(n1, n3) on [1..4]^3 and the d = 4, v = 2 instance", limit=120):
        r = make_ring("x1 x2 x3")
        x1, x2, x3 = r.gens
        m = ideal_as_module(r, [x1, x2])
        x = ParamSystem(m, [x1 + x3, x2, x3])
        tbl = table(m, x, ExponentBox.cube(3, 4))
        assert len(tbl.rows) == 64
        for row in tbl.rows:
            assert row.J == min(row.n[0], row.n[2])
        r4 = make_ring("x1 x2 x3 x4")
        y1, y2, y3, y4 = r4.gens
        m4 = ideal_as_module(r4, [y1, y2])
        x4 = ParamSystem(m4, [y1 + y4, y2, y3, y4])
        base = quotient_by(cyclic(r4), x4.elements).length()
        assert base == 1
        e = multiplicity(m4, x4)
        for n in ExponentBox.cube(4, 3):
            assert J_fun(m4, x4, n, e) == base * n[2] * min(n[0], n[3])


def test_criterion_02_codim_two_ideals():
    with criterion(2, "J equals length(N/x^n N) for codim >= 2 ideals", limit=120):
        r = make_ring("x y z")
        x, y, z = r.gens
        for gens in ([x, y], [x * y, x * z, y * z], [x ** 2, y]):
            m = ideal_as_module(r, gens)
            sop = ParamSystem(m, r.gens)
            e = multiplicity(m, sop)
            for n in ExponentBox.cube(3, 3):
                powers = [v ** k for v, k in zip(r.gens, n)]
                # graded linear algebra, independent of Groebner bases
                direct = oracles.artinian_length(r, list(gens) + powers)
                assert J_fun(m, sop, n, e) == direct


def test_criterion_03_cohen_macaulay():
    with criterion(3, "limit closure is (x)M and I = J = 0 on CM modules"):
        p = make_ring("x y")
        h = make_ring("x y z")
        c = make_ring("x y z w")
        x, y, z = h.gens
        cx, cy, cz, cw = c.gens
        cases = [
            (cyclic(p), list(p.gens)),
            (cyclic(h, [x * z - y ** 2]), [x, z]),
            (cyclic(c, [cx * cz - cy ** 2, cy * cw - cz ** 2]), [cx, cw]),
        ]
        for m, elems in cases:
            sop = ParamSystem(m, elems)
            assert submodule_equal(limit_closure(m, sop), m.expansion(elems))
            for row in table(m, sop, ExponentBox.cube(len(elems), 3)).rows:
                assert row.I == 0 and row.J == 0


def test_criterion_04_buchsbaum_two_planes():
    with criterion(4, "two planes: I = J = 1 and the Ext cross-check"):
        r, m, sop = two_planes()
        for row in table(m, sop, ExponentBox.cube(2, 4)).rows:
            assert row.I == 1 and row.J == 1
        h1 = ext_module(free_resolution(m), r.nvars - 1).length()
        assert h1 == 1
        assert a_ideals(m).lengths == [0, 1]
        # I = C(1,1) l(H^1), J = C(1,0) l(H^1)
        assert I_fun(m, sop, (1, 1)) == 1 * h1
        assert J_fun(m, sop, (1, 1)) == 1 * h1
        a, b, c, d = r.gens
        rels = [a * c, a * d, b * c, b * d]
        assert oracles.artinian_length(r, rels + list(sop.elements)) - multiplicity(m, sop) == 1


def test_criterion_05_unmixed_invariance():
    with criterion(5, "J(M) = J(M/U) with U = image of (x)"):
        r = make_ring("x y z")
        x, y, z = r.gens
        m = cyclic(r, [x * y, x * z])
        sop = ParamSystem(m, [x + y, z])
        u = unmixed_component(m, sop)
        assert submodule_equal(u.submodule, Submodule.ideal(r, [x]))
        q = ParamSystem(u.quotient, sop.elements)
        e = multiplicity(m, sop)
        for n in ExponentBox.cube(2, 3):
            assert J_fun(m, sop, n, e) == J_fun(u.quotient, q, n, e)


def test_criterion_06_dd_closed_form():
    with criterion(6, "two planes: I = e_0 = 1 and the dd test passes"):
        _, m, sop = two_planes()
        box = ExponentBox.cube(2, 3)
        cert = is_dd_sequence_box(m, sop.elements, box)
        assert cert.passed
        assert cert.e == [1, 0]
        for n in box:
            assert I_fun(m, sop, n) == sum(prod(n[:i]) * cert.e[i] for i in range(2)) == 1


def test_criterion_07_inequality_with_p_standard():
    with criterion(7, "I <= 2^(d-2) J for p-standard sops on unmixed examples"):
        assert cli.execute(cli.bundled_text("i-j-inequality"), None, _Opts()) == 0
        s = make_ring("x y z")
        x, y, z = s.gens
        _, planes, _ = two_planes()
        cases = [(planes, 2, 3), (cyclic(s, [x * z - y ** 2]), 2, 3),
                 (ideal_as_module(s, [x, y]), 3, 2)]
        for m, d, hi in cases:
            sop = p_standard_sop(m)
            tbl = table(m, sop, ExponentBox.cube(d, hi))
            for row in tbl.rows:
                if d == 2:
                    assert row.I == row.J
                assert row.I * 4 <= 2 ** d * row.J
            # box estimates of the polynomial type against dim R/a(M)
            dim_a = a_ideals(m).dim_quotient()
            assert p_estimate(tbl).degree == pf_estimate(tbl).degree == dim_a


def test_criterion_08_idealization_additivity():
    with criterion(8, "length additivity for R x (R/J), two choices of J"):
        r, m, sop = two_planes()
        a, b, c, d = r.gens
        box = ExponentBox.cube(2, 3)
        for extra in ([a, b], [c, d]):
            ideal = idealization(m, cyclic(r, extra))
            t = ideal.ring.var(ideal.new_variables[0])
            want = Submodule.ideal(ideal.ring,
                                   [ideal.lift(g.component(0)) for g in m.relations.gens]
                                   + [t ** 2] + [t * ideal.lift(g) for g in extra])
            assert submodule_equal(ideal.module.relations, want)
            lifted = ParamSystem(ideal.module, [ideal.lift(e) for e in sop.elements])
            v = idealization_additivity(ideal, lifted, box)
            assert v.passed, v.details["mismatches"]


def test_criterion_09_dd_closure_matches():
    with criterion(9, "closed-form limit closure equals the colon-chain one"):
        p = make_ring("x y")
        h = make_ring("x y z")
        x, y, z = h.gens
        _, planes, psop = two_planes()
        cases = [(planes, psop.elements), (cyclic(p), list(p.gens)),
                 (cyclic(h, [x * z - y ** 2]), [x, z]),
                 (cyclic(h, [x * y, x * z]), [x + y, z])]
        compared = 0
        for m, elems in cases:
            cert = is_dd_sequence_box(m, elems, ExponentBox.cube(len(elems), 3))
            if cert.passed:
                sop = ParamSystem(m, elems)
                assert submodule_equal(limit_closure_dd(m, elems, cert), limit_closure(m, sop))
                compared += 1
        assert compared >= 3


def test_criterion_10_hilbert_kunz():
    with criterion(10, "Hilbert-Kunz values, estimate and the bridge", limit=60):
        r = make_ring("x y", char=2)
        x, y = r.gens
        s = hk_function(cyclic(r), r.gens, 4)
        assert s.values == [(q, q * q) for q in (2, 4, 8, 16)]
        node = hk_function(cyclic(r, [x * y]), r.gens, 4)
        assert node.values == [(q, 2 * q - 1) for q in (2, 4, 8, 16)]
        est = e_hk_estimate(node, 1)
        assert abs(est.value - 2) <= 0.125
        r3 = make_ring("x y z", char=2)
        a, b, c = r3.gens
        for gens in ([a, b], [a * b, a * c, b * c]):
            tbl = j_hk_bridge(r3, gens, 3)
            assert [row.q for row in tbl.rows] == [2, 4, 8]
            assert tbl.agree


def test_criterion_11_engine_properties():
    with criterion(11, "randomized engine checks against graded linear algebra", limit=300):
        v = engine_self_check(make_ring("x y z"), count=200, seed=0)
        assert v.details["trials"] == 200
        assert v.passed, v.details["failures"]


class _Opts:
    cap = 32
    threads = 1
    format = "csv"
    seed = 0
    timings = False
