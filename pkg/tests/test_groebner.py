import random

import pytest
from hypothesis import given, settings, strategies as st

from parafrac import INFINITE, Lex, Submodule, buchberger, colon, intersect, submodule_equal, syzygies
from parafrac.groebner import annihilator_of_quotient, saturation, syzygies_by_elimination
from parafrac import oracles

from conftest import make_ring


def ideal(r, *gens):
    return Submodule.ideal(r, list(gens))


def test_already_a_basis(kxy):
    x, y = kxy.gens
    gb = buchberger([x, y], order=Lex())
    assert sorted(map(str, gb.polynomials())) == ["x", "y"]


def test_small_basis(kxy):
    x, y = kxy.gens
    gb = buchberger([x * y, x - y])
    assert sorted(map(str, gb.polynomials())) == ["x - y", "y^2"]


def test_principal_is_made_monic(kxy):
    x, y = kxy.gens
    gb = buchberger([3 * x + 6 * y])
    assert gb.polynomials() == [x + 2 * y]


def test_normal_forms(kxy):
    x, y = kxy.gens
    assert buchberger([x]).normal_form(x ** 2).is_zero()
    assert buchberger([x]).normal_form(x ** 2 + y) == y
    assert buchberger([x * y, x - y]).normal_form(y ** 2).is_zero()


def test_submodule_equality(kxy):
    x, y = kxy.gens
    assert submodule_equal(ideal(kxy, x, y), ideal(kxy, y, x + y))
    assert not submodule_equal(ideal(kxy, x ** 2), ideal(kxy, x))
    assert submodule_equal(ideal(kxy, x * y, x - y), ideal(kxy, x - y, y ** 2))


def test_standard_monomials(kxy):
    x, y = kxy.gens
    mons = buchberger([x ** 2, x * y, y ** 2]).std_monomials()
    assert sorted(e for _, e in mons) == [(0, 0), (0, 1), (1, 0)]
    assert buchberger([x]).std_monomials() is INFINITE
    k = make_ring("x")
    assert len(buchberger([k.gens[0] ** 7]).std_monomials()) == 7


def test_koszul_syzygy(kxy):
    x, y = kxy.gens
    syz = syzygies([x, y])
    assert len(syz.gens) == 1
    s = syz.gens[0]
    assert s.component(0) * x + s.component(1) * y == kxy.zero()
    assert s.component(0) in (y, -y)


def test_single_generator_has_no_syzygy(kxy):
    x, y = kxy.gens
    assert syzygies([x * y + y ** 2]).is_zero()


def test_syzygies_evaluate_to_zero(kxy):
    x, y = kxy.gens
    gens = [x * y, x - y]
    syz = syzygies(gens)
    assert not syz.is_zero()
    for s in syz.gens:
        assert (s.component(0) * gens[0] + s.component(1) * gens[1]).is_zero()
    assert submodule_equal(syz, syzygies_by_elimination(gens))


def test_intersections(kxy):
    x, y = kxy.gens
    assert submodule_equal(intersect(ideal(kxy, x), ideal(kxy, y)), ideal(kxy, x * y))
    a = ideal(kxy, x ** 2, y ** 3)
    assert submodule_equal(intersect(a, a), a)
    got = intersect(ideal(kxy, x ** 2, y), ideal(kxy, x))
    assert submodule_equal(got, ideal(kxy, x ** 2, x * y))


def test_intersection_matches_graded_dimensions(kxy):
    x, y = kxy.gens
    a, b = [x ** 2, y], [x]
    inter = [g.component(0) for g in intersect(ideal(kxy, *a), ideal(kxy, *b)).gens]
    for deg in range(5):
        expected = (oracles.graded_piece(kxy, a, deg).rank + oracles.graded_piece(kxy, b, deg).rank
                    - oracles.graded_piece(kxy, a + b, deg).rank)
        assert oracles.graded_piece(kxy, inter, deg).rank == expected


def test_colons():
    k = make_ring("x")
    (x,) = k.gens
    assert submodule_equal(colon(ideal(k, x ** 2), x), ideal(k, x))
    r = make_ring("x y")
    x, y = r.gens
    assert colon(ideal(r, x, y), x).contains(r.one())
    assert submodule_equal(colon(ideal(r, x ** 2, x * y, y ** 2), x), ideal(r, x, y))


def test_colon_by_zero_rejected(kxy):
    with pytest.raises(ValueError):
        colon(ideal(kxy, kxy.gens[0]), kxy.zero())


def test_saturation(kxy):
    x, y = kxy.gens
    sat = saturation(ideal(kxy, x ** 2, x * y), [x, y])
    assert submodule_equal(sat, ideal(kxy, x))


def test_annihilator_of_quotient(kxy):
    x, y = kxy.gens
    ann = annihilator_of_quotient(Submodule.whole(kxy, 1), ideal(kxy, x ** 2, y))
    assert submodule_equal(ann, ideal(kxy, x ** 2, y))


def test_module_basis_and_length(kxy):
    x, y = kxy.gens
    rels = [kxy.vector([x, y]), kxy.vector([y, 0]), kxy.vector([0, x ** 2]), kxy.vector([x ** 2, 0])]
    sub = Submodule(kxy, 2, rels)
    gb = sub.gb()
    for v in rels:
        assert gb.reduces_to_zero(v)
    mons = gb.std_monomials()
    assert mons is not INFINITE
    assert sub.quotient_length() == len(mons)


# -- properties -------------------------------------------------------------------------

@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_ideals_against_oracle(seed):
    rng = random.Random(seed)
    r = make_ring("x y z")
    gens = oracles.random_ideal(r, rng, ngens=(1, 3), degs=(1, 3))
    gb = buchberger(gens)
    assert [str(g) for g in buchberger(list(gb))] == [str(g) for g in gb]
    for _ in range(3):
        v = oracles.random_homogeneous(r, rng.randint(0, 4), rng)
        nf = gb.normal_form(v)
        assert gb.normal_form(nf) == nf
        assert nf.is_zero() == oracles.in_ideal(r, gens, v)
    art = gens + [g ** 3 for g in r.gens]
    assert len(buchberger(art).std_monomials()) == oracles.artinian_length(r, art)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_colon_generators_satisfy_definition(seed):
    rng = random.Random(seed)
    r = make_ring("x y")
    gens = oracles.random_ideal(r, rng, ngens=(1, 3), degs=(1, 3))
    f = oracles.random_homogeneous(r, 1, rng) or r.gens[0]
    n = ideal(r, *gens)
    c = colon(n, f)
    for g in c.gens:
        assert n.contains(f * g.component(0))
    for deg in range(5):
        hf = oracles.graded_piece(r, [g.component(0) for g in c.gens], deg).rank
        assert hf == oracles.colon_piece_dim(r, gens, f, deg)


def test_engine_self_check_small():
    from parafrac.scenarios import engine_self_check
    v = engine_self_check(make_ring("x y z"), count=15, seed=3)
    assert v.passed, v.details
