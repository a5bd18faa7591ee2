import pytest

from parafrac import PolyRing, cyclic, field_from_characteristic
from parafrac.orders import parse_order


def make_ring(names, char=101, order="grevlex"):
    return PolyRing(field_from_characteristic(char), names.split(), parse_order(order))


@pytest.fixture
def kxy():
    return make_ring("x y")


@pytest.fixture
def kxyz():
    return make_ring("x y z")


@pytest.fixture
def two_planes():
    """k[a,b,c,d]/(ac, ad, bc, bd) with the sop (a+c, b+d)."""
    from parafrac import ParamSystem
    r = make_ring("a b c d")
    a, b, c, d = r.gens
    m = cyclic(r, [a * c, a * d, b * c, b * d])
    return r, m, ParamSystem(m, [a + c, b + d])


# criterion number -> (verdict, seconds, title), filled in by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        verdict, secs, title = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {verdict}  ({secs:.2f}s)  {title}")
