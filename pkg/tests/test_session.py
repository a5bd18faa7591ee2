import pytest
from hypothesis import given, settings, strategies as st

from parafrac import ParamSystem, parse_session
from parafrac.errors import ParseError
from parafrac.invariants import ExponentBox

MINIMAL = """\
ring R = poly(char=101, vars=[a, b, c, d])
module M = cyclic(R; a*c, a*d, b*c, b*d)
sop X on M = [a+c, b+d]
"""


def parse_error(text):
    with pytest.raises(ParseError) as err:
        parse_session(text)
    return err.value


def test_minimal_session():
    s = parse_session(MINIMAL)
    assert isinstance(s.objects["X"], ParamSystem)
    assert s.objects["M"].dim() == 2
    assert s.tasks() == []


def test_forward_references_and_comments():
    text = """\
# tasks may come first
task T = table(M, X, B)
sop X on M = [x + y, z]   # trailing comment
module M = cyclic(R; x*y)
box B = [1..2, 1..3]
ring R = poly(char=32003, vars=[x, y, z])
"""
    s = parse_session(text)
    (t,) = s.tasks()
    assert t.kind == "table"
    assert s.objects["B"] == ExponentBox(((1, 2), (1, 3)))


def test_undeclared_variable_location():
    err = parse_error(MINIMAL.replace("[a+c, b+d]", "[a+c, b+e]"))
    assert (err.line, err.column) == (3, 22)
    assert "e" in err.message


def test_idealization_cycles():
    base = "ring R = poly(char=101, vars=[a, b])\n"
    err = parse_error(base + "module S = idealization(R, S)\n")
    assert "cyclic reference" in err.message and err.line == 2
    err = parse_error(base + "module S = idealization(R, T)\nmodule T = idealization(R, S)\n")
    assert "S -> T -> S" in err.message


def test_non_homogeneous_element():
    err = parse_error("ring R = poly(char=101, vars=[a, b])\nmodule M = cyclic(R; a*b, a + b^2)\n")
    assert (err.line, err.column) == (2, 27)
    assert "homogeneous" in err.message


def test_arity_and_kind_errors():
    head = MINIMAL + "box B = [1..2, 1..2]\n"
    assert "expects 3" in parse_error(head + "task T = table(M, X)\n").message
    assert "wrong kind" in parse_error(head + "task T = table(M, B, X)\n").message
    assert "unknown task" in parse_error(head + "task T = frob(M)\n").message
    assert "unknown name" in parse_error(head + "task T = mult(M, Y)\n").message


def test_syntax_errors():
    assert parse_error("ring R = poly(char=101, vars=[a]\n").line == 1
    assert parse_error("modul M = 3\n").column == 1
    assert "already declared" in parse_error(MINIMAL + "sop X on M = [a, b]\n").message
    assert "range" in parse_error(MINIMAL + "box B = [1..2, 3]\n").message
    assert "prime" in parse_error("ring R = poly(char=4, vars=[a])\n").message


def test_sop_must_be_parameters():
    err = parse_error(MINIMAL.replace("[a+c, b+d]", "[a, b]"))
    assert err.line == 3


def test_presentation_and_quotient():
    text = """\
ring R = poly(char=101, vars=[x, y, z])
module F = presentation(R; degrees=[0, 0]; [y, -x], [z, 0])
module Q = quotient(F; x, y)
ideal I in R = [x, y^2]
"""
    s = parse_session(text)
    assert s.objects["F"].rank == 2
    assert len(s.objects["I"]) == 2
    assert parse_session(s.to_text()) == s


def test_round_trip():
    text = MINIMAL + """\
box B = [1..3, 1..3]
module N = cyclic(R; a, b)
module S = idealization(M, N)
sop Y on S = [a + c, b + d]
task T = table(M, X, B)
task V = verify(idealization-additivity, S, Y, B)
"""
    s = parse_session(text)
    printed = s.to_text()
    again = parse_session(printed)
    assert again == s
    assert again.to_text() == printed


names = st.sampled_from(["x", "y", "z"])


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 9), names, names), min_size=1, max_size=4))
def test_round_trip_random_elements(terms):
    poly = " + ".join(f"{c}*{u}*{v}" for c, u, v in terms)
    text = f"ring R = poly(char=101, vars=[x, y, z])\nideal I in R = [{poly}, x^2]\n"
    s = parse_session(text)
    assert parse_session(s.to_text()) == s
