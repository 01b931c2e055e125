import pytest

from frobsig.errors import AmbientMismatch, DegreeBudgetExceeded, ParseError, UnknownVariable
from frobsig.poly import GREVLEX, LEX, Cmp, MonomialOrder, compare, frobenius_power_poly

from conftest import make_ring


def repeated_product(f, times):
    out = f.ring.one()
    for _ in range(times):
        out = out * f
    return out


def test_compare_examples():
    assert compare((1, 0), (0, 1), GREVLEX) == Cmp.GT
    assert compare((2, 0), (1, 3), GREVLEX) == Cmp.LT
    assert compare((1, 0), (0, 5), LEX) == Cmp.GT
    assert compare((1, 1), (1, 1), LEX) == Cmp.EQ


def test_grevlex_reverse_tiebreak():
    # x*z < y^2 in grevlex (x>y>z): smaller exponent in the last variable wins
    assert compare((1, 0, 1), (0, 2, 0), GREVLEX) == Cmp.LT
    assert compare((1, 0, 1), (0, 2, 0), LEX) == Cmp.GT


def test_precedence():
    order = MonomialOrder("lex", precedence=(1, 0))
    assert compare((1, 0), (0, 1), order) == Cmp.LT


def test_compare_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        compare((1, 0), (1, 0, 0), GREVLEX)


def test_frobenius_examples():
    P = make_ring("GF(2)")
    assert frobenius_power_poly(P("x+y"), 1) == P("x^2+y^2")
    Q = make_ring("GF(2)(t)")
    assert frobenius_power_poly(Q("x + t*y"), 1) == Q("x^2 + t^2*y^2")
    R = make_ring("GF(3)", ("x",))
    assert frobenius_power_poly(R("x+1"), 1) == R("x^3+1")
    assert repeated_product(R("x+1"), 3) == R("x^3+1")


def test_frobenius_against_products():
    for field, f, e in [
        ("GF(2)", "x^2 + x*y + 1", 2),
        ("GF(3)", "2*x + y^2 + x*y", 1),
        ("GF(3)", "x + y + 1", 2),
        ("GF(4)", "w*x + y", 2),
        ("GF(2)(t)", "t*x + y + 1/t", 2),
    ]:
        P = make_ring(field)
        g = P(f)
        q = P.spec.p**e
        assert frobenius_power_poly(g, e) == repeated_product(g, q)


def test_arithmetic_examples():
    P = make_ring("GF(2)")
    assert (P("x+y") + P("x+y")).is_zero()
    assert P("x") * P("y") == P("x*y")
    Q = make_ring("GF(3)")
    assert Q("x+y") * Q("x+y") == Q("x^2 + 2*x*y + y^2")


def test_parse_and_print():
    P = make_ring("GF(4)")
    f = P("w*x^2 + (w+1)*y + 1")
    assert str(f) == "w*x^2 + (w+1)*y + 1"
    assert P(str(f)) == f
    assert P("x**2 - x y") == P("x^2 + x*y")
    assert P("(x+y)^2") == P("x^2+y^2")


def test_parse_errors():
    P = make_ring("GF(2)")
    with pytest.raises(UnknownVariable) as ei:
        P("x + z")
    assert ei.value.column == 5
    with pytest.raises(ParseError):
        P("x +")
    with pytest.raises(ParseError):
        P("x / y")


def test_sorted_terms_follow_order():
    P = make_ring("GF(3)", ("x", "y", "z"))
    f = P("x*z + y^2 + x^3 + 1")
    mons = [m for m, _ in f.sorted_terms()]
    assert mons == [(3, 0, 0), (0, 2, 0), (1, 0, 1), (0, 0, 0)]
    g = f.with_ring(P.with_order(LEX))
    assert [m for m, _ in g.sorted_terms()] == [(3, 0, 0), (1, 0, 1), (0, 2, 0), (0, 0, 0)]


def test_degree_budget():
    P = make_ring("GF(2)", ("x",))
    with pytest.raises(DegreeBudgetExceeded):
        P("x") ** (2**21)


def test_variable_clashes_with_generator():
    with pytest.raises(ValueError):
        make_ring("GF(2)(t)", ("t", "x"))
