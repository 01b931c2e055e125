import itertools

import pytest

from frobsig.errors import DivisionByZero, InvalidFieldSpec, NotAPthPower
from frobsig.field import (
    ExtensionField,
    FieldElement,
    FunctionField,
    PrimeField,
    first_irreducible,
    frobenius,
    inv,
    is_irreducible,
    parse_field,
    pth_root,
)


def brute_irreducible(modulus, p):
    """Trial division by every monic polynomial of degree 1..m//2."""
    m = len(modulus) - 1

    def rem(a, b):
        a = list(a)
        while len(a) >= len(b) and any(a):
            if a[-1] == 0:
                a.pop()
                continue
            c = a[-1] * pow(b[-1], -1, p) % p
            shift = len(a) - len(b)
            for i, x in enumerate(b):
                a[shift + i] = (a[shift + i] - c * x) % p
            a.pop()
        return a

    for deg in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            div = list(low) + [1]
            if not any(rem(modulus, div)):
                return False
    return True


@pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_rabin_matches_trial_division(p, m):
    for low in itertools.product(range(p), repeat=m):
        f = tuple(low) + (1,)
        assert is_irreducible(f, p) == brute_irreducible(f, p), f


def test_first_irreducible_small():
    assert first_irreducible(2, 2) == (1, 1, 1)
    assert first_irreducible(3, 2) == (1, 0, 1)
    for p, m in [(2, 8), (3, 4), (5, 3), (7, 2)]:
        assert brute_irreducible(first_irreducible(p, m), p)


def test_inverse_examples():
    F5 = PrimeField(5)
    assert inv(F5(2)) == 3
    F4 = parse_field("GF(4) mod w^2+w+1")
    w = F4(F4.gen())
    assert inv(w) == w + 1
    Ft = parse_field("GF(2)(t)")
    t = Ft(Ft.gen())
    assert str(inv(t)) == "1/(t)"
    assert inv(t) * t == 1


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        inv(PrimeField(3)(0))
    F4 = parse_field("GF(4)")
    with pytest.raises(DivisionByZero):
        inv(F4(F4.zero))
    with pytest.raises(DivisionByZero):
        inv(FunctionField(2, ("t",))(0))


def test_frobenius_examples():
    assert frobenius(PrimeField(2)(1), 3) == 1
    F4 = parse_field("GF(4)")
    w = F4(F4.gen())
    assert frobenius(w, 1) == w + 1
    assert frobenius(w, 1) == w * w
    Ft = parse_field("GF(2)(t)")
    t = Ft(Ft.gen())
    assert frobenius(t, 2) == t * t * t * t
    assert str(frobenius(t, 2)) == "t^4"


def test_pth_root_examples():
    assert pth_root(PrimeField(3)(2)) == 2
    F4 = parse_field("GF(4)")
    w = F4(F4.gen())
    assert pth_root(w) == w * w
    assert pth_root(w) * pth_root(w) == w
    Ft = parse_field("GF(2)(t)")
    with pytest.raises(NotAPthPower):
        pth_root(Ft(Ft.gen()))
    t = Ft(Ft.gen())
    assert pth_root(t * t + 1) == t + 1


def test_function_field_normal_form():
    K = parse_field("GF(2)(t,s)")
    t, s = (K(g) for g in K.generators().values())
    a = (t * t + s * s) / (t + s)
    assert a == t + s
    assert a.value == (t + s).value
    b = (t + 1) / (t * t + 1)
    assert str(b) == "1/(t+1)"
    # denominator is normalized to be monic
    K3 = parse_field("GF(3)(t)")
    t3 = K3(K3.gen())
    c = K3(1) / (2 * t3)
    assert str(c) == "2/(t)"


def test_parse_field_errors():
    for bad in ["GF(6)", "GF(1)", "GF(4) mod w^2+1", "GF(4)(t)", "GF(37)", "F(2)", "GF(2)(t,t)"]:
        with pytest.raises(InvalidFieldSpec):
            parse_field(bad)


def test_parse_field_round_trip():
    for text in ["GF(2)", "GF(3)", "GF(4) mod w^2+w+1", "GF(8)", "GF(9)", "GF(2)(t)", "GF(3)(a,b)"]:
        K = parse_field(text)
        assert parse_field(str(K)) == K


def test_extension_elements_are_a_field():
    for text in ["GF(4)", "GF(8)", "GF(9)"]:
        K = parse_field(text)
        els = list(K.elements())
        assert len(els) == K.order == len(set(els))
        for a in els:
            if not K.is_zero(a):
                assert K.is_one(K.mul(a, K.inv(a)))
            # x^q = x on the whole field
            assert K.frobenius(a, K.degree) == a


def test_field_element_mixing_specs():
    a = PrimeField(2)(1)
    b = PrimeField(3)(1)
    with pytest.raises(Exception):
        a + b
    assert isinstance(a, FieldElement)
    assert isinstance(parse_field("GF(4)"), ExtensionField)
