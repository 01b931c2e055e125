import random

import pytest
import sympy

from frobsig.errors import NotZeroDimensional
from frobsig.groebner import (
    buchberger,
    colength,
    is_primary_to_origin,
    krull_dimension,
    multiplication_matrix,
    normal_form,
    quotient_basis,
)
from frobsig.poly import GREVLEX, LEX

from conftest import make_ring


def sympy_basis(gens, variables, p, order):
    syms = sympy.symbols(variables)
    G = sympy.groebner([sympy.sympify(g) for g in gens], *syms, order=order, modulus=p)
    out = set()
    for g in G.exprs:
        poly = sympy.Poly(g, *syms, modulus=p)
        lc = int(poly.LC(order=order)) % p
        scale = pow(lc, -1, p)
        out.add(tuple(sorted((m, int(c) * scale % p) for m, c in poly.terms())))
    return out


def ours(gb, p):
    return {tuple(sorted((m, c % p) for m, c in g.terms.items())) for g in gb}


def test_examples():
    P = make_ring("GF(2)")
    assert set(buchberger([P("x^2"), P("x*y")])) == {P("x^2"), P("x*y")}
    gb = buchberger([P("y^2+x^3"), P("x^2")])
    assert set(gb) == {P("x^2"), P("y^2")}
    Pl = make_ring("GF(2)", order=LEX)
    assert list(buchberger([Pl("x+y")])) == [Pl("x+y")]


def test_empty_and_zero_input():
    P = make_ring("GF(3)")
    assert len(buchberger([P("0")], ring=P)) == 0
    assert buchberger([P("x+1"), P("x")]).is_unit_ideal()


def test_normal_forms():
    P = make_ring("GF(2)")
    gb = buchberger([P("x^2"), P("y^2")])
    assert normal_form(P("x^3"), gb).is_zero()
    assert normal_form(P("x*y + x"), gb) == P("x*y + x")
    assert normal_form(P("y^2 + x^3"), gb).is_zero()


def test_quotient_basis_examples():
    P = make_ring("GF(2)")
    qb = quotient_basis(buchberger([P("x^2"), P("y^2")]))
    assert sorted(qb.monomials) == sorted([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert qb.dimension_as_vector_space == 4
    assert colength([P("x^4"), P("y^4")]) == 16
    gb = buchberger([P("x^4"), P("y^4"), P("x^2*y^2")])
    # 16 minus the four monomials x^a y^b with 2 <= a, b <= 3
    grid = [(a, b) for a in range(4) for b in range(4) if not (a >= 2 and b >= 2)]
    assert sorted(gb.quotient_basis().monomials) == sorted(grid)
    assert gb.colength() == 12


def test_not_zero_dimensional():
    P = make_ring("GF(2)")
    with pytest.raises(NotZeroDimensional):
        quotient_basis(buchberger([P("x^2")]))


def test_multiplication_matrices():
    P1 = make_ring("GF(2)", ("x",))
    gb = buchberger([P1("x^2")])
    qb = quotient_basis(gb)
    assert multiplication_matrix(gb, qb, 0) == [[0, 0], [1, 0]]
    gb = buchberger([P1("x-1")])
    assert multiplication_matrix(gb, quotient_basis(gb), 0) == [[1]]
    P = make_ring("GF(2)")
    gb = buchberger([P("x^2"), P("y^2")])
    qb = quotient_basis(gb)
    Mx = multiplication_matrix(gb, qb, 0)
    idx = qb.index
    # columns are images of basis monomials
    assert Mx[idx[(1, 0)]][idx[(0, 0)]] == 1
    assert Mx[idx[(1, 1)]][idx[(0, 1)]] == 1
    assert all(Mx[r][idx[(1, 0)]] == 0 for r in range(4))
    assert all(Mx[r][idx[(1, 1)]] == 0 for r in range(4))


def test_primary_to_origin():
    P = make_ring("GF(2)")
    assert is_primary_to_origin(buchberger([P("x^2"), P("y^2")]))
    P1 = make_ring("GF(2)", ("x",))
    assert not is_primary_to_origin(buchberger([P1("x-1")]))
    assert not is_primary_to_origin(buchberger([P1("x^2+x")]))
    # the cusp with (x^2 + x, y): the second zero (1, 0) is not on the curve
    assert is_primary_to_origin(buchberger([P("y^2+x^3"), P("x^2+x"), P("y")]))


def test_krull_dimension():
    P = make_ring("GF(2)")
    assert krull_dimension(buchberger([P("0")], ring=P)) == 2
    assert krull_dimension(buchberger([P("y^2+x^3")])) == 1
    Pl = make_ring("GF(2)", order=LEX)
    assert krull_dimension(buchberger([Pl("y^2+x^3")])) == 1
    assert krull_dimension(buchberger([P("x"), P("y")])) == 0


CASES = [
    (2, ("x", "y"), ["x^3 + y^2", "x*y + y"]),
    (2, ("x", "y", "z"), ["x^2 + y*z", "y^2 + x*z", "z^2 + x*y"]),
    (3, ("x", "y"), ["x^2 - y^2", "x*y - 1"]),
    (3, ("x", "y", "z"), ["x^2 + y^2 + z^2", "x*y*z", "x^3 - y"]),
    (5, ("x", "y"), ["x^3 + 2*x*y - 1", "y^2 + 3*x"]),
]


@pytest.mark.parametrize("p,variables,gens", CASES)
@pytest.mark.parametrize("order", ["grevlex", "lex"])
def test_reduced_basis_matches_sympy(p, variables, gens, order):
    P = make_ring(f"GF({p})", variables, GREVLEX if order == "grevlex" else LEX)
    gb = buchberger([P(g) for g in gens])
    assert ours(gb, p) == sympy_basis([g.replace("^", "**") for g in gens], variables, p, order)


def test_random_bases_match_sympy():
    rng = random.Random(20241)
    variables = ("x", "y", "z")
    for _ in range(12):
        p = rng.choice([2, 3])
        gens = []
        for _ in range(rng.randint(2, 3)):
            terms = []
            for _ in range(rng.randint(1, 3)):
                exps = [rng.randint(0, 2) for _ in variables]
                c = rng.randint(1, p - 1)
                terms.append(f"{c}*" + "*".join(f"{v}^{a}" for v, a in zip(variables, exps)))
            gens.append(" + ".join(terms))
        P = make_ring(f"GF({p})", variables)
        gb = buchberger([P(g) for g in gens], ring=P)
        assert ours(gb, p) == sympy_basis([g.replace("^", "**") for g in gens], variables, p, "grevlex")
