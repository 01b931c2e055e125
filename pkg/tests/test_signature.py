from fractions import Fraction

import pytest

from frobsig.errors import NotPrimaryToOrigin, NotProperContainment, NotZeroDimensional
from frobsig.signature import (
    convergence_report,
    hk_function,
    minimal_generator_count,
    minimizer_closure_check,
    parameter_warnings,
    s_rat_trunc,
    s_trunc,
    s_trunc_min,
)

from conftest import make_pres


def test_s_trunc_examples(plane2, cusp):
    v = s_trunc(plane2, ["x^2", "y^2"], ["x^2", "y^2", "x*y"], 1)
    assert (v.numerator_length, v.denominator_length, v.value) == (4, 1, 1)
    v = s_trunc(cusp, ["x"], ["x", "y"], 1)
    assert (v.numerator_length, v.denominator_length, v.value) == (0, 1, 0)
    with pytest.raises(NotProperContainment):
        s_trunc(plane2, ["x", "y"], ["y", "x"], 1)
    with pytest.raises(NotProperContainment):
        s_trunc(plane2, ["x", "y^2"], ["y"], 1)


def test_s_trunc_min_examples(plane2, cusp):
    res = s_trunc_min(cusp, ["x"], 1)
    assert res.minimum == 0 and res.argmin == ((1,),) and res.exhaustive
    assert s_trunc_min(plane2, ["x", "y"], 1).minimum == 1
    art = make_pres("GF(2)", ("x", "y"), ["x^2", "y^2"])
    assert art.dimension == 0
    res = s_trunc_min(art, [], 1)
    assert res.minimum == 0 and res.socle_dimension == 1


def test_s_rat_examples(plane2, cusp):
    res = s_rat_trunc(plane2, ["x^2", "y^2"], 1)
    assert res.minimum == 1 and res.candidate_count == 1
    assert s_rat_trunc(cusp, ["x"], 1).minimum == 0


def test_subset_bound_on_socle_two():
    R = make_pres("GF(2)", ("x", "y", "z"), ["x^2 + y*z"])
    I0 = ["x", "y^2", "z^2"]
    full = s_trunc_min(R, I0, 1)
    rat = s_rat_trunc(R, I0, 1)
    assert rat.minimum >= full.minimum
    assert full.paths_agree and rat.paths_agree


def test_hk_examples(plane2, cusp):
    assert [h.length for h in hk_function(plane2, ["x", "y"], 3)] == [1, 4, 16, 64]
    assert all(h.normalized == 1 for h in hk_function(plane2, ["x", "y"], 3))
    cusp_hk = hk_function(cusp, ["x"], 4)
    assert [h.length for h in cusp_hk] == [2, 4, 8, 16, 32]
    assert all(h.normalized == 2 for h in cusp_hk)
    assert [h.length for h in hk_function(cusp, ["x"], 0)] == [2]


def test_convergence_examples():
    c = convergence_report({1: 1, 2: 1, 3: 1}, 2)
    assert c.C_emp == 0 and c.limit_interval == (1, 1)
    c = convergence_report({1: 0, 2: 0, 3: 0}, 2)
    assert c.C_emp == 0 and c.limit_interval == (0, 0)
    c = convergence_report({1: Fraction(1, 2), 2: Fraction(1, 4)}, 2)
    assert c.C_emp == Fraction(1, 2)
    assert c.limit_interval == (Fraction(1, 8), Fraction(3, 8))


def test_convergence_prefix_intervals():
    vals = {1: Fraction(13, 9), 2: Fraction(121, 81), 3: Fraction(1093, 729)}
    c = convergence_report(vals, 3)
    assert set(c.prefix_intervals) == {2, 3}
    assert c.prefix_intervals[3][1] == c.limit_interval
    assert c.bounded and c.nested
    with pytest.raises(ValueError):
        convergence_report({1: 1}, 2)


def test_closure_examples(plane2, cusp):
    cert = minimizer_closure_check(cusp, ["x"], 1)
    assert cert.passed and len(cert.minimizers) == 1 and cert.pairs_checked == 0
    cert = minimizer_closure_check(plane2, ["x^2", "y^2"], 1)
    assert cert.passed and cert.minimizers == [((1,),)]


def test_closure_with_many_minimizers(plane2):
    # regular ring: all three lines and the whole socle are minimizers
    cert = minimizer_closure_check(plane2, ["x^2", "x*y", "y^2"], 1)
    assert len(cert.minimizers) == 4 and cert.pairs_checked == 6 and cert.passed
    assert cert.maximal_minimizer == ((1, 0), (0, 1))


def test_rejects_bad_ideals(plane2):
    with pytest.raises(NotPrimaryToOrigin):
        s_trunc_min(plane2, ["x^2 + x", "y"], 1)
    with pytest.raises(NotZeroDimensional):
        s_trunc_min(plane2, ["x"], 1)


def test_parameter_warnings(plane2, cusp):
    assert minimal_generator_count(plane2, ["x^2", "x*y", "y^2"]) == 3
    assert parameter_warnings(plane2, ["x^2", "y^2"]) == []
    assert parameter_warnings(cusp, ["x"]) == []
    w = parameter_warnings(cusp, ["x", "y"])
    assert len(w) == 1 and "not a parameter ideal" in w[0]
    user = make_pres("GF(2)", ("x", "y"), ["y^2 + x^3"], dim=1)
    assert any("supplied by the user" in s for s in parameter_warnings(user, ["x"]))


def test_dimension_override_changes_normalization():
    R = make_pres("GF(2)", ("x", "y"), ["y^2 + x^3"], dim=2)
    assert R.dimension_source == "user"
    assert [h.normalized for h in hk_function(R, ["x"], 1)] == [2, 1]


def test_parallel_matches_serial():
    R = make_pres("GF(2)", ("x", "y"))
    I0 = ["x^4", "x^3*y", "x^2*y^2", "x*y^3", "y^4"]
    a = s_trunc_min(R, I0, 1)
    b = s_trunc_min(R, I0, 1, parallel=3)
    assert [c.value for c in a.candidates] == [c.value for c in b.candidates]
    assert a.argmin == b.argmin


def test_cubic_cone_sequence_nests():
    R = make_pres("GF(2)", ("x", "y", "z"), ["x^3 + y^3 + z^3"])
    vals = {e: s_trunc_min(R, ["x", "y", "z"], e).minimum for e in (1, 2, 3)}
    assert vals == {1: 2, 2: Fraction(9, 4), 3: Fraction(9, 4)}
    c = convergence_report(vals, 2)
    assert c.C_emp == Fraction(1, 2)
    assert c.bounded and c.nested and not c.constant
