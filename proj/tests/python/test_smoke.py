from fractions import Fraction

import pytest

import lascap

TRIANGLE = """domain 0 1
var a
var b
var c
fun cut 2
0 0 0
0 1 1
1 0 1
1 1 0
con cut 1 a b
con cut 1 b c
con cut 1 a c
"""

KNAP = "var x\nvar y\nvar z\nrow <= 3 2*x 2*y 2*z\nobj x y z\nbox\n"


def test_triangle_gap():
    assert lascap.brute_force_opt(TRIANGLE) == 2
    assert lascap.blp_value(TRIANGLE) == Fraction(3)


def test_encode_and_lift():
    lp = lascap.encode(TRIANGLE)
    assert lp.startswith("var ")
    sdp = lascap.lift(KNAP, 1)
    assert "vars 7" in sdp
    with pytest.raises(lascap.TooLarge):
        lascap.lift(lp, 1, max_coordinates=10)


def test_solve_level_rounds_to_integer_optimum():
    r = lascap.solve_level(KNAP, 2)
    assert r["status"] == "solved"
    assert r["rounded"] == 1
    assert abs(r["value"] - 1) <= Fraction(1, 4)
    assert isinstance(r["value"], Fraction)
    assert lascap.solve_level(KNAP, 2, max_iterations=3)["status"] == "budget"


def test_capture_report():
    rep = lascap.min_capture_level(TRIANGLE, t_max=1)
    assert rep["opt"] == 2 and rep["blp"] == 3
    assert rep["capture_level"] is None and not rep["determined"]
    assert rep["levels"][1]["status"] == "too-large"


def test_reduction_chain():
    cnf = lascap.threelin_to_threesat("p 3lin 3 2\n1 2 3 0\n1 2 3 1\n")
    assert not lascap.satisfiable(cnf)
    graph, threshold = lascap.threesat_to_maxcut(cnf)
    assert graph.startswith("vertices ")
    assert threshold > 0


def test_exact_linear_algebra():
    ok, witness = lascap.psd_certificate([[0, 1], [1, 0]])
    assert not ok
    v = witness
    assert 2 * v[0] * v[1] < 0
    assert lascap.psd_certificate([[2, "1/2"], ["1/2", 1]])[0]
    lam = lascap.min_eigenvalue([[0, 1], [1, 0]], "1/1000")
    assert abs(lam + 1) <= Fraction(1, 1000)


def test_errors():
    with pytest.raises(lascap.ParseError):
        lascap.blp_value("domain 0 1\nbogus\n")
    with pytest.raises(ValueError):
        lascap.solve_level(KNAP, 1, strategy="other")
