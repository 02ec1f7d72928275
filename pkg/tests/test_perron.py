import json
import random
from fractions import Fraction
from pathlib import Path

import pytest

from llsgeom.errors import (BoundaryVertex, NonIntegerCoefficients, NotFBrokenLine, NotOnKernel,
                            SquareDiscriminant)
from llsgeom.exactnum import QuadraticNumber, sqrt
from llsgeom.forms import BinaryQuadraticForm, evaluate, lls_of_form, reduce, reduced_form
from llsgeom.geometry import BrokenLine
from llsgeom.perron import (classical_perron, orientation, perron_rhs_finite, perron_rhs_infinite,
                            value_via_triangle, verify_identity)

from generators import FIELDS, f_broken_line, form

DATA = Path(__file__).resolve().parent.parent / "data"
F_EX = BinaryQuadraticForm(1, -1, -2)  # (x + y)(x - 2y)
XY = BinaryQuadraticForm(0, 1, 0)
PAQ = BrokenLine(((2, 1), (3, 0), (2, -2)))


def _line(name):
    return BrokenLine(tuple(map(tuple, json.loads((DATA / name).read_text())["vertices"])))


def test_value_via_triangle():
    assert value_via_triangle(F_EX, (2, 1), (3, 0), (2, -2)) == 9 == evaluate(F_EX, (3, 0))
    assert value_via_triangle(XY, (3, 0), (2, 7), (0, 5)) == 14
    assert value_via_triangle(F_EX, (2, 1), (4, 2), (2, -2)) == 0
    with pytest.raises(NotOnKernel):
        value_via_triangle(F_EX, (1, 1), (3, 0), (2, -2))


def test_orientation_factor():
    # the triangle example: det(OP, OQ) < 0 but f(P + Q) > 0
    assert orientation(F_EX, (2, 1), (2, -2)) == -1
    assert orientation(XY, (1, 0), (0, 1)) == 1


def test_perron_rhs_finite_examples():
    fig2 = _line("fig2_line.json")
    assert perron_rhs_finite(F_EX, fig2, 4) == 4 == evaluate(F_EX, (3, 1))
    assert perron_rhs_finite(F_EX, PAQ, 1) == 9
    assert perron_rhs_finite(XY, BrokenLine(((1, 0), (1, 1), (0, 1))), 1) == 1


def test_perron_rhs_finite_errors():
    fig2 = _line("fig2_line.json")
    for k in (0, len(fig2) - 1):
        with pytest.raises(BoundaryVertex):
            perron_rhs_finite(F_EX, fig2, k)
    with pytest.raises(NotFBrokenLine):
        perron_rhs_finite(F_EX, _line("fig2_line_corrupted.json"), 3)


def test_verify_identity():
    rep = verify_identity(F_EX, _line("fig2_line.json"))
    assert rep.passed and [c.k for c in rep.checks] == list(range(1, 7))
    assert verify_identity(F_EX, PAQ).passed


def test_verify_identity_negative_control():
    # the last vertex is moved off the kernel, so the identity must break
    rep = verify_identity(F_EX, _line("fig2_line_corrupted.json"), strict=False)
    assert not rep.passed
    assert rep.failures and all(c.discrepancy != 0 for c in rep.failures)


def test_identity_survives_interior_moves():
    vs = list(_line("fig2_line.json"))
    vs[4] = (4, 1)
    assert verify_identity(F_EX, BrokenLine(tuple(vs))).passed


def test_perron_rhs_infinite():
    golden = reduce(BinaryQuadraticForm(1, 1, -1))
    f = reduced_form(golden.alpha, golden.beta)
    assert perron_rhs_infinite(f, lls_of_form(f)) == 1 == evaluate(f, (0, 1))
    r2 = QuadraticNumber(0, 1, 1, 2)
    g = reduced_form(1 + r2, r2 - 1)
    assert perron_rhs_infinite(g, lls_of_form(g)) == 1


def test_classical_perron_examples():
    r = classical_perron(BinaryQuadraticForm(1, 1, -1))
    assert r.markov_minimum == 1 and r.normalized == sqrt(5)
    r = classical_perron(BinaryQuadraticForm(1, 0, -2))
    assert r.markov_minimum == 1 and r.normalized == sqrt(8)
    r = classical_perron(BinaryQuadraticForm(3, 3, -3))
    assert r.markov_minimum == 3 and r.normalized == sqrt(5)
    assert abs(evaluate(r.form, r.witness)) == r.markov_minimum


def test_classical_perron_errors():
    with pytest.raises(SquareDiscriminant):
        classical_perron(F_EX)
    with pytest.raises(NonIntegerCoefficients):
        classical_perron(BinaryQuadraticForm(1, 0, Fraction(-1, 2)))


@pytest.mark.parametrize("D", FIELDS)
def test_identity_random_lines(D):
    rng = random.Random(100 + (D or 0))
    for _ in range(30):
        f = form(rng, D)
        b = f_broken_line(rng, f, D)
        assert verify_identity(f, b).passed
