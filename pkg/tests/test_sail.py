import random
from fractions import Fraction

import pytest

from llsgeom.errors import DegenerateAngle, NonIntegerCoefficients, SquareDiscriminant
from llsgeom.exactnum import QuadraticNumber, sqrt
from llsgeom.forms import BinaryQuadraticForm, evaluate, lls_of_form
from llsgeom.geometry import Point
from llsgeom.sail import (Angle, markov_minimum_bruteforce, markov_minimum_sails,
                          oracle_mismatches, sail_bruteforce, sail_cf, sails_of_form)

from generators import FIELDS, angle

R2 = QuadraticNumber(0, 1, 1, 2)
PHI = QuadraticNumber(1, 1, 2, 5)
PELL = BinaryQuadraticForm(1, 0, -2)
GOLDEN = BinaryQuadraticForm(1, 1, -1)
F_EX = BinaryQuadraticForm(1, -1, -2)


def _pts(s):
    return [tuple(p) for p in s.vertices]


def test_angle_rejects_degenerate():
    with pytest.raises(DegenerateAngle):
        Angle((1, 0), (2, 0))
    with pytest.raises(DegenerateAngle):
        Angle((0, 1), (1, 0))


def test_bruteforce_small_angles():
    assert _pts(sail_bruteforce(Angle((1, 0), (0, 1)), 5)) == [(1, 0), (0, 1)]
    assert _pts(sail_bruteforce(Angle((1, 0), (1, 1)), 5)) == [(1, 0), (1, 1)]


def test_bruteforce_pell_wedge():
    s = sail_bruteforce(Angle((R2, -1), (R2, 1)), 12)
    chain = _pts(s)
    i = chain.index((1, 0))
    assert chain[i - 1:i + 2] == [(3, -2), (1, 0), (3, 2)]
    assert s.certified is not None


def test_cf_pell_wedge_period():
    s = sail_cf(Angle((R2, -1), (R2, 1)), 4)
    assert s.period_length == 1
    assert set(s.lls()) == {2}
    assert lls_of_form(PELL).right.period == (2,)


def test_cf_golden_wedge_all_ones():
    s = sail_cf(Angle((1, QuadraticNumber(1, -1, 2, 5)), (1, PHI)), 4)
    assert set(s.lls()) == {1}


def test_cf_finite_angle_matches_bruteforce():
    a = Angle((1, 0), (2, 3))
    assert _pts(sail_cf(a, 4)) == _pts(sail_bruteforce(a, 10))


@pytest.mark.parametrize("D", FIELDS)
def test_oracle_equivalence(D):
    rng = random.Random(40 + (D or 0))
    for _ in range(15):
        a = angle(rng, D)
        cf = sail_cf(a, 4, radius=50)
        assert oracle_mismatches(cf, sail_bruteforce(a, 50), 50) == []


def test_oracle_detects_tampering():
    a = Angle((R2, -1), (R2, 1))
    cf = sail_cf(a, 4, radius=50)
    bf = sail_bruteforce(a, 50)
    vs = list(cf.vertices)
    vs[len(vs) // 2] = Point(2, 0)
    bad = cf.__class__(cf.angle, tuple(vs), cf.period, cf.period_length, cf.period_start,
                       cf.certified, cf.finite)
    assert oracle_mismatches(bad, bf, 50)


def test_sails_of_xy_are_quadrant_chains():
    chains = {frozenset(_pts(s)) for s in sails_of_form(BinaryQuadraticForm(0, 1, 0))}
    assert chains == {frozenset({(1, 0), (0, 1)}), frozenset({(0, 1), (-1, 0)}),
                      frozenset({(-1, 0), (0, -1)}), frozenset({(0, -1), (1, 0)})}


def test_sails_of_pell_symmetric():
    sails = [frozenset(_pts(s)) for s in sails_of_form(PELL, 3)]
    for s in sails:
        assert frozenset((-x, -y) for x, y in s) in sails
        assert frozenset((x, -y) for x, y in s) in sails


def test_sails_of_example_reach_minimum():
    m, _ = markov_minimum_bruteforce(F_EX, 50)
    assert m == 0
    vals = {abs(evaluate(GOLDEN, p)) for s in sails_of_form(GOLDEN, 3) for p in s.vertices}
    assert min(vals) == markov_minimum_bruteforce(GOLDEN, 100)[0]


def test_markov_bruteforce_examples():
    assert markov_minimum_bruteforce(GOLDEN, 1000) == (1, (1, 0))
    assert markov_minimum_bruteforce(PELL, 1000) == (1, (1, 0))
    assert markov_minimum_bruteforce(BinaryQuadraticForm(0, 1, 0), 10) == (0, (1, 0))


@pytest.mark.parametrize("use_numba", [True, False])
def test_bruteforce_paths_agree(use_numba):
    f = BinaryQuadraticForm(3, -5, -4)
    assert markov_minimum_bruteforce(f, 200, use_numba) == markov_minimum_bruteforce(f, 200, None)
    a = Angle((R2, -1), (R2, 1))
    assert _pts(sail_bruteforce(a, 40, use_numba)) == _pts(sail_bruteforce(a, 40))


def test_markov_sails_examples():
    assert markov_minimum_sails(GOLDEN).markov_minimum == 1
    assert markov_minimum_sails(PELL).markov_minimum == 1
    r = markov_minimum_sails(PELL.scaled(2))
    assert r.markov_minimum == 2 and r.normalized == sqrt(8)
    assert abs(evaluate(r.form, r.witness)) == 2


def test_markov_sails_errors():
    with pytest.raises(SquareDiscriminant):
        markov_minimum_sails(F_EX)
    with pytest.raises(NonIntegerCoefficients):
        markov_minimum_sails(BinaryQuadraticForm(1, 0, Fraction(-1, 2)))
