"""Exact LLS sequences, Perron identities and sails for binary quadratic forms."""
from .cf import INF, CfPeriodic, convergents, eval_finite, eval_periodic, expand_quadratic, expand_rational
from .exactnum import QuadraticNumber, compare, conjugate, sign, sqrt
from .forms import (
    BinaryQuadraticForm,
    ReducedForm,
    TwoSidedSequence,
    discriminant,
    equivalent,
    evaluate,
    factor,
    lls_of_form,
    reduce,
)
from .geometry import BrokenLine, Point, apply_unimodular, det2, is_f_broken_line, lls, reconstruct, signature

from .perron import classical_perron, perron_rhs_finite, perron_rhs_infinite, value_via_triangle, verify_identity
from .sail import (
    Angle,
    Sail,
    markov_minimum_bruteforce,
    markov_minimum_sails,
    sail_bruteforce,
    sail_cf,
    sails_of_form,
)

__version__ = "0.1.0"
