import functools
import os
import warnings
from fractions import Fraction
from unittest import SkipTest

from hypothesis import strategies as st

from gcdissect import Q
from gcdissect.exceptions import DissectionWarning

# Exhaustive sweeps only run when this is set.
SLOW_TESTS = 'GCDISSECT_SLOW_TESTS'


def clear_warnings(cls=DissectionWarning):
    new_filters = []
    for f in warnings.filters:
        if issubclass(f[2], cls):
            continue
        new_filters.append(f)
    warnings.filters[:] = new_filters

def setUp():
    clear_warnings()
    warnings.simplefilter('ignore', DissectionWarning)


def slow(test):
    """Skips this test unless GCDISSECT_SLOW_TESTS is set."""

    @functools.wraps(test)
    def wrapper(*args, **kwargs):
        if not os.environ.get(SLOW_TESTS):
            raise SkipTest("set %s to run exhaustive sweeps" % SLOW_TESTS)
        return test(*args, **kwargs)
    return wrapper


@st.composite
def q_classes(draw, max_denominator=12):
    "Rational non-trapezoid classes Q(a/m, b/m)."
    m = draw(st.integers(min_value=3, max_value=max_denominator))
    a = draw(st.integers(min_value=1, max_value=m - 2))
    b = draw(st.integers(min_value=a + 1, max_value=m - 1))
    return Q(Fraction(a, m), Fraction(b, m))


def non_kites(max_denominator=12):
    return q_classes(max_denominator).filter(lambda c: c.beta * (2 - c.alpha) != 1)


@st.composite
def kites(draw, max_denominator=12):
    "Rational affine kites Q(alpha, 1/(2 - alpha))."
    m = draw(st.integers(min_value=2, max_value=max_denominator))
    a = draw(st.integers(min_value=1, max_value=m - 1))
    alpha = Fraction(a, m)
    return Q(alpha, 1 / (2 - alpha))


def ratios(low=-3, high=3, max_denominator=8):
    return st.fractions(min_value=low, max_value=high, max_denominator=max_denominator)


#: Some classes used across modules.
Q_GENERIC = Q(Fraction(1, 5), Fraction(1, 2))
Q_FLIPPED = Q(Fraction(1, 4), Fraction(5, 8))
Q_KITE = Q(Fraction(1, 2), Fraction(2, 3))
