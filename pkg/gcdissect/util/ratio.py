"""
Scalar helpers. A Ratio is either an exact :class:`fractions.Fraction` or a
``float``; floats are only ever compared against an explicit tolerance.
"""
from fractions import Fraction
import logging
import numbers
import warnings

from ..exceptions import InexactWarning


log = logging.getLogger(__name__)

# Markers that make a textual ratio a float rather than "p/q".
_FLOAT_MARKERS = ('.', 'e', 'E', 'inf', 'nan')


def to_ratio(value):
    """
    Coerce ``value`` into a Ratio.

    Integers, fractions and strings like ``"3/8"`` become exact fractions;
    floats and decimal strings like ``"0.25"`` or ``"1e-9"`` become floats.

    >>> to_ratio('3/8')
    Fraction(3, 8)
    >>> to_ratio('0.5')
    0.5

    :raises ValueError: If a string cannot be parsed.
    :raises TypeError: If ``value`` is not numeric.
    """
    if isinstance(value, bool):
        raise TypeError("Expected a number, got %r" % (value,))
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, float):
        return value
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if any(marker in text for marker in _FLOAT_MARKERS):
            return float(text)
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise ValueError("Cannot parse ratio %r" % (value,))
    raise TypeError("Expected a number, got %r" % (value,))


def format_ratio(value):
    """
    Inverse of :func:`to_ratio` for serialization: ``"p/q"`` for fractions,
    ``repr`` for floats (which always contains a float marker).
    """
    if isinstance(value, float):
        return repr(value)
    return str(Fraction(value))


def is_exact(*values):
    return all(isinstance(v, (Fraction, int)) and not isinstance(v, bool)
               for v in values)


def close(x, y, tol=0):
    """
    Compare two ratios. With ``tol == 0`` the comparison is exact, and an
    :class:`InexactWarning` is issued when floats are involved.
    """
    if not tol:
        if not is_exact(x, y):
            warnings.warn("Comparing float ratios %r and %r without a tolerance"
                          % (x, y), InexactWarning)
        return x == y
    return abs(x - y) <= tol


def less(x, y, tol=0):
    "Strict ``x < y`` that is not fooled by differences within ``tol``."
    return x < y - tol if tol else x < y


def midpoint(lo, hi):
    if is_exact(lo, hi):
        return (Fraction(lo) + Fraction(hi)) / 2
    return (lo + hi) / 2.0
