"""
Affine classes of convex quadrangles.

Every convex quadrangle is affinely equivalent to exactly one of

* ``Q(alpha, beta)`` with ``0 < alpha < beta < 1`` -- no pair of parallel
  sides. The parameters are taken over one of the two *closing* sides (sides
  whose adjacent angles sum to more than pi), so every such class has two
  parametrizations, related by :func:`flip`.
* ``T(gamma)`` with ``0 < gamma < 1`` -- trapezoids, ``gamma`` being the
  ratio of the short to the long parallel side.
* ``P`` -- parallelograms.
"""
from collections import namedtuple
import logging
import math

from .exceptions import ClassError, QuadrangleError, AmbiguousTrapezoidError
from .util.geometry import (
    convex_orientation,
    cross,
    dot,
    line_intersection,
    sub,
    to_point,
)
from .util.ratio import close, is_exact, to_ratio


log = logging.getLogger(__name__)

Q_KIND = 'Q'
T_KIND = 'T'
P_KIND = 'P'

#: Relative tolerance of the convexity and parallelism tests on float input.
FLOAT_REL_TOL = 1e-9


class AffineClass(namedtuple('AffineClass', ['kind', 'alpha', 'beta'])):
    """
    An affine class. Trapezoids store ``gamma`` in both parameter slots so that
    the glueing formulas can treat ``T(gamma)`` like ``Q(gamma, gamma)``;
    parallelograms store ``None``.

    Use the :func:`Q`, :func:`T` constructors and the :data:`P` constant
    rather than building instances directly.
    """
    __slots__ = ()

    def __new__(cls, kind, alpha=None, beta=None):
        if kind == Q_KIND:
            alpha, beta = to_ratio(alpha), to_ratio(beta)
            if not 0 < alpha < beta < 1:
                raise ClassError("Q(%s,%s) needs 0 < alpha < beta < 1" % (alpha, beta))
        elif kind == T_KIND:
            alpha = to_ratio(alpha)
            if beta is not None and to_ratio(beta) != alpha:
                raise ClassError("T takes a single parameter, got %r and %r" % (alpha, beta))
            if not 0 < alpha < 1:
                raise ClassError("T(%s) needs 0 < gamma < 1" % (alpha,))
            beta = alpha
        elif kind == P_KIND:
            alpha = beta = None
        else:
            raise ClassError("Unknown class kind %r" % (kind,))
        return super(AffineClass, cls).__new__(cls, kind, alpha, beta)

    @property
    def gamma(self):
        if self.kind != T_KIND:
            raise ClassError("%s is not a trapezoid class" % (self,))
        return self.alpha

    @property
    def is_trapezoid(self):
        "True for ``T`` and ``P`` (at least one pair of parallel sides)."
        return self.kind != Q_KIND

    @property
    def exact(self):
        return self.kind == P_KIND or is_exact(self.alpha, self.beta)

    def __str__(self):
        if self.kind == Q_KIND:
            return 'Q(%s,%s)' % (self.alpha, self.beta)
        if self.kind == T_KIND:
            return 'T(%s)' % (self.alpha,)
        return 'P'


def Q(alpha, beta):
    return AffineClass(Q_KIND, alpha, beta)


def T(gamma):
    return AffineClass(T_KIND, gamma)


#: The class of all parallelograms.
P = AffineClass(P_KIND)


def parse_class(text):
    """
    Parse the textual class notation used on the command line.

    >>> parse_class('Q:1/5,1/2')
    AffineClass(kind='Q', alpha=Fraction(1, 5), beta=Fraction(1, 2))
    >>> parse_class('T:1/10').gamma
    Fraction(1, 10)

    :raises ClassError: On malformed text or invalid parameters.
    """
    text = text.strip()
    if text.upper() == P_KIND:
        return P
    kind, sep, rest = text.partition(':')
    kind = kind.strip().upper()
    if not sep:
        raise ClassError("Class %r must look like Q:a,b or T:g or P" % (text,))
    try:
        params = [to_ratio(p) for p in rest.split(',')]
    except (TypeError, ValueError):
        raise ClassError("Class %r has non-numeric parameters" % (text,))
    if kind == Q_KIND and len(params) == 2:
        return Q(*params)
    if kind == T_KIND and len(params) == 1:
        return T(params[0])
    raise ClassError("Class %r must look like Q:a,b or T:g or P" % (text,))


def flip_factor(alpha, beta):
    "The factor ``(1-beta)/((1-alpha) beta)`` mapping a parametrization to its flip."
    return (1 - beta) / ((1 - alpha) * beta)


def flip(c):
    """
    The other parametrization of a non-trapezoid, taken over the neighbouring
    closing side.

    >>> flip(Q('1/5', '1/2'))
    AffineClass(kind='Q', alpha=Fraction(1, 4), beta=Fraction(5, 8))

    :raises ClassError: For trapezoids and parallelograms, whose flips only
        exist as glueing flags.
    """
    if c.kind != Q_KIND:
        raise ClassError("flip is defined for Q classes only, got %s" % (c,))
    f = flip_factor(c.alpha, c.beta)
    return Q(f * c.alpha, f * c.beta)


def affine_quotient(c):
    "``alpha/beta`` for ``Q``; ``1`` for trapezoids and parallelograms."
    if c.kind == Q_KIND:
        return c.alpha / c.beta
    return to_ratio(1)


def is_affine_kite(c, tol=0):
    """
    True for affine images of kites: ``Q(alpha, 1/(2-alpha))`` and ``P``.
    A trapezoid is a kite only when it is a parallelogram.
    """
    if c.kind == P_KIND:
        return True
    if c.kind == T_KIND:
        return False
    return close(c.beta * (2 - c.alpha), 1, tol)


def canonicalize(c):
    """
    The representative of the flip orbit: the lexicographically smaller of
    ``(alpha, beta)`` and its flip. Trapezoids and ``P`` are returned as is.
    """
    if c.kind != Q_KIND:
        return c
    other = flip(c)
    if (other.alpha, other.beta) < (c.alpha, c.beta):
        return other
    return c


def same_class(c1, c2, tol=0):
    "Affine equality of two classes, comparing against both parametrizations."
    if c1.kind != c2.kind:
        return False
    if c1.kind == P_KIND:
        return True
    if c1.kind == T_KIND:
        return close(c1.gamma, c2.gamma, tol)
    for other in (c2, flip(c2)):
        if close(c1.alpha, other.alpha, tol) and close(c1.beta, other.beta, tol):
            return True
    return False


Classification = namedtuple('Classification', ['cls', 'labeling'])


def _parallel(u, v, tol, points):
    """
    Decide whether direction vectors ``u`` and ``v`` are parallel. On float
    input a cross product inside the tolerance band is an error, not a guess.
    """
    cr = cross(u, v)
    if cr == 0:
        return True
    if tol:
        band = tol * math.sqrt(float(dot(u, u)) * float(dot(v, v)))
        if abs(cr) <= band:
            raise AmbiguousTrapezoidError(points, cr, band)
    return False


def _classify_trapezoid(pts):
    # pts[1]pts[2] is parallel to pts[3]pts[0] and the other pair is not.
    a, b, c, d = pts
    long_side, short_side = sub(d, a), sub(c, b)
    ratio = abs(dot(short_side, long_side)) / dot(long_side, long_side)
    if ratio > 1:
        return T(1 / ratio), (b, a, d, c)
    return T(ratio), (a, b, c, d)


def _labelings(pts):
    for shift in range(4):
        rotated = pts[shift:] + pts[:shift]
        yield rotated
        yield (rotated[0],) + tuple(reversed(rotated[1:]))


def _classify_generic(pts):
    candidates = []
    for labeling in _labelings(pts):
        a, b, c, d = labeling
        meet = line_intersection(a, b, d, c)
        if meet is None:
            continue
        _s, t, u = meet
        if t <= 1 or u <= 1:
            continue
        alpha, beta = (t - 1) / t, (u - 1) / u
        if alpha < beta:
            candidates.append(((alpha, beta), labeling))
    if not candidates:
        raise QuadrangleError(pts, "No pair of closing sides found")
    (alpha, beta), labeling = min(candidates, key=lambda item: item[0])
    return Q(alpha, beta), labeling


def classify_quadrangle(points, rel_tol=FLOAT_REL_TOL):
    """
    Determine the affine class of a convex quadrangle.

    The result is reported in canonical form together with the labeling
    ``(a, b, c, d)`` of the input points realizing it: for ``Q`` the sides
    ``bc`` and ``cd`` are closing and ``ab``, ``dc`` meet beyond ``bc``; for
    ``T`` the side ``ad`` is the long parallel side and ``bc`` the short one.

    Rational input is handled exactly. Float input uses the relative
    tolerance ``rel_tol`` for degeneracy and parallelism.

    :param points: Four points in cyclic order (either orientation).
    :rtype: :class:`Classification`
    :raises QuadrangleError: On non-convex or degenerate input.
    :raises AmbiguousTrapezoidError: When float parallelism is undecidable.
    """
    pts = tuple(to_point(p) for p in points)
    if len(pts) != 4:
        raise QuadrangleError(pts, "Expected four vertices")
    tol = 0 if all(is_exact(*p) for p in pts) else rel_tol
    convex_orientation(pts, tol)

    a, b, c, d = pts
    ab_dc = _parallel(sub(b, a), sub(c, d), tol, pts)
    bc_ad = _parallel(sub(c, b), sub(d, a), tol, pts)
    if ab_dc and bc_ad:
        result = Classification(P, pts)
    elif bc_ad:
        result = Classification(*_classify_trapezoid(pts))
    elif ab_dc:
        result = Classification(*_classify_trapezoid(pts[1:] + pts[:1]))
    else:
        result = Classification(*_classify_generic(pts))
    log.debug("Classified %s as %s", pts, result.cls)
    return result
