"""
The families of 3-gc-self-affine quadrangles and the possibility table for
n-gc-self-affinity.

Family ``I`` is every trapezoid together with ``P``. The non-trapezoid
families ``II``, ``III`` and ``IV`` are curves ``beta = beta(alpha)`` over
``0 < alpha < 1``; the first two have closed forms, the third is the root of
a cubic that is isolated with sympy and refined over exact rationals.
"""
from fractions import Fraction
import logging
import math

import sympy

from .affine_types import (
    AffineClass,
    Q,
    Q_KIND,
    flip,
    is_affine_kite,
)
from .composition import member
from .exceptions import BracketError, ClassError
from .treesearch import KITE5_TREES, N3_TREES, canonical_name, evaluate
from .util.ratio import close, to_ratio


log = logging.getLogger(__name__)

FAMILY_IDS = ('I', 'II', 'III', 'IV')
CURVE_FAMILIES = ('II', 'III', 'IV')

#: Stopping width and residual of the family IV refinement.
REFINE_TOL = Fraction(1, 10 ** 12)
MAX_BISECTIONS = 200

_BETA = sympy.Symbol('beta')


def _check_alpha(alpha):
    alpha = to_ratio(alpha)
    if not 0 < alpha < 1:
        raise ClassError("alpha must lie in (0, 1), got %s" % (alpha,))
    return alpha


def _check_family(family_id, allowed=CURVE_FAMILIES):
    if family_id not in allowed:
        raise ClassError("Unknown family %r, expected one of %s" % (family_id, allowed))


def family_residual(family_id, alpha, beta):
    """
    The defining polynomial of a family evaluated at ``(alpha, beta)``.
    Exact for rational input, and zero exactly on the family.

    >>> family_residual('IV', Fraction(1, 2), Fraction(4, 5))
    Fraction(-1, 500)
    """
    _check_family(family_id)
    alpha, beta = to_ratio(alpha), to_ratio(beta)
    if family_id == 'II':
        k = 1 / (alpha * (1 - alpha))
        return beta * beta + k * beta - k
    if family_id == 'III':
        return (beta * beta - (1 - 3 * alpha + alpha * alpha) / (1 - alpha) * beta
                - alpha / (1 - alpha))
    return _cubic(alpha, beta)


def _cubic(alpha, beta):
    return ((alpha - alpha ** 2) * beta ** 3
            + (1 - 2 * alpha + 2 * alpha ** 2) * beta ** 2
            + (-1 + 2 * alpha - 4 * alpha ** 2 + alpha ** 3) * beta
            + alpha ** 2)


def _sqrt_positive(value, family_id, alpha):
    if value <= 0:
        raise BracketError("Non-positive discriminant", family=family_id,
                           alpha=alpha, discriminant=value)
    return math.sqrt(value)


def family_beta(family_id, alpha):
    """
    The unique ``beta`` in ``(alpha, 1)`` with ``Q(alpha, beta)`` on the family.

    >>> round(family_beta('II', Fraction(1, 2)), 10)
    0.8284271247

    :rtype: float
    :raises ClassError: If ``alpha`` is outside ``(0, 1)``.
    :raises BracketError: If the family IV root cannot be isolated.
    """
    _check_family(family_id)
    alpha = _check_alpha(alpha)
    a = float(alpha)
    if family_id == 'II':
        root = _sqrt_positive(1 + 4 * a - 4 * a * a, family_id, alpha)
        beta = (-1 + root) / (2 * a * (1 - a))
    elif family_id == 'III':
        root = _sqrt_positive(1 - 2 * a + 7 * a ** 2 - 6 * a ** 3 + a ** 4,
                              family_id, alpha)
        beta = (1 - 3 * a + a * a + root) / (2 * (1 - a))
    else:
        beta = float(cubic_root(alpha))
    if not a < beta < 1:
        raise BracketError("Family root outside (alpha, 1)", family=family_id,
                           alpha=alpha, beta=beta)
    return beta


def isolate_cubic_root(alpha):
    """
    An isolating interval ``(lo, hi)`` of rationals for the family IV root in
    ``(alpha, 1)``, found with sympy's real root isolation.
    """
    a = Fraction(alpha)
    a_sym = sympy.Rational(a.numerator, a.denominator)
    poly = sympy.Poly(_cubic(a_sym, _BETA), _BETA, domain='QQ')
    intervals = [iv for iv, _mult in poly.intervals(inf=a_sym, sup=1)]
    inside = [(lo, hi) for lo, hi in intervals if hi > a_sym and lo < 1]
    if len(inside) != 1:
        raise BracketError("Expected one root of the cubic in (alpha, 1)",
                           alpha=alpha, roots=len(inside))
    lo, hi = inside[0]
    return Fraction(int(lo.p), int(lo.q)), Fraction(int(hi.p), int(hi.q))


def cubic_root(alpha):
    """
    The family IV root as an exact rational within :data:`REFINE_TOL`, both in
    bracket width and in residual.
    """
    a = Fraction(alpha)
    lo, hi = isolate_cubic_root(a)
    lo, hi = max(lo, a), min(hi, Fraction(1))
    f_lo = _cubic(a, lo)
    if f_lo > 0 or _cubic(a, hi) < 0:
        raise BracketError("Lost the sign change of the cubic", alpha=alpha, lo=lo, hi=hi)
    for step in range(MAX_BISECTIONS):
        mid = (lo + hi) / 2
        f_mid = _cubic(a, mid)
        if hi - lo < REFINE_TOL and abs(f_mid) < REFINE_TOL:
            log.debug("Cubic root for alpha=%s after %d bisections", alpha, step)
            return mid
        if f_mid == 0:
            return mid
        if f_mid < 0:
            lo = mid
        else:
            hi = mid
    raise BracketError("Bisection did not converge", alpha=alpha, lo=lo, hi=hi)


def _parametrizations(alpha, beta):
    c = Q(alpha, beta)
    return [c, flip(c)]


def family_membership(alpha, beta=None, tol=0):
    """
    The families containing a class.

    Either pass an :class:`~gcdissect.affine_types.AffineClass` as the single
    argument, or the parameters ``alpha`` and ``beta`` of a non-trapezoid.
    Both parametrizations of a non-trapezoid are tested.

    :rtype: frozenset of family ids
    """
    if isinstance(alpha, AffineClass):
        c = alpha
        if c.kind != Q_KIND:
            return frozenset(['I'])
        alpha, beta = c.alpha, c.beta
    found = set()
    for c in _parametrizations(alpha, beta):
        for family_id in CURVE_FAMILIES:
            if close(family_residual(family_id, c.alpha, c.beta), 0, tol):
                found.add(family_id)
    return frozenset(found)


# Closed forms of the root classes of the named trees, as the factor k with
# root class Q(k alpha, k beta).

def _n3_factors():
    def a_b(alpha, beta):
        return alpha * beta

    def one_flip(alpha, beta):
        return (1 - beta) * alpha / (1 - alpha)

    def two_flips(alpha, beta):
        return (1 - beta) ** 2 * alpha / ((1 - alpha) ** 2 * beta)

    def flipped_pair(alpha, beta):
        return (1 - beta ** 2) * alpha / ((1 - alpha ** 2) * beta)

    def cubic_family(alpha, beta):
        return (((1 - alpha) - (1 - beta) * beta) * alpha
                / ((1 - alpha) * beta - (1 - beta) * alpha ** 2))

    def quadratic_family(alpha, beta):
        return ((2 - alpha - beta) * alpha * beta
                / ((1 - alpha) * beta + (1 - beta) * alpha))

    forms = (a_b, one_flip, two_flips, a_b, flipped_pair, one_flip,
             cubic_family, two_flips, quadratic_family)
    return dict(zip(N3_TREES, forms))


def _kite5_factors():
    def dot_dot(alpha):
        return ((alpha ** 2 - 5 * alpha + 7) * (3 - alpha) * alpha ** 2
                / ((alpha ** 2 + alpha + 1) * (alpha + 1) * (2 - alpha) ** 2))

    def flipped_dot(alpha):
        return ((-alpha ** 3 + 4 * alpha ** 2 - 2 * alpha - 5) * (3 - alpha) * alpha ** 2
                / ((alpha ** 3 - 2 * alpha ** 2 - 2 * alpha - 1) * (alpha + 1) * (2 - alpha) ** 2))

    def colon(alpha):
        return ((4 - alpha) * (3 - alpha) * alpha
                / ((alpha + 2) * (alpha + 1) * (2 - alpha)))

    def flipped_colon(alpha):
        return ((alpha ** 2 - alpha - 4) * (3 - alpha) * alpha
                / ((alpha ** 2 - 3 * alpha - 2) * (alpha + 1) * (2 - alpha)))

    forms = (dot_dot, flipped_dot, colon, flipped_colon, colon)
    return dict(zip(KITE5_TREES, forms))


_N3_FACTORS = _n3_factors()
_KITE5_FACTORS = _kite5_factors()

#: Trees that realize each curve family with three tiles.
FAMILY_TREES = {
    'II': (canonical_name('(L:L).L'), canonical_name('(L.L):L')),
    'III': (canonical_name('(L^F.L^F)^F:L'),),
    'IV': (canonical_name('(L^F.L)^F:L'),),
}


def n3_root_factor(tree, alpha, beta):
    """
    The factor ``k`` such that the named three-tile tree turns tiles
    ``Q(alpha, beta)`` into the root ``Q(k alpha, k beta)``.

    :param tree: One of the keys of :data:`~gcdissect.treesearch.N3_TREES`,
        as text (any equivalent notation) or as a tree.
    """
    name = canonical_name(tree)
    if name not in _N3_FACTORS:
        raise ClassError("%s is not one of the named three-tile trees" % (name,))
    return _N3_FACTORS[name](to_ratio(alpha), to_ratio(beta))


def kite5_root_factor(tree, alpha):
    """
    The factor ``k`` such that the named five-tile tree turns kite tiles
    ``Q(alpha, 1/(2-alpha))`` into ``Q(k alpha, k/(2-alpha))``.
    """
    name = canonical_name(tree)
    if name not in _KITE5_FACTORS:
        raise ClassError("%s is not one of the named kite trees" % (name,))
    return _KITE5_FACTORS[name](to_ratio(alpha))


def n3_witness(alpha, beta, tol=0):
    """
    The canonical name of a named three-tile tree reproducing ``Q(alpha,
    beta)``, or ``None`` when there is none.
    """
    leaf = Q(alpha, beta)
    targets = [leaf, flip(leaf)]
    for name, t in N3_TREES.items():
        root_set = evaluate(t, leaf, tol)
        if any(member(root_set, c, tol) for c in targets):
            return name
    return None


def family_intersections(grid, tol=1e-9):
    """
    Grid points where two curve families have the same ``beta``.

    This reports what the grid shows and proves nothing in between.

    :rtype: list of ``(alpha, family_a, family_b, beta)``
    """
    found = []
    for alpha in grid:
        betas = dict((family_id, family_beta(family_id, alpha)) for family_id in CURVE_FAMILIES)
        for i, first in enumerate(CURVE_FAMILIES):
            for second in CURVE_FAMILIES[i + 1:]:
                if abs(betas[first] - betas[second]) <= tol:
                    found.append((alpha, first, second, betas[first]))
    return found


def expected_gc_self_affine(cls, n, tol=0):
    """
    Whether a class admits a glass-cut dissection into ``n`` affine copies of
    itself, according to the classification:

    * every trapezoid and parallelogram, for every ``n``;
    * a non-trapezoid never for even ``n``;
    * at ``n = 3`` exactly the members of families II to IV;
    * at ``n = 5`` every non-trapezoid except the affine kites;
    * for odd ``n >= 7`` every non-trapezoid.
    """
    if n < 1:
        raise ValueError("n must be positive, got %r" % (n,))
    if n == 1 or cls.kind != Q_KIND:
        return True
    if n % 2 == 0:
        return False
    if n == 3:
        return bool(family_membership(cls, tol=tol))
    if n == 5:
        return not is_affine_kite(cls, tol)
    return True


def describe_family(family_id, alpha):
    "A summary of one family at ``alpha`` for reports."
    _check_family(family_id)
    beta = family_beta(family_id, alpha)
    return {
        'id': family_id,
        'alpha': to_ratio(alpha),
        'beta': beta,
        'residual': float(family_residual(family_id, alpha, beta)),
        'trees': list(FAMILY_TREES[family_id]),
    }

