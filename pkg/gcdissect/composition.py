"""
The partial algebra of glueings: two quadrangles of given classes, glued
along a full common side, give a parent of one of a small set of classes.

A *term* is a class together with a flip flag. For non-trapezoids the flag
selects the other parametrization and is folded into the parameters; for
trapezoids and parallelograms it marks a glueing along constant sides and is
a genuine part of the notation. Results are :class:`ClassSet` values, since
constant-side glueings of trapezoids produce whole intervals of classes.
"""
from collections import namedtuple
import logging

from ._collections import RecentlyUsedContainer
from .affine_types import (
    AffineClass,
    P,
    P_KIND,
    Q,
    Q_KIND,
    T,
    T_KIND,
    flip,
)
from .exceptions import ClassError, NoGlueingError
from .util.options import SearchOptions
from .util.ratio import midpoint, to_ratio


log = logging.getLogger(__name__)

DOT = 'dot'
COLON = 'colon'
OPERATIONS = (DOT, COLON)
SYMBOLS = {DOT: '.', COLON: ':'}

_ONE = to_ratio(1)
_ZERO = to_ratio(0)

_CACHE = RecentlyUsedContainer(SearchOptions.DEFAULT_CACHE_SIZE)


def _eq(x, y, tol):
    return abs(x - y) <= tol if tol else x == y


class Interval(namedtuple('Interval', ['lo', 'hi', 'lo_closed', 'hi_closed'])):
    """
    A sub-interval of the positive reals. Points are closed degenerate
    intervals.
    """
    __slots__ = ()

    @classmethod
    def point(cls, x):
        return cls(x, x, True, True)

    @property
    def is_point(self):
        return self.lo == self.hi and self.lo_closed and self.hi_closed

    @property
    def is_empty(self):
        if self.lo > self.hi:
            return True
        return self.lo == self.hi and not (self.lo_closed and self.hi_closed)

    def contains(self, x, tol=0):
        if tol:
            return self.lo - tol <= x <= self.hi + tol
        above = x >= self.lo if self.lo_closed else x > self.lo
        below = x <= self.hi if self.hi_closed else x < self.hi
        return above and below

    def scaled(self, k):
        return Interval(self.lo * k, self.hi * k, self.lo_closed, self.hi_closed)

    def times(self, other):
        return Interval(self.lo * other.lo, self.hi * other.hi,
                        self.lo_closed and other.lo_closed,
                        self.hi_closed and other.hi_closed)

    def reciprocal_times(self, c):
        "The interval ``{c/x : x in self}``."
        return Interval(c / self.hi, c / self.lo, self.hi_closed, self.lo_closed)

    def intersect(self, other):
        if self.lo != other.lo:
            lo, lo_closed = max((self.lo, self.lo_closed), (other.lo, other.lo_closed))
        else:
            lo, lo_closed = self.lo, self.lo_closed and other.lo_closed
        if self.hi != other.hi:
            hi, hi_closed = min((self.hi, self.hi_closed), (other.hi, other.hi_closed))
        else:
            hi, hi_closed = self.hi, self.hi_closed and other.hi_closed
        return Interval(lo, hi, lo_closed, hi_closed)

    def mapped_decreasing(self, fn):
        return Interval(fn(self.hi), fn(self.lo), self.hi_closed, self.lo_closed)

    def representative(self):
        "A deterministic member: the point itself, else the midpoint."
        if self.lo == self.hi:
            return self.lo
        return midpoint(self.lo, self.hi)

    def __str__(self):
        return '%s%s, %s%s' % ('[' if self.lo_closed else '(', self.lo,
                               self.hi, ']' if self.hi_closed else ')')


_UNIT = Interval.point(_ONE)


class QCurve(namedtuple('QCurve', ['alpha0', 'beta0', 'interval'])):
    """ The family ``{Q(alpha0 t, beta0 t) : t in interval}``.

    All members share the affine quotient ``alpha0/beta0``.
    """
    __slots__ = ()

    @property
    def quotient(self):
        return self.alpha0 / self.beta0

    def at(self, t):
        return Q(self.alpha0 * t, self.beta0 * t)

    def __str__(self):
        return '{Q(%s t, %s t): t in %s}' % (self.alpha0, self.beta0, self.interval)


# Members used internally: ('Q', alpha0, beta0, interval), ('T', interval)
# and ('P',). Points carry degenerate intervals.

def _member_of_class(c):
    if c.kind == Q_KIND:
        return (Q_KIND, c.alpha, c.beta, _UNIT)
    if c.kind == T_KIND:
        return (T_KIND, Interval.point(c.gamma))
    return (P_KIND,)


class ClassSet(namedtuple('ClassSet', ['q_points', 't_points', 't_intervals',
                                       'q_curves', 'has_p'])):
    """
    A set of affine classes closed under the shapes that glueings produce:
    finitely many ``Q`` and ``T`` points, ``T`` intervals, ``Q`` curves with a
    fixed affine quotient, and possibly ``P``. Hashable, so class sets can be
    deduplicated during tree search.
    """
    __slots__ = ()

    @classmethod
    def empty(cls):
        return EMPTY

    @classmethod
    def single(cls, c):
        return cls.build([_member_of_class(c)])

    @classmethod
    def build(cls, members):
        q_points, t_points, t_intervals, q_curves = set(), set(), set(), set()
        has_p = False
        for m in members:
            if m[0] == P_KIND:
                has_p = True
            elif m[0] == T_KIND:
                interval = m[1]
                if interval.is_empty:
                    continue
                if interval.is_point:
                    t_points.add(T(interval.lo))
                else:
                    t_intervals.add(interval)
            else:
                _kind, alpha0, beta0, interval = m
                if interval.is_empty:
                    continue
                if interval.is_point:
                    t = interval.lo
                    q_points.add(Q(alpha0 * t, beta0 * t))
                else:
                    q_curves.add(QCurve(alpha0, beta0, interval))
        return cls(frozenset(q_points), frozenset(t_points), frozenset(t_intervals),
                   frozenset(q_curves), has_p)

    def members(self):
        for c in sorted(self.q_points):
            yield _member_of_class(c)
        for curve in sorted(self.q_curves):
            yield (Q_KIND, curve.alpha0, curve.beta0, curve.interval)
        for c in sorted(self.t_points):
            yield _member_of_class(c)
        for interval in sorted(self.t_intervals):
            yield (T_KIND, interval)
        if self.has_p:
            yield (P_KIND,)

    @property
    def is_empty(self):
        return not (self.q_points or self.t_points or self.t_intervals
                    or self.q_curves or self.has_p)

    @property
    def is_finite(self):
        return not (self.t_intervals or self.q_curves)

    def classes(self):
        "The finitely many point members, in a deterministic order."
        out = sorted(self.q_points) + sorted(self.t_points)
        if self.has_p:
            out.append(P)
        return out

    def __str__(self):
        parts = [str(c) for c in sorted(self.q_points)]
        parts += [str(curve) for curve in sorted(self.q_curves)]
        parts += [str(c) for c in sorted(self.t_points)]
        parts += ['{T(g): g in %s}' % (i,) for i in sorted(self.t_intervals)]
        if self.has_p:
            parts.append('P')
        return ' u '.join(parts) if parts else '{}'


EMPTY = ClassSet(frozenset(), frozenset(), frozenset(), frozenset(), False)


class ClassTerm(namedtuple('ClassTerm', ['cls', 'flipped'])):
    """
    A class with a flip flag. Flipped non-trapezoids are normalized to the
    flipped parameters with ``flipped=False``.
    """
    __slots__ = ()

    def __new__(cls, c, flipped=False):
        if not isinstance(c, AffineClass):
            raise ClassError("Expected an AffineClass, got %r" % (c,))
        if c.kind == Q_KIND and flipped:
            c, flipped = flip(c), False
        return super(ClassTerm, cls).__new__(cls, c, bool(flipped))

    def __str__(self):
        return '%s%s' % (self.cls, '^F' if self.flipped else '')


def _flip_member(m):
    """Apply a flip flag to a member. Only non-trapezoids change."""
    if m[0] != Q_KIND:
        return m
    _kind, alpha0, beta0, interval = m
    if interval.is_point:
        c = flip(Q(alpha0 * interval.lo, beta0 * interval.lo))
        return (Q_KIND, c.alpha, c.beta, _UNIT)
    # The flip keeps the quotient r and sends alpha to (r - alpha)/(1 - alpha),
    # which is decreasing in alpha.
    r = alpha0 / beta0

    def flipped_scale(t):
        alpha = alpha0 * t
        return (r - alpha) / ((1 - alpha) * alpha0)

    return (Q_KIND, alpha0, beta0, interval.mapped_decreasing(flipped_scale))


_RANK = {Q_KIND: 0, T_KIND: 1, P_KIND: 2}


def _row(k1, f1, k2, f2, op):
    return '%s%s %s %s%s' % (k1, '^F' if f1 else '', SYMBOLS[op], k2, '^F' if f2 else '')


def _glue(m1, f1, m2, f2, op, tol):
    """
    Glue two members whose non-trapezoid flips are already folded in.

    :return: ``(row, members, reason)``; ``members`` is ``None`` when the
        pattern admits no parent.
    """
    if _RANK[m1[0]] > _RANK[m2[0]]:
        m1, f1, m2, f2 = m2, f2, m1, f1
    k1, k2 = m1[0], m2[0]
    row = _row(k1, f1 and k1 != Q_KIND, k2, f2 and k2 != Q_KIND, op)

    if (k1 == P_KIND and f1) or (k2 == P_KIND and f2):
        return row, None, "parallelograms carry no flip"

    if k1 == Q_KIND and k2 == Q_KIND:
        _k, a1, b1, i1 = m1
        _k, a2, b2, i2 = m2
        scales = i1.times(i2)
        if op == DOT:
            return row, [(Q_KIND, a1 * a2, b1 * b2, scales)], None
        r1, r2 = a1 / b1, a2 / b2
        if _eq(r1, r2, tol):
            return row, [(T_KIND, scales.scaled(a1 * b2))], None
        if r1 < r2:
            return row, [(Q_KIND, a1 * b2, b1 * a2, scales)], None
        return row, [(Q_KIND, b1 * a2, a1 * b2, scales)], None

    if k1 == Q_KIND and k2 == T_KIND:
        if op == COLON:
            return row, None, "colon glueings need two non-trapezoids"
        if f2:
            return row, None, "a non-trapezoid has no constant side to glue to"
        _k, a, b, iq = m1
        return row, [(Q_KIND, a, b, iq.times(m2[1]))], None

    if k1 == Q_KIND:
        return row, None, "opposite sides of a parallelogram are parallel, a non-trapezoid's are not"

    if op == COLON:
        return row, None, "colon glueings need two non-trapezoids"

    if k1 == T_KIND and k2 == T_KIND:
        i1, i2 = m1[1], m2[1]
        if not f1 and not f2:
            return row, [(T_KIND, i1.times(i2))], None
        if f1 and f2:
            m = min(i1.lo, i2.lo)
            closed = i1.contains(m) and i2.contains(m)
            return row, [(T_KIND, Interval(m, _ONE, closed, False)), (P_KIND,)], None
        return row, None, "trapezoids glue either both along constant sides or neither"

    if k1 == T_KIND:
        if not f1:
            return row, None, "a parallelogram only meets a trapezoid along a constant side"
        return row, [(T_KIND, Interval(m1[1].lo, _ONE, False, False))], None

    return row, [(P_KIND,)], None


def combine(left, right, op, tol=0):
    """
    Glue two class terms.

    >>> combine(ClassTerm(Q('1/5', '1/2')), ClassTerm(Q('1/4', '5/8')), DOT)
    ... # doctest: +SKIP
    {Q(1/20,5/16)}

    :param left: A :class:`ClassTerm` (or a bare class, taken unflipped).
    :param right: A :class:`ClassTerm` (or a bare class).
    :param op: :data:`DOT` or :data:`COLON`.
    :param tol: Tolerance deciding equal affine quotients for float input.
    :rtype: :class:`ClassSet`
    :raises NoGlueingError: If no parent quadrangle exists for the pattern.
    """
    left, right = _as_term(left), _as_term(right)
    _check_op(op)
    row, members, reason = _glue(_member_of_class(left.cls), left.flipped,
                                 _member_of_class(right.cls), right.flipped, op, tol)
    if members is None:
        raise NoGlueingError(row, reason)
    return ClassSet.build(members)


def _as_term(x):
    return x if isinstance(x, ClassTerm) else ClassTerm(x)


def _check_op(op):
    if op not in OPERATIONS:
        raise ClassError("Unknown operation %r, expected one of %s" % (op, OPERATIONS))


def _flipped_members(s, flipped):
    for m in s.members():
        yield (_flip_member(m) if flipped else m), flipped


def compose_sets(left, right, op, left_flip=False, right_flip=False, tol=0):
    """
    Glue every member of ``left`` with every member of ``right``.

    Undefined pairs are skipped, so the result may be empty, which means the
    subtree has no realization. Results are memoised in a bounded LRU cache.

    :rtype: :class:`ClassSet`
    """
    _check_op(op)
    if left.is_empty or right.is_empty:
        return EMPTY
    key = (left, bool(left_flip), right, bool(right_flip), op, tol)
    return _CACHE.get_or_compute(
        key, lambda: _compose(left, right, op, left_flip, right_flip, tol))


def _compose(left, right, op, left_flip, right_flip, tol):
    out = []
    for m1, f1 in _flipped_members(left, left_flip):
        for m2, f2 in _flipped_members(right, right_flip):
            _row_name, members, _reason = _glue(m1, f1, m2, f2, op, tol)
            if members:
                out.extend(members)
    return ClassSet.build(out)


def configure_cache(maxsize):
    "Resize the composition cache, e.g. from :class:`SearchOptions`."
    _CACHE.resize(maxsize)


def cache_info():
    return {'hits': _CACHE.hits, 'misses': _CACHE.misses, 'size': len(_CACHE)}


def member(s, c, tol=0):
    """
    Whether class ``c`` belongs to ``s``. With ``tol == 0`` membership is
    exact; otherwise parameters may differ by ``tol`` componentwise, and a
    curve member needs matching quotients within ``tol`` and a scale inside
    the curve's interval.
    """
    if c.kind == P_KIND:
        return s.has_p
    if c.kind == T_KIND:
        if any(_eq(p.gamma, c.gamma, tol) for p in s.t_points):
            return True
        return any(i.contains(c.gamma, tol) for i in s.t_intervals)
    for p in s.q_points:
        if _eq(p.alpha, c.alpha, tol) and _eq(p.beta, c.beta, tol):
            return True
    quotient = c.alpha / c.beta
    for curve in s.q_curves:
        if _eq(curve.quotient, quotient, tol) and curve.interval.contains(c.alpha / curve.alpha0, tol):
            return True
    return False


GluePin = namedtuple('GluePin', ['left', 'right'])


def _split_product(i1, i2, c, tol):
    """
    Find ``t1 in i1`` and ``t2 in i2`` with ``t1 t2 = c``, preferring the
    given point of a degenerate interval.
    """
    if i1.is_point and i2.is_point:
        if _eq(i1.lo * i2.lo, c, tol):
            return i1.lo, i2.lo
        return None
    if i1.is_point:
        t2 = c / i1.lo
        return (i1.lo, t2) if i2.contains(t2, tol) else None
    if i2.is_point:
        t1 = c / i2.lo
        return (t1, i2.lo) if i1.contains(t1, tol) else None
    window = i1.intersect(i2.reciprocal_times(c))
    if window.is_empty:
        return None
    t1 = window.representative()
    return t1, c / t1


def _below(interval, x):
    return interval.intersect(Interval(_ZERO, x, False, False))


def _pin_pair(m1, f1, m2, f2, op, target, tol):
    """Pin concrete term classes for one member pair, or return ``None``."""
    swapped = _RANK[m1[0]] > _RANK[m2[0]]
    if swapped:
        m1, f1, m2, f2 = m2, f2, m1, f1
    _row_name, members, _reason = _glue(m1, f1, m2, f2, op, tol)
    if not members:
        return None
    pin = _solve(m1, f1, m2, f2, op, target, tol)
    if pin is None:
        return None
    return GluePin(pin[1], pin[0]) if swapped else GluePin(*pin)


def _solve(m1, f1, m2, f2, op, target, tol):
    k1, k2 = m1[0], m2[0]
    if k1 == Q_KIND and k2 == Q_KIND:
        _k, a1, b1, i1 = m1
        _k, a2, b2, i2 = m2
        if op == DOT:
            if target.kind != Q_KIND or not _eq(a1 * a2 / (b1 * b2), target.alpha / target.beta, tol):
                return None
            base = a1 * a2
        else:
            r1, r2 = a1 / b1, a2 / b2
            if _eq(r1, r2, tol):
                if target.kind != T_KIND:
                    return None
                base = a1 * b2
            else:
                if target.kind != Q_KIND:
                    return None
                if not _eq(min(r1 / r2, r2 / r1), target.alpha / target.beta, tol):
                    return None
                base = a1 * b2 if r1 < r2 else b1 * a2
        split = _split_product(i1, i2, target.alpha / base, tol)
        if split is None:
            return None
        t1, t2 = split
        return Q(a1 * t1, b1 * t1), Q(a2 * t2, b2 * t2)

    if k1 == Q_KIND and k2 == T_KIND:
        _k, a, b, iq = m1
        if target.kind != Q_KIND or not _eq(a / b, target.alpha / target.beta, tol):
            return None
        split = _split_product(iq, m2[1], target.alpha / a, tol)
        if split is None:
            return None
        t, gamma = split
        return Q(a * t, b * t), T(gamma)

    if k1 == T_KIND and k2 == T_KIND and not f1:
        if target.kind != T_KIND:
            return None
        split = _split_product(m1[1], m2[1], target.gamma, tol)
        return None if split is None else (T(split[0]), T(split[1]))

    if k1 == T_KIND and k2 == T_KIND:
        i1, i2 = m1[1], m2[1]
        if target.kind == P_KIND:
            return T(i1.representative()), T(i2.representative())
        gamma = target.gamma
        if i1.contains(gamma) and i2.contains(gamma):
            return T(gamma), T(gamma)
        low1, low2 = _below(i1, gamma), _below(i2, gamma)
        if not low1.is_empty:
            return T(low1.representative()), T(i2.representative())
        if not low2.is_empty:
            return T(i1.representative()), T(low2.representative())
        return None

    if k1 == T_KIND:
        if target.kind != T_KIND:
            return None
        low = _below(m1[1], target.gamma)
        return None if low.is_empty else (T(low.representative()), P)

    return (P, P) if target.kind == P_KIND else None


def pin_glue(left, right, op, target, left_flip=False, right_flip=False, tol=0):
    """
    Choose concrete members of two child sets whose glueing yields ``target``.

    The returned classes are *term-level*: for a flipped non-trapezoid child
    they are in the flipped parametrization.

    :rtype: :class:`GluePin` or ``None``
    """
    for m1, f1 in _flipped_members(left, left_flip):
        for m2, f2 in _flipped_members(right, right_flip):
            pin = _pin_pair(m1, f1, m2, f2, op, target, tol)
            if pin is not None:
                log.debug("Pinned %s %s %s -> %s", pin.left, SYMBOLS[op], pin.right, target)
                return pin
    return None
