"""
Planar primitives over exact or float coordinates. Points are ``(x, y)``
tuples; polygons are sequences of points in cyclic order.
"""
from fractions import Fraction
import logging

from ..exceptions import QuadrangleError
from .ratio import to_ratio


log = logging.getLogger(__name__)


def sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def add(p, q):
    return (p[0] + q[0], p[1] + q[1])


def scale(p, k, center=(0, 0)):
    "Homothety with ratio ``k`` and the given centre."
    return (center[0] + k * (p[0] - center[0]), center[1] + k * (p[1] - center[1]))


def lerp(p, q, t):
    "The point ``p + t (q - p)``."
    return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


def cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def turn(o, a, b):
    "Cross product of ``a - o`` and ``b - o``; positive for a left turn."
    return cross(sub(a, o), sub(b, o))


def polygon_area(points, signed=False):
    """
    Shoelace area. Counter-clockwise polygons have positive signed area.
    """
    n = len(points)
    twice = 0
    for i in range(n):
        (x0, y0), (x1, y1) = points[i], points[(i + 1) % n]
        twice += x0 * y1 - x1 * y0
    area = twice / 2 if isinstance(twice, float) else Fraction(twice) / 2
    return area if signed else abs(area)


def _scale_of(points):
    return max(max(abs(x), abs(y)) for x, y in points) or 1


def convex_orientation(points, tol=0):
    """
    Return ``1`` for a strictly convex counter-clockwise polygon and ``-1``
    for a clockwise one.

    With ``tol`` the turn at each vertex must exceed ``tol`` times the squared
    coordinate scale, so nearly collinear triples count as degenerate.

    :raises QuadrangleError: If three consecutive vertices are collinear or
        the turns change sign.
    """
    n = len(points)
    if n < 3:
        raise QuadrangleError(points, "Need at least three vertices")
    band = tol * _scale_of(points) ** 2 if tol else 0
    sign = 0
    for i in range(n):
        t = turn(points[i - 1], points[i], points[(i + 1) % n])
        if abs(t) <= band:
            raise QuadrangleError(points, "Degenerate vertex %d" % i)
        s = 1 if t > 0 else -1
        if sign and s != sign:
            raise QuadrangleError(points, "Not convex at vertex %d" % i)
        sign = s
    return sign


def line_intersection(p1, p2, q1, q2):
    """
    Intersect the lines ``p1 p2`` and ``q1 q2``.

    :return: ``(point, t, u)`` with ``point = p1 + t (p2 - p1) = q1 + u (q2 - q1)``,
        or ``None`` for parallel lines.
    """
    r = sub(p2, p1)
    s = sub(q2, q1)
    denom = cross(r, s)
    if denom == 0:
        return None
    w = sub(q1, p1)
    t = cross(w, s) / denom
    u = cross(w, r) / denom
    return lerp(p1, p2, t), t, u


def parameter_on_segment(p, a, b, tol=0):
    """
    If ``p`` lies on the line ``a b`` return its parameter along ``a -> b``,
    else ``None``.
    """
    d = sub(b, a)
    w = sub(p, a)
    length2 = dot(d, d)
    if abs(cross(d, w)) > tol * length2:
        return None
    return dot(w, d) / length2


def clip_convex(subject, clip):
    """
    Sutherland-Hodgman clipping of ``subject`` against the convex polygon
    ``clip``. Both polygons must be counter-clockwise; boundaries count as
    inside, so touching polygons yield a degenerate (zero area) result.
    """
    output = list(subject)
    cp1 = clip[-1]
    for cp2 in clip:
        if not output:
            return []
        edge = sub(cp2, cp1)

        def inside(p):
            return cross(edge, sub(p, cp1)) >= 0

        def add_crossing(s, e):
            # A float segment along the clip line can straddle it after
            # rounding; it has no crossing and only its inside end is kept.
            found = line_intersection(s, e, cp1, cp2)
            if found is not None:
                output.append(found[0])

        input_list = output
        output = []
        s = input_list[-1]
        for e in input_list:
            if inside(e):
                if not inside(s):
                    add_crossing(s, e)
                output.append(e)
            elif inside(s):
                add_crossing(s, e)
            s = e
        cp1 = cp2
    return output


def ccw(points):
    "Return ``points`` reordered counter-clockwise (reversed if needed)."
    points = list(points)
    if polygon_area(points, signed=True) < 0:
        points.reverse()
    return points


def bounding_box(points):
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    return min(xs), min(ys), max(xs), max(ys)


def to_point(p):
    "Coerce a pair of numbers or ratio strings into a point of Ratios."
    x, y = p
    return (to_ratio(x), to_ratio(y))
