"""
Checks a :class:`~gcdissect.realizer.DissectionPlan` from its coordinates
alone: every tile an affine copy, areas adding up, no two tiles overlapping
and, for glass-cut plans, every cut running between opposite sides of the
piece it splits.
"""
from collections import namedtuple
from fractions import Fraction
import logging

from .affine_types import classify_quadrangle, same_class
from .exceptions import PlanFormatError, QuadrangleError
from .util.geometry import (
    bounding_box,
    ccw,
    clip_convex,
    convex_orientation,
    parameter_on_segment,
    polygon_area,
)


log = logging.getLogger(__name__)


TileCheck = namedtuple('TileCheck', ['index', 'cls', 'ok', 'error'])
CutViolation = namedtuple('CutViolation', ['index', 'reason'])


class VerificationReport(namedtuple('VerificationReport', [
        'ok', 'root_ok', 'tiles', 'area_ok', 'area_deficit', 'max_overlap_area',
        'overlaps', 'gc_cut_violations'])):
    """
    Outcome of :func:`verify_plan`.

    ``tiles`` holds one :class:`TileCheck` per tile, ``overlaps`` the index
    pairs of tiles whose intersection area exceeds the tolerance, and
    ``gc_cut_violations`` one :class:`CutViolation` per bad cut.
    """
    __slots__ = ()

    @property
    def failures(self):
        "Human readable list of everything that failed."
        out = []
        if not self.root_ok:
            out.append('root does not carry its recorded class')
        for check in self.tiles:
            if not check.ok:
                out.append('tile %d: %s' % (check.index, check.error))
        if not self.area_ok:
            out.append('area deficit %s' % (self.area_deficit,))
        for i, j in self.overlaps:
            out.append('tiles %d and %d overlap' % (i, j))
        for violation in self.gc_cut_violations:
            out.append('cut %d: %s' % violation)
        return out


def convex_intersection_area(a, b):
    """
    Area of the intersection of two convex polygons, exact for rational
    coordinates.

    >>> square = [(0, 0), (1, 0), (1, 1), (0, 1)]
    >>> convex_intersection_area(square, [(x + Fraction(1, 2), y) for x, y in square])
    Fraction(1, 2)

    :raises QuadrangleError: If either polygon is not strictly convex.
    """
    convex_orientation(a)
    convex_orientation(b)
    return polygon_area(clip_convex(ccw(a), ccw(b)))


def _boxes_meet(box1, box2):
    return not (box1[2] <= box2[0] or box2[2] <= box1[0] or
                box1[3] <= box2[1] or box2[3] <= box1[1])


def _check_structure(plan):
    for name in ('root', 'tiles', 'cuts', 'gc'):
        if not hasattr(plan, name):
            raise PlanFormatError("Plan has no %r" % name)
    if not plan.tiles:
        raise PlanFormatError("Plan has no tiles")
    for quad in [plan.root] + list(plan.tiles):
        if len(quad.points) != 4 or any(len(p) != 2 for p in quad.points):
            raise PlanFormatError("Expected four planar points, got %r" % (quad.points,))
    for cut in plan.cuts:
        if len(cut.parent) != 4:
            raise PlanFormatError("Cut parent is not a quadrangle: %r" % (cut.parent,))


def _within(value, bound, tol):
    return value == 0 if not tol else abs(value) <= bound


def _check_tile(index, quad, expected, tol):
    try:
        convex_orientation(quad.points)
        cls = classify_quadrangle(quad.points).cls
    except QuadrangleError as e:
        return TileCheck(index, None, False, str(e))
    if not same_class(cls, expected, tol):
        return TileCheck(index, cls, False, 'class %s, expected %s' % (cls, expected))
    return TileCheck(index, cls, True, None)


def _side_of(point, quad, tol):
    for i in range(4):
        t = parameter_on_segment(point, quad[i], quad[(i + 1) % 4], tol)
        if t is not None and tol < t < 1 - tol:
            return i
    return None


def _check_cut(index, cut, tol):
    i, j = _side_of(cut.p, cut.parent, tol), _side_of(cut.q, cut.parent, tol)
    if i is None or j is None:
        return CutViolation(index, 'endpoint not inside a side of the cut piece')
    if j != (i + 2) % 4:
        return CutViolation(index, 'endpoints on sides %d and %d, not opposite' % (i, j))
    return None


def verify_plan(plan, tol=0, leaf=None):
    """
    Verify a plan from its coordinates.

    :param tol: ``0`` for exact checks (rational plans); otherwise area and
        overlap checks allow ``tol`` times the root area and classes may
        differ by ``tol``.
    :param leaf: Class every tile must have; defaults to the root's class.
    :rtype: :class:`VerificationReport`
    :raises PlanFormatError: If the plan is structurally malformed.
    """
    _check_structure(plan)
    expected = plan.root.cls if leaf is None else leaf

    try:
        root_ok = same_class(classify_quadrangle(plan.root.points).cls, plan.root.cls, tol)
    except QuadrangleError:
        root_ok = False
    root_area = polygon_area(plan.root.points)
    bound = tol * root_area

    tiles = [_check_tile(i, quad, expected, tol) for i, quad in enumerate(plan.tiles)]

    deficit = root_area - sum(polygon_area(q.points) for q in plan.tiles)
    area_ok = _within(deficit, bound, tol)

    max_overlap, overlaps = Fraction(0), []
    boxes = [bounding_box(q.points) for q in plan.tiles]
    convex = [check.error is None or check.cls is not None for check in tiles]
    for i in range(len(plan.tiles)):
        for j in range(i + 1, len(plan.tiles)):
            if not (convex[i] and convex[j] and _boxes_meet(boxes[i], boxes[j])):
                continue
            area = polygon_area(clip_convex(ccw(plan.tiles[i].points),
                                            ccw(plan.tiles[j].points)))
            max_overlap = max(max_overlap, area)
            if not _within(area, bound, tol):
                overlaps.append((i, j))

    violations = []
    if plan.gc:
        if len(plan.cuts) != len(plan.tiles) - 1:
            violations.append(CutViolation(-1, '%d cuts for %d tiles'
                                           % (len(plan.cuts), len(plan.tiles))))
        for index, cut in enumerate(plan.cuts):
            violation = _check_cut(index, cut, tol)
            if violation:
                violations.append(violation)

    ok = (root_ok and all(check.ok for check in tiles) and area_ok
          and not overlaps and not violations)
    report = VerificationReport(ok, root_ok, tiles, area_ok, deficit, max_overlap,
                                overlaps, violations)
    if ok:
        log.info("Plan with %d tiles verified", len(plan.tiles))
    else:
        log.info("Plan with %d tiles failed: %s", len(plan.tiles), '; '.join(report.failures))
    return report
