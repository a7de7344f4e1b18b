import unittest
import warnings
from fractions import Fraction as F

import mock
from hypothesis import given

import gcdissect
from gcdissect.exceptions import InexactWarning, QuadrangleError
from gcdissect.util.geometry import (
    bounding_box,
    ccw,
    clip_convex,
    convex_orientation,
    line_intersection,
    parameter_on_segment,
    polygon_area,
    scale,
    to_point,
)
from gcdissect.util.ratio import close, format_ratio, is_exact, less, midpoint, to_ratio

from . import ratios


class TestRatio(unittest.TestCase):

    def test_to_ratio(self):
        self.assertEqual(to_ratio('3/8'), F(3, 8))
        self.assertEqual(to_ratio(' 2 '), F(2))
        self.assertEqual(to_ratio(3), F(3))
        self.assertEqual(to_ratio('0.25'), 0.25)
        self.assertEqual(to_ratio('1e-9'), 1e-9)
        self.assertTrue(isinstance(to_ratio('0.25'), float))

    def test_invalid(self):
        self.assertRaises(ValueError, to_ratio, 'three')
        self.assertRaises(ValueError, to_ratio, '1/0')
        self.assertRaises(TypeError, to_ratio, None)
        self.assertRaises(TypeError, to_ratio, True)

    def test_format(self):
        self.assertEqual(format_ratio(F(3, 8)), '3/8')
        self.assertEqual(format_ratio(2), '2')
        self.assertEqual(format_ratio(0.5), '0.5')

    @given(ratios())
    def test_format_parses_back(self, x):
        self.assertEqual(to_ratio(format_ratio(x)), x)

    def test_is_exact(self):
        self.assertTrue(is_exact(F(1, 2), 3))
        self.assertFalse(is_exact(F(1, 2), 0.5))
        self.assertFalse(is_exact(True))

    def test_close(self):
        self.assertTrue(close(F(1, 3), F(2, 6)))
        self.assertTrue(close(0.1 + 0.2, 0.3, 1e-12))
        self.assertFalse(close(F(1, 3), F(1, 2), F(1, 10)))

    def test_close_warns_for_floats(self):
        with warnings.catch_warnings(record=True) as w:
            warnings.simplefilter('always')
            close(0.5, 0.5)
        self.assertEqual(len(w), 1)
        self.assertTrue(issubclass(w[0].category, InexactWarning))

    def test_disable_warnings(self):
        with warnings.catch_warnings(record=True) as w:
            warnings.simplefilter('always')
            gcdissect.disable_warnings()
            close(0.5, 0.5)
        self.assertEqual(w, [])

    def test_less(self):
        self.assertTrue(less(F(1, 3), F(1, 2)))
        self.assertFalse(less(0.3, 0.3 + 1e-12, 1e-9))

    def test_midpoint(self):
        self.assertEqual(midpoint(F(1, 3), 1), F(2, 3))
        self.assertEqual(midpoint(0.25, 0.75), 0.5)


class TestGeometry(unittest.TestCase):

    def test_area(self):
        square = [(0, 0), (1, 0), (1, 1), (0, 1)]
        self.assertEqual(polygon_area(square), 1)
        self.assertEqual(polygon_area(square[::-1], signed=True), -1)
        self.assertEqual(polygon_area([(0, 0), (F(1, 2), 0), (0, F(1, 3))]), F(1, 12))

    def test_orientation(self):
        square = [(0, 0), (1, 0), (1, 1), (0, 1)]
        self.assertEqual(convex_orientation(square), 1)
        self.assertEqual(convex_orientation(square[::-1]), -1)
        self.assertRaises(QuadrangleError, convex_orientation, [(0, 0), (1, 0), (2, 0), (0, 1)])
        self.assertRaises(QuadrangleError, convex_orientation,
                          [(0, 0), (2, 0), (F(1, 2), F(1, 2)), (0, 2)])
        self.assertRaises(QuadrangleError, convex_orientation,
                          [(0.0, 0.0), (1.0, 0.0), (2.0, 1e-12), (0.0, 1.0)], 1e-9)

    def test_line_intersection(self):
        point, t, u = line_intersection((0, 0), (2, 0), (1, -1), (1, 1))
        self.assertEqual(point, (1, 0))
        self.assertEqual((t, u), (F(1, 2), F(1, 2)))
        self.assertEqual(line_intersection((0, 0), (1, 0), (0, 1), (1, 1)), None)

    def test_parameter_on_segment(self):
        self.assertEqual(parameter_on_segment((F(1, 4), 0), (0, 0), (1, 0)), F(1, 4))
        self.assertEqual(parameter_on_segment((F(1, 4), F(1, 8)), (0, 0), (1, 0)), None)

    def test_clip(self):
        square = [(0, 0), (2, 0), (2, 2), (0, 2)]
        triangle = [(1, 1), (3, 1), (1, 3)]
        self.assertEqual(polygon_area(clip_convex(triangle, square)), 1)
        self.assertEqual(clip_convex(triangle, [(5, 5), (6, 5), (6, 6)]), [])

    @mock.patch('gcdissect.util.geometry.line_intersection', return_value=None)
    def test_clip_without_crossings(self, line_intersection):
        square = [(0, 0), (2, 0), (2, 2), (0, 2)]
        triangle = [(1, 1), (3, 1), (1, 3)]
        self.assertEqual(clip_convex(triangle, square), [(1, 1)])
        self.assertTrue(line_intersection.called)

    def test_helpers(self):
        self.assertEqual(ccw([(0, 1), (1, 1), (1, 0), (0, 0)]), [(0, 0), (1, 0), (1, 1), (0, 1)])
        self.assertEqual(bounding_box([(0, 1), (2, -1), (1, 3)]), (0, -1, 2, 3))
        self.assertEqual(scale((2, 2), F(1, 2), (0, 2)), (1, 2))
        self.assertEqual(to_point(('1/2', 3)), (F(1, 2), F(3)))
