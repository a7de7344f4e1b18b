import unittest
from fractions import Fraction as F

from hypothesis import given, strategies as st

from gcdissect.affine_types import P, Q, T, affine_quotient
from gcdissect.composition import (
    COLON,
    DOT,
    ClassSet,
    ClassTerm,
    Interval,
    cache_info,
    combine,
    compose_sets,
    member,
    pin_glue,
)
from gcdissect.exceptions import ClassError, NoGlueingError

from . import Q_FLIPPED, Q_GENERIC, q_classes


class TestInterval(unittest.TestCase):

    def test_contains(self):
        i = Interval(F(1, 10), F(1), True, False)
        self.assertTrue(i.contains(F(1, 10)))
        self.assertTrue(i.contains(F(1, 2)))
        self.assertFalse(i.contains(F(1)))
        self.assertFalse(i.contains(F(1, 20)))

    def test_point(self):
        i = Interval.point(F(1, 3))
        self.assertTrue(i.is_point)
        self.assertFalse(i.is_empty)
        self.assertTrue(Interval(F(1, 2), F(1, 2), True, False).is_empty)


class TestCombine(unittest.TestCase):

    def test_dot(self):
        result = combine(Q_GENERIC, Q_FLIPPED, DOT)
        self.assertEqual(result.classes(), [Q(F(1, 20), F(5, 16))])

    def test_colon_equal_quotients(self):
        result = combine(Q_GENERIC, Q_GENERIC, COLON)
        self.assertEqual(result.classes(), [T(F(1, 10))])

    def test_colon_different_quotients(self):
        result = combine(Q_GENERIC, Q(F(1, 3), F(1, 2)), COLON)
        self.assertEqual(result.classes(), [Q(F(1, 10), F(1, 6))])

    def test_q_dot_t(self):
        result = combine(Q_GENERIC, T(F(1, 2)), DOT)
        self.assertEqual(result.classes(), [Q(F(1, 10), F(1, 4))])

    def test_trapezoids(self):
        result = combine(T(F(1, 10)), T(F(1, 10)), DOT)
        self.assertEqual(result.classes(), [T(F(1, 100))])

    def test_constant_sides(self):
        result = combine(ClassTerm(T(F(1, 10)), True), ClassTerm(T(F(1, 10)), True), DOT)
        self.assertFalse(result.is_finite)
        self.assertTrue(member(result, T(F(1, 10))))
        self.assertTrue(member(result, T(F(1, 2))))
        self.assertTrue(member(result, P))
        self.assertFalse(member(result, T(F(1, 20))))

    def test_parallelograms(self):
        self.assertEqual(combine(P, P, DOT).classes(), [P])
        result = combine(ClassTerm(T(F(1, 4)), True), P, DOT)
        self.assertTrue(member(result, T(F(1, 2))))
        self.assertFalse(member(result, T(F(1, 4))))

    def test_no_glueing(self):
        for left, right, op in ((Q_GENERIC, P, DOT),
                                (Q_GENERIC, T(F(1, 2)), COLON),
                                (P, P, COLON),
                                (Q_GENERIC, ClassTerm(T(F(1, 2)), True), DOT),
                                (ClassTerm(T(F(1, 2)), True), T(F(1, 2)), DOT)):
            self.assertRaises(NoGlueingError, combine, left, right, op)

    def test_no_glueing_names_row(self):
        try:
            combine(Q_GENERIC, P, DOT)
            self.fail("Failed to raise error.")
        except NoGlueingError as e:
            self.assertEqual(e.row, 'Q . P')

    def test_flip_is_folded(self):
        self.assertEqual(ClassTerm(Q_GENERIC, True), ClassTerm(Q_FLIPPED))
        self.assertTrue(ClassTerm(T(F(1, 2)), True).flipped)
        self.assertRaises(ClassError, ClassTerm, 'Q')

    def test_unknown_operation(self):
        self.assertRaises(ClassError, combine, Q_GENERIC, Q_GENERIC, 'times')

    @given(q_classes(), q_classes(), st.sampled_from([DOT, COLON]))
    def test_commutative(self, c1, c2, op):
        self.assertEqual(combine(c1, c2, op), combine(c2, c1, op))

    @given(q_classes(), q_classes())
    def test_dot_multiplies_quotients(self, c1, c2):
        (root,) = combine(c1, c2, DOT).classes()
        self.assertEqual(affine_quotient(root), affine_quotient(c1) * affine_quotient(c2))


class TestComposeSets(unittest.TestCase):

    def test_skips_undefined_pairs(self):
        left = ClassSet.build([('Q', F(1, 5), F(1, 2), Interval.point(F(1))), ('P',)])
        result = compose_sets(left, ClassSet.single(Q_FLIPPED), DOT)
        self.assertEqual(result.classes(), [Q(F(1, 20), F(5, 16))])

    def test_empty(self):
        self.assertTrue(compose_sets(ClassSet.empty(), ClassSet.single(P), DOT).is_empty)

    def test_cached(self):
        left, right = ClassSet.single(T(F(1, 3))), ClassSet.single(T(F(1, 7)))
        compose_sets(left, right, DOT)
        hits = cache_info()['hits']
        compose_sets(left, right, DOT)
        self.assertEqual(cache_info()['hits'], hits + 1)

    def test_flipped_curve(self):
        # Q . T^F-interval: a curve of non-trapezoids with a fixed quotient.
        trapezoids = combine(ClassTerm(T(F(1, 10)), True), ClassTerm(T(F(1, 10)), True), DOT)
        result = compose_sets(ClassSet.single(Q_GENERIC), trapezoids, DOT)
        self.assertTrue(member(result, Q(F(1, 10), F(1, 4))))
        self.assertFalse(member(result, Q(F(1, 10), F(1, 3))))


class TestPinGlue(unittest.TestCase):

    def test_dot(self):
        pin = pin_glue(ClassSet.single(Q_GENERIC), ClassSet.single(Q_GENERIC), DOT,
                       Q(F(1, 20), F(5, 16)), right_flip=True)
        self.assertEqual(pin, (Q_GENERIC, Q_FLIPPED))

    def test_constant_sides(self):
        s = ClassSet.single(T(F(1, 10)))
        pin = pin_glue(s, s, DOT, T(F(1, 2)), True, True)
        self.assertEqual(pin, (T(F(1, 10)), T(F(1, 10))))

    def test_interval(self):
        s = ClassSet.single(T(F(1, 2)))
        trapezoids = compose_sets(s, s, DOT, True, True)
        pin = pin_glue(ClassSet.single(Q_GENERIC), trapezoids, DOT, Q(F(3, 20), F(3, 8)))
        self.assertEqual(pin, (Q_GENERIC, T(F(3, 4))))

    def test_impossible(self):
        s = ClassSet.single(Q_GENERIC)
        self.assertEqual(pin_glue(s, s, DOT, Q_GENERIC), None)
        self.assertEqual(pin_glue(s, s, COLON, T(F(1, 2))), None)
