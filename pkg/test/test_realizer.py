import unittest
from fractions import Fraction as F

from hypothesis import given, settings, strategies as st

from gcdissect.affine_types import P, Q, T, classify_quadrangle, same_class
from gcdissect.composition import DOT
from gcdissect.exceptions import (
    ClassError,
    KiteObstructionError,
    ParityError,
    RefusalError,
    ThresholdError,
    TreeFormatError,
    UnrealizableTreeError,
)
from gcdissect.families import FAMILY_TREES, family_beta
from gcdissect.realizer import (
    LabeledQuad,
    dissect,
    dissect_even_general,
    dissect_general,
    dissect_odd,
    dissect_por5,
    dissect_trapezoid,
    dissect_trapezoid_selfaffine,
    realize_cut,
    realize_tree,
    solve_nu,
    standard_placement,
    trapezoid_threshold,
    trapezoid_tree,
    trivial_plan,
)
from gcdissect.treesearch import KITE5_TREES, parse_tree
from gcdissect.verifier import verify_plan

from . import Q_FLIPPED, Q_GENERIC, Q_KITE, kites, non_kites, q_classes


class TestPlacement(unittest.TestCase):

    def test_standard_placement(self):
        self.assertEqual(standard_placement(Q_GENERIC).points,
                         ((0, 0), (F(4, 5), 0), (F(1, 2), F(3, 8)), (0, F(3, 4))))
        self.assertEqual(standard_placement(T(F(1, 2))).points,
                         ((0, 0), (F(1, 2), 0), (F(1, 2), F(1, 2)), (0, 1)))
        self.assertEqual(standard_placement(P).points, ((0, 0), (1, 0), (1, 1), (0, 1)))

    def test_flipped(self):
        quad = standard_placement(Q_GENERIC)
        flipped = quad.flipped()
        self.assertEqual(flipped.cls, Q_FLIPPED)
        self.assertEqual(flipped.points, (quad.a, quad.d, quad.c, quad.b))
        self.assertEqual(flipped.flipped(), quad)
        trapezoid = standard_placement(T(F(1, 2)))
        self.assertEqual(trapezoid.flipped(), trapezoid)

    def test_side_types(self):
        self.assertEqual(standard_placement(T(F(1, 2))).side_types,
                         ('constant', 'closing', 'constant', 'opening'))

    def test_scaled_plan(self):
        plan = trivial_plan(Q_GENERIC).scaled(2)
        self.assertEqual(plan.root.points[1], (F(8, 5), 0))
        self.assertEqual(plan.n, 1)


class TestRealizeCut(unittest.TestCase):

    def test_apex_cut(self):
        parent = standard_placement(Q(F(1, 20), F(5, 16)))
        result = realize_cut(parent, DOT, Q_GENERIC, Q_FLIPPED)
        self.assertEqual(result.cut.p, (F(4, 5), 0))
        self.assertEqual(result.lam, None)
        self.assertEqual(classify_quadrangle(result.left.points).cls, Q_GENERIC)
        self.assertTrue(same_class(classify_quadrangle(result.right.points).cls, Q_FLIPPED))

    def test_trapezoids(self):
        parent = standard_placement(T(F(1, 100)))
        result = realize_cut(parent, DOT, T(F(1, 10)), T(F(1, 10)))
        self.assertEqual(result.cut.p, (F(9, 10), 0))
        self.assertEqual(result.cut.q, (F(9, 10), F(1, 10)))

    def test_constant_sides(self):
        parent = standard_placement(T(F(1, 2)))
        result = realize_cut(parent, DOT, T(F(1, 10)), T(F(1, 10)), True, True)
        self.assertEqual(result.lam, F(8, 19))
        for child in (result.left, result.right):
            self.assertEqual(classify_quadrangle(child.points).cls, T(F(1, 10)))

    def test_wrong_parent(self):
        parent = standard_placement(T(F(1, 2)))
        self.assertRaises(ClassError, realize_cut, parent, DOT, T(F(1, 10)), T(F(1, 10)))


class TestRealizeTree(unittest.TestCase):

    def test_product(self):
        plan = realize_tree(parse_tree('L.L'), T(F(1, 10)), target=T(F(1, 100)))
        self.assertEqual(plan.n, 2)
        self.assertEqual(len(plan.cuts), 1)
        self.assertTrue(verify_plan(plan, leaf=T(F(1, 10))).ok)

    def test_constant_side_halves(self):
        plan = realize_tree(parse_tree('L^F.L^F'), T(F(1, 2)))
        self.assertEqual(plan.pinned['lambda_0'], 1)
        self.assertTrue(verify_plan(plan).ok)

    def test_default_target(self):
        self.assertRaises(UnrealizableTreeError, realize_tree, parse_tree('L.L'), T(F(1, 10)))

    def test_kite_trees(self):
        for t in KITE5_TREES.values():
            self.assertRaises(UnrealizableTreeError, realize_tree, t, Q_KITE)


class TestTrapezoids(unittest.TestCase):

    def test_tree_shape(self):
        self.assertEqual(str(trapezoid_tree(Q_GENERIC, 2)), 'L:L')
        self.assertEqual(str(trapezoid_tree(Q_GENERIC, 4)), '(L:L)^F.(L:L)^F')
        self.assertEqual(trapezoid_tree(Q_GENERIC, 8).size, 8)
        self.assertRaises(ParityError, trapezoid_tree, Q_GENERIC, 3)

    def test_threshold(self):
        self.assertEqual(trapezoid_threshold(Q_GENERIC, 2), F(1, 10))
        self.assertEqual(trapezoid_threshold(Q_FLIPPED, 4), F(1, 8))

    def test_two_copies(self):
        plan = dissect_trapezoid(F(1, 10), 2, Q_GENERIC)
        self.assertTrue(verify_plan(plan, leaf=Q_GENERIC).ok)
        self.assertRaises(RefusalError, dissect_trapezoid, F(1, 2), 2, Q_GENERIC)

    def test_four_copies(self):
        plan = dissect_trapezoid(F(1, 2), 4, Q_GENERIC)
        self.assertEqual(plan.n, 4)
        self.assertEqual(plan.pinned['gamma'], F(1, 2))
        self.assertEqual(plan.pinned['lambda_0'], F(8, 19))
        report = verify_plan(plan, leaf=Q_GENERIC)
        self.assertTrue(report.ok, report.failures)
        self.assertFalse(verify_plan(plan).ok)

    def test_refusals(self):
        self.assertRaises(ThresholdError, dissect_trapezoid, F(1, 100), 4, Q_GENERIC)
        self.assertRaises(ParityError, dissect_trapezoid, F(1, 2), 3, Q_GENERIC)
        self.assertRaises(ClassError, dissect_trapezoid, F(1, 2), 4, T(F(1, 3)))

    def test_threshold_error_values(self):
        try:
            dissect_trapezoid(F(1, 100), 4, Q_GENERIC)
            self.fail("Failed to raise error.")
        except ThresholdError as e:
            self.assertEqual(e.gamma, F(1, 100))
            self.assertEqual(e.bound, F(1, 10))


class TestOdd(unittest.TestCase):

    def test_five(self):
        plan = dissect_odd(Q_GENERIC, 5)
        self.assertEqual(plan.n, 5)
        self.assertEqual(plan.pinned['gamma'], F(4, 5))
        report = verify_plan(plan)
        self.assertTrue(report.ok, report.failures)

    def test_seven(self):
        report = verify_plan(dissect_odd(Q_GENERIC, 7))
        self.assertTrue(report.ok, report.failures)

    def test_kite(self):
        plan = dissect_odd(Q_KITE, 7)
        self.assertEqual(plan.pinned['gamma'], F(5, 7))
        report = verify_plan(plan)
        self.assertTrue(report.ok, report.failures)
        self.assertRaises(KiteObstructionError, dissect_odd, Q_KITE, 5)

    def test_refusals(self):
        self.assertRaises(ParityError, dissect_odd, Q_GENERIC, 6)
        self.assertRaises(RefusalError, dissect_odd, Q_GENERIC, 3)
        self.assertRaises(ClassError, dissect_odd, T(F(1, 2)), 5)


class TestFan(unittest.TestCase):

    def test_trapezoid(self):
        plan = dissect_trapezoid_selfaffine(T(F(1, 2)), 3)
        self.assertEqual(plan.n, 3)
        self.assertEqual(len(plan.cuts), 2)
        self.assertEqual(plan.tree.name, 'trapezoid_fan')
        report = verify_plan(plan)
        self.assertTrue(report.ok, report.failures)

    def test_parallelogram(self):
        self.assertTrue(verify_plan(dissect_trapezoid_selfaffine(P, 4)).ok)

    def test_non_trapezoid(self):
        self.assertRaises(ClassError, dissect_trapezoid_selfaffine, Q_GENERIC, 3)


class TestGeneral(unittest.TestCase):

    def test_five_pieces(self):
        plan = dissect_por5(Q_GENERIC)
        self.assertEqual(plan.n, 5)
        self.assertFalse(plan.gc)
        self.assertEqual(plan.pinned['rho'], F(1, 10))
        report = verify_plan(plan)
        self.assertTrue(report.ok, report.failures)

    def test_solve_nu(self):
        points = standard_placement(Q_GENERIC).points
        nu, residual = solve_nu(points, F(8, 7), F(1, 10))
        self.assertEqual(nu, F(79, 80))
        self.assertEqual(residual, 0)

    def test_even(self):
        for n in (6, 8):
            plan = dissect_even_general(Q_GENERIC, n)
            self.assertEqual(plan.n, n)
            self.assertFalse(plan.gc)
            self.assertEqual(plan.pinned['k'], F(8, 7))
            self.assertTrue(abs(plan.pinned['mu_residual']) < 1e-12)
            report = verify_plan(plan, tol=1e-9)
            self.assertTrue(report.ok, report.failures)

    def test_even_refusal(self):
        self.assertRaises(RefusalError, dissect_even_general, Q_GENERIC, 4)
        self.assertRaises(RefusalError, dissect_even_general, Q_GENERIC, 7)


class TestDispatch(unittest.TestCase):

    def test_dissect(self):
        self.assertEqual(dissect(Q_GENERIC, 1).n, 1)
        self.assertEqual(dissect(T(F(1, 2)), 4).tree.name, 'trapezoid_fan')
        self.assertEqual(dissect(Q_GENERIC, 5).n, 5)
        self.assertRaises(ParityError, dissect, Q_GENERIC, 4)
        self.assertRaises(UnrealizableTreeError, dissect, Q_GENERIC, 3)
        self.assertRaises(KiteObstructionError, dissect, Q_KITE, 5)

    def test_three_copies_on_a_family(self):
        plan = dissect(Q(0.5, family_beta('II', 0.5)), 3, tol=1e-9)
        self.assertEqual(plan.n, 3)
        self.assertTrue(str(plan.tree) in FAMILY_TREES['II'])

    def test_three_copies_verify_on_every_family(self):
        for family_id, alpha in (('II', 0.5), ('III', 0.5), ('IV', 0.5), ('IV', 0.05)):
            plan = dissect(Q(alpha, family_beta(family_id, alpha)), 3, tol=1e-9)
            report = verify_plan(plan, tol=1e-7)
            self.assertTrue(report.ok, (family_id, alpha, report.failures))

    def test_explicit_tree(self):
        plan = dissect(T(F(1, 2)), 2, tree='L^F.L^F')
        self.assertTrue(plan.gc)
        self.assertRaises(RefusalError, dissect, T(F(1, 2)), 3, tree='L^F.L^F')
        self.assertRaises(TreeFormatError, dissect, T(F(1, 2)), 3, tree='L.L.L')

    def test_dissect_general(self):
        self.assertEqual(dissect_general(Q_GENERIC, 5).tree.name, 'por5')
        self.assertEqual(dissect_general(Q_GENERIC, 6).tree.name, 'even_general')
        self.assertTrue(dissect_general(Q_GENERIC, 7).gc)
        self.assertTrue(dissect_general(P, 2).gc)
        self.assertRaises(RefusalError, dissect_general, Q_GENERIC, 4)
        self.assertRaises(RefusalError, dissect_general, Q_GENERIC, 3)

    def test_plan_tiles_are_labeled(self):
        for quad in dissect_odd(Q_GENERIC, 5).tiles:
            self.assertTrue(isinstance(quad, LabeledQuad))
            self.assertEqual(classify_quadrangle(quad.points).cls, Q_GENERIC)


class TestRandomClasses(unittest.TestCase):

    @given(non_kites(), st.sampled_from([5, 7, 9]))
    @settings(max_examples=25, deadline=None)
    def test_odd(self, c, n):
        plan = dissect_odd(c, n)
        self.assertEqual(len(plan.tiles), n)
        report = verify_plan(plan)
        self.assertTrue(report.ok, (c, n, report.failures))

    @given(kites(), st.sampled_from([7, 9]))
    @settings(max_examples=15, deadline=None)
    def test_odd_kites(self, c, n):
        report = verify_plan(dissect_odd(c, n))
        self.assertTrue(report.ok, (c, n, report.failures))

    @given(q_classes())
    @settings(max_examples=25, deadline=None)
    def test_five_pieces(self, c):
        report = verify_plan(dissect_por5(c))
        self.assertTrue(report.ok, (c, report.failures))

    @given(q_classes(), st.sampled_from([6, 8, 10]))
    @settings(max_examples=10, deadline=None)
    def test_even(self, c, n):
        plan = dissect_even_general(c, n)
        self.assertTrue(abs(plan.pinned['mu_residual']) < 1e-12)
        report = verify_plan(plan, tol=1e-9)
        self.assertTrue(report.ok, (c, n, report.failures))

    def test_fans_verify_exactly(self):
        for c in (T(F(1, 3)), T(F(4, 5)), P):
            for n in range(2, 9):
                report = verify_plan(dissect_trapezoid_selfaffine(c, n))
                self.assertTrue(report.ok, (c, n, report.failures))
