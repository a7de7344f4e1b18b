"""
Coordinates for dissections.

Every quadrangle is carried as a :class:`LabeledQuad`: four vertices labeled
``(a, b, c, d)`` so that its class parameters can be read off them. For a
non-trapezoid ``Q(alpha, beta)`` the lines ``ab`` and ``dc`` meet in the apex
``s`` beyond ``bc``, with ``b = s + alpha (a - s)`` and ``c = s + beta (d - s)``.
A trapezoid ``T(gamma)`` is labeled the same way with ``alpha = beta =
gamma``, so ``ad`` is the long and ``bc`` the short parallel side. Flipping a
non-trapezoid is the relabeling ``(a, b, c, d) -> (a, d, c, b)``.

Glass-cut plans are realized top-down from a tree: each node's class is
pinned against its children's class sets, and the cut is placed from the
pinned parameters.
"""
from collections import namedtuple, OrderedDict
from fractions import Fraction
import logging

from .affine_types import (
    P_KIND,
    Q_KIND,
    T,
    T_KIND,
    classify_quadrangle,
    flip,
    flip_factor,
    is_affine_kite,
)
from .composition import (
    COLON,
    DOT,
    ClassTerm,
    combine,
    member,
    pin_glue,
)
from .exceptions import (
    BracketError,
    ClassError,
    KiteObstructionError,
    ParityError,
    RefusalError,
    ThresholdError,
    UnrealizableTreeError,
)
from .families import n3_witness
from .treesearch import LEAF, N3_TREES, Leaf, Node, evaluate, parse_tree
from .util.geometry import add, lerp, line_intersection, scale, sub
from .util.ratio import close, less, to_ratio


log = logging.getLogger(__name__)

OPENING = 'opening'
CLOSING = 'closing'
CONSTANT = 'constant'

_SIDE_TYPES = {
    Q_KIND: (OPENING, CLOSING, CLOSING, OPENING),
    T_KIND: (CONSTANT, CLOSING, CONSTANT, OPENING),
    P_KIND: (CONSTANT, CONSTANT, CONSTANT, CONSTANT),
}

#: Bracket width and residual of the even-n parameter search.
NU_TOL = Fraction(1, 10 ** 12)
MAX_BISECTIONS = 200


class LabeledQuad(namedtuple('LabeledQuad', ['points', 'cls'])):
    """
    A quadrangle with labeled vertices and the class that labeling carries.
    Side ``i`` runs from vertex ``i`` to vertex ``i + 1``.
    """
    __slots__ = ()

    def __new__(cls, points, klass):
        return super(LabeledQuad, cls).__new__(cls, tuple(tuple(p) for p in points), klass)

    a = property(lambda self: self.points[0])
    b = property(lambda self: self.points[1])
    c = property(lambda self: self.points[2])
    d = property(lambda self: self.points[3])

    @property
    def side_types(self):
        return _SIDE_TYPES[self.cls.kind]

    def flipped(self):
        "The other parametrization of a non-trapezoid; trapezoids are unchanged."
        if self.cls.kind != Q_KIND:
            return self
        a, b, c, d = self.points
        return LabeledQuad((a, d, c, b), flip(self.cls))

    def scaled(self, k):
        return LabeledQuad([scale(p, k) for p in self.points], self.cls)


Cut = namedtuple('Cut', ['parent', 'p', 'q'])
Construction = namedtuple('Construction', ['name', 'params'])
CutResult = namedtuple('CutResult', ['left', 'right', 'cut', 'lam'])


class DissectionPlan(namedtuple('DissectionPlan', ['root', 'tiles', 'tree', 'pinned',
                                                   'gc', 'cuts', 'tol'])):
    """
    A dissection of ``root`` into ``tiles``.

    ``tree`` is the dissection tree for plans realized from one, or a
    :class:`Construction` naming the construction. ``pinned`` maps the names
    of free parameters to the values chosen. ``cuts`` lists every glass-cut
    with the quadrangle it was made in; it is empty for general dissections.
    """
    __slots__ = ()

    @property
    def n(self):
        return len(self.tiles)

    def scaled(self, k):
        return self._replace(
            root=self.root.scaled(k),
            tiles=[q.scaled(k) for q in self.tiles],
            cuts=[Cut(tuple(scale(p, k) for p in c.parent), scale(c.p, k), scale(c.q, k))
                  for c in self.cuts])


def standard_placement(c):
    """
    The standard representative of a class:

    * ``Q(alpha, beta)``: ``(0,0)``, ``(1-alpha, 0)``, ``(1-beta, (1-alpha') beta)``,
      ``(0, 1-alpha')`` with apexes ``(1,0)`` and ``(0,1)``, where ``alpha'``
      is the first flipped parameter;
    * ``T(gamma)``: ``(0,0)``, ``(1-gamma, 0)``, ``(1-gamma, gamma)``, ``(0,1)``;
    * ``P``: the unit square.

    >>> standard_placement(T(Fraction(1, 2))).points
    ((0, 0), (Fraction(1, 2), 0), (Fraction(1, 2), Fraction(1, 2)), (0, 1))
    """
    if c.kind == P_KIND:
        return LabeledQuad([(0, 0), (1, 0), (1, 1), (0, 1)], c)
    if c.kind == T_KIND:
        g = c.gamma
        return LabeledQuad([(0, 0), (1 - g, 0), (1 - g, g), (0, 1)], c)
    alpha_bar = flip(c).alpha
    return LabeledQuad([(0, 0), (1 - c.alpha, 0),
                        (1 - c.beta, (1 - alpha_bar) * c.beta), (0, 1 - alpha_bar)], c)


def _params(c):
    if c.kind == P_KIND:
        raise ClassError("Parallelograms have no apex parameters")
    return c.alpha, c.beta


def _width(c):
    "Short-to-long ratio of the parallel sides; 1 for parallelograms."
    return to_ratio(1) if c.kind == P_KIND else c.gamma


def _apex_cut(parent, op, left, right):
    # Both children share the parent's apex; a colon reflects the second child.
    x, y = _params(parent.cls)
    a1, b1 = _params(left)
    a2, b2 = _params(right)
    A, B, C, D = parent.points
    if op == DOT or a1 * b2 <= b1 * a2:
        pab = lerp(A, B, (1 - a1) / (1 - x))
        pdc = lerp(D, C, (1 - b1) / (1 - y))
        first = (A, pab, pdc, D)
        second = (pab, B, C, pdc) if op == DOT else (pdc, C, B, pab)
    else:
        pab = lerp(A, B, (1 - b1) / (1 - x))
        pdc = lerp(D, C, (1 - a1) / (1 - y))
        first = (D, pdc, pab, A)
        second = (pab, B, C, pdc)
    return first, second, (pab, pdc), None


def _constant_side_cut(parent, left, right):
    g1, g2, g = _width(left), _width(right), _width(parent.cls)
    A, B, C, D = parent.points
    swap = False
    if g1 == g2 == g:
        variant, lam = 1, to_ratio(1)
    elif (g1 - g) * (g - g2) > 0:
        variant, lam = 1, (g1 - g) / (g - g2)
    elif g1 < g:
        variant, lam = 2, (g - g1) / (1 - g * g2)
    elif g2 < g:
        variant, lam, swap = 2, (g - g2) / (1 - g * g1), True
        g1, g2 = g2, g1
    else:
        raise ClassError("No constant-side glueing of T(%s) and T(%s) gives %s"
                         % (g1, g2, parent.cls))
    if variant == 1:
        pd = lerp(A, D, 1 / (1 + lam))
        pc = lerp(B, C, g1 / (g1 + lam * g2))
        first, second = (A, B, pc, pd), (pd, pc, C, D)
    else:
        pd = lerp(A, D, 1 / (1 + lam * g2))
        pc = lerp(B, C, g1 / (g1 + lam))
        first, second = (A, B, pc, pd), (pc, pd, D, C)
    if swap:
        first, second = second, first
    return first, second, (pd, pc), lam


def _parallelogram_cut(parent):
    A, B, C, D = parent.points
    mab, mdc = lerp(A, B, Fraction(1, 2)), lerp(D, C, Fraction(1, 2))
    return (A, mab, mdc, D), (mab, B, C, mdc), (mab, mdc), None


def _term(c, flipped):
    # ClassTerm folds flips of non-trapezoids; these classes are already folded.
    return ClassTerm(c, flipped and c.kind != Q_KIND)


def realize_cut(parent, op, left, right, left_flip=False, right_flip=False, tol=0):
    """
    Place the glass-cut that splits ``parent`` into children of the given
    term classes.

    The children are returned labeled for their term classes: a flipped
    non-trapezoid child still has to be relabeled with
    :meth:`LabeledQuad.flipped` to carry its own class.

    :param parent: The :class:`LabeledQuad` to cut.
    :param left: Term-level class of the left child (flip already applied).
    :param right: Term-level class of the right child.
    :rtype: :class:`CutResult`
    :raises ClassError: If the children cannot glue to the parent's class.
    """
    result = combine(_term(left, left_flip), _term(right, right_flip), op, tol)
    if not member(result, parent.cls, tol):
        raise ClassError("%s %s %s does not give %s" % (left, op, right, parent.cls))
    constant = ((left.kind != Q_KIND and left_flip) or (right.kind != Q_KIND and right_flip))
    if constant:
        first, second, (p, q), lam = _constant_side_cut(parent, left, right)
    elif left.kind == P_KIND:
        first, second, (p, q), lam = _parallelogram_cut(parent)
    else:
        first, second, (p, q), lam = _apex_cut(parent, op, left, right)
    log.debug("Cut %s into %s and %s at %s, %s", parent.cls, left, right, p, q)
    return CutResult(LabeledQuad(first, left), LabeledQuad(second, right),
                     Cut(parent.points, p, q), lam)


def _targets(leaf):
    return [leaf, flip(leaf)] if leaf.kind == Q_KIND else [leaf]


def realize_tree(t, leaf, target=None, root=None, tol=0):
    """
    Realize a dissection tree with tiles of class ``leaf``.

    :param target: Root class; defaults to ``leaf`` or its flip, whichever
        the tree produces.
    :param root: A :class:`LabeledQuad` to dissect instead of the standard
        placement of ``target``.
    :rtype: :class:`DissectionPlan`
    :raises UnrealizableTreeError: If the tree cannot produce the root class.
    """
    if root is not None:
        target = root.cls
    root_set = evaluate(t, leaf, tol)
    candidates = [target] if target is not None else _targets(leaf)
    target = next((c for c in candidates if member(root_set, c, tol)), None)
    if target is None:
        raise UnrealizableTreeError("Tree %s does not produce %s from tiles %s"
                                    % (t, ' or '.join(str(c) for c in candidates), leaf))
    if root is None:
        root = standard_placement(target)
    tiles, cuts, pinned = [], [], OrderedDict()
    _realize_node(t, root, leaf, tol, tiles, cuts, pinned)
    log.info("Realized %s: %d tiles of %s", t, len(tiles), leaf)
    return DissectionPlan(root, tiles, t, pinned, True, cuts, tol)


def _realize_node(node, quad, leaf, tol, tiles, cuts, pinned):
    if isinstance(node, Leaf):
        tiles.append(quad)
        return
    pin = pin_glue(evaluate(node.left, leaf, tol), evaluate(node.right, leaf, tol),
                   node.op, quad.cls, node.left_flip, node.right_flip, tol)
    if pin is None:
        raise UnrealizableTreeError("Subtree %s cannot produce %s" % (node, quad.cls))
    result = realize_cut(quad, node.op, pin.left, pin.right,
                         node.left_flip, node.right_flip, tol)
    cuts.append(result.cut)
    if result.lam is not None:
        pinned['lambda_%d' % len(pinned)] = result.lam
    for child, flipped, q in ((node.left, node.left_flip, result.left),
                              (node.right, node.right_flip, result.right)):
        _realize_node(child, q.flipped() if flipped else q, leaf, tol, tiles, cuts, pinned)


def trivial_plan(c):
    "The dissection of a quadrangle into itself."
    root = standard_placement(c)
    return DissectionPlan(root, [root], LEAF, OrderedDict(), True, [], 0)


# Trapezoids from non-trapezoids

def _require_q(c):
    if c.kind != Q_KIND:
        raise ClassError("Expected a non-trapezoid class, got %s" % (c,))


def trapezoid_tree(leaf, k):
    """
    The tree gluing ``k`` (even) copies of ``leaf`` into a trapezoid: ``L:L``
    for two copies, else a product chain of such pairs glued along constant
    sides to one more pair. Pairs are flipped when that lowers their
    trapezoid parameter.
    """
    _require_q(leaf)
    if k < 2 or k % 2:
        raise ParityError("Trapezoids are built from an even number of tiles, got %d" % k)
    if k == 2:
        return Node(COLON, LEAF, False, LEAF, False)
    flipped = flip_factor(leaf.alpha, leaf.beta) < 1
    unit = Node(COLON, LEAF, flipped, LEAF, flipped)
    chain = unit
    for _ in range(k // 2 - 2):
        chain = Node(DOT, chain, False, unit, False)
    return Node(DOT, chain, True, unit, True)


def trapezoid_threshold(leaf, k):
    "Smallest trapezoid parameter reached by :func:`trapezoid_tree`."
    product = leaf.alpha * leaf.beta
    if k == 2:
        return product
    return product * min(flip_factor(leaf.alpha, leaf.beta), 1)


def dissect_trapezoid(gamma, k, leaf, root=None, tol=0):
    """
    Glass-cut ``T(gamma)`` into ``k`` copies of the non-trapezoid ``leaf``.

    Two copies give exactly ``T(alpha beta)``; every even ``k >= 4`` reaches
    each ``gamma`` from ``alpha beta min(f, 1)`` on, where ``f`` is the flip
    factor.

    :raises ThresholdError: If ``gamma`` is below the bound.
    """
    _require_q(leaf)
    gamma = to_ratio(gamma)
    tree = trapezoid_tree(leaf, k)
    bound = trapezoid_threshold(leaf, k)
    if k == 2 and not close(gamma, bound, tol):
        raise RefusalError("Two copies of %s only form T(%s), not T(%s)" % (leaf, bound, gamma))
    if less(gamma, bound, tol):
        raise ThresholdError(gamma, bound)
    if root is None:
        root = standard_placement(T(gamma))
    plan = realize_tree(tree, leaf, root=root, tol=tol)
    plan.pinned['gamma'] = gamma
    return plan


def dissect_odd(c, n, tol=0):
    """
    Glass-cut a non-trapezoid into an odd number ``n >= 5`` of copies: one
    copy times a trapezoid of ``n - 1`` copies, or for affine kites the
    flipped product of three copies with a trapezoid of ``n - 3`` copies.

    :raises KiteObstructionError: For affine kites with ``n = 5``.
    :raises ParityError: For even ``n``.
    """
    _require_q(c)
    if n % 2 == 0:
        raise ParityError("A non-trapezoid has no glass-cut dissection into an even "
                          "number (%d) of copies" % n)
    if n < 5:
        raise RefusalError("The odd construction needs n >= 5, got %d" % n)
    alpha, beta = c.alpha, c.beta
    f = flip_factor(alpha, beta)
    if is_affine_kite(c, tol):
        if n == 5:
            raise KiteObstructionError("Affine kite %s has no glass-cut dissection into "
                                       "5 copies" % (c,))
        gamma = (1 - alpha * alpha * beta) * beta / (1 - alpha * beta * beta)
        k = n - 3
        head = Node(DOT, LEAF, False, Node(COLON, LEAF, False, LEAF, False), False)
        tree = Node(DOT, head, True, trapezoid_tree(c, k), False)
        target = c
    else:
        gamma = f if f < 1 else 1 / f
        k = n - 1
        tree = Node(DOT, LEAF, f > 1, trapezoid_tree(c, k), False)
        target = flip(c) if f < 1 else c
    bound = trapezoid_threshold(c, k)
    if less(gamma, bound, tol):
        raise ThresholdError(gamma, bound)
    plan = realize_tree(tree, c, target=target, tol=tol)
    plan.pinned['gamma'] = gamma
    return plan


def dissect_trapezoid_selfaffine(c, n):
    """
    Cut a trapezoid or parallelogram into ``n`` copies by ``n - 1`` cuts
    between the parallel sides at equal fractions of both.
    """
    if c.kind == Q_KIND:
        raise ClassError("The fan needs a trapezoid or parallelogram, got %s" % (c,))
    if n < 1:
        raise ValueError("n must be positive, got %r" % (n,))
    root = standard_placement(c)
    A, B, C, D = root.points
    along_ad = [lerp(A, D, Fraction(j, n)) for j in range(n + 1)]
    along_bc = [lerp(B, C, Fraction(j, n)) for j in range(n + 1)]
    tiles, cuts = [], []
    for j in range(n):
        tiles.append(LabeledQuad((along_ad[j], along_bc[j], along_bc[j + 1],
                                  along_ad[j + 1]), c))
        if j:
            rest = (along_ad[j - 1], along_bc[j - 1], C, D)
            cuts.append(Cut(rest, along_ad[j], along_bc[j]))
    pinned = OrderedDict([('n', n)])
    return DissectionPlan(root, tiles, Construction('trapezoid_fan', pinned), pinned,
                          True, cuts, 0)


# General (not glass-cut) dissections

def _split_trapezoid(quad, leaf, k, tol):
    plan = dissect_trapezoid(quad.cls.gamma, k, leaf, root=quad, tol=tol)
    return plan.tiles


def dissect_por5(c, tol=0):
    """
    Dissect a non-trapezoid into five copies: a copy contracted towards ``a``
    by ``alpha beta`` and two trapezoids ``T(alpha beta)`` of two copies each.
    """
    _require_q(c)
    root = standard_placement(c)
    a, b, cc, d = root.points
    rho = c.alpha * c.beta
    rb, rc, rd = [scale(p, rho, a) for p in (b, cc, d)]
    small = LabeledQuad((a, rb, rc, rd), c)
    tiles = [small]
    for quad in ((b, rb, rc, cc), (cc, rc, rd, d)):
        tiles.extend(_split_trapezoid(LabeledQuad(quad, T(rho)), c, 2, tol))
    pinned = OrderedDict([('rho', rho)])
    log.info("Five-piece dissection of %s with contraction %s", c, rho)
    return DissectionPlan(root, tiles, Construction('por5', pinned), pinned,
                          False, [], tol)


def _through(p, direction, q1, q2):
    meet = line_intersection(p, add(p, direction), q1, q2)
    if meet is None:
        raise BracketError("Parallel lines in the even construction", point=p)
    return meet[0]


def _even_trapezoid(points, k, nu):
    a, b, c, d = points
    scaled_b = scale(b, k * nu, a)
    x = _through(scaled_b, sub(c, b), scale(b, k, a), c)
    return (b, scaled_b, x, c)


def solve_nu(points, k, target):
    """
    Find ``nu`` in ``(1/k, 1)`` where the trapezoid cut from the triangle
    ``b, k b, c`` by the line through ``nu k b`` parallel to ``bc`` has
    parameter ``target``.

    The parameter decreases from 1 to 0 over the interval. Bisection narrows
    the bracket and a secant step through its ends finishes; the parameter is
    affine in ``nu``, so the secant lands on the root.

    :return: ``(nu, residual)``
    :raises BracketError: If the bracket is lost or the residual is too big.
    """
    def mu(nu):
        return classify_quadrangle(_even_trapezoid(points, k, nu)).cls.gamma

    lo, hi = 1 / k, to_ratio(1)
    mu_lo, mu_hi = to_ratio(1), to_ratio(0)
    for step in range(MAX_BISECTIONS):
        if hi - lo < NU_TOL:
            break
        mid = (lo + hi) / 2
        m = mu(mid)
        if m == target:
            return mid, 0
        if m > target:
            lo, mu_lo = mid, m
        else:
            hi, mu_hi = mid, m
    else:
        raise BracketError("Bisection did not converge", lo=lo, hi=hi)
    if not mu_lo > target > mu_hi:
        raise BracketError("Lost the bracket", lo=lo, hi=hi, target=target)
    nu = lo + (mu_lo - target) * (hi - lo) / (mu_lo - mu_hi)
    residual = mu(nu) - target
    log.debug("nu=%s after %d bisections, residual %s", nu, step, residual)
    if abs(residual) >= NU_TOL:
        raise BracketError("Residual too large", nu=nu, residual=residual)
    return nu, residual


def dissect_even_general(c, n, tol=0):
    """
    Dissect a non-trapezoid into an even number ``n >= 6`` of copies, not by
    glass-cuts: the affine map fixing ``b`` and ``d`` and sending ``a`` to
    ``c``, a homothety and a contraction towards ``a`` yield two copies and
    two trapezoids ``T(alpha beta)`` of 2 and ``n - 4`` copies.
    """
    _require_q(c)
    if n < 6 or n % 2:
        raise RefusalError("The general even construction needs even n >= 6, got %d" % n)
    a, b, cc, d = points = standard_placement(c).points
    u = (1 - c.beta) / (1 - c.alpha)
    v = c.beta
    k = 1 / (2 - u - v)
    target = c.alpha * c.beta
    nu, residual = solve_nu(points, k, target)
    s = k * nu

    sb, sc, sd = [scale(p, s, a) for p in (b, cc, d)]
    x = _through(sb, sub(cc, b), scale(b, k, a), cc)
    y = _through(sd, sub(cc, d), scale(d, k, a), cc)
    pieces = [LabeledQuad(points, c), LabeledQuad((sc, x, cc, y), c)]
    pieces += _split_trapezoid(LabeledQuad((b, sb, x, cc), T(target)), c, 2, tol)
    pieces += _split_trapezoid(LabeledQuad((d, sd, y, cc), T(target)), c, n - 4, tol)

    pinned = OrderedDict([('k', k), ('nu0', nu), ('mu_residual', residual)])
    big = LabeledQuad((a, sb, sc, sd), c)
    plan = DissectionPlan(big, pieces, Construction('even_general', pinned), pinned,
                          False, [], tol)
    log.info("Even dissection of %s into %d copies, nu0=%s", c, n, nu)
    return plan.scaled(1 / s)


# Dispatch

def dissect(c, n, tree=None, tol=0):
    """
    A glass-cut dissection of class ``c`` into ``n`` copies of itself.

    Trapezoids and parallelograms get the fan; non-trapezoids the odd
    construction, or at ``n = 3`` a named three-tile tree when ``c`` lies on
    one of the curve families. With ``tree`` that tree is realized instead.

    :raises RefusalError: When no such dissection exists, or none is known
        to this function.
    """
    if tree is not None:
        if isinstance(tree, str):
            tree = parse_tree(tree)
        if n is not None and tree.size != n:
            raise RefusalError("Tree %s has %d tiles, not %d" % (tree, tree.size, n))
        return realize_tree(tree, c, tol=tol)
    if n < 1:
        raise ValueError("n must be positive, got %r" % (n,))
    if n == 1:
        return trivial_plan(c)
    if c.kind != Q_KIND:
        return dissect_trapezoid_selfaffine(c, n)
    if n % 2 == 0:
        raise ParityError("A non-trapezoid has no glass-cut dissection into an even "
                          "number (%d) of copies" % n)
    if n == 3:
        name = n3_witness(c.alpha, c.beta, tol)
        if name is None:
            raise UnrealizableTreeError("%s lies on none of the three-tile families" % (c,))
        return realize_tree(N3_TREES[name], c, tol=tol)
    return dissect_odd(c, n, tol)


def dissect_general(c, n, tol=0):
    """
    A dissection of class ``c`` into ``n`` copies of itself that need not be
    glass-cut: five pieces and every even number from six on by the two
    general constructions, the fan for trapezoids, and glass-cut plans where
    :func:`dissect` has one.
    """
    if n < 1:
        raise ValueError("n must be positive, got %r" % (n,))
    if n == 1:
        return trivial_plan(c)
    if c.kind != Q_KIND:
        return dissect_trapezoid_selfaffine(c, n)
    if n == 5:
        return dissect_por5(c, tol)
    if n % 2 == 0:
        if n < 6:
            raise RefusalError("No general dissection into %d copies is constructed" % n)
        return dissect_even_general(c, n, tol)
    return dissect(c, n, tol=tol)
