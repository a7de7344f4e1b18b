"""
Extended dissection trees and the search for glass-cut self-affinity.

A tree records the history of a glass-cut dissection: every internal node is
a quadrangle cut into two, annotated with the glueing operation that puts the
children back together, and every edge may carry a flip. Trees are values
(tuples) with a canonical child order, so equal dissections compare equal.

The text form used throughout is ``L`` for a leaf, ``.`` and ``:`` for the
operations and a ``^F`` suffix on a flipped child::

    >>> str(parse_tree('((L.L):L)^F:(L.L)^F'))
    '(L:(L.L))^F:(L.L)^F'
"""
from collections import namedtuple, OrderedDict
import itertools
import logging
import warnings

from .affine_types import (
    Q_KIND,
    flip,
    is_affine_kite,
)
from .composition import (
    COLON,
    DOT,
    OPERATIONS,
    SYMBOLS,
    ClassSet,
    compose_sets,
    configure_cache,
    member,
)
from .exceptions import InexactWarning, SearchCapExceeded, TreeFormatError
from .util.options import SearchOptions


log = logging.getLogger(__name__)

_OP_BY_SYMBOL = dict((v, k) for k, v in SYMBOLS.items())


class Leaf(namedtuple('Leaf', [])):
    "A tile. Sorts below every :class:`Node`."
    __slots__ = ()

    size = 1

    def __str__(self):
        return 'L'


LEAF = Leaf()


class Node(namedtuple('Node', ['op', 'left', 'left_flip', 'right', 'right_flip'])):
    """
    An internal node. The children are stored in canonical order: the
    smaller ``(subtree, flip)`` pair under tuple comparison goes left.
    """
    __slots__ = ()

    def __new__(cls, op, left, left_flip, right, right_flip):
        if op not in OPERATIONS:
            raise ValueError("Unknown operation %r" % (op,))
        left_flip, right_flip = bool(left_flip), bool(right_flip)
        if (right, right_flip) < (left, left_flip):
            left, left_flip, right, right_flip = right, right_flip, left, left_flip
        return super(Node, cls).__new__(cls, op, left, left_flip, right, right_flip)

    @property
    def size(self):
        return self.left.size + self.right.size

    def children(self):
        return ((self.left, self.left_flip), (self.right, self.right_flip))

    def __str__(self):
        return '%s%s%s' % (_child_text(self.left, self.left_flip), SYMBOLS[self.op],
                           _child_text(self.right, self.right_flip))


def _child_text(t, flipped):
    text = 'L' if isinstance(t, Leaf) else '(%s)' % (t,)
    return text + '^F' if flipped else text


def tree_size(t):
    return t.size


class _TreeParser(object):

    def __init__(self, text):
        self.text = text
        self.tokens = text.replace(' ', '')
        self.pos = 0

    def error(self, message):
        raise TreeFormatError(self.text, self.pos, message)

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else ''

    def parse(self):
        if not self.tokens:
            self.error("Empty tree")
        tree, flipped = self.expression()
        if flipped:
            self.error("The root edge cannot be flipped")
        if self.pos != len(self.tokens):
            self.error("Unexpected %r" % (self.peek(),))
        return tree

    def expression(self):
        left = self.term()
        symbol = self.peek()
        if symbol not in _OP_BY_SYMBOL:
            return left
        self.pos += 1
        right = self.term()
        if self.peek() in _OP_BY_SYMBOL:
            self.error("Ambiguous chain, add parentheses")
        return Node(_OP_BY_SYMBOL[symbol], left[0], left[1], right[0], right[1]), False

    def term(self):
        token = self.peek()
        if token == 'L':
            self.pos += 1
            tree = LEAF
        elif token == '(':
            self.pos += 1
            tree, flipped = self.expression()
            if flipped:
                self.error("A flip belongs outside the parentheses")
            if self.peek() != ')':
                self.error("Expected ')'")
            self.pos += 1
        else:
            self.error("Expected 'L' or '('")
        if self.tokens.startswith('^F', self.pos):
            self.pos += 2
            return tree, True
        return tree, False


def parse_tree(text):
    """
    Parse the text form of a tree.

    :raises TreeFormatError: On malformed text.
    """
    return _TreeParser(text).parse()


def toggle_leaf_flips(t):
    "Toggle the flip flag on every edge that ends in a leaf."
    if isinstance(t, Leaf):
        return t
    (l, lf), (r, rf) = t.children()
    return Node(t.op,
                toggle_leaf_flips(l), not lf if isinstance(l, Leaf) else lf,
                toggle_leaf_flips(r), not rf if isinstance(r, Leaf) else rf)


# Counting and enumeration

_COUNTS = {1: 1}


def count_trees(n):
    """
    The number of canonical extended trees with ``n`` leaves.

    >>> [count_trees(n) for n in range(1, 6)]
    [1, 6, 48, 540, 6624]
    """
    if n < 1:
        raise ValueError("A tree has at least one leaf, got n=%r" % (n,))
    if n in _COUNTS:
        return _COUNTS[n]
    total = 0
    for m1 in range(1, (n - 1) // 2 + 1):
        total += 2 * (2 * count_trees(m1)) * (2 * count_trees(n - m1))
    if n % 2 == 0:
        k = 2 * count_trees(n // 2)
        total += 2 * k * (k + 1) // 2
    _COUNTS[n] = total
    return total


def _check_cap(n, options):
    if n > options.cap:
        raise SearchCapExceeded(n, options.cap, count_trees(n))


def _flagged(trees):
    for t in trees:
        yield t, False
        yield t, True


def _trees(n, small):
    if n == 1:
        yield LEAF
        return
    for m1 in range(1, n // 2 + 1):
        m2 = n - m1
        firsts = list(_flagged(small(m1)))
        if m1 == m2:
            pairs = itertools.combinations_with_replacement(firsts, 2)
        else:
            pairs = _stream_pairs(firsts, _flagged(_trees(m2, small)))
        for (a, fa), (b, fb) in pairs:
            for op in OPERATIONS:
                yield Node(op, a, fa, b, fb)


def _stream_pairs(firsts, seconds):
    # Unlike itertools.product, the second iterable is consumed lazily.
    for second in seconds:
        for first in firsts:
            yield first, second


def enumerate_trees(n, options=None):
    """
    Yield every canonical extended tree with ``n`` leaves exactly once, in a
    deterministic order.

    Subtrees of at most ``n // 2`` leaves are materialized; the larger side
    of each split is streamed.

    :raises SearchCapExceeded: If ``n`` exceeds the configured cap.
    """
    options = SearchOptions.resolve(options)
    if n < 1:
        raise ValueError("A tree has at least one leaf, got n=%r" % (n,))
    _check_cap(n, options)
    cache = {}

    def small(m):
        if m not in cache:
            cache[m] = list(_trees(m, small))
        return cache[m]

    return _trees(n, small)


def evaluate(t, leaf_class, tol=0):
    """
    The set of root classes a tree can produce from tiles of ``leaf_class``.

    An empty set means the tree has no realization with these tiles.

    :rtype: :class:`~gcdissect.composition.ClassSet`
    """
    memo = {}
    leaf_set = ClassSet.single(leaf_class)

    def walk(node):
        if isinstance(node, Leaf):
            return leaf_set
        if node not in memo:
            memo[node] = compose_sets(walk(node.left), walk(node.right), node.op,
                                      node.left_flip, node.right_flip, tol)
        return memo[node]

    result = walk(t)
    log.debug("Evaluated %s on %s: %s", t, leaf_class, result)
    return result


def quotient_exponents(t):
    """
    The exponents ``k`` such that the tree can produce a non-trapezoid with
    affine quotient ``(alpha/beta)**k`` from generic non-trapezoid tiles.
    ``0`` stands for trapezoids and parallelograms.

    >>> sorted(quotient_exponents(parse_tree('L.(L:L)')))
    [1]
    """
    if isinstance(t, Leaf):
        return frozenset([1])
    left, right = quotient_exponents(t.left), quotient_exponents(t.right)
    if t.op == DOT:
        return frozenset(a + b for a in left for b in right)
    return frozenset(abs(a - b) for a in left for b in right if a and b)


# Target-aware reductions. Each predicate is stated for one parametrization of
# the tile; the search accepts a tree when the predicate holds for the tree or
# for the tree with every leaf-edge flip toggled.

def n3_reduction(t):
    """
    Reductions for three non-trapezoid tiles: no flip between the root and
    its leaf child, no flip above an inner colon, and a dot at the root
    exactly when the inner node is a colon.
    """
    if isinstance(t, Leaf) or t.size != 3:
        return False
    inner, inner_flip = t.right, t.right_flip
    if t.left_flip:
        return False
    if inner.op == COLON and inner_flip:
        return False
    return (t.op == DOT) == (inner.op == COLON)


def _has_leaf_flip(t):
    if isinstance(t, Leaf):
        return False
    for child, flipped in t.children():
        if isinstance(child, Leaf) and flipped:
            return True
        if _has_leaf_flip(child):
            return True
    return False


def kite5_reduction(t):
    """
    Reductions for five affine-kite tiles: a colon root with both edges
    flipped over subtrees of two and three leaves, no leaf-edge flips, a dot
    in the two-leaf subtree, and an inner colon in the three-leaf subtree
    only below a dot with no flip in between.
    """
    if isinstance(t, Leaf) or t.size != 5 or _has_leaf_flip(t):
        return False
    if t.op != COLON or not (t.left_flip and t.right_flip):
        return False
    pair, triple = sorted((t.left, t.right), key=tree_size)
    if pair.size != 2 or pair.op != DOT:
        return False
    inner, inner_flip = triple.right, triple.right_flip
    if not isinstance(triple.left, Leaf) or triple.left_flip:
        return False
    if inner.op == COLON:
        return triple.op == DOT and not inner_flip
    return True


def _closed_under_toggle(predicate):
    def accept(t):
        return predicate(t) or predicate(toggle_leaf_flips(t))
    return accept


def _accept_all(t):
    return True


def pruner_for(leaf_class, n):
    """
    The tree filter for a search of ``n`` copies of ``leaf_class``: the
    three-tile reductions for non-trapezoids, the five-tile reductions for
    affine kites, the identity everywhere else.
    """
    if leaf_class.kind == Q_KIND:
        if n == 3:
            return _closed_under_toggle(n3_reduction)
        if n == 5 and is_affine_kite(leaf_class):
            return _closed_under_toggle(kite5_reduction)
    return _accept_all


def prune_trees(trees, leaf_class, n):
    accept = pruner_for(leaf_class, n)
    return [t for t in trees if accept(t)]


# Named trees of the three-tile and kite five-tile case analyses.

_N3_NOTATION = (
    '(L:L).L',
    '(L^F:L).L',
    '(L^F:L^F).L',
    '(L.L):L',
    '(L.L)^F:L',
    '(L^F.L):L',
    '(L^F.L)^F:L',
    '(L^F.L^F):L',
    '(L^F.L^F)^F:L',
)

_KITE5_NOTATION = (
    '((L.L).L)^F:(L.L)^F',
    '((L.L)^F.L)^F:(L.L)^F',
    '((L.L):L)^F:(L.L)^F',
    '((L.L)^F:L)^F:(L.L)^F',
    '((L:L).L)^F:(L.L)^F',
)


def _named(notations):
    out = OrderedDict()
    for text in notations:
        t = parse_tree(text)
        out[str(t)] = t
    return out


#: The nine trees left by the three-tile reductions, keyed by canonical text.
N3_TREES = _named(_N3_NOTATION)

#: The five trees left by the kite five-tile reductions.
KITE5_TREES = _named(_KITE5_NOTATION)


def canonical_name(text_or_tree):
    "Canonical text of a tree given as text or as a tree."
    if isinstance(text_or_tree, (Leaf, Node)):
        return str(text_or_tree)
    return str(parse_tree(text_or_tree))


# Search

SearchHit = namedtuple('SearchHit', ['tree', 'root_set', 'witness'])


def _targets(leaf_class):
    if leaf_class.kind == Q_KIND:
        return [leaf_class, flip(leaf_class)]
    return [leaf_class]


class _Levels(object):
    """
    Distinct class sets reachable with ``k`` tiles, for every ``k``, and for
    each set the glueings that produce it.
    """

    def __init__(self, leaf_class, tol):
        self.tol = tol
        self.sets = {1: [ClassSet.single(leaf_class)]}
        self.producers = {1: [None]}

    def build(self, n):
        for k in range(2, n + 1):
            index = OrderedDict()
            producers = []
            for m1 in range(1, k // 2 + 1):
                m2 = k - m1
                for i1, s1 in enumerate(self.sets[m1]):
                    for i2, s2 in enumerate(self.sets[m2]):
                        for f1, f2 in itertools.product((False, True), repeat=2):
                            if m1 == m2 and (i2, f2) < (i1, f1):
                                continue
                            for op in OPERATIONS:
                                result = compose_sets(s1, s2, op, f1, f2, self.tol)
                                if result.is_empty:
                                    continue
                                if result not in index:
                                    index[result] = len(index)
                                    producers.append([])
                                producers[index[result]].append(
                                    (op, m1, i1, f1, m2, i2, f2))
            self.sets[k] = list(index)
            self.producers[k] = producers
            log.debug("%d distinct class sets with %d tiles", len(index), k)
        return self

    def trees(self, k, i):
        if k == 1:
            yield LEAF
            return
        for op, m1, i1, f1, m2, i2, f2 in self.producers[k][i]:
            for t1 in self.trees(m1, i1):
                for t2 in self.trees(m2, i2):
                    yield Node(op, t1, f1, t2, f2)


def search_self_affine(leaf, n, tol=None, prune=None, options=None):
    """
    Find every canonical tree with ``n`` tiles of class ``leaf`` whose root
    can again be of class ``leaf`` (in either parametrization).

    Class sets are built bottom-up once per distinct set rather than once per
    tree; hit trees are then expanded from the recorded glueings.

    An empty result certifies that ``leaf`` is not ``n``-gc-self-affine.

    :param tol: Tolerance for class membership; overrides ``options.tol``.
    :param prune: Apply the sound target-aware reductions; overrides
        ``options.prune``.
    :param options: A :class:`~gcdissect.util.options.SearchOptions`.
    :rtype: list of :class:`SearchHit`, sorted by tree
    :raises SearchCapExceeded: If ``n`` exceeds the configured cap.
    """
    options = SearchOptions.resolve(options, tol=tol, prune=prune)
    if n < 1:
        raise ValueError("A dissection has at least one tile, got n=%r" % (n,))
    _check_cap(n, options)
    configure_cache(options.cache_size)
    if not options.tol and not leaf.exact:
        warnings.warn("Searching with float parameters %s and no tolerance" % (leaf,),
                      InexactWarning)

    levels = _Levels(leaf, options.tol).build(n)
    accept = pruner_for(leaf, n) if options.prune else _accept_all
    targets = _targets(leaf)

    hits = {}
    for i, root_set in enumerate(levels.sets[n]):
        witness = next((c for c in targets if member(root_set, c, options.tol)), None)
        if witness is None:
            continue
        for t in levels.trees(n, i):
            if t in hits or not accept(t):
                continue
            hits[t] = SearchHit(t, root_set, witness)
            if options.max_hits is not None and len(hits) >= options.max_hits:
                break
        if options.max_hits is not None and len(hits) >= options.max_hits:
            break

    result = [hits[t] for t in sorted(hits)]
    log.info("Search for %s with %d tiles: %d hits", leaf, n, len(result))
    return result


def is_gc_self_affine(leaf, n, tol=None, options=None):
    "Whether any tree with ``n`` tiles reproduces ``leaf``."
    options = SearchOptions.resolve(options, tol=tol, max_hits=1)
    return bool(search_self_affine(leaf, n, options=options))
