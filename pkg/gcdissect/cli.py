"""
Command line interface, plan documents and SVG rendering.

Every subcommand prints one JSON document on stdout. Exit codes: ``0`` on
success, ``1`` when the request is refused or fails (a
:class:`~gcdissect.exceptions.DissectionError`, or a failed verification),
``2`` for usage errors. Errors are reported as ``{"error": ..., "type": ...}``.
"""
import argparse
import json
import logging
import sys

from .affine_types import P, P_KIND, Q, Q_KIND, T, classify_quadrangle, flip, parse_class
from .composition import COLON, DOT, ClassTerm, combine
from .exceptions import ClassError, DissectionError, PlanFormatError, TreeFormatError
from .families import CURVE_FAMILIES, describe_family, family_membership
from .realizer import (
    Construction,
    Cut,
    DissectionPlan,
    LabeledQuad,
    dissect,
    dissect_general,
)
from .treesearch import (
    LEAF,
    Leaf,
    Node,
    enumerate_trees,
    evaluate,
    parse_tree,
    quotient_exponents,
    search_self_affine,
)
from .util.geometry import bounding_box, to_point
from .util.options import SearchOptions
from .util.ratio import format_ratio, is_exact, to_ratio
from .verifier import verify_plan


log = logging.getLogger(__name__)

PLAN_VERSION = 1

#: Tolerance used for float classes when none is given.
FLOAT_TOL = 1e-9

EXIT_OK = 0
EXIT_REFUSED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


## Documents

def _value_doc(value):
    if isinstance(value, int) and not isinstance(value, bool):
        return value
    return format_ratio(value)


def _value_from(value):
    if isinstance(value, int) and not isinstance(value, bool):
        return value
    return to_ratio(value)


def class_to_document(c):
    if c.kind == P_KIND:
        return {'kind': P_KIND}
    if c.kind == Q_KIND:
        return {'kind': Q_KIND, 'alpha': format_ratio(c.alpha), 'beta': format_ratio(c.beta)}
    return {'kind': c.kind, 'gamma': format_ratio(c.gamma)}


def class_from_document(doc):
    try:
        kind = doc['kind']
        if kind == P_KIND:
            return P
        if kind == Q_KIND:
            return Q(to_ratio(doc['alpha']), to_ratio(doc['beta']))
        return T(to_ratio(doc['gamma']))
    except (KeyError, TypeError, ValueError) as e:
        raise PlanFormatError("Bad class %r: %s" % (doc, e))


def _points_doc(points):
    return [[format_ratio(x), format_ratio(y)] for x, y in points]


def _points_from(doc, count=None):
    try:
        points = [to_point(p) for p in doc]
    except (TypeError, ValueError) as e:
        raise PlanFormatError("Bad points %r: %s" % (doc, e))
    if count is not None and len(points) != count:
        raise PlanFormatError("Expected %d points, got %d" % (count, len(points)))
    return points


def tree_to_document(t):
    if isinstance(t, Leaf):
        return {'leaf': True}
    if isinstance(t, Construction):
        return {'construction': t.name,
                'params': dict((k, _value_doc(v)) for k, v in t.params.items())}
    return {'op': t.op, 'flipL': t.left_flip, 'flipR': t.right_flip,
            'left': tree_to_document(t.left), 'right': tree_to_document(t.right)}


def tree_from_document(doc):
    if not isinstance(doc, dict):
        raise PlanFormatError("Bad tree %r" % (doc,))
    if doc.get('leaf'):
        return LEAF
    if 'construction' in doc:
        params = dict((k, _value_from(v)) for k, v in doc.get('params', {}).items())
        return Construction(doc['construction'], params)
    if doc.get('op') not in (DOT, COLON):
        raise PlanFormatError("Bad tree node %r" % (doc,))
    return Node(doc['op'], tree_from_document(doc.get('left')), bool(doc.get('flipL')),
                tree_from_document(doc.get('right')), bool(doc.get('flipR')))


def plan_to_document(plan):
    """
    The JSON-ready form of a plan. Ratios are written as ``"p/q"`` strings,
    floats with ``repr``.
    """
    return {
        'version': PLAN_VERSION,
        'class': class_to_document(plan.root.cls),
        'gc': plan.gc,
        'tree': tree_to_document(plan.tree),
        'root': _points_doc(plan.root.points),
        'tiles': [{'points': _points_doc(q.points), 'class': class_to_document(q.cls)}
                  for q in plan.tiles],
        'cuts': [{'parent': _points_doc(c.parent), 'p': _points_doc([c.p])[0],
                  'q': _points_doc([c.q])[0]} for c in plan.cuts],
        'pinned': dict((k, _value_doc(v)) for k, v in plan.pinned.items()),
        'tol': _value_doc(plan.tol),
    }


def plan_from_document(doc):
    """
    Rebuild a :class:`~gcdissect.realizer.DissectionPlan` from its document.

    :raises PlanFormatError: If the document is malformed.
    """
    if not isinstance(doc, dict):
        raise PlanFormatError("A plan document is a JSON object")
    if doc.get('version') != PLAN_VERSION:
        raise PlanFormatError("Unsupported plan version %r" % (doc.get('version'),))
    for key in ('class', 'root', 'tiles'):
        if key not in doc:
            raise PlanFormatError("Plan document has no %r" % key)
    root = LabeledQuad(_points_from(doc['root'], 4), class_from_document(doc['class']))
    tiles = []
    for tile in doc['tiles']:
        try:
            points, cls = tile['points'], tile['class']
        except (KeyError, TypeError):
            raise PlanFormatError("Bad tile %r" % (tile,))
        tiles.append(LabeledQuad(_points_from(points, 4), class_from_document(cls)))
    cuts = []
    for cut in doc.get('cuts', []):
        try:
            parent, p, q = cut['parent'], cut['p'], cut['q']
        except (KeyError, TypeError):
            raise PlanFormatError("Bad cut %r" % (cut,))
        p, q = _points_from([p, q], 2)
        cuts.append(Cut(tuple(_points_from(parent, 4)), p, q))
    pinned = dict((k, _value_from(v)) for k, v in doc.get('pinned', {}).items())
    tree = tree_from_document(doc.get('tree', {'leaf': True}))
    return DissectionPlan(root, tiles, tree, pinned, bool(doc.get('gc')), cuts,
                          _value_from(doc.get('tol', 0)))


def _interval_doc(i):
    return {'lo': format_ratio(i.lo), 'hi': format_ratio(i.hi),
            'lo_closed': i.lo_closed, 'hi_closed': i.hi_closed}


def set_to_document(s):
    return {
        'text': str(s),
        'empty': s.is_empty,
        'classes': [class_to_document(c) for c in s.classes()],
        'trapezoid_intervals': [_interval_doc(i) for i in sorted(s.t_intervals)],
        'curves': [{'alpha0': format_ratio(c.alpha0), 'beta0': format_ratio(c.beta0),
                    'interval': _interval_doc(c.interval)} for c in sorted(s.q_curves)],
    }


def report_to_document(report):
    return {
        'ok': report.ok,
        'root_ok': report.root_ok,
        'tiles': [{'index': t.index, 'ok': t.ok, 'error': t.error,
                   'class': class_to_document(t.cls) if t.cls is not None else None}
                  for t in report.tiles],
        'area_ok': report.area_ok,
        'area_deficit': format_ratio(report.area_deficit),
        'max_overlap_area': format_ratio(report.max_overlap_area),
        'overlaps': [list(pair) for pair in report.overlaps],
        'gc_cut_violations': [{'index': v.index, 'reason': v.reason}
                              for v in report.gc_cut_violations],
        'failures': report.failures,
    }


## Rendering

_PALETTE = ('#fbe3b5', '#c9e4f6', '#d5efc9', '#f4cccc', '#e1d5f2', '#fff2a8')


#: Margin around the root bounding box, as a fraction of its width and height.
RENDER_MARGIN = 0.05


def render_svg(plan, path=None, size=400):
    """
    Draw the tiles of a plan with drawsvg, cuts in red.

    The viewBox is the root's bounding box grown by :data:`RENDER_MARGIN` on
    every side, in plan coordinates with the y axis pointing up; ``size`` is
    the rendered width in pixels.

    :param path: Where to save the SVG; it is only returned when omitted.
    :return: The SVG text.
    """
    import drawsvg as draw

    x0, y0, x1, y1 = [float(v) for v in bounding_box(plan.root.points)]
    mx, my = RENDER_MARGIN * (x1 - x0), RENDER_MARGIN * (y1 - y0)
    width, height = x1 - x0 + 2 * mx, y1 - y0 + 2 * my
    # One screen pixel in plan units.
    px = width / size

    def xy(p):
        return float(p[0]), -float(p[1])

    def flat(points):
        return [c for p in points for c in xy(p)]

    d = draw.Drawing(width, height, origin=(x0 - mx, -(y1 + my)))
    d.set_pixel_scale(1 / px)
    d.append(draw.Rectangle(x0 - mx, -(y1 + my), width, height, fill='white'))
    for i, tile in enumerate(plan.tiles):
        d.append(draw.Lines(*flat(tile.points), close=True,
                            fill=_PALETTE[i % len(_PALETTE)], stroke='#555555',
                            stroke_width=px))
    for cut in plan.cuts:
        d.append(draw.Line(*(xy(cut.p) + xy(cut.q)), stroke='#c0392b', stroke_width=1.5 * px))
    d.append(draw.Lines(*flat(plan.root.points), close=True,
                        fill='none', stroke='black', stroke_width=2 * px))
    if path:
        d.save_svg(path)
        log.info("Wrote %s", path)
    return d.as_svg()


## Commands

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _class_arg(text):
    try:
        return parse_class(text)
    except ClassError as e:
        raise argparse.ArgumentTypeError(str(e))


def _tol_arg(text):
    try:
        tol = to_ratio(text)
    except (TypeError, ValueError) as e:
        raise argparse.ArgumentTypeError(str(e))
    if tol < 0:
        raise argparse.ArgumentTypeError("tolerance must not be negative")
    return tol


def _points_arg(text):
    try:
        points = [to_point(p.split(',')) for p in text.split(';')]
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError("points look like 'x,y;x,y;x,y;x,y'")
    if len(points) != 4:
        raise argparse.ArgumentTypeError("expected four points, got %d" % len(points))
    return points


def _tol_for(args, *classes):
    if args.tol is not None:
        return args.tol
    return 0 if all(c.exact for c in classes) else FLOAT_TOL


def _load_plan(path):
    try:
        with open(path) as f:
            doc = json.load(f)
    except ValueError as e:
        raise PlanFormatError("%s is not JSON: %s" % (path, e))
    return plan_from_document(doc)


def _emit_plan(plan, args):
    doc = plan_to_document(plan)
    if args.out:
        with open(args.out, 'w') as f:
            json.dump(doc, f, sort_keys=True, indent=2)
        log.info("Wrote %s", args.out)
    return EXIT_OK, doc


def cmd_classify(args):
    result = classify_quadrangle(args.points)
    return EXIT_OK, {'class': class_to_document(result.cls),
                     'labeling': _points_doc(result.labeling)}


def cmd_flip(args):
    return EXIT_OK, {'class': class_to_document(flip(args.cls))}


def cmd_compose(args):
    tol = _tol_for(args, args.left, args.right)
    result = combine(ClassTerm(args.left, args.flip_left), ClassTerm(args.right, args.flip_right),
                     args.op, tol)
    return EXIT_OK, set_to_document(result)


def cmd_search(args):
    options = SearchOptions.from_env(tol=_tol_for(args, args.cls), prune=args.prune)
    if args.cap:
        options = options.new(cap=args.cap)
    if args.max_hits:
        options = options.new(max_hits=args.max_hits)
    hits = search_self_affine(args.cls, args.n, options=options)
    return EXIT_OK, {
        'class': class_to_document(args.cls),
        'n': args.n,
        'gc_self_affine': bool(hits),
        'hits': [{'tree': str(h.tree), 'root_set': str(h.root_set),
                  'witness': class_to_document(h.witness)} for h in hits],
    }


def cmd_parity(args):
    options = SearchOptions.from_env()
    if args.cap:
        options = options.new(cap=args.cap)
    counts, trees = {}, 0
    for t in enumerate_trees(args.n, options):
        trees += 1
        for k in quotient_exponents(t):
            counts[k] = counts.get(k, 0) + 1
    return EXIT_OK, {
        'n': args.n,
        'trees': trees,
        'exponents': dict((str(k), counts[k]) for k in sorted(counts)),
        'reaches_one': 1 in counts,
    }


def cmd_family(args):
    if args.cls is not None:
        tol = _tol_for(args, args.cls)
        return EXIT_OK, {'class': class_to_document(args.cls),
                         'families': sorted(family_membership(args.cls, tol=tol))}
    if args.id is None or args.alpha is None:
        raise UsageError("family needs --class, or --id and --alpha")
    doc = describe_family(args.id, args.alpha)
    doc['alpha'] = format_ratio(doc['alpha'])
    doc['beta'] = repr(doc['beta'])
    return EXIT_OK, doc


def cmd_dissect(args):
    plan = dissect(args.cls, args.n, tree=args.tree, tol=_tol_for(args, args.cls))
    return _emit_plan(plan, args)


def cmd_selfaffine(args):
    plan = dissect_general(args.cls, args.n, tol=_tol_for(args, args.cls))
    return _emit_plan(plan, args)


def cmd_verify(args):
    plan = _load_plan(args.plan)
    if args.tol is not None:
        tol = args.tol
    else:
        tol = plan.tol or (0 if all(is_exact(*p) for q in plan.tiles for p in q.points)
                           else FLOAT_TOL)
    report = verify_plan(plan, tol, leaf=args.leaf)
    return (EXIT_OK if report.ok else EXIT_REFUSED), report_to_document(report)


def cmd_render(args):
    plan = _load_plan(args.plan)
    render_svg(plan, args.svg, size=args.size)
    return EXIT_OK, {'svg': args.svg, 'tiles': len(plan.tiles)}


def cmd_evaluate(args):
    tree = parse_tree(args.tree)
    tol = _tol_for(args, args.cls)
    doc = set_to_document(evaluate(tree, args.cls, tol))
    doc['tree'] = str(tree)
    return EXIT_OK, doc


def build_parser():
    parser = _Parser(prog='gcdissect',
                     description="Glass-cut self-affine dissections of convex quadrangles.")
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help="log to stderr (-v info, -vv debug)")
    sub = parser.add_subparsers(dest='command', parser_class=_Parser)
    sub.required = True

    def command(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    def class_option(p, required=True):
        p.add_argument('--class', dest='cls', type=_class_arg, required=required,
                       help="Q:alpha,beta, T:gamma or P")

    def tol_option(p):
        p.add_argument('--tol', type=_tol_arg, default=None,
                       help="comparison tolerance (0 is exact; floats default to %g)" % FLOAT_TOL)

    p = command('classify', cmd_classify, "affine class of four points")
    p.add_argument('--points', type=_points_arg, required=True, help="x,y;x,y;x,y;x,y")

    class_option(command('flip', cmd_flip, "the other parametrization"))

    p = command('compose', cmd_compose, "glue two classes")
    p.add_argument('--left', type=_class_arg, required=True)
    p.add_argument('--right', type=_class_arg, required=True)
    p.add_argument('--op', choices=(DOT, COLON), required=True)
    p.add_argument('--flip-left', action='store_true')
    p.add_argument('--flip-right', action='store_true')
    tol_option(p)

    p = command('search', cmd_search, "search trees reproducing a class")
    class_option(p)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--no-prune', dest='prune', action='store_false')
    p.add_argument('--cap', type=int, default=None)
    p.add_argument('--max-hits', type=int, default=None)
    tol_option(p)

    p = command('parity', cmd_parity, "affine quotient exponents over all trees")
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--cap', type=int, default=None)

    p = command('family', cmd_family, "curve families of three-tile dissections")
    p.add_argument('--id', choices=CURVE_FAMILIES)
    p.add_argument('--alpha', type=_tol_arg)
    class_option(p, required=False)
    tol_option(p)

    for name, func, help_text in (('dissect', cmd_dissect, "glass-cut dissection plan"),
                             ('selfaffine', cmd_selfaffine, "general dissection plan")):
        p = command(name, func, help_text)
        class_option(p)
        p.add_argument('--n', type=int, required=name == 'selfaffine')
        p.add_argument('--out', help="also write the plan to this file")
        tol_option(p)
        if name == 'dissect':
            p.add_argument('--tree', help="realize this tree, e.g. '(L.L):L'")

    p = command('verify', cmd_verify, "verify a plan document")
    p.add_argument('--plan', required=True)
    p.add_argument('--leaf', type=_class_arg, default=None,
                   help="class of the tiles if not the root's")
    tol_option(p)

    p = command('render', cmd_render, "render a plan document as SVG")
    p.add_argument('--plan', required=True)
    p.add_argument('--svg', required=True)
    p.add_argument('--size', type=int, default=400)

    p = command('evaluate', cmd_evaluate, "root classes of a tree")
    class_option(p)
    p.add_argument('--tree', required=True)
    tol_option(p)
    return parser


def _error(e):
    return {'error': str(e), 'type': type(e).__name__}


def run(argv=None, stdout=None):
    """
    Run the command line and return the exit code.
    """
    stdout = sys.stdout if stdout is None else stdout
    try:
        args = build_parser().parse_args(argv)
        if args.command == 'dissect' and args.n is None and args.tree is None:
            raise UsageError("dissect needs --n or --tree")
    except UsageError as e:
        code, doc = EXIT_USAGE, _error(e)
    else:
        if args.verbose:
            from . import add_stderr_logger
            add_stderr_logger(logging.DEBUG if args.verbose > 1 else logging.INFO)
        try:
            code, doc = args.func(args)
        except DissectionError as e:
            code = EXIT_USAGE if isinstance(e, TreeFormatError) else EXIT_REFUSED
            doc = _error(e)
        except (UsageError, EnvironmentError, ValueError) as e:
            code, doc = EXIT_USAGE, _error(e)
    if code and 'error' in doc:
        log.info("%s: %s", doc['type'], doc['error'])
    stdout.write(json.dumps(doc, sort_keys=True, indent=2))
    stdout.write('\n')
    return code


def main():
    sys.exit(run())
