"""
gcdissect - Glass-cut self-affine dissections of convex quadrangles.
"""

__license__ = 'MIT'
__version__ = '0.1.0'


from .affine_types import (
    AffineClass,
    P,
    Q,
    T,
    affine_quotient,
    canonicalize,
    classify_quadrangle,
    flip,
    flip_factor,
    is_affine_kite,
    parse_class,
    same_class,
)
from .composition import (
    COLON,
    DOT,
    ClassSet,
    ClassTerm,
    combine,
    compose_sets,
    member,
    pin_glue,
)

from . import exceptions
from .families import (
    describe_family,
    expected_gc_self_affine,
    family_beta,
    family_intersections,
    family_membership,
    family_residual,
    n3_witness,
)
from .realizer import (
    DissectionPlan,
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
    standard_placement,
)
from .treesearch import (
    KITE5_TREES,
    N3_TREES,
    Leaf,
    Node,
    count_trees,
    enumerate_trees,
    evaluate,
    is_gc_self_affine,
    parse_tree,
    quotient_exponents,
    search_self_affine,
)
from .util.options import SearchOptions
from .verifier import VerificationReport, convex_intersection_area, verify_plan
from .cli import plan_from_document, plan_to_document, render_svg


# Set default logging handler to avoid "No handler found" warnings.
import logging
from logging import NullHandler

logging.getLogger(__name__).addHandler(NullHandler())

def add_stderr_logger(level=logging.DEBUG):
    """
    Helper for quickly adding a StreamHandler to the logger. Useful for
    debugging.

    Returns the handler after adding it.
    """
    # This method needs to be in this __init__.py to get the __name__ correct.
    logger = logging.getLogger(__name__)
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter('%(asctime)s %(levelname)s %(message)s'))
    logger.addHandler(handler)
    logger.setLevel(level)
    logger.debug('Added a stderr logging handler to logger: %s', __name__)
    return handler

# ... Clean up.
del NullHandler


# Float comparisons without a tolerance only warn once per module.
import warnings
warnings.simplefilter('module', exceptions.InexactWarning)

def disable_warnings(category=exceptions.DissectionWarning):
    """
    Helper for quickly disabling all gcdissect warnings.
    """
    warnings.simplefilter('ignore', category)
