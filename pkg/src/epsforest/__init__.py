"""Exact weighted infinitesimal bialgebras on decorated planar rooted forests."""
from .forest import Alphabet, Decoration, Forest, ONE, Tree
from .freemod import LinComb, LinOp, Rat, rat
from .epscore import EpsInstance, forest_coproduct, forest_coproduct_recursive, forest_instance
from .antipode import AntipodeUnavailable, antipode, antipode_inverse
from .prelie import bracket, prelie, prelie_forest
from .instances import (
    divided_diff_instance,
    foissy_instance,
    poly_instance,
    quiver_instance,
    trivial_instance,
)
from .textio import ParseError, format_lincomb, parse_forest, parse_lincomb, parse_tensor

__version__ = "0.1.0"
