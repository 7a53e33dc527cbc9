"""Exact tools for sums of triangular numbers, with and without cross terms."""

from .forms import (
    CrossConfig,
    CrossSum,
    DiagonalSum,
    OddFormCorrespondence,
    direct_sum,
    eval_cross_tilde,
    eval_diagonal,
    flip_variable,
    to_odd_form,
    tri,
)
from .lattice import (
    CountConvention,
    MinimizationResult,
    count_cross,
    count_diagonal,
    count_odd,
    minimize,
    norm_estimate,
    normalize,
)
from .qseries import TruncatedSeries, eta_product, op_U, op_V, theta
from .escalate import escalator_tree, is_universal_diagonal, represents, truant
from .classnum import hurwitz, hurwitz6, identity_check

__version__ = "0.1.0"
