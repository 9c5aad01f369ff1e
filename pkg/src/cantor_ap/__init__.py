"""Certified points in intersections of translates of middle-1/N Cantor sets."""

from .ap_finder import (
    Certificate,
    empirical_max_length,
    find_ap,
    find_common_point,
    initial_good,
    refine,
    verify_certificate,
)
from .cantor import (
    CantorParams,
    approximant_in_window,
    components_in_window,
    distance_to_X,
    gap_size,
    global_approximant,
    stage_for_delta,
)
from .errors import (
    BaseCaseFailed,
    BudgetExceeded,
    CantorAPError,
    InvalidInput,
    NoSuchGapLength,
    RefinementFailed,
)
from .exact_core import (
    Interval,
    IntervalSet,
    Rational,
    canonicalize,
    intersect,
    measure,
    pack_count,
    pack_intervals,
    translate_mod1,
)
from .goodness import GoodnessResult, TranslateFamily, intersection_in_window, is_k_good

__version__ = "0.1.0"
