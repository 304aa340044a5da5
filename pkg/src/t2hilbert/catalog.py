"""Reference matrices and a closed-form series used by ``verify`` and the tests."""
from __future__ import annotations

from .series import HilbertSeries
from .weights import WeightMatrix, parse_matrix

FIVE_COLUMN = parse_matrix("1 2 3 4 5; 0 1 2 2 1")

FIVE_COLUMN_SERIES = HilbertSeries(
    (1, 0, 3, 3, 7, 11, 19, 31, 47, 68, 92, 121, 153, 188, 232, 273, 318, 359, 393, 426,
     454, 475, 491, 496, 491, 475, 454, 426, 393, 359, 318, 273, 232, 188, 153, 121, 92,
     68, 47, 31, 19, 11, 7, 3, 3, 0, 1),
    ((3, 1), (4, 1), (9, 1), (10, 1), (11, 1), (15, 1)),
)

POINT_QUOTIENT = parse_matrix("-1 0 -1; 0 -1 -1")
FULL_SHELL = parse_matrix("-1 0 1; 0 -1 1")
DEGENERATE_FIXABLE = parse_matrix("2 1 4; 1 -1 1")
GENERIC_PARTNER = parse_matrix("4 1 6; 1 1 1")
NEVER_GENERIC = parse_matrix("1 1 1; 0 1 1")
DEGENERATE_WIDE_SEARCH = parse_matrix("1 3 5; 0 1 3")
SMALL_GENERIC = parse_matrix("1 2 3; 0 1 1")
KAPPA_PROBE = parse_matrix("1 3 4; 0 1 2")

__all__ = [name for name, value in globals().items()
           if isinstance(value, (WeightMatrix, HilbertSeries))]
