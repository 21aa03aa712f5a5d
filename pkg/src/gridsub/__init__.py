"""Exact counts of bimonotone and unrestricted subdivisions of lattice grids."""

__version__ = "0.1.0"

from .geometry import Configuration, Edge, Point  # noqa: E402
from .enumeration import BudgetExceeded, Options, count_subdivisions, list_subdivisions  # noqa: E402
from .tworow import count_two_row_all, count_two_row_bimonotone  # noqa: E402

__all__ = [
    "BudgetExceeded",
    "Configuration",
    "Edge",
    "Options",
    "Point",
    "count_subdivisions",
    "count_two_row_all",
    "count_two_row_bimonotone",
    "list_subdivisions",
]
