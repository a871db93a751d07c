"""Short k-radius sequences: constructions, verification and bounds."""

from .bounds import BoundSet, SearchResult, bounds, exact_search, gcd_sum
from .builder import BuildPlan, construct
from .core import (
    ConstructionError,
    CoverageReport,
    InvalidInput,
    Sequence,
    pair_gap,
    parse_sequence,
    verify,
)
from .optimal2p import construct_2p, erase_symbols

__version__ = "0.1.0"

__all__ = [
    "BoundSet",
    "BuildPlan",
    "ConstructionError",
    "CoverageReport",
    "InvalidInput",
    "SearchResult",
    "Sequence",
    "bounds",
    "construct",
    "construct_2p",
    "erase_symbols",
    "exact_search",
    "gcd_sum",
    "pair_gap",
    "parse_sequence",
    "verify",
]
