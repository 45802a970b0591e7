"""Rectangle tilings by holey polyominoes: enumeration, search, proofs, catalogs."""

__version__ = "0.1.0"

from .geometry import HoleyPolyomino, ShapeError, canonical_form, enumerate_holey, steiner_k
from .board import Board, IllegalMove, Placement
from .solver import (SearchBudget, SearchResult, Status, Tiling, construct_2k_tiling,
                     inverse_completion, smallest_tiling, solve_bounded, solve_exact,
                     verify_tiling)
from .prover import (ProofOutcome, band_status, max_side_floor, min_side_bound,
                     prove_by_strips, prove_unrectifiable, strip_status)
from .catalog import (PROFILES, Catalog, Classification, classify, classify_class,
                      compare_to_expected, load_expected)

__all__ = [
    "HoleyPolyomino", "ShapeError", "canonical_form", "enumerate_holey", "steiner_k",
    "Board", "IllegalMove", "Placement",
    "SearchBudget", "SearchResult", "Status", "Tiling", "construct_2k_tiling",
    "inverse_completion", "smallest_tiling", "solve_bounded", "solve_exact", "verify_tiling",
    "ProofOutcome", "band_status", "max_side_floor", "min_side_bound", "prove_by_strips",
    "prove_unrectifiable", "strip_status",
    "PROFILES", "Catalog", "Classification", "classify", "classify_class",
    "compare_to_expected", "load_expected",
]
