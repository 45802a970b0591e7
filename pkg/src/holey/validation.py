"""Input coercion shared by the estimator facade and the CLI."""

from __future__ import annotations

from collections.abc import Iterable

from .geometry import HoleyPolyomino, ShapeError
from .solver import SearchBudget


def check_piece(x) -> HoleyPolyomino:
    """Accept a HoleyPolyomino, an "r,c;r,c" string or an iterable of (r, c) pairs."""
    if isinstance(x, HoleyPolyomino):
        return x
    if isinstance(x, str):
        return HoleyPolyomino.parse(x)
    try:
        cells = [(int(r), int(c)) for r, c in x]
    except (TypeError, ValueError):
        raise ShapeError(f"cannot read a piece from {x!r}") from None
    return HoleyPolyomino.from_cells(cells)


def check_pieces(X) -> list[HoleyPolyomino]:
    if isinstance(X, (str, HoleyPolyomino)) or not isinstance(X, Iterable):
        raise ShapeError("expected a sequence of pieces")
    pieces = [check_piece(x) for x in X]
    if not pieces:
        raise ShapeError("no pieces given")
    return pieces


def check_budget(max_nodes=None, max_seconds=None) -> SearchBudget:
    if max_nodes is None:
        return SearchBudget(max_seconds=max_seconds)
    if isinstance(max_nodes, bool) or int(max_nodes) != max_nodes:
        raise ValueError(f"max_nodes must be an integer, got {max_nodes!r}")
    return SearchBudget(int(max_nodes), max_seconds)
