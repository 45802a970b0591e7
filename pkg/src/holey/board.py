"""Occupancy grid with placement legality, apply/undo and fill counts.

Only visible cells occupy the board; transparent cells are free to sit on
anything, including outside the board, so legality is a pure bitmask test.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from functools import lru_cache

from .geometry import Cell, HoleyPolyomino, transform

EMPTY = -1
_LETTERS = string.ascii_lowercase + string.ascii_uppercase


class IllegalMove(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Placement:
    """Image ``transform`` of the piece with its normalized origin at (row, col)."""

    transform: int
    row: int
    col: int

    def footprint(self, piece: HoleyPolyomino) -> list[Cell]:
        return [(self.row + r, self.col + c) for r, c in transform(piece.visible, self.transform)]


@dataclass(frozen=True)
class Move:
    placement: Placement
    mask: int
    cells: tuple[int, ...]
    bottom: int  # one past the last covered row
    right: int  # one past the last covered column


@dataclass(frozen=True)
class MoveTable:
    """Every in-board placement of one piece, indexed by covered cell.

    ``covering[i]`` lists moves that put a visible cell on cell ``i``,
    ordered by transform id and then anchor (row-major).
    """

    height: int
    width: int
    moves: tuple[Move, ...]
    covering: tuple[tuple[Move, ...], ...]


@lru_cache(maxsize=64)
def move_table(piece: HoleyPolyomino, height: int, width: int) -> MoveTable:
    covering: list[list[Move]] = [[] for _ in range(height * width)]
    moves = []
    for img in sorted(piece.images, key=lambda im: im.transform_id):
        for r0 in range(height - img.bbox_height + 1):
            for c0 in range(width - img.bbox_width + 1):
                idx = tuple((r0 + r) * width + c0 + c for r, c in img.cells)
                mask = 0
                for i in idx:
                    mask |= 1 << i
                mv = Move(Placement(img.transform_id, r0, c0), mask, idx,
                          r0 + img.bbox_height, c0 + img.bbox_width)
                moves.append(mv)
                for i in idx:
                    covering[i].append(mv)
    return MoveTable(height, width, tuple(moves), tuple(tuple(c) for c in covering))


class Board:
    """Mutable grid of ``height`` x ``width`` cells for one piece.

    ``bound_rows``/``bound_cols`` track the extent of placed tiles; they are
    saved on the move stack so that :meth:`undo` is O(footprint).
    """

    def __init__(self, height: int, width: int, piece: HoleyPolyomino):
        if height < 1 or width < 1:
            raise ValueError(f"board must be at least 1x1, got {height}x{width}")
        self.height = height
        self.width = width
        self.piece = piece
        self.table = move_table(piece, height, width)
        self.cells = [EMPTY] * (height * width)
        self.occupied = 0
        self.bound_rows = 0
        self.bound_cols = 0
        self.move_stack: list[tuple[Move, int, int]] = []
        self._by_placement = {mv.placement: mv for mv in self.table.moves}

    # -- queries ---------------------------------------------------------

    def index(self, cell: Cell) -> int:
        r, c = cell
        if not (0 <= r < self.height and 0 <= c < self.width):
            raise IllegalMove(f"cell {cell} outside {self.height}x{self.width} board")
        return r * self.width + c

    def is_empty(self, cell: Cell) -> bool:
        return self.cells[self.index(cell)] == EMPTY

    def _target(self, cell: Cell) -> int:
        i = self.index(cell)
        if self.cells[i] != EMPTY:
            raise IllegalMove(f"target {cell} is occupied")
        return i

    def placements_covering(self, target: Cell) -> list[Placement]:
        occ = self.occupied
        return [mv.placement for mv in self.table.covering[self._target(target)]
                if not mv.mask & occ]

    def fill_count(self, target: Cell) -> int:
        occ = self.occupied
        n = 0
        for mv in self.table.covering[self._target(target)]:
            if not mv.mask & occ:
                n += 1
        return n

    def first_empty_in_bounds(self) -> Cell | None:
        for r in range(self.bound_rows):
            base = r * self.width
            for c in range(self.bound_cols):
                if self.cells[base + c] == EMPTY:
                    return (r, c)
        return None

    @property
    def depth(self) -> int:
        return len(self.move_stack)

    @property
    def placements(self) -> list[Placement]:
        return [mv.placement for mv, _, _ in self.move_stack]

    def lookup(self, placement: Placement) -> Move:
        try:
            return self._by_placement[placement]
        except KeyError:
            raise IllegalMove(f"{placement} does not fit the board") from None

    def is_legal(self, placement: Placement) -> bool:
        mv = self._by_placement.get(placement)
        return mv is not None and not mv.mask & self.occupied

    # -- mutation --------------------------------------------------------

    def apply(self, placement: Placement) -> None:
        mv = self.lookup(placement)
        if mv.mask & self.occupied:
            raise IllegalMove(f"{placement} overlaps a visible cell")
        self.push(mv)

    def push(self, mv: Move) -> None:
        """Apply a move known to be legal (no checks)."""
        k = len(self.move_stack)
        self.move_stack.append((mv, self.bound_rows, self.bound_cols))
        cells = self.cells
        for i in mv.cells:
            cells[i] = k
        self.occupied |= mv.mask
        if mv.bottom > self.bound_rows:
            self.bound_rows = mv.bottom
        if mv.right > self.bound_cols:
            self.bound_cols = mv.right

    def undo(self) -> Placement:
        if not self.move_stack:
            raise IllegalMove("undo on an empty move stack")
        mv, self.bound_rows, self.bound_cols = self.move_stack.pop()
        cells = self.cells
        for i in mv.cells:
            cells[i] = EMPTY
        self.occupied ^= mv.mask
        return mv.placement

    # -- debugging -------------------------------------------------------

    def snapshot(self) -> tuple:
        return (tuple(self.cells), self.occupied, self.bound_rows, self.bound_cols,
                tuple(self.placements))

    def dump(self) -> str:
        rows = []
        for r in range(self.height):
            line = []
            for v in self.cells[r * self.width:(r + 1) * self.width]:
                line.append("." if v == EMPTY else _LETTERS[v % len(_LETTERS)])
            rows.append("".join(line))
        return "\n".join(rows)

    def __repr__(self) -> str:
        return (f"Board({self.height}x{self.width}, moves={self.depth}, "
                f"bounds={self.bound_rows}x{self.bound_cols})")
