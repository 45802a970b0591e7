"""Rectangle tiling search, verification and explicit constructions."""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field

from .board import Board, Move, Placement
from .geometry import (HoleyPolyomino, ShapeError, bounding_box, normalize,
                       transform)

DEFAULT_MAX_SIDE = 24


class Status(str, enum.Enum):
    TILING = "tiling"
    NONE = "none"  # exhaustive search found nothing
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SearchBudget:
    """Node and wall-clock limits; ``None`` means unlimited."""

    max_nodes: int | None = 10**7
    max_seconds: float | None = None

    def __post_init__(self):
        if self.max_nodes is not None and self.max_nodes <= 0:
            raise ValueError("max_nodes must be positive")
        if self.max_seconds is not None and self.max_seconds <= 0:
            raise ValueError("max_seconds must be positive")


UNLIMITED = SearchBudget(None, None)


class BudgetExceeded(Exception):
    pass


class _Meter:
    __slots__ = ("nodes", "max_nodes", "deadline", "states")

    def __init__(self, budget: SearchBudget):
        self.nodes = 0
        self.states = 0
        self.max_nodes = budget.max_nodes
        self.deadline = None if budget.max_seconds is None else time.monotonic() + budget.max_seconds

    def tick(self):
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise BudgetExceeded("node budget")
        if self.deadline is not None and not self.nodes & 0x3FF and time.monotonic() > self.deadline:
            raise BudgetExceeded("time budget")


@dataclass
class Tiling:
    piece: HoleyPolyomino
    rows: int
    cols: int
    placements: list[Placement]

    @property
    def size(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def footprints(self) -> list[list[tuple[int, int]]]:
        return [p.footprint(self.piece) for p in self.placements]

    def transposed(self) -> Tiling:
        out = []
        for p in self.placements:
            cells = [(c, r) for r, c in p.footprint(self.piece)]
            out.append(placement_from_cells(self.piece, cells))
        return Tiling(self.piece, self.cols, self.rows, out)

    def oriented(self) -> Tiling:
        """Same tiling with rows <= cols."""
        return self.transposed() if self.rows > self.cols else self

    def __str__(self) -> str:
        return f"{self.rows}x{self.cols}"


@dataclass
class SearchResult:
    status: Status
    tiling: Tiling | None = None
    nodes: int = 0
    reason: str = ""
    notes: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.tiling is not None


def placement_from_cells(piece: HoleyPolyomino, cells) -> Placement:
    """The placement whose visible footprint is exactly ``cells``."""
    cells = list(cells)
    img = normalize(cells)
    r0 = min(r for r, _ in cells)
    c0 = min(c for _, c in cells)
    for im in piece.images:
        if im.cells == img:
            return Placement(im.transform_id, r0, c0)
    raise ShapeError(f"cells {sorted(cells)} are not an image of {piece}")


def verify_tiling(piece: HoleyPolyomino, t: Tiling) -> bool:
    """Independent exact-cover check of ``t`` against ``piece``."""
    if t.rows < 1 or t.cols < 1 or not t.placements:
        return False
    seen = set()
    for p in t.placements:
        if not 0 <= p.transform < 8:
            return False
        for r, c in transform(piece.visible, p.transform):
            cell = (r + p.row, c + p.col)
            if not (0 <= cell[0] < t.rows and 0 <= cell[1] < t.cols) or cell in seen:
                return False
            seen.add(cell)
    return len(seen) == t.rows * t.cols


# -- depth-first engine ------------------------------------------------------

def _dfs(board: Board, expand, meter: _Meter):
    """Generic iterative backtracking over ``board``.

    ``expand(board)`` returns ``None`` when the board holds a solution,
    otherwise the list of moves to branch on (empty means dead end).
    Returns True when a solution is left on the board.
    """
    first = expand(board)
    if first is None:
        return True
    stack = [[first, 0]]
    while stack:
        frame = stack[-1]
        moves, i = frame
        if i:
            board.undo()
        if i == len(moves):
            stack.pop()
            continue
        frame[1] = i + 1
        meter.tick()
        board.push(moves[i])
        nxt = expand(board)
        if nxt is None:
            return True
        if nxt:
            stack.append([nxt, 0])
    return False


def _most_constrained(covering, occ: int, candidates: int):
    """Row-major first cell of minimum fill count among ``candidates`` bits."""
    best = -1
    best_n = 1 << 30
    x = candidates
    while x:
        low = x & -x
        x ^= low
        i = low.bit_length() - 1
        n = 0
        for mv in covering[i]:
            if not mv.mask & occ:
                n += 1
                if n >= best_n:
                    break
        if n < best_n:
            best_n = n
            best = i
            if n == 0:
                break
    return best, best_n


def _legal(covering, occ: int, i: int) -> list[Move]:
    return [mv for mv in covering[i] if not mv.mask & occ]


def _box_masks(width: int):
    cache = {}

    def box(r: int, c: int) -> int:
        key = (r, c)
        m = cache.get(key)
        if m is None:
            line = (1 << c) - 1
            m = 0
            for rr in range(r):
                m |= line << (rr * width)
            cache[key] = m
        return m

    return box


def _bounded_expander(board: Board):
    covering = board.table.covering
    box = _box_masks(board.width)

    def expand(b: Board):
        if not b.move_stack:
            return _legal(covering, b.occupied, 0)
        occ = b.occupied
        cand = box(b.bound_rows, b.bound_cols) & ~occ
        if not cand:
            return None
        i, n = _most_constrained(covering, occ, cand)
        return _legal(covering, occ, i) if n else []

    return expand


def _board_tiling(board: Board, rows: int, cols: int) -> Tiling:
    return Tiling(board.piece, rows, cols, board.placements)


def solve_bounded(piece: HoleyPolyomino, N: int, budget: SearchBudget = SearchBudget()) -> SearchResult:
    """Most-constrained-first search for any rectangle inside an N x N grid.

    Status NONE means no rectangle with both sides <= N can be tiled.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if min(max(im.bbox_height, im.bbox_width) for im in piece.images) > N:
        return SearchResult(Status.NONE, reason="piece larger than grid")
    board = Board(N, N, piece)
    meter = _Meter(budget)
    try:
        ok = _dfs(board, _bounded_expander(board), meter)
    except BudgetExceeded as exc:
        return SearchResult(Status.INCONCLUSIVE, nodes=meter.nodes, reason=str(exc))
    if ok:
        t = _board_tiling(board, board.bound_rows, board.bound_cols).oriented()
        return SearchResult(Status.TILING, t, meter.nodes)
    return SearchResult(Status.NONE, nodes=meter.nodes)


def _fits(piece: HoleyPolyomino, R: int, C: int) -> bool:
    return any(im.bbox_height <= R and im.bbox_width <= C for im in piece.images)


def solve_exact(piece: HoleyPolyomino, R: int, C: int, budget: SearchBudget = SearchBudget()) -> SearchResult:
    """Search for a tiling of exactly the R x C rectangle."""
    if R < 1 or C < 1:
        raise ValueError("rectangle sides must be >= 1")
    if (R * C) % piece.n or not _fits(piece, R, C):
        return SearchResult(Status.NONE, reason="pruned")
    board = Board(R, C, piece)
    covering = board.table.covering
    full = (1 << (R * C)) - 1

    def expand(b: Board):
        occ = b.occupied
        if occ == full:
            return None
        i, n = _most_constrained(covering, occ, full & ~occ)
        return _legal(covering, occ, i) if n else []

    meter = _Meter(budget)
    try:
        ok = _dfs(board, expand, meter)
    except BudgetExceeded as exc:
        return SearchResult(Status.INCONCLUSIVE, nodes=meter.nodes, reason=str(exc))
    if ok:
        return SearchResult(Status.TILING, _board_tiling(board, R, C).oriented(), meter.nodes)
    return SearchResult(Status.NONE, nodes=meter.nodes)


def candidate_rectangles(piece: HoleyPolyomino, area_limit: int, max_side: int | None = None):
    """Rectangles R <= C worth searching, in (area, R) order."""
    out = []
    n = piece.n
    for area in range(n, area_limit + 1, n):
        for R in range(1, int(area ** 0.5) + 1):
            if area % R:
                continue
            C = area // R
            if max_side is not None and C > max_side:
                continue
            if _fits(piece, R, C) or _fits(piece, C, R):
                out.append((R, C))
    return out


def smallest_tiling(piece: HoleyPolyomino, area_limit: int, budget: SearchBudget = SearchBudget(),
                    max_side: int | None = None, ties: bool = False) -> SearchResult:
    """First tileable rectangle in (area, shorter side) order.

    Every candidate gets its own ``budget``. If an earlier candidate ran
    out of budget, a later hit is returned as INCONCLUSIVE with the tiling
    attached: it is a valid tiling, just not proven smallest.

    With ``ties=True`` the remaining candidates of the winning area are
    searched too and every tileable one is listed in ``notes["ties"]``.
    """
    if area_limit < piece.n:
        raise ValueError("area_limit must be at least n")
    nodes = 0
    skipped = []
    found = None
    tied = []
    for R, C in candidate_rectangles(piece, area_limit, max_side):
        if found is not None and R * C > found.tiling.rows * found.tiling.cols:
            break
        res = solve_exact(piece, R, C, budget)
        nodes += res.nodes
        if res.status is Status.INCONCLUSIVE:
            skipped.append((R, C))
        elif res.status is Status.TILING:
            tied.append((R, C))
            if found is None:
                found = res
            if not ties:
                break
    if found is not None:
        status = Status.INCONCLUSIVE if skipped else Status.TILING
        return SearchResult(status, found.tiling, nodes, notes={"skipped": skipped, "ties": tied})
    if skipped:
        return SearchResult(Status.INCONCLUSIVE, nodes=nodes, reason="budget",
                            notes={"skipped": skipped})
    return SearchResult(Status.NONE, nodes=nodes)


# -- constructions -----------------------------------------------------------

def construct_2k_tiling(r: int, c: int) -> Tiling:
    """Explicit tiling for the two-cell piece with cells (0,0) and (r,c).

    For r, c >= 1 this fills 2r x 2c: row pairs (j, r + j) are each
    covered by 2c tiles, c of them leaning right and c leaning left.
    When one offset is zero the piece tiles a 1 x 2c strip.
    """
    if (r, c) == (0, 0):
        raise ShapeError("(0,0) does not describe a two-cell piece")
    r, c = abs(r), abs(c)
    if c == 0:
        r, c = 0, r
    piece = HoleyPolyomino.from_cells([(0, 0), (r, c)])
    pairs = []
    if r == 0:
        for i in range(c):
            pairs.append([(0, i), (0, c + i)])
        rows = 1
    else:
        for j in range(r):
            for i in range(c):
                pairs.append([(j, i), (r + j, c + i)])
            for i in range(c):
                pairs.append([(j, c + i), (r + j, i)])
        rows = 2 * r
    return Tiling(piece, rows, 2 * c, [placement_from_cells(piece, p) for p in pairs])


@dataclass
class Completion:
    piece: HoleyPolyomino
    witness: Tiling
    cells: tuple  # ``piece`` drawn with the original cells in their own position


def inverse_completion(piece: HoleyPolyomino, known_rectifiable: bool | None = None,
                       budget: SearchBudget = SearchBudget(10**5)) -> Completion:
    """A rectifiable piece containing ``piece``.

    A rectifiable piece is returned unchanged with its tiling. Otherwise
    the bounding-box complement is turned half a turn and set beside the
    piece; two copies of that union fill an h x 2w rectangle.
    """
    h, w = bounding_box(piece.visible)
    if known_rectifiable is not False:
        res = smallest_tiling(piece, max(4 * h * w, 4 * piece.n), budget)
        if res.tiling is not None:
            return Completion(piece, res.tiling, piece.visible)
        if known_rectifiable:
            raise ValueError(f"{piece} marked rectifiable but no tiling was found")
    vis = set(piece.visible)
    hole = [(r, c) for r in range(h) for c in range(w) if (r, c) not in vis]
    left = sorted(vis)
    right = [(h - 1 - r, 2 * w - 1 - c) for r, c in hole]
    cells = left + right
    big = HoleyPolyomino.from_cells(cells)
    twin = [(h - 1 - r, 2 * w - 1 - c) for r, c in cells]
    witness = Tiling(big, h, 2 * w, [placement_from_cells(big, cells),
                                     placement_from_cells(big, twin)])
    return Completion(big, witness, tuple(cells))


def contains(outer_cells, inner: HoleyPolyomino, offset=(0, 0)) -> bool:
    """Superposition test: inside the inner bounding box placed at
    ``offset``, visible cells coincide exactly."""
    h, w = bounding_box(inner.visible)
    dr, dc = offset
    outer = set(outer_cells)
    inner_vis = set(inner.visible)
    for r in range(h):
        for c in range(w):
            if ((r, c) in inner_vis) != ((r + dr, c + dc) in outer):
                return False
    return True
