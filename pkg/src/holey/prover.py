"""Unrectifiability proofs and side bounds.

Tools, cheapest first:

* two local filters (all bounding-box corners transparent; a transparent
  cell no second copy can cover),
* corner exhaustion on a large grid, filling cells in a fixed order so
  that each tile is placed by its least visible cell,
* a column-sweep over h-row strips whose frontier states are finite, which
  decides whether any h x n rectangle can be tiled,
* the same sweep over the top band of an arbitrarily tall rectangle; when
  no band of depth d can be filled and no strip lower than d tiles, the
  piece tiles no rectangle at all.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .geometry import Cell, HoleyPolyomino
from .solver import (BudgetExceeded, SearchBudget, Status, Tiling, _Meter,
                     solve_bounded)
from .board import Placement

DEFAULT_GRID_SIDE = 100


@dataclass
class ProofOutcome:
    verdict: str  # "unrectifiable" | "tiling" | "inconclusive"
    method: str  # "corner" | "hole" | "exhaustion" | "strip"
    grid_side: int = 0
    nodes: int = 0
    witness_cell: Cell | None = None
    tiling: Tiling | None = None
    reason: str = ""

    @property
    def unrectifiable(self) -> bool:
        return self.verdict == "unrectifiable"

    def certificate(self, piece: HoleyPolyomino) -> dict:
        out = {"piece": piece.encode(), "verdict": self.verdict, "method": self.method,
               "grid_side": self.grid_side, "nodes": self.nodes}
        if self.witness_cell is not None:
            out["witness_cell"] = list(self.witness_cell)
        if self.reason:
            out["reason"] = self.reason
        return out


# -- filters -----------------------------------------------------------------

def corner_transparent_check(piece: HoleyPolyomino) -> bool:
    """True when no corner of the bounding box is visible (cannot fill a corner)."""
    h, w = piece.bbox
    vis = set(piece.visible)
    return not any(c in vis for c in ((0, 0), (0, w - 1), (h - 1, 0), (h - 1, w - 1)))


def unfillable_hole_check(piece: HoleyPolyomino) -> Cell | None:
    """First bounding-box hole that no second copy can cover, if any."""
    h, w = piece.bbox
    base = set(piece.visible)
    images = piece.images
    for r in range(h):
        for c in range(w):
            if (r, c) in base:
                continue
            if not _coverable((r, c), base, images):
                return (r, c)
    return None


def _coverable(target: Cell, base: set, images) -> bool:
    tr, tc = target
    for im in images:
        for ar, ac in im.cells:
            dr, dc = tr - ar, tc - ac
            if all((r + dr, c + dc) not in base for r, c in im.cells):
                return True
    return False


# -- corner exhaustion -------------------------------------------------------

def corner_order_key(cell: Cell) -> tuple[int, int]:
    """Anti-diagonal sweep from the top-left corner."""
    r, c = cell
    return (r + c, r)


class _CornerGrid:
    """Square grid filled in corner order, one move per image per target."""

    def __init__(self, piece: HoleyPolyomino, side: int):
        self.side = side
        self.order = sorted(((r, c) for r in range(side) for c in range(side)), key=corner_order_key)
        self.images = []
        for im in sorted(piece.images, key=lambda im: im.transform_id):
            lead = min(im.cells, key=corner_order_key)
            rel = tuple((r - lead[0], c - lead[1]) for r, c in im.cells)
            self.images.append((im.transform_id, lead, rel))
        self.reach = max(max(im.bbox_height, im.bbox_width) for im in piece.images)
        self.n = piece.n
        self._moves: dict[int, list] = {}

    def moves_at(self, pos: int):
        """Moves putting each image's least cell on ``order[pos]``."""
        got = self._moves.get(pos)
        if got is None:
            tr, tc = self.order[pos]
            side = self.side
            got = []
            for tid, lead, rel in self.images:
                cells = [(tr + dr, tc + dc) for dr, dc in rel]
                if any(r < 0 or c < 0 or r >= side or c >= side for r, c in cells):
                    continue
                mask = 0
                for r, c in cells:
                    mask |= 1 << (r * side + c)
                bottom = max(r for r, _ in cells) + 1
                right = max(c for _, c in cells) + 1
                got.append((mask, bottom, right, Placement(tid, tr - lead[0], tc - lead[1]),
                            tuple(cells)))
            self._moves[pos] = got
        return got

    def too_small(self, pos: int) -> bool:
        r, c = self.order[pos]
        return r + self.reach > self.side or c + self.reach > self.side


def _closed_rectangle(occ: int, side: int, n: int, bottom: int, right: int, extents):
    """A corner rectangle containing the newest tile (whose far corner is
    ``bottom``, ``right``) that the tiles lying wholly inside it cover."""
    full = (1 << side) - 1
    widest = side
    for R in range(1, side + 1):
        row = (occ >> ((R - 1) * side)) & full
        widest = min(widest, ((~row & (row + 1)).bit_length() - 1))
        if widest < right:
            return None
        if R < bottom:
            continue
        for C in range(right, widest + 1):
            if R * C % n:
                continue
            if sum(1 for b, r in extents if b <= R and r <= C) * n == R * C:
                return R, C
    return None


def _corner_search(piece: HoleyPolyomino, grid: _CornerGrid, meter: _Meter):
    """Exhaust corner fills of one grid.

    Returns ("tiling", Tiling), ("exhausted", None) or ("cut", None) when
    some branch reached the far edge and was abandoned there.
    """
    side = grid.side
    n = piece.n
    bit = [1 << (r * side + c) for r, c in grid.order]
    last = len(bit)
    occ = 0
    cut = False
    placed: list[Placement] = []
    extents: list[tuple[int, int]] = []

    def open_frame(pos: int):
        nonlocal cut
        while pos < last and occ & bit[pos]:
            pos += 1
        if pos == last or grid.too_small(pos):
            cut = True
            return None
        return [pos, [m for m in grid.moves_at(pos) if not m[0] & occ], 0]

    root = open_frame(0)
    stack = [(root, (0, 0))] if root else []
    while stack:
        frame, saved = stack[-1]
        pos, moves, i = frame
        if i:
            occ ^= moves[i - 1][0]
            placed.pop()
            extents.pop()
        if i == len(moves):
            stack.pop()
            continue
        frame[2] = i + 1
        meter.tick()
        mask, bottom, right, placement, _ = moves[i]
        occ |= mask
        placed.append(placement)
        extents.append((bottom, right))
        bounds = (max(saved[0], bottom), max(saved[1], right))
        if len(placed) * n == bounds[0] * bounds[1]:
            return "tiling", Tiling(piece, bounds[0], bounds[1], list(placed)).oriented()
        rect = _closed_rectangle(occ, side, n, bottom, right, extents)
        if rect is not None:
            R, C = rect
            inside = [p for p, (b, r) in zip(placed, extents) if b <= R and r <= C]
            return "tiling", Tiling(piece, R, C, inside).oriented()
        nxt = open_frame(pos)
        if nxt is not None:
            stack.append((nxt, bounds))
    return ("cut" if cut else "exhausted"), None


def grid_schedule(piece: HoleyPolyomino, grid_side: int) -> list[int]:
    """Grid sides tried in turn: doubling from twice the piece up to ``grid_side``."""
    g = 2 * max(piece.bbox)
    sides = []
    while g < grid_side:
        sides.append(g)
        g *= 2
    sides.append(grid_side)
    return sides


def prove_unrectifiable(piece: HoleyPolyomino, grid_side: int = DEFAULT_GRID_SIDE,
                        budget: SearchBudget = SearchBudget()) -> ProofOutcome:
    """Try to fill the top-left corner of a square grid.

    Cells are filled in corner order and each image is tried only with its
    own least cell on the target, which is how any corner tiling replays.
    Running out of options proves the piece cannot tile a rectangle.
    Branches whose frontier reaches the far edge are cut; if any were cut
    the grid is enlarged (doubling up to ``grid_side``) and the search is
    repeated. The node budget is shared by all rounds.
    """
    h, w = piece.bbox
    if grid_side < 2 * max(h, w):
        raise ValueError(f"grid_side must be at least {2 * max(h, w)}")
    meter = _Meter(budget)
    side = grid_side
    try:
        for side in grid_schedule(piece, grid_side):
            kind, tiling = _corner_search(piece, _CornerGrid(piece, side), meter)
            if kind == "tiling":
                return ProofOutcome("tiling", "exhaustion", side, meter.nodes, tiling=tiling)
            if kind == "exhausted":
                return ProofOutcome("unrectifiable", "exhaustion", side, meter.nodes)
    except BudgetExceeded as exc:
        return ProofOutcome("inconclusive", "exhaustion", side, meter.nodes, reason=str(exc))
    return ProofOutcome("inconclusive", "exhaustion", side, meter.nodes, reason="grid too small")


# -- strips ------------------------------------------------------------------

@dataclass
class StripResult:
    status: Status
    height: int
    width: int | None = None
    tiling: Tiling | None = None
    states: int = 0
    reason: str = ""


class _Sweep:
    """Column-major fill of the top ``h`` rows of a rectangle of open width.

    With ``soft=False`` the strip is exactly ``h`` rows high. With
    ``soft=True`` tiles may hang below row ``h`` (those cells need not be
    filled but still block overlaps), which models the top band of any
    taller rectangle.

    A state is the occupancy of a window of columns; bit ``j * rows + r``
    is row ``r`` of window column ``j``, and window column ``lead`` is the
    first column with an empty band cell. Columns left of ``lead`` keep
    cells that tiles hanging down-left may still collide with.
    """

    def __init__(self, piece: HoleyPolyomino, h: int, soft: bool = False):
        images = sorted(piece.images, key=lambda im: im.transform_id)
        width = max(im.bbox_width for im in images)
        self.h = h
        self.rows = rows = h + max(im.bbox_height for im in images) - 1 if soft else h
        self.lead = lead = width - 1 if soft else 0
        self.col_bits = rows
        self.band = (1 << h) - 1
        self.by_row: list[list[tuple[int, int, int, int]]] = [[] for _ in range(h)]
        for im in images:
            for r0 in range(h):
                if r0 + im.bbox_height > rows:
                    continue
                band = [(c, r) for r, c in im.cells if r0 + r < h]
                if not band:
                    continue
                lc, lr = min(band)
                c0 = lead - lc
                mask = 0
                for r, c in im.cells:
                    mask |= 1 << ((c0 + c) * rows + r0 + r)
                self.by_row[r0 + lr].append((mask, im.transform_id, r0, c0 - lead))
        # columns left of the rectangle are walls
        self.start = (1 << (lead * rows)) - 1
        self.tail_shift = lead * rows

    def successors(self, state: int):
        rows = self.rows
        band = self.band
        cur = self.tail_shift
        free = ~(state >> cur) & band
        tr = (free & -free).bit_length() - 1
        for mask, tid, r0, dc in self.by_row[tr]:
            if mask & state:
                continue
            nxt = state | mask
            shift = 0
            while (nxt >> cur) & band == band:
                nxt >>= rows
                shift += 1
            yield nxt, shift, (tid, r0, dc)

    def closed(self, state: int) -> bool:
        return not state >> self.tail_shift


def _sweep(sweep: _Sweep, meter: _Meter):
    """Cheapest-width search from the left wall back to a closed frontier.

    Returns (width, placements) or None when the state set closes.
    """
    start = sweep.start
    dist = {start: 0}
    parent: dict[int, tuple[int, tuple]] = {}
    heap = [(0, start)]
    best = None
    while heap:
        d, state = heapq.heappop(heap)
        if d > dist.get(state, d):
            continue
        if best is not None and d >= best[0]:
            break
        meter.tick()
        for nxt, shift, move in sweep.successors(state):
            nd = d + shift
            if shift and sweep.closed(nxt):
                if best is None or nd < best[0]:
                    best = (nd, state, move)
                continue
            if nd < dist.get(nxt, 1 << 60):
                dist[nxt] = nd
                parent[nxt] = (state, move)
                heapq.heappush(heap, (nd, nxt))
    meter.states = len(dist)
    if best is None:
        return None
    width, state, move = best
    steps = [(dist[state], move)]
    while state != start:
        prev, move = parent[state]
        steps.append((dist[prev], move))
        state = prev
    steps.reverse()
    return width, [Placement(tid, r0, col + dc) for col, (tid, r0, dc) in steps]


def strip_status(piece: HoleyPolyomino, h: int, budget: SearchBudget = SearchBudget()) -> StripResult:
    """Decide whether some h x n rectangle can be tiled, over all n.

    Frontier states are explored cheapest-width first, so a hit gives the
    narrowest such rectangle. Closing the reachable state set without
    returning to an empty frontier proves that no width works.
    """
    if h < 1:
        raise ValueError("h must be >= 1")
    meter = _Meter(budget)
    meter.states = 0
    try:
        got = _sweep(_Sweep(piece, h), meter)
    except BudgetExceeded as exc:
        return StripResult(Status.INCONCLUSIVE, h, states=meter.nodes, reason=str(exc))
    if got is None:
        return StripResult(Status.NONE, h, states=meter.states)
    width, placements = got
    return StripResult(Status.TILING, h, width, Tiling(piece, h, width, placements), meter.states)


def band_status(piece: HoleyPolyomino, depth: int, budget: SearchBudget = SearchBudget()) -> StripResult:
    """Can the top ``depth`` rows of some rectangle with at least that
    many rows be filled? NONE rules out every such rectangle."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    meter = _Meter(budget)
    meter.states = 0
    try:
        got = _sweep(_Sweep(piece, depth, soft=True), meter)
    except BudgetExceeded as exc:
        return StripResult(Status.INCONCLUSIVE, depth, states=meter.nodes, reason=str(exc))
    if got is None:
        return StripResult(Status.NONE, depth, states=meter.states)
    return StripResult(Status.TILING, depth, got[0], states=meter.states)


def prove_by_strips(piece: HoleyPolyomino, max_depth: int = 4,
                    budget: SearchBudget = SearchBudget()) -> ProofOutcome:
    """Unrectifiable if, for some d, the top-band sweep of depth d never
    closes and no strip lower than d rows can be tiled."""
    nodes = 0
    for d in range(1, max_depth + 1):
        band = band_status(piece, d, budget)
        nodes += band.states
        if band.status is Status.INCONCLUSIVE:
            return ProofOutcome("inconclusive", "strip", nodes=nodes, reason=band.reason)
        if band.status is Status.TILING:
            continue
        for h in range(1, d):
            res = strip_status(piece, h, budget)
            nodes += res.states
            if res.status is Status.TILING:
                return ProofOutcome("tiling", "strip", nodes=nodes, tiling=res.tiling.oriented())
            if res.status is Status.INCONCLUSIVE:
                return ProofOutcome("inconclusive", "strip", nodes=nodes, reason=res.reason)
        return ProofOutcome("unrectifiable", "strip", grid_side=d, nodes=nodes)
    return ProofOutcome("inconclusive", "strip", nodes=nodes, reason=f"every band up to depth {max_depth} closes")


@dataclass
class Bound:
    """A side bound; ``complete`` is False when a budget cut the scan short."""

    value: int
    complete: bool = True
    tiling: Tiling | None = None
    detail: list = field(default_factory=list)


def min_side_bound(piece: HoleyPolyomino, K: int, budget: SearchBudget = SearchBudget()) -> Bound:
    """Largest K' <= K such that no h x n rectangle tiles for any h <= K'."""
    if K < 1:
        raise ValueError("K must be >= 1")
    detail = []
    for h in range(1, K + 1):
        res = strip_status(piece, h, budget)
        detail.append((h, res.status.value, res.states))
        if res.status is Status.TILING:
            return Bound(h - 1, True, res.tiling, detail)
        if res.status is Status.INCONCLUSIVE:
            return Bound(h - 1, False, None, detail)
    return Bound(K, True, None, detail)


def max_side_floor(piece: HoleyPolyomino, N: int, budget: SearchBudget = SearchBudget()) -> Bound:
    """Largest N' <= N for which the N' x N' search is exhausted with no tiling."""
    if N < 1:
        raise ValueError("N must be >= 1")
    hi = N
    tiling = None
    detail = []
    while hi >= 1:
        res = solve_bounded(piece, hi, budget)
        detail.append((hi, res.status.value, res.nodes))
        if res.status is Status.NONE:
            return Bound(hi, True, tiling, detail)
        if res.status is Status.INCONCLUSIVE:
            break
        tiling = res.tiling
        hi = max(tiling.rows, tiling.cols) - 1
    else:
        return Bound(0, True, tiling, detail)
    # budget hit at ``hi``: fall back to the completed prefix below it
    best = 0
    for m in range(1, hi):
        res = solve_bounded(piece, m, budget)
        detail.append((m, res.status.value, res.nodes))
        if res.status is not Status.NONE:
            break
        best = m
    return Bound(best, False, tiling, detail)
