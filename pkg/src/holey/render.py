"""ASCII and SVG drawings of tilings."""

from __future__ import annotations

import string

from .solver import Tiling, verify_tiling

CELL_PX = 20
PALETTE = (
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
    "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#86bcb6", "#d37295",
)
_LETTERS = string.ascii_lowercase + string.ascii_uppercase


class RenderError(ValueError):
    pass


def _owner_grid(t: Tiling) -> list[list[int]]:
    if not t.placements or not verify_tiling(t.piece, t):
        raise RenderError("refusing to render an invalid tiling")
    grid = [[-1] * t.cols for _ in range(t.rows)]
    for k, cells in enumerate(t.footprints()):
        for r, c in cells:
            grid[r][c] = k
    return grid


def render_ascii(t: Tiling) -> str:
    """One letter per cell; letters follow placement order and cycle after 52."""
    grid = _owner_grid(t)
    return "\n".join("".join(_LETTERS[k % len(_LETTERS)] for k in row) for row in grid)


def render_svg(t: Tiling) -> str:
    grid = _owner_grid(t)
    w, h = t.cols * CELL_PX, t.rows * CELL_PX
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
           f'viewBox="0 0 {w} {h}">']
    for r, row in enumerate(grid):
        for c, k in enumerate(row):
            out.append(f'<rect x="{c * CELL_PX}" y="{r * CELL_PX}" width="{CELL_PX}" '
                       f'height="{CELL_PX}" fill="{PALETTE[k % len(PALETTE)]}" '
                       f'stroke="#000" stroke-width="1"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
