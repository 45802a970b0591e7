"""Slow, deliberately naive reference implementations for cross-checks."""

from __future__ import annotations

from itertools import product


def rotate(cells):
    return [(-c, r) for r, c in cells]


def mirror(cells):
    return [(r, -c) for r, c in cells]


def norm(cells):
    r0 = min(r for r, _ in cells)
    c0 = min(c for _, c in cells)
    return frozenset((r - r0, c - c0) for r, c in cells)


def all_images(cells):
    """The distinct shapes reachable by rotations and reflections."""
    out = set()
    cur = list(cells)
    for _ in range(4):
        out.add(norm(cur))
        out.add(norm(mirror(cur)))
        cur = rotate(cur)
    return out


def connected(cells) -> bool:
    cells = set(cells)
    if not cells:
        return True
    start = next(iter(cells))
    seen, todo = {start}, [start]
    while todo:
        r, c = todo.pop()
        for nb in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
            if nb in cells and nb not in seen:
                seen.add(nb)
                todo.append(nb)
    return len(seen) == len(cells)


def steiner_bfs(visible, margin: int = 1, cap: int | None = None) -> int:
    """Fewest extra cells making ``visible`` connected.

    Breadth-first over added-cell sets, each step adding one cell next to
    the current union. Any minimal connector can be added in such an order,
    so the first connected level is the answer. Cells may come from the
    bounding box grown by ``margin``. With ``cap`` the search stops and
    returns cap + 1 once the answer is known to exceed it.
    """
    vis = frozenset(visible)
    rows = [r for r, _ in vis]
    cols = [c for _, c in vis]
    lo_r, hi_r = min(rows) - margin, max(rows) + margin
    lo_c, hi_c = min(cols) - margin, max(cols) + margin
    level = {frozenset()}
    depth = 0
    while True:
        for added in level:
            if connected(vis | added):
                return depth
        if cap is not None and depth >= cap:
            return cap + 1
        nxt = set()
        for added in level:
            union = vis | added
            for r, c in union:
                for nb in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
                    if nb not in union and lo_r <= nb[0] <= hi_r and lo_c <= nb[1] <= hi_c:
                        nxt.add(added | {nb})
        level = nxt
        depth += 1


def brute_force_tiles(visible, rows: int, cols: int) -> bool:
    """Does some set of copies exactly cover a rows x cols rectangle?"""
    options = []
    for img in all_images(visible):
        h = max(r for r, _ in img) + 1
        w = max(c for _, c in img) + 1
        for dr, dc in product(range(rows - h + 1), range(cols - w + 1)):
            options.append(frozenset((r + dr, c + dc) for r, c in img))
    cells = [(r, c) for r in range(rows) for c in range(cols)]

    def go(covered):
        free = next((x for x in cells if x not in covered), None)
        if free is None:
            return True
        return any(go(covered | o) for o in options if free in o and not o & covered)

    return go(frozenset())


def tiling_is_valid(visible, rows, cols, footprints) -> bool:
    """Check a tiling given as explicit footprints (lists of cells)."""
    images = all_images(visible)
    seen = set()
    for fp in footprints:
        if norm(fp) not in images:
            return False
        for r, c in fp:
            if not (0 <= r < rows and 0 <= c < cols) or (r, c) in seen:
                return False
            seen.add((r, c))
    return len(seen) == rows * cols
