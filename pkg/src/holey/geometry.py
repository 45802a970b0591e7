"""Cell-set algebra, dihedral canonicalization, hole counts and enumeration."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

Cell = tuple[int, int]
CellSet = tuple[Cell, ...]

MAX_ENUM_CELLS = 10


class ShapeError(ValueError):
    pass


def normalize(cells) -> CellSet:
    """Translate so that min row = min col = 0; returned sorted row-major."""
    cells = list(cells)
    if not cells:
        raise ShapeError("empty shape")
    r0 = min(r for r, _ in cells)
    c0 = min(c for _, c in cells)
    return tuple(sorted({(r - r0, c - c0) for r, c in cells}))


def transform(cells, transform_id: int) -> CellSet:
    """Apply one of the 8 square symmetries and normalize.

    ``transform_id = rotations + 4 * reflected``; the reflection (c -> -c)
    is applied first, then counter-clockwise quarter turns (r, c) -> (-c, r).
    """
    if not 0 <= transform_id < 8:
        raise ShapeError(f"transform id out of range: {transform_id}")
    pts = [(r, -c) if transform_id >= 4 else (r, c) for r, c in cells]
    for _ in range(transform_id % 4):
        pts = [(-c, r) for r, c in pts]
    return normalize(pts)


def bounding_box(cells) -> tuple[int, int]:
    return 1 + max(r for r, _ in cells), 1 + max(c for _, c in cells)


@dataclass(frozen=True)
class SymmetryImage:
    transform_id: int
    cells: CellSet
    bbox_height: int
    bbox_width: int


@lru_cache(maxsize=None)
def _images(cells: CellSet) -> tuple[SymmetryImage, ...]:
    seen: dict[CellSet, int] = {}
    for t in range(8):
        img = transform(cells, t)
        seen.setdefault(img, t)
    out = []
    for img in sorted(seen):
        h, w = bounding_box(img)
        out.append(SymmetryImage(seen[img], img, h, w))
    return tuple(out)


def symmetry_images(cells) -> list[SymmetryImage]:
    """Distinct images under the dihedral group, sorted by encoding.

    Each image carries the smallest transform id that produces it.
    """
    return list(_images(normalize(cells)))


def canonical_form(cells) -> CellSet:
    return _images(normalize(cells))[0].cells


def is_connected(cells) -> bool:
    cells = set(cells)
    if not cells:
        return False
    start = next(iter(cells))
    seen = {start}
    stack = [start]
    while stack:
        r, c = stack.pop()
        for nb in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
            if nb in cells and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(cells)


def _components(cells: set[Cell]) -> list[set[Cell]]:
    left = set(cells)
    comps = []
    while left:
        start = left.pop()
        comp = {start}
        stack = [start]
        while stack:
            r, c = stack.pop()
            for nb in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
                if nb in left:
                    left.remove(nb)
                    comp.add(nb)
                    stack.append(nb)
        comps.append(comp)
    return comps


@lru_cache(maxsize=None)
def _steiner_k(visible: CellSet) -> int:
    vis = set(visible)
    comps = _components(vis)
    if len(comps) == 1:
        return 0
    h, w = bounding_box(visible)
    free = [(r, c) for r in range(h) for c in range(w) if (r, c) not in vis]
    # one added cell touches at most four components
    lower = max(1, -(-(len(comps) - 1) // 3))
    for m in range(lower, len(free) + 1):
        for extra in itertools.combinations(free, m):
            if is_connected(vis.union(extra)):
                return m
    raise AssertionError("bounding box always admits a connector")


def steiner_k(visible) -> int:
    """Fewest extra cells that make ``visible`` 4-connected.

    The search ranges over empty cells of the bounding box, which always
    contains some minimal rectilinear connector.
    """
    return _steiner_k(normalize(visible))


def minimal_connector(visible) -> CellSet:
    """One (arbitrary) minimal set of transparent cells, for display."""
    visible = normalize(visible)
    k = _steiner_k(visible)
    if k == 0:
        return ()
    vis = set(visible)
    h, w = bounding_box(visible)
    free = [(r, c) for r in range(h) for c in range(w) if (r, c) not in vis]
    for extra in itertools.combinations(free, k):
        if is_connected(vis.union(extra)):
            return tuple(extra)
    raise AssertionError("unreachable")


@dataclass(frozen=True, order=True)
class HoleyPolyomino:
    """A free shape identified by its visible cells (stored canonical)."""

    visible: CellSet
    n: int = field(compare=False)
    k: int = field(compare=False)

    @classmethod
    def from_cells(cls, cells) -> HoleyPolyomino:
        canon = canonical_form(cells)
        return cls(canon, len(canon), steiner_k(canon))

    @classmethod
    def parse(cls, text: str) -> HoleyPolyomino:
        return cls.from_cells(parse_cells(text))

    @property
    def canonical_key(self) -> CellSet:
        return self.visible

    @property
    def images(self) -> list[SymmetryImage]:
        return symmetry_images(self.visible)

    @property
    def bbox(self) -> tuple[int, int]:
        return bounding_box(self.visible)

    def encode(self) -> str:
        return format_cells(self.visible)

    def transparent(self) -> CellSet:
        return minimal_connector(self.visible)

    def __str__(self) -> str:
        return self.encode()


def parse_cells(text: str) -> CellSet:
    """Parse ``"r,c;r,c;..."`` into a normalized cell set."""
    cells = []
    for chunk in text.replace(" ", "").split(";"):
        if not chunk:
            continue
        try:
            r, c = chunk.split(",")
            cells.append((int(r), int(c)))
        except ValueError:
            raise ShapeError(f"bad cell {chunk!r} in piece {text!r}") from None
    if len(set(cells)) != len(cells):
        raise ShapeError(f"duplicate cells in piece {text!r}")
    return normalize(cells)


def format_cells(cells) -> str:
    return ";".join(f"{r},{c}" for r, c in sorted(cells))


def _grow(shape: CellSet) -> set[CellSet]:
    cells = set(shape)
    out = set()
    for r, c in shape:
        for nb in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
            if nb not in cells:
                out.add(canonical_form(cells | {nb}))
    return out


@lru_cache(maxsize=None)
def _connected(m: int) -> tuple[CellSet, ...]:
    if m == 1:
        return (((0, 0),),)
    grown = set()
    for shape in _connected(m - 1):
        grown |= _grow(shape)
    return tuple(sorted(grown))


def enumerate_connected(m: int) -> list[CellSet]:
    """All free connected m-ominoes, canonical and sorted."""
    if not 1 <= m <= MAX_ENUM_CELLS:
        raise ShapeError(f"m must be in 1..{MAX_ENUM_CELLS}, got {m}")
    return list(_connected(m))


def enumerate_holey(n: int, k: int) -> list[HoleyPolyomino]:
    """All free (n, k)-polyominoes, sorted by canonical key.

    Every (n, k) visible set plus one minimal connector is a connected
    (n + k)-omino, so deleting k cells from each such omino in every way
    and keeping remainders of hole count exactly k is complete.
    """
    if n < 1 or k < 0:
        raise ShapeError(f"invalid class ({n}, {k})")
    if n + k > MAX_ENUM_CELLS:
        raise ShapeError(f"n + k must be at most {MAX_ENUM_CELLS}")
    candidates: set[CellSet] = set()
    for base in _connected(n + k):
        for hole in itertools.combinations(base, k):
            rest = set(base).difference(hole)
            candidates.add(canonical_form(rest))
    # k holes always suffice for these remainders, so only k - 1 can fail
    pieces = [c for c in candidates if _steiner_k(c) == k]
    return [HoleyPolyomino(p, n, k) for p in sorted(pieces)]
