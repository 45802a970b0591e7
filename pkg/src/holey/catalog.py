"""Classification of whole (n, k) classes, catalog files and table fixtures."""

from __future__ import annotations

import json
import logging
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import __version__
from .board import Placement
from .geometry import HoleyPolyomino, enumerate_holey
from .prover import (ProofOutcome, corner_transparent_check, max_side_floor,
                     min_side_bound, prove_by_strips, prove_unrectifiable,
                     unfillable_hole_check)
from .solver import SearchBudget, Tiling, smallest_tiling, verify_tiling

log = logging.getLogger(__name__)

SOLVED, IMPOSSIBLE, UNKNOWN = "solved", "impossible", "unknown"
STATUSES = (SOLVED, IMPOSSIBLE, UNKNOWN)


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class BudgetProfile:
    name: str
    solver_n: int  # max side for the sweep and for the bounded search
    sweep_area: int
    grid_side: int
    strip_k: int
    band_depth: int
    max_nodes: int
    max_seconds: float | None = None

    @property
    def budget(self) -> SearchBudget:
        return SearchBudget(self.max_nodes, self.max_seconds)

    def to_dict(self) -> dict:
        return {"name": self.name, "solver_n": self.solver_n, "sweep_area": self.sweep_area,
                "grid_side": self.grid_side, "strip_k": self.strip_k,
                "band_depth": self.band_depth, "max_nodes": self.max_nodes,
                "max_seconds": self.max_seconds}


PROFILES = {
    "desk": BudgetProfile("desk", solver_n=12, sweep_area=100, grid_side=40, strip_k=6,
                          band_depth=4, max_nodes=10**7),
    "full": BudgetProfile("full", solver_n=40, sweep_area=400, grid_side=100, strip_k=20,
                          band_depth=8, max_nodes=10**9, max_seconds=None),
}


def get_profile(profile: str | BudgetProfile) -> BudgetProfile:
    if isinstance(profile, BudgetProfile):
        return profile
    try:
        return PROFILES[profile]
    except KeyError:
        raise CatalogError(f"unknown profile {profile!r}; choose from {sorted(PROFILES)}") from None


# -- solution objects --------------------------------------------------------

def tiling_to_dict(t: Tiling) -> dict:
    return {"piece": t.piece.encode(), "rows": t.rows, "cols": t.cols,
            "placements": [{"transform": p.transform, "row": p.row, "col": p.col}
                           for p in t.placements]}


def tiling_from_dict(d: dict) -> Tiling:
    piece = HoleyPolyomino.parse(d["piece"])
    placements = [Placement(int(p["transform"]), int(p["row"]), int(p["col"]))
                  for p in d["placements"]]
    return Tiling(piece, int(d["rows"]), int(d["cols"]), placements)


def proof_from_dict(d: dict) -> ProofOutcome:
    cell = d.get("witness_cell")
    return ProofOutcome(d["verdict"], d["method"], d.get("grid_side", 0), d.get("nodes", 0),
                        tuple(cell) if cell is not None else None, reason=d.get("reason", ""))


# -- classification ----------------------------------------------------------

@dataclass
class Classification:
    piece: HoleyPolyomino
    status: str
    smallest_known: Tiling | None = None
    proof: ProofOutcome | None = None
    min_side_gt: int | None = None
    max_side_gt: int | None = None
    # other rectangles of the same (smallest) area that also tile
    equal_area: list[tuple[int, int]] = field(default_factory=list)
    stage: str = ""

    @property
    def size(self) -> tuple[int, int] | None:
        return None if self.smallest_known is None else self.smallest_known.size

    def to_dict(self) -> dict:
        bounds = None
        if self.status == UNKNOWN:
            bounds = {"min_side_gt": self.min_side_gt, "max_side_gt": self.max_side_gt}
        return {
            "piece": self.piece.encode(),
            "status": self.status,
            "smallest_known": tiling_to_dict(self.smallest_known) if self.smallest_known else None,
            "proof": self.proof.certificate(self.piece) if self.proof else None,
            "bounds": bounds,
            "equal_area": [list(s) for s in self.equal_area],
        }

    @classmethod
    def from_dict(cls, d: dict) -> Classification:
        piece = HoleyPolyomino.parse(d["piece"])
        status = d["status"]
        if status not in STATUSES:
            raise CatalogError(f"bad status {status!r}")
        tiling = tiling_from_dict(d["smallest_known"]) if d.get("smallest_known") else None
        if status == SOLVED and (tiling is None or not verify_tiling(piece, tiling)):
            raise CatalogError(f"solved entry {piece} carries no valid tiling")
        proof = proof_from_dict(d["proof"]) if d.get("proof") else None
        if status == IMPOSSIBLE and (proof is None or not proof.unrectifiable):
            raise CatalogError(f"impossible entry {piece} carries no proof")
        bounds = d.get("bounds") or {}
        return cls(piece, status, tiling, proof, bounds.get("min_side_gt"),
                   bounds.get("max_side_gt"), [tuple(s) for s in d.get("equal_area", [])])


def _solved(piece, tiling, stage, ties=()) -> Classification:
    return Classification(piece, SOLVED, tiling, equal_area=[s for s in ties if s != tiling.size],
                          stage=stage)


def classify(piece: HoleyPolyomino, profile: str | BudgetProfile = "desk") -> Classification:
    """Run the pipeline; the first conclusive stage decides.

    Stages: bounding-box corner filter, unfillable-hole filter, smallest
    rectangle sweep, corner exhaustion, band/strip proof, then side bounds
    (strip heights and bounded search), either of which may still turn up
    a tiling. Budget exhaustion only ever yields UNKNOWN.
    """
    prof = get_profile(profile)
    budget = prof.budget
    if corner_transparent_check(piece):
        return Classification(piece, IMPOSSIBLE, proof=ProofOutcome("unrectifiable", "corner"),
                              stage="corner")
    cell = unfillable_hole_check(piece)
    if cell is not None:
        return Classification(piece, IMPOSSIBLE,
                              proof=ProofOutcome("unrectifiable", "hole", witness_cell=cell),
                              stage="hole")
    sweep = smallest_tiling(piece, max(prof.sweep_area, piece.n), budget,
                            max_side=prof.solver_n, ties=True)
    if sweep.tiling is not None:
        return _solved(piece, sweep.tiling, "sweep", sweep.notes.get("ties", ()))
    for stage, attempt in (
        ("exhaustion", lambda: prove_unrectifiable(piece, max(prof.grid_side, 2 * max(piece.bbox)), budget)),
        ("strip", lambda: prove_by_strips(piece, prof.band_depth, budget)),
    ):
        out = attempt()
        if out.verdict == "unrectifiable":
            return Classification(piece, IMPOSSIBLE, proof=out, stage=stage)
        if out.verdict == "tiling":
            return _solved(piece, out.tiling, stage)
    low = min_side_bound(piece, prof.strip_k, budget)
    if low.tiling is not None:
        return _solved(piece, low.tiling.oriented(), "strip-bound")
    high = max_side_floor(piece, prof.solver_n, budget)
    if high.tiling is not None:
        return _solved(piece, high.tiling, "bounded")
    return Classification(piece, UNKNOWN, min_side_gt=low.value, max_side_gt=high.value,
                          stage="bounds")


@dataclass
class Catalog:
    n: int
    k: int
    profile: str
    entries: list[Classification]
    provenance: dict = field(default_factory=dict)

    def counts(self) -> dict[str, int]:
        c = Counter(e.status for e in self.entries)
        return {s: c.get(s, 0) for s in STATUSES}

    def by_status(self, status: str) -> list[Classification]:
        return [e for e in self.entries if e.status == status]

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "profile": self.profile,
                "entries": [e.to_dict() for e in self.entries],
                "provenance": self.provenance}

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1) + "\n"

    def save(self, path) -> None:
        Path(path).write_text(self.dumps())

    @classmethod
    def from_dict(cls, d: dict) -> Catalog:
        entries = [Classification.from_dict(e) for e in d["entries"]]
        keys = [e.piece.canonical_key for e in entries]
        if len(set(keys)) != len(keys):
            raise CatalogError("duplicate pieces in catalog")
        return cls(int(d["n"]), int(d["k"]), d["profile"], entries, d.get("provenance", {}))

    @classmethod
    def load(cls, path) -> Catalog:
        return cls.from_dict(json.loads(Path(path).read_text()))


def worker_count() -> int:
    env = os.environ.get("HOLEY_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def classify_class(n: int, k: int, profile: str | BudgetProfile = "desk",
                   workers: int | None = None) -> Catalog:
    prof = get_profile(profile)
    pieces = enumerate_holey(n, k)
    workers = worker_count() if workers is None else workers
    if workers > 1 and len(pieces) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            entries = list(pool.map(classify, pieces, [prof] * len(pieces)))
    else:
        entries = []
        for p in pieces:
            entries.append(classify(p, prof))
            log.info("%s -> %s (%s)", p, entries[-1].status, entries[-1].stage)
    entries.sort(key=lambda e: e.piece.canonical_key)
    return Catalog(n, k, prof.name, entries,
                   {"version": __version__, "budgets": prof.to_dict()})


# -- paper fixtures ----------------------------------------------------------

@dataclass
class ExpectedTable:
    n: int
    k: int
    total: int
    solved: int | None = None
    impossible: int | None = None
    unknown: int | None = None
    sizes: list[tuple[int, int]] = field(default_factory=list)
    unknown_bounds: list[tuple[int, int]] = field(default_factory=list)

    @classmethod
    def from_dict(cls, d: dict) -> ExpectedTable:
        return cls(d["n"], d["k"], d["total"], d.get("solved"), d.get("impossible"),
                   d.get("unknown"), [tuple(s) for s in d.get("sizes", [])],
                   [tuple(b) for b in d.get("unknown_bounds", [])])

    @classmethod
    def load(cls, path) -> ExpectedTable:
        return cls.from_dict(json.loads(Path(path).read_text()))


def fixture_path(n: int, k: int):
    return resources.files("holey") / "fixtures" / f"{n}_{k}.json"


def load_expected(n: int, k: int) -> ExpectedTable:
    path = fixture_path(n, k)
    if not path.is_file():
        raise CatalogError(f"no fixture for class ({n},{k})")
    return ExpectedTable.from_dict(json.loads(path.read_text()))


def _orient(size) -> tuple[int, int]:
    r, c = size
    return (min(r, c), max(r, c))


def match_sizes(options: list[set], sizes: list) -> tuple[int, list[int], list[int]]:
    """Maximum matching of entries (each with its set of admissible sizes)
    onto a multiset of sizes. Returns (matched, unmatched entry indexes,
    unmatched size indexes)."""
    owner = [-1] * len(sizes)

    def augment(i, seen):
        for j, s in enumerate(sizes):
            if s in options[i] and j not in seen:
                seen.add(j)
                if owner[j] < 0 or augment(owner[j], seen):
                    owner[j] = i
                    return True
        return False

    matched = sum(1 for i in range(len(options)) if augment(i, set()))
    used = {i for i in owner if i >= 0}
    return (matched, [i for i in range(len(options)) if i not in used],
            [j for j, o in enumerate(owner) if o < 0])


def size_options(e: Classification) -> set:
    if e.smallest_known is None:
        return set()
    return {_orient(e.smallest_known.size)} | {_orient(s) for s in e.equal_area}


@dataclass
class DiffReport:
    n: int
    k: int
    counts: dict
    expected_counts: dict
    hard: list[str] = field(default_factory=list)
    soft: list[str] = field(default_factory=list)
    unmatched_sizes_ours: list = field(default_factory=list)
    unmatched_sizes_paper: list = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.hard and not self.soft

    def lines(self) -> list[str]:
        out = [f"class ({self.n},{self.k}): ours {self.counts} vs paper {self.expected_counts}"]
        out += [f"HARD: {m}" for m in self.hard]
        out += [f"note: {m}" for m in self.soft]
        if self.clean:
            out.append("clean")
        return out


def compare_to_expected(c: Catalog, expected: ExpectedTable, max_area: int | None = None) -> DiffReport:
    """Compare a catalog against a table fixture.

    Pieces are identified in the paper only by pictures, so statuses are
    checked through counts: proving more pieces impossible than the paper
    left impossible or unknown means a paper-solved piece was contradicted
    (hard), and likewise for solved. Sizes are compared as multisets; a
    piece with several equal-area tilings matches any of them. With
    ``max_area`` only sizes up to that area are compared.
    """
    if (c.n, c.k) != (expected.n, expected.k):
        raise CatalogError(f"catalog ({c.n},{c.k}) vs fixture ({expected.n},{expected.k})")
    counts = c.counts()
    exp = {"solved": expected.solved, "impossible": expected.impossible,
           "unknown": expected.unknown, "total": expected.total}
    rep = DiffReport(c.n, c.k, {**counts, "total": len(c.entries)}, exp)
    if len(c.entries) != expected.total:
        rep.hard.append(f"{len(c.entries)} pieces, paper has {expected.total}")
    if expected.solved is None:
        return rep
    if counts[IMPOSSIBLE] > expected.impossible + expected.unknown:
        rep.hard.append(f"{counts[IMPOSSIBLE]} impossible exceeds paper impossible+unknown "
                        f"({expected.impossible}+{expected.unknown})")
    if counts[SOLVED] > expected.solved + expected.unknown:
        rep.hard.append(f"{counts[SOLVED]} solved exceeds paper solved+unknown "
                        f"({expected.solved}+{expected.unknown})")
    if counts[IMPOSSIBLE] > expected.impossible:
        rep.soft.append(f"{counts[IMPOSSIBLE] - expected.impossible} paper-unknown piece(s) proven impossible")
    if counts[SOLVED] > expected.solved:
        rep.soft.append(f"{counts[SOLVED] - expected.solved} paper-unknown piece(s) solved")
    if counts[UNKNOWN] > expected.unknown:
        rep.soft.append(f"{counts[UNKNOWN] - expected.unknown} more unknown than the paper "
                        f"(budget-limited)")

    def small(s):
        return max_area is None or s[0] * s[1] <= max_area

    solved = c.by_status(SOLVED)
    options = [{s for s in size_options(e) if small(s)} for e in solved]
    keep = [i for i, o in enumerate(options) if o]
    options = [options[i] for i in keep]
    paper = sorted(_orient(s) for s in expected.sizes if small(_orient(s)))
    _, lost_ours, lost_paper = match_sizes(options, paper)
    rep.unmatched_sizes_ours = [solved[keep[i]].size for i in lost_ours]
    rep.unmatched_sizes_paper = [paper[j] for j in lost_paper]
    if rep.unmatched_sizes_ours:
        rep.soft.append(f"our sizes not in the paper table: {sorted(rep.unmatched_sizes_ours)}")
    if rep.unmatched_sizes_paper:
        rep.soft.append(f"paper sizes we did not reproduce: {rep.unmatched_sizes_paper}")
    return rep
