"""Command line entry point: ``holey <command> ...``.

Exit codes: 0 when a verdict or result is reached, 2 when a search ran out
of budget, 1 on errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .catalog import (Catalog, CatalogError, ExpectedTable, PROFILES, classify_class,
                      compare_to_expected, tiling_from_dict, tiling_to_dict)
from .geometry import HoleyPolyomino, ShapeError, enumerate_holey
from .prover import max_side_floor, min_side_bound, prove_by_strips, prove_unrectifiable
from .render import RenderError, render_ascii, render_svg
from .solver import SearchBudget, Status, smallest_tiling, solve_bounded, solve_exact

OK, ERROR, INCONCLUSIVE = 0, 1, 2


def _budget(args) -> SearchBudget:
    return SearchBudget(args.budget_nodes)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _rect(text: str) -> tuple[int, int]:
    try:
        r, c = text.lower().split("x")
        return int(r), int(c)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected RxC, got {text!r}") from None


def cmd_enumerate(args) -> int:
    pieces = enumerate_holey(args.n, args.k)
    if args.count_only:
        print(len(pieces))
    else:
        for p in pieces:
            print(p.encode())
    return OK


def cmd_solve(args) -> int:
    piece = HoleyPolyomino.parse(args.piece)
    budget = _budget(args)
    if args.exact:
        res = solve_exact(piece, *args.exact, budget)
    elif args.max_side:
        res = solve_bounded(piece, args.max_side, budget)
    else:
        res = smallest_tiling(piece, args.area_limit, budget)
    if res.tiling is not None:
        text = json.dumps(tiling_to_dict(res.tiling), sort_keys=True)
        _emit(text, args.out)
        if args.out:
            print(f"tiling {res.tiling} written to {args.out}")
    else:
        print(f"{res.status.value}: no tiling found ({res.nodes} nodes) {res.reason}".rstrip())
    return INCONCLUSIVE if res.status is Status.INCONCLUSIVE else OK


def cmd_prove(args) -> int:
    piece = HoleyPolyomino.parse(args.piece)
    out = prove_unrectifiable(piece, args.grid, _budget(args))
    if out.verdict == "inconclusive" and not args.no_strips:
        alt = prove_by_strips(piece, args.band_depth, _budget(args))
        if alt.verdict != "inconclusive":
            out = alt
    print(json.dumps(out.certificate(piece), sort_keys=True))
    return INCONCLUSIVE if out.verdict == "inconclusive" else OK


def cmd_bounds(args) -> int:
    piece = HoleyPolyomino.parse(args.piece)
    budget = _budget(args)
    low = min_side_bound(piece, args.min_side, budget)
    high = max_side_floor(piece, args.max_side, budget)
    found = low.tiling or high.tiling
    print(json.dumps({"piece": piece.encode(), "min_side_gt": low.value,
                      "max_side_gt": high.value, "complete": low.complete and high.complete,
                      "tiling": str(found) if found else None}, sort_keys=True))
    return OK if low.complete and high.complete else INCONCLUSIVE


def cmd_classify(args) -> int:
    cat = classify_class(args.n, args.k, args.profile)
    cat.save(args.out)
    print(f"({args.n},{args.k}) {args.profile}: {cat.counts()} -> {args.out}")
    return OK


def cmd_compare(args) -> int:
    cat = Catalog.load(args.catalog)
    rep = compare_to_expected(cat, ExpectedTable.load(args.expected), args.max_area)
    print("\n".join(rep.lines()))
    return ERROR if rep.hard else OK


def cmd_render(args) -> int:
    t = tiling_from_dict(json.loads(Path(args.solution).read_text()))
    text = render_ascii(t) if args.format == "ascii" else render_svg(t)
    _emit(text, args.out)
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="holey", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def piece_cmd(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--piece", required=True, help='visible cells, e.g. "0,0;1,1"')
        p.add_argument("--budget-nodes", type=int, default=10**7)
        return p

    p = sub.add_parser("enumerate", help="list the canonical pieces of a class")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = piece_cmd("solve", "search for a rectangle tiling")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exact", type=_rect, metavar="RxC")
    g.add_argument("--max-side", type=int, metavar="N")
    p.add_argument("--area-limit", type=int, default=144,
                   help="area cap of the smallest-rectangle sweep (default mode)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = piece_cmd("prove", "try to prove that no rectangle can be tiled")
    p.add_argument("--grid", type=int, default=100)
    p.add_argument("--band-depth", type=int, default=6)
    p.add_argument("--no-strips", action="store_true",
                   help="only run corner exhaustion, skip the band/strip fallback")
    p.set_defaults(func=cmd_prove)

    p = piece_cmd("bounds", "side bounds for any tileable rectangle")
    p.add_argument("--min-side", type=int, default=6)
    p.add_argument("--max-side", type=int, default=12)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("classify", help="classify a whole (n,k) class")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--profile", choices=sorted(PROFILES), default="desk")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("compare", help="diff a catalog against a table fixture")
    p.add_argument("--catalog", required=True)
    p.add_argument("--expected", required=True)
    p.add_argument("--max-area", type=int)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("render", help="draw a solution file")
    p.add_argument("--solution", required=True)
    p.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    p.add_argument("--out")
    p.set_defaults(func=cmd_render)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ShapeError, CatalogError, RenderError, ValueError, OSError, KeyError) as exc:
        print(f"holey: error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
