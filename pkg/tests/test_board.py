import random

import pytest

from holey.board import Board, IllegalMove, Placement
from holey.geometry import HoleyPolyomino, enumerate_holey

GAP = HoleyPolyomino.parse("0,0;0,2")
DIAG = HoleyPolyomino.parse("0,0;1,1")


def test_covering_examples():
    assert len(Board(10, 10, GAP).placements_covering((0, 0))) == 2
    assert Board(1, 4, DIAG).placements_covering((0, 0)) == []
    # only the main-diagonal image reaches (1,1) inside 2x2; the other
    # diagonal covers (0,1) and (1,0)
    found = Board(2, 2, DIAG).placements_covering((1, 1))
    assert found == [Placement(0, 0, 0)]
    assert Board(2, 2, DIAG).placements_covering((0, 1)) != []


@pytest.mark.parametrize("board,target,count", [
    (Board(10, 10, GAP), (0, 0), 2), (Board(1, 4, DIAG), (0, 0), 0), (Board(2, 2, DIAG), (1, 1), 1),
])
def test_fill_count_matches_list(board, target, count):
    assert board.fill_count(target) == count == len(board.placements_covering(target))


def test_covering_is_independently_legal():
    piece = HoleyPolyomino.parse("0,0;0,1;1,2")
    b = Board(5, 5, piece)
    b.apply(Placement(0, 0, 0))
    for target in [(1, 1), (2, 2), (4, 4)]:
        got = b.placements_covering(target)
        assert len(set(got)) == len(got)
        for p in got:
            cells = p.footprint(piece)
            assert target in cells
            assert all(0 <= r < 5 and 0 <= c < 5 and b.is_empty((r, c)) for r, c in cells)


def test_target_errors():
    b = Board(3, 3, GAP)
    b.apply(Placement(0, 0, 0))
    with pytest.raises(IllegalMove):
        b.fill_count((0, 0))
    with pytest.raises(IllegalMove):
        b.placements_covering((5, 0))


def test_apply_bounds_and_first_empty():
    b = Board(10, 10, GAP)
    assert b.first_empty_in_bounds() is None
    b.apply(Placement(0, 0, 0))
    assert (b.bound_rows, b.bound_cols) == (1, 3)
    assert b.first_empty_in_bounds() == (0, 1)
    b.undo()
    assert (b.bound_rows, b.bound_cols) == (0, 0)


def test_full_2x2_has_no_empty():
    b = Board(2, 2, DIAG)
    for p in b.placements_covering((0, 0)):
        if b.is_legal(p):
            b.apply(p)
            break
    b.apply(b.placements_covering((0, 1))[0])
    assert b.first_empty_in_bounds() is None


def test_illegal_apply_leaves_board_unchanged():
    b = Board(3, 3, GAP)
    b.apply(Placement(0, 0, 0))
    before = b.snapshot()
    with pytest.raises(IllegalMove):
        b.apply(Placement(0, 0, 0))
    with pytest.raises(IllegalMove):
        b.apply(Placement(0, 0, 2))  # would leave the board
    assert b.snapshot() == before


def test_undo_empty_raises():
    with pytest.raises(IllegalMove):
        Board(2, 2, GAP).undo()


def test_disjoint_applies_commute():
    a, b = Board(2, 4, GAP), Board(2, 4, GAP)
    p, q = Placement(0, 0, 0), Placement(0, 1, 1)
    a.apply(p); a.apply(q)
    b.apply(q); b.apply(p)
    assert a.occupied == b.occupied
    assert {x for x in a.cells if x >= 0} == {x for x in b.cells if x >= 0}


def test_dump():
    b = Board(1, 4, GAP)
    b.apply(Placement(0, 0, 0))
    assert b.dump() == "a.a."
    b.apply(Placement(0, 0, 1))
    assert b.dump() == "abab"


def test_exact_cover_and_replay():
    piece = HoleyPolyomino.parse("0,0;0,1;1,2")
    rng = random.Random(3)
    b = Board(6, 6, piece)
    for _ in range(6):
        empty = [(r, c) for r in range(6) for c in range(6) if b.is_empty((r, c))]
        opts = [p for t in empty for p in b.placements_covering(t)]
        if not opts:
            break
        b.apply(rng.choice(opts))
    covered = [cell for p in b.placements for cell in p.footprint(piece)]
    assert len(covered) == len(set(covered)) == sum(x >= 0 for x in b.cells)
    fresh = Board(6, 6, piece)
    for p in b.placements:
        fresh.apply(p)
    assert fresh.snapshot() == b.snapshot()


def test_apply_undo_round_trips_randomized():
    """10^4 random placement sequences, each unwound back to the start."""
    pieces = enumerate_holey(3, 1) + enumerate_holey(2, 2) + enumerate_holey(4, 1)[:4]
    rng = random.Random(2024)
    boards = {}
    for trial in range(10_000):
        piece = pieces[trial % len(pieces)]
        h, w = rng.randint(3, 6), rng.randint(3, 6)
        key = (piece, h, w)
        if key not in boards:
            boards[key] = Board(h, w, piece)
        b = boards[key]
        start = b.snapshot()
        trail = []
        for _ in range(rng.randint(1, 6)):
            moves = [mv for mv in b.table.moves if not mv.mask & b.occupied]
            if not moves:
                break
            trail.append(b.snapshot())
            b.apply(rng.choice(moves).placement)
        while trail:
            b.undo()
            assert b.snapshot() == trail.pop()
        assert b.snapshot() == start
