from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holey.geometry import (HoleyPolyomino, ShapeError, canonical_form, enumerate_connected,
                            enumerate_holey, is_connected, minimal_connector, normalize,
                            parse_cells, steiner_k, symmetry_images, transform)
from oracles import all_images, steiner_bfs

cell_sets = st.sets(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=5)


def test_normalize_shifts_to_origin():
    assert normalize([(3, 5), (4, 7)]) == ((0, 0), (1, 2))


def test_parse_round_trip():
    p = HoleyPolyomino.parse("0,2;0,0")
    assert p.visible == ((0, 0), (0, 2))
    assert HoleyPolyomino.parse(p.encode()) == p
    assert parse_cells(" 1,1 ; 2,2 ") == ((0, 0), (1, 1))


@pytest.mark.parametrize("bad", ["", "0,0;0,0", "0;1", "a,b"])
def test_parse_rejects(bad):
    with pytest.raises(ShapeError):
        HoleyPolyomino.parse(bad)


def test_transform_ids():
    cells = [(0, 0), (0, 1), (1, 0)]
    assert transform(cells, 0) == ((0, 0), (0, 1), (1, 0))
    # reflection then counter-clockwise rotations give all 4 L orientations
    assert len({transform(cells, t) for t in range(8)}) == 4


def test_symmetric_pieces_have_fewer_images():
    assert len(symmetry_images([(0, 0), (0, 2)])) == 2
    assert len(symmetry_images([(0, 0), (1, 1)])) == 2
    assert len(symmetry_images([(0, 0), (0, 1), (1, 0)])) == 4
    assert len(symmetry_images([(0, 0), (0, 1), (0, 2), (1, 0)])) == 8


@pytest.mark.parametrize("cells,k", [
    ([(0, 0), (0, 1)], 0),
    ([(0, 0), (0, 2)], 1),
    ([(0, 0), (1, 1)], 1),
    ([(0, 0), (0, 2), (2, 0), (2, 2)], 3),
])
def test_steiner_examples(cells, k):
    assert steiner_k(cells) == k


def test_minimal_connector_connects():
    cells = [(0, 0), (0, 2), (2, 0), (2, 2)]
    extra = minimal_connector(cells)
    assert len(extra) == 3
    assert is_connected(set(cells) | set(extra))


@settings(deadline=None)
@given(cell_sets)
def test_steiner_zero_iff_connected(cells):
    assert (steiner_k(cells) == 0) == is_connected(cells)


@settings(max_examples=60, deadline=None)
@given(st.sets(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=5))
def test_steiner_matches_bfs_on_random_sets(cells):
    assert steiner_k(cells) == steiner_bfs(cells, margin=1)


@settings(deadline=None)
@given(cell_sets, st.integers(0, 7))
def test_canonical_form_invariant_random(cells, t):
    assert canonical_form(transform(cells, t)) == canonical_form(cells)


def test_images_match_oracle():
    for p in enumerate_holey(4, 1):
        assert {frozenset(im.cells) for im in p.images} == all_images(p.visible)


def test_connected_counts():
    assert [len(enumerate_connected(m)) for m in range(1, 9)] == [1, 1, 2, 5, 12, 35, 108, 369]


def test_connected_range():
    with pytest.raises(ValueError):
        enumerate_connected(11)


def test_n0_is_plain_polyominoes():
    assert [p.visible for p in enumerate_holey(5, 0)] == enumerate_connected(5)


def test_enumeration_sorted_and_unique():
    ps = enumerate_holey(4, 2)
    keys = [p.canonical_key for p in ps]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)
    assert all(p.n == 4 and p.k == 2 for p in ps)


def _brute_class(n, k):
    side = n + k
    grid = [(r, c) for r in range(side) for c in range(side)]
    found = set()
    for cells in combinations(grid, n):
        if min(r for r, _ in cells) or min(c for _, c in cells):
            continue
        if steiner_bfs(cells) == k:
            found.add(min(tuple(sorted(im)) for im in all_images(cells)))
    return found


@pytest.mark.parametrize("n,k", [(2, 1), (2, 2), (3, 1), (2, 3)])
def test_enumeration_complete_against_brute_force(n, k):
    ours = {p.canonical_key for p in enumerate_holey(n, k)}
    assert ours == _brute_class(n, k)


def test_transparent_cells_form_a_connector():
    p = HoleyPolyomino.parse("0,0;0,2;2,0;2,2")
    assert p.k == 3
    assert is_connected(set(p.visible) | set(p.transparent()))


def test_enumerate_range():
    with pytest.raises(ValueError):
        enumerate_holey(6, 5)
    with pytest.raises(ValueError):
        enumerate_holey(0, 1)
