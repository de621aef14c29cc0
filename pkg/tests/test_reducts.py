import itertools

import pytest
from hypothesis import given, settings

from reductlab.reducts import (
    brute_force_R,
    discernibility_pairs,
    enumerate_reducts,
    is_reduct,
    is_test,
    min_reduct,
)
from reductlab.tables import BINARY, complete_table, project, relabel_decisions

from conftest import make, tables


def test_is_test_examples(square):
    assert is_test(square, [0, 1])
    assert not is_test(square, [0])
    assert is_test(relabel_decisions(square, [0, 0, 0, 0]), [])


def test_is_test_index_error(square):
    with pytest.raises(IndexError):
        is_test(square, [5])


def test_discernibility_pairs(square):
    assert discernibility_pairs(relabel_decisions(square, [1, 1, 1, 1])) == []
    assert len(discernibility_pairs(square)) == 6
    (pair,) = discernibility_pairs(make([("0", "0"), ("1", "1")], [0, 1]))
    assert (pair.i, pair.j, pair.columns) == (0, 1, frozenset({0, 1}))


@given(tables())
def test_pairs_match_row_differences(t):
    pairs = discernibility_pairs(t)
    expected = sum(1 for i, j in itertools.combinations(range(t.N), 2) if t.decisions[i] != t.decisions[j])
    assert len(pairs) == expected
    for p in pairs:
        assert t.decisions[p.i] != t.decisions[p.j]
        assert p.columns
        assert p.columns == {c for c in range(t.dim) if t.rows[p.i][c] != t.rows[p.j][c]}


@given(tables(max_dim=5))
def test_test_iff_hitting_set(t):
    pairs = discernibility_pairs(t)
    for size in range(t.dim + 1):
        for cols in itertools.combinations(range(t.dim), size):
            hits = all(p.columns & set(cols) for p in pairs)
            assert is_test(t, cols) == hits


def test_min_reduct_constant_decisions(square):
    assert min_reduct(relabel_decisions(square, [2, 2, 2, 2])).cardinality == 0


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_min_reduct_complete_cube(n):
    t = complete_table(BINARY, n)
    assert min_reduct(t).cardinality == n
    assert brute_force_R(t) == n


def test_min_reduct_single_column():
    t = make([("0", "0"), ("0", "1"), ("1", "0"), ("1", "1")], [0, 0, 1, 1])
    assert min_reduct(t).reduct == (0,)


def test_min_reduct_lexicographic_tie_break():
    # every singleton discerns the pair; the smallest index wins
    t = make([("0", "0", "0"), ("1", "1", "1")], [0, 1])
    assert min_reduct(t).reduct == (0,)
    # columns 1 and 2 both work but 0 does not
    t = make([("0", "0", "0"), ("0", "1", "1")], [0, 1])
    assert min_reduct(t).reduct == (1,)


@settings(max_examples=200)
@given(tables(max_dim=8, max_rows=25))
def test_min_reduct_matches_brute_force(t):
    res = min_reduct(t)
    assert res.cardinality == brute_force_R(t)
    assert is_test(t, res.reduct)
    assert is_reduct(t, res.reduct)
    # lexicographically smallest among minimum tests
    first = next(
        c for c in itertools.combinations(range(t.dim), res.cardinality) if is_test(t, c)
    )
    assert res.reduct == first


@given(tables())
def test_log_and_projection_bounds(t):
    if t.cl < 2:
        return
    res = min_reduct(t)
    assert t.k ** res.cardinality >= t.cl
    assert project(t, res.reduct).N >= t.cl


def test_enumerate_reducts_examples(square):
    assert enumerate_reducts(relabel_decisions(square, [0] * 4)).reducts == [()]
    assert enumerate_reducts(square).reducts == [(0, 1)]
    en = enumerate_reducts(make([("0", "0"), ("1", "1")], [0, 1]))
    assert en.reducts == [(0,), (1,)] and not en.truncated


def test_enumerate_reducts_cap():
    t = make([("0",) * 5, ("1",) * 5], [0, 1])
    en = enumerate_reducts(t, cap=3)
    assert en.reducts == [(0,), (1,), (2,)]
    assert en.truncated
    with pytest.raises(ValueError):
        enumerate_reducts(t, cap=0)


@settings(max_examples=60)
@given(tables(max_dim=5, max_rows=15))
def test_enumerate_reducts_matches_scan(t):
    expected = [
        c
        for size in range(t.dim + 1)
        for c in itertools.combinations(range(t.dim), size)
        if is_reduct(t, c)
    ]
    assert enumerate_reducts(t).reducts == expected


def test_brute_force_cap():
    t = complete_table(BINARY, 3)
    with pytest.raises(ValueError):
        brute_force_R(t, max_dim=2)
