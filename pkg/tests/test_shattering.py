import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reductlab.lines import LineAttr, build_line_table
from reductlab.shattering import (
    brute_force_I,
    check_independent,
    quasicomplete_witness,
    shattering_dimension,
    vc_dimension,
)
from reductlab.tables import BINARY, complete_table, random_table

from conftest import make, tables


def test_witness_full_square():
    assert quasicomplete_witness({(0, 0), (0, 1), (1, 0), (1, 1)}) == ((0, 1), (0, 1))


def test_witness_missing_corner():
    assert quasicomplete_witness({(0, 0), (0, 1), (1, 0)}) is None


def test_witness_signs():
    pats = {(-1, -1), (-1, 1), (1, -1), (1, 1), (0, 0)}
    assert quasicomplete_witness(pats, order=(-1, 0, 1)) == ((-1, 1), (-1, 1))


def test_witness_allowed_values():
    pats = set(itertools.product((-1, 0, 1), repeat=2))
    assert quasicomplete_witness(pats, order=(-1, 0, 1)) == ((-1, 0), (-1, 0))
    assert quasicomplete_witness(pats, order=(-1, 0, 1), allowed={-1, 1}) == ((-1, 1), (-1, 1))


def test_witness_ragged():
    with pytest.raises(ValueError):
        quasicomplete_witness({(0,), (0, 1)})


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_dimension_complete_cube(n):
    t = complete_table(BINARY, n)
    assert shattering_dimension(t).dimension == n


def test_dimension_three_general_lines():
    t = build_line_table([LineAttr(1, 0, 0, "x"), LineAttr(0, 1, 0, "y"), LineAttr(1, 1, -10, "d")])
    res = shattering_dimension(t)
    assert t.N == 7
    assert res.dimension == 2
    assert brute_force_I(t) == 2


def test_dimension_single_row():
    assert shattering_dimension(make([("0", "1")], [0])).dimension == 0


def test_result_invariants_on_sample():
    t = random_table(("a", "b", "c"), 6, 40, "distinct", seed=9)
    res = shattering_dimension(t)
    proj = {tuple(r[c] for c in res.columns) for r in t.rows}
    assert len(res.columns) == res.dimension == len(res.witness)
    for pair in res.witness:
        assert len(set(pair)) == 2
    assert set(itertools.product(*res.witness)) <= proj


def test_two_rows_dimension_one():
    t = make([("0", "0", "1"), ("1", "0", "0")], [0, 0])
    assert brute_force_I(t) == 1
    assert shattering_dimension(t).dimension == 1


@settings(max_examples=200)
@given(tables(max_dim=7, max_rows=30))
def test_matches_brute_force(t):
    res = shattering_dimension(t)
    assert res.dimension == brute_force_I(t)
    assert 0 <= res.dimension <= t.dim


@settings(max_examples=100)
@given(tables(max_dim=8, max_rows=40, ks=(2,)))
def test_binary_equals_vc_dimension(t):
    assert shattering_dimension(t).dimension == vc_dimension(t.rows)


@given(tables(max_dim=6), st.data())
def test_downward_closed(t, data):
    res = shattering_dimension(t)
    if not res.columns:
        return
    keep = data.draw(st.sets(st.integers(0, res.dimension - 1)))
    sub_cols = [res.columns[i] for i in sorted(keep)]
    sub_pairs = [res.witness[i] for i in sorted(keep)]
    proj = {tuple(r[c] for c in sub_cols) for r in t.rows}
    assert set(itertools.product(*sub_pairs)) <= proj
    assert quasicomplete_witness(proj, t.alphabet.symbols) is not None


@given(tables(max_dim=6))
def test_full_dimension_iff_quasicomplete(t):
    full = quasicomplete_witness(t.rows, t.alphabet.symbols) is not None
    assert (shattering_dimension(t).dimension == t.dim) == full


def test_check_independent():
    assert check_independent({(0, 0), (0, 1), (1, 0), (1, 1)}, 2)
    assert not check_independent({(0, 0, 0), (1, 1, 1)}, 3)
    with pytest.raises(ValueError):
        check_independent({(0, 0)}, 3)


def test_brute_force_cap():
    with pytest.raises(ValueError):
        brute_force_I(complete_table(BINARY, 3), max_dim=2)
