import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reductlab.lines import LineAttr, build_line_table
from reductlab.tables import (
    BINARY,
    Alphabet,
    DecisionTable,
    TableError,
    closure_contains,
    complete_table,
    parse_table,
    project,
    random_table,
    relabel_decisions,
    serialize_table,
    stats,
    table_from_json,
    table_to_json,
)

from conftest import make, tables

MINIMAL = "alphabet: 0 1\nattributes: f g\n0 0 -> 0\n1 1 -> 1\n"


def test_parse_minimal():
    t = parse_table(MINIMAL)
    assert stats(t) == (2, 2, 2)
    assert t.attributes == ("f", "g")


def test_parse_comments_and_blank_lines():
    text = "# header\nalphabet: 0 1   # binary\n\nattributes: f g\n0 0 -> 0\n\n1 1 -> 1 # last\n"
    assert parse_table(text) == parse_table(MINIMAL)


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("alphabet: 0 1\nattributes: f g\n0 0 -> 0\n0 0 -> 1\n", "duplicate row"),
        ("alphabet: 0 1\nattributes: f g\n0 2 -> 0\n", "not in alphabet"),
        ("alphabet: 0 1\nattributes: f g\n0 1 -> x\n", "malformed decision"),
        ("alphabet: 0 1\nattributes: f g\n0 1 -> -1\n", "malformed decision"),
        ("alphabet: 0 1\nattributes: f f\n0 1 -> 0\n", "duplicate attribute"),
        ("alphabet: 0\nattributes: f\n0 -> 0\n", "at least 2"),
        ("alphabet: 0 1\nattributes: f g\n0 1 0\n", "missing '->'"),
        ("alphabet: 0 1\nattributes: f g\n0 -> 0\n", "expected 2"),
        ("attributes: f g\nalphabet: 0 1\n", "alphabet:"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(TableError, match=fragment):
        parse_table(text)


def test_parse_error_reports_line_and_column():
    with pytest.raises(TableError) as info:
        parse_table("alphabet: 0 1\nattributes: f g\n0 0 -> 0\n0 7 -> 1\n")
    assert info.value.line == 4
    assert info.value.column == 2


def test_crossing_lines_round_trip():
    t = build_line_table([LineAttr(1, 0, 0, "x"), LineAttr(0, 1, 0, "y")])
    assert t.N == 4
    assert parse_table(serialize_table(t)) == t


def test_serialization_is_canonical():
    t = make([("1", "1"), ("0", "0")], [5, 7])
    assert serialize_table(t) == "alphabet: 0 1\nattributes: f0 f1\n0 0 -> 7\n1 1 -> 5\n"


def test_canonical_order_follows_alphabet_not_strings():
    signs = Alphabet(("-1", "0", "+1"))
    t = make([("+1",), ("-1",), ("0",)], [0, 1, 2], alphabet=signs)
    assert serialize_table(t).splitlines()[2:] == ["-1 -> 1", "0 -> 2", "+1 -> 0"]


@given(tables())
def test_round_trip_text_and_json(t):
    assert parse_table(serialize_table(t)) == t
    assert table_from_json(json.dumps(table_to_json(t))) == t


def test_stats_examples(square):
    assert stats(square) == (4, 4, 2)
    assert stats(relabel_decisions(square, [0, 0, 0, 0])) == (4, 1, 2)
    lines = build_line_table([LineAttr(1, 0, 0, "x"), LineAttr(0, 1, 0, "y")])
    assert stats(lines) == (4, 4, 2)


def test_project_identity(square):
    assert project(square, [0, 1]) == square


def test_project_first_column_keeps_earliest_decision(square):
    # rows in order 00->0, 01->1, 10->2, 11->3
    p = project(square, [0])
    assert p.as_mapping() == {("0",): 0, ("1",): 2}


def test_project_empty_set(square):
    p = project(square, [])
    assert p.rows == ((),)
    assert p.decisions == (0,)


def test_project_policies(square):
    assert project(square, [1], "max").as_mapping() == {("0",): 2, ("1",): 3}
    assert project(square, [1], "min").as_mapping() == {("0",): 0, ("1",): 1}
    assert project(square, [1], lambda ds: sum(ds)).as_mapping() == {("0",): 2, ("1",): 4}


def test_project_out_of_range(square):
    with pytest.raises(IndexError):
        project(square, [2])


def test_relabel(square):
    assert relabel_decisions(square, {i: d for i, d in enumerate(square.decisions)}) == square
    assert relabel_decisions(square, lambda i: 3).cl == 1
    assert relabel_decisions(square, [9, 8, 7, 6]).cl == 4
    with pytest.raises(TableError):
        relabel_decisions(square, [0, 1, 2, -1])
    with pytest.raises(TableError):
        relabel_decisions(square, {0: 1})


def test_closure_contains_examples(square):
    assert closure_contains(square, relabel_decisions(square, [1, 1, 0, 0]))
    single = make([("0",)], [0], attributes=["f0"])
    assert not closure_contains(square, single)
    assert closure_contains(square, make([("0",), ("1",)], [4, 4], attributes=["f1"]))
    # attribute order must be preserved
    swapped = DecisionTable(BINARY, ["f1", "f0"], square.rows, square.decisions)
    assert not closure_contains(square, swapped)
    with pytest.raises(TableError):
        closure_contains(square, make([("0",)], [0], alphabet=Alphabet(("0", "2"))))


@given(tables(), st.data())
def test_projection_lies_in_closure(t, data):
    cols = data.draw(st.sets(st.integers(0, t.dim - 1)))
    for policy in ("first", "min", "max"):
        p = project(t, cols, policy)
        assert closure_contains(t, p)
        assert p.N <= t.N and p.dim <= t.dim
    assert project(t, cols).cl <= t.cl


@given(tables())
def test_stats_consistent(t):
    n, cl, dim = stats(t)
    assert cl <= n <= t.k ** dim


def test_random_table_full_cube_and_determinism():
    t = random_table(BINARY, 3, 8, "distinct", seed=11)
    assert t.row_set() == complete_table(BINARY, 3).row_set()
    assert t.cl == 8
    assert random_table(BINARY, 3, 8, "distinct", seed=11).rows == t.rows


def test_random_table_random_classes():
    t = random_table(BINARY, 10, 40, "random:5", seed=3)
    assert t.N == 40 and t.cl <= 5


def test_random_table_too_many_rows():
    with pytest.raises(TableError):
        random_table(BINARY, 2, 5)


def test_decision_table_rejects_bad_values():
    with pytest.raises(TableError):
        make([("0", "0"), ("0", "0")], [0, 1])
    with pytest.raises(TableError):
        make([("0", "0")], [-1])
    with pytest.raises(TableError):
        make([("0", "0")], [True])
