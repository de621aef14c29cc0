import pytest
from hypothesis import strategies as st

from reductlab.tables import BINARY, Alphabet, DecisionTable, complete_table, random_table


@pytest.fixture
def square():
    """Complete {0,1}^2 table with decisions 0..3."""
    return complete_table(BINARY, 2)


@st.composite
def tables(draw, max_dim=6, max_rows=20, ks=(2, 3)):
    k = draw(st.sampled_from(ks))
    dim = draw(st.integers(1, max_dim))
    rows = draw(st.integers(1, min(max_rows, k ** dim)))
    classes = draw(st.integers(1, 5))
    seed = draw(st.integers(0, 2**32 - 1))
    mode = draw(st.sampled_from(["distinct", f"random:{classes}", "constant"]))
    return random_table(Alphabet(tuple(str(v) for v in range(k))), dim, rows, mode, seed)


def make(rows, decisions, alphabet=BINARY, attributes=None):
    dim = len(rows[0]) if rows else 0
    attributes = attributes or [f"f{i}" for i in range(dim)]
    return DecisionTable(alphabet, attributes, [tuple(r) for r in rows], decisions)
