"""Decision tables over a finite alphabet.

A table has named columns, pairwise distinct rows (tuples of alphabet
symbols) and one nonnegative integer decision per row.  Tables are
immutable; every transformation returns a new table.

Text format (``.dtab``)::

    alphabet: 0 1
    attributes: f g
    0 0 -> 0
    1 1 -> 1
"""

from __future__ import annotations

import itertools
import json
import random
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

Row = tuple


class TableError(ValueError):
    """Raised for malformed or invalid decision tables.

    ``line`` and ``column`` are 1-based positions in the source text when
    the error comes from the parser, otherwise ``None``.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple

    def __post_init__(self):
        symbols = tuple(str(s) for s in self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if len(set(symbols)) != len(symbols):
            raise TableError(f"alphabet symbols must be distinct: {symbols}")
        if len(symbols) < 2:
            raise TableError(f"alphabet needs at least 2 symbols, got {len(symbols)}")

    @property
    def k(self) -> int:
        return len(self.symbols)

    def index(self, symbol: str) -> int:
        return self.symbols.index(symbol)

    def __contains__(self, symbol) -> bool:
        return symbol in self.symbols

    def __iter__(self):
        return iter(self.symbols)


BINARY = Alphabet(("0", "1"))
SIGNS = Alphabet(("-1", "0", "+1"))


@dataclass(frozen=True, eq=False)
class DecisionTable:
    """A B-decision table.

    Row order is kept (it drives the merge policy of :func:`project`), but
    equality ignores it: two tables are equal when they have the same
    alphabet, the same attribute sequence and the same row -> decision map.
    """

    alphabet: Alphabet
    attributes: tuple
    rows: tuple
    decisions: tuple

    def __post_init__(self):
        attributes = tuple(str(a) for a in self.attributes)
        rows = tuple(tuple(str(v) for v in r) for r in self.rows)
        decisions = tuple(self.decisions)
        object.__setattr__(self, "attributes", attributes)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "decisions", decisions)

        if len(set(attributes)) != len(attributes):
            raise TableError(f"duplicate attribute names: {attributes}")
        if len(rows) != len(decisions):
            raise TableError("rows and decisions differ in length")
        dim = len(attributes)
        seen = set()
        for i, (row, d) in enumerate(zip(rows, decisions)):
            if len(row) != dim:
                raise TableError(f"row {i} has {len(row)} values, expected {dim}")
            for v in row:
                if v not in self.alphabet:
                    raise TableError(f"row {i}: value {v!r} not in alphabet")
            if isinstance(d, bool) or not isinstance(d, int) or d < 0:
                raise TableError(f"row {i}: decision must be a nonnegative integer, got {d!r}")
            if row in seen:
                raise TableError(f"duplicate row {' '.join(row)}")
            seen.add(row)

    @property
    def N(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        return len(self.attributes)

    @property
    def cl(self) -> int:
        return len(set(self.decisions))

    @property
    def k(self) -> int:
        return self.alphabet.k

    def row_set(self) -> frozenset:
        return frozenset(self.rows)

    def as_mapping(self) -> dict:
        return dict(zip(self.rows, self.decisions))

    def __eq__(self, other):
        if not isinstance(other, DecisionTable):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.attributes == other.attributes
            and self.as_mapping() == other.as_mapping()
        )

    def __hash__(self):
        return hash((self.alphabet, self.attributes, frozenset(self.as_mapping().items())))

    def __repr__(self):
        return f"DecisionTable(N={self.N}, cl={self.cl}, dim={self.dim}, k={self.k})"


def stats(table: DecisionTable) -> tuple[int, int, int]:
    """Return ``(N, cl, dim)``."""
    return table.N, table.cl, table.dim


def check_indices(table: DecisionTable, indices: Iterable[int]) -> tuple[int, ...]:
    """Validate an attribute set against ``table``; return it sorted."""
    out = sorted(set(indices))
    for i in out:
        if not isinstance(i, int) or not 0 <= i < table.dim:
            raise IndexError(f"attribute index {i} out of range for dim {table.dim}")
    return tuple(out)


def canonical_order(table: DecisionTable) -> list[int]:
    """Row positions sorted lexicographically under the alphabet order."""
    pos = {s: i for i, s in enumerate(table.alphabet.symbols)}
    return sorted(range(table.N), key=lambda r: tuple(pos[v] for v in table.rows[r]))


def canonicalize(table: DecisionTable) -> DecisionTable:
    order = canonical_order(table)
    return DecisionTable(
        table.alphabet,
        table.attributes,
        [table.rows[i] for i in order],
        [table.decisions[i] for i in order],
    )


def project(
    table: DecisionTable,
    indices: Iterable[int],
    policy: str | Callable[[Sequence[int]], int] = "first",
) -> DecisionTable:
    """Keep only the given columns and merge rows that became equal.

    ``policy`` picks the decision of a merged group: ``"first"`` keeps the
    decision of the earliest original row, ``"min"``/``"max"`` take the
    extreme decision, and a callable receives the group's decisions (in
    original row order) and returns the new one.
    """
    cols = check_indices(table, indices)
    groups: dict[tuple, list[int]] = {}
    for row, d in zip(table.rows, table.decisions):
        groups.setdefault(tuple(row[c] for c in cols), []).append(d)

    if policy == "first":
        pick = lambda ds: ds[0]  # noqa: E731
    elif policy == "min":
        pick = min
    elif policy == "max":
        pick = max
    elif callable(policy):
        pick = policy
    else:
        raise ValueError(f"unknown merge policy {policy!r}")

    return DecisionTable(
        table.alphabet,
        [table.attributes[c] for c in cols],
        list(groups),
        [pick(ds) for ds in groups.values()],
    )


def relabel_decisions(
    table: DecisionTable, mapping: Mapping[int, int] | Sequence[int] | Callable[[int], int]
) -> DecisionTable:
    """Replace the decision of every row; ``mapping`` is keyed by row position."""
    if callable(mapping):
        new = [mapping(i) for i in range(table.N)]
    elif isinstance(mapping, Mapping):
        missing = [i for i in range(table.N) if i not in mapping]
        if missing:
            raise TableError(f"decision map is not total, missing rows {missing}")
        new = [mapping[i] for i in range(table.N)]
    else:
        new = list(mapping)
        if len(new) != table.N:
            raise TableError(f"expected {table.N} decisions, got {len(new)}")
    for d in new:
        if isinstance(d, bool) or not isinstance(d, int) or d < 0:
            raise TableError(f"decision must be a nonnegative integer, got {d!r}")
    return DecisionTable(table.alphabet, table.attributes, table.rows, new)


def closure_contains(t1: DecisionTable, t2: DecisionTable) -> bool:
    """Whether ``t2`` belongs to the closure [t1].

    Decisions are ignored since the closure allows arbitrary relabeling.
    Attributes of ``t2`` must appear in ``t1`` in the same relative order.
    """
    if t1.alphabet != t2.alphabet:
        raise TableError("alphabet mismatch")
    pos = {name: i for i, name in enumerate(t1.attributes)}
    try:
        cols = [pos[name] for name in t2.attributes]
    except KeyError:
        return False
    if cols != sorted(cols):
        return False
    projected = {tuple(r[c] for c in cols) for r in t1.rows}
    return projected == t2.row_set()


# ---------------------------------------------------------------------------
# decision modes

def parse_decision_mode(token: str):
    """Parse ``distinct``, ``constant[:d]`` or ``random:c``.

    Returns a ``(kind, arg)`` pair.
    """
    if token == "distinct":
        return "distinct", None
    if token == "constant":
        return "constant", 0
    kind, sep, arg = token.partition(":")
    if not sep or kind not in ("constant", "random"):
        raise ValueError(f"unknown decision mode {token!r}")
    try:
        value = int(arg)
    except ValueError:
        raise ValueError(f"decision mode {token!r}: {arg!r} is not an integer") from None
    if kind == "constant" and value < 0:
        raise ValueError(f"constant decision must be >= 0, got {value}")
    if kind == "random" and value < 1:
        raise ValueError(f"random mode needs at least one class, got {value}")
    return kind, value


def make_decisions(n: int, mode, seed: int | None = None) -> list[int]:
    """Decisions for ``n`` rows under a decision mode.

    ``mode`` is a mode token, a parsed ``(kind, arg)`` pair, or an explicit
    sequence of decisions (the from-file case).
    """
    if isinstance(mode, str):
        mode = parse_decision_mode(mode)
    if isinstance(mode, tuple) and len(mode) == 2 and isinstance(mode[0], str):
        kind, arg = mode
        if kind == "distinct":
            return list(range(n))
        if kind == "constant":
            return [arg] * n
        if kind == "random":
            if seed is None:
                raise ValueError("random decisions require a seed")
            rng = random.Random(seed)
            return [rng.randrange(arg) for _ in range(n)]
        raise ValueError(f"unknown decision mode {kind!r}")
    decisions = list(mode)
    if len(decisions) != n:
        raise ValueError(f"expected {n} decisions, got {len(decisions)}")
    return decisions


def random_table(
    alphabet: Alphabet | Sequence[str],
    dim: int,
    rows: int,
    decisions="distinct",
    seed: int = 0,
) -> DecisionTable:
    """A seeded random table with ``rows`` distinct tuples of length ``dim``."""
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet(tuple(alphabet))
    k = alphabet.k
    space = k ** dim
    if rows > space:
        raise TableError(f"{rows} rows requested but only {space} tuples exist")
    rng = random.Random(seed)
    if space <= 4 * rows or space <= 64:
        chosen = rng.sample(range(space), rows)
    else:
        picked: set[int] = set()
        chosen = []
        while len(chosen) < rows:
            x = rng.randrange(space)
            if x not in picked:
                picked.add(x)
                chosen.append(x)
    tuples = []
    for code in chosen:
        digits = []
        for _ in range(dim):
            code, r = divmod(code, k)
            digits.append(alphabet.symbols[r])
        tuples.append(tuple(reversed(digits)))
    ds = make_decisions(rows, decisions, seed=rng.randrange(2**32))
    return DecisionTable(alphabet, [f"f{i}" for i in range(dim)], tuples, ds)


def complete_table(alphabet: Alphabet | Sequence[str], dim: int, decisions="distinct", seed=None):
    """All ``k**dim`` tuples, in canonical order."""
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet(tuple(alphabet))
    tuples = list(itertools.product(alphabet.symbols, repeat=dim))
    return DecisionTable(
        alphabet,
        [f"f{i}" for i in range(dim)],
        tuples,
        make_decisions(len(tuples), decisions, seed),
    )


# ---------------------------------------------------------------------------
# serialization

def serialize_table(table: DecisionTable) -> str:
    lines = [
        "alphabet: " + " ".join(table.alphabet.symbols),
        ("attributes: " + " ".join(table.attributes)).rstrip(),
    ]
    for i in canonical_order(table):
        lines.append(" ".join(table.rows[i] + ("->", str(table.decisions[i]))))
    return "\n".join(lines) + "\n"


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_table(text: str) -> DecisionTable:
    lines = list(_content_lines(text))
    if len(lines) < 2:
        raise TableError("expected 'alphabet:' and 'attributes:' header lines")

    lineno, line = lines[0]
    key, _, rest = line.partition(":")
    if key.strip() != "alphabet":
        raise TableError("first line must start with 'alphabet:'", lineno, 1)
    try:
        alphabet = Alphabet(tuple(rest.split()))
    except TableError as e:
        raise TableError(str(e), lineno) from None

    lineno, line = lines[1]
    key, _, rest = line.partition(":")
    if key.strip() != "attributes":
        raise TableError("second line must start with 'attributes:'", lineno, 1)
    attributes = rest.split()
    if len(set(attributes)) != len(attributes):
        raise TableError(f"duplicate attribute names: {attributes}", lineno)

    rows, decisions, seen = [], [], set()
    for lineno, line in lines[2:]:
        tokens = line.split()
        if "->" not in tokens:
            raise TableError("row is missing '->'", lineno)
        arrow = tokens.index("->")
        values, tail = tokens[:arrow], tokens[arrow + 1:]
        if len(values) != len(attributes):
            raise TableError(
                f"row has {len(values)} values, expected {len(attributes)}", lineno
            )
        for col, v in enumerate(values, 1):
            if v not in alphabet:
                raise TableError(f"value {v!r} not in alphabet", lineno, col)
        if len(tail) != 1 or not re.fullmatch(r"[0-9]+", tail[0]):
            raise TableError(f"malformed decision {' '.join(tail)!r}", lineno, arrow + 2)
        row = tuple(values)
        if row in seen:
            raise TableError(f"duplicate row {' '.join(row)}", lineno)
        seen.add(row)
        rows.append(row)
        decisions.append(int(tail[0]))
    return DecisionTable(alphabet, attributes, rows, decisions)


def table_to_json(table: DecisionTable) -> dict:
    order = canonical_order(table)
    return {
        "alphabet": list(table.alphabet.symbols),
        "attributes": list(table.attributes),
        "rows": [list(table.rows[i]) for i in order],
        "decisions": [table.decisions[i] for i in order],
    }


def table_from_json(data: dict | str) -> DecisionTable:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        return DecisionTable(
            Alphabet(tuple(data["alphabet"])),
            data["attributes"],
            [tuple(r) for r in data["rows"]],
            data["decisions"],
        )
    except KeyError as e:
        raise TableError(f"missing field {e.args[0]!r}") from None


def load_table(path) -> DecisionTable:
    with open(path, encoding="utf-8") as fh:
        return parse_table(fh.read())
