"""Quasicompleteness witnesses and the dimension I(T).

A set of patterns is quasicomplete when every column admits a pair of
distinct values whose full product is contained in the set.  I(T) is the
largest column set whose projection of Rows(T) is quasicomplete; decisions
play no role.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .tables import DecisionTable

DEFAULT_DIM_CAP = 24
BRUTE_FORCE_DIM_CAP = 10


@dataclass(frozen=True)
class ShatterResult:
    dimension: int
    columns: tuple
    witness: tuple  # one (a, b) value pair per column


def _check_lengths(patterns) -> int | None:
    lengths = {len(p) for p in patterns}
    if len(lengths) > 1:
        raise ValueError(f"ragged patterns, lengths {sorted(lengths)}")
    return lengths.pop() if lengths else None


def _value_order(patterns, order: Sequence | None):
    if order is not None:
        rank = {v: i for i, v in enumerate(order)}
    else:
        rank = {}
    return lambda v: (rank.get(v, len(rank)), str(v))


def _witness(patterns: set, key) -> tuple | None:
    """Lex-first witness for a nonempty set of equal-length tuples."""
    if not patterns:
        return None
    n = len(next(iter(patterns)))
    if n == 0:
        return ()
    by_head: dict = {}
    for p in patterns:
        by_head.setdefault(p[0], set()).add(p[1:])
    values = sorted(by_head, key=key)
    for a, b in itertools.combinations(values, 2):
        # the remaining columns must work for both choices of the first value
        rest = _witness(by_head[a] & by_head[b], key)
        if rest is not None:
            return ((a, b),) + rest
    return None


def quasicomplete_witness(
    patterns: Iterable[Sequence],
    order: Sequence | None = None,
    allowed: Iterable | None = None,
):
    """Per-column value pairs whose product lies inside ``patterns``, or ``None``.

    ``order`` fixes the value order used for tie-breaking (for example the
    table alphabet); pairs are reported in that order.  ``allowed``
    restricts the values a witness may use.
    """
    pats = {tuple(p) for p in patterns}
    _check_lengths(pats)
    if allowed is not None:
        allowed = set(allowed)
        pats = {p for p in pats if allowed.issuperset(p)}
    return _witness(pats, _value_order(pats, order))


def _projected(rows: Iterable[tuple], cols: Sequence[int]) -> set:
    return {tuple(r[c] for c in cols) for r in rows}


def shattering_dimension(table: DecisionTable, max_dim: int = DEFAULT_DIM_CAP) -> ShatterResult:
    """I(T) with the lexicographically first witnessing column set.

    Column sets are explored level by level; a set is only tried when all
    of its one-smaller subsets admit a witness, which is sound because
    witnesses restrict to subsets.
    """
    if table.dim > max_dim:
        raise ValueError(f"dim {table.dim} exceeds cap {max_dim}")
    key = _value_order(None, table.alphabet.symbols)
    rows = table.row_set()
    full = tuple(range(table.dim))
    if table.dim and 2 ** table.dim <= table.N:
        w = _witness(set(rows), key)
        if w is not None:
            return ShatterResult(table.dim, full, w)
    best = ShatterResult(0, (), ())
    level: dict[tuple, tuple] = {}
    for c in range(table.dim):
        w = _witness(_projected(rows, (c,)), key)
        if w is not None:
            level[(c,)] = w
    size = 1
    while level:
        first = min(level)
        best = ShatterResult(size, first, level[first])
        if 2 ** (size + 1) > table.N:
            break
        good = set(level)
        nxt: dict[tuple, tuple] = {}
        for a, b in itertools.combinations(sorted(good), 2):
            if a[:-1] != b[:-1]:
                continue
            cand = a + (b[-1],)
            if any(cand[:i] + cand[i + 1:] not in good for i in range(len(cand) - 2)):
                continue
            w = _witness(_projected(rows, cand), key)
            if w is not None:
                nxt[cand] = w
        level = nxt
        size += 1
    return best


def I(table: DecisionTable) -> int:
    return shattering_dimension(table).dimension


def brute_force_I(table: DecisionTable, max_dim: int = BRUTE_FORCE_DIM_CAP) -> int:
    """I(T) by trying every column subset against every choice of value pairs."""
    if table.dim > max_dim:
        raise ValueError(f"dim {table.dim} exceeds brute-force cap {max_dim}")
    rows = table.row_set()
    pairs = list(itertools.combinations(table.alphabet.symbols, 2))
    for size in range(table.dim, 0, -1):
        for cols in itertools.combinations(range(table.dim), size):
            proj = _projected(rows, cols)
            if len(proj) < 2 ** size:
                continue
            for choice in itertools.product(pairs, repeat=size):
                if all(v in proj for v in itertools.product(*choice)):
                    return size
    return 0


def vc_dimension(patterns: Iterable[Sequence]) -> int:
    """VC dimension of a family of binary patterns (coordinates shattered)."""
    pats = {tuple(p) for p in patterns}
    n = _check_lengths(pats) or 0
    best = 0
    for size in range(1, n + 1):
        if 2 ** size > len(pats):
            break
        if any(len({tuple(p[c] for c in cols) for p in pats}) == 2 ** size
               for cols in itertools.combinations(range(n), size)):
            best = size
        else:
            break
    return best


def check_independent(patterns: Iterable[Sequence], p: int | None = None, order=None) -> bool:
    """Whether attributes with these realized value vectors are independent."""
    pats = {tuple(x) for x in patterns}
    n = _check_lengths(pats)
    if p is not None and n is not None and n != p:
        raise ValueError(f"patterns have length {n}, expected {p}")
    return quasicomplete_witness(pats, order) is not None
