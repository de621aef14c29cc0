"""Tests, reducts and the exact minimum reduct cardinality R(T).

A column set is a test when every two rows with different decisions differ
on at least one of its columns, i.e. when it hits the differing-column set
of every discernibility pair.  ``min_reduct`` solves that hitting-set
problem exactly by branch and bound over column bitmasks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .tables import DecisionTable, check_indices

DEFAULT_REDUCT_CAP = 10_000
BRUTE_FORCE_DIM_CAP = 20


@dataclass(frozen=True)
class DiscernibilityPair:
    i: int
    j: int
    columns: frozenset

    @property
    def mask(self) -> int:
        return sum(1 << c for c in self.columns)


@dataclass(frozen=True)
class ReductResult:
    reduct: tuple
    cardinality: int


@dataclass(frozen=True)
class ReductEnumeration:
    reducts: list
    truncated: bool


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _mask(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def is_test(table: DecisionTable, indices) -> bool:
    cols = check_indices(table, indices)
    seen: dict[tuple, int] = {}
    for row, d in zip(table.rows, table.decisions):
        key = tuple(row[c] for c in cols)
        if seen.setdefault(key, d) != d:
            return False
    return True


def discernibility_pairs(table: DecisionTable) -> list[DiscernibilityPair]:
    pairs = []
    rows, ds = table.rows, table.decisions
    for i in range(table.N):
        for j in range(i + 1, table.N):
            if ds[i] != ds[j]:
                diff = frozenset(c for c, (a, b) in enumerate(zip(rows[i], rows[j])) if a != b)
                pairs.append(DiscernibilityPair(i, j, diff))
    return pairs


def _raw_pair_masks(table: DecisionTable) -> set[int]:
    # each row packed into an int with one fixed-width lane per column;
    # xor of two rows is nonzero exactly in the lanes where they differ
    width = max(1, (table.k - 1).bit_length())
    code = {s: i for i, s in enumerate(table.alphabet.symbols)}
    packed = []
    for row in table.rows:
        x = 0
        for c, v in enumerate(row):
            x |= code[v] << (c * width)
        packed.append(x)
    by_decision: dict[int, list[int]] = {}
    for x, d in zip(packed, table.decisions):
        by_decision.setdefault(d, []).append(x)
    groups = list(by_decision.values())
    lanes = set()
    for gi, g in enumerate(groups):
        for h in groups[gi + 1:]:
            for x in g:
                lanes.update(x ^ y for y in h)
    if width == 1:
        return lanes
    lane_mask = (1 << width) - 1
    out = set()
    for x in lanes:
        m, c = 0, 0
        while x:
            if x & lane_mask:
                m |= 1 << c
            x >>= width
            c += 1
        out.add(m)
    return out


def _pair_masks(table: DecisionTable) -> list[int]:
    """Differing-column masks of all discernibility pairs, dominated ones dropped."""
    unique = _raw_pair_masks(table)
    kept: list[int] = []
    for m in sorted(unique, key=lambda m: (bin(m).count("1"), m)):
        if not any(k & m == k for k in kept):
            kept.append(m)
    return kept


def _packing_bound(masks: list[int]) -> int:
    """Size of a greedy family of pairwise disjoint masks (a cover lower bound)."""
    used = 0
    count = 0
    for m in sorted(masks, key=lambda m: bin(m).count("1")):
        if not m & used:
            used |= m
            count += 1
    return count


def _greedy_cover(masks: list[int], allowed: int) -> list[int] | None:
    uncovered = list(masks)
    chosen = []
    while uncovered:
        counts: dict[int, int] = {}
        for m in uncovered:
            for b in _bits(m & allowed):
                counts[b] = counts.get(b, 0) + 1
        if not counts:
            return None
        best = min(counts, key=lambda b: (-counts[b], b))
        chosen.append(best)
        uncovered = [m for m in uncovered if not (m >> best) & 1]
    return chosen


def _min_cover_size(masks: list[int], allowed: int, upper: int | None = None) -> int | None:
    """Minimum number of allowed columns hitting every mask.

    Returns ``None`` if no cover exists, or if every cover has size
    ``>= upper`` when ``upper`` is given.
    """
    greedy = _greedy_cover(masks, allowed)
    if greedy is None:
        return None
    best = len(greedy)
    if upper is not None and upper <= best:
        best = upper
        found = False
    else:
        found = True

    def search(uncovered: list[int], allowed: int, depth: int) -> None:
        nonlocal best, found
        if not uncovered:
            if depth < best:
                best = depth
                found = True
            return
        restricted = [m & allowed for m in uncovered]
        if not all(restricted):
            return
        if depth + _packing_bound(restricted) >= best:
            return
        pivot = min(restricted, key=lambda m: (bin(m).count("1"), m))
        for b in _bits(pivot):
            search([m for m in uncovered if not (m >> b) & 1], allowed, depth + 1)
            # covers containing b are exhausted; later branches skip it
            allowed &= ~(1 << b)
            if depth + 1 >= best:
                return

    search(list(masks), allowed, 0)
    return best if found else None


def _lex_smallest_cover(masks: list[int], dim: int, size: int) -> tuple[int, ...]:
    chosen: list[int] = []
    remaining = list(masks)
    start = 0
    for slot in range(size):
        left = size - slot - 1
        for i in range(start, dim):
            rest = [m for m in remaining if not (m >> i) & 1]
            if not rest:
                ok = True
            elif left == 0:
                ok = False
            else:
                allowed = ((1 << dim) - 1) & ~((1 << (i + 1)) - 1)
                ok = _min_cover_size(rest, allowed, upper=left + 1) is not None
            if ok:
                chosen.append(i)
                remaining = rest
                start = i + 1
                break
        else:  # pragma: no cover - size is a feasible optimum
            raise RuntimeError("no cover of the optimal size found")
    return tuple(chosen)


def min_reduct(table: DecisionTable) -> ReductResult:
    """An exact minimum test; the lexicographically smallest one on ties."""
    if table.cl < 2:
        return ReductResult((), 0)
    masks = _pair_masks(table)
    full = (1 << table.dim) - 1
    size = _min_cover_size(masks, full)
    reduct = _lex_smallest_cover(masks, table.dim, size)
    return ReductResult(reduct, len(reduct))


def R(table: DecisionTable) -> int:
    return min_reduct(table).cardinality


def is_reduct(table: DecisionTable, indices) -> bool:
    cols = check_indices(table, indices)
    if not is_test(table, cols):
        return False
    return all(not is_test(table, cols[:i] + cols[i + 1:]) for i in range(len(cols)))


def enumerate_reducts(table: DecisionTable, cap: int = DEFAULT_REDUCT_CAP) -> ReductEnumeration:
    """All reducts ordered by cardinality then lexicographically, up to ``cap``.

    Computed as the minimal transversals of the discernibility masks
    (Berge's incremental algorithm).
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    transversals = {0}
    for m in _pair_masks(table):
        grown = set()
        for t in transversals:
            if t & m:
                grown.add(t)
            else:
                for b in _bits(m):
                    grown.add(t | (1 << b))
        ordered = sorted(grown, key=lambda t: bin(t).count("1"))
        minimal: list[int] = []
        for t in ordered:
            if not any(s & t == s for s in minimal):
                minimal.append(t)
        transversals = set(minimal)

    reducts = sorted((tuple(_bits(t)) for t in transversals), key=lambda r: (len(r), r))
    truncated = len(reducts) > cap
    return ReductEnumeration(reducts[:cap], truncated)


def brute_force_R(table: DecisionTable, max_dim: int = BRUTE_FORCE_DIM_CAP) -> int:
    """Minimum test size by scanning all column subsets in cardinality order."""
    if table.dim > max_dim:
        raise ValueError(f"dim {table.dim} exceeds brute-force cap {max_dim}")
    for size in range(table.dim + 1):
        for cols in itertools.combinations(range(table.dim), size):
            if is_test(table, cols):
                return size
    raise AssertionError("the full column set is always a test")
