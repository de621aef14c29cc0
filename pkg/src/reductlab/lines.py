"""Decision tables from half-plane attributes in the plane.

The attribute of a line ``a*x + b*y + c = 0`` takes value 0 where
``a*x + b*y + c < 0`` and value 1 where it is ``>= 0``.  A table's rows are
the value vectors realized by points of the plane.  Everything is exact
rational arithmetic; feasibility of a value vector is decided by
Fourier-Motzkin elimination that tracks strict and non-strict bounds.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .tables import BINARY, DecisionTable, make_decisions

DEFAULT_LINE_CAP = 16


class LineError(ValueError):
    pass


@dataclass(frozen=True)
class LineAttr:
    a: Fraction
    b: Fraction
    c: Fraction
    name: str = "l"

    def __post_init__(self):
        for f in ("a", "b", "c"):
            object.__setattr__(self, f, Fraction(getattr(self, f)))
        if self.a == 0 and self.b == 0:
            raise LineError(f"degenerate line {self.name!r}: a and b are both zero")

    def value(self, x, y) -> int:
        return 1 if self.a * x + self.b * y + self.c >= 0 else 0

    def __str__(self):
        return f"{self.name} {self.a} {self.b} {self.c}"


# A constraint is (a, b, c, strict): a*x + b*y + c > 0 if strict, else >= 0.

def _constraints(lines: Sequence[LineAttr], pattern: Sequence[int]):
    out = []
    for line, v in zip(lines, pattern):
        if v == 1:
            out.append((line.a, line.b, line.c, False))
        elif v == 0:
            out.append((-line.a, -line.b, -line.c, True))
        else:
            raise ValueError(f"pattern entries must be 0 or 1, got {v!r}")
    return out


def _eliminate(cons, var: int):
    """Fourier-Motzkin step removing coordinate ``var`` (0 for x, 1 for y)."""
    pos, neg, rest = [], [], []
    for con in cons:
        coef = con[var]
        (pos if coef > 0 else neg if coef < 0 else rest).append(con)
    for p in pos:
        for q in neg:
            sp, sq = p[var], -q[var]
            rest.append((
                sq * p[0] + sp * q[0],
                sq * p[1] + sp * q[1],
                sq * p[2] + sp * q[2],
                p[3] or q[3],
            ))
    return rest


def _feasible(cons) -> bool:
    for var in (1, 0):
        cons = _eliminate(cons, var)
        if any(a == 0 and b == 0 and (c < 0 or (strict and c == 0)) for a, b, c, strict in cons):
            return False
    return True


def feasible_sign_system(lines: Sequence[LineAttr], pattern: Sequence[int]) -> bool:
    """Whether some point of the plane has exactly this value vector."""
    if len(pattern) != len(lines):
        raise ValueError(f"pattern length {len(pattern)} != {len(lines)} lines")
    return _feasible(_constraints(lines, pattern))


def enumerate_cells(lines: Sequence[LineAttr], cap: int = DEFAULT_LINE_CAP) -> list[tuple]:
    """All realized value vectors, in lexicographic order.

    Candidates are grown one line at a time; an infeasible prefix prunes
    every extension, so the result equals the scan of all ``2**n`` patterns.
    """
    if len(lines) > cap:
        raise LineError(f"{len(lines)} lines exceeds cap {cap}")
    found = []

    def grow(prefix: list[int], cons: list):
        if len(prefix) == len(lines):
            found.append(tuple(prefix))
            return
        line = lines[len(prefix)]
        for v in (0, 1):
            con = (line.a, line.b, line.c, False) if v else (-line.a, -line.b, -line.c, True)
            nxt = cons + [con]
            if _feasible(nxt):
                grow(prefix + [v], nxt)

    grow([], [])
    return found


def build_line_table(
    lines: Sequence[LineAttr],
    decisions="distinct",
    seed: int | None = None,
    cap: int = DEFAULT_LINE_CAP,
) -> DecisionTable:
    cells = enumerate_cells(lines, cap)
    return DecisionTable(
        BINARY,
        [ln.name for ln in lines],
        [tuple(str(v) for v in cell) for cell in cells],
        make_decisions(len(cells), decisions, seed),
    )


def max_regions(n: int) -> int:
    """Region count of ``n`` lines in general position."""
    return 1 + n + n * (n - 1) // 2


def in_general_position(lines: Sequence[LineAttr]) -> bool:
    """No two lines parallel and no three through one point."""
    for p, q in itertools.combinations(lines, 2):
        if p.a * q.b - p.b * q.a == 0:
            return False
    for p, q, r in itertools.combinations(lines, 3):
        det = (
            p.a * (q.b * r.c - q.c * r.b)
            - p.b * (q.a * r.c - q.c * r.a)
            + p.c * (q.a * r.b - q.b * r.a)
        )
        if det == 0:
            return False
    return True


def tangent_lines(n: int) -> list[LineAttr]:
    """``n`` tangents to the parabola ``y = x**2``; always in general position."""
    # tangent at t: y = 2 t x - t^2  ->  2t x - y - t^2 = 0
    return [LineAttr(2 * t, -1, -t * t, f"t{t}") for t in range(1, n + 1)]


def random_lines(n: int, seed: int, coeff_range: int = 20, general: bool = False) -> list[LineAttr]:
    """Seeded lines with small rational coefficients."""
    rng = random.Random(seed)

    def coeff():
        return Fraction(rng.randint(-coeff_range, coeff_range), rng.randint(1, 4))

    while True:
        out = []
        while len(out) < n:
            a, b, c = coeff(), coeff(), coeff()
            if a == 0 and b == 0:
                continue
            out.append(LineAttr(a, b, c, f"l{len(out)}"))
        if not general or in_general_position(out):
            return out


def intersection(p: LineAttr, q: LineAttr):
    det = p.a * q.b - p.b * q.a
    if det == 0:
        return None
    return ((p.b * q.c - p.c * q.b) / det, (p.c * q.a - p.a * q.c) / det)


def structured_witness_points(
    lines: Sequence[LineAttr], directions: int = 64, far: int = 10**6, eps=Fraction(1, 10**9)
):
    """Intersection points, their midpoints, small offsets and far points.

    Value vectors at these points are a subset of the realized cells; used
    as an independent completeness cross-check of :func:`enumerate_cells`.
    """
    pts = [(Fraction(0), Fraction(0))]
    inter = []
    for p, q in itertools.combinations(lines, 2):
        v = intersection(p, q)
        if v is None:
            continue
        inter.append(v)
        # one point inside each of the four sectors around the vertex
        for sp, sq in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            dx = sp * p.b + sq * q.b
            dy = -sp * p.a - sq * q.a
            pts.append((v[0] + eps * dx, v[1] + eps * dy))
    pts.extend(inter)
    for (x1, y1), (x2, y2) in itertools.combinations(inter, 2):
        pts.append(((x1 + x2) / 2, (y1 + y2) / 2))
    for line in lines:
        # points on the line and just off it on both sides
        if line.b != 0:
            x0 = Fraction(0)
            y0 = -(line.c + line.a * x0) / line.b
        else:
            y0 = Fraction(0)
            x0 = -(line.c + line.b * y0) / line.a
        for s in (0, 1, -1):
            pts.append((x0 + s * eps * line.a, y0 + s * eps * line.b))
    for i in range(directions):
        # rational points on a large polygon around the origin
        t = Fraction(i, directions)
        for dx, dy in ((1, 2 * t - 1), (-1, 2 * t - 1), (2 * t - 1, 1), (2 * t - 1, -1)):
            pts.append((far * dx, far * dy))
    return pts


def parse_lines(text: str) -> list[LineAttr]:
    """Parse the ``.lines`` format: ``name a b c`` per line, ``#`` comments."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 4:
            raise LineError(f"line {lineno}: expected 'name a b c', got {line!r}")
        name = tokens[0]
        try:
            a, b, c = (Fraction(t) for t in tokens[1:])
        except (ValueError, ZeroDivisionError):
            raise LineError(f"line {lineno}: bad rational in {line!r}") from None
        try:
            out.append(LineAttr(a, b, c, name))
        except LineError as e:
            raise LineError(f"line {lineno}: {e}") from None
    names = [ln.name for ln in out]
    if len(set(names)) != len(names):
        raise LineError("duplicate line names")
    return out


def format_lines(lines: Sequence[LineAttr]) -> str:
    return "".join(f"{ln}\n" for ln in lines)
