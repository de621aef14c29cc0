"""Decision tables from sign conditions of univariate polynomials.

Each attribute is ``sign(p(x))`` for a rational polynomial ``p``, with
values in ``{-1, 0, +1}``.  The realized sign vectors are found by
evaluating every polynomial at one representative of every cell of the
real line: both infinities, every real root of every polynomial and one
rational point between each pair of adjacent roots.  Roots are isolated
with Sturm sequences and compared exactly (shared roots are detected with
polynomial gcds, never by refinement alone).
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .tables import SIGNS, DecisionTable, make_decisions

SHATTER_CAP = 6
SIGN_SYMBOLS = {-1: "-1", 0: "0", 1: "+1"}


class PolyError(ValueError):
    pass


# ---------------------------------------------------------------------------
# dense arithmetic on ascending coefficient tuples

def _trim(cs) -> tuple:
    cs = [Fraction(c) for c in cs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _deg(p) -> int:
    return len(p) - 1


def _eval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _deriv(p) -> tuple:
    return _trim(i * c for i, c in enumerate(p) if i)


def _mul(p, q) -> tuple:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def _divmod(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    p = list(p)
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 1)
    lead = q[-1]
    while len(p) >= len(q) and p:
        shift = len(p) - len(q)
        f = p[-1] / lead
        quot[shift] = f
        for i, c in enumerate(q):
            p[shift + i] -= f * c
        p = list(_trim(p))
    return _trim(quot), tuple(p)


def _monic(p) -> tuple:
    return tuple(c / p[-1] for c in p) if p else p


def _gcd(p, q) -> tuple:
    while q:
        p, q = q, _divmod(p, q)[1]
    return _monic(p)


def _sqfree(p) -> tuple:
    if _deg(p) < 1:
        return p
    g = _gcd(p, _deriv(p))
    return _monic(_divmod(p, g)[0])


def sturm_sequence(p) -> list[tuple]:
    """Sturm sequence of the square-free part of ``p``."""
    p = _sqfree(_trim(p))
    seq = [p, _deriv(p)]
    while seq[-1]:
        seq.append(tuple(-c for c in _divmod(seq[-2], seq[-1])[1]))
    return [s for s in seq if s]


def _sign_at_inf(p, positive: bool) -> int:
    if not p:
        return 0
    s = _sign(p[-1])
    return s if positive or _deg(p) % 2 == 0 else -s


def _variations(signs) -> int:
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _var_at(seq, x) -> int:
    if x == "-inf":
        return _variations(_sign_at_inf(s, False) for s in seq)
    if x == "+inf":
        return _variations(_sign_at_inf(s, True) for s in seq)
    return _variations(_sign(_eval(s, x)) for s in seq)


def count_roots(seq, lo, hi) -> int:
    """Distinct real roots in ``(lo, hi)``; ``lo``/``hi`` must not be roots."""
    return _var_at(seq, lo) - _var_at(seq, hi)


def cauchy_bound(p) -> Fraction:
    """Every real root of ``p`` lies strictly inside ``(-M, M)``."""
    p = _trim(p)
    lead = abs(p[-1])
    return 1 + max((abs(c) / lead for c in p[:-1]), default=Fraction(0))


# ---------------------------------------------------------------------------
# public types

@dataclass(frozen=True)
class RatPoly:
    """A polynomial with rational coefficients in ascending degree."""

    coeffs: tuple
    name: str = "p"

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @property
    def degree(self) -> int:
        return _deg(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __call__(self, x) -> Fraction:
        return _eval(self.coeffs, Fraction(x))

    def sign(self, x) -> int:
        return _sign(self(x))

    def __str__(self):
        return " ".join([self.name] + ([str(c) for c in self.coeffs] or ["0"]))


def poly_from_roots(roots, name="p", lead=1) -> RatPoly:
    out = (Fraction(lead),)
    for r in roots:
        out = _mul(out, (-Fraction(r), Fraction(1)))
    return RatPoly(out, name)


@dataclass(frozen=True)
class SamplePoint:
    """A cell representative: ``-inf``, ``+inf``, a rational, or a root.

    Root samples refer to root ``root_index`` (in increasing order) of
    polynomial ``poly_index`` of the evaluation context.
    """

    kind: str
    value: Fraction | None = None
    poly_index: int | None = None
    root_index: int | None = None

    def __post_init__(self):
        if self.kind not in ("-inf", "+inf", "rational", "root"):
            raise ValueError(f"unknown sample kind {self.kind!r}")


@dataclass(eq=False)
class _RealRoot:
    """The unique root of square-free ``s`` in ``(lo, hi)``, or at ``exact``."""

    s: tuple
    lo: Fraction
    hi: Fraction
    exact: Fraction | None = None

    def bounds(self):
        if self.exact is not None:
            return self.exact, self.exact
        return self.lo, self.hi

    def refine(self) -> None:
        if self.exact is not None:
            return
        mid = (self.lo + self.hi) / 2
        v = _sign(_eval(self.s, mid))
        if v == 0:
            self.exact = mid
        elif v == _sign(_eval(self.s, self.lo)):
            self.lo = mid
        else:
            self.hi = mid

    def contains(self, x) -> bool:
        if self.exact is not None:
            return x == self.exact
        return self.lo < x < self.hi and _eval(self.s, x) == 0


def _split_point(s, lo, hi) -> Fraction:
    """A rational strictly inside ``(lo, hi)`` that is not a root of ``s``."""
    j = 2
    while True:
        x = lo + (hi - lo) * Fraction(j - 1, 2 * j - 1) if j > 2 else (lo + hi) / 2
        if _eval(s, x) != 0:
            return x
        j += 1


def _isolate(p) -> list[_RealRoot]:
    s = _sqfree(_trim(p))
    if _deg(s) < 1:
        return []
    seq = sturm_sequence(s)
    m = cauchy_bound(s)
    out = []
    stack = [(-m, m, count_roots(seq, -m, m))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append(_RealRoot(s, lo, hi))
            continue
        mid = _split_point(s, lo, hi)
        left = count_roots(seq, lo, mid)
        stack.append((mid, hi, n - left))
        stack.append((lo, mid, left))
    out.sort(key=lambda r: r.lo)
    return out


def isolate_roots(p: RatPoly | Sequence) -> list[tuple[Fraction, Fraction]]:
    """Disjoint open rational intervals, one per distinct real root, increasing."""
    cs = p.coeffs if isinstance(p, RatPoly) else _trim(p)
    if not cs:
        raise PolyError("the zero polynomial has no isolated roots")
    return [(r.lo, r.hi) for r in _isolate(cs)]


def refine_interval(p: RatPoly | Sequence, lo, hi, width) -> tuple[Fraction, Fraction]:
    """Shrink an isolating interval of ``p`` below ``width`` (closed if exact)."""
    cs = p.coeffs if isinstance(p, RatPoly) else _trim(p)
    r = _RealRoot(_sqfree(cs), Fraction(lo), Fraction(hi))
    while r.exact is None and r.hi - r.lo >= width:
        r.refine()
    return r.bounds()


def _sign_at_root(p: tuple, r: _RealRoot) -> int:
    if _deg(p) < 1:
        return _sign(p[0]) if p else 0
    if r.exact is not None:
        return _sign(_eval(p, r.exact))
    g = _gcd(p, r.s)
    if _deg(g) >= 1 and count_roots(sturm_sequence(g), r.lo, r.hi) > 0:
        return 0
    seq = sturm_sequence(p)
    while True:
        if r.exact is not None:
            return _sign(_eval(p, r.exact))
        if _eval(p, r.lo) != 0 and _eval(p, r.hi) != 0 and count_roots(seq, r.lo, r.hi) == 0:
            return _sign(_eval(p, (r.lo + r.hi) / 2))
        r.refine()


def _sign_at(p: tuple, sample: SamplePoint, roots: dict) -> int:
    if sample.kind == "-inf":
        return _sign_at_inf(p, False)
    if sample.kind == "+inf":
        return _sign_at_inf(p, True)
    if sample.kind == "rational":
        return _sign(_eval(p, sample.value))
    return _sign_at_root(p, roots[sample.poly_index][sample.root_index])


def sign_at(p: RatPoly, sample: SamplePoint, context: Sequence[RatPoly] = ()) -> int:
    """Exact sign of ``p`` at a sample point."""
    roots = {}
    if sample.kind == "root":
        q = context[sample.poly_index]
        if q.is_zero:
            raise PolyError(f"root sample refers to the zero polynomial {q.name!r}")
        roots[sample.poly_index] = _isolate(q.coeffs)
        if not 0 <= sample.root_index < len(roots[sample.poly_index]):
            raise PolyError(f"{q.name!r} has no root number {sample.root_index}")
    return _sign_at(p.coeffs, sample, roots)


def _compare_roots(r1: _RealRoot, r2: _RealRoot) -> int:
    if r1.exact is not None and r2.exact is not None:
        return _sign(r1.exact - r2.exact)
    if r1.exact is not None and r2.contains(r1.exact):
        return 0
    if r2.exact is not None and r1.contains(r2.exact):
        return 0
    if r1.exact is None and r2.exact is None:
        lo, hi = max(r1.lo, r2.lo), min(r1.hi, r2.hi)
        if lo < hi:
            g = _gcd(r1.s, r2.s)
            if _deg(g) >= 1 and count_roots(sturm_sequence(g), lo, hi) > 0:
                return 0
    while True:
        lo1, hi1 = r1.bounds()
        lo2, hi2 = r2.bounds()
        if hi1 < lo2 or (hi1 == lo2 and (r1.exact is None or r2.exact is None)):
            return -1
        if hi2 < lo1 or (hi2 == lo1 and (r1.exact is None or r2.exact is None)):
            return 1
        r1.refine()
        r2.refine()


def cell_samples(polys: Sequence[RatPoly]):
    """Cell representatives of the arrangement, increasing along the line.

    Returns ``(samples, roots)`` where ``roots`` maps a polynomial index to
    its isolated roots, as needed to evaluate root samples.
    """
    roots: dict[int, list[_RealRoot]] = {}
    tagged = []
    for i, p in enumerate(polys):
        if p.is_constant:
            continue
        roots[i] = _isolate(p.coeffs)
        tagged.extend((i, j, r) for j, r in enumerate(roots[i]))

    tagged.sort(key=functools.cmp_to_key(lambda a, b: _compare_roots(a[2], b[2])))
    distinct = []
    for item in tagged:
        if not distinct or _compare_roots(distinct[-1][2], item[2]) != 0:
            distinct.append(item)

    samples = [SamplePoint("-inf")]
    for n, (i, j, r) in enumerate(distinct):
        if n:
            prev = distinct[n - 1][2]
            while prev.bounds()[1] >= r.bounds()[0]:
                prev.refine()
                r.refine()
            samples.append(SamplePoint("rational", (prev.bounds()[1] + r.bounds()[0]) / 2))
        samples.append(SamplePoint("root", poly_index=i, root_index=j))
    samples.append(SamplePoint("+inf"))
    return samples, roots


def _check_polys(polys: Sequence[RatPoly], allow_zero: bool) -> None:
    for p in polys:
        if p.is_zero and not allow_zero:
            raise PolyError(f"zero polynomial {p.name!r} is not allowed as an attribute")


def enumerate_sign_vectors(polys: Sequence[RatPoly], allow_zero: bool = False) -> list[tuple]:
    """Realized sign vectors over the real line, sorted by (-1, 0, +1) order."""
    _check_polys(polys, allow_zero)
    samples, roots = cell_samples(polys)
    vectors = {tuple(_sign_at(p.coeffs, s, roots) for p in polys) for s in samples}
    return sorted(vectors)


def constant_columns(polys: Sequence[RatPoly]) -> list[str]:
    return [p.name for p in polys if p.is_constant]


def build_poly_table(
    polys: Sequence[RatPoly],
    decisions="distinct",
    seed: int | None = None,
    allow_zero: bool = False,
) -> DecisionTable:
    vectors = enumerate_sign_vectors(polys, allow_zero)
    return DecisionTable(
        SIGNS,
        [p.name for p in polys],
        [tuple(SIGN_SYMBOLS[v] for v in vec) for vec in vectors],
        make_decisions(len(vectors), decisions, seed),
    )


def shatter_system(p: int, cap: int = SHATTER_CAP) -> list[RatPoly]:
    """``p`` polynomials realizing every vector of ``{-1, +1}**p``.

    At the points ``0 .. 2**p - 1`` polynomial ``i`` is positive exactly where
    bit ``i`` of the point is set; it is a product of linear factors with
    roots halfway between consecutive points where that bit flips.
    """
    if p < 1:
        raise PolyError("shatter system needs p >= 1")
    if p > cap:
        raise PolyError(f"p = {p} exceeds cap {cap}")
    out = []
    for i in range(p):
        cuts = [Fraction(2 * j + 1, 2) for j in range(2**p - 1) if (j >> i) & 1 != ((j + 1) >> i) & 1]
        # at x = 0 every factor is negative and bit i is 0, so the sign must be -1
        lead = -1 if len(cuts) % 2 == 0 else 1
        out.append(poly_from_roots(cuts, f"s{i}", lead))
    return out


def random_polys(count: int, max_degree: int, seed: int, coeff_range: int = 5) -> list[RatPoly]:
    """Seeded polynomials; about half are built from rational roots to share roots often."""
    rng = random.Random(seed)
    pool = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(4)]
    out = []
    for i in range(count):
        deg = rng.randint(1, max_degree)
        if rng.random() < 0.5:
            roots = [rng.choice(pool) for _ in range(deg)]
            p = poly_from_roots(roots, f"p{i}", rng.choice([-2, -1, 1, 3]))
            if rng.random() < 0.5:
                # multiply by an irreducible quadratic factor sometimes
                q = rng.choice([(1, 0, 1), (-2, 0, 1), (-3, 0, 1)])
                p = RatPoly(_mul(p.coeffs, q), p.name)
        else:
            cs = [rng.randint(-coeff_range, coeff_range) for _ in range(deg)]
            cs.append(rng.choice([c for c in range(-coeff_range, coeff_range + 1) if c]))
            p = RatPoly(cs, f"p{i}")
        out.append(p)
    return out


def parse_polys(text: str) -> list[RatPoly]:
    """Parse the ``.poly`` format: ``name c0 c1 ...`` per line, ``#`` comments.

    Multivariate input is rejected: coefficient tokens must be rationals.
    """
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, *tokens = line.split()
        if not tokens:
            raise PolyError(f"line {lineno}: polynomial {name!r} has no coefficients")
        coeffs = []
        for t in tokens:
            try:
                coeffs.append(Fraction(t))
            except (ValueError, ZeroDivisionError):
                if any(ch.isalpha() for ch in t):
                    raise PolyError(
                        f"line {lineno}: {t!r} looks multivariate; only univariate "
                        "polynomials given as ascending rational coefficients are supported"
                    ) from None
                raise PolyError(f"line {lineno}: bad rational {t!r}") from None
        out.append(RatPoly(coeffs, name))
    names = [p.name for p in out]
    if len(set(names)) != len(names):
        raise PolyError("duplicate polynomial names")
    return out


def format_polys(polys: Sequence[RatPoly]) -> str:
    return "".join(f"{p}\n" for p in polys)
