"""Runtime checks of the reduct lower bounds on concrete tables.

Every check compares exact integers.  Irrational right-hand sides are
cleared first: ``R >= log_k cl`` becomes ``k**R >= cl`` and
``R >= cl**(1/I) / k**2`` becomes ``(R * k**2)**I >= cl``.  A check whose
hypothesis does not hold (for example ``cl < 2``) is reported as skipped,
never as failed.
"""

from __future__ import annotations

import functools
import hashlib
import itertools
import os
import random
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Sequence

from . import lines as lines_mod
from . import polys as polys_mod
from .reducts import min_reduct
from .shattering import quasicomplete_witness, shattering_dimension
from .tables import (
    BINARY,
    DecisionTable,
    complete_table,
    load_table,
    parse_decision_mode,
    project,
    random_table,
    serialize_table,
)

THEOREM1C_CAP = 12
FAMILY_CAPS = {"lines": lines_mod.DEFAULT_LINE_CAP, "cube": 16, "polys": 12, "pool": 24}


class ConfigError(ValueError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


@dataclass(frozen=True)
class ClassDescriptor:
    """A closed class of tables: family id, alphabet size and its I value.

    ``I is None`` marks an unbounded class.  ``pool`` optionally holds
    tables whose closure is the class (the ``pool`` family).
    """

    family: str
    k: int
    I: int | None
    note: str = ""
    pool: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"class alphabet size must be >= 2, got {self.k}")
        if self.I is not None and self.I < 1:
            raise ValueError(f"declared class I must be >= 1, got {self.I}")

    @property
    def bounded(self) -> bool:
        return self.I is not None


LINES_CLASS = ClassDescriptor("lines", 2, 2, "half-plane attributes in the plane")
POLYS_CLASS = ClassDescriptor("polys", 3, None, "signs of univariate polynomials, unbounded degree")
CUBE_CLASS = ClassDescriptor("cube", 2, None, "closure of the complete boolean tables")
FAMILY_CLASSES = {"lines": LINES_CLASS, "polys": POLYS_CLASS, "cube": CUBE_CLASS}


@dataclass(frozen=True)
class CheckReport:
    check: str
    instance: str
    lhs: str
    rhs: str
    holds: bool
    skipped: bool = False
    seed: int | None = None
    detail: str = ""
    digest: str = ""

    @property
    def status(self) -> str:
        if self.skipped:
            return "skip"
        return "pass" if self.holds else "FAIL"

    def to_dict(self) -> dict:
        return asdict(self)


def digest(table: DecisionTable) -> str:
    return hashlib.sha256(serialize_table(table).encode()).hexdigest()[:16]


@functools.lru_cache(maxsize=8192)
def _reduct(table: DecisionTable):
    return min_reduct(table)


@functools.lru_cache(maxsize=8192)
def _shatter(table: DecisionTable):
    return shattering_dimension(table)


def _skipped(check, instance, table, seed, why) -> CheckReport:
    return CheckReport(check, instance, "", "", True, True, seed, why, digest(table))


def check_lemma1(table: DecisionTable, instance: str = "", seed=None) -> CheckReport:
    """N(T) <= (k^2 dim T)^I(T)."""
    if table.cl < 2 or table.dim < 1:
        return _skipped("lemma1", instance, table, seed, "needs cl >= 2 and dim >= 1")
    i = _shatter(table).dimension
    rhs = (table.k ** 2 * table.dim) ** i
    return CheckReport(
        "lemma1", instance, str(table.N), str(rhs), table.N <= rhs, False, seed,
        f"N={table.N} <= ({table.k}^2*{table.dim})^{i}={rhs}", digest(table),
    )


def check_log_bound(table: DecisionTable, instance: str = "", seed=None) -> CheckReport:
    """R(T) >= log_k cl(T), checked as k**R >= cl."""
    if table.cl < 2:
        return _skipped("log_bound", instance, table, seed, "needs cl >= 2")
    r, k, cl = _reduct(table).cardinality, table.k, table.cl
    return CheckReport(
        "log_bound", instance, str(r), f"log_{k}({cl})", k ** r >= cl, False, seed,
        f"{k}^{r}={k ** r} >= {cl}", digest(table),
    )


def check_power_bound(
    table: DecisionTable, cls: ClassDescriptor, instance: str = "", seed=None
) -> CheckReport:
    """R(T) >= cl(T)^(1/I(C)) / k^2, checked as (R k^2)^I >= cl."""
    if not cls.bounded:
        raise ValueError(f"class {cls.family!r} has unbounded I; the power bound needs a finite I")
    if table.cl < 2:
        return _skipped("power_bound", instance, table, seed, "needs cl >= 2")
    r, k, i, cl = _reduct(table).cardinality, cls.k, cls.I, table.cl
    lhs_cleared = (r * k * k) ** i
    return CheckReport(
        "power_bound", instance, str(r), f"{cl}^(1/{i})/{k}^2", lhs_cleared >= cl, False, seed,
        f"({r}*{k}^2)^{i}={lhs_cleared} >= {cl}", digest(table),
    )


def check_projection_bound(table: DecisionTable, instance: str = "", seed=None) -> CheckReport:
    """N of the projection onto a minimum reduct is at least cl(T)."""
    if table.cl < 2:
        return _skipped("projection_bound", instance, table, seed, "needs cl >= 2")
    reduct = _reduct(table).reduct
    n = project(table, reduct).N
    return CheckReport(
        "projection_bound", instance, str(n), str(table.cl), n >= table.cl, False, seed,
        f"N(T|{list(reduct)})={n} >= cl={table.cl}", digest(table),
    )


def theorem1c_demo(n: int, cap: int = THEOREM1C_CAP) -> CheckReport:
    """The strengthened bound R >= log2 cl + 1 fails on the complete cube.

    Holds when R = n and R < log2(cl) + 1, i.e. 2**R < 2 * cl.
    """
    if not 1 <= n <= cap:
        raise ValueError(f"n = {n} outside 1..{cap}")
    table = complete_table(BINARY, n)
    r, cl = _reduct(table).cardinality, table.cl
    holds = r == n and 2 ** r < 2 * cl
    return CheckReport(
        "theorem1c", f"cube/n{n}", str(r), f"log_2({cl})+1", holds, False, None,
        f"R={r}=n; 2^{r}={2 ** r} < 2*{cl}={2 * cl}", digest(table),
    )


def smallest_consistent_q(tables: Sequence[DecisionTable], k: int) -> int:
    """Least q >= 1 with (R k^2)^q >= cl on every table with cl >= 2."""
    q = 1
    for t in tables:
        if t.cl < 2:
            continue
        base = _reduct(t).cardinality * k * k
        while base ** q < t.cl:
            q += 1
    return q


# ---------------------------------------------------------------------------
# empirical N_C

@dataclass(frozen=True)
class NCRow:
    n: int
    max_rows: int
    exact: int | None = None


def _family_instances(cls: ClassDescriptor, n: int, budget: int, rng: random.Random):
    if cls.family == "lines":
        yield lines_mod.build_line_table(lines_mod.tangent_lines(n), "constant")
        for _ in range(budget - 1):
            ls = lines_mod.random_lines(n, rng.randrange(2**32))
            yield lines_mod.build_line_table(ls, "constant")
    elif cls.family == "cube":
        yield complete_table(BINARY, n, "constant")
    elif cls.family == "polys":
        base = [polys_mod.poly_from_roots([j], f"x{j}") for j in range(n)]
        yield polys_mod.build_poly_table(base, "constant")
        for _ in range(budget - 1):
            ps = polys_mod.random_polys(n, 4, rng.randrange(2**32))
            yield polys_mod.build_poly_table(ps, "constant")
    elif cls.family == "pool":
        for t in cls.pool:
            for size in range(min(n, t.dim) + 1):
                for cols in itertools.combinations(range(t.dim), size):
                    yield project(t, cols)
    else:
        raise ValueError(f"unknown family {cls.family!r}")


def empirical_nc(cls: ClassDescriptor, n: int, budget: int = 1, seed: int = 0) -> list[NCRow]:
    """Largest row count found with at most n' columns, for n' = 1..n.

    This is a lower estimate of N_C(n').  The lines family also reports the
    general-position region count, which is the exact maximum; the cube
    family reports ``2**n'``.
    """
    cap = FAMILY_CAPS.get(cls.family)
    if cap is None:
        raise ValueError(f"unknown family {cls.family!r}")
    if n > cap:
        raise ValueError(f"n = {n} exceeds the {cls.family} cap {cap}")
    if budget < 1:
        raise ValueError("budget must be >= 1")
    rng = random.Random(seed)
    rows, best = [], 0
    for m in range(1, n + 1):
        for t in _family_instances(cls, m, budget, rng):
            best = max(best, t.N)
        exact = {"lines": lines_mod.max_regions(m), "cube": 2 ** m}.get(cls.family)
        rows.append(NCRow(m, best, exact))
    return rows


def check_nc(cls: ClassDescriptor, n: int, budget: int = 1, seed: int = 0) -> list[CheckReport]:
    """Exact-value, monotonicity and growth-bound checks on an N_C estimate."""
    out = []
    rows = empirical_nc(cls, n, budget, seed)
    inst = f"{cls.family}/n{n}/b{budget}"
    values = [r.max_rows for r in rows]
    mono = all(a <= b for a, b in zip(values, values[1:]))
    out.append(CheckReport("nc_monotone", inst, " ".join(map(str, values)), "nondecreasing", mono, seed=seed))
    for r in rows:
        rid = f"{inst}/m{r.n}"
        if r.exact is not None:
            out.append(CheckReport(
                "nc_exact", rid, str(r.max_rows), str(r.exact), r.max_rows == r.exact, seed=seed))
        if cls.bounded:
            rhs = (cls.k ** 2 * r.n) ** cls.I
            out.append(CheckReport(
                "nc_power_cap", rid, str(r.max_rows), str(rhs), r.max_rows <= rhs, seed=seed,
                detail=f"({cls.k}^2*{r.n})^{cls.I}"))
        elif cls.family == "cube":
            lo, hi = 2 ** r.n, cls.k ** r.n
            out.append(CheckReport(
                "nc_cube_range", rid, str(r.max_rows), f"[{lo}, {hi}]", lo <= r.max_rows <= hi, seed=seed))
    return out


# ---------------------------------------------------------------------------
# suites

DEFAULT_CONFIG = {
    "seed": 2024,
    "random": {
        "count": 1000,
        "k": [2, 3],
        "max_dim": 8,
        "max_rows": 30,
        "decisions": ["distinct", "random:2", "random:3", "random:5"],
    },
    "lines": {
        "sizes": [2, 3, 4, 5, 6, 7, 8],
        "instances": 8,
        "decisions": ["distinct", "random:3"],
        "general_position": True,
    },
    "polys": {"count": 120, "max_polys": 4, "max_degree": 4, "decisions": ["distinct", "random:3"]},
    "cube": {"sizes": [2, 3, 4, 5, 6, 7, 8, 9, 10]},
    "shatter": {"sizes": [1, 2, 3, 4]},
    "nc": [
        {"family": "lines", "n": 6, "budget": 3},
        {"family": "cube", "n": 8, "budget": 1},
        {"family": "polys", "n": 3, "budget": 3},
    ],
}

_SECTIONS = {"seed", "random", "lines", "polys", "cube", "shatter", "nc", "tables"}


def _get(section: dict, key: str, path: str, kind, default=None):
    if key not in section:
        if default is None:
            raise ConfigError(f"{path}.{key}", "missing required field")
        return default
    value = section[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise ConfigError(f"{path}.{key}", f"expected an integer, got {value!r}")
    if kind is bool and not isinstance(value, bool):
        raise ConfigError(f"{path}.{key}", f"expected true/false, got {value!r}")
    if kind is list and not isinstance(value, list):
        raise ConfigError(f"{path}.{key}", f"expected a list, got {value!r}")
    if kind is str and not isinstance(value, str):
        raise ConfigError(f"{path}.{key}", f"expected a string, got {value!r}")
    return value


def _int_list(section, key, path, default=None, minimum=1) -> list[int]:
    values = _get(section, key, path, list, default)
    for i, v in enumerate(values):
        if isinstance(v, bool) or not isinstance(v, int) or v < minimum:
            raise ConfigError(f"{path}.{key}[{i}]", f"expected an integer >= {minimum}, got {v!r}")
    return values


def _modes(section, path) -> list[str]:
    modes = _get(section, "decisions", path, list, ["distinct"])
    for i, m in enumerate(modes):
        try:
            parse_decision_mode(m)
        except (ValueError, TypeError) as e:
            raise ConfigError(f"{path}.decisions[{i}]", str(e)) from None
    return modes


def _positive(section, key, path, default=None) -> int:
    v = _get(section, key, path, int, default)
    if v < 1:
        raise ConfigError(f"{path}.{key}", f"must be positive, got {v}")
    return v


def _section(config, name) -> dict | None:
    sec = config.get(name)
    if sec is None:
        return None
    if not isinstance(sec, dict):
        raise ConfigError(name, "expected an object")
    return sec


def _table_checks(table, instance, seed, cls: ClassDescriptor | None = None):
    out = [
        check_lemma1(table, instance, seed),
        check_log_bound(table, instance, seed),
        check_projection_bound(table, instance, seed),
    ]
    if cls is not None and cls.bounded:
        out.append(check_power_bound(table, cls, instance, seed))
    return out


def _class_from_config(spec, path) -> ClassDescriptor:
    if not isinstance(spec, dict):
        raise ConfigError(path, "expected an object")
    family = _get(spec, "family", path, str, "custom")
    k = _get(spec, "k", path, int)
    i = spec.get("I")
    if i is not None and (isinstance(i, bool) or not isinstance(i, int)):
        raise ConfigError(f"{path}.I", f"expected an integer or null, got {i!r}")
    try:
        return ClassDescriptor(family, k, i, spec.get("note", ""))
    except ValueError as e:
        raise ConfigError(path, str(e)) from None


def _golden_check(table, expect, instance, path) -> CheckReport:
    if not isinstance(expect, dict):
        raise ConfigError(path, "expected an object")
    actual = {
        "N": table.N,
        "cl": table.cl,
        "dim": table.dim,
        "R": _reduct(table).cardinality,
        "I": _shatter(table).dimension,
    }
    unknown = set(expect) - set(actual)
    if unknown:
        raise ConfigError(path, f"unknown expected fields {sorted(unknown)}")
    keys = sorted(expect)
    lhs = " ".join(f"{key}={actual[key]}" for key in keys)
    rhs = " ".join(f"{key}={expect[key]}" for key in keys)
    return CheckReport("golden", instance, lhs, rhs, all(actual[key] == expect[key] for key in keys),
                       digest=digest(table))


def suite_tables(config: dict):
    """Yield ``(instance, table, seed, class)`` for every generated table."""
    base = _get(config, "seed", "config", int, 0)

    sec = _section(config, "random")
    if sec is not None:
        count = _positive(sec, "count", "random")
        ks = _int_list(sec, "k", "random", [2, 3], minimum=2)
        max_dim = _positive(sec, "max_dim", "random", 8)
        max_rows = _positive(sec, "max_rows", "random", 30)
        modes = _modes(sec, "random")
        rng = random.Random(base)
        for i in range(count):
            k = ks[i % len(ks)]
            dim = rng.randint(1, max_dim)
            rows = rng.randint(1, min(max_rows, k ** dim))
            mode = modes[i % len(modes)]
            seed = rng.randrange(2**32)
            alphabet = [str(v) for v in range(k)]
            t = random_table(alphabet, dim, rows, mode, seed)
            yield f"random/{i:04d}", t, seed, None

    sec = _section(config, "lines")
    if sec is not None:
        sizes = _int_list(sec, "sizes", "lines")
        per = _positive(sec, "instances", "lines", 1)
        modes = _modes(sec, "lines")
        general = _get(sec, "general_position", "lines", bool, True)
        for n in sizes:
            if n > lines_mod.DEFAULT_LINE_CAP:
                raise ConfigError("lines.sizes", f"{n} exceeds the line cap {lines_mod.DEFAULT_LINE_CAP}")
            for j in range(per):
                seed = base * 1_000_003 + n * 1009 + j
                ls = lines_mod.tangent_lines(n) if j == 0 else lines_mod.random_lines(n, seed, general=general)
                for mode in modes:
                    t = lines_mod.build_line_table(ls, mode, seed)
                    yield f"lines/n{n}/i{j}/{mode}", t, seed, LINES_CLASS

    sec = _section(config, "polys")
    if sec is not None:
        count = _positive(sec, "count", "polys")
        max_polys = _positive(sec, "max_polys", "polys", 4)
        max_degree = _positive(sec, "max_degree", "polys", 4)
        modes = _modes(sec, "polys")
        rng = random.Random(base + 1)
        for i in range(count):
            seed = rng.randrange(2**32)
            ps = polys_mod.random_polys(rng.randint(1, max_polys), max_degree, seed)
            mode = modes[i % len(modes)]
            yield f"polys/{i:04d}/{mode}", polys_mod.build_poly_table(ps, mode, seed), seed, POLYS_CLASS

    sec = _section(config, "cube")
    if sec is not None:
        for n in _int_list(sec, "sizes", "cube"):
            if n > THEOREM1C_CAP:
                raise ConfigError("cube.sizes", f"{n} exceeds cap {THEOREM1C_CAP}")
            yield f"cube/n{n}", complete_table(BINARY, n), None, CUBE_CLASS

    sec = _section(config, "shatter")
    if sec is not None:
        for p in _int_list(sec, "sizes", "shatter"):
            if p > polys_mod.SHATTER_CAP:
                raise ConfigError("shatter.sizes", f"{p} exceeds cap {polys_mod.SHATTER_CAP}")
            t = polys_mod.build_poly_table(polys_mod.shatter_system(p))
            yield f"shatter/p{p}", t, None, POLYS_CLASS


def shatter_check(p: int) -> CheckReport:
    """shatter_system(p) gives I(T) = p with a {-1, +1} witness on every column."""
    t = polys_mod.build_poly_table(polys_mod.shatter_system(p))
    dim = _shatter(t).dimension
    w = quasicomplete_witness(t.rows, t.alphabet.symbols, allowed={"-1", "+1"})
    holds = dim == p and w is not None and all(set(pair) == {"-1", "+1"} for pair in w)
    return CheckReport("shatter_independence", f"shatter/p{p}", f"I={dim}", f"p={p}", holds,
                       detail=f"witness={w}", digest=digest(t))


def run_suite(config: dict, base_dir: str | os.PathLike | None = None) -> list[CheckReport]:
    """All checks for a suite configuration, in canonical order.

    Relative table paths are resolved against ``base_dir`` when given.
    """
    if not isinstance(config, dict):
        raise ConfigError("config", "expected a JSON object")
    unknown = set(config) - _SECTIONS
    if unknown:
        raise ConfigError("config", f"unknown sections {sorted(unknown)}")
    reports: list[CheckReport] = []
    for instance, table, seed, cls in suite_tables(config):
        reports.extend(_table_checks(table, instance, seed, cls))

    sec = _section(config, "cube")
    if sec is not None:
        reports.extend(theorem1c_demo(n) for n in _int_list(sec, "sizes", "cube"))
    sec = _section(config, "shatter")
    if sec is not None:
        reports.extend(shatter_check(p) for p in _int_list(sec, "sizes", "shatter"))

    nc = config.get("nc")
    if nc is not None:
        if not isinstance(nc, list):
            raise ConfigError("nc", "expected a list")
        for i, item in enumerate(nc):
            path = f"nc[{i}]"
            if not isinstance(item, dict):
                raise ConfigError(path, "expected an object")
            family = _get(item, "family", path, str)
            if family not in FAMILY_CLASSES:
                raise ConfigError(f"{path}.family", f"unknown family {family!r}")
            n = _positive(item, "n", path)
            if n > FAMILY_CAPS[family]:
                raise ConfigError(f"{path}.n", f"{n} exceeds the {family} cap {FAMILY_CAPS[family]}")
            budget = _positive(item, "budget", path, 1)
            seed = _get(item, "seed", path, int, config.get("seed", 0))
            reports.extend(check_nc(FAMILY_CLASSES[family], n, budget, seed))

    tables = config.get("tables")
    if tables is not None:
        if not isinstance(tables, list):
            raise ConfigError("tables", "expected a list")
        for i, item in enumerate(tables):
            path = f"tables[{i}]"
            if not isinstance(item, dict):
                raise ConfigError(path, "expected an object")
            file = _get(item, "path", path, str)
            try:
                table = load_table(os.path.join(base_dir, file) if base_dir else file)
            except (OSError, ValueError) as e:
                raise ConfigError(f"{path}.path", str(e)) from None
            instance = _get(item, "id", path, str, file)
            cls = _class_from_config(item["class"], f"{path}.class") if "class" in item else None
            reports.extend(_table_checks(table, instance, None, cls))
            if "expect" in item:
                reports.append(_golden_check(table, item["expect"], instance, f"{path}.expect"))

    reports.sort(key=lambda r: (r.check, r.instance))
    return reports


def summarize(reports: Sequence[CheckReport]) -> str:
    counts: dict[str, Counter] = {}
    for r in reports:
        counts.setdefault(r.check, Counter())[r.status] += 1
    lines = []
    for check in sorted(counts):
        c = counts[check]
        lines.append(f"check={check} pass={c['pass']} skip={c['skip']} fail={c['FAIL']}")
    total = Counter(r.status for r in reports)
    lines.append(f"total pass={total['pass']} skip={total['skip']} fail={total['FAIL']}")
    return "\n".join(lines) + "\n"


def failures(reports: Sequence[CheckReport]) -> list[CheckReport]:
    return [r for r in reports if not r.skipped and not r.holds]
