"""Finite decision procedures for (promise) Ramsey-like problems.

The three avoidance properties reduce to identity reducibility against a
class of colorings chi of a graph family: a problem fails exactly when some
chi in the class, some forbidden pattern P and some ambient graph G of size
span(P) make the coloring D -> chi(induced(G, D)) satisfy P on all of G.
"""

from __future__ import annotations

import enum
import itertools
import os
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import (InconclusiveBoundError, InfeasibleSizeError, MalformedInputError,
                     RealizationError)
from .graphs import Family, OrderedGraph, _induced, enumerate_family, family_count, index_of
from .modulus import explicit_coloring, realize_graph
from .patterns import FiniteColoring, Pattern, meets, satisfies


class Mode(str, enum.Enum):
    SCA = "sca"
    CA = "ca"
    ARITH_SCA = "arith-sca"

    @classmethod
    def parse(cls, name: str | Mode) -> Mode:
        if isinstance(name, Mode):
            return name
        key = name.strip().lower().replace("_", "-")
        if key in ("arith", "arithsca"):
            key = "arith-sca"
        try:
            return cls(key)
        except ValueError:
            raise MalformedInputError(f"unknown mode {name!r}") from None

    @property
    def family(self) -> Family:
        return {Mode.SCA: Family.LARGENESS, Mode.CA: Family.PACKED,
                Mode.ARITH_SCA: Family.VECTOR}[self]


class Outcome(str, enum.Enum):
    AVOIDS = "avoids"
    FAILS = "fails"


@dataclass(frozen=True)
class Caps:
    chi: int = 10**6
    graphs: int = 10**6
    max_span: int = 12

    @classmethod
    def from_env(cls, **overrides) -> Caps:
        vals = {}
        for name, var in (("chi", "CONEAVOID_CAP_CHI"), ("graphs", "CONEAVOID_CAP_GRAPHS"),
                          ("max_span", "CONEAVOID_MAX_SPAN")):
            if os.environ.get(var):
                try:
                    vals[name] = int(os.environ[var])
                except ValueError:
                    raise MalformedInputError(f"{var} must be an integer") from None
        vals.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**vals)


DEFAULT_CAPS = Caps()


@dataclass(frozen=True)
class Chi:
    family: Family
    n: int
    k: int
    assignment: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "family", Family.parse(self.family))
        m = family_count(self.family, self.n)
        if len(self.assignment) != m:
            raise MalformedInputError(f"chi needs {m} colors, got {len(self.assignment)}")
        if any(not 0 <= c < self.k for c in self.assignment):
            raise MalformedInputError(f"chi colors must be < {self.k}")

    @property
    def graphs(self) -> tuple[OrderedGraph, ...]:
        return enumerate_family(self.family, self.n)

    def __call__(self, g: OrderedGraph) -> int:
        return self.assignment[index_of(self.family, self.n)[g]]

    def is_constant(self) -> bool:
        return len(set(self.assignment)) <= 1

    def text(self) -> str:
        return ",".join(map(str, self.assignment))


@dataclass(frozen=True)
class Problem:
    name: str
    n: int
    k: int
    promise: tuple[Pattern, ...] = ()
    forbid: tuple[Pattern, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "promise", tuple(self.promise))
        object.__setattr__(self, "forbid", tuple(self.forbid))
        if self.n < 1 or self.k < 1:
            raise MalformedInputError("n and k must be >= 1")
        for p in self.promise + self.forbid:
            if p.arity != self.n or p.colors != self.k:
                raise MalformedInputError(
                    f"pattern {p} has arity/colors {p.arity}/{p.colors}, expected {self.n}/{self.k}")


@dataclass
class Witness:
    chi: Chi
    ambient: OrderedGraph
    pattern: Pattern

    def replay(self) -> bool:
        f = induced_coloring(self.chi, self.ambient)
        return satisfies(f, tuple(range(self.ambient.size)), self.pattern)


@dataclass
class Verdict:
    problem: str
    mode: Mode
    outcome: Outcome
    witness: Witness | None = None
    stats: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        w = None
        if self.witness is not None:
            w = {"chi": list(self.witness.chi.assignment),
                 "graph": self.witness.ambient.text(),
                 "pattern": self.witness.pattern.render()}
        return {"problem": self.problem, "mode": self.mode.value,
                "outcome": self.outcome.value, "witness": w, "stats": self.stats}

    def text(self) -> str:
        lines = [f"{self.problem} [{self.mode.value}]: {self.outcome.value}"]
        if self.witness is not None:
            lines.append(f"  chi     = ({self.witness.chi.text()})")
            lines.append(f"  graph   = {self.witness.ambient.text()}")
            lines.append(f"  pattern = {self.witness.pattern.render()}")
        for c in self.stats.get("caveats", []):
            lines.append(f"  caveat: {c}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# colorings induced on ambient graphs


def induced_coloring(chi: Chi, ambient: OrderedGraph) -> FiniteColoring:
    if ambient.family is not chi.family:
        raise MalformedInputError(
            f"ambient family {ambient.family.value} does not match chi family {chi.family.value}")
    if ambient.size < chi.n:
        raise MalformedInputError(f"ambient graph has fewer than {chi.n} vertices")
    idx = index_of(chi.family, chi.n)
    return FiniteColoring.from_function(
        chi.n, chi.k, range(ambient.size),
        lambda *d: chi.assignment[idx[_induced(chi.family, ambient, d)]])


@lru_cache(maxsize=4096)
def _clause_graphs(family: Family, n: int, index_sets: tuple[tuple[int, ...], ...], span: int,
                   cap: int) -> tuple[tuple[int, ...], ...]:
    """For every ambient graph of size ``span``: the chi-index of each clause's induced graph."""
    idx = index_of(family, n)
    out = []
    for g in enumerate_family(family, span, cap):
        out.append(tuple(idx[_induced(family, g, d)] for d in index_sets))
    return tuple(out)


def _check_family_size(family: Family, span: int, caps: Caps):
    if span > caps.max_span:
        raise InfeasibleSizeError(f"pattern span {span} exceeds max span {caps.max_span}",
                                  family_count(family, span), caps.max_span)
    count = family_count(family, span)
    if count > caps.graphs:
        raise InfeasibleSizeError(
            f"|{family.value}_{span}| = {count} exceeds graph cap {caps.graphs}", count, caps.graphs)


class _Requirements:
    """Patterns grouped by their index sets, each shape mapped over its ambient graphs."""

    def __init__(self, patterns: Sequence[Pattern], family: Family, n: int, caps: Caps):
        self.family = family
        self.patterns = list(patterns)
        shapes: dict[tuple, dict[tuple[int, ...], int]] = {}
        for pi, p in enumerate(self.patterns):
            if not p.is_consistent():
                continue
            sets = tuple(d for d, _ in p.clauses)
            values = tuple(v for _, v in p.clauses)
            shapes.setdefault((sets, p.span), {}).setdefault(values, pi)
        self.shapes = []
        self.graph_counts: dict[int, int] = {}
        for (sets, span), table in shapes.items():
            _check_family_size(family, span, caps)
            self.graph_counts[span] = family_count(family, span)
            self.shapes.append((span, _clause_graphs(family, n, sets, span, caps.graphs), table))

    def first_hit(self, colors: Sequence[int]) -> tuple[int, int, int] | None:
        """Least (span, graph index, pattern index) met under ``colors``."""
        best = None
        for span, rows, table in self.shapes:
            for gi, row in enumerate(rows):
                pi = table.get(tuple(colors[i] for i in row))
                if pi is not None and (best is None or (span, gi, pi) < best):
                    best = (span, gi, pi)
                    break  # later graphs of this shape come after gi
        return best

    def hit_any(self, colors: Sequence[int]) -> bool:
        for _, rows, table in self.shapes:
            for row in rows:
                if tuple(colors[i] for i in row) in table:
                    return True
        return False

    def partial_checks(self, m: int) -> list[list[list[tuple[int, int]]]]:
        """Requirements (as (chi index, color) lists) bucketed by their largest chi index."""
        buckets: list[list[list[tuple[int, int]]]] = [[] for _ in range(m)]
        seen = set()
        for _, rows, table in self.shapes:
            for values in table:
                for row in rows:
                    need = {}
                    ok = True
                    for i, v in zip(row, values):
                        if need.setdefault(i, v) != v:
                            ok = False
                            break
                    if not ok:
                        continue
                    key = frozenset(need.items())
                    if key in seen:
                        continue
                    seen.add(key)
                    buckets[max(need)].append(sorted(need.items()))
        return buckets


def _chi_space(family: Family, n: int, k: int, caps: Caps) -> int:
    m = family_count(family, n)
    total = k ** m
    if total > caps.chi:
        raise InfeasibleSizeError(
            f"{k}^{m} = {total} colorings of {family.value}_{n} exceed chi cap {caps.chi}",
            total, caps.chi)
    return total


def all_chis(family: Family | str, n: int, k: int, caps: Caps = DEFAULT_CAPS) -> list[Chi]:
    family = Family.parse(family)
    _chi_space(family, n, k, caps)
    m = family_count(family, n)
    return [Chi(family, n, k, a) for a in itertools.product(range(k), repeat=m)]


def promise_class(n: int, k: int, promise: Sequence[Pattern], family: Family | str,
                  caps: Caps = DEFAULT_CAPS) -> list[Chi]:
    """Every chi under which no pattern of ``promise`` is met on any ambient graph."""
    family = Family.parse(family)
    _chi_space(family, n, k, caps)
    if not promise:
        return all_chis(family, n, k, caps)
    m = family_count(family, n)
    buckets = _Requirements(promise, family, n, caps).partial_checks(m)
    out: list[Chi] = []
    colors = [0] * m

    def dfs(i: int):
        if i == m:
            out.append(Chi(family, n, k, tuple(colors)))
            return
        for c in range(k):
            colors[i] = c
            if any(all(colors[j] == v for j, v in need) for need in buckets[i]):
                continue
            dfs(i + 1)

    dfs(0)
    return out


def constants_only(chi_class: Iterable[Chi]) -> bool:
    return all(c.is_constant() for c in chi_class)


def is_true_problem(forbid: Iterable[Pattern]) -> bool:
    """True iff no forbidden pattern is met by a constant coloring."""
    return not any(p.is_consistent() and len(p.values()) == 1 for p in forbid)


def identity_reducible(forbid: Sequence[Pattern], chi_class: Sequence[Chi], caps: Caps = DEFAULT_CAPS,
                       name: str = "", mode: Mode | None = None) -> Verdict:
    """Avoids iff no chi in the class meets a forbidden pattern on any span-sized ambient graph."""
    chi_class = list(chi_class)
    if chi_class:
        family = chi_class[0].family
        if any(c.family is not family for c in chi_class):
            raise MalformedInputError("chi class mixes graph families")
    else:
        family = mode.family if mode else Family.LARGENESS
    if mode is None:
        mode = {Family.LARGENESS: Mode.SCA, Family.PACKED: Mode.CA, Family.VECTOR: Mode.ARITH_SCA}[family]
    stats = {"chi_count": len(chi_class), "graph_counts": {}}
    if not chi_class or not forbid:
        return Verdict(name, mode, Outcome.AVOIDS, None, stats)
    n = chi_class[0].n
    reqs = _Requirements(forbid, family, n, caps)
    stats["graph_counts"] = {str(s): c for s, c in sorted(reqs.graph_counts.items())}
    for chi in chi_class:
        hit = reqs.first_hit(chi.assignment)
        if hit is None:
            continue
        span, gi, pi = hit
        ambient = enumerate_family(family, span, caps.graphs)[gi]
        w = Witness(chi, ambient, forbid[pi])
        if not w.replay():
            raise AssertionError(f"witness does not replay: {w}")
        return Verdict(name, mode, Outcome.FAILS, w, stats)
    return Verdict(name, mode, Outcome.AVOIDS, None, stats)


def realize_witness(w: Witness, budget: int = 10**4) -> bool:
    """Build an explicit coloring for the witness and check it meets the pattern."""
    mu, d = realize_graph(w.chi.family, w.ambient, budget)
    f = explicit_coloring(w.chi, w.chi.family, mu, d, w.chi.n, w.chi.k)
    e = meets(f, d, w.pattern)
    return e is not None


def decide(problem: Problem, mode: Mode | str, caps: Caps = DEFAULT_CAPS, realize: bool = True) -> Verdict:
    mode = Mode.parse(mode)
    family = mode.family
    start = time.perf_counter()
    space = _chi_space(family, problem.n, problem.k, caps)
    chi_class = promise_class(problem.n, problem.k, problem.promise, family, caps)
    verdict = identity_reducible(problem.forbid, chi_class, caps, problem.name, mode)
    verdict.stats["chi_space"] = space
    verdict.stats["constants_only"] = constants_only(chi_class)
    caveats = []
    if verdict.witness is not None and realize:
        try:
            ok = realize_witness(verdict.witness)
        except RealizationError as exc:
            ok = False
            caveats.append(f"ambient graph not realized: {exc}")
        else:
            if not ok:
                caveats.append("realized coloring does not meet the witness pattern")
        verdict.stats["realized"] = ok
    if mode is Mode.CA and verdict.outcome is Outcome.FAILS:
        caveats.append("cone-avoidance failure holds relative to an oracle; not modeled")
    verdict.stats["caveats"] = caveats
    verdict.stats["elapsed_s"] = round(time.perf_counter() - start, 4)
    return verdict


# ---------------------------------------------------------------------------
# thin set


@lru_cache(maxsize=None)
def _induced_set(family: Family, n: int, g: OrderedGraph) -> frozenset[int]:
    idx = index_of(family, n)
    return frozenset(idx[_induced(family, g, d)] for d in itertools.combinations(range(g.size), n))


def max_realizable_colors(chi: Chi, r_max: int, caps: Caps = DEFAULT_CAPS) -> int:
    """Most distinct colors chi induces on one ambient graph of size <= r_max."""
    target = len(set(chi.assignment))
    best = 0
    for r in range(chi.n, r_max + 1):
        _check_family_size(chi.family, r, caps)
        for g in enumerate_family(chi.family, r, caps.graphs):
            got = len({chi.assignment[i] for i in _induced_set(chi.family, chi.n, g)})
            best = max(best, got)
            if best == target:
                return best
    return best


def decide_thin_set(n: int, k: int, ell: int, mode: Mode | str, r_max: int = 9,
                    caps: Caps = DEFAULT_CAPS) -> Verdict:
    """Can solutions always be chosen with at most ``ell`` colors?

    Fails exactly when some chi shows more than ``ell`` colors on a single
    ambient graph; the witness pattern asks for ell+1 distinct colors there.
    """
    mode = Mode.parse(mode)
    family = mode.family
    name = f"THIN({n},{k},{ell})"
    m = family_count(family, n)
    stats = {"family_size": m, "threshold": min(k, m)}
    if ell >= min(k, m):
        return Verdict(name, mode, Outcome.AVOIDS, None, stats)
    best_g, best = None, set()
    for r in range(n, r_max + 1):
        _check_family_size(family, r, caps)
        for g in enumerate_family(family, r, caps.graphs):
            s = _induced_set(family, n, g)
            if len(s) > len(best):
                best_g, best = g, s
        if len(best) == m:
            break
    stats["cover_size"] = len(best)
    stats["cover_found"] = len(best) == m
    if min(k, len(best)) <= ell:
        raise InconclusiveBoundError(
            f"no ambient graph of size <= {r_max} shows more than {ell} of the {m} graphs")
    order = sorted(best)
    assignment = [0] * m
    for c, i in enumerate(order):
        assignment[i] = min(c, k - 1)
    chi = Chi(family, n, k, tuple(assignment))
    # one n-subset per color, lex-least
    f = induced_coloring(chi, best_g)
    picks: dict[int, tuple[int, ...]] = {}
    for d in itertools.combinations(range(best_g.size), n):
        picks.setdefault(f.values[d], d)
    clauses = [(picks[c], c) for c in sorted(picks)[:ell + 1]]
    pattern = Pattern.of(n, k, clauses)
    w = Witness(chi, best_g, pattern)
    if not w.replay():
        raise AssertionError("thin-set witness does not replay")
    stats["ambient_size"] = best_g.size
    return Verdict(name, mode, Outcome.FAILS, w, stats)
