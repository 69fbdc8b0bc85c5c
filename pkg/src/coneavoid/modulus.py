"""Finite-window model of left-c.e. moduli and their largeness analysis.

A :class:`StagedFunction` is a table of approximations ``mu_s(x)`` for
``s, x < horizon`` together with a limit in the extended naturals. An
interval ``[x, y]`` is mu-large when ``mu(x) <= y`` and mu_s-large when
``mu_s(x) <= y``.
"""

from __future__ import annotations

import functools
import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence, Union

from .errors import (HorizonExhausted, MalformedInputError, PromiseViolation,
                     RealizationError, UnsupportedInputError)
from .graphs import Family, OrderedGraph, as_largeness, packed_lift, validate
from .patterns import FiniteColoring


@functools.total_ordering
class _Omega:
    """The top element of the extended naturals."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __le__(self, other):
        return other is self

    def __ge__(self, other):
        return True

    def __hash__(self):
        return hash("OMEGA")

    def __repr__(self):
        return "OMEGA"

    def __str__(self):
        return "w"

    def __reduce__(self):
        return (_Omega, ())


OMEGA = _Omega()
ExtendedNat = Union[int, _Omega]


def ext_parse(token: str) -> ExtendedNat:
    token = token.strip()
    if token in ("w", "omega", "OMEGA"):
        return OMEGA
    try:
        v = int(token)
    except ValueError:
        raise MalformedInputError(f"not an extended natural: {token!r}") from None
    if v < 0:
        raise MalformedInputError(f"negative value {v}")
    return v


def _lt(a: ExtendedNat, b: ExtendedNat) -> bool:
    # int < OMEGA must go through OMEGA.__gt__
    if b is OMEGA:
        return a is not OMEGA
    if a is OMEGA:
        return False
    return a < b


@dataclass(frozen=True)
class StagedFunction:
    horizon: int
    stages: tuple[tuple[int, ...], ...]
    limit: tuple[ExtendedNat, ...]

    def __post_init__(self):
        n = self.horizon
        if n < 1:
            raise MalformedInputError("horizon must be >= 1")
        stages = tuple(tuple(int(v) for v in row) for row in self.stages)
        limit = tuple(OMEGA if v is OMEGA else int(v) for v in self.limit)
        if len(stages) != n or any(len(row) != n for row in stages):
            raise MalformedInputError(f"stage table must be {n} x {n}")
        if len(limit) != n:
            raise MalformedInputError(f"limit must have {n} entries")
        for s in range(n):
            for x in range(n):
                v = stages[s][x]
                if v < 0:
                    raise MalformedInputError(f"negative stage value at s={s}, x={x}")
                if s and v < stages[s - 1][x]:
                    raise MalformedInputError(f"stage decrease at s={s}, x={x}")
                if _lt(limit[x], v):
                    raise MalformedInputError(f"stage value above limit at s={s}, x={x}")
        object.__setattr__(self, "stages", stages)
        object.__setattr__(self, "limit", limit)

    @classmethod
    def from_functions(cls, horizon: int, stage: Callable[[int, int], int],
                       limit: Callable[[int], ExtendedNat]) -> StagedFunction:
        return cls(horizon,
                   tuple(tuple(stage(s, x) for x in range(horizon)) for s in range(horizon)),
                   tuple(limit(x) for x in range(horizon)))

    def at(self, s: int, x: int) -> int:
        if not (0 <= s < self.horizon and 0 <= x < self.horizon):
            raise MalformedInputError(f"mu_{s}({x}) is outside horizon {self.horizon}")
        return self.stages[s][x]

    def lim(self, x: int) -> ExtendedNat:
        if not 0 <= x < self.horizon:
            raise MalformedInputError(f"mu({x}) is outside horizon {self.horizon}")
        return self.limit[x]

    def settled(self, x: int) -> bool:
        """True when the last stage and the limit agree on every comparison inside the window."""
        n = self.horizon
        last = self.stages[-1][x]
        lim = self.limit[x]
        return min(last, n) == (n if lim is OMEGA else min(lim, n))

    def is_settled(self) -> bool:
        return all(self.settled(x) for x in range(self.horizon))

    def text(self) -> str:
        w = len(str(self.horizon - 1))
        lines = [f"horizon={self.horizon}"]
        for s, row in enumerate(self.stages):
            lines.append(f"{s:>{w}}: " + " ".join(map(str, row)))
        lines.append("limit: " + " ".join(map(str, self.limit)))
        return "\n".join(lines) + "\n"


def parse_staged(text: str) -> StagedFunction:
    horizon = None
    stages: dict[int, list[int]] = {}
    limit = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("horizon"):
            key, _, val = line.partition("=")
            try:
                horizon = int(val)
            except ValueError:
                raise MalformedInputError(f"bad horizon line {raw!r}") from None
            continue
        head, sep, body = line.partition(":")
        if not sep:
            raise MalformedInputError(f"bad staged line {raw!r}")
        values = [ext_parse(t) for t in body.split()]
        if head.strip() == "limit":
            limit = values
            continue
        try:
            s = int(head)
        except ValueError:
            raise MalformedInputError(f"bad stage index in {raw!r}") from None
        if any(v is OMEGA for v in values):
            raise MalformedInputError(f"stage {s} holds OMEGA; stage values must be finite")
        stages[s] = values
    if horizon is None or limit is None:
        raise MalformedInputError("staged text needs a horizon line and a limit line")
    if sorted(stages) != list(range(horizon)):
        raise MalformedInputError(f"expected stages 0..{horizon - 1}")
    return StagedFunction(horizon, tuple(tuple(stages[s]) for s in range(horizon)), tuple(limit))


# ---------------------------------------------------------------------------
# strongly increasing functions


def is_strongly_increasing(mu: StagedFunction) -> bool:
    n = mu.horizon
    st = mu.stages
    for row in st:
        if any(b < a for a, b in zip(row, row[1:])):
            return False
    for s in range(n - 1):
        cur, nxt = st[s], st[s + 1]
        for x in range(n):
            if nxt[x] > cur[x]:
                if any(nxt[y] <= s for y in range(x + 1, n)):
                    return False
                break  # later x are covered by the check just made
    return True


def strongly_increasing_transform(mu: StagedFunction) -> StagedFunction:
    """Dominate ``mu`` by a strongly increasing staged function.

    Follows the moving-threshold construction. One extra stage, fed with the
    limit of ``mu``, is computed and becomes the limit of the result; the
    construction is stationary from then on.
    """
    n = mu.horizon
    if any(v is OMEGA for v in mu.limit):
        raise UnsupportedInputError("transform needs finite limits inside the window")
    table = [list(row) for row in mu.stages] + [list(mu.limit)]
    stages = n + 1
    g = [[0] * n for _ in range(stages)]
    t = [[0] * n for _ in range(stages)]
    for x in range(n):
        for s in range(stages):
            v = max(table[s][x], t[s][x])
            if x:
                v = max(v, g[s][x - 1])
            if s:
                v = max(v, g[s - 1][x])
            g[s][x] = v
            if s and v > g[s - 1][x]:
                for y in range(x + 1, n):
                    t[s][y] = max(t[s][y], s)
    return StagedFunction(n, tuple(tuple(r) for r in g[:n]), tuple(g[n]))


# ---------------------------------------------------------------------------
# graphs of point configurations


LimitLike = Union[StagedFunction, Mapping[int, ExtendedNat], Sequence[ExtendedNat]]


def _limit_fn(mu: LimitLike) -> Callable[[int], ExtendedNat]:
    if isinstance(mu, StagedFunction):
        return mu.lim
    return mu.__getitem__


def graph_of(family: Family | str, mu: StagedFunction, d: Sequence[int]) -> OrderedGraph:
    family = Family.parse(family)
    d = tuple(d)
    if any(b <= a for a, b in zip(d, d[1:])):
        raise MalformedInputError(f"points {d} are not increasing")
    if d and (d[0] < 0 or d[-1] >= mu.horizon):
        raise MalformedInputError(f"points {d} exceed horizon {mu.horizon}")
    if not d:
        raise MalformedInputError("at least one point is required")
    n = len(d)
    edges = []
    if family is not Family.PACKED:
        for p in range(n - 1):
            if not mu.settled(d[p]):
                raise MalformedInputError(f"mu({d[p]}) is not settled inside the horizon")
            if not _lt(d[p + 1], mu.lim(d[p])):
                edges.append((p, p + 1))
    if family is not Family.VECTOR:
        for q in range(2, n):
            row = mu.stages[d[q]]
            for p in range(q - 1):
                if row[d[p]] > d[p + 1]:
                    edges.append((p, q))
    return OrderedGraph(n, frozenset(edges), family)


def is_mu_transitive(mu: LimitLike, h: Iterable[int]) -> bool:
    lim = _limit_fn(mu)
    h = sorted(set(h))
    for x, y, z in itertools.combinations(h, 3):
        lhs = _lt(y, lim(x)) and _lt(z, lim(y))
        if lhs != _lt(z, lim(x)):
            return False
    return True


def _strong_violation(mu: StagedFunction, h: Sequence[int]):
    for w, x, y, z in itertools.combinations(h, 4):
        row = mu.stages[z]
        if row[w] > x and row[x] > y and not row[w] > y:
            return (w, x, y, z)
    return None


def is_strongly_mu_transitive(mu: StagedFunction, h: Iterable[int]) -> bool:
    h = sorted(set(h))
    if h and h[-1] >= mu.horizon:
        raise MalformedInputError(f"points exceed horizon {mu.horizon}")
    return is_mu_transitive(mu, h) and _strong_violation(mu, h) is None


def thin_to_strongly_transitive(mu: StagedFunction, x: Iterable[int]) -> tuple[int, ...]:
    """Greedy strongly mu-transitive subsequence of a mu-transitive set."""
    xs = sorted(set(x))
    if not xs:
        return ()
    if xs[-1] >= mu.horizon:
        raise MalformedInputError(f"points exceed horizon {mu.horizon}")
    ys = [xs[0]]
    pos = 1
    while pos < len(xs):
        skipped = False
        found = None
        while pos < len(xs):
            cand = xs[pos]
            pos += 1
            row = mu.stages[cand]
            ok = all(not (row[a] > b and row[b] > c) or row[a] > c
                     for a, b, c in itertools.combinations(ys, 3))
            if ok:
                found = cand
                break
            skipped = True
        if found is None:
            if skipped:
                raise HorizonExhausted(
                    f"ran out of points after selecting {len(ys)}", tuple(ys))
            break
        ys.append(found)
    return tuple(ys)


def census(family: Family | str, mu: StagedFunction, window: Iterable[int], n: int) -> Counter:
    window = sorted(set(window))
    return Counter(graph_of(family, mu, d) for d in itertools.combinations(window, n))


# ---------------------------------------------------------------------------
# colorings and moduli


def _check_two_colors(f: FiniteColoring, h: Sequence[int], i_s: int, i_l: int):
    if i_s == i_l:
        raise MalformedInputError("the small and large colors must differ")
    for d in itertools.combinations(h, f.arity):
        if f.values[d] not in (i_s, i_l):
            raise PromiseViolation(f"f{d} = {f.values[d]} is neither {i_s} nor {i_l}", d)


def modulus_from_large_coloring(f: FiniteColoring, h: Iterable[int], i_s: int, i_l: int) -> dict[int, ExtendedNat]:
    """mu(x) = least y > x in H with f(x, y) = i_l, or OMEGA."""
    if f.arity != 2:
        raise MalformedInputError("expected a coloring of pairs")
    h = sorted(set(h))
    _check_two_colors(f, h, i_s, i_l)
    for x, y, z in itertools.combinations(h, 3):
        lhs = f(x, y) == i_s and f(y, z) == i_s
        if lhs != (f(x, z) == i_s):
            raise PromiseViolation(f"triple {(x, y, z)} breaks the transitivity biconditional", (x, y, z))
    mu: dict[int, ExtendedNat] = {}
    for i, x in enumerate(h):
        mu[x] = next((y for y in h[i + 1:] if f(x, y) == i_l), OMEGA)
    return mu


def packed_violation(f: FiniteColoring, h: Sequence[int], i_s: int, i_l: int):
    """First quadruple breaking a packed-coloring property, with its label."""
    for w, x, y, z in itertools.combinations(h, 4):
        if ((f(w, x, z) == i_s and f(x, y, z) == i_s) != (f(w, y, z) == i_s)):
            return "a", (w, x, y, z)
        if f(w, x, y) == i_s and f(w, x, z) != i_s:
            return "b", (w, x, y, z)
        if f(w, x, y) == i_l and f(w, x, z) == i_s and f(x, y, z) != i_s:
            return "c", (w, x, y, z)
    return None


def modulus_from_packed_coloring(f: FiniteColoring, h: Iterable[int], i_s: int, i_l: int) -> StagedFunction:
    """Staged modulus of a packed coloring of triples over H.

    ``mu_z(x)`` is the least y in H strictly between x_0 and z_0 with
    f(x_0, y, z_0) = i_l, else z, where x_0 and z_0 are the least elements
    of H at or above x and z. The horizon is max(H) + 1 and the limit is the
    last stage.
    """
    if f.arity != 3:
        raise MalformedInputError("expected a coloring of triples")
    h = sorted(set(h))
    if not h:
        raise MalformedInputError("H must be non-empty")
    _check_two_colors(f, h, i_s, i_l)
    bad = packed_violation(f, h, i_s, i_l)
    if bad:
        raise PromiseViolation(f"quadruple {bad[1]} breaks property ({bad[0]})", bad[1])
    n = h[-1] + 1
    ceil = [0] * n  # least element of H at or above x
    j = 0
    for x in range(n):
        while h[j] < x:
            j += 1
        ceil[x] = j

    def stage(z: int, x: int) -> int:
        a, c = ceil[x], ceil[z]
        for b in range(a + 1, c):
            if f.values[(h[a], h[b], h[c])] == i_l:
                return h[b]
        return z

    stages = tuple(tuple(stage(z, x) for x in range(n)) for z in range(n))
    return StagedFunction(n, stages, stages[-1])


def coloring_from_modulus(arity: int, mu: StagedFunction | Mapping[int, ExtendedNat], h: Iterable[int],
                          i_s: int, i_l: int, colors: int) -> FiniteColoring:
    """Rebuild the two-colored coloring a modulus codes on H."""
    h = sorted(set(h))
    if arity == 2:
        lim = _limit_fn(mu)
        return FiniteColoring.from_function(2, colors, h, lambda x, y: i_s if _lt(y, lim(x)) else i_l)
    if arity == 3:
        return FiniteColoring.from_function(
            3, colors, h, lambda x, y, z: i_s if mu.stages[z][x] > y else i_l)
    raise MalformedInputError("arity must be 2 or 3")


def realize_graph(family: Family | str, g: OrderedGraph, budget: int = 10**4) -> tuple[StagedFunction, tuple[int, ...]]:
    """Build a strongly increasing staged function and points realizing ``g``.

    The target is turned into a largeness graph L, L is coded by the packed
    graph G' on one more vertex, and G' defines a packed coloring of
    {0..n} whose modulus realizes L on the first n points. ``budget`` bounds
    the horizon.
    """
    family = Family.parse(family)
    if g.family is not family or not validate(g):
        raise MalformedInputError(f"{g.text()} is not a valid {family.value} graph")
    n = g.size
    if n + 1 > budget:
        raise RealizationError(f"horizon {n + 1} exceeds budget {budget}")
    lifted = packed_lift(as_largeness(g))
    pts = tuple(range(n + 1))

    def color(i: int, j: int, k: int) -> int:
        return 0 if all(lifted.has(m, k) for m in range(i, j)) else 1

    f = FiniteColoring.from_function(3, 2, pts, color)
    try:
        mu = modulus_from_packed_coloring(f, pts, 0, 1)
    except PromiseViolation as exc:
        raise RealizationError(f"coded coloring for {g.text()} is not packed: {exc}") from exc
    d = pts[:n]
    got = graph_of(family, mu, d)
    if got != g:
        raise RealizationError(f"realized {got.text()} instead of {g.text()}")
    if not is_strongly_increasing(mu):
        raise RealizationError(f"modulus for {g.text()} is not strongly increasing")
    transitive = is_mu_transitive(mu, d) if family is Family.VECTOR else is_strongly_mu_transitive(mu, d)
    if not transitive:
        raise RealizationError(f"points for {g.text()} are not transitive")
    return mu, d


def explicit_coloring(chi: Callable[[OrderedGraph], int], family: Family | str, mu: StagedFunction,
                      d: Sequence[int], n: int, colors: int) -> FiniteColoring:
    """f(D) = chi(graph_of(family, mu, D)) on the n-subsets of ``d``."""
    return FiniteColoring.from_function(n, colors, d, lambda *e: chi(graph_of(family, mu, e)))
