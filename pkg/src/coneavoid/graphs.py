"""Ordered graphs on {0..n-1}: vector, largeness and packed families.

A graph records, for a configuration of points x_0 < ... < x_{n-1}, which
adjacent intervals are large (edges {i, i+1}) and which later points are big
enough to witness the smallness of an adjacent interval (edges {i, j} with
j > i + 1).
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InfeasibleSizeError, MalformedGraphError, MalformedInputError

Edge = tuple[int, int]


class Family(str, enum.Enum):
    VECTOR = "vector"
    LARGENESS = "largeness"
    PACKED = "packed"

    @classmethod
    def parse(cls, name: str | Family) -> Family:
        if isinstance(name, Family):
            return name
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise MalformedInputError(f"unknown graph family {name!r}") from None


def pair_rank(i: int, j: int, size: int) -> int:
    """Lexicographic rank of the pair (i, j), i < j < size."""
    return i * (2 * size - i - 1) // 2 + (j - i - 1)


@dataclass(frozen=True)
class OrderedGraph:
    size: int
    edges: frozenset[Edge]
    family: Family

    def __post_init__(self):
        object.__setattr__(self, "family", Family.parse(self.family))
        if self.size < 1:
            raise MalformedGraphError(f"graph size must be >= 1, got {self.size}")
        norm = set()
        for e in self.edges:
            i, j = sorted(e)
            if not (0 <= i < j < self.size):
                raise MalformedGraphError(
                    f"edge {{{i},{j}}} out of range for size {self.size}")
            norm.add((i, j))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def of(cls, family: Family | str, size: int, edges: Iterable[Iterable[int]] = ()) -> OrderedGraph:
        return cls(size, frozenset(tuple(sorted(e)) for e in edges), Family.parse(family))

    def has(self, i: int, j: int) -> bool:
        return (i, j) in self.edges

    @property
    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    @property
    def mask(self) -> int:
        return sum(1 << pair_rank(i, j, self.size) for i, j in self.edges)

    def text(self) -> str:
        body = ",".join(f"{{{i},{j}}}" for i, j in self.sorted_edges)
        return f"{self.family.value}:{self.size}:[{body}]"

    def __str__(self) -> str:
        return self.text()


_GRAPH_RE = re.compile(r"^\s*(\w+)\s*:\s*(\d+)\s*:\s*\[(.*)\]\s*$")
_EDGE_RE = re.compile(r"\{\s*(\d+)\s*,\s*(\d+)\s*\}")


def parse_graph(text: str) -> OrderedGraph:
    """Inverse of :meth:`OrderedGraph.text`."""
    m = _GRAPH_RE.match(text)
    if not m:
        raise MalformedInputError(f"cannot parse graph {text!r}")
    family, size, body = m.groups()
    edges = [(int(a), int(b)) for a, b in _EDGE_RE.findall(body)]
    leftover = _EDGE_RE.sub("", body).replace(",", "").strip()
    if leftover:
        raise MalformedInputError(f"cannot parse edge list {body!r}")
    return OrderedGraph.of(family, int(size), edges)


# ---------------------------------------------------------------------------
# validation


def _largeness_conditions(g: OrderedGraph, check_ab: bool = True) -> bool:
    n, has = g.size, g.has
    if check_ab:
        for i in range(n - 1):
            # (a)
            if has(i, i + 1) and any(has(i, j) for j in range(i + 2, n)):
                return False
        for i in range(n - 1):
            # (b)
            if has(i, i + 1):
                continue
            for j in range(i + 1, n - 1):
                if has(j, j + 1) and not has(i, j + 1):
                    return False
    for i in range(n):
        # (c)
        for j in range(i + 2, n - 1):
            if has(i, j) and not has(i, j + 1):
                return False
    for i in range(n):
        # (d)
        for j in range(i + 2, n):
            if has(i, j):
                continue
            for k in range(j + 1, n):
                if has(i, k) and not has(j - 1, k):
                    return False
    return True


def validate(g: OrderedGraph) -> bool:
    adjacent = [j == i + 1 for i, j in g.edges]
    if g.family is Family.VECTOR:
        return all(adjacent)
    if g.family is Family.PACKED:
        return not any(adjacent) and _largeness_conditions(g, check_ab=False)
    return _largeness_conditions(g)


# ---------------------------------------------------------------------------
# counting and enumeration


@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    """n-th Catalan number via C_{m+1} = sum_i C_i C_{m-i}."""
    if n < 0:
        raise ValueError("catalan is defined for n >= 0")
    if n == 0:
        return 1
    return sum(catalan(i) * catalan(n - 1 - i) for i in range(n))


def family_count(family: Family | str, size: int) -> int:
    family = Family.parse(family)
    if size < 1:
        raise MalformedInputError("graph size must be >= 1")
    if family is Family.VECTOR:
        return 2 ** (size - 1)
    if family is Family.LARGENESS:
        return catalan(size)
    return catalan(size - 1)


_LARGE = -1


def _statuses(size: int, allow_large: bool):
    """Yield per-vertex statuses of every largeness (or packed) graph.

    Vertex i < size-1 is either ``_LARGE`` (adjacent edge {i,i+1}) or small
    with threshold t in [i+2, size]: edges {i, j} for every j >= t. This
    shape already encodes (a) and (c); (b) and (d) are enforced while
    filling statuses from the right.
    """
    last = size - 1
    status = [0] * max(last, 0)

    def fill(i: int, first_large: int | None):
        if i < 0:
            yield tuple(status)
            return
        if allow_large:
            status[i] = _LARGE
            yield from fill(i - 1, i)
        hi = size if first_large is None else first_large + 1
        for t in range(i + 2, hi + 1):
            # (d): every m in [i+1, t-2] must be small with threshold <= t
            if all(status[m] != _LARGE and status[m] <= t for m in range(i + 1, t - 1)):
                status[i] = t
                yield from fill(i - 1, first_large)

    yield from fill(last - 1, None)


def _graph_from_status(family: Family, size: int, status: Sequence[int]) -> OrderedGraph:
    edges = []
    for i, t in enumerate(status):
        if t == _LARGE:
            if family is not Family.PACKED:
                edges.append((i, i + 1))
        elif family is not Family.VECTOR:
            edges.extend((i, j) for j in range(t, size))
    return OrderedGraph(size, frozenset(edges), family)


@lru_cache(maxsize=64)
def _enumerate(family: Family, size: int) -> tuple[OrderedGraph, ...]:
    if family is Family.VECTOR:
        out = [OrderedGraph.of(family, size, [(i, i + 1) for i in range(size - 1) if bits >> i & 1])
               for bits in range(2 ** (size - 1))]
    else:
        allow_large = family is Family.LARGENESS
        out = [_graph_from_status(family, size, st) for st in _statuses(size, allow_large)]
    out.sort(key=lambda g: g.mask)
    return tuple(out)


DEFAULT_ENUM_CAP = 10**6


def enumerate_family(family: Family | str, size: int, cap: int = DEFAULT_ENUM_CAP) -> tuple[OrderedGraph, ...]:
    """All graphs of ``family`` on ``size`` vertices, ordered by edge bitmask."""
    family = Family.parse(family)
    predicted = family_count(family, size)
    if predicted > cap:
        raise InfeasibleSizeError(
            f"|{family.value}_{size}| = {predicted} exceeds cap {cap}", predicted, cap)
    return _enumerate(family, size)


def enumerate_bruteforce(family: Family | str, size: int) -> list[OrderedGraph]:
    """Filter every edge subset through :func:`validate`. Exponential; for checks only."""
    family = Family.parse(family)
    pairs = list(itertools.combinations(range(size), 2))
    out = []
    for mask in range(2 ** len(pairs)):
        g = OrderedGraph.of(family, size, [p for b, p in enumerate(pairs) if mask >> b & 1])
        if validate(g):
            out.append(g)
    return out


@lru_cache(maxsize=64)
def index_of(family: Family, size: int) -> dict[OrderedGraph, int]:
    return {g: i for i, g in enumerate(_enumerate(family, size))}


# ---------------------------------------------------------------------------
# sub-configurations


def induced(family: Family | str, g: OrderedGraph, positions: Sequence[int], m: int | None = None) -> OrderedGraph:
    """The graph any realizing modulus assigns to the selected points.

    Adjacent edges compose by transitivity (an interval is large iff one of
    its adjacent sub-intervals is); a witness edge {p, q} needs every ambient
    adjacent sub-interval of [i_p, i_{p+1}] to be witnessed small by i_q.
    """
    family = Family.parse(family)
    positions = tuple(positions)
    if m is None:
        m = len(positions)
    if len(positions) != m:
        raise MalformedInputError(f"expected {m} positions, got {len(positions)}")
    if m < 1:
        raise MalformedInputError("at least one position is required")
    if any(b <= a for a, b in zip(positions, positions[1:])):
        raise MalformedInputError(f"positions {positions} are not strictly increasing")
    if positions[0] < 0 or positions[-1] >= g.size:
        raise MalformedInputError(f"positions {positions} out of range for size {g.size}")
    if g.family is not family:
        raise MalformedInputError(f"graph family {g.family.value} does not match {family.value}")
    return _induced(family, g, positions)


def _induced(family: Family, g: OrderedGraph, positions: tuple[int, ...]) -> OrderedGraph:
    has = g.has
    m = len(positions)
    edges = []
    if family is not Family.PACKED:
        for p in range(m - 1):
            if any(has(c, c + 1) for c in range(positions[p], positions[p + 1])):
                edges.append((p, p + 1))
    if family is not Family.VECTOR:
        for p in range(m - 2):
            lo, hi = positions[p], positions[p + 1]
            for q in range(p + 2, m):
                iq = positions[q]
                if all(has(c, iq) for c in range(lo, hi)):
                    edges.append((p, q))
    return OrderedGraph(m, frozenset(edges), family)


def packed_reduce(g: OrderedGraph) -> OrderedGraph:
    """Map a packed graph of size n+1 to the largeness graph of size n it codes."""
    if g.family is not Family.PACKED or g.size < 2 or not validate(g):
        raise MalformedGraphError(f"{g.text()} is not a valid packed graph of size >= 2")
    n = g.size - 1
    edges = [(i, j) for i, j in g.edges if j < n]
    edges += [(i, i + 1) for i in range(n - 1) if not g.has(i, n)]
    return OrderedGraph.of(Family.LARGENESS, n, edges)


def packed_lift(g: OrderedGraph) -> OrderedGraph:
    """Inverse of :func:`packed_reduce`: the packed graph of size n+1 coding ``g``."""
    if g.family is not Family.LARGENESS or not validate(g):
        raise MalformedGraphError(f"{g.text()} is not a valid largeness graph")
    n = g.size
    edges = [(i, j) for i, j in g.edges if j > i + 1]
    edges += [(i, n) for i in range(n - 1) if not g.has(i, i + 1)]
    return OrderedGraph.of(Family.PACKED, n + 1, edges)


def as_largeness(g: OrderedGraph) -> OrderedGraph:
    """A largeness graph carrying the same information as ``g``.

    Packed graphs already are largeness graphs. A vector graph is completed
    by letting every later point witness every small adjacent interval.
    """
    if g.family is Family.LARGENESS:
        return g
    if g.family is Family.PACKED:
        return OrderedGraph(g.size, g.edges, Family.LARGENESS)
    n = g.size
    edges = set(g.edges)
    for i in range(n - 1):
        if not g.has(i, i + 1):
            edges.update((i, j) for j in range(i + 2, n))
    return OrderedGraph(n, frozenset(edges), Family.LARGENESS)
