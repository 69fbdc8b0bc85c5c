"""Patterns (finite conjunctions of color constraints) and finite colorings."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .errors import MalformedInputError, PatternError, PatternSyntaxError

Clause = tuple[tuple[int, ...], int]


@dataclass(frozen=True)
class Pattern:
    """Conjunction of clauses ``f(D) = v`` over variables x_0 < x_1 < ..."""

    arity: int
    colors: int
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        if self.arity < 1 or self.colors < 1:
            raise PatternError("arity and colors must be >= 1")
        canon = set()
        for idx, value in self.clauses:
            idx = tuple(idx)
            if len(set(idx)) != len(idx):
                raise PatternError(f"duplicate index in clause {idx}")
            idx = tuple(sorted(idx))
            if len(idx) != self.arity:
                raise PatternError(f"clause {idx} has {len(idx)} indices, expected {self.arity}")
            if any(i < 0 for i in idx):
                raise PatternError(f"negative index in clause {idx}")
            if not 0 <= value < self.colors:
                raise PatternError(f"value {value} is not a color < {self.colors}")
            canon.add((idx, int(value)))
        if not canon:
            raise PatternError("a pattern needs at least one clause")
        object.__setattr__(self, "clauses", tuple(sorted(canon)))

    @classmethod
    def of(cls, arity: int, colors: int, clauses: Iterable[tuple[Iterable[int], int]]) -> Pattern:
        return cls(arity, colors, tuple((tuple(d), v) for d, v in clauses))

    @property
    def span(self) -> int:
        return 1 + max(max(d) for d, _ in self.clauses)

    def render(self) -> str:
        return " & ".join(f"f({{{','.join(map(str, d))}}})={v}" for d, v in self.clauses)

    def __str__(self) -> str:
        return self.render()

    def is_consistent(self) -> bool:
        seen: dict[tuple[int, ...], int] = {}
        for d, v in self.clauses:
            if seen.setdefault(d, v) != v:
                return False
        return True

    def values(self) -> set[int]:
        return {v for _, v in self.clauses}


_TOKEN = re.compile(r"\s*(?:(f)|(\d+)|([(){},=&]))")


def parse(text: str, n: int, k: int) -> Pattern:
    """Parse ``f({0,1})=0 & f({2,3})=1`` into a canonical :class:`Pattern`."""
    tokens: list[tuple[str, int]] = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m:
            raise PatternSyntaxError(f"unexpected character {stripped[pos]!r}", pos)
        start = m.start(m.lastindex)
        tokens.append((m.group(m.lastindex), start))
        pos = m.end()
    tokens.append(("", len(stripped)))

    i = 0

    def expect(want: str) -> int:
        nonlocal i
        tok, at = tokens[i]
        if tok != want:
            raise PatternSyntaxError(f"expected {want!r}, found {tok or 'end of input'!r}", at)
        i += 1
        return at

    def number() -> int:
        nonlocal i
        tok, at = tokens[i]
        if not tok.isdigit():
            raise PatternSyntaxError(f"expected a number, found {tok or 'end of input'!r}", at)
        i += 1
        return int(tok)

    clauses = []
    while True:
        expect("f")
        expect("(")
        expect("{")
        idx = [number()]
        while tokens[i][0] == ",":
            i += 1
            idx.append(number())
        expect("}")
        expect(")")
        expect("=")
        value = number()
        if len(set(idx)) != len(idx):
            raise PatternError(f"duplicate index in clause {{{','.join(map(str, idx))}}}")
        clauses.append((tuple(idx), value))
        if tokens[i][0] == "&":
            i += 1
            continue
        if tokens[i][0] != "":
            raise PatternSyntaxError(f"expected '&' or end of input, found {tokens[i][0]!r}", tokens[i][1])
        break
    return Pattern.of(n, k, clauses)


def parse_many(lines: Iterable[str], n: int, k: int) -> list[Pattern]:
    out = []
    for line in lines:
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse(line, n, k))
    return out


@dataclass(frozen=True)
class FiniteColoring:
    """A coloring of the ``arity``-subsets of a finite domain."""

    arity: int
    colors: int
    domain: tuple[int, ...]
    values: Mapping[tuple[int, ...], int] = field(hash=False, compare=True)

    def __post_init__(self):
        dom = tuple(sorted(set(self.domain)))
        object.__setattr__(self, "domain", dom)
        vals = {tuple(sorted(key)): int(v) for key, v in self.values.items()}
        for key in itertools.combinations(dom, self.arity):
            if key not in vals:
                raise MalformedInputError(f"coloring is not total: missing {key}")
            if not 0 <= vals[key] < self.colors:
                raise MalformedInputError(f"color {vals[key]} at {key} out of range")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, arity: int, colors: int, domain: Iterable[int],
                      fn: Callable[..., int]) -> FiniteColoring:
        dom = tuple(sorted(set(domain)))
        return cls(arity, colors, dom, {d: fn(*d) for d in itertools.combinations(dom, arity)})

    @classmethod
    def constant(cls, arity: int, colors: int, domain: Iterable[int], c: int) -> FiniteColoring:
        return cls.from_function(arity, colors, domain, lambda *_: c)

    def __call__(self, *points: int) -> int:
        return self.values[tuple(sorted(points))]

    def image(self, h: Iterable[int]) -> set[int]:
        return {self.values[d] for d in itertools.combinations(sorted(h), self.arity)}


def _check(f: FiniteColoring, p: Pattern):
    if f.arity != p.arity:
        raise PatternError(f"coloring arity {f.arity} does not match pattern arity {p.arity}")


def satisfies(f: FiniteColoring, e: Sequence[int], p: Pattern) -> bool:
    _check(f, p)
    e = tuple(e)
    if len(e) < p.span:
        raise MalformedInputError(f"need at least {p.span} points, got {len(e)}")
    if any(b <= a for a, b in zip(e, e[1:])):
        raise MalformedInputError(f"points {e} are not increasing")
    dom = set(f.domain)
    if any(x not in dom for x in e):
        raise MalformedInputError(f"points {e} not within the coloring's domain")
    return all(f.values[tuple(e[i] for i in d)] == v for d, v in p.clauses)


def meets(f: FiniteColoring, h: Iterable[int], p: Pattern) -> tuple[int, ...] | None:
    """Lexicographically least E in [H]^span satisfying ``p``, or None."""
    _check(f, p)
    h = sorted(set(h))
    dom = set(f.domain)
    if any(x not in dom for x in h):
        raise MalformedInputError("H is not within the coloring's domain")
    if not p.is_consistent():
        return None
    r = p.span
    # clauses grouped by the largest index they mention, checked once it is placed
    by_last: list[list[Clause]] = [[] for _ in range(r)]
    for d, v in p.clauses:
        by_last[d[-1]].append((d, v))
    chosen: list[int] = []
    vals = f.values

    def extend(start: int) -> bool:
        pos = len(chosen)
        if pos == r:
            return True
        for j in range(start, len(h) - (r - pos) + 1):
            chosen.append(h[j])
            if all(vals[tuple(chosen[i] for i in d)] == v for d, v in by_last[pos]) and extend(j + 1):
                return True
            chosen.pop()
        return False

    return tuple(chosen) if extend(0) else None


def avoids(f: FiniteColoring, h: Iterable[int], p: Pattern) -> bool:
    return meets(f, h, p) is None
