"""Text formats: problem files and finite colorings."""

from __future__ import annotations

import re

from .decide import Problem
from .errors import ConeAvoidError, MalformedInputError
from .patterns import FiniteColoring, parse

_KV = re.compile(r"^\s*(\w+)\s*=\s*(\S+)\s*$")


def parse_problem(text: str) -> Problem:
    """Read ``name = ..``, ``n = ..``, ``k = ..`` then ``[promise]`` and ``[forbid]`` pattern lines."""
    header: dict[str, str] = {}
    sections: dict[str, list[tuple[int, str]]] = {"promise": [], "forbid": []}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip().lower()
            if current not in sections:
                raise MalformedInputError(f"line {lineno}: unknown section [{current}]")
            continue
        if current is None:
            m = _KV.match(line)
            if not m:
                raise MalformedInputError(f"line {lineno}: expected key = value, got {raw.strip()!r}")
            header[m.group(1).lower()] = m.group(2)
        else:
            sections[current].append((lineno, line))
    for key in ("name", "n", "k"):
        if key not in header:
            raise MalformedInputError(f"missing header field {key!r}")
    unknown = set(header) - {"name", "n", "k"}
    if unknown:
        raise MalformedInputError(f"unknown header fields {sorted(unknown)}")
    try:
        n, k = int(header["n"]), int(header["k"])
    except ValueError:
        raise MalformedInputError("n and k must be integers") from None
    if not sections["forbid"]:
        raise MalformedInputError("[forbid] needs at least one pattern")

    def patterns(kind):
        out = []
        for lineno, line in sections[kind]:
            try:
                out.append(parse(line, n, k))
            except ConeAvoidError as exc:
                raise MalformedInputError(f"line {lineno}: {exc}") from exc
        return tuple(out)

    return Problem(header["name"], n, k, patterns("promise"), patterns("forbid"))


def render_problem(p: Problem) -> str:
    lines = [f"name = {p.name}", f"n = {p.n}", f"k = {p.k}", "", "[promise]"]
    lines += [q.render() for q in p.promise]
    lines += ["", "[forbid]"]
    lines += [q.render() for q in p.forbid]
    return "\n".join(lines) + "\n"


def parse_coloring(text: str) -> FiniteColoring:
    """``arity = n``, ``colors = k``, ``domain = 0 1 2 ...`` then lines ``x y ...: c``."""
    header: dict[str, str] = {}
    values: dict[tuple[int, ...], int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" in line:
            key, _, val = line.partition("=")
            header[key.strip().lower()] = val.strip()
            continue
        head, sep, val = line.partition(":")
        if not sep:
            raise MalformedInputError(f"line {lineno}: expected 'points: color'")
        try:
            values[tuple(sorted(int(t) for t in head.split()))] = int(val)
        except ValueError:
            raise MalformedInputError(f"line {lineno}: bad coloring entry {raw.strip()!r}") from None
    try:
        arity = int(header["arity"])
        colors = int(header["colors"])
        domain = [int(t) for t in header["domain"].split()]
    except (KeyError, ValueError):
        raise MalformedInputError("coloring needs integer arity, colors and domain headers") from None
    return FiniteColoring(arity, colors, tuple(domain), values)


def render_coloring(f: FiniteColoring) -> str:
    lines = [f"arity = {f.arity}", f"colors = {f.colors}", "domain = " + " ".join(map(str, f.domain))]
    lines += [" ".join(map(str, d)) + f": {c}" for d, c in sorted(f.values.items())]
    return "\n".join(lines) + "\n"
