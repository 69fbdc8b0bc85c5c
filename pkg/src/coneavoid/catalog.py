"""Built-in encodings of classical Ramsey-like statements and their expected verdicts."""

from __future__ import annotations

import itertools
import re
import time
from dataclasses import dataclass, field

from .decide import (Caps, DEFAULT_CAPS, Mode, Outcome, Problem, decide, decide_thin_set)
from .errors import ConeAvoidError, InfeasibleSizeError, MalformedInputError
from .patterns import Pattern, parse


def rt_homogeneity_patterns(n: int, k: int) -> list[Pattern]:
    """Two-clause patterns f(D1)=i & f(D2)=j, i != j, D1 != D2 covering {0..r-1}, r <= 2n."""
    if n < 1 or k < 1:
        raise MalformedInputError("n and k must be >= 1")
    seen = set()
    out = []
    for r in range(n + 1, 2 * n + 1):
        for d1, d2 in itertools.permutations(itertools.combinations(range(r), n), 2):
            if set(d1) | set(d2) != set(range(r)):
                continue
            for i, j in itertools.permutations(range(k), 2):
                p = Pattern.of(n, k, [(d1, i), (d2, j)])
                if p.clauses not in seen:
                    seen.add(p.clauses)
                    out.append(p)
    return out


def rt22_literal() -> list[Pattern]:
    """The four-pattern homogeneity family for pairs in two colors."""
    return [parse(t, 2, 2) for t in (
        "f({0,1})=0 & f({2,3})=1",
        "f({0,1})=1 & f({2,3})=0",
        "f({0,2})=0 & f({1,3})=1",
        "f({0,2})=1 & f({1,3})=0",
    )]


def non_transitivity_patterns(k: int = 2) -> list[Pattern]:
    return [parse("f({0,1})=0 & f({1,2})=0 & f({0,2})=1", 2, k),
            parse("f({0,1})=1 & f({1,2})=1 & f({0,2})=0", 2, k)]


def sher_patterns(k: int, exempt: int | None = 1) -> list[Pattern]:
    """f(x,z) = f(y,z) = i forces f(x,y) = i, for every color i except ``exempt``."""
    out = []
    for i in range(k):
        if i == exempt:
            continue
        for j in range(k):
            if j != i:
                out.append(Pattern.of(2, k, [((0, 2), i), ((1, 2), i), ((0, 1), j)]))
    return out


def fs_bit(e: tuple[int, ...], n: int) -> int:
    """Bit position of the n-subset ``e`` of {0..n} in a free-set color word."""
    return list(itertools.combinations(range(n + 1), n)).index(tuple(e))


def fs_conflict_patterns(n: int) -> list[Pattern]:
    """Two (n+1)-tuples sharing an n-set A, each claiming A maps to its own remaining point."""
    k = 2 ** (n + 1)
    span = n + 2
    out = []
    seen = set()
    for a in itertools.combinations(range(span), n):
        r1, r2 = sorted(set(range(span)) - set(a))
        d1 = tuple(sorted(a + (r1,)))
        d2 = tuple(sorted(a + (r2,)))
        b1 = 1 << fs_bit(tuple(d1.index(x) for x in a), n)
        b2 = 1 << fs_bit(tuple(d2.index(x) for x in a), n)
        for c1 in range(k):
            if not c1 & b1:
                continue
            for c2 in range(k):
                if not c2 & b2:
                    continue
                p = Pattern.of(n + 1, k, [(d1, c1), (d2, c2)])
                if p.clauses not in seen:
                    seen.add(p.clauses)
                    out.append(p)
    return out


@dataclass(frozen=True)
class ThinSpec:
    n: int
    k: int
    ell: int


@dataclass
class CatalogEntry:
    name: str
    problem: Problem | None
    expected: dict[Mode, Outcome]
    provenance: dict[Mode, str] = field(default_factory=dict)
    thin: ThinSpec | None = None


A, F = Outcome.AVOIDS, Outcome.FAILS
SCA, CA, ARITH = Mode.SCA, Mode.CA, Mode.ARITH_SCA


def _rt(n: int, k: int) -> CatalogEntry:
    prob = Problem(f"RT({n},{k})", n, k, (), tuple(rt_homogeneity_patterns(n, k)))
    if n == 1:
        return CatalogEntry(prob.name, prob, {SCA: A}, {SCA: "published: Dzhafarov-Jockusch"})
    if n == 2:
        return CatalogEntry(prob.name, prob, {CA: A, SCA: F, ARITH: F},
                            {CA: "published: Seetapun", SCA: "published: Ramsey pairs compute moduli",
                             ARITH: "published: Ramsey pairs compute moduli"})
    return CatalogEntry(prob.name, prob, {CA: F},
                        {CA: "published: Jockusch, computable instances compute the halting set"})


def builtin(name: str) -> CatalogEntry:
    """Look up an entry by name, e.g. ``RT(2,2)``, ``EM``, ``SHER(3,1)``, ``THIN(3,5,4)``."""
    key = name.strip().upper().replace(" ", "")
    m = re.fullmatch(r"([A-Z0-9-]+)(?:\(([\d,]*)\))?", key)
    if not m:
        raise MalformedInputError(f"unknown catalog entry {name!r}")
    head = m.group(1)
    args = [int(a) for a in m.group(2).split(",") if a] if m.group(2) else []
    if head == "RT" and len(args) == 2:
        return _rt(*args)
    if head == "RT22-LITERAL" and not args:
        prob = Problem("RT22-LITERAL", 2, 2, (), tuple(rt22_literal()))
        return CatalogEntry(prob.name, prob, {SCA: F, CA: A},
                            {SCA: "derived: exhaustive", CA: "derived: one packed graph of size 2"})
    if head == "EM" and not args:
        prob = Problem("EM", 2, 2, (), tuple(non_transitivity_patterns()))
        return CatalogEntry("EM", prob, {SCA: A}, {SCA: "published: EM admits strong cone avoidance"})
    if head == "ADS" and not args:
        prob = Problem("ADS", 2, 2, tuple(non_transitivity_patterns()), tuple(rt_homogeneity_patterns(2, 2)))
        return CatalogEntry("ADS", prob, {SCA: F, CA: A},
                            {SCA: "published: ADS lacks strong cone avoidance",
                             CA: "derived: one packed graph of size 2"})
    if head == "CAC" and not args:
        prob = Problem("CAC", 2, 3, tuple(non_transitivity_patterns(3)), tuple(rt_homogeneity_patterns(2, 3)))
        return CatalogEntry("CAC", prob, {CA: A, SCA: F},
                            {CA: "derived: one packed graph of size 2",
                             SCA: "derived: exhaustive"})
    if head == "SHER" and len(args) in (1, 2):
        k = args[0]
        exempt = args[1] if len(args) == 2 else 1
        if k < 2:
            raise MalformedInputError("SHER needs k >= 2")
        prob = Problem(f"SHER({k},{exempt})", 2, k, tuple(sher_patterns(k, exempt)),
                       tuple(rt_homogeneity_patterns(2, k)))
        return CatalogEntry(prob.name, prob, {SCA: F}, {SCA: "published: SHER lacks strong cone avoidance"})
    if head == "FS" and len(args) == 1:
        n = args[0]
        if n < 1:
            raise MalformedInputError("FS needs n >= 1")
        k = 2 ** (n + 1)
        prob = Problem(f"FS({n})", n + 1, k, tuple(fs_conflict_patterns(n)),
                       tuple(rt_homogeneity_patterns(n + 1, k)))
        return CatalogEntry(prob.name, prob, {SCA: A}, {SCA: "published: Wang, free sets"})
    if head == "THIN" and len(args) == 3:
        n, k, ell = args
        return CatalogEntry(f"THIN({n},{k},{ell})", None, _thin_expected(n, k, ell),
                            {m: "published: Cholak-Patey thresholds" for m in Mode},
                            ThinSpec(n, k, ell))
    raise MalformedInputError(f"unknown catalog entry {name!r}")


def _thin_expected(n: int, k: int, ell: int) -> dict[Mode, Outcome]:
    from .graphs import family_count
    return {m: (A if ell >= min(k, family_count(m.family, n)) else F) for m in Mode}


DEFAULT_ENTRIES = (
    "RT(1,2)", "RT(1,4)", "RT(2,2)", "RT(3,2)", "RT22-LITERAL", "EM", "ADS", "CAC",
    "SHER(2,1)", "FS(1)", "FS(2)", "FS(3)",
    "THIN(2,3,2)", "THIN(2,3,1)", "THIN(3,5,5)", "THIN(3,5,4)", "THIN(3,2,2)", "THIN(3,2,1)",
    "THIN(3,5,3)",
)


@dataclass
class CatalogRow:
    entry: str
    mode: Mode
    outcome: Outcome | None
    expected: Outcome | None
    elapsed: float
    witness: str = ""
    note: str = ""

    @property
    def status(self) -> str:
        if self.outcome is None:
            return "skipped"
        if self.expected is None:
            return "info"
        return "pass" if self.outcome is self.expected else "FAIL"


def run_catalog(names=DEFAULT_ENTRIES, modes=tuple(Mode), caps: Caps = DEFAULT_CAPS,
                r_max: int = 9) -> list[CatalogRow]:
    rows = []
    for name in names:
        entry = builtin(name)
        wanted = list(modes)
        if entry.thin is not None:
            # thin-set rows are only run in the modes with a recorded threshold of interest
            wanted = [m for m in modes if _thin_relevant(entry.thin, m)]
        for mode in wanted:
            start = time.perf_counter()
            note, witness, outcome = "", "", None
            try:
                if entry.thin is not None:
                    t = entry.thin
                    v = decide_thin_set(t.n, t.k, t.ell, mode, r_max, caps)
                else:
                    v = decide(entry.problem, mode, caps)
                outcome = v.outcome
                if v.witness is not None:
                    witness = f"{v.witness.ambient.text()} | {v.witness.pattern.render()}"
                note = "; ".join(v.stats.get("caveats", []))
            except InfeasibleSizeError as exc:
                note = f"skipped: predicted cost {exc.predicted} ({exc})"
            except ConeAvoidError as exc:
                note = f"error: {exc}"
            rows.append(CatalogRow(entry.name, mode, outcome, entry.expected.get(mode),
                                   time.perf_counter() - start, witness, note))
    return rows


def _thin_relevant(t: ThinSpec, mode: Mode) -> bool:
    # n = 2 rows exercise largeness and vector thresholds, n = 3 with k = 2 the packed one
    if t.n == 3 and t.k == 2:
        return mode is Mode.CA
    return mode in (Mode.SCA, Mode.ARITH_SCA)


def format_report(rows: list[CatalogRow]) -> str:
    lines = [f"{'entry':<14} {'mode':<10} {'outcome':<8} {'expected':<9} {'status':<8} {'time':>8}"]
    for r in rows:
        lines.append(
            f"{r.entry:<14} {r.mode.value:<10} {(r.outcome.value if r.outcome else '-'):<8} "
            f"{(r.expected.value if r.expected else '-'):<9} {r.status:<8} {r.elapsed:>7.2f}s")
        if r.witness:
            lines.append(f"    witness: {r.witness}")
        if r.note:
            lines.append(f"    note: {r.note}")
    failed = sum(r.status == "FAIL" for r in rows)
    lines.append(f"{len(rows)} rows, {failed} mismatches")
    return "\n".join(lines)
