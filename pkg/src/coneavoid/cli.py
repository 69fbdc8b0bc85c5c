"""Command-line entry point.

Exit codes: 0 avoids (or success), 10 fails, 2 over a size cap,
1 input error, 3 catalog regression mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog as cat
from .decide import Caps, Mode, Outcome, decide, decide_thin_set
from .errors import (ConeAvoidError, HorizonExhausted, InconclusiveBoundError, InfeasibleSizeError)
from .graphs import Family, enumerate_family, family_count, parse_graph
from .modulus import (census, graph_of, is_strongly_increasing, is_strongly_mu_transitive,
                      modulus_from_large_coloring, modulus_from_packed_coloring, parse_staged,
                      realize_graph, strongly_increasing_transform, thin_to_strongly_transitive)
from .problemfile import parse_coloring, parse_problem, render_problem

EXIT_AVOIDS, EXIT_INPUT, EXIT_INFEASIBLE, EXIT_REGRESSION, EXIT_FAILS = 0, 1, 2, 3, 10


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConeAvoidError(f"cannot read {path}: {exc.strerror}") from None


def _emit(args, payload: dict, text: str):
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2, default=str))
    else:
        print(text)


def _caps(args) -> Caps:
    return Caps.from_env(chi=args.cap_chi, graphs=args.cap_graphs, max_span=args.max_span)


def _points(text: str) -> list[int]:
    text = text.strip()
    if ".." in text:
        a, b = text.split("..", 1)
        return list(range(int(a), int(b) + 1))
    return [int(t) for t in text.replace(",", " ").split()]


def cmd_decide(args) -> int:
    if args.builtin:
        entry = cat.builtin(args.file)
        if entry.thin is not None:
            t = entry.thin
            v = decide_thin_set(t.n, t.k, t.ell, args.mode, args.r_max, _caps(args))
            _emit(args, v.to_json(), v.text())
            return EXIT_FAILS if v.outcome is Outcome.FAILS else EXIT_AVOIDS
        problem = entry.problem
    else:
        problem = parse_problem(_read(args.file))
    v = decide(problem, args.mode, _caps(args))
    _emit(args, v.to_json(), v.text())
    return EXIT_FAILS if v.outcome is Outcome.FAILS else EXIT_AVOIDS


def cmd_graphs(args) -> int:
    fam = Family.parse(args.family)
    graphs = enumerate_family(fam, args.size, args.cap_graphs or 10**6)
    count = family_count(fam, args.size)
    formula = {Family.VECTOR: f"2^{args.size - 1}", Family.LARGENESS: f"C_{args.size}",
               Family.PACKED: f"C_{args.size - 1}"}[fam]
    text = "\n".join(g.text() for g in graphs) + f"\ncount={len(graphs)} ({formula})"
    _emit(args, {"family": fam.value, "size": args.size, "count": count,
                 "graphs": [g.text() for g in graphs]}, text)
    return 0


def cmd_catalog(args) -> int:
    names = args.entry or cat.DEFAULT_ENTRIES
    modes = [Mode.parse(m) for m in args.mode] if args.mode else list(Mode)
    rows = cat.run_catalog(names, modes, _caps(args), args.r_max)
    payload = [{"entry": r.entry, "mode": r.mode.value, "outcome": r.outcome.value if r.outcome else None,
                "expected": r.expected.value if r.expected else None, "status": r.status,
                "elapsed_s": round(r.elapsed, 4), "witness": r.witness, "note": r.note} for r in rows]
    _emit(args, {"rows": payload}, cat.format_report(rows))
    return EXIT_REGRESSION if any(r.status == "FAIL" for r in rows) else 0


def cmd_export(args) -> int:
    entry = cat.builtin(args.name)
    if entry.problem is None:
        raise ConeAvoidError(f"{entry.name} is decided by color counting and has no problem file")
    text = render_problem(entry.problem)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_simulate(args) -> int:
    sub = args.sim
    if sub == "transform":
        mu = parse_staged(_read(args.file))
        g = strongly_increasing_transform(mu)
        sys.stdout.write(g.text())
        print(f"# strongly increasing: {is_strongly_increasing(g)}")
        return 0
    if sub == "census":
        mu = parse_staged(_read(args.file))
        window = _points(args.window) if args.window else list(range(mu.horizon))
        counts = census(args.family, mu, window, args.n)
        rows = sorted(counts.items(), key=lambda kv: kv[0].mask)
        _emit(args, {g.text(): c for g, c in rows}, "\n".join(f"{c:>6}  {g.text()}" for g, c in rows))
        return 0
    if sub == "thin":
        mu = parse_staged(_read(args.file))
        try:
            ys = thin_to_strongly_transitive(mu, _points(args.points))
        except HorizonExhausted as exc:
            print(f"horizon exhausted; partial: {' '.join(map(str, exc.partial))}", file=sys.stderr)
            return EXIT_INFEASIBLE
        print(" ".join(map(str, ys)))
        return 0
    if sub == "realize":
        g = parse_graph(args.graph)
        mu, d = realize_graph(g.family, g, args.budget)
        sys.stdout.write(mu.text())
        print("points: " + " ".join(map(str, d)))
        print(f"# graph_of = {graph_of(g.family, mu, d).text()}")
        print(f"# strongly mu-transitive: {is_strongly_mu_transitive(mu, d)}")
        return 0
    if sub == "modulus-from":
        f = parse_coloring(_read(args.file))
        h = _points(args.points) if args.points else list(f.domain)
        if f.arity == 2:
            mu = modulus_from_large_coloring(f, h, args.small, args.large)
            print(" ".join(f"{x}:{v}" for x, v in sorted(mu.items())))
        elif f.arity == 3:
            sys.stdout.write(modulus_from_packed_coloring(f, h, args.small, args.large).text())
        else:
            raise ConeAvoidError("modulus-from handles arity 2 or 3")
        return 0
    raise ConeAvoidError(f"unknown simulate command {sub}")


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; 2 is reserved for size caps
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="coneavoid", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def caps(sp):
        sp.add_argument("--cap-chi", type=int, help="max number of chi colorings (env CONEAVOID_CAP_CHI)")
        sp.add_argument("--cap-graphs", type=int, help="max ambient family size (env CONEAVOID_CAP_GRAPHS)")
        sp.add_argument("--max-span", type=int, help="max pattern span (env CONEAVOID_MAX_SPAN)")
        sp.add_argument("--r-max", type=int, default=9, help="ambient size bound for thin-set search")
        sp.add_argument("--json", action="store_true")

    d = sub.add_parser("decide", help="decide a problem file")
    d.add_argument("file", help="problem file, '-' for stdin, or a catalog name with --builtin")
    d.add_argument("--mode", default="sca", choices=[m.value for m in Mode])
    d.add_argument("--builtin", action="store_true", help="treat FILE as a catalog entry name")
    caps(d)
    d.set_defaults(func=cmd_decide)

    g = sub.add_parser("graphs", help="list a graph family")
    g.add_argument("--family", required=True, choices=[f.value for f in Family])
    g.add_argument("--size", type=int, required=True)
    g.add_argument("--cap-graphs", type=int)
    g.add_argument("--json", action="store_true")
    g.set_defaults(func=cmd_graphs)

    c = sub.add_parser("catalog", help="run the built-in regression table")
    c.add_argument("--entry", action="append", help="restrict to an entry (repeatable)")
    c.add_argument("--mode", action="append", choices=[m.value for m in Mode])
    caps(c)
    c.set_defaults(func=cmd_catalog)

    e = sub.add_parser("export", help="write a catalog entry as a problem file")
    e.add_argument("name")
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_export)

    s = sub.add_parser("simulate", help="modulus simulator")
    ss = s.add_subparsers(dest="sim", required=True)
    t = ss.add_parser("transform", help="strongly increasing transform of a staged file")
    t.add_argument("file")
    ce = ss.add_parser("census", help="count graphs over the n-subsets of a window")
    ce.add_argument("file")
    ce.add_argument("--family", required=True, choices=[f.value for f in Family])
    ce.add_argument("--n", type=int, required=True)
    ce.add_argument("--window", help="points, e.g. '0..20' or '0,3,5'")
    ce.add_argument("--json", action="store_true")
    th = ss.add_parser("thin", help="thin a mu-transitive set to a strongly mu-transitive one")
    th.add_argument("file")
    th.add_argument("--points", required=True)
    re_ = ss.add_parser("realize", help="realize a graph by a staged function")
    re_.add_argument("graph", help="graph text, e.g. 'largeness:3:[{0,2}]'")
    re_.add_argument("--budget", type=int, default=10**4)
    mf = ss.add_parser("modulus-from", help="modulus of a two-colored coloring file")
    mf.add_argument("file")
    mf.add_argument("--small", type=int, required=True)
    mf.add_argument("--large", type=int, required=True)
    mf.add_argument("--points")
    s.set_defaults(func=cmd_simulate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InfeasibleSizeError as exc:
        print(f"infeasible: {exc} (predicted {exc.predicted})", file=sys.stderr)
        return EXIT_INFEASIBLE
    except InconclusiveBoundError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ConeAvoidError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
