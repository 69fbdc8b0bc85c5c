"""Random instances for property checks and the simulator."""

from __future__ import annotations

import itertools
import random

from .modulus import (StagedFunction, is_mu_transitive, packed_violation,
                      strongly_increasing_transform)
from .patterns import FiniteColoring


def random_monotone(rng: random.Random, horizon: int, max_value: int | None = None,
                    settle_by: int | None = None) -> StagedFunction:
    """A staged table non-decreasing in s, settling by stage ``settle_by``."""
    if max_value is None:
        max_value = 2 * horizon
    if settle_by is None:
        settle_by = horizon - 1
    limit = [rng.randint(0, max_value) for _ in range(horizon)]
    stages = [[0] * horizon for _ in range(horizon)]
    for x in range(horizon):
        # a few jump times, reaching the limit by settle_by
        jumps = sorted(rng.sample(range(settle_by + 1), k=min(3, settle_by + 1)))
        values = sorted(rng.randint(0, limit[x]) for _ in jumps[:-1]) + [limit[x]]
        cur = 0
        for s in range(horizon):
            while jumps and jumps[0] <= s:
                jumps.pop(0)
                cur = max(cur, values.pop(0))
            stages[s][x] = cur
    return StagedFunction(horizon, tuple(map(tuple, stages)), tuple(limit))


def random_strongly_increasing(rng: random.Random, horizon: int, settled: bool = True,
                               tries: int = 200) -> StagedFunction:
    """Transform of a random early-settling table; retried until settled when asked."""
    for _ in range(tries):
        base = random_monotone(rng, horizon, max_value=horizon + horizon // 2,
                               settle_by=max(0, horizon // 3))
        g = strongly_increasing_transform(base)
        if not settled or g.is_settled():
            return g
    raise RuntimeError("could not draw a settled strongly increasing function")


def random_transitive_set(rng: random.Random, mu, size: int, points=None) -> tuple[int, ...]:
    """Greedy random mu-transitive subset of ``points`` with at most ``size`` elements."""
    if points is None:
        points = range(mu.horizon)
    pool = list(points)
    rng.shuffle(pool)
    chosen: list[int] = []
    for p in pool:
        if len(chosen) == size:
            break
        if is_mu_transitive(mu, chosen + [p]):
            chosen.append(p)
    return tuple(sorted(chosen))


def random_large_coloring(rng: random.Random, size: int, i_s: int = 0, i_l: int = 1,
                          colors: int = 2) -> tuple[FiniteColoring, tuple[int, ...]]:
    """A pair coloring over a random H satisfying the transitivity biconditional.

    The biconditional forces H to split into consecutive blocks with
    f(x, y) = i_s exactly when x and y share a block, so the sampler draws
    the block cuts and sets rho(x) to the start of the next block.
    """
    h = tuple(sorted(rng.sample(range(4 * size), size)))
    starts = [0] + sorted(i for i in range(1, size) if rng.random() < 0.4) + [size]
    rho = {}
    for a, b in zip(starts, starts[1:]):
        for x in h[a:b]:
            rho[x] = h[b] if b < size else 10**6
    f = FiniteColoring.from_function(2, colors, h, lambda x, y: i_l if rho[x] <= y else i_s)
    return f, h


def random_packed_coloring(rng: random.Random, size: int, i_s: int = 0, i_l: int = 1,
                           colors: int = 2, tries: int = 1000) -> tuple[FiniteColoring, tuple[int, ...]]:
    """A triple coloring over a random H satisfying the packed properties.

    Built by perturbing the coloring coded by a random packed graph on H and
    rejecting perturbations that break the properties.
    """
    from .graphs import enumerate_family

    h = tuple(sorted(rng.sample(range(3 * size), size)))
    graphs = enumerate_family("packed", size)
    g = rng.choice(graphs)
    vals = {}
    for i, j, k in itertools.combinations(range(size), 3):
        small = all(g.has(m, k) for m in range(i, j))
        vals[(h[i], h[j], h[k])] = i_s if small else i_l
    f = FiniteColoring(3, colors, h, vals)
    for _ in range(rng.randint(0, 3)):
        key = rng.choice(list(vals))
        trial = dict(vals)
        trial[key] = i_l if trial[key] == i_s else i_s
        cand = FiniteColoring(3, colors, h, trial)
        if packed_violation(cand, h, i_s, i_l) is None:
            vals, f = trial, cand
    return f, h
