import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from coneavoid.errors import (HorizonExhausted, MalformedInputError, PromiseViolation,
                              RealizationError, UnsupportedInputError)
from coneavoid.graphs import Family, OrderedGraph, enumerate_family, induced, packed_reduce, validate
from coneavoid.modulus import (OMEGA, StagedFunction, census, coloring_from_modulus, ext_parse,
                               graph_of, is_mu_transitive, is_strongly_increasing,
                               is_strongly_mu_transitive, modulus_from_large_coloring,
                               modulus_from_packed_coloring, parse_staged, realize_graph,
                               strongly_increasing_transform, thin_to_strongly_transitive)
from coneavoid.patterns import FiniteColoring
from coneavoid.sampling import (random_large_coloring, random_monotone, random_packed_coloring,
                                random_strongly_increasing, random_transitive_set)

L, P, V = Family.LARGENESS, Family.PACKED, Family.VECTOR


def fixed(horizon, fn):
    """Stages equal to the limit at every stage."""
    return StagedFunction.from_functions(horizon, lambda s, x: fn(x), fn)


def ramp(horizon):
    return StagedFunction.from_functions(horizon, lambda s, x: min(2 * x + 2, s), lambda x: 2 * x + 2)


# --- extended naturals and the table ----------------------------------------

def test_omega_order():
    assert OMEGA > 10**9 and not OMEGA < 5 and OMEGA == OMEGA and OMEGA >= OMEGA
    assert 3 < OMEGA and max(2, OMEGA) is OMEGA
    assert str(OMEGA) == "w" and ext_parse("w") is OMEGA and ext_parse("7") == 7


def test_table_invariants():
    with pytest.raises(MalformedInputError, match="decrease"):
        StagedFunction(2, ((1, 0), (0, 0)), (1, 0))
    with pytest.raises(MalformedInputError, match="above limit"):
        StagedFunction(2, ((0, 0), (3, 0)), (2, 0))
    with pytest.raises(MalformedInputError):
        StagedFunction(2, ((0, 0),), (0, 0))


def test_settledness():
    mu = StagedFunction(3, ((0, 0, 0), (1, 1, 1), (2, 5, 3)), (2, OMEGA, 7))
    assert mu.settled(0)          # equal
    assert mu.settled(1)          # OMEGA, and the last stage already exceeds the window
    assert mu.settled(2)          # 3 and 7 agree once cut at the horizon


def test_settledness_disagreement():
    mu = StagedFunction(4, ((0,) * 4, (0,) * 4, (0,) * 4, (1, 0, 0, 0)), (2, 0, 0, 0))
    assert not mu.settled(0)


def test_text_round_trip():
    mu = StagedFunction(3, ((0, 1, 1), (2, 2, 2), (2, 3, 4)), (2, OMEGA, 9))
    text = mu.text()
    assert text.splitlines()[0] == "horizon=3" and text.splitlines()[-1] == "limit: 2 w 9"
    assert parse_staged(text) == mu


def test_parse_staged_errors():
    with pytest.raises(MalformedInputError):
        parse_staged("horizon=2\n0: 0 0\nlimit: 0 0\n")
    with pytest.raises(MalformedInputError):
        parse_staged("horizon=1\n0: w\nlimit: w\n")


# --- strongly increasing ----------------------------------------------------

def test_strongly_increasing_examples():
    assert is_strongly_increasing(ramp(12))
    assert not is_strongly_increasing(StagedFunction(2, ((0, 0), (5, 0)), (5, 0)))
    assert is_strongly_increasing(fixed(6, lambda x: 4))


def test_jump_condition_detected():
    # mu(0) moves at stage 2 while mu_2(1) = 1 is not above 1
    bad = StagedFunction(3, ((0, 0, 1), (0, 0, 1), (1, 1, 1)), (1, 1, 1))
    assert not is_strongly_increasing(bad)
    good = StagedFunction(3, ((0, 0, 1), (0, 0, 1), (1, 2, 2)), (1, 2, 2))
    assert is_strongly_increasing(good)


def test_transform_hand_example():
    mu = StagedFunction(2, ((0, 0), (2, 0)), (2, 0))
    g = strongly_increasing_transform(mu)
    assert g.stages == ((0, 0), (2, 2))
    assert g.limit == (2, 2)


def test_transform_rejects_omega():
    with pytest.raises(UnsupportedInputError):
        strongly_increasing_transform(StagedFunction(2, ((0, 0), (0, 0)), (0, OMEGA)))


def test_transform_keeps_strongly_increasing_constant_input():
    mu = fixed(5, lambda x: 3)
    g = strongly_increasing_transform(mu)
    assert is_strongly_increasing(g)
    assert all(g.limit[x] >= mu.limit[x] for x in range(5))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 20), st.randoms(use_true_random=False))
def test_transform_properties(horizon, rnd):
    mu = random_monotone(rnd, horizon)
    g = strongly_increasing_transform(mu)
    assert is_strongly_increasing(g)
    for x in range(horizon):
        assert g.limit[x] >= mu.limit[x]
        for s in range(horizon):
            assert g.stages[s][x] >= mu.stages[s][x]


# --- graphs of configurations -----------------------------------------------

def test_graph_of_examples():
    assert graph_of(V, fixed(12, lambda x: 2 * x + 2), (0, 1, 5)) == OrderedGraph.of(V, 3, [(1, 2)])
    assert graph_of(P, ramp(12), (0, 1, 10)) == OrderedGraph.of(P, 3, [(0, 2)])


def test_graph_of_errors():
    with pytest.raises(MalformedInputError):
        graph_of(L, ramp(12), (0, 12))
    with pytest.raises(MalformedInputError, match="settled"):
        graph_of(V, ramp(12), (5, 11))


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_graph_of_always_valid_for_strongly_increasing(rnd):
    mu = random_strongly_increasing(rnd, rnd.randint(6, 16))
    for fam in Family:
        for n in (2, 3, 4):
            d = sorted(rnd.sample(range(mu.horizon), n))
            assert validate(graph_of(fam, mu, d))


def test_mu_transitive_examples():
    assert is_mu_transitive(fixed(12, lambda x: 2 * x + 2), {0, 1, 5})
    assert is_mu_transitive([0, 0], [0, 1])
    mu = {0: 3, 1: 4, 3: 0}
    assert not is_mu_transitive(mu, (0, 1, 3))
    # on (0,1,2) the same table is vacuously fine: mu(1) = 4 > 2 and mu(0) = 3 > 2
    assert is_mu_transitive([3, 4, 0], (0, 1, 2))


def test_strongly_mu_transitive_needs_stage_composition():
    # at stage 3: [0,1] and [1,2] small, [0,2] large
    stages = [[0, 0, 0, 0]] * 3 + [[2, 3, 3, 3]]
    mu = StagedFunction(4, tuple(map(tuple, stages)), (2, 3, 3, 3))
    assert not is_strongly_mu_transitive(mu, (0, 1, 2, 3))


def test_thin_examples():
    mu = fixed(10, lambda x: x + 1)
    xs = (0, 2, 3, 7)
    assert thin_to_strongly_transitive(mu, xs) == xs
    assert thin_to_strongly_transitive(mu, ()) == ()


def test_thin_exhaustion_reports_partial():
    stages = [[0, 0, 0, 0]] * 3 + [[2, 3, 3, 3]]
    mu = StagedFunction(4, tuple(map(tuple, stages)), (2, 3, 3, 3))
    with pytest.raises(HorizonExhausted) as exc:
        thin_to_strongly_transitive(mu, (0, 1, 2, 3))
    assert exc.value.partial == (0, 1, 2)


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_thin_output_strongly_transitive(rnd):
    mu = random_strongly_increasing(rnd, rnd.randint(10, 30))
    xs = random_transitive_set(rnd, mu, 20)
    assert is_mu_transitive(mu, xs)
    try:
        ys = thin_to_strongly_transitive(mu, xs)
    except HorizonExhausted as exc:
        ys = exc.partial
    assert set(ys) <= set(xs) and is_strongly_mu_transitive(mu, ys)


def test_packed_and_largeness_agree_past_settling():
    rnd = random.Random(5)
    checked = 0
    while checked < 50:
        mu = random_strongly_increasing(rnd, rnd.randint(8, 20))
        d = sorted(rnd.sample(range(mu.horizon // 2), 3))
        settle = max(s for x in d for s in range(mu.horizon)
                     if s == 0 or mu.stages[s][x] != mu.stages[s - 1][x])
        for y in range(max(settle, d[-1] + 1), mu.horizon):
            if not is_strongly_mu_transitive(mu, d + [y]):
                continue
            assert packed_reduce(graph_of(P, mu, d + [y])) == graph_of(L, mu, d)
            checked += 1


# --- realization ------------------------------------------------------------

def test_realize_vector_edge():
    g = OrderedGraph.of(V, 2, [(0, 1)])
    mu, d = realize_graph(V, g)
    assert graph_of(V, mu, d) == g and is_mu_transitive(mu, d)


@pytest.mark.parametrize("family", list(Family))
@pytest.mark.parametrize("n", range(1, 6))
def test_realize_every_graph(family, n):
    for g in enumerate_family(family, n):
        mu, d = realize_graph(family, g, 10**4)
        assert graph_of(family, mu, d) == g
        assert is_strongly_increasing(mu)
        if family is not V:
            assert is_strongly_mu_transitive(mu, d)


def test_realize_budget_and_family_checks():
    g = OrderedGraph.of(L, 4, [(0, 1)])
    with pytest.raises(RealizationError):
        realize_graph(L, g, budget=3)
    with pytest.raises(MalformedInputError):
        realize_graph(P, g)


def test_realized_moduli_match_induced():
    for g in enumerate_family(L, 6):
        mu, d = realize_graph(L, g)
        for m in (2, 3, 4):
            for pos in itertools.combinations(range(6), m):
                assert induced(L, g, pos) == graph_of(L, mu, [d[i] for i in pos])


# --- census -----------------------------------------------------------------

def test_census_examples():
    c = census(V, fixed(21, lambda x: 2 * x + 2), range(21), 2)
    assert set(c) == set(enumerate_family(V, 2)) and all(v >= 1 for v in c.values())
    one = census(L, ramp(12), range(12), 1)
    assert list(one.values()) == [12]


def test_census_of_realizations_covers_largeness_3():
    seen = set()
    for g in enumerate_family(L, 3):
        mu, d = realize_graph(L, g)
        seen |= set(census(L, mu, d, 3))
    assert seen == set(enumerate_family(L, 3))


# --- colorings to moduli ----------------------------------------------------

def test_large_modulus_examples():
    h = [0, 1, 2]
    assert modulus_from_large_coloring(FiniteColoring.constant(2, 2, h, 1), h, 0, 1) == {0: 1, 1: 2, 2: OMEGA}
    assert set(modulus_from_large_coloring(FiniteColoring.constant(2, 2, h, 0), h, 0, 1).values()) == {OMEGA}


def test_large_modulus_rejects_violations():
    f = FiniteColoring.from_function(2, 3, range(3), lambda x, y: 1 if (x, y) == (0, 2) else 0)
    with pytest.raises(PromiseViolation) as exc:
        modulus_from_large_coloring(f, range(3), 0, 1)
    assert exc.value.offending == (0, 1, 2)
    g = FiniteColoring.constant(2, 3, range(3), 2)
    with pytest.raises(PromiseViolation):
        modulus_from_large_coloring(g, range(3), 0, 1)


def test_packed_modulus_rejects_violations():
    # property (b): f(0,1,2) small but f(0,1,3) large
    f = FiniteColoring.from_function(3, 2, range(4), lambda x, y, z: 0 if z == 2 else 1)
    with pytest.raises(PromiseViolation, match=r"\(b\)"):
        modulus_from_packed_coloring(f, range(4), 0, 1)


def check_packed_invariants(f, h, i_s, i_l):
    mu = modulus_from_packed_coloring(f, h, i_s, i_l)
    n = mu.horizon
    st_ = mu.stages
    for z in range(n):
        for x in range(n):
            assert st_[z][x] <= z                                        # below the stage
            if z:
                assert st_[z - 1][x] <= st_[z][x]                        # monotone in z
            if x:
                assert st_[z][x - 1] <= st_[z][x]                        # monotone in x
    for z in range(n - 1):
        for u in range(n):
            if st_[z + 1][u] > st_[z][u]:
                assert all(st_[z + 1][v] > z for v in range(u + 1, n))   # a jump lifts every later argument
    for w, x, y, z in itertools.combinations(h, 4):
        if st_[z][w] > x and st_[z][x] > y:
            assert st_[z][w] > y                                         # stagewise transitive
    assert coloring_from_modulus(3, mu, h, i_s, i_l, f.colors) == f
    return mu


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 8), st.randoms(use_true_random=False))
def test_packed_modulus_invariants(size, rnd):
    f, h = random_packed_coloring(rnd, size)
    mu = check_packed_invariants(f, h, 0, 1)
    assert is_strongly_increasing(mu)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 8), st.randoms(use_true_random=False))
def test_large_modulus_round_trip(size, rnd):
    f, h = random_large_coloring(rnd, size)
    mu = modulus_from_large_coloring(f, h, 0, 1)
    assert is_mu_transitive(mu, h)
    assert coloring_from_modulus(2, mu, h, 0, 1, 2) == f
