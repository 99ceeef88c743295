import math
from fractions import Fraction

import pytest

from dichroma.catalogue import graph_catalogue
from dichroma.core import Digraph, Graph, bidirect, is_acyclic
from dichroma.errors import CertificationError, LimitExceededError
from dichroma.generators import (
    complete_bipartite,
    complete_graph,
    cycle_graph,
    path_graph,
    rook,
)
from dichroma.randomized import (
    DOMAIN_ORIENTATION,
    ExpectationParams,
    GBoundParams,
    RngSpec,
    certified_breaking_orientation,
    concentration_bound,
    count_acyclic_orientations,
    estimate_biclique_event,
    expected_avoiding_count,
    find_acyclic_biclique,
    find_acyclic_clique,
    g_bound,
    random_orientation,
    stream_u64,
    wilson_interval,
)

from oracles import brute_count_acyclic_orientations, chromatic_polynomial


def test_random_orientation_edgeless():
    d = random_orientation(Graph(5), RngSpec(0))
    assert d.n == 5 and d.m == 0


def test_random_orientation_reproducible_golden():
    d = random_orientation(complete_graph(4), RngSpec(42))
    assert d.arcs == ((0, 2), (1, 0), (1, 3), (2, 1), (2, 3), (3, 0))
    again = random_orientation(complete_graph(4), RngSpec(42))
    assert again.arcs == d.arcs


def test_orientation_bits_are_fair():
    spec = RngSpec(123)
    bits = [stream_u64(spec, DOMAIN_ORIENTATION, j) >> 63 for j in range(10_000)]
    mean = sum(bits) / len(bits)
    assert 0.48 <= mean <= 0.52  # binomial 3 sigma around 1/2


def test_count_acyclic_orientations_examples():
    assert count_acyclic_orientations(complete_graph(3)) == 6
    assert count_acyclic_orientations(complete_bipartite(2, 2)) == 14
    assert count_acyclic_orientations(path_graph(3)) == 4
    with pytest.raises(LimitExceededError):
        count_acyclic_orientations(rook(3), limit=10)


def test_count_acyclic_orientations_oracles():
    for g in graph_catalogue(4):
        direct = count_acyclic_orientations(g)
        assert direct == brute_count_acyclic_orientations(g.n, g.edges)
        assert direct == abs(chromatic_polynomial(g.n, g.edges, -1))


def test_biclique_count_respects_factorial_bound():
    for l in (1, 2, 3):
        count = count_acyclic_orientations(complete_bipartite(l, l))
        assert count <= math.factorial(2 * l)


def test_find_acyclic_biclique_examples():
    assert find_acyclic_biclique(bidirect(complete_graph(4)), 1) is None
    one_way = Digraph(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
    hit = find_acyclic_biclique(one_way, 2)
    assert hit == ((0, 1), (2, 3))
    cyclic_c4 = Digraph(4, [(0, 2), (2, 1), (1, 3), (3, 0)])
    assert find_acyclic_biclique(cyclic_c4, 2) is None
    assert find_acyclic_biclique(cyclic_c4, 1) is not None


def test_find_acyclic_biclique_partition_hint():
    one_way = Digraph(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
    hit = find_acyclic_biclique(one_way, 2, partition_hint=([0, 1], [2, 3]))
    assert hit == ((0, 1), (2, 3))
    assert find_acyclic_biclique(one_way, 2, partition_hint=([2, 3], [0, 1])) == (
        (2, 3),
        (0, 1),
    )


def test_find_acyclic_clique():
    transitive = Digraph(3, [(0, 1), (0, 2), (1, 2)])
    assert find_acyclic_clique(transitive, 3) == (0, 1, 2)
    cyclic = Digraph(3, [(0, 1), (1, 2), (2, 0)])
    assert find_acyclic_clique(cyclic, 3) is None


def test_certified_breaking_single_biclique():
    # the 4-cycle is one complete bipartite pair; a fourth of the
    # orientations make it cyclic, so rejection sampling lands quickly
    c4 = cycle_graph(4)
    d = certified_breaking_orientation(c4, 2, RngSpec(3), max_attempts=500)
    assert find_acyclic_biclique(d, 2) is None
    assert not is_acyclic(d)


def test_certified_breaking_cliques():
    k3 = complete_graph(3)
    d = certified_breaking_orientation(
        k3, 3, RngSpec(1), max_attempts=500, break_cliques=True
    )
    assert find_acyclic_clique(d, 3) is None


def test_certified_breaking_vacuous():
    p4 = path_graph(4)
    d = certified_breaking_orientation(p4, 2, RngSpec(0), max_attempts=5)
    assert d.m == p4.m  # no 2+2 biclique exists, first draw is accepted


def test_certified_breaking_outside_regime():
    # a single arc is always acyclic, so l=1 can never be broken
    with pytest.raises(CertificationError):
        certified_breaking_orientation(path_graph(3), 1, RngSpec(0), max_attempts=20)
    # every 2+2 pattern cannot be made cyclic at once: the common
    # neighbourhood of two grid cells has three cells, and a two-valued
    # row cannot alternate on every pair of them
    with pytest.raises(CertificationError):
        certified_breaking_orientation(rook(4), 2, RngSpec(0), max_attempts=30)


def test_estimate_biclique_event_exact_anchor():
    est = estimate_biclique_event(complete_bipartite(2, 2), 2, 2000, RngSpec(7))
    assert est.ci_low <= 14 / 16 <= est.ci_high
    assert abs(est.estimate - 0.875) < 0.05


def test_estimate_biclique_event_degenerate():
    est = estimate_biclique_event(complete_graph(3), 3, 50, RngSpec(1))
    assert est.estimate == 0.0  # no 3+3 biclique in a triangle


def test_estimate_below_union_bound():
    # the analytic bound n^(4l) * 2^(-l*l) binds only when below one;
    # those cells are biclique-free at this scale, so the frequency is zero
    for g in (complete_graph(2), path_graph(3)):
        for l in (5, 6):
            bound = g.n ** (4 * l) * 2.0 ** (-l * l)
            if bound >= 1:
                continue
            est = estimate_biclique_event(g, l, 200, RngSpec(4))
            assert est.estimate <= bound


def test_estimate_threads_deterministic():
    a = estimate_biclique_event(complete_bipartite(2, 2), 2, 400, RngSpec(9), threads=1)
    b = estimate_biclique_event(complete_bipartite(2, 2), 2, 400, RngSpec(9), threads=4)
    assert a == b


def test_g_bound_examples():
    value = g_bound(GBoundParams(l1=2, l2=1, n=4, s=1, t=1, u=2))
    assert abs(value - math.exp(-0.5)) < 1e-12
    # vanishing exponent recovers s^u * exp(-n/2)
    value = g_bound(GBoundParams(l1=10**6, l2=1, n=4, s=1, t=1, u=2))
    assert abs(value - math.exp(-2.0)) < 1e-6
    with pytest.raises(ValueError):
        GBoundParams(l1=1, l2=1, n=4, s=1, t=1, u=2)


def test_g_bound_positive_and_decreasing_in_n():
    last = None
    for n in range(2, 40):
        value = g_bound(GBoundParams(l1=3, l2=1, n=n, s=2, t=1, u=3))
        assert value > 0
        if last is not None:
            assert value < last
        last = value


def test_expected_avoiding_count_examples():
    assert expected_avoiding_count(ExpectationParams(4, 4, 1, 1)) == 3
    assert expected_avoiding_count(ExpectationParams(7, 9, 3, 0)) == 7
    assert expected_avoiding_count(ExpectationParams(5, 4, 3, 2)) == 0
    exact = expected_avoiding_count(ExpectationParams(5, 7, 2, 3))
    assert exact == Fraction(5 * math.comb(4, 2), math.comb(7, 2))


def test_concentration_bound_examples():
    assert abs(concentration_bound(1, 1.0, 2.0) - 2 * math.exp(-2)) < 1e-12
    assert concentration_bound(10, 0.5, 0.0) == 2.0
    values = [concentration_bound(5, 1.0, t / 4) for t in range(0, 20)]
    assert all(a >= b for a, b in zip(values, values[1:]))


def test_shrinking_ratio_function_is_increasing():
    # f(x) = (1 - a/x)^x grows in x for x > a
    for a in (0.5, 1.0, 2.0, 5.0):
        xs = [a + 0.1 + 0.3 * i for i in range(40)]
        vals = [(1 - a / x) ** x for x in xs]
        assert all(u <= v + 1e-15 for u, v in zip(vals, vals[1:]))


def test_wilson_interval_basics():
    lo, hi = wilson_interval(0, 100)
    assert lo == pytest.approx(0.0, abs=1e-12) and hi < 0.05
    lo, hi = wilson_interval(100, 100)
    assert hi == pytest.approx(1.0) and lo > 0.95
    lo, hi = wilson_interval(50, 100)
    assert lo < 0.5 < hi
