import pytest

from dichroma.catalogue import graph_catalogue, graphs_up_to, random_digraph
from dichroma.core import (
    Coloring,
    Digraph,
    Graph,
    Orientation,
    apply_orientation,
    bidirect,
    enumerate_orientations,
    induced_subdigraph,
    induced_subgraph,
    is_acyclic,
    is_proper_coloring,
    is_proper_dicoloring,
    maximal_acyclic_sets,
)
from dichroma.errors import LimitExceededError
from dichroma.randomized import RngSpec

from oracles import acyclic_by_permutation, brute_maximal_acyclic_sets

C3 = Digraph(3, [(0, 1), (1, 2), (2, 0)])
K3 = Graph(3, [(0, 1), (1, 2), (0, 2)])
P3 = Graph(3, [(0, 1), (1, 2)])


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(3, [(0, 0)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        Graph(2, [(0, 2)])
    with pytest.raises(ValueError):
        Graph(2, [], labels=["a", "a"])


def test_digraph_validation():
    with pytest.raises(ValueError):
        Digraph(3, [(1, 1)])
    with pytest.raises(ValueError):
        Digraph(3, [(0, 1), (0, 1)])
    # opposite arcs are fine
    d = Digraph(2, [(0, 1), (1, 0)])
    assert d.m == 2 and d.digon_mask(0) == 0b10


def test_is_acyclic_examples():
    assert is_acyclic(C3) is False
    assert is_acyclic(Digraph(1)) is True
    # transitive tournament on 4 vertices
    tt = Digraph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    assert is_acyclic(tt) is True
    # a digon alone is a cycle
    assert is_acyclic(Digraph(2, [(0, 1), (1, 0)])) is False


def test_bidirect_examples():
    assert bidirect(K3).m == 6
    assert bidirect(Graph(5)).m == 0
    d = bidirect(P3)
    assert d.m == 4 and is_acyclic(d) is False


def test_apply_orientation_examples():
    low_high = Orientation(K3, (False, False, False))
    assert is_acyclic(apply_orientation(K3, low_high)) is True
    cyclic = Orientation(K3, (False, True, False))  # 0->1, 2->0 wait edges (0,1),(0,2),(1,2)
    d = apply_orientation(K3, cyclic)
    # edges of K3 sorted: (0,1),(0,2),(1,2); bits F,T,F give 0->1, 2->0, 1->2
    assert sorted(d.arcs) == [(0, 1), (1, 2), (2, 0)]
    assert is_acyclic(d) is False
    empty = Graph(0)
    assert apply_orientation(empty, Orientation(empty, ())).n == 0


def test_apply_orientation_mismatch():
    other = Graph(3, [(0, 1)])
    with pytest.raises(ValueError):
        apply_orientation(K3, Orientation(other, (False,)))


def test_enumerate_orientations_counts():
    orientations = list(enumerate_orientations(K3))
    assert len(orientations) == 8
    assert len({o.direction for o in orientations}) == 8
    cyclic = sum(
        not is_acyclic(apply_orientation(K3, o)) for o in orientations
    )
    assert cyclic == 2
    assert len(list(enumerate_orientations(Graph(2, [(0, 1)])))) == 2
    path = list(enumerate_orientations(P3))
    assert len(path) == 4
    assert all(is_acyclic(apply_orientation(P3, o)) for o in path)


def test_enumerate_orientations_order_and_limit():
    first, second = list(enumerate_orientations(P3))[:2]
    assert first.direction == (False, False)
    assert second.direction == (False, True)
    with pytest.raises(LimitExceededError):
        list(enumerate_orientations(K3, limit=2))


def test_is_proper_coloring():
    assert is_proper_coloring(K3, Coloring((0, 1, 2), (0, 1, 2)))
    assert not is_proper_coloring(K3, Coloring((0, 1), (0, 1, 1)))


def test_is_proper_dicoloring_examples():
    assert is_proper_dicoloring(C3, Coloring((1, 2), (1, 1, 2)))
    assert not is_proper_dicoloring(C3, Coloring((1,), (1, 1, 1)))
    assert is_proper_dicoloring(bidirect(K3), Coloring((1, 2, 3), (1, 2, 3)))


def test_maximal_acyclic_sets_examples():
    assert maximal_acyclic_sets(C3) == [
        frozenset({0, 1}),
        frozenset({0, 2}),
        frozenset({1, 2}),
    ]
    acyclic = Digraph(4, [(0, 1), (1, 2), (0, 3)])
    assert maximal_acyclic_sets(acyclic) == [frozenset({0, 1, 2, 3})]
    assert maximal_acyclic_sets(bidirect(K3)) == [
        frozenset({0}),
        frozenset({1}),
        frozenset({2}),
    ]
    with pytest.raises(LimitExceededError):
        maximal_acyclic_sets(Digraph(5), limit=4)


def test_maximal_acyclic_sets_against_oracle():
    rng = RngSpec(2024)
    for i in range(40):
        d = random_digraph(1 + i % 6, rng.derive(i))
        assert maximal_acyclic_sets(d) == brute_maximal_acyclic_sets(d.n, d.arcs)


def test_is_acyclic_against_permutation_oracle():
    rng = RngSpec(5)
    for i in range(60):
        d = random_digraph(1 + i % 6, rng.derive(i))
        assert is_acyclic(d) == acyclic_by_permutation(d.n, d.arcs)


def test_induced_subdigraph():
    sub = induced_subdigraph(C3, [0, 1])
    assert sub.n == 2 and sub.arcs == ((0, 1),)
    assert sub.labels == ("0", "1")
    whole = induced_subdigraph(C3, [0, 1, 2])
    assert whole.arcs == C3.arcs
    k4 = bidirect(Graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)]))
    sub3 = induced_subdigraph(k4, [0, 2, 3])
    assert sub3.m == 6
    with pytest.raises(ValueError):
        induced_subdigraph(C3, [5])


def test_induced_subgraph_labels():
    g = Graph(3, [(0, 1), (1, 2)], labels=["a", "b", "c"])
    sub = induced_subgraph(g, [1, 2])
    assert sub.labels == ("b", "c") and sub.edges == ((0, 1),)


def _is_forest(g: Graph) -> bool:
    # union-find cycle check, independent of orientation machinery
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def test_forest_iff_all_orientations_acyclic():
    for g in graphs_up_to(5):
        all_acyclic = all(
            is_acyclic(apply_orientation(g, o)) for o in enumerate_orientations(g)
        )
        assert all_acyclic == _is_forest(g)


def test_bidirect_collapses_to_graph_coloring():
    # no acyclic 2-subset of a bidirected graph contains an edge
    for g in graphs_up_to(4):
        d = bidirect(g)
        for u, v in g.edges:
            assert not is_proper_dicoloring(
                d,
                Coloring(
                    tuple(range(g.n)),
                    tuple(0 if x in (u, v) else x for x in range(g.n)),
                ),
            )
    # and dicolouring the bidirected digraph is exactly colouring the graph
    from itertools import product as iproduct

    for g in graphs_up_to(4):
        d = bidirect(g)
        palette = tuple(range(max(g.n, 1)))
        for assignment in iproduct(palette, repeat=g.n):
            f = Coloring(palette, assignment)
            assert is_proper_coloring(g, f) == is_proper_dicoloring(d, f)


def test_orientation_count_power_of_two():
    from dichroma.generators import complete_bipartite

    for g in graph_catalogue(4):
        assert len(set(o.direction for o in enumerate_orientations(g))) == 1 << g.m
    twelve = complete_bipartite(3, 4)
    assert twelve.m == 12
    assert len(set(o.direction for o in enumerate_orientations(twelve))) == 1 << 12
