from itertools import combinations, product as iproduct

import pytest

from dichroma.catalogue import digraph_catalogue, random_digraph
from dichroma.core import (
    Coloring,
    Digraph,
    Graph,
    ListAssignment,
    bidirect,
    is_acyclic,
    is_proper_coloring,
    is_proper_dicoloring,
)
from dichroma.errors import LimitExceededError
from dichroma.generators import complete_graph, cycle_graph, kneser, path_graph
from dichroma.products import cartesian_product
from dichroma.randomized import RngSpec
from dichroma.solvers import (
    SolveBudget,
    canonical_list_assignments,
    chromatic_number,
    dichromatic_number,
    dichromatic_number_of_graph,
    find_acceptable_coloring,
    find_acceptable_dicoloring,
    list_chromatic_number,
    list_dichromatic_number,
    sabidussi_coloring,
)

from oracles import brute_chromatic, brute_min_acyclic_parts

C3 = Digraph(3, [(0, 1), (1, 2), (2, 0)])
BUDGET = SolveBudget(timeout=300)


def test_chromatic_examples():
    assert chromatic_number(kneser(5, 2), BUDGET).value == 3
    assert chromatic_number(complete_graph(4), BUDGET).value == 4
    assert chromatic_number(kneser(6, 2), BUDGET).value == 4


def test_chromatic_witness_revalidates():
    g = kneser(5, 2)
    cert = chromatic_number(g, BUDGET)
    assert cert.exact and is_proper_coloring(g, cert.witness)
    assert cert.witness.class_count() == cert.value


def test_chromatic_against_oracle():
    from dichroma.catalogue import graphs_up_to

    for g in graphs_up_to(5):
        assert chromatic_number(g, BUDGET).value == brute_chromatic(g.n, g.edges)


def test_dichromatic_examples():
    assert dichromatic_number(C3, BUDGET).value == 2
    acyclic = Digraph(4, [(0, 1), (1, 2), (2, 3)])
    assert dichromatic_number(acyclic, BUDGET).value == 1
    assert dichromatic_number(bidirect(complete_graph(3)), BUDGET).value == 3


def test_dichromatic_witness_revalidates():
    d = bidirect(kneser(5, 2))
    cert = dichromatic_number(d, BUDGET)
    assert cert.exact and cert.value == 3
    assert is_proper_dicoloring(d, cert.witness)


def test_dichromatic_against_partition_oracle():
    rng = RngSpec(99)
    targets = list(digraph_catalogue(3)) + [
        random_digraph(4 + i % 2, rng.derive(i)) for i in range(30)
    ]
    for d in targets:
        assert dichromatic_number(d, BUDGET).value == brute_min_acyclic_parts(d.n, d.arcs)


def test_dichromatic_number_of_graph_examples():
    tree = path_graph(5)
    assert dichromatic_number_of_graph(tree, BUDGET).value == 1
    assert dichromatic_number_of_graph(cycle_graph(5), BUDGET).value == 2
    cert = dichromatic_number_of_graph(complete_graph(3), BUDGET)
    assert cert.value == 2
    # the witness orientation reaches the maximum
    from dichroma.core import apply_orientation

    d = apply_orientation(complete_graph(3), cert.witness_orientation)
    assert dichromatic_number(d, BUDGET).value == 2


def test_dichromatic_number_of_graph_against_full_sweep():
    # no reversal-pair merging, no early exit: plain maximum over all
    # orientations with the partition-enumeration oracle per orientation
    from dichroma.catalogue import graphs_up_to
    from dichroma.core import apply_orientation, enumerate_orientations

    for g in graphs_up_to(4):
        brute = 1 if g.n else 0
        for o in enumerate_orientations(g):
            d = apply_orientation(g, o)
            brute = max(brute, brute_min_acyclic_parts(d.n, d.arcs))
        assert dichromatic_number_of_graph(g, BUDGET).value == brute


def test_dichromatic_number_of_graph_limit():
    with pytest.raises(LimitExceededError):
        dichromatic_number_of_graph(kneser(5, 2), SolveBudget(orientation_limit=10))


def test_find_acceptable_dicoloring_examples():
    lists2 = ListAssignment.uniform(3, (1, 2))
    got = find_acceptable_dicoloring(C3, lists2)
    assert got is not None and is_proper_dicoloring(C3, got)
    lists1 = ListAssignment.uniform(3, (1,))
    assert find_acceptable_dicoloring(C3, lists1) is None
    acyclic = Digraph(3, [(0, 1), (1, 2)])
    weird = ListAssignment((1, 2, 3), (frozenset({1}), frozenset({2}), frozenset({3})), 1)
    got = find_acceptable_dicoloring(acyclic, weird)
    assert got is not None and got.assignment == (1, 2, 3)


def test_list_dichromatic_examples():
    cert = list_dichromatic_number(C3, BUDGET)
    assert cert.value == 2
    # the stored witness rejects every colouring at k-1
    assert cert.rejecting_assignment is not None
    assert find_acceptable_dicoloring(C3, cert.rejecting_assignment) is None
    acyclic = Digraph(3, [(0, 1), (0, 2)])
    assert list_dichromatic_number(acyclic, BUDGET).value == 1
    c4 = bidirect(cycle_graph(4))
    assert list_dichromatic_number(c4, BUDGET).value == 2


def test_list_chromatic_examples():
    from dichroma.generators import complete_bipartite

    assert list_chromatic_number(complete_bipartite(2, 2), BUDGET).value == 2
    assert list_chromatic_number(complete_graph(3), BUDGET).value == 3
    assert list_chromatic_number(Graph(4), BUDGET).value == 1


def test_canonical_assignments_first_use_form():
    for L in canonical_list_assignments(3, 2):
        seen_max = 0
        for lst in L.lists:
            fresh = sorted(c for c in lst if c > seen_max)
            assert fresh == list(range(seen_max + 1, seen_max + 1 + len(fresh)))
            seen_max += len(fresh)


def _accepts_all_brute(d: Digraph, k: int) -> bool:
    """Brute ground truth: every k-list assignment over palette [n*k]
    accepts some colouring (palette that large captures all assignments
    up to renaming)."""
    n = d.n
    palette = tuple(range(1, n * k + 1))
    all_lists = [frozenset(c) for c in combinations(palette, k)]
    for chosen in iproduct(all_lists, repeat=n):
        L = ListAssignment(palette, chosen, k)
        if find_acceptable_dicoloring(d, L) is None:
            return False
    return True


def test_canonical_enumeration_matches_full_enumeration():
    targets = [
        C3,
        Digraph(2, [(0, 1), (1, 0)]),
        Digraph(3, [(0, 1), (1, 0), (1, 2)]),
    ]
    for d in targets:
        for k in (1, 2):
            canonical_all = all(
                find_acceptable_dicoloring(d, L) is not None
                for L in canonical_list_assignments(d.n, k)
            )
            assert canonical_all == _accepts_all_brute(d, k)


def test_sabidussi_coloring_examples():
    single = Coloring((0,), (0,))
    prod = sabidussi_coloring(single, single, 1)
    assert prod.assignment == (0,)
    fg = Coloring((0, 1), (0, 0, 1))
    fh = Coloring((0, 1), (0, 1, 1))
    f = sabidussi_coloring(fg, fh, 2)
    assert is_proper_dicoloring(cartesian_product(C3, C3), f)
    k3 = bidirect(complete_graph(3))
    ident = Coloring((0, 1, 2), (0, 1, 2))
    f = sabidussi_coloring(ident, ident, 3)
    assert is_proper_dicoloring(cartesian_product(k3, k3), f)
    with pytest.raises(ValueError):
        sabidussi_coloring(ident, ident, 2)


def test_budget_flags_instead_of_lying():
    g = kneser(8, 2)
    cert = chromatic_number(g, SolveBudget(timeout=0.0001))
    if not cert.exact:
        assert cert.lower <= 6 <= cert.upper
        assert "timeout" in cert.detail
    with pytest.raises(LimitExceededError):
        chromatic_number(g, SolveBudget(vertex_limit=10))


def test_list_budget_flags():
    d = bidirect(complete_graph(4))
    cert = list_dichromatic_number(d, SolveBudget(assignment_limit=8))
    assert not cert.exact
    assert cert.lower >= 2
    assert "budget" in cert.detail


def test_empty_structures():
    assert chromatic_number(Graph(0)).value == 0
    assert dichromatic_number(Digraph(0)).value == 0
    assert list_chromatic_number(Graph(0)).value == 0
