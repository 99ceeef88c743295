"""Exact chromatic / dichromatic / list solvers at desk scale.

All searches are deterministic: vertices branch in a fixed order, colour
symmetry is broken by allowing at most one previously unused colour, and
list assignments are enumerated in a canonical first-use normal form.
Budget exhaustion never produces a silent wrong answer; it returns a
flagged certificate carrying the best bracketing interval.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional

from .core import (
    Coloring,
    Digraph,
    Graph,
    ListAssignment,
    Orientation,
    _extension_cyclic,
    apply_orientation,
    is_acyclic,
)
from .errors import LimitExceededError

__all__ = [
    "SolveBudget",
    "Certificate",
    "chromatic_number",
    "dichromatic_number",
    "dichromatic_number_of_graph",
    "find_acceptable_coloring",
    "find_acceptable_dicoloring",
    "list_chromatic_number",
    "list_dichromatic_number",
    "canonical_list_assignments",
    "sabidussi_coloring",
]


@dataclass(frozen=True)
class SolveBudget:
    """Resource limits for the exact solvers.

    orientation_limit caps edge counts for orientation sweeps (2^m work),
    assignment_limit caps n*k for canonical list enumeration.
    """

    vertex_limit: int = 64
    orientation_limit: int = 24
    assignment_limit: int = 64
    timeout: float = 120.0

    def __post_init__(self):
        if min(self.vertex_limit, self.orientation_limit, self.assignment_limit) < 1:
            raise ValueError("limits must be positive")
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")


DEFAULT_BUDGET = SolveBudget()


@dataclass
class Certificate:
    """Result of an exact solve.

    When exact, value = lower = upper and the witness (if any) re-validates
    against the checkers in core. On budget exhaustion exact is False and
    [lower, upper] brackets the true value; detail describes what was
    exhausted or interrupted.
    """

    value: Optional[int]
    exact: bool
    lower: int
    upper: Optional[int]
    witness: Optional[Coloring] = None
    witness_orientation: Optional[Orientation] = None
    rejecting_assignment: Optional[ListAssignment] = None
    detail: str = ""


class _Deadline:
    __slots__ = ("at", "ticks")

    def __init__(self, seconds: float):
        self.at = time.monotonic() + seconds
        self.ticks = 0

    def check(self) -> bool:
        """True when time is up; polls the clock every 1024 calls."""
        self.ticks += 1
        if self.ticks & 1023:
            return False
        return time.monotonic() > self.at


class _TimeUp(Exception):
    pass


def _degree_order(masks) -> list[int]:
    return sorted(range(len(masks)), key=lambda v: (-masks[v].bit_count(), v))


def _greedy_clique(adj) -> list[int]:
    """Greedy clique in descending-degree order; a valid lower bound."""
    clique: list[int] = []
    mask = 0
    for v in _degree_order(adj):
        if adj[v] & mask == mask:
            clique.append(v)
            mask |= 1 << v
    return clique


def _greedy_graph_coloring(adj, order) -> list[int]:
    colour = [-1] * len(adj)
    class_masks: list[int] = []
    for v in order:
        for c, cm in enumerate(class_masks):
            if not cm & adj[v]:
                colour[v] = c
                class_masks[c] |= 1 << v
                break
        else:
            colour[v] = len(class_masks)
            class_masks.append(1 << v)
    return colour


def _greedy_dicoloring(outs, ins, order) -> list[int]:
    colour = [-1] * len(outs)
    class_masks: list[int] = []
    for v in order:
        for c, cm in enumerate(class_masks):
            if not _extension_cyclic(outs, ins, cm, v):
                colour[v] = c
                class_masks[c] |= 1 << v
                break
        else:
            colour[v] = len(class_masks)
            class_masks.append(1 << v)
    return colour


def _search_graph_coloring(adj, order, k, deadline) -> Optional[list[int]]:
    """Find a proper k-colouring or prove none exists.

    Branches over vertices in the given order; a vertex may use at most
    one colour beyond those already used, which breaks class-permutation
    symmetry.
    """
    n = len(adj)
    colour = [-1] * n
    class_masks = [0] * k

    def rec(i: int, used: int) -> bool:
        if deadline.check():
            raise _TimeUp
        if i == n:
            return True
        v = order[i]
        bit = 1 << v
        cap = used + 1 if used < k else k
        for c in range(cap):
            if class_masks[c] & adj[v]:
                continue
            colour[v] = c
            class_masks[c] |= bit
            if rec(i + 1, max(used, c + 1)):
                return True
            class_masks[c] &= ~bit
        colour[v] = -1
        return False

    return list(colour) if rec(0, 0) else None


def _search_dicoloring(outs, ins, order, k, deadline) -> Optional[list[int]]:
    """Digraph analogue of _search_graph_coloring with incremental
    per-class cycle detection."""
    n = len(outs)
    colour = [-1] * n
    class_masks = [0] * k

    def rec(i: int, used: int) -> bool:
        if deadline.check():
            raise _TimeUp
        if i == n:
            return True
        v = order[i]
        bit = 1 << v
        cap = used + 1 if used < k else k
        for c in range(cap):
            if _extension_cyclic(outs, ins, class_masks[c], v):
                continue
            colour[v] = c
            class_masks[c] |= bit
            if rec(i + 1, max(used, c + 1)):
                return True
            class_masks[c] &= ~bit
        colour[v] = -1
        return False

    return list(colour) if rec(0, 0) else None


def _exact_certificate(k: int, assignment: list[int], detail: str) -> Certificate:
    palette = tuple(range(max(k, 1)))
    witness = Coloring(palette, tuple(assignment)) if assignment is not None else None
    return Certificate(k, True, k, k, witness=witness, detail=detail)


def chromatic_number(g: Graph, b: SolveBudget = DEFAULT_BUDGET) -> Certificate:
    """Exact chromatic number with a proper-colouring witness."""
    if g.n > b.vertex_limit:
        raise LimitExceededError(f"{g.n} vertices exceed budget {b.vertex_limit}")
    if g.n == 0:
        return Certificate(0, True, 0, 0, witness=Coloring((), ()), detail="empty")
    deadline = _Deadline(b.timeout)
    adj = g.adj
    order = _degree_order(adj)
    clique = _greedy_clique(adj)
    lower = max(1, len(clique))
    greedy = _greedy_graph_coloring(adj, order)
    upper = max(greedy) + 1
    if lower == upper:
        return _exact_certificate(upper, greedy, f"clique of {lower} meets greedy")
    k = lower
    try:
        while k < upper:
            found = _search_graph_coloring(adj, order, k, deadline)
            if found is not None:
                return _exact_certificate(k, found, f"refuted {k - 1}" if k > lower else "found at lower bound")
            k += 1
    except _TimeUp:
        witness = Coloring(tuple(range(upper)), tuple(greedy))
        return Certificate(
            None, False, k, upper, witness=witness,
            detail=f"timeout while testing {k} colours",
        )
    return _exact_certificate(upper, greedy, f"all k in [{lower},{upper}) refuted")


def _digon_graph(d: Digraph) -> Graph:
    edges = [(u, v) for u, v in d.arcs if u < v and d.has_arc(v, u)]
    return Graph(d.n, edges)


def _dichromatic_lower_bound(d: Digraph, deadline: _Deadline) -> int:
    """Sound lower bounds: 2 once any directed cycle exists, and the
    chromatic number of the digon graph (digon endpoints cannot share a
    class)."""
    lower = 1 if is_acyclic(d) else 2
    dg = _digon_graph(d)
    if dg.m:
        order = _degree_order(dg.adj)
        clique = _greedy_clique(dg.adj)
        greedy = _greedy_graph_coloring(dg.adj, order)
        lo, hi = max(1, len(clique)), max(greedy) + 1
        k = lo
        while k < hi:
            if _search_graph_coloring(dg.adj, order, k, deadline) is not None:
                hi = k
                break
            k += 1
        lower = max(lower, k)
    return lower


def dichromatic_number(d: Digraph, b: SolveBudget = DEFAULT_BUDGET) -> Certificate:
    """Exact dichromatic number: smallest k admitting a partition into k
    acyclic classes, found by k-ascending backtracking."""
    if d.n > b.vertex_limit:
        raise LimitExceededError(f"{d.n} vertices exceed budget {b.vertex_limit}")
    if d.n == 0:
        return Certificate(0, True, 0, 0, witness=Coloring((), ()), detail="empty")
    deadline = _Deadline(b.timeout)
    outs, ins = d.outs, d.ins
    total = [outs[v] | ins[v] for v in range(d.n)]
    order = _degree_order(total)
    try:
        lower = _dichromatic_lower_bound(d, deadline)
        greedy = _greedy_dicoloring(outs, ins, order)
        upper = max(greedy) + 1
        if lower >= upper:
            return _exact_certificate(upper, greedy, "lower bound meets greedy")
        k = lower
        while k < upper:
            found = _search_dicoloring(outs, ins, order, k, deadline)
            if found is not None:
                return _exact_certificate(k, found, f"exact at k={k}")
            k += 1
        return _exact_certificate(upper, greedy, f"all k in [{lower},{upper}) refuted")
    except _TimeUp:
        return Certificate(None, False, 1, None, detail="timeout")


def dichromatic_number_of_graph(g: Graph, b: SolveBudget = DEFAULT_BUDGET) -> Certificate:
    """Maximum dichromatic number over all orientations of g.

    Orientations paired by full reversal have equal value, so only one of
    each pair is solved. Stops early once the chromatic number of g (an
    upper bound for every orientation) is reached.
    """
    if g.m > b.orientation_limit:
        raise LimitExceededError(
            f"{g.m} edges exceed the orientation budget {b.orientation_limit}"
        )
    chi = chromatic_number(g, b)
    if g.m == 0:
        value = 1 if g.n else 0
        witness = Coloring((0,), (0,) * g.n) if g.n else Coloring((), ())
        return Certificate(
            value, True, value, value, witness=witness,
            witness_orientation=Orientation(g, ()), detail="no edges",
        )
    deadline = _Deadline(b.timeout)
    best = 0
    best_orientation = None
    best_witness = None
    full = (1 << g.m) - 1
    m = g.m
    for code in range(1 << m):
        if code > full ^ code:
            continue
        direction = tuple(bool(code >> (m - 1 - j) & 1) for j in range(m))
        o = Orientation(g, direction)
        d = apply_orientation(g, o)
        cert = dichromatic_number(d, b)
        if not cert.exact:
            return Certificate(
                None, False, best, chi.value,
                detail="timeout inside an orientation solve",
            )
        if cert.value > best:
            best = cert.value
            best_orientation = o
            best_witness = cert.witness
        if chi.exact and best == chi.value:
            break
        if time.monotonic() > deadline.at:
            return Certificate(
                None, False, best, chi.value, witness=best_witness,
                witness_orientation=best_orientation,
                detail="timeout during the orientation sweep",
            )
    return Certificate(
        best, True, best, best, witness=best_witness,
        witness_orientation=best_orientation,
        detail="maximum over all orientations (reversal pairs merged)",
    )


def _degeneracy_order(adj) -> list[int]:
    """Smallest-last elimination order of the underlying graph."""
    n = len(adj)
    alive = (1 << n) - 1
    removed = []
    for _ in range(n):
        best_v, best_d = -1, n + 1
        rest = alive
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            dv = (adj[v] & alive).bit_count()
            if dv < best_d:
                best_v, best_d = v, dv
        removed.append(best_v)
        alive &= ~(1 << best_v)
    removed.reverse()
    return removed


def _find_from_lists(adj_or_masks, order, lists, class_test) -> Optional[list[int]]:
    """Backtracking search for an accepted colouring; colours restricted to
    the per-vertex lists, classes validated incrementally by class_test."""
    n = len(order)
    colour: list[Optional[int]] = [None] * n
    class_masks: dict[int, int] = {}

    def rec(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for c in sorted(lists[v]):
            cm = class_masks.get(c, 0)
            if class_test(cm, v):
                colour[v] = c
                class_masks[c] = cm | 1 << v
                if rec(i + 1):
                    return True
                class_masks[c] = cm
        colour[v] = None
        return False

    return list(colour) if rec(0) else None


def find_acceptable_dicoloring(d: Digraph, L: ListAssignment) -> Optional[Coloring]:
    """A proper dicolouring drawn from the lists, or a verified None."""
    if L.n != d.n:
        raise ValueError("list assignment does not cover the vertex set")
    if d.n == 0:
        return Coloring(L.palette, ())
    outs, ins = d.outs, d.ins
    under = [outs[v] | ins[v] for v in range(d.n)]
    order = _degeneracy_order(under)
    found = _find_from_lists(
        under, order, L.lists,
        lambda cm, v: not _extension_cyclic(outs, ins, cm, v),
    )
    if found is None:
        return None
    return Coloring(L.palette, tuple(found))


def find_acceptable_coloring(g: Graph, L: ListAssignment) -> Optional[Coloring]:
    """Proper-colouring counterpart of find_acceptable_dicoloring."""
    if L.n != g.n:
        raise ValueError("list assignment does not cover the vertex set")
    if g.n == 0:
        return Coloring(L.palette, ())
    adj = g.adj
    order = _degeneracy_order(adj)
    found = _find_from_lists(adj, order, L.lists, lambda cm, v: not cm & adj[v])
    if found is None:
        return None
    return Coloring(L.palette, tuple(found))


def canonical_list_assignments(n: int, k: int) -> Iterator[ListAssignment]:
    """k-list assignments on n vertices in first-use normal form.

    Scanning vertices in index order, every colour beyond the current
    maximum must be the next unused integer. Every assignment over any
    palette is a renaming of at least one normal form, so quantifying
    over these decides list colourability; a palette of n*k colours
    suffices. Classes whose symmetric colours diverge later can appear
    more than once, which costs time but never correctness.
    """
    if n == 0:
        yield ListAssignment((), (), k)
        return
    if k == 0:
        yield ListAssignment((), (frozenset(),) * n, 0)
        return

    lists: list[frozenset[int]] = []

    def rec(i: int, top: int) -> Iterator[tuple[frozenset[int], ...]]:
        if i == n:
            yield tuple(lists)
            return
        for fresh in range(0, k + 1):
            if k - fresh > top:
                continue
            new_part = frozenset(range(top + 1, top + fresh + 1))
            for old in combinations(range(1, top + 1), k - fresh):
                lists.append(frozenset(old) | new_part)
                yield from rec(i + 1, top + fresh)
                lists.pop()

    for chosen in rec(0, 0):
        palette = tuple(range(1, max(max(s) for s in chosen) + 1))
        yield ListAssignment(palette, chosen, k)


def _list_number(obj, b: SolveBudget, finder) -> Certificate:
    n = obj.n
    if n == 0:
        return Certificate(0, True, 0, 0, detail="empty")
    deadline = _Deadline(b.timeout)
    rejecting: Optional[ListAssignment] = None
    k = 1
    while True:
        if n * k > b.assignment_limit:
            return Certificate(
                None, False, k, None, rejecting_assignment=rejecting,
                detail=f"palette n*k={n * k} exceeds the assignment budget",
            )
        bad = None
        tested = 0
        for L in canonical_list_assignments(n, k):
            tested += 1
            if time.monotonic() > deadline.at:
                return Certificate(
                    None, False, k, None, rejecting_assignment=rejecting,
                    detail=f"timeout at k={k} after {tested} assignments",
                )
            if finder(obj, L) is None:
                bad = L
                break
        if bad is None:
            return Certificate(
                k, True, k, k, rejecting_assignment=rejecting,
                detail=f"every canonical {k}-assignment accepts a colouring",
            )
        rejecting = bad
        k += 1


def list_dichromatic_number(d: Digraph, b: SolveBudget = DEFAULT_BUDGET) -> Certificate:
    """Exact list dichromatic number by canonical assignment enumeration;
    the certificate keeps a rejecting assignment for the value below."""
    return _list_number(d, b, find_acceptable_dicoloring)


def list_chromatic_number(g: Graph, b: SolveBudget = DEFAULT_BUDGET) -> Certificate:
    """Exact list chromatic (choice) number, same machinery with
    independent-set classes."""
    return _list_number(g, b, find_acceptable_coloring)


def sabidussi_coloring(fG: Coloring, fH: Coloring, N: int) -> Coloring:
    """Colour the Cartesian product (row-major) by the sum of the factor
    colours modulo N. Factor colours must already live in 0..N-1."""
    if N < 1:
        raise ValueError("N must be positive")
    for f in (fG, fH):
        for c in f.assignment:
            if not 0 <= c < N:
                raise ValueError(f"colour {c} not representable modulo {N}")
    assignment = tuple(
        (a + b) % N for a in fG.assignment for b in fH.assignment
    )
    return Coloring(tuple(range(N)), assignment)
