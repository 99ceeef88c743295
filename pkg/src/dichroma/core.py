"""Graph and digraph primitives.

Vertices are dense indices 0..n-1; any semantic identity (a k-subset, a
lattice point, a coordinate pair) lives in an optional per-vertex label.
Adjacency is kept as one integer bitmask per vertex so that subset and
neighbourhood tests are single machine operations. All values here are
immutable after construction and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import LimitExceededError

__all__ = [
    "Graph",
    "Digraph",
    "Orientation",
    "Coloring",
    "Partition",
    "ListAssignment",
    "iter_bits",
    "mask_of",
    "is_acyclic",
    "bidirect",
    "apply_orientation",
    "enumerate_orientations",
    "is_proper_coloring",
    "is_proper_dicoloring",
    "maximal_acyclic_sets",
    "induced_subdigraph",
    "induced_subgraph",
]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    """Pack an iterable of vertex indices into a bitmask."""
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _check_labels(n: int, labels) -> tuple[str, ...] | None:
    if labels is None:
        return None
    out = tuple(str(x) for x in labels)
    if len(out) != n:
        raise ValueError(f"expected {n} labels, got {len(out)}")
    if len(set(out)) != n:
        raise ValueError("labels must be pairwise distinct")
    return out


class Graph:
    """Simple undirected graph (no loops, no multi-edges).

    ``edges`` is stored sorted by (min endpoint, max endpoint); that order
    fixes the edge indexing used by orientation streams, so it must not
    change between releases.
    """

    __slots__ = ("n", "edges", "labels", "adj")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = (), labels=None):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(seen))
        self.labels = _check_labels(n, labels)
        adj = [0] * n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.adj: tuple[int, ...] = tuple(adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
            and self.labels == other.labels
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges, self.labels))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class Digraph:
    """Directed graph with no loops and at most one arc per ordered pair.

    A pair of opposite arcs (a digon) is allowed and counts as a directed
    cycle of length two.
    """

    __slots__ = ("n", "arcs", "labels", "outs", "ins")

    def __init__(self, n: int, arcs: Iterable[Sequence[int]] = (), labels=None):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        seen: set[tuple[int, int]] = set()
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if (u, v) in seen:
                raise ValueError(f"duplicate arc ({u},{v})")
            seen.add((u, v))
        self.n = n
        self.arcs: tuple[tuple[int, int], ...] = tuple(sorted(seen))
        self.labels = _check_labels(n, labels)
        outs = [0] * n
        ins = [0] * n
        for u, v in self.arcs:
            outs[u] |= 1 << v
            ins[v] |= 1 << u
        self.outs: tuple[int, ...] = tuple(outs)
        self.ins: tuple[int, ...] = tuple(ins)

    @property
    def m(self) -> int:
        return len(self.arcs)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.outs[u] >> v & 1)

    def digon_mask(self, v: int) -> int:
        """Vertices joined to v by arcs in both directions."""
        return self.outs[v] & self.ins[v]

    def underlying_graph(self) -> Graph:
        edges = {(u, v) if u < v else (v, u) for u, v in self.arcs}
        return Graph(self.n, sorted(edges), labels=self.labels)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Digraph)
            and self.n == other.n
            and self.arcs == other.arcs
            and self.labels == other.labels
        )

    def __hash__(self) -> int:
        return hash((self.n, self.arcs, self.labels))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Orientation:
    """One direction per edge of a base graph.

    ``direction[j]`` refers to the j-th edge of ``base.edges``; False means
    the arc runs from the lower to the higher endpoint.
    """

    base: Graph
    direction: tuple[bool, ...]

    def __post_init__(self):
        if len(self.direction) != self.base.m:
            raise ValueError(
                f"{len(self.direction)} direction bits for {self.base.m} edges"
            )

    def arcs(self) -> list[tuple[int, int]]:
        out = []
        for (u, v), rev in zip(self.base.edges, self.direction):
            out.append((v, u) if rev else (u, v))
        return out


@dataclass(frozen=True)
class Coloring:
    """A total assignment of palette colours to vertices 0..n-1."""

    palette: tuple[int, ...]
    assignment: tuple[int, ...]

    def __post_init__(self):
        allowed = set(self.palette)
        if len(allowed) != len(self.palette):
            raise ValueError("palette colours must be distinct")
        for v, c in enumerate(self.assignment):
            if c not in allowed:
                raise ValueError(f"vertex {v} assigned colour {c} outside palette")

    @property
    def n(self) -> int:
        return len(self.assignment)

    def classes(self) -> dict[int, frozenset[int]]:
        """Colour -> set of vertices, including empty classes."""
        out: dict[int, set[int]] = {c: set() for c in self.palette}
        for v, c in enumerate(self.assignment):
            out[c].add(v)
        return {c: frozenset(s) for c, s in out.items()}

    def class_count(self) -> int:
        return len(set(self.assignment))


@dataclass(frozen=True)
class Partition:
    """A palette-indexed partition of 0..n-1 into possibly empty parts."""

    n: int
    palette: tuple[int, ...]
    parts: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.parts) != len(self.palette):
            raise ValueError("one part per palette colour required")
        union = 0
        total = 0
        for part in self.parts:
            pm = mask_of(part)
            if pm & union:
                raise ValueError("parts must be pairwise disjoint")
            union |= pm
            total += len(part)
        if total != self.n or union != (1 << self.n) - 1:
            raise ValueError("parts must partition the vertex set")

    @classmethod
    def from_coloring(cls, coloring: Coloring) -> "Partition":
        classes = coloring.classes()
        return cls(
            coloring.n,
            coloring.palette,
            tuple(classes[c] for c in coloring.palette),
        )

    def to_coloring(self) -> Coloring:
        assignment = [0] * self.n
        for colour, part in zip(self.palette, self.parts):
            for v in part:
                assignment[v] = colour
        return Coloring(self.palette, tuple(assignment))


@dataclass(frozen=True)
class ListAssignment:
    """Per-vertex colour lists of a common size k over an explicit palette."""

    palette: tuple[int, ...]
    lists: tuple[frozenset[int], ...]
    k: int

    def __post_init__(self):
        allowed = set(self.palette)
        if len(allowed) != len(self.palette):
            raise ValueError("palette colours must be distinct")
        for v, lst in enumerate(self.lists):
            if len(lst) != self.k:
                raise ValueError(f"list of vertex {v} has size {len(lst)}, not {self.k}")
            if not lst <= allowed:
                raise ValueError(f"list of vertex {v} leaves the palette")

    @property
    def n(self) -> int:
        return len(self.lists)

    @classmethod
    def uniform(cls, n: int, colours: Iterable[int]) -> "ListAssignment":
        """The assignment giving every vertex the same list."""
        lst = frozenset(colours)
        return cls(tuple(sorted(lst)), (lst,) * n, len(lst))


def _subset_acyclic(ins: Sequence[int], mask: int) -> bool:
    """Kahn-style elimination restricted to the vertices in ``mask``."""
    alive = mask
    changed = True
    while alive and changed:
        changed = False
        rest = alive
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            if ins[v] & alive == 0:
                alive ^= low
                changed = True
    return alive == 0


def _extension_cyclic(outs: Sequence[int], ins: Sequence[int], mask: int, v: int) -> bool:
    """True iff adding v to the acyclic vertex set ``mask`` closes a cycle.

    A cycle through v exists iff some in-neighbour of v inside the set is
    reachable from an out-neighbour of v inside the set (a digon partner is
    the one-step case).
    """
    start = outs[v] & mask
    goal = ins[v] & mask
    if not start or not goal:
        return False
    reach = 0
    frontier = start
    while frontier:
        if frontier & goal:
            return True
        reach |= frontier
        nxt = 0
        rest = frontier
        while rest:
            low = rest & -rest
            w = low.bit_length() - 1
            rest ^= low
            nxt |= outs[w] & mask
        frontier = nxt & ~reach
    return False


def is_acyclic(d: Digraph) -> bool:
    """Decide whether d has no directed cycle (a digon counts as one)."""
    return _subset_acyclic(d.ins, (1 << d.n) - 1)


def bidirect(g: Graph) -> Digraph:
    """Replace every edge by the two opposite arcs."""
    arcs = []
    for u, v in g.edges:
        arcs.append((u, v))
        arcs.append((v, u))
    return Digraph(g.n, arcs, labels=g.labels)


def apply_orientation(g: Graph, o: Orientation) -> Digraph:
    """Turn g into the oriented digraph selected by o."""
    if o.base is not g and o.base != g:
        raise ValueError("orientation was built for a different graph")
    return Digraph(g.n, o.arcs(), labels=g.labels)


def enumerate_orientations(g: Graph, limit: int = 24) -> Iterator[Orientation]:
    """Stream all 2^m orientations of g in lexicographic direction order.

    The direction tuple is read as a binary word with edge 0 as the most
    significant bit, so consecutive orientations differ like a counter.
    """
    m = g.m
    if m > limit:
        raise LimitExceededError(f"{m} edges exceed the orientation limit {limit}")
    for code in range(1 << m):
        direction = tuple(bool(code >> (m - 1 - j) & 1) for j in range(m))
        yield Orientation(g, direction)


def is_proper_coloring(g: Graph, f: Coloring) -> bool:
    """True iff no edge of g joins two vertices of the same colour."""
    if f.n != g.n:
        raise ValueError("colouring does not cover the vertex set")
    a = f.assignment
    return all(a[u] != a[v] for u, v in g.edges)


def is_proper_dicoloring(d: Digraph, f: Coloring) -> bool:
    """True iff every colour class induces an acyclic subdigraph of d."""
    if f.n != d.n:
        raise ValueError("colouring does not cover the vertex set")
    masks: dict[int, int] = {}
    for v, c in enumerate(f.assignment):
        masks[c] = masks.get(c, 0) | 1 << v
    return all(_subset_acyclic(d.ins, m) for m in masks.values())


def maximal_acyclic_sets(d: Digraph, limit: int = 24) -> list[frozenset[int]]:
    """All inclusion-maximal vertex sets inducing acyclic subdigraphs.

    Depth-first extension in increasing vertex order visits every acyclic
    set exactly once (acyclicity is hereditary); a set is kept when no
    single vertex can be added without closing a cycle. Exactness matters
    more than speed at these sizes.
    """
    n = d.n
    if n > limit:
        raise LimitExceededError(f"{n} vertices exceed the acyclic-set limit {limit}")
    outs, ins = d.outs, d.ins
    found: list[int] = []

    def rec(mask: int, start: int) -> None:
        grew = False
        for v in range(start, n):
            if not _extension_cyclic(outs, ins, mask, v):
                grew = True
                rec(mask | 1 << v, v + 1)
        if grew:
            return
        for v in range(start):
            if not mask >> v & 1 and not _extension_cyclic(outs, ins, mask, v):
                return
        found.append(mask)

    rec(0, 0)
    found.sort(key=lambda m: tuple(iter_bits(m)))
    return [frozenset(iter_bits(m)) for m in found]


def induced_subdigraph(d: Digraph, s: Iterable[int]) -> Digraph:
    """Subdigraph on the vertices of s, re-indexed in increasing order.

    The original identity of each vertex survives in the labels (the old
    label when d is labelled, the old index otherwise).
    """
    keep = sorted(set(s))
    for v in keep:
        if not 0 <= v < d.n:
            raise ValueError(f"vertex {v} out of range")
    index = {v: i for i, v in enumerate(keep)}
    keep_mask = mask_of(keep)
    arcs = [
        (index[u], index[v])
        for u, v in d.arcs
        if keep_mask >> u & 1 and keep_mask >> v & 1
    ]
    labels = [d.label(v) for v in keep]
    return Digraph(len(keep), arcs, labels=labels)


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    """Undirected counterpart of induced_subdigraph."""
    keep = sorted(set(s))
    for v in keep:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    index = {v: i for i, v in enumerate(keep)}
    keep_mask = mask_of(keep)
    edges = [
        (index[u], index[v])
        for u, v in g.edges
        if keep_mask >> u & 1 and keep_mask >> v & 1
    ]
    labels = [g.label(v) for v in keep]
    return Graph(len(keep), edges, labels=labels)
