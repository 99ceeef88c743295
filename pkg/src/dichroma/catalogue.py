"""Canonical catalogues of small graphs and digraphs.

Graphs are enumerated up to isomorphism by extending each canonical
(n-1)-vertex graph with every possible neighbourhood of a new last vertex
and keeping one representative per canonical edge-mask (the minimum over
all vertex permutations, computed vectorised). Known class counts are
asserted in the tests (1, 2, 4, 11, 34, 156, 1044 for graphs; 1, 2, 7, 42
for oriented digraphs; 1, 1, 2, 4 for tournaments).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from .core import Digraph, Graph, bidirect
from .randomized import DOMAIN_PAIR, RngSpec, stream_u64

__all__ = [
    "graph_catalogue",
    "graphs_up_to",
    "oriented_catalogue",
    "bidirected_catalogue",
    "digraph_catalogue",
    "random_digraph",
]


@lru_cache(maxsize=None)
def _edge_positions(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(combinations(range(n), 2))


@lru_cache(maxsize=None)
def _edge_index(n: int) -> dict[tuple[int, int], int]:
    return {e: i for i, e in enumerate(_edge_positions(n))}


@lru_cache(maxsize=None)
def _arc_positions(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((u, v) for u in range(n) for v in range(n) if u != v)


@lru_cache(maxsize=None)
def _arc_index(n: int) -> dict[tuple[int, int], int]:
    return {a: i for i, a in enumerate(_arc_positions(n))}


def _canonical_edge_masks(n: int, masks: list[int]) -> list[int]:
    """Minimum edge-mask over all vertex permutations, for each input."""
    if n <= 1 or not masks:
        return list(masks)
    positions = _edge_positions(n)
    index = _edge_index(n)
    arr = np.asarray(masks, dtype=np.int64)
    best = arr.copy()
    for perm in permutations(range(n)):
        mapped = np.zeros_like(arr)
        for src, (u, v) in enumerate(positions):
            a, b = perm[u], perm[v]
            dst = index[(a, b) if a < b else (b, a)]
            mapped |= ((arr >> src) & 1) << dst
        np.minimum(best, mapped, out=best)
    return [int(x) for x in best]


def _canonical_arc_mask(n: int, mask: int) -> int:
    positions = _arc_positions(n)
    index = _arc_index(n)
    best = mask
    for perm in permutations(range(n)):
        mapped = 0
        for src, (u, v) in enumerate(positions):
            if mask >> src & 1:
                mapped |= 1 << index[(perm[u], perm[v])]
        if mapped < best:
            best = mapped
    return best


def _graph_from_mask(n: int, mask: int) -> Graph:
    positions = _edge_positions(n)
    return Graph(n, [positions[i] for i in range(len(positions)) if mask >> i & 1])


def _digraph_from_mask(n: int, mask: int) -> Digraph:
    positions = _arc_positions(n)
    return Digraph(n, [positions[i] for i in range(len(positions)) if mask >> i & 1])


@lru_cache(maxsize=None)
def graph_catalogue(n: int) -> tuple[Graph, ...]:
    """All graphs on exactly n vertices, one per isomorphism class."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n <= 1:
        return (Graph(n),)
    parents = graph_catalogue(n - 1)
    index = _edge_index(n)
    candidates: set[int] = set()
    for parent in parents:
        base = 0
        for u, v in parent.edges:
            base |= 1 << index[(u, v)]
        for nb in range(1 << (n - 1)):
            mask = base
            for v in range(n - 1):
                if nb >> v & 1:
                    mask |= 1 << index[(v, n - 1)]
            candidates.add(mask)
    canonical = sorted(set(_canonical_edge_masks(n, sorted(candidates))))
    return tuple(_graph_from_mask(n, m) for m in canonical)


def graphs_up_to(max_n: int) -> list[Graph]:
    """One representative per isomorphism class, 1..max_n vertices."""
    out: list[Graph] = []
    for n in range(1, max_n + 1):
        out.extend(graph_catalogue(n))
    return out


@lru_cache(maxsize=None)
def oriented_catalogue(n: int) -> tuple[Digraph, ...]:
    """All orientations of graphs on n vertices (no digons), one per
    isomorphism class."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n <= 1:
        return (Digraph(n),)
    pairs = _edge_positions(n)
    arc_index = _arc_index(n)
    seen: set[int] = set()
    out: list[Digraph] = []
    states = [0] * len(pairs)
    total = 3 ** len(pairs)
    for code in range(total):
        c = code
        mask = 0
        for j, (u, v) in enumerate(pairs):
            c, state = divmod(c, 3)
            states[j] = state
            if state == 1:
                mask |= 1 << arc_index[(u, v)]
            elif state == 2:
                mask |= 1 << arc_index[(v, u)]
        canon = _canonical_arc_mask(n, mask)
        if canon not in seen:
            seen.add(canon)
            out.append(_digraph_from_mask(n, canon))
    out.sort(key=lambda d: (d.m, d.arcs))
    return tuple(out)


@lru_cache(maxsize=None)
def bidirected_catalogue(n: int) -> tuple[Digraph, ...]:
    """Bidirected versions of the canonical graphs on n vertices."""
    return tuple(bidirect(g) for g in graph_catalogue(n))


def digraph_catalogue(max_n: int) -> list[Digraph]:
    """Oriented plus bidirected representatives on 1..max_n vertices, with
    the shared edgeless digraphs listed once."""
    out: list[Digraph] = []
    for n in range(1, max_n + 1):
        seen: set[tuple] = set()
        for d in oriented_catalogue(n) + bidirected_catalogue(n):
            key = (d.n, d.arcs)
            if key not in seen:
                seen.add(key)
                out.append(d)
    return out


def random_digraph(n: int, rng: RngSpec) -> Digraph:
    """Each unordered pair independently gets no arc, one arc either way,
    or a digon, each with probability 1/4."""
    arcs = []
    for idx, (u, v) in enumerate(combinations(range(n), 2)):
        state = stream_u64(rng, DOMAIN_PAIR, idx) & 3
        if state == 1:
            arcs.append((u, v))
        elif state == 2:
            arcs.append((v, u))
        elif state == 3:
            arcs.append((u, v))
            arcs.append((v, u))
    return Digraph(n, arcs)
