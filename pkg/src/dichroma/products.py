"""Cartesian and tensor products of graphs and digraphs.

Product vertices are indexed row-major (left index * right order + right
index) and labelled by the pair of operand labels. Graphs and digraphs
are never coerced into each other; bidirect explicitly when needed.
"""

from __future__ import annotations

from .core import Digraph, Graph

__all__ = ["cartesian_product", "tensor_product"]


def _pair_labels(x, y) -> list[str]:
    return [
        f"({x.label(u)},{y.label(v)})" for u in range(x.n) for v in range(y.n)
    ]


def cartesian_product(x, y):
    """Move along one coordinate at a time: adjacency in one factor with
    equality in the other."""
    if isinstance(x, Graph) and isinstance(y, Graph):
        edges = []
        for u in range(x.n):
            for a, b in y.edges:
                edges.append((u * y.n + a, u * y.n + b))
        for a, b in x.edges:
            for v in range(y.n):
                edges.append((a * y.n + v, b * y.n + v))
        return Graph(x.n * y.n, edges, labels=_pair_labels(x, y))
    if isinstance(x, Digraph) and isinstance(y, Digraph):
        arcs = []
        for u in range(x.n):
            for a, b in y.arcs:
                arcs.append((u * y.n + a, u * y.n + b))
        for a, b in x.arcs:
            for v in range(y.n):
                arcs.append((a * y.n + v, b * y.n + v))
        return Digraph(x.n * y.n, arcs, labels=_pair_labels(x, y))
    raise TypeError("cartesian product needs two graphs or two digraphs")


def tensor_product(x, y):
    """Move along both coordinates at once: componentwise adjacency."""
    if isinstance(x, Graph) and isinstance(y, Graph):
        edges = []
        for a, b in x.edges:
            for c, d in y.edges:
                edges.append((a * y.n + c, b * y.n + d))
                edges.append((a * y.n + d, b * y.n + c))
        return Graph(x.n * y.n, edges, labels=_pair_labels(x, y))
    if isinstance(x, Digraph) and isinstance(y, Digraph):
        arcs = []
        for a, b in x.arcs:
            for c, d in y.arcs:
                arcs.append((a * y.n + c, b * y.n + d))
        return Digraph(x.n * y.n, arcs, labels=_pair_labels(x, y))
    raise TypeError("tensor product needs two graphs or two digraphs")
