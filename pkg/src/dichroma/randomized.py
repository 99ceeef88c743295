"""Random orientations, acyclic biclique detection, and probability bounds.

Randomness is counter-based: every draw is a pure function of
(seed, domain, object index, counter), so results never depend on
evaluation order, platform, or worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional

from .core import (
    Digraph,
    Graph,
    Orientation,
    _subset_acyclic,
    apply_orientation,
    iter_bits,
    mask_of,
)
from .errors import BudgetExceededError, CertificationError, LimitExceededError

__all__ = [
    "RngSpec",
    "GBoundParams",
    "ExpectationParams",
    "EventEstimate",
    "mix64",
    "stream_u64",
    "uniform_below",
    "wilson_interval",
    "random_orientation",
    "count_acyclic_orientations",
    "find_acyclic_biclique",
    "find_acyclic_clique",
    "certified_breaking_orientation",
    "estimate_biclique_event",
    "g_bound",
    "g_bound_log",
    "expected_avoiding_count",
    "concentration_bound",
]

_M64 = (1 << 64) - 1

# Domain tags keep unrelated draw streams disjoint.
DOMAIN_ORIENTATION = 0x01
DOMAIN_TRIAL = 0x02
DOMAIN_SUBLIST = 0x03
DOMAIN_PAIR = 0x04

_Z95 = 1.959963984540054


def mix64(x: int) -> int:
    """SplitMix64 finaliser; a fixed 64-bit avalanche permutation."""
    x = (x + 0x9E3779B97F4A7C15) & _M64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _M64
    return x ^ (x >> 31)


@dataclass(frozen=True)
class RngSpec:
    """A 64-bit master seed plus the derivation rule for per-object streams.

    Equal specs produce identical draws regardless of the order in which
    objects are sampled.
    """

    seed: int

    def __post_init__(self):
        object.__setattr__(self, "seed", self.seed & _M64)

    def derive(self, *keys: int) -> "RngSpec":
        s = self.seed
        for k in keys:
            s = mix64(s ^ mix64(k & _M64))
        return RngSpec(s)


def stream_u64(spec: RngSpec, domain: int, index: int, counter: int = 0) -> int:
    """The ``counter``-th 64-bit word of stream (seed, domain, index)."""
    s = mix64(spec.seed ^ mix64(domain & _M64))
    s = mix64(s ^ mix64(index & _M64))
    return mix64(s + counter)


def uniform_below(spec: RngSpec, domain: int, index: int, bound: int) -> int:
    """Exactly uniform integer in [0, bound) via rejection on the stream."""
    if bound <= 0:
        raise ValueError("bound must be positive")
    limit = (1 << 64) - ((1 << 64) % bound)
    counter = 0
    while True:
        v = stream_u64(spec, domain, index, counter)
        if v < limit:
            return v % bound
        counter += 1


def wilson_interval(successes: int, trials: int, z: float = _Z95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials == 0:
        return (0.0, 1.0)
    p = successes / trials
    denom = 1.0 + z * z / trials
    centre = p + z * z / (2 * trials)
    half = z * math.sqrt(p * (1.0 - p) / trials + z * z / (4.0 * trials * trials))
    lo = 0.0 if successes == 0 else max(0.0, (centre - half) / denom)
    hi = 1.0 if successes == trials else min(1.0, (centre + half) / denom)
    return (lo, hi)


@dataclass(frozen=True)
class EventEstimate:
    """Monte Carlo frequency of an event with its 95% Wilson interval."""

    successes: int
    trials: int
    estimate: float
    ci_low: float
    ci_high: float

    @classmethod
    def from_counts(cls, successes: int, trials: int) -> "EventEstimate":
        lo, hi = wilson_interval(successes, trials)
        est = successes / trials if trials else 0.0
        return cls(successes, trials, est, lo, hi)


def random_orientation(g: Graph, rng: RngSpec) -> Digraph:
    """Orient every edge by an independent fair bit from its own stream."""
    direction = tuple(
        bool(stream_u64(rng, DOMAIN_ORIENTATION, j) >> 63) for j in range(g.m)
    )
    return apply_orientation(g, Orientation(g, direction))


def count_acyclic_orientations(g: Graph, limit: int = 25) -> int:
    """Exact number of acyclic orientations of g, by full enumeration."""
    m = g.m
    if m > limit:
        raise LimitExceededError(f"{m} edges exceed the enumeration limit {limit}")
    n = g.n
    edges = g.edges
    full = (1 << n) - 1
    count = 0
    for code in range(1 << m):
        ins = [0] * n
        for j, (u, v) in enumerate(edges):
            if code >> j & 1:
                ins[u] |= 1 << v
            else:
                ins[v] |= 1 << u
        if _subset_acyclic(ins, full):
            count += 1
    return count


def _cross_arcs_acyclic(d: Digraph, s_mask: int, t_mask: int) -> bool:
    """Acyclicity of the bipartite subdigraph spanned by arcs between S and T."""
    verts = list(iter_bits(s_mask | t_mask))
    index = {v: i for i, v in enumerate(verts)}
    ins = [0] * len(verts)
    for v in verts:
        other_side = t_mask if s_mask >> v & 1 else s_mask
        for u in iter_bits(d.ins[v] & other_side):
            ins[index[v]] |= 1 << index[u]
    return _subset_acyclic(ins, (1 << len(verts)) - 1)


def find_acyclic_biclique(
    d: Digraph,
    l: int,
    partition_hint: Optional[tuple[Iterable[int], Iterable[int]]] = None,
    max_pairs: int = 2_000_000,
) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Search for disjoint S, T of size l, complete bipartite in the
    underlying graph, whose arcs between the sides are acyclic.

    The scan is exhaustive; ``partition_hint`` restricts S to the first and
    T to the second given side. Returns (S, T) or None for a verified miss.
    """
    if l < 1:
        raise ValueError("l must be at least 1")
    g = d.underlying_graph()
    n = g.n
    if partition_hint is not None:
        side_s = sorted(set(partition_hint[0]))
        side_t_mask = mask_of(partition_hint[1])
        ordered = True
    else:
        side_s = list(range(n))
        side_t_mask = (1 << n) - 1
        ordered = False
    examined = 0
    for s_tuple in combinations(side_s, l):
        common = side_t_mask
        for v in s_tuple:
            common &= g.adj[v]
        common &= ~mask_of(s_tuple)
        if not ordered:
            # Unordered {S, T}: demand min(T) > min(S) to see each pair once.
            common &= ~((1 << (s_tuple[0] + 1)) - 1)
        candidates = list(iter_bits(common))
        if len(candidates) < l:
            continue
        s_mask = mask_of(s_tuple)
        for t_tuple in combinations(candidates, l):
            examined += 1
            if examined > max_pairs:
                raise BudgetExceededError(
                    "unknown: biclique scan exceeded its pair budget"
                )
            if _cross_arcs_acyclic(d, s_mask, mask_of(t_tuple)):
                return (s_tuple, t_tuple)
    return None


def find_acyclic_clique(d: Digraph, l: int, max_cliques: int = 2_000_000):
    """Search for an l-clique of the underlying graph whose induced
    orientation in d is acyclic (i.e. a transitive tournament)."""
    if l < 1:
        raise ValueError("l must be at least 1")
    g = d.underlying_graph()
    n = g.n
    examined = 0

    def rec(clique: list[int], allowed: int):
        nonlocal examined
        if len(clique) == l:
            examined += 1
            if examined > max_cliques:
                raise BudgetExceededError("unknown: clique scan exceeded its budget")
            if _subset_acyclic(d.ins, mask_of(clique)):
                return tuple(clique)
            return None
        start = clique[-1] + 1 if clique else 0
        for v in iter_bits(allowed & ~((1 << start) - 1)):
            hit = rec(clique + [v], allowed & g.adj[v])
            if hit is not None:
                return hit
        return None

    return rec([], (1 << n) - 1)


def certified_breaking_orientation(
    g: Graph,
    l: int,
    rng: RngSpec,
    max_attempts: int = 200,
    break_cliques: bool = False,
) -> Digraph:
    """Rejection-sample an orientation in which every complete bipartite
    l+l subgraph (and, optionally, every l-clique) contains a directed
    cycle, verified exhaustively.

    Raises CertificationError when the attempts run out, which signals
    parameters outside the regime where such orientations are plentiful.
    """
    for attempt in range(max_attempts):
        d = random_orientation(g, rng.derive(attempt))
        if find_acyclic_biclique(d, l) is not None:
            continue
        if break_cliques and find_acyclic_clique(d, l) is not None:
            continue
        return d
    raise CertificationError(
        f"no breaking orientation found in {max_attempts} attempts"
    )


def estimate_biclique_event(
    g: Graph, l: int, trials: int, rng: RngSpec, threads: int = 1
) -> EventEstimate:
    """Monte Carlo frequency of 'some acyclic l+l biclique survives' under
    uniformly random orientations of g."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    from .parallel import parallel_map

    def one(i: int) -> bool:
        d = random_orientation(g, rng.derive(DOMAIN_TRIAL, i))
        return find_acyclic_biclique(d, l) is not None

    hits = parallel_map(one, range(trials), threads)
    return EventEstimate.from_counts(sum(hits), trials)


@dataclass(frozen=True)
class GBoundParams:
    """Parameters of the list-thinning failure bound.

    l1 and l2 are the original and sampled list sizes, n the vertex count,
    s and t the collection bounds, u the palette size.
    """

    l1: int
    l2: int
    n: int
    s: int
    t: int
    u: int

    def __post_init__(self):
        if not self.l1 > self.l2 >= 1:
            raise ValueError("need l1 > l2 >= 1")
        for name in ("n", "s", "t", "u"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")


def g_bound_log(p: GBoundParams) -> float:
    """Natural log of the bound, the safe form for large s^u."""
    exponent = 4.0 * p.l2 * p.t * p.u / ((p.l1 - p.l2) * p.n)
    return p.u * math.log(p.s) - 0.5 * p.n * math.pow(2.0, -exponent)


def g_bound(p: GBoundParams) -> float:
    """Value s^u * exp(-(n/2) * 2^(-4*l2*t*u/((l1-l2)*n))), via log space."""
    try:
        return math.exp(g_bound_log(p))
    except OverflowError:
        return math.inf


@dataclass(frozen=True)
class ExpectationParams:
    """Parameters of the expected count of list-avoiding vertices: part
    size m, palette size u, list size k, forbidden-set size a."""

    m: int
    u: int
    k: int
    a: int

    def __post_init__(self):
        if self.m < 0 or self.a < 0:
            raise ValueError("m and a must be nonnegative")
        if not 1 <= self.k <= self.u:
            raise ValueError("need 1 <= k <= u")


def expected_avoiding_count(p: ExpectationParams) -> Fraction:
    """Exact rational m * C(u-a, k) / C(u, k); zero when a + k > u."""
    if p.a + p.k > p.u:
        return Fraction(0)
    return Fraction(p.m) * Fraction(math.comb(p.u - p.a, p.k), math.comb(p.u, p.k))


def concentration_bound(n: int, c: float, t: float) -> float:
    """Two-sided tail bound 2*exp(-t^2 / (2*c^2*n)) for a random variable
    moved by at most c per independent trial."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if c <= 0:
        raise ValueError("c must be positive")
    if t < 0:
        raise ValueError("t must be nonnegative")
    return 2.0 * math.exp(-(t * t) / (2.0 * c * c * n))
