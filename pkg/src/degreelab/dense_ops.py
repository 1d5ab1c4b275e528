"""Degree-raising transformation and exhaustive counts of labelled graph classes.

P(n, m, k, l, d) denotes the labelled graphs on [n] with m edges, exactly k
isolated vertices, exactly l isolated edges, and maximum degree exactly d
(optionally restricted to planar graphs).  The transformation consumes an
isolated vertex and two isolated edges to raise the maximum degree by one:
pick a vertex v1 of maximum degree d, a neighbour v2, an isolated vertex v3,
and isolated edges v4v5, v6v7; delete v4v5 and v6v7 and add v1v3 and v2v3.
It maps P(n, m, k, l, d) into P(n, m, k+3, l-2, d+1) while preserving edge
count and planarity, and a forward/backward count of its applications yields
the ratio bound |P(n, m, k+3, l-2, d+1)| / |P(n, m, k, l, d)| >= 1/(8 k^3)
for l >= 2 and d >= 3.

Class counts are exact, obtained by sweeping every edge subset of K_n; the
sweep is limited to n <= 7 (2^21 graphs) and refuses larger n outright.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from degreelab.graphs import (
    ENUMERATION_LIMIT,
    SimpleGraph,
    complete_graph_edges,
    max_degree,
    planarity_table,
)


class EnumerationLimitError(ValueError):
    """Raised when an exhaustive enumeration exceeds its documented limit."""


@dataclass(frozen=True)
class ClassSignature:
    """Parameters (n, m, k, l, d) identifying one labelled graph class."""

    n: int
    m: int
    k: int
    l: int
    d: int


@dataclass(frozen=True)
class Witness:
    """Vertices consumed by one application of the degree-raising operation.

    v1 has maximum degree, v2 is a neighbour of v1, v3 is an isolated vertex,
    and v4v5, v6v7 are distinct isolated edges; all seven vertices are
    distinct.
    """

    v1: int
    v2: int
    v3: int
    v4: int
    v5: int
    v6: int
    v7: int

    def __post_init__(self) -> None:
        labels = (self.v1, self.v2, self.v3, self.v4, self.v5, self.v6, self.v7)
        if len(set(labels)) != 7:
            raise ValueError(f"witness vertices must be distinct, got {labels}")
        if self.v4 > self.v5 or self.v6 > self.v7:
            raise ValueError("isolated edges must be given smaller endpoint first")

    def as_tuple(self) -> tuple[int, ...]:
        return (self.v1, self.v2, self.v3, self.v4, self.v5, self.v6, self.v7)


def find_witness(graph: SimpleGraph) -> Witness | None:
    """Lexicographically smallest witness tuple, or None if none exists.

    There is no witness when the graph has no isolated vertex, fewer than two
    usable isolated edges, or maximum degree zero.  (When the maximum degree
    is one, the edge at v1 is itself isolated and cannot be reused, so three
    isolated edges are needed.)
    """
    adjacency = graph.adjacency
    d = max_degree(graph)
    if d == 0:
        return None
    isolated_vertices = [v for v in graph.vertices if not adjacency[v]]
    if not isolated_vertices:
        return None
    isolated_edges = sorted(
        e
        for e in graph.edges
        if len(adjacency[e[0]]) == 1 and len(adjacency[e[1]]) == 1
    )
    if len(isolated_edges) < 2:
        return None
    v3 = isolated_vertices[0]
    for v1 in sorted(v for v in graph.vertices if len(adjacency[v]) == d):
        for v2 in adjacency[v1]:
            usable = [e for e in isolated_edges if v1 not in e and v2 not in e]
            if len(usable) >= 2:
                (v4, v5), (v6, v7) = usable[0], usable[1]
                return Witness(v1, v2, v3, v4, v5, v6, v7)
    return None


def apply_transformation(graph: SimpleGraph, witness: Witness) -> SimpleGraph:
    """Apply the degree-raising operation for a validated witness.

    Deletes the isolated edges v4v5 and v6v7 and adds v1v3 and v2v3.  The
    edge count is preserved, the maximum degree becomes d + 1, the isolated
    vertex count rises by three, and planarity is preserved (v3 can always be
    drawn inside a face bounded by the edge v1v2).
    """
    adjacency = graph.adjacency
    d = max_degree(graph)
    w = witness
    if len(adjacency[w.v1]) != d or d < 1:
        raise ValueError(f"v1={w.v1} does not have maximum degree {d}")
    if w.v2 not in adjacency[w.v1]:
        raise ValueError(f"v2={w.v2} is not a neighbour of v1={w.v1}")
    if adjacency[w.v3]:
        raise ValueError(f"v3={w.v3} is not isolated")
    for a, b in ((w.v4, w.v5), (w.v6, w.v7)):
        if (a, b) not in graph.edges:
            raise ValueError(f"({a}, {b}) is not an edge")
        if len(adjacency[a]) != 1 or len(adjacency[b]) != 1:
            raise ValueError(f"({a}, {b}) is not an isolated edge")

    edges = set(graph.edges)
    edges.discard((w.v4, w.v5))
    edges.discard((w.v6, w.v7))
    edges.add((min(w.v1, w.v3), max(w.v1, w.v3)))
    edges.add((min(w.v2, w.v3), max(w.v2, w.v3)))
    result = SimpleGraph(vertices=graph.vertices, edges=frozenset(edges))

    assert len(result.adjacency[w.v1]) == d + 1
    assert result.adjacency[w.v3] == tuple(sorted((w.v1, w.v2)))
    assert all(not result.adjacency[v] for v in (w.v4, w.v5, w.v6, w.v7))
    return result


@lru_cache(maxsize=None)
def classify_all_graphs(n: int) -> dict[tuple[int, int, int, int], tuple[int, int]]:
    """Counts of every labelled graph class on [n], keyed by (m, k, l, d).

    Sweeps all 2^(n(n-1)/2) edge subsets of K_n once and tallies
    (edge count, isolated vertices, isolated edges, maximum degree); the
    value is (count over all graphs, count over planar graphs).  Limited to
    n <= 7.
    """
    if not 1 <= n <= ENUMERATION_LIMIT:
        raise EnumerationLimitError(
            f"exhaustive classification is limited to 1 <= n <= {ENUMERATION_LIMIT}, "
            f"got {n}"
        )
    edges = complete_graph_edges(n)
    codes = np.arange(1 << len(edges), dtype=np.uint32)

    incidence = [np.uint32(0)] * (n + 1)
    for idx, (u, v) in enumerate(edges):
        incidence[u] |= np.uint32(1 << idx)
        incidence[v] |= np.uint32(1 << idx)
    deg = np.stack(
        [np.bitwise_count(codes & incidence[v]) for v in range(1, n + 1)]
    )

    m_arr = np.bitwise_count(codes).astype(np.int32)
    k_arr = (deg == 0).sum(axis=0, dtype=np.int32)
    d_arr = deg.max(axis=0).astype(np.int32)
    l_arr = np.zeros(codes.size, dtype=np.int32)
    for idx, (u, v) in enumerate(edges):
        present = (codes >> np.uint32(idx)) & np.uint32(1)
        l_arr += (
            present.astype(bool) & (deg[u - 1] == 1) & (deg[v - 1] == 1)
        ).astype(np.int32)

    # Signature packing: m < 32, k <= 7, l <= 3, d <= 6.
    sig = m_arr + 32 * (k_arr + 8 * (l_arr + 8 * d_arr))
    planar = planarity_table(n)
    counts_all = np.bincount(sig, minlength=32 * 8 * 8 * 8)
    counts_planar = np.bincount(sig[planar], minlength=32 * 8 * 8 * 8)

    table: dict[tuple[int, int, int, int], tuple[int, int]] = {}
    for packed in np.nonzero(counts_all)[0]:
        m = int(packed) % 32
        k = (int(packed) // 32) % 8
        l = (int(packed) // 256) % 8
        d = int(packed) // 2048
        table[(m, k, l, d)] = (int(counts_all[packed]), int(counts_planar[packed]))
    return table


def enumerate_class(
    n: int, m: int, k: int, l: int, d: int, planar_only: bool = True
) -> int:
    """Exact size of P(n, m, k, l, d), optionally restricted to planar graphs."""
    if not 1 <= n <= ENUMERATION_LIMIT:
        raise EnumerationLimitError(
            f"exhaustive enumeration is limited to 1 <= n <= {ENUMERATION_LIMIT}, "
            f"got {n}"
        )
    if m < 0 or m > n * (n - 1) // 2:
        raise ValueError(f"m must lie in [0, n(n-1)/2], got {m}")
    if not 0 <= k <= n:
        raise ValueError(f"k must lie in [0, n], got {k}")
    if not 0 <= l <= n // 2:
        raise ValueError(f"l must lie in [0, n//2], got {l}")
    if not 0 <= d <= n - 1:
        raise ValueError(f"d must lie in [0, n-1], got {d}")
    counts = classify_all_graphs(n).get((m, k, l, d))
    if counts is None:
        return 0
    return counts[1] if planar_only else counts[0]


@dataclass(frozen=True)
class RatioCheck:
    """Outcome of one ratio-bound check between a class and its image class."""

    signature: ClassSignature
    count_src: int
    count_dst: int
    bound: float
    holds: bool
    vacuous: bool


def verify_ratio_bound(
    n: int, m: int, k: int, l: int, d: int, planar_only: bool = True
) -> RatioCheck:
    """Check |P(n,m,k+3,l-2,d+1)| / |P(n,m,k,l,d)| >= 1/(8 k^3).

    Requires the hypotheses k >= 1, l >= 2, d >= 3.  An empty source class
    makes the bound vacuously true, reported via ``vacuous``.
    """
    if k < 1:
        raise ValueError(f"the ratio bound needs k >= 1, got {k}")
    if l < 2:
        raise ValueError(f"the ratio bound needs l >= 2, got {l}")
    if d < 3:
        raise ValueError(f"the ratio bound needs d >= 3, got {d}")
    count_src = enumerate_class(n, m, k, l, d, planar_only)
    count_dst = (
        enumerate_class(n, m, k + 3, l - 2, d + 1, planar_only)
        if k + 3 <= n and d + 1 <= n - 1
        else 0
    )
    bound = 1.0 / (8.0 * k**3)
    vacuous = count_src == 0
    holds = vacuous or (count_dst / count_src >= bound)
    return RatioCheck(
        signature=ClassSignature(n=n, m=m, k=k, l=l, d=d),
        count_src=count_src,
        count_dst=count_dst,
        bound=bound,
        holds=holds,
        vacuous=vacuous,
    )


def sweep_ratio_bounds(n: int, planar_only: bool = True) -> list[RatioCheck]:
    """Ratio checks for every hypothesis-satisfying signature on [n].

    Covers all (m, k, l, d) with k >= 1, l >= 2, d >= 3 for which the source
    or the image class is nonempty.  (At n <= 7 the hypotheses pin down at
    least k + 2l + d + 1 >= 9 vertices, so every source class is empty and
    each check is vacuous; the sweep still reports the image-class sizes.)
    """
    table = classify_all_graphs(n)
    checks: list[RatioCheck] = []
    seen: set[tuple[int, int, int, int]] = set()
    for (m, k, l, d) in sorted(table):
        candidates = [(m, k, l, d)]
        # A nonempty image class P(n, m, k, l, d) corresponds to the source
        # signature (m, k - 3, l + 2, d - 1).
        if k >= 4 and d >= 4 and l + 2 <= n // 2:
            candidates.append((m, k - 3, l + 2, d - 1))
        for m_c, k_c, l_c, d_c in candidates:
            if (m_c, k_c, l_c, d_c) in seen:
                continue
            if k_c >= 1 and l_c >= 2 and d_c >= 3:
                seen.add((m_c, k_c, l_c, d_c))
                checks.append(verify_ratio_bound(n, m_c, k_c, l_c, d_c, planar_only))
    checks.sort(
        key=lambda c: (c.signature.m, c.signature.k, c.signature.l, c.signature.d)
    )
    return checks
