"""Labelled graphs: components, cores, decomposition, and small-scale planarity.

A component is *complex* if it has at least two independent cycles (edge
count >= vertex count + 1).  The complex part of a graph is the union of its
complex components; peeling degree-one vertices from it yields the core, a
graph of minimum degree two with no bare-cycle components.  The decomposition
splits a graph into the complex component containing the largest core
component, the remaining complex components, and the non-complex rest.

Planarity is decided exactly for small graphs by searching for a subdivision
of K5 or K3,3, with Euler-count and sparse-component fast paths.  The search
is exponential and refuses components above a documented order limit rather
than guessing.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

Edge = tuple[int, int]

#: Components larger than this are refused by the subdivision search.
PLANARITY_COMPONENT_LIMIT = 12

#: Largest vertex count for the exhaustive all-graphs planarity table.
ENUMERATION_LIMIT = 7


class PlanarityLimitError(ValueError):
    """Raised when a planarity query exceeds the documented size limit."""


def canonical_edge(u: int, v: int) -> Edge:
    if u == v:
        raise ValueError(f"loop at vertex {u} is not a simple-graph edge")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    """Immutable labelled simple graph on an explicit vertex set.

    Vertices are positive integers; edges are unordered pairs of distinct
    vertices, stored with the smaller endpoint first.  An empty vertex set is
    allowed so that subgraphs (cores, decomposition parts) can be empty.
    """

    vertices: tuple[int, ...]
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        vs = tuple(sorted(set(self.vertices)))
        if vs and vs[0] < 1:
            raise ValueError("vertex labels must be positive integers")
        object.__setattr__(self, "vertices", vs)
        vset = set(vs)
        canonical = set()
        for u, v in self.edges:
            e = canonical_edge(u, v)
            if e[0] not in vset or e[1] not in vset:
                raise ValueError(f"edge {e} has an endpoint outside the vertex set")
            canonical.add(e)
        object.__setattr__(self, "edges", frozenset(canonical))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]] = ()) -> SimpleGraph:
        """Graph on vertex set 1..n with the given edges."""
        if n < 0:
            raise ValueError(f"n must be non-negative, got {n}")
        return cls(
            vertices=tuple(range(1, n + 1)),
            edges=frozenset(canonical_edge(u, v) for u, v in edges),
        )

    @classmethod
    def from_arrays(cls, n: int, us: np.ndarray, vs: np.ndarray) -> SimpleGraph:
        """Fast path for trusted endpoint arrays with no loops or duplicates."""
        lo = np.minimum(us, vs)
        hi = np.maximum(us, vs)
        graph = object.__new__(cls)
        object.__setattr__(graph, "vertices", tuple(range(1, n + 1)))
        object.__setattr__(graph, "edges", frozenset(zip(lo.tolist(), hi.tolist())))
        return graph

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def size(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        neighbours: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            neighbours[u].append(v)
            neighbours[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in neighbours.items()}

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return canonical_edge(u, v) in self.edges


@dataclass(frozen=True)
class MultiGraph:
    """Labelled multigraph on vertex set 1..n; loops and parallel edges allowed.

    Edges keep their construction order; each pair is stored with the smaller
    endpoint first.  A loop contributes two to the degree of its vertex.
    """

    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n}")
        canonical = []
        for u, v in self.edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge ({u}, {v}) leaves the vertex range [1, {self.n}]")
            canonical.append((u, v) if u <= v else (v, u))
        object.__setattr__(self, "edges", tuple(canonical))

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    @property
    def size(self) -> int:
        return len(self.edges)

    def is_simple(self) -> bool:
        seen = set()
        for u, v in self.edges:
            if u == v or (u, v) in seen:
                return False
            seen.add((u, v))
        return True

    def as_simple_graph(self) -> SimpleGraph:
        if not self.is_simple():
            raise ValueError("multigraph has a loop or parallel edge")
        return SimpleGraph(vertices=self.vertices, edges=frozenset(self.edges))


def degree_sequence(graph: SimpleGraph | MultiGraph) -> tuple[int, ...]:
    """Degrees in increasing vertex order; loops count twice."""
    if isinstance(graph, SimpleGraph):
        return tuple(len(graph.adjacency[v]) for v in graph.vertices)
    degrees = [0] * (graph.n + 1)
    for u, v in graph.edges:
        degrees[u] += 1
        degrees[v] += 1
    return tuple(degrees[1:])


def max_degree(graph: SimpleGraph | MultiGraph) -> int:
    """Maximum degree; zero for graphs with no vertices or no edges."""
    seq = degree_sequence(graph)
    return max(seq) if seq else 0


def components(graph: SimpleGraph) -> list[tuple[int, ...]]:
    """Connected components, each sorted, ordered by (size desc, min label asc)."""
    seen: set[int] = set()
    comps: list[tuple[int, ...]] = []
    adjacency = graph.adjacency
    for start in graph.vertices:
        if start in seen:
            continue
        queue = deque([start])
        seen.add(start)
        comp = [start]
        while queue:
            v = queue.popleft()
            for w in adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(tuple(sorted(comp)))
    comps.sort(key=lambda c: (-len(c), c[0]))
    return comps


def induced_subgraph(graph: SimpleGraph, vertices: Iterable[int]) -> SimpleGraph:
    vset = set(vertices)
    if not vset <= set(graph.vertices):
        raise ValueError("vertex selection is not a subset of the graph")
    edges = frozenset(e for e in graph.edges if e[0] in vset and e[1] in vset)
    return SimpleGraph(vertices=tuple(vset), edges=edges)


def _component_edge_counts(graph: SimpleGraph) -> dict[tuple[int, ...], int]:
    comps = components(graph)
    index = {v: i for i, comp in enumerate(comps) for v in comp}
    counts = [0] * len(comps)
    for u, _ in graph.edges:
        counts[index[u]] += 1
    return {comp: counts[i] for i, comp in enumerate(comps)}


def is_complex_component(graph: SimpleGraph, comp: Sequence[int]) -> bool:
    """True iff the component has cycle rank >= 2, i.e. edges >= vertices + 1."""
    comp_sorted = tuple(sorted(comp))
    if comp_sorted not in components(graph):
        raise ValueError(f"{comp_sorted} is not a component of the graph")
    members = set(comp_sorted)
    edge_count = sum(1 for e in graph.edges if e[0] in members)
    return edge_count >= len(comp_sorted) + 1


def peeled_core(graph: SimpleGraph) -> SimpleGraph:
    """Subgraph left after recursively deleting vertices of degree at most one.

    This is the classical 2-core: minimum degree two, bare-cycle components
    retained.  Compare ``two_core``, which also drops bare cycles.
    """
    adjacency = graph.adjacency
    degree = {v: len(adjacency[v]) for v in graph.vertices}
    alive = set(graph.vertices)
    queue = deque(v for v, d in degree.items() if d <= 1)
    while queue:
        v = queue.popleft()
        if v not in alive or degree[v] > 1:
            continue
        alive.discard(v)
        for w in adjacency[v]:
            if w in alive:
                degree[w] -= 1
                if degree[w] == 1:
                    queue.append(w)
    edges = frozenset(e for e in graph.edges if e[0] in alive and e[1] in alive)
    return SimpleGraph(vertices=tuple(alive), edges=edges)


def two_core(graph: SimpleGraph) -> SimpleGraph:
    """Core of the complex part: peel degree-one vertices, drop bare cycles.

    Equivalent to restricting to the complex components first and then
    peeling.  The result has minimum degree two and no bare-cycle components;
    it is empty whenever the graph has no complex component.
    """
    peeled = peeled_core(graph)
    keep: list[int] = []
    counts = _component_edge_counts(peeled)
    for comp, edge_count in counts.items():
        if edge_count > len(comp):
            keep.extend(comp)
    return induced_subgraph(peeled, keep)


@dataclass(frozen=True)
class Decomposition:
    """Split of a graph into core, large/small complex parts, and the rest.

    ``big_complex`` is the complex component containing the largest core
    component (ties among core components broken by most vertices, then
    smallest minimum label); ``small_complex`` is the union of the remaining
    complex components; ``non_complex`` is everything else.  The three parts
    partition the vertex set, and the core is contained in the complex part.
    """

    core: SimpleGraph
    big_complex: SimpleGraph
    small_complex: SimpleGraph
    non_complex: SimpleGraph


def decompose(graph: SimpleGraph) -> Decomposition:
    core = two_core(graph)
    comps = components(graph)
    edge_counts = _component_edge_counts(graph)
    complex_comps = [c for c in comps if edge_counts[c] >= len(c) + 1]

    big_vertices: tuple[int, ...] = ()
    if core.vertices:
        largest_core_comp = set(components(core)[0])
        for comp in complex_comps:
            if largest_core_comp <= set(comp):
                big_vertices = comp
                break

    small_vertices = [
        v for comp in complex_comps if comp != big_vertices for v in comp
    ]
    complex_vertex_set = set(big_vertices) | set(small_vertices)
    rest_vertices = [v for v in graph.vertices if v not in complex_vertex_set]
    return Decomposition(
        core=core,
        big_complex=induced_subgraph(graph, big_vertices),
        small_complex=induced_subgraph(graph, small_vertices),
        non_complex=induced_subgraph(graph, rest_vertices),
    )


def isolated_counts(graph: SimpleGraph) -> tuple[int, int]:
    """(isolated vertices, isolated edges).

    A vertex is isolated if it has degree zero; an edge is isolated if both
    endpoints have degree one.
    """
    adjacency = graph.adjacency
    k = sum(1 for v in graph.vertices if not adjacency[v])
    l = sum(
        1
        for u, v in graph.edges
        if len(adjacency[u]) == 1 and len(adjacency[v]) == 1
    )
    return k, l


# ---------------------------------------------------------------------------
# Planarity
# ---------------------------------------------------------------------------


def is_planar(
    graph: SimpleGraph, component_limit: int = PLANARITY_COMPONENT_LIMIT
) -> bool:
    """Exact planarity for small graphs via forbidden-subdivision search.

    Fast paths per component: at most one cycle -> planar; more than
    3v - 6 edges (v >= 3) -> non-planar; fewer than nine edges -> planar
    (every subdivision of K5 or K3,3 has at least nine edges).  Components
    that survive the fast paths and exceed ``component_limit`` vertices raise
    PlanarityLimitError instead of risking a wrong answer.
    """
    edge_counts = _component_edge_counts(graph)
    for comp, m_comp in edge_counts.items():
        n_comp = len(comp)
        if m_comp <= n_comp:
            continue
        if n_comp >= 3 and m_comp > 3 * n_comp - 6:
            return False
        if m_comp <= 8:
            continue
        if n_comp > component_limit:
            raise PlanarityLimitError(
                f"component with {n_comp} vertices exceeds the subdivision-search "
                f"limit of {component_limit}"
            )
        sub = induced_subgraph(graph, comp)
        adjacency = {v: set(sub.adjacency[v]) for v in sub.vertices}
        if _has_k5_subdivision(adjacency) or _has_k33_subdivision(adjacency):
            return False
    return True


def _has_k5_subdivision(adjacency: dict[int, set[int]]) -> bool:
    candidates = [v for v, ns in adjacency.items() if len(ns) >= 4]
    for branch in combinations(candidates, 5):
        pairs = list(combinations(branch, 2))
        if _route_disjoint_paths(adjacency, set(branch), pairs):
            return True
    return False


def _has_k33_subdivision(adjacency: dict[int, set[int]]) -> bool:
    candidates = [v for v, ns in adjacency.items() if len(ns) >= 3]
    for six in combinations(candidates, 6):
        rest = six[1:]
        for tail in combinations(rest, 2):
            side_a = (six[0],) + tail
            side_b = tuple(v for v in rest if v not in tail)
            pairs = [(a, b) for a in side_a for b in side_b]
            if _route_disjoint_paths(adjacency, set(six), pairs):
                return True
    return False


def _route_disjoint_paths(
    adjacency: dict[int, set[int]],
    branch: set[int],
    pairs: list[tuple[int, int]],
) -> bool:
    """Route internally-disjoint paths for every pair, branch vertices excluded
    from path interiors."""
    used: set[int] = set()

    def route(idx: int) -> bool:
        if idx == len(pairs):
            return True
        a, b = pairs[idx]
        on_path: set[int] = set()
        internal: list[int] = []

        def extend(current: int) -> bool:
            for w in adjacency[current]:
                if w == b:
                    used.update(internal)
                    if route(idx + 1):
                        return True
                    used.difference_update(internal)
                elif w not in branch and w not in used and w not in on_path:
                    on_path.add(w)
                    internal.append(w)
                    if extend(w):
                        return True
                    internal.pop()
                    on_path.discard(w)
            return False

        return extend(a)

    return route(0)


# ---------------------------------------------------------------------------
# Exhaustive planarity table over all labelled graphs on [n], n <= 7
# ---------------------------------------------------------------------------


def complete_graph_edges(n: int) -> list[Edge]:
    """Edges of K_n in lexicographic order; fixes the bitmask convention."""
    return [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]


def _ordered_distributions(items: tuple[int, ...], n_slots: int):
    """All ways to distribute items into n_slots ordered sequences."""
    if not items:
        yield tuple(() for _ in range(n_slots))
        return
    head, rest = items[0], items[1:]
    for dist in _ordered_distributions(rest, n_slots):
        for s in range(n_slots):
            seq = dist[s]
            for pos in range(len(seq) + 1):
                new_seq = seq[:pos] + (head,) + seq[pos:]
                yield dist[:s] + (new_seq,) + dist[s + 1 :]


@lru_cache(maxsize=None)
def _kuratowski_masks(n: int) -> tuple[int, ...]:
    """Edge bitmasks of every K5 or K3,3 subdivision on at most n vertices."""
    edge_index = {e: i for i, e in enumerate(complete_graph_edges(n))}
    labels = range(1, n + 1)
    masks: set[int] = set()

    def add_subdivisions(branch: tuple[int, ...], slots: list[tuple[int, int]]):
        remaining = tuple(v for v in labels if v not in branch)
        max_extra = n - len(branch)
        for extra_count in range(max_extra + 1):
            for extra in combinations(remaining, extra_count):
                for dist in _ordered_distributions(extra, len(slots)):
                    mask = 0
                    for (u, w), seq in zip(slots, dist):
                        path = (u, *seq, w)
                        for a, b in zip(path, path[1:]):
                            mask |= 1 << edge_index[canonical_edge(a, b)]
                    masks.add(mask)

    if n >= 5:
        for branch in combinations(labels, 5):
            add_subdivisions(branch, list(combinations(branch, 2)))
    if n >= 6:
        for six in combinations(labels, 6):
            rest = six[1:]
            for tail in combinations(rest, 2):
                side_a = (six[0],) + tail
                side_b = tuple(v for v in rest if v not in tail)
                slots = [(a, b) for a in side_a for b in side_b]
                add_subdivisions(six, slots)
    return tuple(sorted(masks))


@lru_cache(maxsize=None)
def planarity_table(n: int) -> np.ndarray:
    """Planarity of every labelled graph on [n], indexed by edge bitmask.

    Bit i of the index corresponds to ``complete_graph_edges(n)[i]``.  A graph
    is non-planar iff its edge set contains some Kuratowski subdivision, so
    the table is filled by superset tests against the subdivision masks.
    """
    if not 0 <= n <= ENUMERATION_LIMIT:
        raise PlanarityLimitError(
            f"the all-graphs planarity table is limited to n <= {ENUMERATION_LIMIT}"
        )
    n_edges = n * (n - 1) // 2
    codes = np.arange(1 << n_edges, dtype=np.uint32)
    nonplanar = np.zeros(codes.size, dtype=bool)
    for mask in _kuratowski_masks(n):
        m = np.uint32(mask)
        np.logical_or(nonplanar, (codes & m) == m, out=nonplanar)
    return ~nonplanar


# ---------------------------------------------------------------------------
# Edge-list text format (shared by the CLI)
# ---------------------------------------------------------------------------


def format_edge_list(graph: SimpleGraph) -> str:
    """Text form: first line "N M", then one "u v" line per edge, 1-indexed."""
    n = graph.vertices[-1] if graph.vertices else 0
    lines = [f"{n} {graph.size}"]
    lines.extend(f"{u} {v}" for u, v in sorted(graph.edges))
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> SimpleGraph:
    tokens = text.split()
    if len(tokens) < 2:
        raise ValueError("edge list must start with an 'N M' header")
    n, m = int(tokens[0]), int(tokens[1])
    if len(tokens) != 2 + 2 * m:
        raise ValueError(f"expected {m} edges after the header, got malformed data")
    pairs = tokens[2:]
    edges = [
        (int(pairs[2 * i]), int(pairs[2 * i + 1])) for i in range(m)
    ]
    return SimpleGraph.from_edges(n, edges)


def read_edge_list(path: str) -> SimpleGraph:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_edge_list(handle.read())


def write_edge_list(graph: SimpleGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(format_edge_list(graph))
