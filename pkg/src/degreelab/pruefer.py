"""Prüfer-style codec for forests with specified roots.

A rooted forest on vertex set [n] with roots 1..t is a forest with exactly t
tree components in which the roots lie in pairwise distinct components.  Such
forests are in bijection with codewords in [n]^(n-t-1) x [t]: repeatedly
delete the leaf with the largest label and record its unique neighbour.  The
vertex degrees can be read off a codeword directly (occurrence count, plus
one for non-roots), which makes uniform sampling of forests — or of just
their degree sequences — a balls-into-bins experiment.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

Edge = tuple[int, int]


@dataclass(frozen=True)
class PrueferSequence:
    """Codeword of a rooted forest; for F(n, t) it has length n - t."""

    entries: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class RootedForest:
    """Forest on [n] whose roots 1..t lie in pairwise distinct components.

    Invariants (checked by ``validate``): exactly t components, acyclic, one
    root per component, and exactly n - t edges.  Edges are stored with the
    smaller endpoint first.
    """

    n: int
    t: int
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        if not 1 <= self.t <= self.n:
            raise ValueError(f"need 1 <= t <= n, got t={self.t}, n={self.n}")
        canonical = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u} is not allowed in a forest")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge ({u}, {v}) leaves the vertex range [1, {self.n}]")
            canonical.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "edges", frozenset(canonical))
        if len(self.edges) != self.n - self.t:
            raise ValueError(
                f"a forest in F({self.n}, {self.t}) must have {self.n - self.t} "
                f"edges, got {len(self.edges)}"
            )

    def validate(self) -> None:
        """Check acyclicity and the one-root-per-component placement."""
        parent = list(range(self.n + 1))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru == rv:
                raise ValueError(f"edge ({u}, {v}) closes a cycle")
            parent[ru] = rv
        root_components = {find(r) for r in range(1, self.t + 1)}
        if len(root_components) != self.t:
            raise ValueError("two roots share a component")
        # n - t successful unions on an acyclic edge set leave exactly t
        # components, so the component count needs no separate check.

    def degree(self, v: int) -> int:
        if not 1 <= v <= self.n:
            raise ValueError(f"vertex {v} is outside [1, {self.n}]")
        return sum(1 for u, w in self.edges if v in (u, w))


def _require_codable(n: int, t: int) -> None:
    if t < 1:
        raise ValueError(f"t must be a positive integer, got {t}")
    if n < t + 1:
        raise ValueError(
            f"the forest codec needs n >= t + 1 (codewords have length n - t "
            f"with last entry a root), got n={n}, t={t}"
        )


def encode(forest: RootedForest) -> PrueferSequence:
    """Codeword of a rooted forest.

    Repeatedly removes the leaf with the largest label and records its unique
    neighbour.  Roots are never removed: the removed leaves are exactly the
    non-root vertices, each once, and the final recorded neighbour is a root.
    Raises ValueError if the forest invariants do not hold.
    """
    n, t = forest.n, forest.t
    _require_codable(n, t)
    forest.validate()

    adjacency: list[set[int]] = [set() for _ in range(n + 1)]
    for u, v in forest.edges:
        adjacency[u].add(v)
        adjacency[v].add(u)

    # Max-heap (negated labels) of non-root leaves; stale entries are skipped.
    heap = [-v for v in range(t + 1, n + 1) if len(adjacency[v]) == 1]
    heapq.heapify(heap)
    recorded: list[int] = []
    for _ in range(n - t):
        leaf = -heapq.heappop(heap)
        while len(adjacency[leaf]) != 1:
            leaf = -heapq.heappop(heap)
        neighbour = next(iter(adjacency[leaf]))
        recorded.append(neighbour)
        adjacency[leaf].clear()
        adjacency[neighbour].discard(leaf)
        if len(adjacency[neighbour]) == 1 and neighbour > t:
            heapq.heappush(heap, -neighbour)
    return PrueferSequence(entries=tuple(recorded))


def _sequence_entries(
    sequence: PrueferSequence | Sequence[int] | Iterable[int],
) -> tuple[int, ...]:
    if isinstance(sequence, PrueferSequence):
        return sequence.entries
    return tuple(sequence)


def _validate_sequence(entries: tuple[int, ...], n: int, t: int) -> None:
    _require_codable(n, t)
    if len(entries) != n - t:
        raise ValueError(
            f"a codeword for F({n}, {t}) has length {n - t}, got {len(entries)}"
        )
    for w in entries[:-1]:
        if not 1 <= w <= n:
            raise ValueError(f"entry {w} is outside [1, {n}]")
    if not 1 <= entries[-1] <= t:
        raise ValueError(
            f"the last entry must be a root in [1, {t}], got {entries[-1]}"
        )


def decode(
    sequence: PrueferSequence | Sequence[int], n: int, t: int
) -> RootedForest:
    """Rooted forest encoded by a codeword; inverse of ``encode``.

    Starts from the degree sequence implied by the codeword (occurrence
    count, plus one for non-roots) and repeatedly matches the next codeword
    entry with the largest-label vertex of current degree one.
    """
    entries = _sequence_entries(sequence)
    _validate_sequence(entries, n, t)

    degree = [0] * (n + 1)
    for w in entries:
        degree[w] += 1
    for v in range(t + 1, n + 1):
        degree[v] += 1

    heap = [-v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(heap)
    edges: list[Edge] = []
    for w in entries:
        leaf = -heapq.heappop(heap)
        while degree[leaf] != 1:
            leaf = -heapq.heappop(heap)
        degree[leaf] -= 1
        degree[w] -= 1
        if degree[w] == 1:
            heapq.heappush(heap, -w)
        edges.append((w, leaf) if w < leaf else (leaf, w))
    return RootedForest(n=n, t=t, edges=frozenset(edges))


def degree_from_sequence(
    sequence: PrueferSequence | Sequence[int], v: int, n: int, t: int
) -> int:
    """Degree of vertex v in the forest encoded by the codeword.

    Equals the occurrence count of v in the codeword, plus one iff v is not a
    root.
    """
    entries = _sequence_entries(sequence)
    _validate_sequence(entries, n, t)
    if not 1 <= v <= n:
        raise ValueError(f"vertex {v} is outside [1, {n}]")
    count = entries.count(v)
    return count + 1 if v > t else count


def count_forests(n: int, t: int) -> int:
    """Number of forests in F(n, t): exactly t * n^(n - t - 1)."""
    _require_codable(n, t)
    return t * n ** (n - t - 1)


def sample_uniform_forest(n: int, t: int, rng: np.random.Generator) -> RootedForest:
    """Uniform sample from F(n, t) via a uniform codeword."""
    _require_codable(n, t)
    body = rng.integers(1, n + 1, size=n - t - 1, dtype=np.int64)
    last = int(rng.integers(1, t + 1))
    return decode(tuple(body.tolist()) + (last,), n, t)


def sample_forest_degrees(n: int, t: int, rng: np.random.Generator) -> np.ndarray:
    """Degree sequence of a uniform forest from F(n, t), without building it.

    Draws a uniform codeword and reads the degrees off it: occurrence counts,
    plus one for every non-root.  Consumes the generator exactly like
    ``sample_uniform_forest``, so the same seed yields the degrees of the
    same forest.
    """
    _require_codable(n, t)
    body = rng.integers(1, n + 1, size=n - t - 1, dtype=np.int64)
    last = int(rng.integers(1, t + 1))
    degrees = np.bincount(body, minlength=n + 1)[1:]
    degrees[last - 1] += 1
    degrees[t:] += 1
    return degrees
