"""Rejection samplers for uniform random graphs.

A random multigraph on [n] with m edges is built by throwing 2m balls into n
bins and pairing consecutive locations; its degree sequence equals the bin
loads.  Conditioned on being simple it is a uniform simple graph, and
conditioned further on having no complex component it is uniform over graphs
without complex components (hence planar).  Both conditionings are realised
by rejection, which stays feasible because the acceptance probability is
bounded away from zero for m = O(n).

A uniform complex part with a prescribed core is built directly, without
rejection, by attaching a uniform rooted forest to the core's vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from degreelab.balls_bins import LocationVector
from degreelab.graphs import MultiGraph, SimpleGraph
from degreelab.pruefer import RootedForest, sample_uniform_forest

REJECT_LOOP = "loop"
REJECT_PARALLEL = "parallel_edge"
REJECT_COMPLEX = "complex_component"

DEFAULT_MAX_ATTEMPTS = 10_000


@dataclass
class RejectionReport:
    """Bookkeeping for one rejection-sampling run."""

    attempts: int = 0
    accepted: bool = False
    reject_reasons: dict[str, int] = field(
        default_factory=lambda: {REJECT_LOOP: 0, REJECT_PARALLEL: 0, REJECT_COMPLEX: 0}
    )


class RejectionLimitError(RuntimeError):
    """Raised when a sampler exhausts its attempt budget; carries the report."""

    def __init__(self, message: str, report: RejectionReport):
        super().__init__(message)
        self.report = report


def multigraph_from_locations(location: LocationVector) -> MultiGraph:
    """Multigraph pairing consecutive entries of an even-length location vector.

    Ball locations (a_1, ..., a_2m) become edges {a_1, a_2}, ..., {a_2m-1,
    a_2m}; vertex degrees equal bin loads.
    """
    if location.k % 2 != 0:
        raise ValueError(f"need an even number of balls, got {location.k}")
    entries = location.entries
    pairs = tuple(
        (int(entries[2 * i]), int(entries[2 * i + 1])) for i in range(location.k // 2)
    )
    return MultiGraph(n=location.n_bins, edges=pairs)


def _has_complex_component(n: int, us: np.ndarray, vs: np.ndarray) -> bool:
    """True iff some component of the simple graph (us[i], vs[i]) has
    edge count >= vertex count + 1."""
    m = us.size
    if m == 0:
        return False
    adjacency = coo_matrix(
        (np.ones(m, dtype=np.int8), (us - 1, vs - 1)), shape=(n, n)
    )
    n_comp, labels = connected_components(adjacency, directed=False)
    vertex_counts = np.bincount(labels, minlength=n_comp)
    edge_counts = np.bincount(labels[us - 1], minlength=n_comp)
    return bool(np.any(edge_counts >= vertex_counts + 1))


def sample_gnm_arrays(
    n: int,
    m: int,
    rng: np.random.Generator,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
    require_noncomplex: bool = False,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, RejectionReport]:
    """Low-level rejection loop; returns endpoint arrays, loads, and a report.

    Each attempt draws 2m uniform locations and keeps them iff the paired
    multigraph is simple (and, when ``require_noncomplex``, additionally has
    no complex component).  Rejection reasons are classified in check order:
    loop, then parallel edge, then complex component.  Raises
    RejectionLimitError once ``max_attempts`` draws have been rejected.
    """
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if m < 0 or m > n * (n - 1) // 2:
        raise ValueError(f"m must lie in [0, n(n-1)/2], got {m}")
    if require_noncomplex and m > n - 1:
        raise ValueError(
            f"graphs without complex components need m <= n - 1 here, got m={m}"
        )
    if max_attempts < 1:
        raise ValueError(f"max_attempts must be a positive integer, got {max_attempts}")

    report = RejectionReport()
    while report.attempts < max_attempts:
        report.attempts += 1
        entries = rng.integers(1, n + 1, size=2 * m, dtype=np.int64)
        us = entries[0::2]
        vs = entries[1::2]
        if m:
            if np.any(us == vs):
                report.reject_reasons[REJECT_LOOP] += 1
                continue
            lo = np.minimum(us, vs)
            hi = np.maximum(us, vs)
            codes = lo * np.int64(n + 1) + hi
            if np.unique(codes).size < m:
                report.reject_reasons[REJECT_PARALLEL] += 1
                continue
            if require_noncomplex and _has_complex_component(n, us, vs):
                report.reject_reasons[REJECT_COMPLEX] += 1
                continue
        report.accepted = True
        loads = np.bincount(entries, minlength=n + 1)[1:]
        return us, vs, loads, report
    raise RejectionLimitError(
        f"no acceptable sample within {max_attempts} attempts "
        f"(n={n}, m={m}, noncomplex={require_noncomplex})",
        report,
    )


def sample_gnm(
    n: int,
    m: int,
    rng: np.random.Generator,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> tuple[SimpleGraph, RejectionReport]:
    """Uniform simple graph on [n] with m edges, by rejection to simplicity."""
    us, vs, _, report = sample_gnm_arrays(n, m, rng, max_attempts)
    return SimpleGraph.from_arrays(n, us, vs), report


def sample_noncomplex(
    n: int,
    m: int,
    rng: np.random.Generator,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> tuple[SimpleGraph, RejectionReport]:
    """Uniform graph on [n] with m edges and no complex component.

    Every component of the result has at most one cycle, so the graph is
    planar by construction.
    """
    us, vs, _, report = sample_gnm_arrays(
        n, m, rng, max_attempts, require_noncomplex=True
    )
    return SimpleGraph.from_arrays(n, us, vs), report


def validate_core(core: SimpleGraph) -> None:
    """Check that a core occupies [1, v] exactly and has minimum degree two."""
    if not core.vertices:
        raise ValueError("the core must have at least one vertex")
    if core.vertices != tuple(range(1, core.order + 1)):
        raise ValueError("the core must occupy the vertex set [1, v(core)] exactly")
    if any(core.degree(v) < 2 for v in core.vertices):
        raise ValueError("every core vertex must have degree at least two")


def complex_part_from_forest(core: SimpleGraph, forest: RootedForest) -> SimpleGraph:
    """Graph obtained by replacing core vertex r by the forest tree rooted at r.

    The result lives on [forest.n] and has edge set E(core) | E(forest); the
    degree of a core vertex is its core degree plus its forest degree, and
    other vertices keep their forest degree.
    """
    validate_core(core)
    if forest.t != core.order:
        raise ValueError(
            f"forest must have one root per core vertex: t={forest.t}, "
            f"v(core)={core.order}"
        )
    return SimpleGraph(
        vertices=tuple(range(1, forest.n + 1)),
        edges=core.edges | forest.edges,
    )


def build_complex_part(
    core: SimpleGraph, q: int, rng: np.random.Generator
) -> SimpleGraph:
    """Uniform graph on [q] whose degree-one peeling recovers ``core``.

    Samples a uniform rooted forest with one root per core vertex and grafts
    it onto the core.  When the core has no bare-cycle component the result
    is a uniform complex graph with that core.
    """
    validate_core(core)
    if q < core.order + 1:
        raise ValueError(f"q must be at least v(core) + 1 = {core.order + 1}, got {q}")
    forest = sample_uniform_forest(q, core.order, rng)
    return complex_part_from_forest(core, forest)
