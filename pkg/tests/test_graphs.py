"""Tests for graph types, decomposition, cores, and planarity."""

from __future__ import annotations

import numpy as np
import pytest

from degreelab.graphs import (
    MultiGraph,
    PlanarityLimitError,
    SimpleGraph,
    complete_graph_edges,
    components,
    decompose,
    degree_sequence,
    format_edge_list,
    induced_subgraph,
    is_complex_component,
    is_planar,
    isolated_counts,
    max_degree,
    parse_edge_list,
    peeled_core,
    planarity_table,
    two_core,
)

from oracles import networkx_planar

BOWTIE = [(1, 2), (1, 3), (2, 3), (1, 4), (1, 5), (4, 5)]  # two triangles at 1


def graph_from_mask(n: int, mask: int) -> SimpleGraph:
    all_edges = complete_graph_edges(n)
    edges = [all_edges[i] for i in range(len(all_edges)) if mask >> i & 1]
    return SimpleGraph.from_edges(n, edges)


class TestSimpleGraphBasics:
    def test_rejects_loops(self):
        with pytest.raises(ValueError):
            SimpleGraph.from_edges(3, [(1, 1)])

    def test_rejects_edges_outside_vertex_set(self):
        with pytest.raises(ValueError):
            SimpleGraph(vertices=(1, 2), edges=frozenset({(1, 3)}))

    def test_edges_are_canonicalised(self):
        graph = SimpleGraph.from_edges(3, [(3, 1), (2, 1)])
        assert graph.edges == frozenset({(1, 3), (1, 2)})

    def test_from_arrays_matches_from_edges(self):
        us = np.array([3, 2, 4])
        vs = np.array([1, 4, 5])
        assert SimpleGraph.from_arrays(5, us, vs) == SimpleGraph.from_edges(
            5, [(1, 3), (2, 4), (4, 5)]
        )

    def test_degree_and_adjacency(self):
        graph = SimpleGraph.from_edges(4, [(1, 2), (1, 3)])
        assert graph.adjacency[1] == (2, 3)
        assert graph.degree(1) == 2
        assert graph.degree(4) == 0


class TestDegreesAndComponents:
    def test_edgeless_max_degree_zero(self):
        assert max_degree(SimpleGraph.from_edges(4)) == 0

    def test_star_max_degree(self):
        star = SimpleGraph.from_edges(5, [(1, v) for v in range(2, 6)])
        assert max_degree(star) == 4

    def test_multigraph_loop_counts_twice(self):
        graph = MultiGraph(n=2, edges=((1, 1), (1, 2)))
        assert degree_sequence(graph) == (3, 1)

    def test_multigraph_from_worked_example(self):
        graph = MultiGraph(n=5, edges=((5, 3), (5, 1), (2, 5), (2, 3)))
        assert max_degree(graph) == 3

    def test_edgeless_components_are_singletons(self):
        assert components(SimpleGraph.from_edges(3)) == [(1,), (2,), (3,)]

    def test_path_plus_isolated(self):
        graph = SimpleGraph.from_edges(4, [(1, 2), (2, 3)])
        assert components(graph) == [(1, 2, 3), (4,)]

    def test_component_order_size_then_label(self):
        graph = SimpleGraph.from_edges(6, [(5, 6), (1, 2)])
        assert components(graph) == [(1, 2), (5, 6), (3,), (4,)]


class TestComplexClassification:
    def test_tree_component_not_complex(self):
        graph = SimpleGraph.from_edges(3, [(1, 2), (2, 3)])
        assert not is_complex_component(graph, (1, 2, 3))

    def test_unicyclic_not_complex(self):
        graph = SimpleGraph.from_edges(3, [(1, 2), (2, 3), (1, 3)])
        assert not is_complex_component(graph, (1, 2, 3))

    def test_bowtie_is_complex(self):
        graph = SimpleGraph.from_edges(5, BOWTIE)
        assert is_complex_component(graph, (1, 2, 3, 4, 5))

    def test_non_component_rejected(self):
        graph = SimpleGraph.from_edges(3, [(1, 2)])
        with pytest.raises(ValueError):
            is_complex_component(graph, (1,))

    def test_matches_cycle_rank_oracle_exhaustively(self):
        from oracles import union_find_components

        for n in range(1, 7):
            n_edges = n * (n - 1) // 2
            for mask in range(1 << n_edges):
                graph = graph_from_mask(n, mask)
                oracle_comps = union_find_components(n, graph.edges)
                oracle = {
                    frozenset(comp): sum(1 for u, _ in graph.edges if u in comp)
                    >= len(comp) + 1
                    for comp in oracle_comps
                }
                found = components(graph)
                assert {frozenset(c) for c in found} == set(oracle)
                for comp in found:
                    assert is_complex_component(graph, comp) == oracle[frozenset(comp)]


def _rank_at_least_two(graph: SimpleGraph, comp) -> bool:
    comp_set = set(comp)
    m_c = sum(1 for e in graph.edges if e[0] in comp_set)
    return m_c >= len(comp_set) + 1


class TestCores:
    def test_forest_has_empty_core(self):
        graph = SimpleGraph.from_edges(5, [(1, 2), (2, 3), (4, 5)])
        assert two_core(graph).vertices == ()
        assert peeled_core(graph).vertices == ()

    def test_unicyclic_two_core_empty_but_peel_keeps_cycle(self):
        graph = SimpleGraph.from_edges(4, [(1, 2), (2, 3), (1, 3), (3, 4)])
        assert two_core(graph).vertices == ()
        triangle = peeled_core(graph)
        assert triangle.vertices == (1, 2, 3)
        assert triangle.size == 3

    def test_bowtie_with_pendant(self):
        graph = SimpleGraph.from_edges(6, BOWTIE + [(2, 6)])
        core = two_core(graph)
        assert core.vertices == (1, 2, 3, 4, 5)
        assert core.size == 6
        assert peeled_core(graph) == core

    def test_core_idempotent_after_embedding_back(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            n = int(rng.integers(2, 12))
            m = int(rng.integers(0, n * (n - 1) // 2 + 1))
            mask_bits = rng.permutation(n * (n - 1) // 2)[:m]
            mask = int(np.sum(1 << mask_bits.astype(object))) if m else 0
            graph = graph_from_mask(n, mask)
            core = two_core(graph)
            embedded = SimpleGraph(vertices=graph.vertices, edges=core.edges)
            assert two_core(embedded) == core

    def test_two_core_equals_peel_of_complex_part(self):
        # Restricting to complex components before peeling agrees with
        # peel-then-drop-bare-cycles on every small graph.
        for n in range(1, 7):
            for mask in range(1 << (n * (n - 1) // 2)):
                graph = graph_from_mask(n, mask)
                complex_vertices = [
                    v
                    for comp in components(graph)
                    if _rank_at_least_two(graph, comp)
                    for v in comp
                ]
                restricted = induced_subgraph(graph, complex_vertices)
                assert two_core(graph) == peeled_core(restricted)


class TestDecompose:
    def test_forest_goes_entirely_to_rest(self):
        graph = SimpleGraph.from_edges(5, [(1, 2), (3, 4)])
        parts = decompose(graph)
        assert parts.big_complex.vertices == ()
        assert parts.small_complex.vertices == ()
        assert parts.non_complex == graph

    def test_single_complex_component_becomes_big(self):
        graph = SimpleGraph.from_edges(6, BOWTIE)
        parts = decompose(graph)
        assert parts.big_complex.vertices == (1, 2, 3, 4, 5)
        assert parts.small_complex.vertices == ()
        assert parts.non_complex.vertices == (6,)

    def test_big_part_keyed_on_core_size_not_component_size(self):
        # Component A: bowtie core (5 core vertices) with no trees attached.
        # Component B: a double-edged... smaller core (4 core vertices as
        # K4 minus nothing) but many pendant vertices -> larger component.
        edges = BOWTIE[:]
        k4 = [(6, 7), (6, 8), (7, 8), (6, 9), (7, 9), (8, 9)]
        pendants = [(9, v) for v in range(10, 16)]
        graph = SimpleGraph.from_edges(15, edges + k4 + pendants)
        parts = decompose(graph)
        # bowtie core has 5 vertices > K4's 4, so it anchors the big part
        # even though the K4 component has more vertices in total.
        assert set(parts.big_complex.vertices) == {1, 2, 3, 4, 5}
        assert set(parts.small_complex.vertices) == set(range(6, 16))

    def test_parts_partition_vertices(self):
        rng = np.random.default_rng(12)
        for _ in range(100):
            n = int(rng.integers(1, 12))
            n_edges = n * (n - 1) // 2
            mask = int(rng.integers(0, 1 << n_edges)) if n_edges else 0
            graph = graph_from_mask(n, mask)
            parts = decompose(graph)
            combined = (
                list(parts.big_complex.vertices)
                + list(parts.small_complex.vertices)
                + list(parts.non_complex.vertices)
            )
            assert sorted(combined) == list(graph.vertices)
            assert set(parts.core.vertices) <= set(
                parts.big_complex.vertices
            ) | set(parts.small_complex.vertices)

    def test_invariants_on_near_critical_samples(self):
        # The exhaustive checks stop at six vertices; repeat the structural
        # invariants on uniform samples near half density at n = 1000.
        from degreelab.rng import derive_rng
        from degreelab.samplers import sample_gnm

        for i in range(10):
            graph, _ = sample_gnm(1000, 520, derive_rng(4848, i))
            parts = decompose(graph)
            combined = sorted(
                list(parts.big_complex.vertices)
                + list(parts.small_complex.vertices)
                + list(parts.non_complex.vertices)
            )
            assert combined == list(graph.vertices)
            core = parts.core
            assert core.edges <= graph.edges
            if core.vertices:
                assert min(len(core.adjacency[v]) for v in core.vertices) >= 2
                assert all(
                    sum(1 for e in core.edges if e[0] in set(comp)) > len(comp)
                    for comp in components(core)
                )
                assert two_core(parts.big_complex) == induced_subgraph(
                    core, components(core)[0]
                )
            for comp in components(parts.non_complex):
                members = set(comp)
                m_c = sum(1 for e in parts.non_complex.edges if e[0] in members)
                assert m_c <= len(comp)

    def test_core_relation_exhaustive(self):
        # The core of the big part is the largest core component; the core of
        # the small part is the rest of the core.
        for n in range(1, 7):
            for mask in range(1 << (n * (n - 1) // 2)):
                graph = graph_from_mask(n, mask)
                parts = decompose(graph)
                core_comps = components(parts.core)
                if not core_comps:
                    continue
                assert two_core(parts.big_complex) == induced_subgraph(
                    parts.core, core_comps[0]
                )
                rest = [v for comp in core_comps[1:] for v in comp]
                assert two_core(parts.small_complex) == induced_subgraph(
                    parts.core, rest
                )


class TestIsolatedCounts:
    def test_edgeless(self):
        assert isolated_counts(SimpleGraph.from_edges(5)) == (5, 0)

    def test_perfect_matching(self):
        graph = SimpleGraph.from_edges(6, [(1, 2), (3, 4), (5, 6)])
        assert isolated_counts(graph) == (0, 3)

    def test_pendant_edges_on_a_hub_are_not_isolated(self):
        graph = SimpleGraph.from_edges(4, [(1, 2), (1, 3), (1, 4)])
        assert isolated_counts(graph) == (0, 0)


class TestPlanarity:
    def test_k5_not_planar(self):
        k5 = SimpleGraph.from_edges(5, complete_graph_edges(5))
        assert not is_planar(k5)

    def test_k33_not_planar(self):
        k33 = SimpleGraph.from_edges(
            6, [(a, b) for a in (1, 2, 3) for b in (4, 5, 6)]
        )
        assert not is_planar(k33)

    def test_noncomplex_graphs_are_planar(self):
        cycle = [(v, v + 1) for v in range(1, 40)] + [(40, 1)]
        tail = [(12, 41), (41, 42)]
        graph = SimpleGraph.from_edges(42, cycle + tail)
        assert is_planar(graph)

    def test_refuses_large_undecidable_component(self):
        # 13 vertices, dense enough to pass the fast paths but too large for
        # the subdivision search.
        path = [(v, v + 1) for v in range(1, 13)]
        chords = [(v, v + 2) for v in range(1, 12)]
        graph = SimpleGraph.from_edges(13, path + chords)
        with pytest.raises(PlanarityLimitError):
            is_planar(graph)

    def test_edge_budget_fast_path(self):
        # 3n - 6 + 1 edges forces non-planarity without any search.
        n = 12
        edges = []
        for u in range(1, n + 1):
            for v in range(u + 1, n + 1):
                edges.append((u, v))
                if len(edges) == 3 * n - 6 + 1:
                    break
            if len(edges) == 3 * n - 6 + 1:
                break
        graph = SimpleGraph.from_edges(n, edges)
        assert not is_planar(graph)

    def test_exhaustive_against_mask_table_n6(self):
        table = planarity_table(6)
        for mask in range(1 << 15):
            graph = graph_from_mask(6, mask)
            assert is_planar(graph) == bool(table[mask]), mask

    def test_mask_table_against_networkx(self):
        rng = np.random.default_rng(99)
        for n in (4, 5, 6, 7):
            table = planarity_table(n)
            n_edges = n * (n - 1) // 2
            masks = rng.integers(0, 1 << n_edges, size=400)
            for mask in masks:
                graph = graph_from_mask(n, int(mask))
                assert bool(table[int(mask)]) == networkx_planar(n, graph.edges)

    def test_search_against_networkx_dense_zone_n7(self):
        # Random graphs in the edge range where the subdivision search
        # actually runs (m in [9, 3n-6]).
        rng = np.random.default_rng(123)
        all_edges = complete_graph_edges(7)
        for _ in range(300):
            m = int(rng.integers(9, 16))
            chosen = rng.permutation(len(all_edges))[:m]
            edges = [all_edges[i] for i in chosen]
            graph = SimpleGraph.from_edges(7, edges)
            assert is_planar(graph) == networkx_planar(7, graph.edges)


class TestEdgeListFormat:
    def test_round_trip(self):
        graph = SimpleGraph.from_edges(5, [(1, 2), (3, 5)])
        text = format_edge_list(graph)
        assert text.splitlines()[0] == "5 2"
        assert parse_edge_list(text) == graph

    def test_rejects_malformed(self):
        with pytest.raises(ValueError):
            parse_edge_list("3 2\n1 2\n")
