from itertools import combinations

import pytest

from conftest import random_graph
from ramcert.complexes import (
    Graph,
    InvalidInput,
    SimplicialComplex,
    boundary_simplex,
    complete_graph,
    cycle_graph,
    discrete_complex,
    empty_graph,
    g_free_edge_complex,
    independence_complex,
    is_face,
    kn_edges,
    path_graph,
    simplex_complex,
)
from ramcert.oracles import naive_contains_subgraph


def face_sets(c):
    return {frozenset(c.labels_of(f)) for f in c.faces()}


def is_antichain(c):
    return not any(a != b and a & ~b == 0 for a in c.facets for b in c.facets)


class TestGraph:
    def test_rejects_self_loop(self):
        with pytest.raises(InvalidInput):
            Graph.from_edges(3, [(1, 1)])

    def test_rejects_duplicate_edge(self):
        with pytest.raises(InvalidInput):
            Graph.from_edges(3, [(0, 1), (1, 0)])

    def test_rejects_out_of_range(self):
        with pytest.raises(InvalidInput):
            Graph.from_edges(2, [(0, 2)])

    def test_json_roundtrip(self, c5):
        assert Graph.from_json(c5.to_json()) == c5

    def test_kn_edge_order_is_lexicographic(self):
        assert kn_edges(4) == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


class TestSimplexBuilders:
    def test_point(self):
        c = simplex_complex(1)
        assert c.vertices == (1,)
        assert face_sets(c) == {frozenset(), frozenset({1})}

    def test_triangle_has_all_subsets(self):
        assert len(simplex_complex(3).faces()) == 8

    def test_tetrahedron_face_count(self):
        assert len(simplex_complex(4).faces()) == 16

    @pytest.mark.parametrize("builder", [simplex_complex, boundary_simplex, discrete_complex])
    def test_zero_rejected(self, builder):
        with pytest.raises(InvalidInput):
            builder(0)

    def test_boundary_of_edge_is_two_points(self):
        assert boundary_simplex(2) == discrete_complex(2)

    def test_boundary_of_triangle_is_a_3_cycle(self):
        c = boundary_simplex(3)
        assert c.f_vector() == (3, 3)

    def test_boundary_of_tetrahedron(self):
        assert boundary_simplex(4).f_vector() == (4, 6, 4)

    def test_boundary_of_point_is_void(self):
        c = boundary_simplex(1)
        assert c.n_vertices == 0 and c.facets == ()

    @pytest.mark.parametrize("m", range(2, 7))
    def test_boundary_removes_exactly_top_face(self, m):
        full = face_sets(simplex_complex(m))
        bd = face_sets(boundary_simplex(m))
        assert full - bd == {frozenset(range(1, m + 1))}
        assert bd <= full

    def test_discrete(self):
        assert discrete_complex(1).f_vector() == (1,)
        assert discrete_complex(3).facet_labels() == [(1,), (2,), (3,)]


class TestIsFace:
    def test_examples(self):
        assert is_face(boundary_simplex(3), {1, 2})
        assert not is_face(boundary_simplex(3), {1, 2, 3})
        assert not is_face(discrete_complex(3), {1, 2})

    def test_empty_set_is_a_face(self):
        assert is_face(discrete_complex(2), set())

    def test_foreign_vertex_rejected(self):
        with pytest.raises(InvalidInput):
            is_face(discrete_complex(2), {7})


class TestIndependenceComplex:
    def test_k2_is_boundary_of_edge(self):
        ind = independence_complex(complete_graph(2))
        assert face_sets(ind) == {frozenset(), frozenset({0}), frozenset({1})}

    def test_edgeless_is_full_simplex(self):
        assert independence_complex(empty_graph(3)).facet_labels() == [(0, 1, 2)]

    def test_c4_facets(self):
        # oracle: maximal independent sets of the 4-cycle by enumeration
        g = cycle_graph(4)
        independent = [set(s) for r in range(5) for s in combinations(range(4), r)
                       if not any((min(u, v), max(u, v)) in g.edges for u, v in combinations(s, 2))]
        maximal = sorted(tuple(sorted(s)) for s in independent if not any(s < t for t in independent))
        assert maximal == [(0, 2), (1, 3)]
        assert sorted(independence_complex(g).facet_labels()) == maximal

    def test_faces_are_independent_sets_on_all_small_graphs(self, rng):
        graphs = [Graph(n, frozenset(e for i, e in enumerate(combinations(range(n), 2)) if bits >> i & 1))
                  for n in range(1, 5) for bits in range(1 << (n * (n - 1) // 2))]
        graphs += [random_graph(rng, n) for n in (5, 6) for _ in range(40)]
        for g in graphs:
            expected = {frozenset(s) for r in range(g.n + 1) for s in combinations(range(g.n), r)
                        if all((min(u, v), max(u, v)) not in g.edges for u, v in combinations(s, 2))}
            ind = independence_complex(g)
            assert face_sets(ind) == expected, g
            assert is_antichain(ind)


class TestGFreeEdgeComplex:
    def test_triangle_in_k3_is_boundary(self, k3):
        sigma = g_free_edge_complex(k3, 3)
        assert sigma.f_vector() == boundary_simplex(3).f_vector()
        assert len(sigma.facets) == 3 and all(f.bit_count() == 2 for f in sigma.facets)

    def test_p3_in_k3_is_discrete(self, p3):
        assert g_free_edge_complex(p3, 3).facet_labels() == [((0, 1),), ((0, 2),), ((1, 2),)]

    def test_matching_is_triangle_free(self, k3):
        assert is_face(g_free_edge_complex(k3, 4), {(0, 1), (2, 3)})

    def test_edgeless_pattern_rejected(self):
        with pytest.raises(InvalidInput):
            g_free_edge_complex(empty_graph(2), 4)

    @pytest.mark.parametrize("pattern", [path_graph(3), complete_graph(3), path_graph(4), cycle_graph(4)])
    @pytest.mark.parametrize("N", [3, 4])
    def test_faces_match_naive_matcher(self, pattern, N):
        sigma = g_free_edge_complex(pattern, N)
        edges = kn_edges(N)
        faces = face_sets(sigma)
        for r in range(len(edges) + 1):
            for sub in combinations(edges, r):
                free = not naive_contains_subgraph(sub, pattern)
                assert (frozenset(sub) in faces) == free, sub
        assert is_antichain(sigma)

    def test_downward_closed(self, k3):
        faces = face_sets(g_free_edge_complex(k3, 4))
        for f in faces:
            for e in f:
                assert f - {e} in faces


class TestComplexInvariants:
    def test_facets_reduced_to_antichain(self):
        c = SimplicialComplex([1, 2, 3], [[1, 2], [1], [1, 2, 3]])
        assert c.facet_labels() == [(1, 2, 3)]

    def test_uncovered_vertex_rejected(self):
        with pytest.raises(InvalidInput):
            SimplicialComplex([1, 2], [[1]])

    def test_json_roundtrip_with_pair_labels(self, k3):
        sigma = g_free_edge_complex(k3, 4)
        assert SimplicialComplex.from_json(sigma.to_json()) == sigma
