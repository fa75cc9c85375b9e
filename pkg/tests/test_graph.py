import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alphabound.cliques import count_cliques
from alphabound.graph import (
    Graph,
    VertexSet,
    complete_graph,
    cycle_graph,
    disjoint_union,
    gnp_graph,
    make_rng,
    petersen_graph,
    triangle_free_process,
)

from conftest import naive_cliques


def assert_graph_invariants(g: Graph):
    for v, row in enumerate(g.rows):
        assert not (row >> v) & 1
        for u in range(g.n):
            assert g.has_edge(u, v) == g.has_edge(v, u)
    assert g.m == sum(row.bit_count() for row in g.rows) // 2


def test_rejects_self_loop():
    with pytest.raises(ValueError, match="self-loop"):
        Graph.from_edges(3, [(1, 1)])


def test_rejects_asymmetric_rows():
    with pytest.raises(ValueError, match="asymmetric"):
        Graph(2, (0b10, 0))


def test_rejects_out_of_range_row():
    with pytest.raises(ValueError):
        Graph(2, (0b100, 0))


def test_edges_sorted_and_counted():
    g = cycle_graph(5)
    assert list(g.edges()) == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]
    assert g.m == 5
    assert g.average_degree() == 2.0


def test_induced_relabels():
    g = petersen_graph()
    h, old = g.induced([0, 1, 2, 5])
    assert old == [0, 1, 2, 5]
    assert sorted(h.edges()) == [(0, 1), (0, 3), (1, 2)]


def test_vertex_set_roundtrip():
    vs = VertexSet.from_iterable([4, 1, 7], 8)
    assert vs.to_list() == [1, 4, 7]
    assert 4 in vs and 3 not in vs
    assert len(vs) == 3
    with pytest.raises(ValueError):
        VertexSet(1 << 9, 8)


def test_rng_is_reproducible():
    a = make_rng(123).random(5)
    b = make_rng(123).random(5)
    assert np.array_equal(a, b)
    with pytest.raises(ValueError):
        make_rng(-1)


def test_gnp_extremes():
    assert gnp_graph(10, 0.0, 1).m == 0
    assert gnp_graph(10, 1.0, 1).m == 45
    with pytest.raises(ValueError):
        gnp_graph(10, 1.5, 1)


def test_gnp_edge_count_within_four_sigma():
    # Binomial(499500, 1/2): mean 249750, sd sqrt(499500)/2 ~= 353.4
    g = gnp_graph(1000, 0.5, 7)
    assert abs(g.m - 249750) <= 4 * 353.4


def test_gnp_same_seed_same_graph():
    assert gnp_graph(40, 0.3, 5) == gnp_graph(40, 0.3, 5)
    assert gnp_graph(40, 0.3, 5) != gnp_graph(40, 0.3, 6)


def test_triangle_free_process_small_cases():
    g3 = triangle_free_process(3, 0)
    assert g3.m <= 2
    assert g3 != complete_graph(3)
    assert triangle_free_process(2, 0).m == 1
    assert triangle_free_process(1, 0).m == 0


def test_triangle_free_process_n100_has_no_triangles():
    g = triangle_free_process(100, 11)
    assert count_cliques(g, 3).t == 0
    # brute force over all vertex triples
    assert naive_cliques(g, 3)[0] == 0


def test_triangle_free_process_is_saturated():
    g = triangle_free_process(40, 3)
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if not g.has_edge(u, v):
                assert g.rows[u] & g.rows[v], "an open pair was left"


@pytest.mark.parametrize("seed", range(50))
def test_triangle_free_process_many_seeds(seed):
    n = 10 * (seed % 50) + 10
    assert count_cliques(triangle_free_process(n, seed), 3).t == 0


@settings(max_examples=60, deadline=None)
@given(n=st.integers(0, 25), p=st.floats(0, 1), seed=st.integers(0, 2**32))
def test_generated_graphs_satisfy_invariants(n, p, seed):
    assert_graph_invariants(gnp_graph(n, p, seed))
    if n:
        assert_graph_invariants(triangle_free_process(n, seed))


def test_disjoint_union_and_complement():
    g = disjoint_union(complete_graph(3), cycle_graph(4))
    assert g.n == 7 and g.m == 7
    c = g.complement()
    assert c.m == 21 - 7
    assert_graph_invariants(c)
