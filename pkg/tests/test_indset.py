import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alphabound.bounds import solve_constant_chain, theorem1_bound
from alphabound.cliques import count_cliques
from alphabound.graph import (
    Graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    gnp_graph,
    make_rng,
    petersen_graph,
    triangle_free_process,
    wheel_graph,
)
from alphabound.indset import (
    OracleLimitError,
    SparsificationError,
    aks_greedy,
    best_certificate,
    exact_alpha,
    neighborhood_clean_set,
    pivot_recursion,
    pivot_scores,
    select_pivot_vertex,
    sparsification_attempt,
    sparsify_and_recurse,
    sparsify_probability,
    triangle_case,
    turan_greedy,
)

from conftest import naive_alpha


@pytest.fixture(scope="module")
def chain():
    return solve_constant_chain(5)


def nx_alpha(g: Graph) -> int:
    clique, _ = nx.max_weight_clique(g.complement().to_networkx(), weight=None)
    return len(clique)


def test_exact_alpha_named_graphs():
    assert exact_alpha(cycle_graph(5))[0] == 2
    assert exact_alpha(petersen_graph())[0] == naive_alpha(petersen_graph()) == 4
    assert exact_alpha(Graph.empty(0))[0] == 0


@pytest.mark.parametrize("a, b", [(1, 0), (4, 3), (7, 5)])
def test_exact_alpha_clique_plus_isolated(a, b):
    g = disjoint_union(complete_graph(a), Graph.empty(b))
    assert exact_alpha(g)[0] == b + 1


def test_exact_alpha_refuses_large_inputs():
    with pytest.raises(OracleLimitError):
        exact_alpha(Graph.empty(70), limit=64)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 16), p=st.floats(0, 1), seed=st.integers(0, 2**32))
def test_exact_alpha_matches_brute_force(n, p, seed):
    g = gnp_graph(n, p, seed)
    size, cert = exact_alpha(g)
    assert size == cert.size == naive_alpha(g)
    assert g.is_independent(cert.vertices.mask)


@pytest.mark.parametrize("seed", range(8))
def test_exact_alpha_matches_networkx_at_n60(seed):
    g = gnp_graph(60, 0.1 + 0.1 * (seed % 4), seed)
    assert exact_alpha(g)[0] == nx_alpha(g)


def test_turan_greedy_examples():
    assert turan_greedy(Graph.empty(7)).size == 7
    assert turan_greedy(complete_graph(7)).size == 1
    g = gnp_graph(50, 0.2, 3)
    assert turan_greedy(g).size >= math.ceil(50 / (g.average_degree() + 1))


def test_k4_plus_path_prefers_path_vertex():
    # K4 on 0..3, edge 4-5: clique vertices X = 3 - 3 = 0, path vertices X = 1 - 0 = 1
    g = Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 5)])
    stats = count_cliques(g, 3)
    assert pivot_scores(stats) == [0, 0, 0, 0, 1, 1]
    assert select_pivot_vertex(g, stats) == 4


def test_wheel_cleaning_scores():
    # d - 2t: hub 5 - 10 = -5, rim 3 - 4 = -1
    g = wheel_graph(5)
    stats = count_cliques(g, 3)
    scores = [d - 2 * t for d, t in zip(stats.per_vertex_d, stats.per_vertex_t)]
    assert scores == [-5, -1, -1, -1, -1, -1]
    cert = neighborhood_clean_set(g, stats)
    assert cert.trace[0]["vertex"] == 1 and cert.trace[0]["score"] == -1
    assert cert.size >= 1


def test_cleaning_triangle_free_returns_max_degree_neighbourhood():
    g = triangle_free_process(60, 5)
    cert = neighborhood_clean_set(g)
    assert cert.size == max(g.degrees())


def test_select_pivot_rejects_mismatched_order():
    stats = count_cliques(complete_graph(5), 3)
    with pytest.raises(ValueError):
        select_pivot_vertex(complete_graph(5), stats, s=4)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(3, 30), p=st.floats(0.05, 0.9), seed=st.integers(0, 2**32))
def test_pivot_value_at_least_mean(n, p, seed):
    g = gnp_graph(n, p, seed)
    for s in (3, 4):
        if s > n:
            continue
        stats = count_cliques(g, s)
        scores = pivot_scores(stats)
        v = select_pivot_vertex(g, stats)
        assert scores[v] >= np.mean(scores) - 1e-9


def test_pivot_recursion_meets_small_t_bound(chain):
    hits = 0
    for seed in range(10):
        g = gnp_graph(60, 0.15, seed)
        t = count_cliques(g, 3).t
        if t > 60**1.5:
            continue
        hits += 1
        cert = pivot_recursion(g, 3, chain)
        assert g.is_independent(cert.vertices.mask)
        assert theorem1_bound(60, 3, t, chain) <= cert.size <= exact_alpha(g)[0]
    assert hits > 0


@settings(max_examples=40, deadline=None)
@given(n=st.integers(3, 40), p=st.floats(0, 1), seed=st.integers(0, 2**32))
def test_neighborhood_clean_bound(n, p, seed):
    g = gnp_graph(n, p, seed)
    stats = count_cliques(g, 3)
    cert = neighborhood_clean_set(g, stats)
    assert g.is_independent(cert.vertices.mask)
    assert cert.size >= max(d - 2 * t for d, t in zip(stats.per_vertex_d, stats.per_vertex_t))


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 40), p=st.floats(0, 1), seed=st.integers(0, 2**32))
def test_every_algorithm_returns_independent_sets(n, p, seed, chain):
    g = gnp_graph(n, p, seed)
    report = best_certificate(g, 3 if n >= 3 else 2, chain, seed)
    for cert in report.candidates.values():
        assert g.is_independent(cert.vertices.mask)
    assert report.best.size == max(c.size for c in report.candidates.values())
    assert report.best.size <= exact_alpha(g)[0]


def test_aks_greedy_ratio_is_stable_on_triangle_free_graphs():
    ratios = []
    for seed in range(20):
        g = triangle_free_process(500, seed)
        d = g.average_degree()
        ratios.append(aks_greedy(g, seed).size / (500 / d * math.log(d)))
    ratios = np.array(ratios)
    assert (ratios > 0).all()
    assert ratios.std() / ratios.mean() < 0.2


def test_aks_greedy_deterministic():
    g = gnp_graph(80, 0.2, 1)
    assert aks_greedy(g, 9).vertices == aks_greedy(g, 9).vertices
    with pytest.raises(ValueError):
        aks_greedy(g, 9, repeats=0)


def test_sparsify_probability_spot_values():
    assert sparsify_probability(1000, 10**6, 3) == pytest.approx(1000 / (1e4 * 2 ** (5 / 3)))
    assert sparsify_probability(1000, 10**6, 3) == pytest.approx(0.0315, abs=5e-5)
    n, t = 1000, 10**6
    expected = 0.25 * n / t ** (2 / 3) * math.log(n / t ** (1 / 3)) ** (1 / 3)
    assert sparsify_probability(n, t, 3, "triangle") == pytest.approx(expected)
    with pytest.raises(ValueError):
        sparsify_probability(n, t, 4, "triangle")


def test_sparsification_attempt_conditions():
    g = gnp_graph(200, 0.5, 0)
    t = count_cliques(g, 3).t
    p = sparsify_probability(200, t, 3, "triangle")
    res = sparsification_attempt(g, 3, t, p, make_rng(1))
    assert res["size"] == res["subset"].bit_count()
    assert res["accepted"] == (res["size"] >= 200 * p / 2 and res["T"] <= 2 * t * p**3)


def test_sparsify_and_recurse_deterministic_and_valid(chain):
    g = gnp_graph(120, 0.5, 4)
    a = sparsify_and_recurse(g, 3, chain, 17, variant="triangle")
    b = sparsify_and_recurse(g, 3, chain, 17, variant="triangle")
    assert a.vertices == b.vertices and a.trace == b.trace
    assert g.is_independent(a.vertices.mask)
    assert any(step.get("step") == "accepted" for step in a.trace)


def test_sparsify_exhaustion_reports_attempts(chain):
    g = gnp_graph(60, 0.5, 2)
    with pytest.raises(SparsificationError) as info:
        sparsify_and_recurse(g, 3, chain, 0, max_retries=0)
    assert info.value.attempts == []


def test_triangle_case_boundaries():
    assert triangle_case(10_000, 5.0) == "turan"
    assert triangle_case(10_000, 100.0) == "aks"
    assert triangle_case(10_000, 9_000.0) == "neighborhood_clean"
