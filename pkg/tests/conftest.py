from __future__ import annotations

from itertools import combinations

import pytest

from alphabound.graph import Graph, gnp_graph, triangle_free_process


def naive_cliques(g: Graph, s: int) -> tuple[int, list[int]]:
    """Clique count and per-vertex counts by checking every s-subset."""
    per = [0] * g.n
    total = 0
    for combo in combinations(range(g.n), s):
        if all(g.has_edge(u, v) for u, v in combinations(combo, 2)):
            total += 1
            for v in combo:
                per[v] += 1
    return total, per


def naive_alpha(g: Graph) -> int:
    """Independence number by scanning subsets from the largest size down."""
    for k in range(g.n, 0, -1):
        for combo in combinations(range(g.n), k):
            if all(not g.has_edge(u, v) for u, v in combinations(combo, 2)):
                return k
    return 0


@pytest.fixture(scope="session")
def small_random_graphs() -> list[Graph]:
    graphs = []
    for seed in range(40):
        n = 6 + seed % 20
        p = (0.1, 0.3, 0.5, 0.7)[seed % 4]
        graphs.append(gnp_graph(n, p, seed))
    for seed in range(10):
        graphs.append(triangle_free_process(5 + 3 * seed, 1000 + seed))
    return graphs


ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
