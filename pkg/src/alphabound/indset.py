"""Independent-set algorithms that follow the lower-bound arguments step by step.

Each algorithm returns an :class:`IndependentSetCertificate`.  Certificates are
checked for independence against the graph when they are emitted; nothing an
algorithm claims is trusted.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .bounds import ConstantChain, solve_constant_chain, theorem1_threshold, theorem2_threshold
from .cliques import CliqueStats, count_cliques, count_cliques_in_subset
from .exact import maximum_independent_set
from .graph import Graph, VertexSet, iter_bits, make_rng, mask_of, rows_to_matrix

logger = logging.getLogger(__name__)

ALGORITHMS = (
    "turan_greedy",
    "pivot_recursion",
    "neighborhood_clean",
    "aks_greedy",
    "sparsify_recurse",
    "exact_bnb",
)

# case split of the triangle argument
EPSILON = 0.1
DENSE_FACTOR = 7.0
DEFAULT_RETRIES = 64
DEFAULT_ORACLE_CAP = 64


class OracleLimitError(ValueError):
    pass


class SparsificationError(RuntimeError):
    """Every sampled set failed the acceptance test."""

    def __init__(self, message: str, attempts: list[dict[str, Any]]):
        super().__init__(message)
        self.attempts = attempts


@dataclass(frozen=True)
class IndependentSetCertificate:
    vertices: VertexSet
    algorithm: str
    trace: tuple[dict[str, Any], ...] = ()

    @property
    def size(self) -> int:
        return self.vertices.size

    def to_list(self) -> list[int]:
        return self.vertices.to_list()


def _certify(g: Graph, mask: int, algorithm: str, trace) -> IndependentSetCertificate:
    if not g.is_independent(mask):
        raise AssertionError(f"{algorithm} produced a dependent set")
    return IndependentSetCertificate(VertexSet(mask, g.n), algorithm, tuple(trace))


def _lift(mask: int, old: list[int]) -> int:
    return mask_of(old[i] for i in iter_bits(mask))


def exact_alpha(g: Graph, limit: int = DEFAULT_ORACLE_CAP) -> tuple[int, IndependentSetCertificate]:
    """Independence number of ``g`` by branch and bound (refuses n > limit)."""
    if g.n > limit:
        raise OracleLimitError(f"exact oracle refuses n={g.n} > limit={limit}")
    mask = maximum_independent_set(g.rows, g.full_mask)
    cert = _certify(g, mask, "exact_bnb", [{"step": "branch_and_bound", "n": g.n}])
    return cert.size, cert


def _min_degree_greedy(rows, alive: int) -> int:
    degs = {v: (rows[v] & alive).bit_count() for v in iter_bits(alive)}
    chosen = 0
    while alive:
        v = min(degs, key=lambda u: (degs[u], u))
        chosen |= 1 << v
        removed = (rows[v] | (1 << v)) & alive
        alive &= ~removed
        touched = 0
        for u in iter_bits(removed):
            del degs[u]
            touched |= rows[u]
        for u in iter_bits(touched & alive):
            degs[u] = (rows[u] & alive).bit_count()
    return chosen


def turan_greedy(g: Graph) -> IndependentSetCertificate:
    """Minimum-degree greedy; always reaches ceil(n / (d_avg + 1))."""
    mask = _min_degree_greedy(g.rows, g.full_mask)
    cert = _certify(g, mask, "turan_greedy", [{"step": "turan_greedy", "n": g.n, "m": g.m}])
    # n/(d+1) = n^2/(n+2m); compare in integers
    if g.n and cert.size * (g.n + 2 * g.m) < g.n * g.n:
        raise AssertionError("min-degree greedy fell below n/(d+1)")
    return cert


def pivot_scores(stats: CliqueStats) -> list[float]:
    """X_v = d(v) - t(v)^(2/(s-1)) for every vertex of ``stats``."""
    e = 2 / (stats.s - 1)
    return [d - t**e for d, t in zip(stats.per_vertex_d, stats.per_vertex_t)]


def select_pivot_vertex(g: Graph, stats: CliqueStats, s: int | None = None) -> int:
    """Vertex maximising d(v) - t(v)^(2/(s-1)), lowest index on ties.

    The maximum is at least the average, which is what the averaging step
    needs, so no randomness is used.
    """
    if s is not None and s != stats.s:
        raise ValueError(f"stats were computed for s={stats.s}, not s={s}")
    scores = pivot_scores(stats)
    best = max(range(len(scores)), key=lambda i: (scores[i], -stats.vertices[i]))
    return stats.vertices[best]


def pivot_recursion(
    g: Graph, s: int, chain: ConstantChain | None = None, stats: CliqueStats | None = None
) -> IndependentSetCertificate:
    """Small-t argument as an algorithm: Turán greedy when the average degree is
    below (c_s')^-1 n^((s-2)/(s-1)), otherwise recurse into the neighbourhood of
    the best pivot with clique order s-1."""
    if s < 2:
        raise ValueError(f"s must be at least 2, got {s}")
    chain = chain or solve_constant_chain(max(s, 3))
    rows = g.rows
    mask = g.full_mask
    trace: list[dict[str, Any]] = []
    order = s
    depth = 0
    while True:
        n = mask.bit_count()
        if n == 0:
            break
        m2 = sum((rows[v] & mask).bit_count() for v in iter_bits(mask))
        d_avg = m2 / n
        threshold = n ** ((order - 2) / (order - 1)) / chain.c_prime(order) if order > 2 else 0.0
        if order == 2 or d_avg <= threshold or order > n:
            trace.append({"step": "turan", "depth": depth, "order": order, "n": n, "d_avg": d_avg})
            chosen = _min_degree_greedy(rows, mask)
            return _certify(g, chosen, "pivot_recursion", trace)
        if stats is not None and depth == 0:
            level = stats
        else:
            level = count_cliques_in_subset(g, mask, order)
        scores = pivot_scores(level)
        i = max(range(len(scores)), key=lambda k: (scores[k], -level.vertices[k]))
        v = level.vertices[i]
        trace.append(
            {
                "step": "pivot",
                "depth": depth,
                "order": order,
                "n": n,
                "vertex": v,
                "score": scores[i],
                "mean_score": sum(scores) / len(scores),
                "d": level.per_vertex_d[i],
                "t": level.per_vertex_t[i],
            }
        )
        nbhd = rows[v] & mask
        if not nbhd:
            # isolated pivot: the rest of the graph has no edges either
            return _certify(g, _min_degree_greedy(rows, mask), "pivot_recursion", trace)
        mask = nbhd
        order -= 1
        depth += 1
    return _certify(g, 0, "pivot_recursion", trace)


def neighborhood_clean_set(g: Graph, stats: CliqueStats | None = None) -> IndependentSetCertificate:
    """Neighbourhood of the vertex maximising d(v) - 2t(v), with one endpoint of
    every remaining edge deleted (each such edge is a triangle through v)."""
    stats = stats or count_cliques(g, 3)
    if stats.s != 3:
        raise ValueError("neighbourhood cleaning needs triangle statistics")
    if g.n == 0:
        return _certify(g, 0, "neighborhood_clean", [])
    scores = [d - 2 * t for d, t in zip(stats.per_vertex_d, stats.per_vertex_t)]
    i = max(range(len(scores)), key=lambda k: (scores[k], -stats.vertices[k]))
    v = stats.vertices[i]
    nbrs = g.neighbors(v)
    idx = np.array(nbrs, dtype=np.intp)
    adj = rows_to_matrix(g.rows, g.n)[np.ix_(idx, idx)].astype(np.int32)
    deg = adj.sum(axis=1)
    live = np.ones(len(nbrs), dtype=bool)
    deleted = 0
    while len(nbrs) and deg.max() > 0:
        w = int(np.argmax(deg))  # highest remaining degree, lowest index
        live[w] = False
        deg -= adj[w]
        deg[w] = -1
        deleted += 1
    keep = mask_of(nbrs[k] for k in np.flatnonzero(live).tolist())
    if not keep:
        # empty neighbourhood (isolated or edgeless pivot); any single vertex works
        keep = 1 << v
    cert = _certify(
        g,
        keep,
        "neighborhood_clean",
        [{"step": "neighborhood_clean", "vertex": v, "d": stats.per_vertex_d[i],
          "t": stats.per_vertex_t[i], "score": scores[i], "deleted": deleted}],
    )
    if cert.size < scores[i]:
        raise AssertionError("cleaned neighbourhood smaller than d(v) - 2t(v)")
    return cert


def _destroy_triangles(g: Graph, stats: CliqueStats | None) -> tuple[int, int]:
    """Greedily delete the vertex in most triangles until none remain.

    Returns the surviving mask and the number of deletions.
    """
    rows = g.rows
    if g.n < 3:
        return g.full_mask, 0
    stats = stats or count_cliques(g, 3)
    tri = np.array(stats.per_vertex_t, dtype=np.int64)
    alive = g.full_mask
    removed = 0
    while True:
        v = int(np.argmax(tri))
        if tri[v] <= 0:
            break
        alive &= ~(1 << v)
        tri[v] = -1
        removed += 1
        nv = rows[v] & alive
        for u in iter_bits(nv):
            tri[u] -= (rows[u] & nv).bit_count()
    return alive, removed


def _random_greedy(rows, alive: int, order: np.ndarray) -> int:
    chosen = blocked = 0
    for v in order.tolist():
        bit = 1 << v
        if alive & bit and not blocked & bit:
            chosen |= bit
            blocked |= rows[v]
    return chosen


def aks_greedy(
    g: Graph, rng=None, repeats: int = 8, stats: CliqueStats | None = None
) -> IndependentSetCertificate:
    """Triangle-hitting deletion followed by the best of ``repeats`` random
    greedy passes; falls back to Turán greedy when that is larger.

    Realises the few-triangles regime heuristically; it does not certify the
    bound itself.
    """
    if repeats < 1:
        raise ValueError("repeats must be at least 1")
    seed = rng if isinstance(rng, (int, np.integer)) else None
    rng = make_rng(rng)
    alive, removed = _destroy_triangles(g, stats)
    best = 0
    for _ in range(repeats):
        cand = _random_greedy(g.rows, alive, rng.permutation(g.n))
        if cand.bit_count() > best.bit_count():
            best = cand
    greedy_size = best.bit_count()
    turan = _min_degree_greedy(g.rows, g.full_mask)
    picked = "random_greedy"
    if turan.bit_count() > best.bit_count():
        best, picked = turan, "turan"
    trace = [
        {"step": "destroy_triangles", "removed": removed, "seed": seed},
        {"step": "random_greedy", "repeats": repeats, "best": greedy_size},
        {"step": "pick", "winner": picked},
    ]
    return _certify(g, best, "aks_greedy", trace)


def sparsify_probability(n: int, t: int, s: int, variant: str = "general") -> float:
    """Vertex-sampling probability of the large-t argument.

    ``general``: n / (t^(2/s) 2^(1+2/s)).  ``triangle`` (s=3 only):
    (1/4)(n / t^(2/3)) log(n / t^(1/3))^(1/3), or 0 when that log is not positive.
    """
    if t <= 0:
        return math.inf
    if variant == "general":
        return n / (t ** (2 / s) * 2 ** (1 + 2 / s))
    if variant == "triangle":
        if s != 3:
            raise ValueError("the triangle variant needs s=3")
        ratio = n / t ** (1 / 3)
        if ratio <= 1:
            return 0.0
        return 0.25 * n / t ** (2 / 3) * math.log(ratio) ** (1 / 3)
    raise ValueError(f"unknown sparsification variant {variant!r}")


def sample_subset(g: Graph, p: float, rng) -> int:
    draws = rng.random(g.n) < p
    return mask_of(np.flatnonzero(draws).tolist())


def sparsification_attempt(g: Graph, s: int, t: int, p: float, rng) -> dict[str, Any]:
    """Draw one random subset and test both acceptance conditions."""
    subset = sample_subset(g, p, rng)
    size = subset.bit_count()
    T = count_cliques_in_subset(g, subset, s).t if size >= s else 0
    ok_size = size >= g.n * p / 2
    ok_count = T <= 2 * t * p**s
    return {"subset": subset, "size": size, "T": T, "ok_size": ok_size, "ok_count": ok_count,
            "accepted": ok_size and ok_count}


def _small_t_algorithm(h: Graph, s: int, variant: str, chain: ConstantChain, rng) -> IndependentSetCertificate:
    if variant == "triangle":
        stats = count_cliques(h, 3) if h.n >= 3 else None
        cands = [aks_greedy(h, rng, stats=stats)]
        if stats is not None:
            cands.append(neighborhood_clean_set(h, stats))
        return max(cands, key=lambda c: c.size)
    return pivot_recursion(h, s, chain)


def sparsify_and_recurse(
    g: Graph,
    s: int,
    chain: ConstantChain | None = None,
    rng=None,
    max_retries: int = DEFAULT_RETRIES,
    variant: str = "general",
    stats: CliqueStats | None = None,
) -> IndependentSetCertificate:
    """Large-t argument: sample vertices with probability p, keep the sample only
    if it is at least np/2 large and holds at most 2 t p^s copies of K_s, then
    run the small-t algorithm on the induced graph."""
    chain = chain or solve_constant_chain(max(s, 3))
    seed = rng if isinstance(rng, (int, np.integer)) else None
    rng = make_rng(rng)
    stats = stats or count_cliques(g, s)
    t = stats.t
    p = sparsify_probability(g.n, t, s, variant)
    trace: list[dict[str, Any]] = [{"step": "sparsify", "variant": variant, "p": p, "t": t, "seed": seed}]
    if not 0 < p < 1:
        trace.append({"step": "fallthrough", "reason": f"p={p} outside (0, 1)"})
        inner = _small_t_algorithm(g, s, variant, chain, rng)
        return _certify(g, inner.vertices.mask, "sparsify_recurse", trace + list(inner.trace))
    attempts = []
    for attempt in range(1, max_retries + 1):
        result = sparsification_attempt(g, s, t, p, rng)
        attempts.append({k: v for k, v in result.items() if k != "subset"})
        if not result["accepted"]:
            continue
        subset = result["subset"]
        h, old = g.induced(subset)
        # recheck both conditions on the materialised subgraph
        T = count_cliques(h, s).t if h.n >= s else 0
        assert h.n >= g.n * p / 2 and T <= 2 * t * p**s
        trace.append({"step": "accepted", "retries": attempt, "size": h.n, "T": T,
                      "size_floor": g.n * p / 2, "T_ceiling": 2 * t * p**s})
        if h.n == 0:
            inner_mask = 0
            inner_trace: tuple = ()
        else:
            inner = _small_t_algorithm(h, s, variant, chain, rng)
            inner_mask, inner_trace = inner.vertices.mask, inner.trace
        return _certify(g, _lift(inner_mask, old), "sparsify_recurse", trace + list(inner_trace))
    raise SparsificationError(
        f"no acceptable sample in {max_retries} attempts (p={p:.4g}, t={t})", attempts
    )


def triangle_case(n: int, d_avg: float, epsilon: float = EPSILON, dense_factor: float = DENSE_FACTOR) -> str:
    """Which step of the few-triangles argument applies at average degree ``d_avg``."""
    if n < 2 or d_avg <= n ** (0.25 + epsilon):
        return "turan"
    if d_avg > dense_factor * math.sqrt(n * math.log(n)):
        return "neighborhood_clean"
    return "aks"


@dataclass
class CertificateReport:
    best: IndependentSetCertificate
    case: str = ""
    candidates: dict[str, IndependentSetCertificate] = field(default_factory=dict)
    failures: dict[str, str] = field(default_factory=dict)


def best_certificate(
    g: Graph,
    s: int = 3,
    chain: ConstantChain | None = None,
    rng=None,
    max_retries: int = DEFAULT_RETRIES,
    stats: CliqueStats | None = None,
    repeats: int = 8,
) -> CertificateReport:
    """Run every algorithm that applies to the graph's regime; keep the largest.

    Ties go to the earlier entry of :data:`ALGORITHMS`.
    """
    chain = chain or solve_constant_chain(max(s, 3))
    rng = make_rng(rng)
    cands: dict[str, IndependentSetCertificate] = {}
    failures: dict[str, str] = {}
    cands["turan_greedy"] = turan_greedy(g)
    if g.n >= s:
        stats = stats or count_cliques(g, s)
        cands["pivot_recursion"] = pivot_recursion(g, s, chain, stats)
        if s == 3:
            cands["neighborhood_clean"] = neighborhood_clean_set(g, stats)
            cands["aks_greedy"] = aks_greedy(g, rng, repeats=repeats, stats=stats)
        large = stats.t > (theorem2_threshold(g.n) if s == 3 else theorem1_threshold(g.n, s))
        if large and g.n > 1:
            variant = "triangle" if s == 3 else "general"
            try:
                cands["sparsify_recurse"] = sparsify_and_recurse(
                    g, s, chain, rng, max_retries, variant, stats
                )
            except SparsificationError as exc:
                failures["sparsify_recurse"] = str(exc)
                logger.warning("sparsification failed: %s", exc)
    best = max(cands.values(), key=lambda c: (c.size, -ALGORITHMS.index(c.algorithm)))
    case = triangle_case(g.n, g.average_degree()) if s == 3 else ""
    return CertificateReport(best, case, cands, failures)
