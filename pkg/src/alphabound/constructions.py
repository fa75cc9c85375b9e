"""Graphs with a prescribed triangle count and small independence number.

Two families:

* ``clique_plus_trianglefree``: K_a next to a triangle-free graph, for few
  triangles; spare vertices attached to the clique top the count up exactly.
* ``lex_blowup``: a triangle-free graph with every vertex replaced by a clique
  of size lambda and every edge by a complete bipartite join, for many
  triangles.
"""

from __future__ import annotations

import logging
import math
from itertools import chain
from dataclasses import asdict, dataclass, fields

import numpy as np

from .bounds import solve_lambda, theorem2_threshold
from .cliques import count_cliques
from .graph import Graph, VertexSet, iter_bits, make_rng, triangle_free_process

logger = logging.getLogger(__name__)

KINDS = ("clique_plus_trianglefree", "lex_blowup")


@dataclass
class ConstructionSpec:
    kind: str
    n: int
    t: int
    seed: int | None = None
    exact_t: bool = True
    a: int = 0
    lam: int = 0
    N: int = 0
    spares: int = 0
    padding: int = 0
    padding_clique: int = 0
    base_edges: int = 0
    achieved_t: int = 0
    alpha_base: int | None = None

    def to_text(self) -> str:
        lines = []
        for f in fields(self):
            value = getattr(self, f.name)
            key = "lambda" if f.name == "lam" else f.name
            if value is None:
                value = ""
            elif isinstance(value, bool):
                value = str(value).lower()
            lines.append(f"{key}={value}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ConstructionSpec":
        raw = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"bad spec line {line!r}")
            raw["lam" if key.strip() == "lambda" else key.strip()] = value.strip()
        kwargs = {}
        for f in fields(cls):
            if f.name not in raw:
                continue
            value = raw[f.name]
            if f.name == "kind":
                kwargs[f.name] = value
            elif f.name == "exact_t":
                kwargs[f.name] = value == "true"
            else:
                kwargs[f.name] = int(value) if value != "" else None
        return cls(**kwargs)

    def as_dict(self) -> dict:
        return asdict(self)


def _seed_of(rng) -> int | None:
    return int(rng) if isinstance(rng, (int, np.integer)) else None


def clique_size_for(t: int) -> int:
    """Largest a with binomial(a, 3) <= t (0 when t = 0)."""
    if t <= 0:
        return 0
    a = max(3, int(round((6 * t) ** (1 / 3))))
    while math.comb(a, 3) > t:
        a -= 1
    while math.comb(a + 1, 3) <= t:
        a += 1
    return a


def top_up_terms(residue: int, cap: int) -> list[int]:
    """Greedy split of ``residue`` into binomial(k, 2) terms, largest k first, k <= cap."""
    terms = []
    while residue > 0:
        if cap < 2:
            raise ValueError(f"cannot add {residue} triangles with a clique of size {cap}")
        k = min(cap, int((1 + math.isqrt(1 + 8 * residue)) // 2))
        while math.comb(k, 2) > residue:
            k -= 1
        terms.append(k)
        residue -= math.comb(k, 2)
    return terms


def top_up_triangles(
    g: Graph, clique_vertices: VertexSet, residue: int, independent: VertexSet | None = None
) -> Graph:
    """Join isolated vertices to parts of a clique to add exactly ``residue`` triangles.

    A new vertex adjacent to k clique vertices lies in binomial(k, 2) triangles
    and no others.  Each new vertex is also joined to ``independent`` when
    given: an independent set with no edges to the clique adds no triangles,
    and it stops the new vertices from inflating alpha.
    """
    if residue < 0:
        raise ValueError("residue must be non-negative")
    if residue == 0:
        return g
    clique = clique_vertices.to_list()
    cmask = clique_vertices.mask
    for v in clique:
        if (g.rows[v] | (1 << v)) & cmask != cmask:
            raise ValueError("clique_vertices do not form a clique")
    imask = independent.mask if independent is not None else 0
    if imask & cmask or not g.is_independent(imask) or any(g.rows[v] & cmask for v in iter_bits(imask)):
        raise ValueError("independent must be an independent set with no edges to the clique")
    terms = top_up_terms(residue, len(clique))
    spare = [v for v in range(g.n) if g.rows[v] == 0 and not ((cmask | imask) >> v) & 1]
    if len(spare) < len(terms):
        raise ValueError(
            f"top-up needs {len(terms)} isolated vertices outside the clique, found {len(spare)}"
        )
    before = count_cliques(g, 3).t if g.n >= 3 else 0
    rows = list(g.rows)
    for x, k in zip(spare, terms):
        for c in chain(clique[:k], iter_bits(imask)):
            rows[x] |= 1 << c
            rows[c] |= 1 << x
    out = Graph(g.n, tuple(rows))
    after = count_cliques(out, 3).t
    if after - before != residue:
        raise AssertionError(f"top-up added {after - before} triangles, expected {residue}")
    return out


def _greedy_independent(rows, alive: int) -> int:
    """Maximal independent set inside ``alive``, taking minimum degree first."""
    chosen = 0
    while alive:
        v = min(iter_bits(alive), key=lambda u: ((rows[u] & alive).bit_count(), u))
        chosen |= 1 << v
        alive &= ~(rows[v] | (1 << v))
    return chosen


def build_clique_plus_trianglefree(
    n: int, t: int, rng=None, exact_t: bool = True
) -> tuple[Graph, ConstructionSpec]:
    """K_a on vertices 0..a-1, a triangle-free process sample after it, and (with
    ``exact_t``) spare vertices at the end that top the triangle count up to t."""
    if n < 1:
        raise ValueError("n must be positive")
    if t < 0 or t > math.comb(n, 3):
        raise ValueError(f"t={t} outside [0, binomial({n}, 3)]")
    if n > 1 and t > theorem2_threshold(n):
        logger.warning("t=%d exceeds n^(3/2) sqrt(log n); this family is not extremal there", t)
    seed = _seed_of(rng)
    rng = make_rng(rng)
    a = clique_size_for(t)
    residue = t - math.comb(a, 3)
    terms = top_up_terms(residue, a) if exact_t else []
    base_n = n - a - len(terms)
    if base_n < 0:
        raise ValueError(f"n={n} too small for a clique of {a} plus {len(terms)} top-up vertices")
    rows = [0] * n
    full = (1 << a) - 1
    for v in range(a):
        rows[v] = full ^ (1 << v)
    base_edges = 0
    if base_n:
        base = triangle_free_process(base_n, rng)
        base_edges = base.m
        for i, row in enumerate(base.rows):
            rows[a + i] = row << a
    g = Graph(n, tuple(rows))
    if terms:
        anchor = _greedy_independent(g.rows, ((1 << base_n) - 1) << a)
        g = top_up_triangles(g, VertexSet(full, n), residue, VertexSet(anchor, n))
    achieved = count_cliques(g, 3).t if n >= 3 else 0
    expected = t if exact_t else math.comb(a, 3)
    if achieved != expected:
        raise AssertionError(f"construction has {achieved} triangles, expected {expected}")
    spec = ConstructionSpec(
        kind="clique_plus_trianglefree", n=n, t=t, seed=seed, exact_t=exact_t, a=a,
        spares=len(terms), N=base_n, base_edges=base_edges, achieved_t=achieved,
    )
    return g, spec


def lex_product(base: Graph, lam) -> Graph:
    """Lexicographic product of ``base`` with cliques.

    ``lam`` is one block size for every vertex or a per-vertex sequence of
    sizes; blocks are laid out consecutively in base-vertex order.
    """
    sizes = [lam] * base.n if isinstance(lam, int) else list(lam)
    if len(sizes) != base.n or any(k < 1 for k in sizes):
        raise ValueError("need one block size >= 1 per base vertex")
    starts = [0]
    for k in sizes:
        starts.append(starts[-1] + k)
    blocks = [((1 << k) - 1) << st for k, st in zip(sizes, starts)]
    rows = []
    for v in range(base.n):
        joined = 0
        for w in iter_bits(base.rows[v]):
            joined |= blocks[w]
        for x in range(starts[v], starts[v + 1]):
            rows.append(joined | (blocks[v] & ~(1 << x)))
    return Graph(starts[-1], tuple(rows))


def lex_triangle_count(N: int, base_edges: int, lam: int) -> int:
    """Triangles of the blow-up of a triangle-free graph: inside blocks plus two-in-one-block."""
    return N * math.comb(lam, 3) + 2 * base_edges * lam * math.comb(lam, 2)


def blowup_triangle_count(base: Graph, sizes) -> int:
    """Triangle count of :func:`lex_product` for a triangle-free base with uneven blocks."""
    total = sum(math.comb(k, 3) for k in sizes)
    for v, w in base.edges():
        total += math.comb(sizes[v], 2) * sizes[w] + math.comb(sizes[w], 2) * sizes[v]
    return total


LEFTOVER_MODES = ("isolated", "spread")


def build_lex_blowup(
    n: int,
    t: int,
    rng=None,
    exact_t: bool = False,
    check_regime: bool = True,
    leftover: str = "isolated",
) -> tuple[Graph, ConstructionSpec]:
    """Blow-up of a triangle-free process sample on floor(n/lambda) vertices.

    The n - N lambda leftover vertices are isolated, or with ``exact_t`` hold
    one extra clique sized so the count gets as close to t as it can from
    below.  ``leftover="spread"`` instead shares them out over the blocks
    (sizes differ by at most one), which keeps alpha equal to alpha of the base.
    """
    if leftover not in LEFTOVER_MODES:
        raise ValueError(f"leftover must be one of {LEFTOVER_MODES}")
    if t >= math.comb(n, 3):
        raise ValueError(f"t={t} must be below binomial({n}, 3)")
    if check_regime and t < theorem2_threshold(n):
        raise ValueError(
            f"t={t} below n^(3/2) sqrt(log n) = {theorem2_threshold(n):.6g}; use the clique construction"
        )
    seed = _seed_of(rng)
    rng = make_rng(rng)
    lam = max(1, round(solve_lambda(n, t)))
    N = n // lam
    base = triangle_free_process(N, rng)
    rest = n - N * lam
    pad = 0
    if leftover == "spread":
        extra, odd = divmod(rest, N)
        sizes = [lam + extra + (i < odd) for i in range(N)]
        g = lex_product(base, sizes)
        expected = blowup_triangle_count(base, sizes)
        rest = 0
    else:
        product = lex_product(base, lam)
        closed = lex_triangle_count(N, base.m, lam)
        if exact_t and t > closed:
            pad = min(rest, clique_size_for(t - closed))
        rows = list(product.rows) + [0] * rest
        start = N * lam
        full = ((1 << pad) - 1) << start
        for x in range(start, start + pad):
            rows[x] = full & ~(1 << x)
        g = Graph(n, tuple(rows))
        expected = closed + math.comb(pad, 3)
    achieved = count_cliques(g, 3).t if n >= 3 else 0
    if achieved != expected:
        raise AssertionError(f"blow-up has {achieved} triangles, closed form gives {expected}")
    spec = ConstructionSpec(
        kind="lex_blowup", n=n, t=t, seed=seed, exact_t=exact_t, lam=lam, N=N,
        padding=rest, padding_clique=pad, base_edges=base.m, achieved_t=achieved,
    )
    return g, spec


def build_construction(
    kind: str, n: int, t: int, rng=None, exact_t: bool | None = None, leftover: str = "isolated"
):
    if kind == "clique_plus_trianglefree":
        return build_clique_plus_trianglefree(n, t, rng, True if exact_t is None else exact_t)
    if kind == "lex_blowup":
        return build_lex_blowup(n, t, rng, bool(exact_t), leftover=leftover)
    raise ValueError(f"unknown construction kind {kind!r}; expected one of {KINDS}")


def regime_kind(n: int, t: int) -> str:
    """Construction family that is extremal for (n, t)."""
    return "clique_plus_trianglefree" if t < theorem2_threshold(n) else "lex_blowup"
