"""Exact s-clique counts, globally and per vertex."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .graph import Graph, VertexSet, iter_bits, rows_to_matrix


@dataclass(frozen=True)
class CliqueStats:
    """Clique statistics of a graph (or of an induced subgraph).

    ``vertices`` lists the vertex ids the per-vertex arrays refer to; for a
    whole graph this is ``0..n-1``.
    """

    s: int
    t: int
    per_vertex_t: tuple[int, ...]
    per_vertex_d: tuple[int, ...]
    n: int
    m: int
    vertices: tuple[int, ...]

    @property
    def d_avg(self) -> float:
        return 2 * self.m / self.n if self.n else 0.0

    def check(self) -> None:
        if sum(self.per_vertex_t) != self.s * self.t:
            raise AssertionError(
                f"handshake identity violated: sum t(v)={sum(self.per_vertex_t)} != {self.s}*{self.t}"
            )
        if self.t > comb(self.n, self.s):
            raise AssertionError("clique count exceeds binomial(n, s)")


def degeneracy_order(rows, mask: int) -> list[int]:
    """Vertices of ``mask`` in smallest-last (degeneracy) order, ties by index."""
    verts = list(iter_bits(mask))
    if not verts:
        return []
    idx = np.array(verts, dtype=np.intp)
    adj = rows_to_matrix([rows[v] & mask for v in verts], max(verts) + 1)[:, idx].astype(np.int32)
    deg = adj.sum(axis=1)
    done = np.iinfo(np.int32).max
    order = []
    for _ in range(len(verts)):
        i = int(np.argmin(deg))
        order.append(verts[i])
        deg -= adj[i]
        deg[i] = done
    return order


def _count(rows, mask: int, s: int) -> tuple[int, dict[int, int]]:
    per = dict.fromkeys(iter_bits(mask), 0)
    if s == 1:
        return len(per), dict.fromkeys(per, 1)
    if s == 2:
        total = 0
        for v in per:
            per[v] = (rows[v] & mask).bit_count()
            total += per[v]
        return total // 2, per

    # fwd[v]: neighbours later in degeneracy order; bwd[v]: earlier ones
    order = degeneracy_order(rows, mask)
    fwd, bwd = {}, {}
    later = 0
    for v in reversed(order):
        fwd[v] = rows[v] & later
        bwd[v] = rows[v] & mask & ~later & ~(1 << v)
        later |= 1 << v

    total = 0

    def extend(prefix: list[int], cand: int) -> None:
        # prefix is a clique; cand holds its common forward neighbours
        nonlocal total
        if len(prefix) == s - 2:
            # every clique is prefix + (w, x) with x in cand & fwd[w]
            found = 0
            rest = cand
            while rest:
                low = rest & -rest
                rest ^= low
                w = low.bit_length() - 1
                ahead = (cand & fwd[w]).bit_count()
                found += ahead
                per[w] += ahead + (cand & bwd[w]).bit_count()
            if found:
                total += found
                for u in prefix:
                    per[u] += found
            return
        for w in iter_bits(cand):
            nxt = cand & fwd[w]
            if nxt:
                prefix.append(w)
                extend(prefix, nxt)
                prefix.pop()

    for v in order:
        if fwd[v]:
            extend([v], fwd[v])
    return total, per


def count_cliques(g: Graph, s: int) -> CliqueStats:
    """Count the s-cliques of ``g`` and how many contain each vertex."""
    if s < 2 or s > g.n:
        raise ValueError(f"clique order s must satisfy 2 <= s <= n={g.n}, got {s}")
    total, per = _count(g.rows, g.full_mask, s)
    stats = CliqueStats(
        s=s,
        t=total,
        per_vertex_t=tuple(per[v] for v in range(g.n)),
        per_vertex_d=tuple(g.degrees()),
        n=g.n,
        m=g.m,
        vertices=tuple(range(g.n)),
    )
    stats.check()
    return stats


def count_cliques_in_subset(g: Graph, subset: VertexSet | int, s: int) -> CliqueStats:
    """Clique statistics of the induced subgraph ``g[subset]`` without copying it."""
    mask = subset.mask if isinstance(subset, VertexSet) else subset
    if s < 2:
        raise ValueError(f"clique order s must be at least 2, got {s}")
    vertices = tuple(iter_bits(mask))
    degs = tuple((g.rows[v] & mask).bit_count() for v in vertices)
    if len(vertices) < s:
        total, per = 0, dict.fromkeys(vertices, 0)
    else:
        total, per = _count(g.rows, mask, s)
    stats = CliqueStats(
        s=s,
        t=total,
        per_vertex_t=tuple(per[v] for v in vertices),
        per_vertex_d=degs,
        n=len(vertices),
        m=sum(degs) // 2,
        vertices=vertices,
    )
    stats.check()
    return stats
