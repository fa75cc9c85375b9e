"""Immutable simple graphs with bitset adjacency rows, plus generators.

Adjacency rows are Python ints used as bitsets: bit ``u`` of ``rows[v]`` is set
iff ``uv`` is an edge.  All randomized generators draw from a numpy
``Generator`` backed by PCG64, so a seed reproduces the same graph on every
platform.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

RNG_ALGORITHM = "PCG64"


def make_rng(seed: int | np.random.Generator | None = None) -> np.random.Generator:
    """Return a PCG64-backed generator; a Generator passes through unchanged."""
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is not None and (int(seed) < 0 or int(seed) >= 2**64):
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return np.random.Generator(np.random.PCG64(seed))


def iter_bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def rows_to_matrix(rows: Sequence[int], n: int) -> np.ndarray:
    """Dense boolean adjacency matrix from bitset rows."""
    if n == 0:
        return np.zeros((0, 0), dtype=bool)
    width = (n + 7) // 8
    buf = b"".join(row.to_bytes(width, "little") for row in rows)
    bits = np.unpackbits(np.frombuffer(buf, dtype=np.uint8).reshape(len(rows), width), axis=1, bitorder="little")
    return bits[:, :n].astype(bool)


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class VertexSet:
    """A subset of the vertices of a graph on ``n`` vertices."""

    mask: int
    n: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError("vertex set has members outside 0..n-1")

    @classmethod
    def from_iterable(cls, vertices: Iterable[int], n: int) -> "VertexSet":
        return cls(mask_of(vertices), n)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __contains__(self, v: int) -> bool:
        return bool((self.mask >> v) & 1)

    def to_list(self) -> list[int]:
        return list(iter_bits(self.mask))


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    Build instances with :meth:`from_edges` or :meth:`from_rows`; both check
    symmetry and the absence of self-loops.
    """

    n: int
    rows: tuple[int, ...]
    m: int = field(init=False)

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} adjacency rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row < 0 or row & ~full:
                raise ValueError(f"row {v} references vertices outside 0..{self.n - 1}")
            if (row >> v) & 1:
                raise ValueError(f"self-loop at vertex {v}")
        adj = rows_to_matrix(self.rows, self.n)
        if not np.array_equal(adj, adj.T):
            u, v = np.argwhere(adj != adj.T)[0]
            raise ValueError(f"asymmetric adjacency between {u} and {v}")
        object.__setattr__(self, "m", sum(row.bit_count() for row in self.rows) // 2)

    @classmethod
    def from_rows(cls, rows: Sequence[int]) -> "Graph":
        return cls(len(rows), tuple(rows))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{n - 1}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.rows]

    def average_degree(self) -> float:
        return 2 * self.m / self.n if self.n else 0.0

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.rows[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, row in enumerate(self.rows):
            yield from ((u, v) for v in iter_bits(row >> (u + 1) << (u + 1)))

    def is_independent(self, vertices: Iterable[int] | int) -> bool:
        mask = vertices if isinstance(vertices, int) else mask_of(vertices)
        return all(not (self.rows[v] & mask) for v in iter_bits(mask))

    def induced(self, vertices: Iterable[int] | int) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to ``0..k-1`` and the map back to old ids."""
        mask = vertices if isinstance(vertices, int) else mask_of(vertices)
        old = list(iter_bits(mask))
        new_of = {v: i for i, v in enumerate(old)}
        rows = []
        for v in old:
            rows.append(mask_of(new_of[u] for u in iter_bits(self.rows[v] & mask)))
        return Graph(len(old), tuple(rows)), old

    def complement(self) -> "Graph":
        full = self.full_mask
        return Graph(self.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(self.rows)))

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def wheel_graph(rim: int) -> Graph:
    """Hub 0 joined to every vertex of a cycle on ``1..rim``."""
    edges = [(0, i) for i in range(1, rim + 1)]
    edges += [(i, i % rim + 1) for i in range(1, rim + 1)]
    return Graph.from_edges(rim + 1, edges)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def disjoint_union(*graphs: Graph) -> Graph:
    rows: list[int] = []
    offset = 0
    for g in graphs:
        rows.extend(row << offset for row in g.rows)
        offset += g.n
    return Graph(offset, tuple(rows))


def gnp_graph(n: int, p: float, rng) -> Graph:
    """Erdos-Renyi G(n, p): every pair is an edge independently with prob. ``p``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    rng = make_rng(rng)
    if n < 2:
        return Graph.empty(n)
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(iu.size) < p
    rows = [0] * n
    for u, v in zip(iu[keep].tolist(), ju[keep].tolist()):
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def triangle_free_process(n: int, rng) -> Graph:
    """Random greedy triangle-free graph on ``n`` vertices.

    Pairs are visited in a uniformly random order and added whenever they close
    no triangle.  A pair that is closed stays closed, so this is the same
    distribution as repeatedly adding a uniform open pair until saturation.
    """
    if n < 1:
        raise ValueError("triangle_free_process needs n >= 1")
    rng = make_rng(rng)
    rows = [0] * n
    if n >= 2:
        iu, ju = np.triu_indices(n, 1)
        order = rng.permutation(iu.size)
        for u, v in zip(iu[order].tolist(), ju[order].tolist()):
            if rows[u] & rows[v]:
                continue
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    g = Graph(n, tuple(rows))
    assert not any(g.rows[u] & g.rows[v] for u, v in g.edges()), "triangle in process output"
    return g
