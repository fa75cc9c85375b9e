"""Exact maximum independent set by branch and bound over bitsets."""

from __future__ import annotations

from .graph import iter_bits


def _low(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _reduce(rows, P: int) -> tuple[int, int]:
    """Take every vertex of degree <= 1 in G[P]; both choices are always safe."""
    forced = 0
    changed = True
    while changed and P:
        changed = False
        for v in iter_bits(P):
            if not (P >> v) & 1:
                continue
            if (rows[v] & P).bit_count() <= 1:
                forced |= 1 << v
                P &= ~(rows[v] | (1 << v))
                changed = True
    return forced, P


def _components(rows, P: int) -> list[int]:
    comps = []
    rest = P
    while rest:
        seed = rest & -rest
        comp = frontier = seed
        while frontier:
            grow = 0
            for v in iter_bits(frontier):
                grow |= rows[v]
            frontier = grow & rest & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    return comps


def clique_cover_size(rows, P: int) -> int:
    """Number of cliques in a greedy clique cover of G[P]; an upper bound on alpha."""
    count = 0
    rest = P
    while rest:
        v = _low(rest)
        rest &= ~(1 << v)
        cand = rows[v] & rest
        while cand:
            w = _low(cand)
            rest &= ~(1 << w)
            cand &= rows[w]
        count += 1
    return count


def _greedy(rows, P: int) -> int:
    chosen = 0
    while P:
        v = min(iter_bits(P), key=lambda u: (rows[u] & P).bit_count())
        chosen |= 1 << v
        P &= ~(rows[v] | (1 << v))
    return chosen


def _solve(rows, P: int) -> int:
    forced, P = _reduce(rows, P)
    if not P:
        return forced
    comps = _components(rows, P)
    if len(comps) > 1:
        for comp in comps:
            forced |= _solve(rows, comp)
        return forced
    return forced | _branch(rows, P)


def _branch(rows, P: int) -> int:
    best = _greedy(rows, P)
    best_size = best.bit_count()
    stack = [(P, 0)]
    while stack:
        P, chosen = stack.pop()
        forced, P = _reduce(rows, P)
        chosen |= forced
        size = chosen.bit_count()
        if not P:
            if size > best_size:
                best, best_size = chosen, size
            continue
        if size + clique_cover_size(rows, P) <= best_size:
            continue
        comps = _components(rows, P)
        if len(comps) > 1:
            for comp in comps:
                chosen |= _solve(rows, comp)
            if chosen.bit_count() > best_size:
                best, best_size = chosen, chosen.bit_count()
            continue
        # branch on a maximum-degree vertex, lowest index on ties
        v = max(iter_bits(P), key=lambda u: ((rows[u] & P).bit_count(), -u))
        stack.append((P & ~(1 << v), chosen))
        stack.append((P & ~(rows[v] | (1 << v)), chosen | (1 << v)))
    return best


def maximum_independent_set(rows, mask: int) -> int:
    """Bitmask of a maximum independent set of the subgraph induced by ``mask``."""
    return _solve(rows, mask)
