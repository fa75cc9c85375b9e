"""Closed-form independence-number bounds and the constants that make them valid.

All logarithms are natural.  The constants for the triangle bound and for the
average-degree/triangle bound are not derivable in closed form; they are passed
in by the caller (see :mod:`alphabound.harness` for the fitted values).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

SAFETY = 0.99


class InfeasibleError(ValueError):
    pass


def chain_exponent(s: int) -> float:
    """Exponent of 2 lost by sparsification: 2(s+1)/(s(s-1))."""
    return 2 * (s + 1) / (s * (s - 1))


@dataclass(frozen=True)
class ChainLevel:
    s: int
    root: float  # largest c' satisfying both constraints, before the safety factor
    cs_prime: float
    cs: float

    def residuals(self, c_prev: float) -> tuple[float, float, float]:
        """Slack of the three constraints; all must be strictly positive."""
        s, x = self.s, self.cs_prime
        r1 = s ** (-2 / (s - 1)) - x
        r2 = c_prev * (1 / x - s ** (2 / (s - 1))) ** (1 / (s - 2)) - x
        r3 = x * 2 ** (-chain_exponent(s)) - self.cs
        return r1, r2, r3


@dataclass(frozen=True)
class ConstantChain:
    S_max: int
    c2: float
    levels: dict[int, ChainLevel] = field(default_factory=dict)
    deltas: dict[int, float] = field(default_factory=dict)

    def c(self, s: int) -> float:
        if s == 2:
            return self.c2
        if s not in self.levels:
            raise ValueError(f"constant chain covers s <= {self.S_max}, asked for s={s}")
        return self.levels[s].cs

    def c_prime(self, s: int) -> float:
        if s == 2:
            return self.c2
        if s not in self.levels:
            raise ValueError(f"constant chain covers s <= {self.S_max}, asked for s={s}")
        return self.levels[s].cs_prime

    def residuals(self, s: int) -> tuple[float, float, float]:
        return self.levels[s].residuals(self.c(s - 1))

    def verify(self) -> None:
        for s in self.levels:
            res = self.residuals(s)
            if not all(r > 0 for r in res):
                raise InfeasibleError(f"constraints fail at s={s}: residuals {res}")
            if not (self.levels[s].cs > 0 and self.levels[s].cs_prime > 0):
                raise InfeasibleError(f"non-positive constant at s={s}")


def _bisect(f, lo: float, hi: float, tol: float = 1e-15, max_iter: int = 400) -> float:
    """Root of ``f`` on ``[lo, hi]`` given f(lo) > 0 > f(hi)."""
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol:
            break
    return 0.5 * (lo + hi)


def solve_constant_chain(S_max: int, c2: float = 1 / 3) -> ConstantChain:
    """Constants c_s' and c_s for s = 3..S_max, built up from the base ``c2``.

    For each s the largest c_s' obeying both c_s' < s^(-2/(s-1)) and
    c_s' <= c_{s-1} (1/c_s' - s^(2/(s-1)))^(1/(s-2)) is found by bisection
    (the right side minus c_s' is strictly decreasing on the admissible
    interval), shrunk by 0.99, and c_s is then 0.99 c_s' 2^(-2(s+1)/(s(s-1))).
    """
    if S_max < 2:
        raise ValueError(f"S_max must be at least 2, got {S_max}")
    if not 0 < c2 <= 1 / 3:
        raise ValueError(f"base constant must lie in (0, 1/3], got {c2}")
    levels: dict[int, ChainLevel] = {}
    prev = c2
    for s in range(3, S_max + 1):
        cap = s ** (-2 / (s - 1))
        lift = s ** (2 / (s - 1))

        def gap(x, s=s, prev=prev, lift=lift):
            return prev * max(1 / x - lift, 0.0) ** (1 / (s - 2)) - x

        lo, hi = cap * 1e-12, cap
        if not gap(lo) > 0:
            raise InfeasibleError(f"no positive c_{s}' exists for base c_{s - 1}={prev}")
        root = _bisect(gap, lo, hi)
        cs_prime = SAFETY * root
        cs = SAFETY * cs_prime * 2 ** (-chain_exponent(s))
        levels[s] = ChainLevel(s=s, root=root, cs_prime=cs_prime, cs=cs)
        if not all(r > 0 for r in levels[s].residuals(prev)):
            raise InfeasibleError(f"constraints not strict at s={s}: {levels[s].residuals(prev)}")
        prev = cs
    deltas = {3: solve_delta(levels[3].cs)} if 3 in levels else {}
    chain = ConstantChain(S_max=S_max, c2=c2, levels=levels, deltas=deltas)
    chain.verify()
    return chain


def theorem1_threshold(n: float, s: int) -> float:
    return n ** (s / 2)


def theorem2_threshold(n: float) -> float:
    return n**1.5 * math.sqrt(math.log(n))


def theorem1_bound(n: int, s: int, t: int, chain: ConstantChain) -> float:
    """Two-regime lower bound for a graph with ``t`` copies of K_s."""
    if s < 2:
        raise ValueError(f"s must be at least 2, got {s}")
    if t < 0 or t > math.comb(n, s):
        raise ValueError(f"t={t} outside [0, binomial({n}, {s})]")
    c = chain.c(s)
    if t <= theorem1_threshold(n, s):
        return c * n ** (1 / (s - 1))
    return c * (n**s / t) ** (1 / math.comb(s, 2))


def theorem2_bound(n: int, t: int, c: float) -> float:
    """Triangle bound: c sqrt(n log n) for few triangles, else
    c (n/t^(1/3)) log(n/t^(1/3))^(2/3).  Returns 0 when n/t^(1/3) <= 1."""
    if n <= 1:
        raise ValueError(f"n must exceed 1, got {n}")
    if t < 0 or t > math.comb(n, 3):
        raise ValueError(f"t={t} outside [0, binomial({n}, 3)]")
    if c <= 0:
        raise ValueError("constant must be positive")
    if t <= theorem2_threshold(n):
        return c * math.sqrt(n * math.log(n))
    ratio = n / t ** (1 / 3)
    if ratio <= 1:
        return 0.0
    return c * ratio * math.log(ratio) ** (2 / 3)


def theorem2_degenerate(n: int, t: int) -> bool:
    return t > theorem2_threshold(n) and n / t ** (1 / 3) <= 1


def aks_bound(n: int, d: float, t: int, c: float) -> float:
    """(c n / d)(log d - log(t/n)/2); the t = 0 value is (c n / d) log d.

    May be negative when t > n d^2.
    """
    if d <= 1:
        raise ValueError(f"average degree must exceed 1, got {d}")
    if t < 0 or n < 1:
        raise ValueError("need n >= 1 and t >= 0")
    if t == 0:
        return c * n / d * math.log(d)
    return c * n / d * (math.log(d) - 0.5 * math.log(t / n))


def _delta_lhs(delta: float, c: float) -> float:
    y = delta ** (-1 / 3)
    return c * y * math.log(y) ** (2 / 3)


def solve_delta(c: float, tol: float = 1e-12) -> float:
    """delta in (0, 1) with (c / delta^(1/3)) log(1/delta^(1/3))^(2/3) = 1."""
    if not 0 < c < 1:
        raise ValueError(f"constant must lie in (0, 1), got {c}")

    def f(delta):
        return _delta_lhs(delta, c) - 1

    lo, hi = 1e-300, 1 - 1e-15
    if not (f(lo) > 0 > f(hi)):
        raise InfeasibleError(f"no sign change for delta with c={c}")
    # bisect in log space first so tiny roots are located, then refine linearly
    llo, lhi = math.log(lo), math.log(hi)
    for _ in range(200):
        mid = 0.5 * (llo + lhi)
        if f(math.exp(mid)) > 0:
            llo = mid
        else:
            lhi = mid
    return _bisect(f, math.exp(llo), math.exp(lhi), tol=min(tol, 1e-3 * math.exp(llo)))


def delta_residual(delta: float, c: float) -> float:
    return _delta_lhs(delta, c) - 1


def solve_lambda(n: float, t: float) -> float:
    """Blow-up size with t = n^(3/2) lambda^(3/2) sqrt(log(n / t^(1/3)))."""
    if t < theorem2_threshold(n):
        raise ValueError(f"t={t} is below the large-t threshold {theorem2_threshold(n):.6g}")
    ratio = n / t ** (1 / 3)
    if ratio <= 1:
        raise ValueError("n / t^(1/3) must exceed 1")
    return (t / (n**1.5 * math.sqrt(math.log(ratio)))) ** (2 / 3)


@dataclass(frozen=True)
class BoundReport:
    n: int
    s: int
    t: int
    d_avg: float
    regime: str
    theorem1_bound: float
    theorem2_bound: float | None
    aks_bound: float | None
    degenerate: bool
    chain: ConstantChain


def bound_report(
    n: int, s: int, t: int, d_avg: float, chain: ConstantChain, c_t2: float, c_aks: float
) -> BoundReport:
    """Evaluate every bound that applies to a graph with the given parameters.

    Negative AKS values are clamped at zero; the triangle and AKS entries are
    ``None`` outside their domains (s != 3, n <= 1, d <= 1).
    """
    if s == 3:
        regime = "small_t" if t <= theorem2_threshold(n) else "large_t"
    else:
        regime = "small_t" if t <= theorem1_threshold(n, s) else "large_t"
    t1 = theorem1_bound(n, s, t, chain)
    t2 = aks = None
    degenerate = False
    if s == 3 and n > 1:
        t2 = theorem2_bound(n, t, c_t2)
        degenerate = theorem2_degenerate(n, t)
    if s == 3 and d_avg > 1:
        aks = max(aks_bound(n, d_avg, t, c_aks), 0.0)
    return BoundReport(n, s, t, d_avg, regime, t1, t2, aks, degenerate, chain)
