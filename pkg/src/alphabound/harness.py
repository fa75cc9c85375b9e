"""Experiment harness: per-graph reports, parameter sweeps, constant fitting.

The constants in the triangle bound and in the average-degree/triangle bound
have no closed form.  :func:`calibrate` estimates them as the lower envelope
of exact independence numbers over a seeded corpus of small graphs, scaled by
a recorded slack factor.  The packaged values come from
``python -m alphabound calibrate`` and live in ``data/fitted_constants.json``.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import time
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Iterable, Iterator

import numpy as np

from . import __version__
from .bounds import ConstantChain, aks_bound, bound_report, solve_constant_chain, theorem2_bound
from .cliques import count_cliques
from .constructions import build_construction, regime_kind
from .graph import (
    Graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    gnp_graph,
    make_rng,
    path_graph,
    petersen_graph,
    triangle_free_process,
    wheel_graph,
)
from .indset import DEFAULT_ORACLE_CAP, DEFAULT_RETRIES, best_certificate, exact_alpha

logger = logging.getLogger(__name__)

CSV_COLUMNS = (
    "kind", "n", "m", "s", "t", "d_avg", "seed",
    "bound_t1", "bound_t2", "bound_aks",
    "alg_best", "alg_best_size", "exact_alpha", "runtime_ms",
)

CALIBRATION_SLACK = 0.5
CALIBRATION_SEED = 20_240_601


@dataclass(frozen=True)
class FittedConstants:
    c_t2: float
    c_aks: float
    slack: float
    corpus_size: int
    corpus_seed: int
    envelope_t2: float
    envelope_aks: float

    def to_json(self) -> str:
        return json.dumps(self.__dict__, indent=2, sort_keys=True) + "\n"


def load_fitted_constants(path=None) -> FittedConstants:
    if path is None:
        text = resources.files("alphabound").joinpath("data/fitted_constants.json").read_text()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return FittedConstants(**json.loads(text))


@dataclass
class RunReport:
    source: str
    n: int
    m: int
    s: int
    t: int
    d_avg: float
    seed: int | None
    bounds: dict[str, float | None]
    regime: str
    certificate_sizes: dict[str, int]
    runtimes_ms: dict[str, float]
    best_algorithm: str
    best_size: int
    exact_alpha: int | None
    chain_S_max: int
    version: str = __version__
    failures: dict[str, str] = field(default_factory=dict)

    def csv_row(self, kind: str | None = None, timing: bool = False) -> dict[str, Any]:
        return {
            "kind": kind or self.source,
            "n": self.n,
            "m": self.m,
            "s": self.s,
            "t": self.t,
            "d_avg": _fmt(self.d_avg),
            "seed": "" if self.seed is None else self.seed,
            "bound_t1": _fmt(self.bounds.get("theorem1")),
            "bound_t2": _fmt(self.bounds.get("theorem2")),
            "bound_aks": _fmt(self.bounds.get("aks")),
            "alg_best": self.best_algorithm,
            "alg_best_size": self.best_size,
            "exact_alpha": "" if self.exact_alpha is None else self.exact_alpha,
            "runtime_ms": _fmt(sum(self.runtimes_ms.values())) if timing else "",
        }

    def text(self) -> str:
        pairs = [
            ("source", self.source),
            ("n, m", f"{self.n}, {self.m}"),
            ("s, t", f"{self.s}, {self.t}"),
            ("d_avg", f"{self.d_avg:.6g}"),
            ("regime", self.regime),
        ]
        for name, value in self.bounds.items():
            pairs.append((f"bound {name}", "n/a" if value is None else f"{value:.6g}"))
        for name, size in self.certificate_sizes.items():
            pairs.append((f"alg {name}", str(size)))
        for name, msg in self.failures.items():
            pairs.append((f"alg {name}", f"failed: {msg}"))
        pairs.append(("best", f"{self.best_algorithm} ({self.best_size})"))
        pairs.append(("exact alpha", "skipped" if self.exact_alpha is None else str(self.exact_alpha)))
        width = max(len(label) for label, _ in pairs) + 2
        return "\n".join(f"{label:<{width}}{value}" for label, value in pairs)


def _fmt(x) -> str:
    if x is None:
        return ""
    return f"{x:.6g}"


def analyze_graph(
    g: Graph,
    s: int = 3,
    seed: int | None = 0,
    oracle_cap: int = DEFAULT_ORACLE_CAP,
    retries: int = DEFAULT_RETRIES,
    chain: ConstantChain | None = None,
    constants: FittedConstants | None = None,
    source: str = "graph",
) -> RunReport:
    """Count cliques, evaluate every bound, and run every algorithm on ``g``."""
    if s < 2 or s > g.n:
        raise ValueError(f"clique order s must satisfy 2 <= s <= n={g.n}, got {s}")
    chain = chain or solve_constant_chain(max(s, 3))
    constants = constants or load_fitted_constants()
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    stats = count_cliques(g, s)
    timings["count"] = 1000 * (time.perf_counter() - t0)
    rep = bound_report(g.n, s, stats.t, stats.d_avg, chain, constants.c_t2, constants.c_aks)
    t0 = time.perf_counter()
    certs = best_certificate(g, s, chain, seed, retries, stats=stats)
    timings["algorithms"] = 1000 * (time.perf_counter() - t0)
    alpha = None
    if g.n <= oracle_cap:
        t0 = time.perf_counter()
        alpha, _ = exact_alpha(g, oracle_cap)
        timings["exact"] = 1000 * (time.perf_counter() - t0)
    return RunReport(
        source=source,
        n=g.n,
        m=g.m,
        s=s,
        t=stats.t,
        d_avg=stats.d_avg,
        seed=seed,
        bounds={"theorem1": rep.theorem1_bound, "theorem2": rep.theorem2_bound, "aks": rep.aks_bound},
        regime=rep.regime,
        certificate_sizes={k: c.size for k, c in certs.candidates.items()},
        runtimes_ms=timings,
        best_algorithm=certs.best.algorithm,
        best_size=certs.best.size,
        exact_alpha=alpha,
        chain_S_max=chain.S_max,
        failures=certs.failures,
    )


def gnp_for_clique_count(n: int, s: int, t: float) -> float:
    """Edge probability whose expected K_s count is t."""
    total = math.comb(n, s)
    return min(1.0, (t / total) ** (1 / math.comb(s, 2))) if total else 0.0


def build_sweep_graph(n: int, s: int, t: int, seed: int) -> tuple[str, Graph]:
    """Extremal construction for triangles; for s >= 4, G(n, p) with p tuned to t."""
    if s == 3:
        kind = regime_kind(n, t)
        g, _ = build_construction(kind, n, t, seed, exact_t=True, leftover="spread")
        return kind, g
    return "gnp", gnp_graph(n, gnp_for_clique_count(n, s, t), seed)


def sweep(
    n: int,
    s: int,
    t_grid: Iterable[int],
    seeds: Iterable[int],
    oracle_cap: int = DEFAULT_ORACLE_CAP,
    retries: int = DEFAULT_RETRIES,
    constants: FittedConstants | None = None,
    timing: bool = False,
) -> Iterator[dict[str, Any]]:
    """One CSV row per (t, seed), in grid order."""
    chain = solve_constant_chain(max(s, 3))
    constants = constants or load_fitted_constants()
    seeds = list(seeds)
    for t in t_grid:
        for seed in seeds:
            if not 0 <= t <= math.comb(n, s):
                logger.warning("skipping t=%d: outside [0, binomial(%d, %d)]", t, n, s)
                yield _skip_row(n, s, t, seed)
                continue
            start = time.perf_counter()
            try:
                kind, g = build_sweep_graph(n, s, t, seed)
                report = analyze_graph(g, s, seed, oracle_cap, retries, chain, constants, kind)
            except ValueError as exc:
                logger.warning("skipping t=%d seed=%d: %s", t, seed, exc)
                yield _skip_row(n, s, t, seed)
                continue
            row = report.csv_row(kind)
            if timing:
                row["runtime_ms"] = _fmt(1000 * (time.perf_counter() - start))
            yield row


def _skip_row(n: int, s: int, t: int, seed: int) -> dict[str, Any]:
    row = dict.fromkeys(CSV_COLUMNS, "")
    row.update(kind="infeasible", n=n, s=s, t=t, seed=seed)
    return row


def write_csv(rows: Iterable[dict[str, Any]], fh, header: bool = True) -> None:
    writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, lineterminator="\n")
    if header:
        writer.writeheader()
    for row in rows:
        writer.writerow(row)
        fh.flush()


def rows_to_csv(rows: Iterable[dict[str, Any]]) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


def log_grid(lo: float, hi: float, count: int) -> list[int]:
    """Distinct integers spaced logarithmically over [lo, hi]."""
    pts = np.logspace(math.log10(max(lo, 1)), math.log10(hi), count)
    return sorted({int(round(x)) for x in pts})


def loglog_slope(x, y) -> float:
    x, y = np.asarray(x, float), np.asarray(y, float)
    return float(np.polyfit(np.log(x), np.log(y), 1)[0])


def regime_slopes(rows: list[dict[str, Any]], threshold: float) -> dict[str, float]:
    """Log-log slope of best certificate size against t on each side of ``threshold``.

    Rows with t = 0 have no logarithm and are left out.
    """
    pts = [(float(r["t"]), float(r["alg_best_size"])) for r in rows
           if r["kind"] != "infeasible" and int(r["t"]) > 0]
    below = [p for p in pts if p[0] < threshold]
    above = [p for p in pts if p[0] >= threshold]
    out = {}
    if len({p[0] for p in below}) >= 2:
        out["below"] = loglog_slope(*zip(*below))
    if len({p[0] for p in above}) >= 2:
        out["above"] = loglog_slope(*zip(*above))
    return out


# --- desk-scale corpus and constant fitting ---------------------------------


def named_graphs() -> list[tuple[str, Graph]]:
    out = [
        ("petersen", petersen_graph()),
        ("C5", cycle_graph(5)),
        ("C7", cycle_graph(7)),
        ("P6", path_graph(6)),
        ("W5", wheel_graph(5)),
        ("K4", complete_graph(4)),
        ("K10", complete_graph(10)),
        ("K5+C5", disjoint_union(complete_graph(5), cycle_graph(5))),
    ]
    return out


def desk_corpus(size: int, seed: int, n_max: int = 60) -> list[tuple[str, Graph]]:
    """Seeded mix of random graphs, constructions and named graphs with n <= n_max."""
    rng = make_rng(seed)
    corpus = [(name, g) for name, g in named_graphs() if g.n <= n_max]
    families = ("gnp", "tf", "clique_plus_trianglefree", "lex_blowup", "union")
    i = 0
    while len(corpus) < size:
        fam = families[i % len(families)]
        i += 1
        n = int(rng.integers(8, n_max + 1))
        child = int(rng.integers(0, 2**63))
        if fam == "gnp":
            p = float(rng.choice([0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.9]))
            corpus.append((f"gnp({n},{p})", gnp_graph(n, p, child)))
        elif fam == "tf":
            corpus.append((f"tf({n})", triangle_free_process(n, child)))
        elif fam == "clique_plus_trianglefree":
            t = int(rng.integers(0, int(n**1.5) + 1))
            try:
                g, _ = build_construction(fam, n, t, child)
            except ValueError:
                continue
            corpus.append((f"clique_tf({n},{t})", g))
        elif fam == "lex_blowup":
            hi = math.comb(n, 3) // 4
            lo = int(n**1.5 * math.sqrt(math.log(n))) + 1
            if lo >= hi:
                continue
            t = int(rng.integers(lo, hi))
            try:
                g, _ = build_construction(fam, n, t, child, leftover=str(rng.choice(["isolated", "spread"])))
            except ValueError:
                continue
            corpus.append((f"lex({n},{t})", g))
        else:
            a = int(rng.integers(1, 8))
            h = triangle_free_process(max(1, n - a), child)
            corpus.append((f"K{a}+tf({h.n})", disjoint_union(complete_graph(a), h)))
    return corpus[:size]


def bound_shapes(g: Graph, t: int) -> tuple[float | None, float | None]:
    """Triangle bound and AKS bound evaluated with constant 1 (None where undefined or <= 0)."""
    t2 = theorem2_bound(g.n, t, 1.0) if g.n > 1 else 0.0
    d = g.average_degree()
    aks = aks_bound(g.n, d, t, 1.0) if d > 1 else 0.0
    return (t2 if t2 > 0 else None), (aks if aks > 0 else None)


def calibrate(size: int = 400, seed: int = CALIBRATION_SEED, slack: float = CALIBRATION_SLACK) -> FittedConstants:
    """Lower envelope of alpha / bound-shape over a seeded corpus, times ``slack``."""
    ratios_t2, ratios_aks = [], []
    for _, g in desk_corpus(size, seed):
        alpha, _ = exact_alpha(g)
        t = count_cliques(g, 3).t if g.n >= 3 else 0
        t2, aks = bound_shapes(g, t)
        if t2:
            ratios_t2.append(alpha / t2)
        if aks:
            ratios_aks.append(alpha / aks)
    env_t2, env_aks = min(ratios_t2), min(ratios_aks)
    return FittedConstants(
        c_t2=slack * env_t2,
        c_aks=slack * env_aks,
        slack=slack,
        corpus_size=size,
        corpus_seed=seed,
        envelope_t2=env_t2,
        envelope_aks=env_aks,
    )
