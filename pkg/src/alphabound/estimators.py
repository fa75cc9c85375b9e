"""scikit-learn style wrappers.

``CliqueCounter`` turns a list of graphs into a feature matrix, so it can sit
in a ``Pipeline``.  ``IndependentSetFinder`` fits on one graph and labels its
vertices, in the manner of a clustering estimator.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .bounds import solve_constant_chain
from .cliques import count_cliques
from .graph import Graph, make_rng
from .indset import (
    ALGORITHMS,
    DEFAULT_ORACLE_CAP,
    DEFAULT_RETRIES,
    aks_greedy,
    best_certificate,
    exact_alpha,
    neighborhood_clean_set,
    pivot_recursion,
    sparsify_and_recurse,
    turan_greedy,
)


def check_graph(X) -> Graph:
    """Coerce ``X`` into a :class:`Graph`.

    Accepts a Graph, a networkx-like object (``nodes`` and ``edges``; nodes are
    relabelled in iteration order), or a square symmetric 0/1 adjacency matrix
    (dense or scipy sparse).
    """
    if isinstance(X, Graph):
        return X
    if hasattr(X, "nodes") and hasattr(X, "edges"):
        if X.is_directed() if hasattr(X, "is_directed") else False:
            raise ValueError("directed graphs are not supported")
        index = {v: i for i, v in enumerate(X.nodes)}
        edges = [(index[u], index[v]) for u, v in X.edges]
        if any(u == v for u, v in edges):
            raise ValueError("self-loops are not allowed")
        return Graph.from_edges(len(index), edges)
    if hasattr(X, "toarray"):
        X = X.toarray()
    A = np.asarray(X)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square adjacency matrix, got shape {A.shape}")
    if not np.isin(A, (0, 1)).all():
        raise ValueError("adjacency matrix entries must be 0 or 1")
    A = A.astype(bool)
    if (A != A.T).any():
        raise ValueError("adjacency matrix must be symmetric")
    if A.diagonal().any():
        raise ValueError("self-loops are not allowed")
    iu, ju = np.nonzero(np.triu(A, 1))
    return Graph.from_edges(A.shape[0], zip(iu.tolist(), ju.tolist()))


def check_graphs(X) -> list[Graph]:
    if isinstance(X, Graph) or hasattr(X, "edges") or (hasattr(X, "ndim") and X.ndim == 2):
        raise ValueError("expected a sequence of graphs; wrap a single graph in a list")
    return [check_graph(x) for x in X]


class CliqueCounter(TransformerMixin, BaseEstimator):
    """Map each graph to ``[n, m, t, d_avg]`` for clique order ``s``."""

    def __init__(self, s: int = 3):
        self.s = s

    def fit(self, X, y=None):
        if not isinstance(self.s, (int, np.integer)) or self.s < 2:
            raise ValueError(f"s must be an integer >= 2, got {self.s!r}")
        self.n_features_in_ = 1
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "n_features_in_")
        rows = []
        for g in check_graphs(X):
            t = count_cliques(g, self.s).t if g.n >= self.s else 0
            rows.append((g.n, g.m, t, g.average_degree()))
        return np.array(rows, dtype=float).reshape(-1, 4)

    def get_feature_names_out(self, input_features=None):
        return np.array(["n", "m", "t", "d_avg"], dtype=object)


class IndependentSetFinder(BaseEstimator):
    """Find a large independent set with one of the package's algorithms.

    Parameters
    ----------
    algorithm : {"best", "turan_greedy", "pivot_recursion", "neighborhood_clean",
                 "aks_greedy", "sparsify_recurse", "exact_bnb"}
    s : clique order the bound-driven algorithms work with.
    random_state : seed for the randomized steps.

    After ``fit``: ``certificate_``, ``independent_set_`` (sorted vertex ids),
    ``size_`` and ``n_vertices_``.
    """

    def __init__(
        self,
        algorithm: str = "best",
        s: int = 3,
        random_state: int | None = None,
        repeats: int = 8,
        max_retries: int = DEFAULT_RETRIES,
        c2: float = 1 / 3,
        oracle_cap: int = DEFAULT_ORACLE_CAP,
    ):
        self.algorithm = algorithm
        self.s = s
        self.random_state = random_state
        self.repeats = repeats
        self.max_retries = max_retries
        self.c2 = c2
        self.oracle_cap = oracle_cap

    def fit(self, X, y=None):
        if self.algorithm != "best" and self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        g = check_graph(X)
        chain = solve_constant_chain(max(self.s, 3), self.c2)
        rng = make_rng(self.random_state)
        algo = self.algorithm
        if algo == "best":
            cert = best_certificate(g, self.s, chain, rng, self.max_retries, repeats=self.repeats).best
        elif algo == "turan_greedy":
            cert = turan_greedy(g)
        elif algo == "pivot_recursion":
            cert = pivot_recursion(g, self.s, chain)
        elif algo == "neighborhood_clean":
            cert = neighborhood_clean_set(g)
        elif algo == "aks_greedy":
            cert = aks_greedy(g, rng, self.repeats)
        elif algo == "sparsify_recurse":
            variant = "triangle" if self.s == 3 else "general"
            cert = sparsify_and_recurse(g, self.s, chain, rng, self.max_retries, variant)
        else:
            _, cert = exact_alpha(g, self.oracle_cap)
        self.certificate_ = cert
        self.independent_set_ = np.array(cert.to_list(), dtype=np.intp)
        self.size_ = cert.size
        self.n_vertices_ = g.n
        return self

    def predict(self, X=None) -> np.ndarray:
        """0/1 membership of each vertex in the fitted independent set."""
        check_is_fitted(self, "certificate_")
        if X is not None and check_graph(X).n != self.n_vertices_:
            raise ValueError("predict expects the graph the estimator was fitted on")
        labels = np.zeros(self.n_vertices_, dtype=np.intp)
        labels[self.independent_set_] = 1
        return labels

    def fit_predict(self, X, y=None) -> np.ndarray:
        return self.fit(X).predict()
