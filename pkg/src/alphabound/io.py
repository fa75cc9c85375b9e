"""DIMACS ``col`` and plain edge-list readers and writers."""

from __future__ import annotations

import os

from .graph import Graph

FORMATS = ("dimacs", "edgelist")


class GraphFormatError(ValueError):
    """Raised when a graph file does not parse; carries the 1-based line number."""

    def __init__(self, path, lineno: int | None, message: str):
        self.path = os.fspath(path)
        self.lineno = lineno
        where = f"{self.path}:{lineno}" if lineno is not None else self.path
        super().__init__(f"{where}: {message}")


def _check_format(fmt: str) -> None:
    if fmt not in FORMATS:
        raise ValueError(f"unknown graph format {fmt!r}; expected one of {FORMATS}")


def load_graph(path, format: str = "dimacs") -> Graph:
    _check_format(format)
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if format == "dimacs":
        return _parse_dimacs(path, lines)
    return _parse_edgelist(path, lines)


def _parse_dimacs(path, lines: list[str]) -> Graph:
    n = declared_m = None
    edges: set[tuple[int, int]] = set()
    listed = 0
    for lineno, raw in enumerate(lines, start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise GraphFormatError(path, lineno, "duplicate problem line")
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise GraphFormatError(path, lineno, f"bad problem line {raw.strip()!r}")
            try:
                n, declared_m = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphFormatError(path, lineno, f"bad problem line {raw.strip()!r}") from None
            if n < 0 or declared_m < 0:
                raise GraphFormatError(path, lineno, "negative counts in problem line")
        elif tag == "e":
            if n is None:
                raise GraphFormatError(path, lineno, "edge line before problem line")
            if len(parts) != 3:
                raise GraphFormatError(path, lineno, f"bad edge line {raw.strip()!r}")
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except ValueError:
                raise GraphFormatError(path, lineno, f"bad edge line {raw.strip()!r}") from None
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(path, lineno, f"vertex out of range 1..{n}")
            if u == v:
                raise GraphFormatError(path, lineno, f"self-loop at vertex {u + 1}")
            listed += 1
            edges.add((min(u, v), max(u, v)))
        else:
            raise GraphFormatError(path, lineno, f"unknown line type {tag!r}")
    if n is None:
        raise GraphFormatError(path, None, "missing problem line")
    if listed != declared_m:
        raise GraphFormatError(path, None, f"header declares {declared_m} edges but {listed} are listed")
    return Graph.from_edges(n, edges)


def _parse_edgelist(path, lines: list[str]) -> Graph:
    # ids already dense 0..k-1 are kept; anything else is relabelled in
    # first-seen order.  A "# vertices N" line pins n (isolated vertices).
    declared_n = None
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(lines, start=1):
        text, _, comment = raw.partition("#")
        directive = comment.split()
        if not text.strip() and len(directive) == 2 and directive[0] == "vertices":
            try:
                declared_n = int(directive[1])
            except ValueError:
                raise GraphFormatError(path, lineno, f"bad vertices directive {raw.strip()!r}") from None
            continue
        parts = text.split()
        if not parts:
            continue
        if len(parts) != 2:
            raise GraphFormatError(path, lineno, f"expected 'u v', got {raw.strip()!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(path, lineno, f"non-integer vertex id in {raw.strip()!r}") from None
        if u < 0 or v < 0:
            raise GraphFormatError(path, lineno, "negative vertex id")
        if u == v:
            raise GraphFormatError(path, lineno, f"self-loop at vertex {u}")
        if declared_n is not None and max(u, v) >= declared_n:
            raise GraphFormatError(path, lineno, f"vertex id outside 0..{declared_n - 1}")
        pairs.append((u, v))

    seen = {x for pair in pairs for x in pair}
    if declared_n is not None:
        n, label = declared_n, None
    elif seen == set(range(len(seen))):
        n, label = len(seen), None
    else:
        label = {}
        for pair in pairs:
            for x in pair:
                label.setdefault(x, len(label))
        n = len(label)
    edges = set()
    for u, v in pairs:
        if label is not None:
            u, v = label[u], label[v]
        edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(n, edges)


def save_graph(g: Graph, path, format: str = "dimacs") -> None:
    _check_format(format)
    if format == "dimacs":
        lines = [f"p edge {g.n} {g.m}"]
        lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    else:
        lines = [f"{u} {v}" for u, v in g.edges()]
        if any(row == 0 for row in g.rows):
            lines.insert(0, f"# vertices {g.n}")
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + ("\n" if lines else ""))
    except OSError as exc:
        raise OSError(f"cannot write graph to {os.fspath(path)}: {exc.strerror}") from exc
