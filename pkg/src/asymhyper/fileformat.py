"""Plain-text hypergraph files.

::

    # comment lines start with '#'
    11            <- vertex count
    0 1 2 3 4 5   <- one edge per line, 0-based indices
    -             <- an empty edge (only produced by set complements)
    label 0 v_1   <- optional display names

Writing then reading then writing is byte-stable.
"""

from __future__ import annotations

from pathlib import Path

from .hypercore import Hypergraph, HypergraphError


class HypergraphFormatError(HypergraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def dumps(h: Hypergraph) -> str:
    lines = [str(h.n_vertices)]
    for e in h.edges:
        lines.append(" ".join(map(str, e)) if e else "-")
    for v in sorted(h.labels):
        lines.append(f"label {v} {h.labels[v]}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> Hypergraph:
    n = None
    edges = []
    seen = set()
    labels = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "label":
            if len(parts) != 3:
                raise HypergraphFormatError("expected 'label <index> <name>'", lineno)
            try:
                idx = int(parts[1])
            except ValueError:
                raise HypergraphFormatError(f"bad label index {parts[1]!r}", lineno) from None
            labels[idx] = parts[2]
            continue
        if n is None:
            if len(parts) != 1:
                raise HypergraphFormatError("first data line must be the vertex count", lineno)
            try:
                n = int(parts[0])
            except ValueError:
                raise HypergraphFormatError(f"bad vertex count {parts[0]!r}", lineno) from None
            if n < 0:
                raise HypergraphFormatError("negative vertex count", lineno)
            continue
        if parts == ["-"]:
            if () in seen:
                raise HypergraphFormatError("duplicate edge", lineno)
            seen.add(())
            edges.append(())
            continue
        try:
            edge = [int(p) for p in parts]
        except ValueError:
            raise HypergraphFormatError(f"bad edge {line!r}", lineno) from None
        bad = [v for v in edge if not 0 <= v < n]
        if bad:
            raise HypergraphFormatError(f"vertex {bad[0]} outside [0, {n})", lineno)
        if len(set(edge)) != len(edge):
            raise HypergraphFormatError("repeated vertex inside an edge", lineno)
        key = tuple(sorted(edge))
        if key in seen:
            raise HypergraphFormatError("duplicate edge", lineno)
        seen.add(key)
        edges.append(edge)
    if n is None:
        raise HypergraphFormatError("missing vertex count")
    try:
        return Hypergraph(n, edges, labels)
    except HypergraphError as exc:
        raise HypergraphFormatError(str(exc)) from None


def read(path: str | Path) -> Hypergraph:
    return loads(Path(path).read_text())


def write(h: Hypergraph, path: str | Path) -> None:
    Path(path).write_text(dumps(h))
