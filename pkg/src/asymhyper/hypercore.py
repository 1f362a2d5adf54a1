"""Hypergraph data model and structure algebra.

Vertices are the contiguous indices ``0..n-1``.  Human-readable names such
as ``v_3`` or ``x`` live in an optional label map and never affect
structure.  Edges keep the order in which they were given (constructions
rely on that to address their edges), but each edge is stored as a
strictly increasing tuple and duplicate edges are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence


class HypergraphError(ValueError):
    """Raised for malformed hypergraphs, permutations or selectors."""


def _normalize_edge(edge: Iterable[int], n: int) -> tuple[int, ...]:
    e = tuple(sorted(edge))
    for a, b in zip(e, e[1:]):
        if a == b:
            raise HypergraphError(f"edge {e} repeats vertex {a}")
    for v in e:
        if not 0 <= v < n:
            raise HypergraphError(f"edge {e} has vertex {v} outside [0, {n})")
    return e


@dataclass(frozen=True, eq=False)
class Hypergraph:
    n_vertices: int
    edges: tuple[tuple[int, ...], ...]
    labels: Mapping[int, str] = field(default_factory=dict)

    def __init__(self, n_vertices: int, edges: Iterable[Iterable[int]] = (),
                 labels: Mapping[int, str] | None = None):
        if n_vertices < 0:
            raise HypergraphError("vertex count must be nonnegative")
        norm = tuple(_normalize_edge(e, n_vertices) for e in edges)
        if len(set(norm)) != len(norm):
            seen = set()
            for e in norm:
                if e in seen:
                    raise HypergraphError(f"duplicate edge {e}")
                seen.add(e)
        labels = dict(labels or {})
        for v in labels:
            if not 0 <= v < n_vertices:
                raise HypergraphError(f"label for vertex {v} outside [0, {n_vertices})")
        object.__setattr__(self, "n_vertices", n_vertices)
        object.__setattr__(self, "edges", norm)
        object.__setattr__(self, "labels", labels)

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.n_vertices == other.n_vertices
                and self.edge_set == other.edge_set
                and self.labels == other.labels)

    def __hash__(self):
        return hash((self.n_vertices, self.edge_set))

    def __repr__(self):
        return f"Hypergraph(n_vertices={self.n_vertices}, edges={list(self.edges)})"

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(self.edges)

    @cached_property
    def incidence_masks(self) -> tuple[int, ...]:
        """Per vertex, a bitmask over edge indices of the edges containing it."""
        masks = [0] * self.n_vertices
        for j, e in enumerate(self.edges):
            bit = 1 << j
            for v in e:
                masks[v] |= bit
        return tuple(masks)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def edge_sizes(self) -> set[int]:
        return {len(e) for e in self.edges}

    def is_uniform(self, k: int | None = None) -> bool:
        sizes = self.edge_sizes
        if k is None:
            return len(sizes) <= 1
        return sizes <= {k}

    def label(self, v: int) -> str:
        return self.labels.get(v, str(v))

    def vertex(self, name: str) -> int:
        """Index of the vertex carrying label ``name``."""
        for v, lab in self.labels.items():
            if lab == name:
                return v
        raise KeyError(name)

    def edge_index(self, edge: Iterable[int]) -> int:
        return self.edges.index(tuple(sorted(edge)))

    def covered(self, edge_ids: Iterable[int]) -> set[int]:
        out: set[int] = set()
        for j in edge_ids:
            out.update(self.edges[j])
        return out

    def degrees(self) -> list[int]:
        return [m.bit_count() for m in self.incidence_masks]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)


@dataclass(frozen=True)
class Permutation:
    image: tuple[int, ...]

    def __init__(self, image: Sequence[int]):
        image = tuple(image)
        if sorted(image) != list(range(len(image))):
            raise HypergraphError(f"not a permutation: {image}")
        object.__setattr__(self, "image", image)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        img = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls(img)

    def __len__(self):
        return len(self.image)

    def __call__(self, v: int) -> int:
        return self.image[v]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (p * q)(v) = p(q(v))
        return Permutation([self.image[i] for i in other.image])

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.image)
        for i, j in enumerate(self.image):
            inv[j] = i
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.image))

    def is_involution(self) -> bool:
        return not self.is_identity() and all(self.image[j] == i for i, j in enumerate(self.image))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(len(self.image)):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self.image[start]
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self.image[nxt]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_notation(self, labels: Mapping[int, str] | None = None) -> str:
        labels = labels or {}
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(labels.get(v, str(v)) for v in c) + ")" for c in cycs)


@dataclass(frozen=True)
class SubgraphSelector:
    vertex_subset: frozenset[int]
    edge_subset: frozenset[int]

    def __init__(self, vertex_subset: Iterable[int], edge_subset: Iterable[int]):
        object.__setattr__(self, "vertex_subset", frozenset(vertex_subset))
        object.__setattr__(self, "edge_subset", frozenset(edge_subset))

    @classmethod
    def full(cls, h: Hypergraph) -> "SubgraphSelector":
        return cls(range(h.n_vertices), range(h.n_edges))

    def is_full(self, h: Hypergraph) -> bool:
        return len(self.vertex_subset) == h.n_vertices and len(self.edge_subset) == h.n_edges


def _check_vertex(h: Hypergraph, v: int) -> None:
    if not 0 <= v < h.n_vertices:
        raise HypergraphError(f"vertex {v} outside [0, {h.n_vertices})")


def degree(h: Hypergraph, v: int) -> int:
    _check_vertex(h, v)
    return h.incidence_masks[v].bit_count()


def _reindexed(h: Hypergraph, keep: Sequence[int], edge_ids: Iterable[int]) -> Hypergraph:
    new_index = {v: i for i, v in enumerate(keep)}
    edges = [[new_index[v] for v in h.edges[j]] for j in edge_ids]
    labels = {new_index[v]: name for v, name in h.labels.items() if v in new_index}
    return Hypergraph(len(keep), edges, labels)


def induced_subhypergraph(h: Hypergraph, s: Iterable[int]) -> Hypergraph:
    """Vertices ``s`` (reindexed in increasing order) and every edge inside ``s``."""
    keep = sorted(set(s))
    for v in keep:
        _check_vertex(h, v)
    inside = set(keep)
    ids = [j for j, e in enumerate(h.edges) if inside.issuperset(e)]
    return _reindexed(h, keep, ids)


def subgraph(h: Hypergraph, sel: SubgraphSelector) -> Hypergraph:
    for v in sel.vertex_subset:
        _check_vertex(h, v)
    for j in sel.edge_subset:
        if not 0 <= j < h.n_edges:
            raise HypergraphError(f"edge id {j} outside [0, {h.n_edges})")
        if not sel.vertex_subset.issuperset(h.edges[j]):
            raise HypergraphError(f"edge {h.edges[j]} not inside the selected vertices")
    return _reindexed(h, sorted(sel.vertex_subset), sorted(sel.edge_subset))


def set_complement(h: Hypergraph) -> Hypergraph:
    everything = set(range(h.n_vertices))
    return Hypergraph(h.n_vertices, [everything.difference(e) for e in h.edges], h.labels)


def pad_two(h: Hypergraph) -> Hypergraph:
    """Append two fresh vertices, private to that edge, to every edge.

    Edge ``j`` receives vertices ``n + 2j`` and ``n + 2j + 1``.
    """
    n = h.n_vertices
    edges = [e + (n + 2 * j, n + 2 * j + 1) for j, e in enumerate(h.edges)]
    labels = dict(h.labels)
    if labels:
        for j in range(h.n_edges):
            labels[n + 2 * j] = f"pad{j}a"
            labels[n + 2 * j + 1] = f"pad{j}b"
    return Hypergraph(n + 2 * h.n_edges, edges, labels)


def extend_to_padding(h: Hypergraph, p: Permutation) -> Permutation:
    """Lift an automorphism of ``h`` to ``pad_two(h)`` (pad pairs follow their edge)."""
    if not is_automorphism(h, p):
        raise HypergraphError("permutation is not an automorphism")
    n = h.n_vertices
    img = list(p.image) + [0] * (2 * h.n_edges)
    for j, e in enumerate(h.edges):
        t = h.edge_index(p.image[v] for v in e)
        img[n + 2 * j] = n + 2 * t
        img[n + 2 * j + 1] = n + 2 * t + 1
    return Permutation(img)


def apply(h: Hypergraph, p: Permutation) -> Hypergraph:
    if len(p) != h.n_vertices:
        raise HypergraphError(f"permutation of length {len(p)} on {h.n_vertices} vertices")
    img = p.image
    return Hypergraph(h.n_vertices, [[img[v] for v in e] for e in h.edges])


def is_automorphism(h: Hypergraph, p: Permutation) -> bool:
    if len(p) != h.n_vertices:
        raise HypergraphError(f"permutation of length {len(p)} on {h.n_vertices} vertices")
    img = p.image
    es = h.edge_set
    return all(tuple(sorted(img[v] for v in e)) in es for e in h.edges)


def connected_components(h: Hypergraph) -> list[list[int]]:
    parent = list(range(h.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in h.edges:
        for v in e[1:]:
            a, b = find(e[0]), find(v)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for v in range(h.n_vertices):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def complete(n: int, k: int) -> Hypergraph:
    from itertools import combinations
    return Hypergraph(n, combinations(range(n), k))


def twin_pair(h: Hypergraph, colors: Sequence[int] | None = None) -> tuple[int, int] | None:
    """Two vertices with identical incident edges (and equal colour), if any.

    Swapping such a pair is always an involutive automorphism.
    """
    seen: dict[tuple[int, int], int] = {}
    masks = h.incidence_masks
    for v in range(h.n_vertices):
        key = (masks[v], colors[v] if colors is not None else 0)
        if key in seen:
            return seen[key], v
        seen[key] = v
    return None
