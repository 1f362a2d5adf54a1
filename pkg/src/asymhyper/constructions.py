"""Generators for the hypergraph families used throughout the package.

Vertex names follow the usual conventions (``v_i``, ``u_i``, ``v^j_i``,
``x``) and are stored as labels; indices are 0-based and contiguous.

Families
--------
``X1``
    A fixed asymmetric graph on 6 vertices (the least one by canonical
    certificate; re-derived in the test-suite by exhaustive search).
``T``
    The spider with legs of lengths 1, 2 and ``n-4``; asymmetric for n >= 7.
``small_asym``
    Asymmetric k-graph on k+2 vertices: complement of X1 (k = 4) or of
    T(k+2) (k >= 5).
``Gkt`` / ``Gkt_circ``
    Cyclic chain of edges ``E_i = {v_i, u_i, v^1_i..v^{k-3}_i, v_{i+1}}``
    (indices mod tk) with window edges on each superscript layer; the
    ``circ`` variant adds a vertex ``x`` and the edge
    ``{v_1, u_1, v^1_1..v^{k-3}_1, x}``.
``Gk`` / ``Gk_star``
    ``k`` consecutive windows of length ``k`` on a path ``v_1..v_{2k-1}``;
    the star variant adds ``x`` and the edge ``{x, v_1..v_{k-2}, v_{k+2}}``.
``Gks``
    The layered construction: ``(k-1)(k-2)^s`` copies of ``Gk`` at the
    bottom, layers of ``G(k-2)`` copies above, one ``Gk_star(k-2)`` on top.
    Every (k-2)-edge of a copy is enlarged by the two tail vertices of the
    child copy it addresses.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .hypercore import Hypergraph, HypergraphError, set_complement

FAMILIES = ("X1", "T", "small_asym", "Gkt", "Gkt_circ", "Gk", "Gk_star", "Gks")

# Least asymmetric 6-vertex graph by canonical certificate.
X1_EDGES = ((0, 1), (0, 3), (1, 5), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5))


class ConstructionError(HypergraphError):
    pass


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ConstructionError(msg)


def build_X1() -> Hypergraph:
    return Hypergraph(6, X1_EDGES)


def build_T(n: int) -> Hypergraph:
    _need(n >= 7, f"no asymmetric tree has {n} < 7 vertices")
    # centre 0; legs 0-1, 0-2-3, 0-4-5-...-(n-1)
    edges = [(0, 1), (0, 2), (2, 3), (0, 4)]
    edges += [(v, v + 1) for v in range(4, n - 1)]
    return Hypergraph(n, edges)


def spider_legs(h: Hypergraph) -> list[int]:
    """Leg lengths of a spider tree (a tree with one vertex of degree > 2)."""
    deg = h.degrees()
    centre = max(range(h.n_vertices), key=deg.__getitem__)
    nbrs: dict[int, list[int]] = {v: [] for v in range(h.n_vertices)}
    for a, b in h.edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    legs = []
    for start in nbrs[centre]:
        prev, cur, length = centre, start, 1
        while len(nbrs[cur]) == 2:
            prev, cur = cur, next(w for w in nbrs[cur] if w != prev)
            length += 1
        legs.append(length)
    return sorted(legs)


def build_small_asym(k: int) -> Hypergraph:
    _need(k >= 4, "small asymmetric k-graphs on k+2 vertices need k >= 4")
    if k == 4:
        return set_complement(build_X1())
    return set_complement(build_T(k + 2))


def _gkt_layout(k: int, t: int) -> tuple[int, dict[str, int]]:
    _need(k >= 3, "G_{k,t} needs k >= 3")
    _need(t >= max(1, k - 2), "G_{k,t} needs t >= k-2 (and t >= 1)")
    tk = t * k
    names = {}
    for i in range(1, tk + 1):
        names[f"v_{i}"] = len(names)
    for i in range(1, tk + 1):
        names[f"u_{i}"] = len(names)
    for j in range(1, k - 2):
        for i in range(1, tk + 1):
            names[f"v^{j}_{i}"] = len(names)
    return tk, names


def _gkt_edges(k: int, t: int, tk: int, idx: dict[str, int]) -> list[list[int]]:
    def wrap(i):
        return (i - 1) % tk + 1

    edges = []
    for i in range(1, tk + 1):
        e = [idx[f"v_{i}"], idx[f"u_{i}"]]
        e += [idx[f"v^{j}_{i}"] for j in range(1, k - 2)]
        e.append(idx[f"v_{wrap(i + 1)}"])
        edges.append(e)
    for j in range(1, k - 2):
        for s in range(t):
            i = j + s * k
            edges.append([idx[f"v^{j}_{wrap(i + d)}"] for d in range(k)])
    return edges


def build_Gkt(k: int, t: int) -> Hypergraph:
    tk, idx = _gkt_layout(k, t)
    edges = _gkt_edges(k, t, tk, idx)
    return Hypergraph(len(idx), edges, {v: name for name, v in idx.items()})


def build_Gkt_circ(k: int, t: int) -> Hypergraph:
    tk, idx = _gkt_layout(k, t)
    edges = _gkt_edges(k, t, tk, idx)
    idx["x"] = len(idx)
    edges.append([idx["v_1"], idx["u_1"]] + [idx[f"v^{j}_1"] for j in range(1, k - 2)] + [idx["x"]])
    return Hypergraph(len(idx), edges, {v: name for name, v in idx.items()})


def gkt_E_edges(k: int, t: int) -> list[int]:
    """Edge indices of E_1..E_tk in ``build_Gkt``/``build_Gkt_circ`` output."""
    return list(range(t * k))


def _path_windows(k: int, offset: int = 0) -> list[list[int]]:
    return [[offset + i + d for d in range(k)] for i in range(k)]


def _star_edge(k: int, offset: int = 0) -> list[int]:
    # x sits right after v_{2k-1}
    x = offset + 2 * k - 1
    return [x] + [offset + i for i in range(k - 2)] + [offset + k + 1]


def build_Gk(k: int) -> Hypergraph:
    _need(k >= 3, "G_k needs k >= 3")
    labels = {i: f"v_{i + 1}" for i in range(2 * k - 1)}
    return Hypergraph(2 * k - 1, _path_windows(k), labels)


def build_Gk_star(k: int) -> Hypergraph:
    _need(k >= 3, "G*_k needs k >= 3 (the extra edge uses v_{k+2})")
    labels = {i: f"v_{i + 1}" for i in range(2 * k - 1)}
    labels[2 * k - 1] = "x"
    return Hypergraph(2 * k, _path_windows(k) + [_star_edge(k)], labels)


def tail_pair(k: int, offset: int = 0) -> tuple[int, int]:
    """Indices of v_{2k-2}, v_{2k-1} in a copy of G_k starting at ``offset``."""
    return offset + 2 * k - 3, offset + 2 * k - 2


@dataclass(frozen=True, order=True)
class LayerAddress:
    layer: int
    copy: tuple[int, ...]

    def __str__(self):
        return f"L{self.layer}[{'.'.join(map(str, self.copy))}]"


class LayeredHypergraph(NamedTuple):
    hypergraph: Hypergraph
    copies: dict[LayerAddress, range]
    edge_child: dict[int, LayerAddress]  # enlarged edge index -> copy whose tail it took


def build_Gks(k: int, s: int) -> LayeredHypergraph:
    _need(k >= 6, "G_{k,s} needs k >= 6")
    _need(s >= 0, "G_{k,s} needs s >= 0")
    top = s + 2
    copies: dict[LayerAddress, range] = {}
    edges: list[list[int]] = []
    labels: dict[int, str] = {}
    edge_child: dict[int, LayerAddress] = {}
    counter = [0]

    def place(layer: int, addr: tuple[int, ...]) -> range:
        m = k if layer == 1 else k - 2
        star = layer == top
        base = counter[0]
        count = 2 * m - 1 + (1 if star else 0)
        counter[0] += count
        la = LayerAddress(layer, addr)
        copies[la] = range(base, base + count)
        for i in range(2 * m - 1):
            labels[base + i] = f"{la}.v_{i + 1}"
        if star:
            labels[base + 2 * m - 1] = f"{la}.x"
        own = _path_windows(m, base) + ([_star_edge(m, base)] if star else [])
        for i, e in enumerate(own, start=1):
            if layer > 1:
                child = LayerAddress(layer - 1, (i,) + addr)
                r = place(layer - 1, child.copy)
                cm = k if layer - 1 == 1 else k - 2
                e = e + list(tail_pair(cm, r.start))
                edge_child[len(edges)] = child
            edges.append(e)
        return copies[la]

    place(top, ())
    return LayeredHypergraph(Hypergraph(counter[0], edges, labels), copies, edge_child)


@dataclass(frozen=True)
class ConstructionSpec:
    family: str
    k: int | None = None
    t: int | None = None
    s: int | None = None
    n: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConstructionError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        needs = {
            "X1": (), "T": ("n",), "small_asym": ("k",), "Gkt": ("k", "t"),
            "Gkt_circ": ("k", "t"), "Gk": ("k",), "Gk_star": ("k",), "Gks": ("k", "s"),
        }[self.family]
        for p in needs:
            if getattr(self, p) is None:
                raise ConstructionError(f"family {self.family} needs parameter {p}")

    def build(self) -> Hypergraph:
        f = self.family
        if f == "X1":
            return build_X1()
        if f == "T":
            return build_T(self.n)
        if f == "small_asym":
            return build_small_asym(self.k)
        if f == "Gkt":
            return build_Gkt(self.k, self.t)
        if f == "Gkt_circ":
            return build_Gkt_circ(self.k, self.t)
        if f == "Gk":
            return build_Gk(self.k)
        if f == "Gk_star":
            return build_Gk_star(self.k)
        return build_Gks(self.k, self.s).hypergraph


def dumps_addresses(copies: dict[LayerAddress, range]) -> str:
    """Sidecar text: ``copy <layer> <tuple> <first_vertex> <last_vertex>`` per copy."""
    lines = []
    for la in sorted(copies, key=lambda a: copies[a].start):
        r = copies[la]
        tup = ",".join(map(str, la.copy)) or "-"
        lines.append(f"copy {la.layer} {tup} {r.start} {r.stop - 1}")
    return "\n".join(lines) + "\n"


def loads_addresses(text: str) -> dict[LayerAddress, range]:
    out = {}
    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0] != "copy":
            continue
        tup = () if parts[2] == "-" else tuple(int(x) for x in parts[2].split(","))
        out[LayerAddress(int(parts[1]), tup)] = range(int(parts[3]), int(parts[4]) + 1)
    return out
