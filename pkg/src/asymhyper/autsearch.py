"""Automorphism groups, set stabilisers, involutions and canonical forms.

Everything runs on one individualisation-refinement engine.  A hypergraph
is viewed as its incidence structure: one node per vertex, one node per
edge, an arc between a vertex and every edge containing it.  Colour
refinement (1-dimensional Weisfeiler-Leman) is run on that bipartite
graph; vertices are then individualised one at a time until the vertex
part of the partition is discrete.

* The automorphism group is obtained nauty-style: the first path of the
  search tree gives a base, and for each level the orbit of the base point
  under the pointwise stabiliser of the earlier base points is computed by
  looking for leaves equivalent to the first leaf.  The product of those
  orbit lengths is the group order.
* Set stabilisers come from seeding the initial colouring with the set.
* Involutions are searched for directly: branching on ``phi(v) = w``
  individualises ``v, w`` on the domain side and ``w, v`` on the image
  side, which keeps the candidate map involutive by construction.
* The canonical form is the least (trace sequence, relabelled edge list)
  over the leaves of the search tree, with automorphism pruning.

Blocks carry a small integer role per member so that directed structures
(see :mod:`asymhyper.extremal`) can reuse the engine.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .hypercore import Hypergraph, Permutation, twin_pair

DEFAULT_BUDGET = 2_000_000


class SearchBudgetExceeded(RuntimeError):
    """The search tree grew past the configured node budget."""

    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"search budget of {budget} nodes exceeded")


class IncidenceStructure:
    """Points ``0..n-1`` plus blocks; a block is a set of ``(point, role)`` pairs."""

    def __init__(self, n: int, blocks: Sequence[Iterable[tuple[int, int]]]):
        self.n = n
        self.blocks = [tuple(sorted(b)) for b in blocks]
        self.block_set = frozenset(self.blocks)
        self.plain = all(r == 0 for b in self.blocks for _, r in b)
        self.size = n + len(self.blocks)
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.size)]
        for j, b in enumerate(self.blocks):
            node = n + j
            for v, r in b:
                adj[v].append((node, r))
                adj[node].append((v, r))
        self.adj = adj
        if self.plain:
            self._plain_blocks = [tuple(v for v, _ in b) for b in self.blocks]
            self._plain_set = frozenset(self._plain_blocks)

    @classmethod
    def from_hypergraph(cls, h: Hypergraph) -> "IncidenceStructure":
        return cls(h.n_vertices, [[(v, 0) for v in e] for e in h.edges])

    def initial_colors(self, vertex_colors: Sequence[int] | None = None) -> list[int]:
        keys = []
        for v in range(self.n):
            keys.append((0, vertex_colors[v] if vertex_colors is not None else 0))
        for b in self.blocks:
            keys.append((1, len(b), tuple(sorted(r for _, r in b))))
        rank = {k: i for i, k in enumerate(sorted(set(keys)))}
        return [rank[k] for k in keys]

    def is_automorphism(self, img: Sequence[int]) -> bool:
        if self.plain:
            s = self._plain_set
            return all(tuple(sorted(img[v] for v in b)) in s for b in self._plain_blocks)
        s = self.block_set
        return all(tuple(sorted((img[v], r) for v, r in b)) in s for b in self.blocks)

    def certificate(self, pos: Sequence[int]) -> tuple:
        if self.plain:
            return tuple(sorted(tuple(sorted(pos[v] for v in b)) for b in self._plain_blocks))
        return tuple(sorted(tuple(sorted((pos[v], r) for v, r in b)) for b in self.blocks))


@dataclass
class _Node:
    colors: list[int]
    trace: int
    target: int | None = None  # colour of the cell branched on; None at a leaf
    choice: int | None = None  # vertex individualised on the first path


class _Engine:
    def __init__(self, st: IncidenceStructure, vertex_colors: Sequence[int] | None = None,
                 budget: int | None = None):
        self.st = st
        self.n = st.n
        self.budget = DEFAULT_BUDGET if budget is None else budget
        self.nodes = 0
        self.init = st.initial_colors(vertex_colors)

    # -- refinement -------------------------------------------------------
    def refine(self, colors: list[int]) -> tuple[list[int], int]:
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(self.budget)
        adj = self.st.adj
        ncol = len(set(colors))
        trace = []
        while True:
            sigs = [(colors[x], tuple(sorted([colors[y] * 4 + r for y, r in nb])))
                    for x, nb in enumerate(adj)]
            cnt = Counter(sigs)
            uniq = sorted(cnt)
            trace.append(hash((tuple(uniq), tuple(cnt[u] for u in uniq))))
            rank = {s: i for i, s in enumerate(uniq)}
            colors = [rank[s] for s in sigs]
            if len(uniq) == ncol:
                break
            ncol = len(uniq)
        return colors, hash(tuple(trace))

    def individualize(self, colors: list[int], vs: Sequence[int]) -> list[int]:
        new = [3 * c + 2 for c in colors]
        for i, v in enumerate(vs):
            new[v] = 3 * colors[v] + i
        return new

    def target_cell(self, colors: list[int]) -> int | None:
        sizes = Counter(colors[: self.n])
        best = None
        for c, s in sizes.items():
            if s > 1 and (best is None or (s, c) < best):
                best = (s, c)
        return None if best is None else best[1]

    def cell(self, colors: list[int], c: int) -> list[int]:
        return [v for v in range(self.n) if colors[v] == c]

    def leaf_map(self, pc: list[int], qc: list[int]) -> list[int]:
        where = {qc[w]: w for w in range(self.n)}
        return [where[pc[v]] for v in range(self.n)]

    def leaf_positions(self, colors: list[int]) -> list[int]:
        order = sorted(range(self.n), key=colors.__getitem__)
        pos = [0] * self.n
        for i, v in enumerate(order):
            pos[v] = i
        return pos

    # -- automorphism group ----------------------------------------------
    def first_path(self) -> list[_Node]:
        colors, trace = self.refine(self.init)
        path = [_Node(colors, trace)]
        while True:
            node = path[-1]
            t = self.target_cell(node.colors)
            if t is None:
                return path
            v = self.cell(node.colors, t)[0]
            node.target, node.choice = t, v
            colors, trace = self.refine(self.individualize(node.colors, [v]))
            path.append(_Node(colors, trace))

    def match(self, path: list[_Node], depth: int, qc: list[int]) -> list[int] | None:
        node = path[depth]
        if node.target is None:
            img = self.leaf_map(node.colors, qc)
            return img if self.st.is_automorphism(img) else None
        want = path[depth + 1].trace
        for w in self.cell(qc, node.target):
            q2, tr = self.refine(self.individualize(qc, [w]))
            if tr != want:
                continue
            img = self.match(path, depth + 1, q2)
            if img is not None:
                return img
        return None

    def group(self) -> tuple[list[list[int]], int, list[_Node]]:
        path = self.first_path()
        gens: list[list[int]] = []
        order = 1
        for depth in range(len(path) - 2, -1, -1):
            node = path[depth]
            v = node.choice
            uf = _UnionFind(self.n)
            for g in gens:
                uf.absorb(g)
            rejected: set[int] = set()
            want = path[depth + 1].trace
            for w in self.cell(node.colors, node.target):
                if w == v or uf.find(w) == uf.find(v) or uf.find(w) in rejected:
                    continue
                q, tr = self.refine(self.individualize(node.colors, [w]))
                img = self.match(path, depth + 1, q) if tr == want else None
                if img is None:
                    rejected.add(uf.find(w))
                else:
                    gens.append(img)
                    rejected = {uf.find(r) for r in rejected}
                    uf.absorb(img)
                    rejected = {uf.find(r) for r in rejected}
            root = uf.find(v)
            order *= sum(1 for w in self.cell(node.colors, node.target) if uf.find(w) == root)
        return gens, order, path

    # -- involutions -------------------------------------------------------
    def involution(self) -> list[int] | None:
        colors, trace = self.refine(self.init)
        return self._involution(colors, colors)

    def _involution(self, pc: list[int], qc: list[int]) -> list[int] | None:
        t = self.target_cell(pc)
        if t is None:
            img = self.leaf_map(pc, qc)
            if all(img[img[v]] == v for v in range(self.n)) and \
                    any(img[v] != v for v in range(self.n)) and self.st.is_automorphism(img):
                return img
            return None
        v = self.cell(pc, t)[0]
        same = pc == qc
        for w in self.cell(qc, t):
            if w == v:
                p2, tp = self.refine(self.individualize(pc, [v]))
                if same:
                    q2, tq = p2, tp
                else:
                    q2, tq = self.refine(self.individualize(qc, [v]))
            else:
                if pc[w] != qc[v]:
                    continue
                p2, tp = self.refine(self.individualize(pc, [v, w]))
                q2, tq = self.refine(self.individualize(qc, [w, v]))
            if tp != tq:
                continue
            img = self._involution(p2, q2)
            if img is not None:
                return img
        return None

    # -- canonical labelling ----------------------------------------------
    def canonical(self) -> tuple[tuple, list[int]]:
        gens, _, path = self.group()
        self.gens = [list(g) for g in gens]
        self.best: tuple | None = None
        self.best_pos: list[int] | None = None
        root = path[0]
        self._canon(root.colors, (root.trace,), ())
        return self.best[1], self.best_pos

    def _worse(self, seq: tuple) -> bool:
        if self.best is None:
            return False
        bseq = self.best[0]
        m = min(len(seq), len(bseq))
        if seq[:m] != bseq[:m]:
            return seq[:m] > bseq[:m]
        # equal on the common part: a longer sequence sorts after a shorter one
        return len(seq) > len(bseq)

    def _canon(self, colors: list[int], seq: tuple, prefix: tuple[int, ...]) -> None:
        if self._worse(seq):
            return
        t = self.target_cell(colors)
        if t is None:
            pos = self.leaf_positions(colors)
            key = (seq, self.st.certificate(pos))
            if self.best is None or key < self.best:
                self.best, self.best_pos = key, pos
            elif key == self.best:
                # two leaves with the same certificate differ by an automorphism
                inv = [0] * self.n
                for v, p in enumerate(self.best_pos):
                    inv[p] = v
                img = [inv[pos[v]] for v in range(self.n)]
                if img not in self.gens:
                    self.gens.append(img)
            return
        uf = _UnionFind(self.n)
        for g in self.gens:
            if all(g[p] == p for p in prefix):
                uf.absorb(g)
        done: set[int] = set()
        for w in self.cell(colors, t):
            r = uf.find(w)
            if r in done:
                continue
            done.add(r)
            q, tr = self.refine(self.individualize(colors, [w]))
            self._canon(q, seq + (tr,), prefix + (w,))


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[max(a, b)] = min(a, b)

    def absorb(self, perm: Sequence[int]) -> None:
        for v, w in enumerate(perm):
            self.union(v, w)

    def classes(self) -> list[tuple[int, ...]]:
        groups: dict[int, list[int]] = {}
        for v in range(len(self.parent)):
            groups.setdefault(self.find(v), []).append(v)
        return sorted(tuple(g) for g in groups.values())


@dataclass(frozen=True)
class AutGroupDescription:
    generators: tuple[Permutation, ...]
    order: int
    orbits: tuple[tuple[int, ...], ...]

    def is_trivial(self) -> bool:
        return self.order == 1

    def elements(self, limit: int = 100_000) -> Iterator[Permutation]:
        """Every group element, by closure under the generators (small groups only)."""
        if self.order > limit:
            raise ValueError(f"group of order {self.order} exceeds limit {limit}")
        n = sum(len(o) for o in self.orbits)
        start = tuple(range(n))
        seen = {start}
        frontier = [start]
        gens = [g.image for g in self.generators]
        while frontier:
            nxt = []
            for p in frontier:
                for g in gens:
                    q = tuple(g[i] for i in p)
                    if q not in seen:
                        seen.add(q)
                        nxt.append(q)
            frontier = nxt
        for p in sorted(seen):
            yield Permutation(p)


@dataclass(frozen=True)
class ColoredPartition:
    cells: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class CanonicalCertificate:
    n_vertices: int
    edges: tuple[tuple, ...]
    digest: str

    @classmethod
    def build(cls, n: int, edges: tuple) -> "CanonicalCertificate":
        text = f"{n}|" + ";".join(",".join(map(str, e)) for e in edges)
        return cls(n, edges, hashlib.sha256(text.encode()).hexdigest())

    def __lt__(self, other: "CanonicalCertificate") -> bool:
        return (self.n_vertices, self.edges) < (other.n_vertices, other.edges)


def _vertex_colors(h: Hypergraph, s: Iterable[int] | None) -> list[int] | None:
    if s is None:
        return None
    s = set(s)
    for v in s:
        if not 0 <= v < h.n_vertices:
            raise ValueError(f"vertex {v} outside [0, {h.n_vertices})")
    return [1 if v in s else 0 for v in range(h.n_vertices)]


def group_of_structure(st: IncidenceStructure, vertex_colors: Sequence[int] | None = None,
                       budget: int | None = None) -> AutGroupDescription:
    eng = _Engine(st, vertex_colors, budget)
    gens, order, _ = eng.group()
    uf = _UnionFind(st.n)
    for g in gens:
        uf.absorb(g)
    return AutGroupDescription(tuple(Permutation(g) for g in gens), order, tuple(uf.classes()))


def automorphism_group(h: Hypergraph, budget: int | None = None) -> AutGroupDescription:
    return group_of_structure(IncidenceStructure.from_hypergraph(h), None, budget)


def stabilizer_preserving(h: Hypergraph, s: Iterable[int],
                          budget: int | None = None) -> AutGroupDescription:
    """Automorphisms mapping the vertex set ``s`` onto itself."""
    return group_of_structure(IncidenceStructure.from_hypergraph(h), _vertex_colors(h, s), budget)


def is_asymmetric(h: Hypergraph, budget: int | None = None) -> bool:
    if twin_pair(h) is not None:
        return False
    return automorphism_group(h, budget).order == 1


def find_involution(h: Hypergraph, preserving: Iterable[int] | None = None,
                    budget: int | None = None) -> Permutation | None:
    """An involutive automorphism of ``h`` (fixing ``preserving`` setwise), or None."""
    colors = _vertex_colors(h, preserving)
    pair = twin_pair(h, colors)
    if pair is not None:
        return Permutation.from_cycles(h.n_vertices, [pair])
    eng = _Engine(IncidenceStructure.from_hypergraph(h), colors, budget)
    img = eng.involution()
    return None if img is None else Permutation(img)


def has_involution(h: Hypergraph, preserving: Iterable[int] | None = None,
                   budget: int | None = None) -> bool:
    return find_involution(h, preserving, budget) is not None


def equitable_partition(h: Hypergraph, s: Iterable[int] | None = None) -> ColoredPartition:
    """Coarsest equitable vertex partition refining the (optional) set colouring."""
    eng = _Engine(IncidenceStructure.from_hypergraph(h), _vertex_colors(h, s))
    colors, _ = eng.refine(eng.init)
    cells: dict[int, list[int]] = {}
    for v in range(h.n_vertices):
        cells.setdefault(colors[v], []).append(v)
    return ColoredPartition(tuple(tuple(cells[c]) for c in sorted(cells)))


def canonical_labeling(st: IncidenceStructure, vertex_colors: Sequence[int] | None = None,
                       budget: int | None = None) -> tuple[tuple, list[int]]:
    """(relabelled block list, position of each point) for a structure."""
    if st.n == 0:
        return st.certificate([]), []
    eng = _Engine(st, vertex_colors, budget)
    return eng.canonical()


def canonical_form(h: Hypergraph, budget: int | None = None) -> CanonicalCertificate:
    cert, _ = canonical_labeling(IncidenceStructure.from_hypergraph(h), None, budget)
    return CanonicalCertificate.build(h.n_vertices, cert)


def canonical_relabeling(h: Hypergraph, budget: int | None = None) -> Permutation:
    """Permutation sending each vertex to its position in the canonical form."""
    _, pos = canonical_labeling(IncidenceStructure.from_hypergraph(h), None, budget)
    return Permutation(pos)


def are_isomorphic(a: Hypergraph, b: Hypergraph, budget: int | None = None) -> bool:
    if a.n_vertices != b.n_vertices or a.n_edges != b.n_edges:
        return False
    if sorted(a.degrees()) != sorted(b.degrees()):
        return False
    return canonical_form(a, budget) == canonical_form(b, budget)
