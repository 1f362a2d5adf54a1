"""Isomorph-free enumeration of small k-graphs, the minimum order of an
asymmetric k-graph, and an exhaustive explorer for critical asymmetric
oriented graphs.

Enumeration grows isomorphism classes one edge at a time: every class
with m+1 edges arises from some class with m edges by adding one edge, so
extending each m-edge representative by every missing k-set and keeping
one graph per canonical certificate is complete.  Classes with more than
half of all k-sets are obtained by taking the edge-set complement (the
family of all k-sets minus the edges) of the classes with fewer, which is
a bijection on isomorphism classes.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

from .autsearch import (IncidenceStructure, SearchBudgetExceeded, canonical_form,
                        canonical_labeling, group_of_structure, is_asymmetric)
from .hypercore import Hypergraph, set_complement, twin_pair
from .verify import FAILS, HOLDS, VerificationReport

DEFAULT_CLASS_BUDGET = 200_000


class EnumerationBudgetExceeded(SearchBudgetExceeded):
    def __init__(self, budget: int, partial=None):
        super().__init__(budget)
        self.partial = partial


def _classes_by_augmentation(n_items: int, start, extend, certify, budget: int) -> list[list]:
    """Levels of isomorphism classes: level m holds one object per class with m items."""
    levels = [[start]]
    half = n_items // 2
    seen = 1
    for m in range(half):
        found: dict = {}
        for obj in levels[m]:
            for new in extend(obj):
                cert = certify(new)
                if cert not in found:
                    found[cert] = new
                    seen += 1
                    if seen > budget:
                        raise EnumerationBudgetExceeded(budget)
        levels.append([found[c] for c in sorted(found)])
    return levels


def enumerate_k_graphs(n: int, k: int, budget: int = DEFAULT_CLASS_BUDGET) -> Iterator[Hypergraph]:
    """One representative per isomorphism class of k-graphs on n vertices."""
    if n < 1 or not 0 <= k <= n:
        raise ValueError("need n >= 1 and 0 <= k <= n")
    ksets = list(combinations(range(n), k))
    total = len(ksets)

    def extend(h: Hypergraph):
        present = h.edge_set
        for e in ksets:
            if e not in present:
                yield Hypergraph(n, h.edges + (e,))

    levels = _classes_by_augmentation(total, Hypergraph(n), extend,
                                      lambda h: canonical_form(h).edges, budget)
    for level in levels:
        yield from level
    for m in range(total - len(levels), -1, -1):
        # complementary levels: total - m edges for m < ceil(total / 2)
        for h in levels[m]:
            present = h.edge_set
            yield Hypergraph(n, [e for e in ksets if e not in present])


def count_k_graph_classes(n: int, k: int) -> int:
    return sum(1 for _ in enumerate_k_graphs(n, k))


@dataclass
class NOutcome:
    n: int
    classes: int
    asymmetric: int
    witness: Hypergraph | None
    via_complement: bool

    @property
    def all_symmetric(self) -> bool:
        return self.witness is None


@dataclass
class SearchResult:
    k: int
    outcomes: dict[int, NOutcome] = field(default_factory=dict)
    complete: bool = True
    note: str = ""

    @property
    def n_of_k(self) -> int | None:
        for n in sorted(self.outcomes):
            if self.outcomes[n].witness is not None:
                return n
        return None

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "n_of_k": self.n_of_k,
            "complete": self.complete,
            "note": self.note,
            "outcomes": {
                str(n): {"classes": o.classes, "asymmetric": o.asymmetric,
                         "via_complement": o.via_complement,
                         "witness": None if o.witness is None else [list(e) for e in o.witness.edges]}
                for n, o in sorted(self.outcomes.items())
            },
        }

    def table(self, witness_paths: dict[int, str] | None = None) -> str:
        witness_paths = witness_paths or {}
        rows = [f"{'n':>3}  {'classes':>8}  {'asymmetric':>10}  witness"]
        for n in sorted(self.outcomes):
            o = self.outcomes[n]
            if n in witness_paths:
                w = witness_paths[n]
            elif o.witness is None:
                w = "-"
            else:
                w = " ".join("{" + ",".join(map(str, e)) + "}" for e in o.witness.edges)
            rows.append(f"{n:>3}  {o.classes:>8}  {o.asymmetric:>10}  {w}")
        nk = self.n_of_k
        rows.append(f"n({self.k}) = {nk if nk is not None else 'not found'}"
                    + ("" if self.complete else f"  [partial: {self.note}]"))
        return "\n".join(rows) + "\n"


def classify_order(n: int, k: int, budget: int = DEFAULT_CLASS_BUDGET) -> NOutcome:
    """Count classes and asymmetric classes of k-graphs on n vertices."""
    dual = 0 <= n - k < k
    kk = n - k if dual else k
    classes = asym = 0
    witness = None
    for g in enumerate_k_graphs(n, kk, budget):
        classes += 1
        if is_asymmetric(g):
            asym += 1
            if witness is None:
                witness = set_complement(g) if dual else g
    return NOutcome(n, classes, asym, witness, dual)


def min_asymmetric_order(k: int, n_max: int, budget: int = DEFAULT_CLASS_BUDGET) -> SearchResult:
    """Smallest n >= 2 carrying an asymmetric k-graph, searched up to ``n_max``.

    Orders below k carry only the edgeless k-graph, which is symmetric once
    n >= 2; they are recorded without enumeration.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    res = SearchResult(k)
    for n in range(2, n_max + 1):
        if n < k:
            res.outcomes[n] = NOutcome(n, 1, 0, None, False)
            continue
        try:
            res.outcomes[n] = classify_order(n, k, budget)
        except EnumerationBudgetExceeded as exc:
            res.complete = False
            res.note = f"n={n}: {exc}"
            break
    return res


def find_asymmetric_labeled(n: int, k: int, limit: int | None = None) -> tuple[Hypergraph | None, int, int]:
    """Sweep labeled k-graphs on n vertices in mask order until one is asymmetric.

    Returns (witness or None, labeled graphs examined, engine calls).  A
    graph with two twin vertices is rejected without calling the engine.
    """
    ksets = list(combinations(range(n), k))
    total = 1 << len(ksets)
    if limit is not None:
        total = min(total, limit)
    vbits = [0] * n
    for j, e in enumerate(ksets):
        for v in e:
            vbits[v] |= 1 << j
    engine = 0
    for mask in range(total):
        incs = [mask & b for b in vbits]
        if len(set(incs)) < n:
            continue
        engine += 1
        h = Hypergraph(n, [ksets[j] for j in range(len(ksets)) if mask >> j & 1])
        if is_asymmetric(h):
            return h, mask + 1, engine
    return None, total, engine


def lemma1_lower_bound(k: int) -> VerificationReport:
    """Every k-graph on k+1 vertices is symmetric (k >= 3).

    Checked on the complement side: the set complement of a k-graph on
    k+1 vertices is a 1-graph with the same automorphisms, so all 2^(k+1)
    labeled families of singletons are examined.
    """
    if k < 3:
        raise ValueError("the bound is stated for k >= 3")
    t0 = time.perf_counter()
    n = k + 1
    rep = VerificationReport(f"lower-bound(k={k})", HOLDS)
    for mask in range(1 << n):
        g = Hypergraph(n, [(v,) for v in range(n) if mask >> v & 1])
        rep.subgraphs_examined += 1
        if twin_pair(g) is not None:
            continue
        rep.engine_calls += 1
        if is_asymmetric(g):
            rep.verdict = FAILS
            rep.details["counterexample"] = set_complement(g).edges
            break
    rep.details["labeled_edge_sets"] = 1 << n
    rep.elapsed = time.perf_counter() - t0
    return rep


# -- oriented graphs --------------------------------------------------------

TAIL, HEAD = 1, 2


@dataclass(frozen=True)
class OrientedGraph:
    n_vertices: int
    arcs: frozenset[tuple[int, int]]

    def __init__(self, n_vertices: int, arcs=()):
        arcs = frozenset((int(u), int(v)) for u, v in arcs)
        for u, v in arcs:
            if not (0 <= u < n_vertices and 0 <= v < n_vertices):
                raise ValueError(f"arc {(u, v)} out of range")
            if u == v:
                raise ValueError("loops are not allowed")
            if (v, u) in arcs:
                raise ValueError(f"opposite arcs {(u, v)} and {(v, u)}")
        object.__setattr__(self, "n_vertices", n_vertices)
        object.__setattr__(self, "arcs", arcs)

    def structure(self) -> IncidenceStructure:
        return IncidenceStructure(self.n_vertices, [[(u, TAIL), (v, HEAD)] for u, v in sorted(self.arcs)])

    def delete(self, x: int) -> "OrientedGraph":
        keep = [v for v in range(self.n_vertices) if v != x]
        idx = {v: i for i, v in enumerate(keep)}
        return OrientedGraph(len(keep), [(idx[u], idx[v]) for u, v in self.arcs if x not in (u, v)])

    def is_acyclic(self) -> bool:
        indeg = [0] * self.n_vertices
        out: dict[int, list[int]] = {v: [] for v in range(self.n_vertices)}
        for u, v in self.arcs:
            indeg[v] += 1
            out[u].append(v)
        stack = [v for v in range(self.n_vertices) if indeg[v] == 0]
        seen = 0
        while stack:
            u = stack.pop()
            seen += 1
            for v in out[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    stack.append(v)
        return seen == self.n_vertices


def oriented_aut_order(g: OrientedGraph) -> int:
    return group_of_structure(g.structure()).order


def oriented_is_asymmetric(g: OrientedGraph) -> bool:
    return oriented_aut_order(g) == 1


def oriented_certificate(g: OrientedGraph) -> tuple:
    cert, _ = canonical_labeling(g.structure())
    return (g.n_vertices, cert)


def enumerate_oriented_graphs(n: int, budget: int = DEFAULT_CLASS_BUDGET) -> Iterator[OrientedGraph]:
    """One representative per isomorphism class of oriented graphs on n vertices."""
    pairs = list(combinations(range(n), 2))

    def extend(g: OrientedGraph):
        for u, v in pairs:
            if (u, v) not in g.arcs and (v, u) not in g.arcs:
                yield OrientedGraph(n, g.arcs | {(u, v)})
                yield OrientedGraph(n, g.arcs | {(v, u)})

    levels = [[OrientedGraph(n)]]
    seen = 1
    for m in range(len(pairs)):
        found: dict = {}
        for g in levels[m]:
            for new in extend(g):
                c = oriented_certificate(new)
                if c not in found:
                    found[c] = new
                    seen += 1
                    if seen > budget:
                        raise EnumerationBudgetExceeded(budget)
        levels.append([found[c] for c in sorted(found)])
    for level in levels:
        yield from level


@dataclass
class Conjecture1Report:
    n_max: int
    per_n: dict[int, dict[str, int]] = field(default_factory=dict)
    critical: list[OrientedGraph] = field(default_factory=list)
    complete: bool = True

    @property
    def cycle_filter_consistent(self) -> bool:
        return all(not g.is_acyclic() for g in self.critical)

    def to_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "per_n": {str(n): self.per_n[n] for n in sorted(self.per_n)},
            "critical": [sorted(g.arcs) for g in self.critical],
            "cycle_filter_consistent": self.cycle_filter_consistent,
            "complete": self.complete,
            "regime": "exhaustive exploration (not a proof beyond n_max)",
        }

    def to_text(self) -> str:
        lines = [f"{'n':>3}  {'classes':>8}  {'asymmetric':>10}  {'acyclic-asym':>12}  {'critical':>8}"]
        for n in sorted(self.per_n):
            r = self.per_n[n]
            lines.append(f"{n:>3}  {r['classes']:>8}  {r['asymmetric']:>10}  "
                         f"{r['acyclic_asymmetric']:>12}  {r['critical']:>8}")
        if self.critical:
            for g in self.critical:
                lines.append(f"critical asymmetric oriented graph: n={g.n_vertices} arcs={sorted(g.arcs)}")
        else:
            lines.append("no critical asymmetric oriented graph found")
        lines.append(f"directed-cycle cross-check: {'consistent' if self.cycle_filter_consistent else 'VIOLATED'}")
        return "\n".join(lines) + "\n"


def explore_conjecture1(n_max: int, budget: int = DEFAULT_CLASS_BUDGET) -> Conjecture1Report:
    """Look for asymmetric oriented graphs where every vertex deletion breaks asymmetry.

    Every asymmetric class with at least two vertices is tested; the
    acyclicity of each critical graph found is recorded as a cross-check
    (a critical one must contain a directed cycle).
    """
    rep = Conjecture1Report(n_max)
    for n in range(2, n_max + 1):
        row = {"classes": 0, "asymmetric": 0, "acyclic_asymmetric": 0, "critical": 0}
        try:
            for g in enumerate_oriented_graphs(n, budget):
                row["classes"] += 1
                if not oriented_is_asymmetric(g):
                    continue
                row["asymmetric"] += 1
                if g.is_acyclic():
                    row["acyclic_asymmetric"] += 1
                if all(not oriented_is_asymmetric(g.delete(x)) for x in range(n)):
                    row["critical"] += 1
                    rep.critical.append(g)
        except EnumerationBudgetExceeded:
            rep.complete = False
            rep.per_n[n] = row
            break
        rep.per_n[n] = row
    return rep
