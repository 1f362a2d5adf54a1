"""Reference automorphism counts that share no code with the refinement engine."""

from __future__ import annotations

from itertools import permutations
from typing import Iterator

from .hypercore import Hypergraph


def brute_force_automorphisms(h: Hypergraph) -> list[tuple[int, ...]]:
    """All automorphisms, by trying every one of the n! permutations."""
    edges = h.edge_set
    out = []
    for p in permutations(range(h.n_vertices)):
        if all(tuple(sorted(p[v] for v in e)) in edges for e in h.edges):
            out.append(p)
    return out


def backtrack_automorphisms(h: Hypergraph) -> Iterator[tuple[int, ...]]:
    """All automorphisms, by assigning images vertex by vertex.

    Degrees must match, and the images of the already placed vertices of
    every edge must lie together in some edge of the same size; once an
    edge is fully placed this means its image is an edge.  Exponential in
    general, but fine for the small groups that show up here.
    """
    n = h.n_vertices
    deg = h.degrees()
    inc = h.incidence_masks
    by_size: dict[int, int] = {}
    for j, e in enumerate(h.edges):
        by_size[len(e)] = by_size.get(len(e), 0) | (1 << j)
    # place vertices edge by edge so that constraints bite early
    order: list[int] = []
    seen: set[int] = set()
    for e in h.edges:
        for v in e:
            if v not in seen:
                seen.add(v)
                order.append(v)
    order += [v for v in range(n) if v not in seen]
    step = {v: i for i, v in enumerate(order)}
    # per step: edges through the vertex placed at that step, with their earlier members
    touching: list[list[tuple[int, list[int]]]] = [[] for _ in range(n)]
    for e in h.edges:
        for v in e:
            earlier = [u for u in e if step[u] < step[v]]
            touching[step[v]].append((by_size[len(e)], earlier))
    img = [-1] * n
    used = [False] * n

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(img)
            return
        v = order[i]
        for w in range(n):
            if used[w] or deg[w] != deg[v]:
                continue
            ok = True
            for mask, earlier in touching[i]:
                m = mask & inc[w]
                for u in earlier:
                    m &= inc[img[u]]
                if not m:
                    ok = False
                    break
            if ok:
                img[v] = w
                used[w] = True
                yield from rec(i + 1)
                used[w] = False
                img[v] = -1

    yield from rec(0)
