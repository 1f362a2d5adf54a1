from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from asymhyper.hypercore import (Hypergraph, HypergraphError, Permutation, SubgraphSelector,
                                 apply, complete, connected_components, degree,
                                 extend_to_padding, induced_subhypergraph, is_automorphism,
                                 pad_two, set_complement, subgraph, twin_pair)


@st.composite
def hypergraphs(draw, n_max=7):
    n = draw(st.integers(1, n_max))
    subsets = st.frozensets(st.integers(0, n - 1), min_size=1, max_size=n)
    edges = draw(st.sets(subsets, max_size=8))
    return Hypergraph(n, [sorted(e) for e in edges])


@st.composite
def perms(draw, n):
    return Permutation(draw(st.permutations(range(n))))


def test_edges_are_normalised_and_keep_order():
    h = Hypergraph(4, [(3, 1), (2, 0, 1)])
    assert h.edges == ((1, 3), (0, 1, 2))
    assert h.edge_index([1, 3]) == 0


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 5)], [(0, 1), (1, 0)], [(-1, 2)]])
def test_bad_edges_rejected(edges):
    with pytest.raises(HypergraphError):
        Hypergraph(4, edges)


def test_labels_validated_and_looked_up():
    h = Hypergraph(3, [(0, 1)], {2: "x"})
    assert h.label(2) == "x" and h.label(0) == "0"
    assert h.vertex("x") == 2
    with pytest.raises(HypergraphError):
        Hypergraph(2, [], {5: "y"})


def test_degree_and_uniformity():
    h = Hypergraph(4, [(0, 1), (0, 2), (0, 3)])
    assert degree(h, 0) == 3 and degree(h, 3) == 1
    assert h.is_uniform(2) and not h.is_uniform(3)
    with pytest.raises(HypergraphError):
        degree(h, 4)


def test_permutation_basics():
    p = Permutation.from_cycles(5, [(0, 1, 2)])
    q = Permutation.from_cycles(5, [(3, 4)])
    assert (p * p * p).is_identity()
    assert (p * p.inverse()).is_identity()
    assert q.is_involution() and not p.is_involution()
    assert (p * q)(3) == 4
    assert p.cycle_notation({0: "a", 1: "b", 2: "c"}) == "(a b c)"
    assert Permutation.identity(3).cycle_notation() == "()"
    with pytest.raises(HypergraphError):
        Permutation([0, 0, 1])


@given(st.permutations(range(6)), st.permutations(range(6)), st.permutations(range(6)))
def test_permutation_group_laws(a, b, c):
    p, q, r = Permutation(a), Permutation(b), Permutation(c)
    assert (p * q) * r == p * (q * r)
    assert (p * q).inverse() == q.inverse() * p.inverse()
    for v in range(6):
        assert (p * q)(v) == p(q(v))


@given(hypergraphs())
def test_set_complement_is_an_involution(h):
    assert set_complement(set_complement(h)) == h


@given(hypergraphs(), st.data())
def test_automorphisms_survive_complement(h, data):
    p = data.draw(perms(h.n_vertices))
    assert is_automorphism(h, p) == is_automorphism(set_complement(h), p)


@given(hypergraphs(), st.data())
def test_apply_and_is_automorphism_agree(h, data):
    p = data.draw(perms(h.n_vertices))
    assert is_automorphism(h, p) == (apply(h, p) == h)


def test_is_automorphism_length_mismatch():
    with pytest.raises(HypergraphError):
        is_automorphism(Hypergraph(3), Permutation.identity(4))


def test_induced_and_selected_subgraphs():
    h = Hypergraph(5, [(0, 1), (1, 2), (2, 3), (3, 4)], {v: f"v{v}" for v in range(5)})
    ind = induced_subhypergraph(h, [1, 2, 4])
    assert ind.n_vertices == 3 and ind.edges == ((0, 1),)
    assert ind.labels == {0: "v1", 1: "v2", 2: "v4"}
    sub = subgraph(h, SubgraphSelector([1, 2, 3], [2]))
    assert sub.edges == ((1, 2),)
    with pytest.raises(HypergraphError):
        subgraph(h, SubgraphSelector([1, 2], [2]))


def test_pad_two_layout():
    h = Hypergraph(3, [(0, 1), (1, 2)])
    p = pad_two(h)
    assert p.n_vertices == 7
    assert p.edges == ((0, 1, 3, 4), (1, 2, 5, 6))
    assert all(degree(p, v) == 1 for v in range(3, 7))


def test_extend_to_padding_requires_an_automorphism():
    h = Hypergraph(3, [(0, 1), (1, 2)])
    refl = Permutation([2, 1, 0])
    lifted = extend_to_padding(h, refl)
    assert is_automorphism(pad_two(h), lifted)
    with pytest.raises(HypergraphError):
        extend_to_padding(h, Permutation([1, 0, 2]))


def test_components_and_complete():
    h = Hypergraph(5, [(0, 1), (3, 4)])
    assert connected_components(h) == [[0, 1], [2], [3, 4]]
    assert complete(5, 3).n_edges == 10


def test_twin_pair():
    h = Hypergraph(4, [(0, 1, 2), (0, 1, 3)])
    assert twin_pair(h) == (0, 1)
    assert twin_pair(h, [0, 1, 0, 0]) is None
    path = Hypergraph(3, [(0, 1), (1, 2)])
    assert twin_pair(path) is None


@given(hypergraphs())
def test_twin_swap_is_an_automorphism(h):
    pair = twin_pair(h)
    if pair is not None:
        a, b = pair
        assert is_automorphism(h, Permutation.from_cycles(h.n_vertices, [(a, b)]))


def test_k_sets_only_when_asked():
    h = complete(4, 2)
    assert sorted(h.edges) == list(combinations(range(4), 2))
