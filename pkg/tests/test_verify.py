import random
from itertools import combinations

import pytest

from asymhyper.autsearch import find_involution, is_asymmetric
from asymhyper.constructions import (build_Gk, build_Gk_star, build_Gkt, build_Gkt_circ,
                                     build_Gks, build_small_asym, build_T, build_X1)
from asymhyper.hypercore import (Hypergraph, SubgraphSelector, complete, induced_subhypergraph,
                                 is_automorphism, subgraph)
from asymhyper.oracles import backtrack_automorphisms, brute_force_automorphisms
from asymhyper.verify import (BUDGET, FAILS, HOLDS, INVOLUTION, STRONG, Regime,
                              _sample_selectors, brute_or_backtrack, lemma3_shift_structure,
                              recheck_witness, verify_minimal_asymmetric,
                              verify_minimal_involution_free, verify_strongly_minimal)

from conftest import random_hypergraph


def _oracle_auts(h):
    return brute_force_automorphisms(h) if h.n_vertices <= 8 else list(backtrack_automorphisms(h))


def _has_inv(auts):
    return any(_is_inv(p) for p in auts)


def _is_inv(p):
    return any(p[i] != i for i in range(len(p))) and all(p[p[i]] == i for i in range(len(p)))


def unreduced(h, prop):
    """Every vertex subset of size >= 2 with every edge subset inside it.

    Uses the backtracking oracle lazily: stop at the first non-identity
    automorphism (or involution) of each subgraph.
    """
    if len(_oracle_auts(h)) != 1:
        return FAILS
    n = h.n_vertices
    for size in range(2, n + 1):
        for s in combinations(range(n), size):
            inside = [j for j, e in enumerate(h.edges) if set(e) <= set(s)]
            for r in range(len(inside) + 1):
                for ids in combinations(inside, r):
                    sel = SubgraphSelector(s, ids)
                    if sel.is_full(h):
                        continue
                    auts = backtrack_automorphisms(subgraph(h, sel))
                    if prop == STRONG:
                        ok = any(any(p[i] != i for i in range(len(p))) for p in auts)
                    else:
                        ok = any(_is_inv(p) for p in auts)
                    if not ok:
                        return FAILS
    return HOLDS


def _asymmetric_samples(seed, count):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        h = random_hypergraph(rng, n_max=8, m_max=7, sizes=(2, 3, 4))
        if h.n_vertices >= 5 and is_asymmetric(h):
            out.append(h)
    return out


REDUCTION_CASES = ([build_X1(), build_small_asym(4), build_Gkt_circ(3, 1), build_Gk_star(4),
                    build_Gk_star(5)]
                   + _asymmetric_samples(5, 8))


@pytest.mark.parametrize("h", REDUCTION_CASES)
@pytest.mark.parametrize("prop", [STRONG, INVOLUTION])
def test_reduction_matches_unreduced_enumeration(h, prop):
    fn = verify_strongly_minimal if prop == STRONG else verify_minimal_involution_free
    assert fn(h).verdict == unreduced(h, prop)


@pytest.mark.parametrize("h", [build_Gkt_circ(4, 2), build_Gkt_circ(4, 3), build_X1(),
                               build_Gkt_circ(3, 2)])
def test_prefilter_does_not_change_reports(h):
    for fn in (verify_strongly_minimal, verify_minimal_involution_free):
        on, off = fn(h), fn(h, prefilter=False)
        assert on.verdict == off.verdict
        assert on.witness == off.witness
        assert on.subgraphs_examined == off.subgraphs_examined
        assert off.engine_calls >= on.engine_calls


def test_star_graph_involution_free_without_prefilter():
    h = build_Gk_star(6)
    assert verify_minimal_involution_free(h, prefilter=False).verdict == HOLDS


def test_reports_do_not_depend_on_worker_count():
    h = build_Gkt_circ(4, 3)
    one = verify_strongly_minimal(h, workers=1)
    two = verify_strongly_minimal(h, workers=2)
    assert one.to_json() == two.to_json()
    g = build_Gks(6, 0).hypergraph
    reg = Regime.sampled(200, 99)
    assert (verify_minimal_involution_free(g, reg, workers=1).to_json()
            == verify_minimal_involution_free(g, reg, workers=2).to_json())


def test_sampling_is_seeded():
    h = build_Gks(6, 0).hypergraph
    a = _sample_selectors(h, 50, 1)
    assert a == _sample_selectors(h, 50, 1)
    assert a != _sample_selectors(h, 50, 2)
    for sel in a:
        assert sel.edge_subset and not sel.is_full(h)
        subgraph(h, sel)


def test_regime_validation():
    with pytest.raises(ValueError):
        Regime("sampled", trials=10)
    with pytest.raises(ValueError):
        Regime("random")
    assert str(Regime.sampled(10, 3)) == "sampled(trials=10, seed=3)"
    rep = verify_minimal_involution_free(build_Gks(6, 0).hypergraph, Regime.sampled(5, 3))
    assert rep.to_dict()["regime"] == {"kind": "sampled", "trials": 5, "seed": 3}


def test_exhaustive_refuses_large_instances():
    rep = verify_minimal_involution_free(build_Gks(6, 0).hypergraph)
    assert rep.verdict == BUDGET
    assert "sampled" in rep.details["reason"]


def test_failure_witnesses_recheck():
    h = build_X1()
    rep = verify_strongly_minimal(h)
    assert rep.verdict == FAILS
    assert recheck_witness(h, rep)
    sub = subgraph(h, rep.witness)
    assert len(brute_force_automorphisms(sub)) == 1

    g = build_Gk(6)
    rep = verify_strongly_minimal(g)
    assert rep.verdict == FAILS and rep.witness_permutation is not None
    assert recheck_witness(g, rep)
    assert rep.witness_permutation.cycle_notation(g.labels).startswith("(v_1 v_11)")


def test_single_edge_fails_the_precondition():
    rep = verify_strongly_minimal(Hypergraph(4, [(0, 1, 2, 3)]))
    assert rep.verdict == FAILS and rep.details["reason"] == "not asymmetric"


def test_minimal_asymmetric():
    assert verify_minimal_asymmetric(build_X1()).verdict == HOLDS
    rep = verify_minimal_asymmetric(build_Gk(6))
    assert rep.verdict == FAILS and rep.witness_permutation is not None
    assert is_automorphism(build_Gk(6), rep.witness_permutation)
    assert verify_minimal_asymmetric(complete(5, 4)).verdict == FAILS
    # the spider with legs 1, 2, 4 contains the one with legs 1, 2, 3
    spider = build_T(8)
    rep = verify_minimal_asymmetric(spider)
    assert rep.verdict == FAILS and recheck_witness(spider, rep)
    assert len(rep.witness.vertex_subset) == 7


@pytest.mark.parametrize("h", [build_Gkt_circ(3, 1), build_Gk_star(4), build_Gk_star(5)])
def test_strong_implies_minimal(h):
    assert verify_strongly_minimal(h).holds
    assert verify_minimal_asymmetric(h).holds


@pytest.mark.parametrize("t", [1, 2, 3])
def test_chain_without_x_has_reflections(t):
    # G°_{3,t} - x is G_{3,t}; its reflections are involutions for every t
    h = build_Gkt_circ(3, t)
    x = h.vertex("x")
    sub = induced_subhypergraph(h, [v for v in range(h.n_vertices) if v != x])
    assert sub == build_Gkt(3, t)
    auts = _oracle_auts(sub)
    assert len(auts) == 6 * t
    assert _has_inv(auts)
    assert find_involution(sub) is not None
    assert verify_minimal_involution_free(h).verdict == HOLDS


def test_lemma3_reports_true_group_at_k3():
    rep = lemma3_shift_structure(3, 1)
    assert rep.details["asserted"] is False
    assert rep.details["aut_order"] == rep.details["oracle_order"] == 6
    assert rep.verdict == HOLDS


def test_lemma3_counterexample_witness_rechecks():
    rep = lemma3_shift_structure(4, 2)
    d = rep.details
    assert d["item2_holds"] is True
    h = build_Gkt(4, 2)
    p = rep.witness_permutation
    assert p is not None and is_automorphism(h, p)
    ids = d["item3_counterexample_edges"]
    sub = subgraph(h, SubgraphSelector(range(h.n_vertices), ids))
    e1 = set(h.edges[0])
    auts = list(backtrack_automorphisms(sub))
    assert len(auts) > 1
    assert not any({q[v] for v in e1} == e1 for q in auts if any(q[i] != i for i in range(len(q))))
    assert d["item3_edge_reading_holds"] is True


def test_brute_or_backtrack_switches():
    small = Hypergraph(3, [(0, 1)])
    assert len(brute_or_backtrack(small)) == 2
    big = build_Gk(4)
    assert len(brute_or_backtrack(big)) == 2
