import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sdmatch.core import Matching, WeightedEdge, matching_violations
from sdmatch.dpmerge import decompose_union, merge_matchings

from support import brute_max_matching, rand_matching_pair


def m(*triples):
    return Matching.of(WeightedEdge(u, v, w) for u, v, w in triples)


def test_path_middle_edge_wins():
    merged = merge_matchings(m((0, 1, 1.0), (2, 3, 1.0)), m((1, 2, 5.0)))
    assert merged.weight == 5.0
    assert sorted(e.key for e in merged.edges) == [(1, 2, 5.0)]


def test_path_outer_edges_win():
    merged = merge_matchings(m((0, 1, 3.0), (2, 3, 3.0)), m((1, 2, 5.0)))
    assert merged.weight == 6.0


def test_four_cycle():
    merged = merge_matchings(m((0, 1, 3.0), (2, 3, 3.0)), m((1, 2, 2.0), (0, 3, 2.0)))
    assert merged.weight == 6.0


def test_parallel_pair_keeps_heavier_copy():
    # same endpoints on both sides: a 2-cycle in the union
    merged = merge_matchings(m((0, 1, 2.0)), m((0, 1, 7.0)))
    assert sorted(e.key for e in merged.edges) == [(0, 1, 7.0)]


def test_empty_inputs():
    assert merge_matchings(Matching(), Matching()).weight == 0.0
    only = m((0, 1, 4.0))
    assert merge_matchings(only, Matching()).edges == only.edges


def test_tie_prefers_fewer_edges():
    # 1-5-1 path again but with ends summing to the middle: 2.5+2.5 vs 5
    merged = merge_matchings(m((0, 1, 2.5), (2, 3, 2.5)), m((1, 2, 5.0)))
    assert merged.weight == 5.0
    assert len(merged.edges) == 1


def test_rejects_non_matching_input():
    bad = Matching.of([WeightedEdge(0, 1, 1.0), WeightedEdge(1, 2, 1.0)])
    with pytest.raises(ValueError):
        merge_matchings(bad, Matching())


def test_rejects_shared_edges():
    e = WeightedEdge(0, 1, 1.0)
    with pytest.raises(ValueError):
        merge_matchings(Matching.of([e]), Matching.of([e]))


def test_decomposition_shapes():
    dec = decompose_union(m((0, 1, 1.0), (2, 3, 1.0)), m((1, 2, 1.0), (0, 3, 1.0)))
    assert [c.kind for c in dec.components] == ["cycle"]
    dec2 = decompose_union(m((0, 1, 1.0)), m((1, 2, 1.0)))
    assert [c.kind for c in dec2.components] == ["path"]


@settings(max_examples=200)
@given(st.integers(0, 2**32))
def test_matches_brute_force_and_dominates_inputs(seed):
    rng = random.Random(seed)
    m1_edges, m2_edges = rand_matching_pair(rng)
    m1, m2 = Matching.of(m1_edges), Matching.of(m2_edges)
    merged = merge_matchings(m1, m2)
    assert matching_violations(merged) == []
    union = list(m1_edges) + list(m2_edges)
    assert merged.weight == pytest.approx(brute_max_matching(union))
    assert merged.weight >= max(m1.weight, m2.weight) - 1e-9


def test_determinism():
    rng = random.Random(21)
    m1_edges, m2_edges = rand_matching_pair(rng)
    a = merge_matchings(Matching.of(m1_edges), Matching.of(m2_edges))
    b = merge_matchings(Matching.of(m2_edges), Matching.of(m1_edges))
    # merging is symmetric in everything but tie-breaks; weights must agree
    assert a.weight == b.weight
