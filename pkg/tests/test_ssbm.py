import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sdmatch.core import EdgeStream, WeightedEdge, bmatching_violations
from sdmatch.oracle import exact_mwbm
from sdmatch.ssbm import (
    SsbmState,
    run_ssbm,
    ssbm_finalize,
    ssbm_space_bound,
    ssbm_stream_edge,
)

from support import rand_instance


def star_trace_state():
    s = SsbmState(b=2, eps=0.0)
    for e in [WeightedEdge(0, 1, 10.0), WeightedEdge(0, 2, 8.0), WeightedEdge(0, 3, 9.0)]:
        assert ssbm_stream_edge(s, e)
    return s


def test_star_trace_slot_duals():
    s = star_trace_state()
    # v3's 9 lands in u's cheaper slot 2 (phi 8), gain 1
    assert s.slot_phi(0, 1) == 10.0
    assert s.slot_phi(0, 2) == 9.0
    assert s.stack[2].back_u == 1  # displaced the (0,2) entry


def test_star_trace_rejects_below_min_slot():
    s = star_trace_state()
    assert not ssbm_stream_edge(s, WeightedEdge(0, 4, 8.0))


def test_fresh_edge_always_pushes():
    s = SsbmState(b=1, eps=1.0)
    assert ssbm_stream_edge(s, WeightedEdge(5, 9, 0.001))


def test_star_trace_finalize():
    f = ssbm_finalize(star_trace_state())
    assert sorted(e.key for e in f.edges) == [(0, 1, 10.0), (0, 3, 9.0)]
    assert f.weight == 19.0  # exact optimum for b(u)=2 on this star


def test_finalize_empty_and_singleton():
    assert ssbm_finalize(SsbmState(b=1, eps=0.0)).edges == frozenset()
    s = SsbmState(b=1, eps=0.0)
    ssbm_stream_edge(s, WeightedEdge(0, 1, 3.0))
    assert ssbm_finalize(s).weight == 3.0


def test_triangle_all_fits_with_capacity_two():
    tri = [WeightedEdge(0, 1, 3.0), WeightedEdge(1, 2, 2.0), WeightedEdge(0, 2, 1.0)]
    f = run_ssbm(EdgeStream.from_edges(tri), b=2, eps=0.0)
    assert len(f.edges) == 3


def test_empty_stream():
    assert run_ssbm(EdgeStream.from_edges([]), b=3, eps=0.5).weight == 0.0


def test_capacity_validation():
    with pytest.raises(ValueError):
        run_ssbm(EdgeStream.from_edges([WeightedEdge(0, 1, 1.0)]), b=0, eps=0.0)
    with pytest.raises(ValueError):
        SsbmState(b=1, eps=-1.0)


def test_reuse_rejected():
    s = SsbmState(b=1, eps=0.0)
    ssbm_finalize(s)
    with pytest.raises(RuntimeError):
        ssbm_stream_edge(s, WeightedEdge(0, 1, 1.0))
    with pytest.raises(RuntimeError):
        ssbm_finalize(s)


@settings(max_examples=80)
@given(st.integers(0, 2**32), st.sampled_from([0.0, 0.001, 0.5, 1.0]))
def test_output_respects_capacities(seed, eps):
    rng = random.Random(seed)
    edges = rand_instance(rng, n_max=9, m_max=16)
    verts = {x for e in edges for x in (e.u, e.v)}
    b = {v: rng.randint(1, 3) for v in verts}
    f = run_ssbm(EdgeStream.from_edges(edges), b=b, eps=eps)
    assert bmatching_violations(f) == []


@settings(max_examples=60)
@given(st.integers(0, 2**32), st.sampled_from([0.0, 0.001, 0.5]))
def test_approximation_vs_oracle(seed, eps):
    rng = random.Random(seed)
    edges = rand_instance(rng, n_max=8, m_max=12)
    verts = {x for e in edges for x in (e.u, e.v)}
    b = {v: rng.randint(1, 3) for v in verts}
    f = run_ssbm(EdgeStream.from_edges(edges), b=b, eps=eps)
    assert (2 + eps) * f.weight >= exact_mwbm(edges, b) - 1e-9


@settings(max_examples=40)
@given(st.integers(0, 2**32))
def test_back_pointers_reference_earlier_entries(seed):
    rng = random.Random(seed)
    edges = rand_instance(rng, n_max=8, m_max=14)
    s = SsbmState(b=2, eps=0.001)
    for e in edges:
        ssbm_stream_edge(s, e)
    for idx, entry in enumerate(s.stack):
        for back in (entry.back_u, entry.back_v):
            assert back is None or back < idx


@settings(max_examples=40)
@given(st.integers(0, 2**32))
def test_incidence_within_space_bound(seed):
    eps = 0.5
    rng = random.Random(seed)
    edges = rand_instance(rng, n_max=8, m_max=14)
    s = SsbmState(b=2, eps=eps)
    for e in edges:
        ssbm_stream_edge(s, e)
    wmax = max(e.w for e in edges)
    wmin = min(e.w for e in edges)
    per_slot = ssbm_space_bound(eps, wmax / wmin)
    for v, count in s.incidence.items():
        assert count <= s.capacity(v) * per_slot


def test_determinism():
    rng = random.Random(4)
    edges = rand_instance(rng, n_max=9, m_max=16)
    a = run_ssbm(EdgeStream.from_edges(edges), b=2, eps=0.001)
    b = run_ssbm(EdgeStream.from_edges(edges), b=2, eps=0.001)
    assert sorted(e.key for e in a.edges) == sorted(e.key for e in b.edges)
