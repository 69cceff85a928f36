from collections import Counter

import pytest

from sdmatch.core import read_edge_list
from sdmatch.gen import (
    INITIATORS,
    RmatParams,
    WeightDistribution,
    generate_rmat,
    generate_rmat_edges,
)


def er(scale, seed, factor=8):
    return RmatParams(scale=scale, edge_factor=factor, initiator=INITIATORS["er"], seed=seed)


def uniform(seed, lo=1.0, hi=float(2**19)):
    return WeightDistribution(kind="uniform", lo=lo, hi=hi, seed=seed)


def max_degree(edges):
    deg = Counter()
    for e in edges:
        deg[e.u] += 1
        deg[e.v] += 1
    return max(deg.values(), default=0)


def test_param_validation():
    with pytest.raises(ValueError):
        RmatParams(scale=0, edge_factor=8, initiator=INITIATORS["er"], seed=1)
    with pytest.raises(ValueError):
        RmatParams(scale=4, edge_factor=8, initiator=(0.5, 0.5, 0.5, 0.5), seed=1)
    with pytest.raises(ValueError):
        WeightDistribution(kind="uniform", lo=2.0, hi=1.0, seed=1)
    with pytest.raises(ValueError):
        WeightDistribution(kind="pareto", lo=1.0, hi=2.0, seed=1)


def test_edges_are_simple_and_in_range():
    edges = generate_rmat_edges(er(8, 5), uniform(6, lo=2.0, hi=9.0))
    n = 2**8
    seen = set()
    for e in edges:
        assert 0 <= e.u < n and 0 <= e.v < n and e.u != e.v
        assert 2.0 <= e.w <= 9.0
        assert e.pair not in seen
        seen.add(e.pair)


def test_exponential_weights_clamped():
    dist = WeightDistribution(kind="exponential", lo=1.0, hi=50.0, seed=9)
    edges = generate_rmat_edges(er(8, 5), dist)
    assert all(1.0 <= e.w <= 50.0 for e in edges)
    # the mean sits in the lower part of the range, unlike uniform's midpoint
    mean = sum(e.w for e in edges) / len(edges)
    assert mean < 25.0


def test_degenerate_weight_range():
    dist = WeightDistribution(kind="uniform", lo=3.0, hi=3.0, seed=1)
    edges = generate_rmat_edges(er(6, 2, factor=2), dist)
    assert edges and all(e.w == 3.0 for e in edges)


def test_same_seed_same_edges():
    a = generate_rmat_edges(er(9, 11), uniform(12))
    b = generate_rmat_edges(er(9, 11), uniform(12))
    assert a == b


def test_file_output_deterministic_and_parseable(tmp_path):
    p1, p2 = str(tmp_path / "a.txt"), str(tmp_path / "b.txt")
    s1 = generate_rmat(er(7, 3), uniform(4), p1)
    generate_rmat(er(7, 3), uniform(4), p2)
    assert open(p1, "rb").read() == open(p2, "rb").read()
    edges, declared_n, loops = read_edge_list(p1)
    assert declared_n == 2**7 and loops == 0
    assert len(edges) == s1.m
    assert open(p1).readline().split() == [str(2**7), str(s1.m)]


def test_tiny_scale_reproducible(tmp_path):
    p = str(tmp_path / "t.txt")
    params = RmatParams(scale=1, edge_factor=1, initiator=INITIATORS["er"], seed=42)
    generate_rmat(params, uniform(43), p)
    first = open(p, "rb").read()
    generate_rmat(params, uniform(43), p)
    assert open(p, "rb").read() == first


def test_er_degree_statistics_in_expected_window():
    """Uniform-initiator scale-10 instances land near m=8185, max degree 28;
    allow 15% either way for generator differences."""
    edges = generate_rmat_edges(er(10, 1), uniform(2))
    assert 0.85 * 8185 <= len(edges) <= 1.15 * 8185
    assert 0.85 * 28 <= max_degree(edges) <= 1.15 * 28


def test_skewed_initiator_concentrates_degrees():
    skew = RmatParams(scale=10, edge_factor=8, initiator=INITIATORS["rmat_b"], seed=1)
    hub = max_degree(generate_rmat_edges(skew, uniform(2)))
    flat = max_degree(generate_rmat_edges(er(10, 1), uniform(2)))
    assert hub > 5 * flat
