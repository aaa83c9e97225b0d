import numpy as np
import pytest
from sklearn.base import clone

from dbst import BoundedDegreeSpanningTree, gen_random


def _points(n=40, seed=5):
    inst = gen_random(n, "l2", seed=seed)
    return np.asarray(inst.points)


def test_fit_points_degree_cap():
    est = BoundedDegreeSpanningTree(degree_bound=3, algorithm="flow").fit(_points())
    assert est.tree_edges_.shape == (39, 2)
    assert est.degrees().max() <= 3
    assert est.tree_weight_ >= est.mst_weight_
    assert est.ratio_ >= 1.0
    if est.bound_ is not None:
        assert est.ratio_ <= est.bound_ + 1e-9


@pytest.mark.parametrize("algorithm", ["flow", "greedy", "treedp"])
def test_algorithms_respect_bound(algorithm):
    est = BoundedDegreeSpanningTree(degree_bound=3, algorithm=algorithm).fit(_points(seed=9))
    assert est.degrees().max() <= 3
    assert est.report_.meets_bounds


def test_precomputed_metric():
    pts = _points(12)
    dist = np.abs(pts[:, None, :] - pts[None, :, :]).sum(axis=2)
    est = BoundedDegreeSpanningTree(degree_bound=2, metric="precomputed").fit(dist)
    assert est.degrees().max() <= 2  # a Hamiltonian path
    assert est.graph_.shape == (12, 12)
    assert (est.graph_ != est.graph_.T).nnz == 0


def test_per_vertex_bounds():
    bounds = [2] * 20
    bounds[0] = 4
    est = BoundedDegreeSpanningTree(degree_bound=bounds).fit(_points(20, seed=2))
    degrees = est.degrees()
    assert degrees[0] <= 4 and degrees[1:].max() <= 2


def test_sklearn_protocol():
    est = BoundedDegreeSpanningTree(degree_bound=4, algorithm="treedp", metric="l1")
    params = est.get_params()
    assert params["degree_bound"] == 4 and params["metric"] == "l1"
    cloned = clone(est)
    assert cloned.get_params() == params
    est.set_params(algorithm="greedy")
    assert est.algorithm == "greedy"


def test_rejects_bad_inputs():
    with pytest.raises(ValueError):
        BoundedDegreeSpanningTree(algorithm="magic").fit(_points(5))
    with pytest.raises(ValueError):
        BoundedDegreeSpanningTree(metric="cosine").fit(_points(5))
    with pytest.raises(ValueError):
        BoundedDegreeSpanningTree(metric="precomputed").fit(_points(5))  # not square
    with pytest.raises(ValueError):
        BoundedDegreeSpanningTree(degree_bound=[2, 2]).fit(_points(5))


def test_graph_matches_edges():
    est = BoundedDegreeSpanningTree(degree_bound=3).fit(_points(15, seed=11))
    rows, cols = est.graph_.nonzero()
    got = {tuple(sorted((int(u), int(v)))) for u, v in zip(rows, cols)}
    assert got == {tuple(e) for e in est.tree_edges_.tolist()}


def test_fit_predict_edges():
    est = BoundedDegreeSpanningTree(degree_bound=3)
    edges = est.fit_predict_edges(_points(10, seed=13))
    assert edges.shape == (9, 2)
