import itertools
import random
from fractions import Fraction

import pytest

from dbst import (
    DegreeBounds,
    InfeasibleBoundsError,
    MetricInstance,
    SpanningTree,
    brute_dbst,
    brute_hamilton_path,
    gen_path,
    mst,
    tree_induced_instance,
    tree_weight,
)
from dbst._oracle import _all_sequences, _decode_batch, _decode_one

from conftest import random_int_instance, random_points_instance


def test_prufer_degree_law():
    # decoded degree equals occurrence count + 1
    rng = random.Random(1)
    for _ in range(100):
        n = rng.randint(3, 9)
        seq = [rng.randrange(n) for _ in range(n - 2)]
        edges = _decode_one(seq, n)
        tree = SpanningTree(n, edges)
        assert tree.is_spanning_tree()
        for v in range(n):
            assert tree.degree(v) == seq.count(v) + 1


def test_batch_decode_matches_scalar():
    import numpy as np

    for n in (3, 4, 5):
        seqs = _all_sequences(n)
        eu, ev = _decode_batch(seqs, n)
        for i in range(len(seqs)):
            scalar = sorted(tuple(sorted(e)) for e in _decode_one(list(seqs[i]), n))
            batch = sorted(
                tuple(sorted((int(a), int(b)))) for a, b in zip(eu[i], ev[i])
            )
            assert scalar == batch


def test_unconstrained_equals_mst():
    rng = random.Random(12)
    for _ in range(10):
        n = rng.randint(3, 7)
        inst = random_points_instance(n, rng)
        _t, w = brute_dbst(inst, DegreeBounds.uniform(n, n - 1))
        assert w == pytest.approx(tree_weight(mst(inst), inst))


def test_unit_star_bound_two():
    star = SpanningTree(4, [(0, 1), (0, 2), (0, 3)])
    inst = tree_induced_instance(star, 1)
    tree, w = brute_dbst(inst, DegreeBounds.uniform(4, 2))
    assert w == 4
    assert all(tree.degree(v) <= 2 for v in range(4))


def test_path_instance_forces_star():
    # 4 unit edges, bounds 1 everywhere except the hub: only the star fits
    tree, inst, bounds = gen_path(4)
    opt, w = brute_dbst(inst, bounds)
    assert w == 1 + 2 + 3 + 4 == 10
    assert w >= 2 * 4
    assert opt.degree(0) == 4


def test_infeasible_bounds_raise():
    star = SpanningTree(4, [(0, 1), (0, 2), (0, 3)])
    inst = tree_induced_instance(star, 1)
    with pytest.raises(InfeasibleBoundsError):
        brute_dbst(inst, DegreeBounds.uniform(4, 1))


def test_size_caps():
    inst = MetricInstance.from_points([(0, 0), (1, 1)], "l2")
    with pytest.raises(ValueError):
        brute_dbst(inst, DegreeBounds.uniform(2, 1))
    big = MetricInstance.from_points([(i, 0) for i in range(12)], "l2")
    with pytest.raises(ValueError):
        brute_hamilton_path(big)


def test_fraction_weights_exact():
    tree = SpanningTree(4, [(0, 1), (1, 2), (1, 3)])
    w = {(0, 1): Fraction(1, 3), (1, 2): Fraction(1, 3), (1, 3): Fraction(1, 3)}
    inst = tree_induced_instance(tree, w)
    _t, weight = brute_dbst(inst, DegreeBounds.uniform(4, 3))
    assert weight == Fraction(1)  # the inducing tree itself


def test_hamilton_collinear():
    inst = MetricInstance.from_points([(0, 0), (1, 0), (2, 0)], "l2")
    path, w = brute_hamilton_path(inst)
    assert w == pytest.approx(2.0)
    assert path in ([0, 1, 2], [2, 1, 0])


def test_hamilton_star_by_full_enumeration():
    # oracle vs direct enumeration of all 12 endpoint-distinct vertex orders
    star = SpanningTree(4, [(0, 1), (0, 2), (0, 3)])
    inst = tree_induced_instance(star, 1)
    best = min(
        sum(inst.weight(a, b) for a, b in zip(perm, perm[1:]))
        for perm in itertools.permutations(range(4))
    )
    _path, w = brute_hamilton_path(inst)
    assert w == best == 4


def test_hamilton_two_points():
    inst = MetricInstance.from_points([(0, 0), (3, 4)], "l2")
    path, w = brute_hamilton_path(inst)
    assert sorted(path) == [0, 1]
    assert w == 5.0


def test_hamilton_at_least_mst():
    rng = random.Random(77)
    for _ in range(10):
        n = rng.randint(3, 8)
        inst = random_points_instance(n, rng)
        _p, hw = brute_hamilton_path(inst)
        assert hw >= tree_weight(mst(inst), inst) - 1e-12


def test_hamilton_random_small_vs_enumeration():
    rng = random.Random(31)
    for _ in range(5):
        n = rng.randint(3, 6)
        inst = random_points_instance(n, rng)
        best = min(
            sum(inst.weight(a, b) for a, b in zip(perm, perm[1:]))
            for perm in itertools.permutations(range(n))
        )
        _p, w = brute_hamilton_path(inst)
        assert w == pytest.approx(best)
