import random
from fractions import Fraction

import pytest

from dbst import (
    DegreeBounds,
    SpanningTree,
    algorithm1,
    algorithm2,
    brute_dbst,
    build_network,
    flow_fraction,
    gen_kary,
    meets_bounds,
    min_cost_flow,
    mst,
    performance_bound,
    solve_optimal,
    tree_induced_instance,
    tree_weight,
    uniform_flow,
)
from dbst._heuristics import _select_smallest

from conftest import random_bounds, random_int_instance, random_points_instance, random_tree


def unit_star(n_leaves=3):
    tree = SpanningTree(n_leaves + 1, [(0, i) for i in range(1, n_leaves + 1)])
    return tree, tree_induced_instance(tree, 1)


# ---------------------------------------------------------------------------
# bound and uniform flow


def test_performance_bound_star_center():
    star = SpanningTree(7, [(0, i) for i in range(1, 7)])  # center degree 6
    bounds = DegreeBounds([4] + [2] * 6)
    assert performance_bound(star, bounds) == Fraction(3, 2)


def test_performance_bound_ternary_tree():
    tree, _ = gen_kary(4, 2)  # internal degree 4, root degree 3
    bounds = DegreeBounds.uniform(tree.n, 3)
    assert performance_bound(tree, bounds) == Fraction(3, 2)


def test_performance_bound_path_is_one():
    path = SpanningTree(5, [(i, i + 1) for i in range(4)])
    assert performance_bound(path, DegreeBounds.uniform(5, 2)) == 1
    assert flow_fraction(path, DegreeBounds.uniform(5, 2)) == 0


def test_performance_bound_clamps_at_one():
    star, _ = unit_star()
    # bound 5 > degree 3 everywhere: term above 1, clamps to ratio 1
    assert performance_bound(star, DegreeBounds.uniform(4, 5)) == 1


def test_performance_bound_requires_two():
    star, _ = unit_star()
    with pytest.raises(ValueError):
        performance_bound(star, DegreeBounds([2, 2, 2, 1]))


def test_uniform_flow_fraction_examples():
    big_star = SpanningTree(6, [(0, i) for i in range(1, 6)])
    bounds = DegreeBounds([3] + [2] * 5)
    uf = uniform_flow(big_star, bounds, root=0)
    assert uf.fraction == Fraction(2, 3)  # 1 - (3-2)/(5-2)

    path = SpanningTree(4, [(0, 1), (1, 2), (2, 3)])
    uf0 = uniform_flow(path, DegreeBounds.uniform(4, 2))
    assert uf0.fraction == 0
    assert uf0.cost(tree_induced_instance(path, 1)) == 0

    tern, tinst = gen_kary(4, 2)
    uft = uniform_flow(tern, DegreeBounds.uniform(tern.n, 3))
    assert uft.fraction == Fraction(1, 2)
    assert uft.cost(tinst) == Fraction(tern.n - 1, 2)


def test_uniform_flow_feasible_and_nonroot_legal():
    rng = random.Random(3)
    for _ in range(25):
        n = rng.randint(3, 15)
        tree = random_tree(n, rng)
        bounds = random_bounds(n, rng)
        uf = uniform_flow(tree, bounds)
        surplus = uf.surplus(tree)
        for v in range(n):
            assert surplus[v] >= tree.degree(v) - bounds[v]  # feasible
            if v != uf.root:
                assert surplus[v] <= tree.degree(v) - 1  # legal off the root


# ---------------------------------------------------------------------------
# linear-time selection


def test_select_smallest_matches_sorted():
    rng = random.Random(14)
    for _ in range(200):
        n = rng.randint(0, 40)
        items = [rng.randint(-50, 50) for _ in range(n)]
        k = rng.randint(0, n + 2)
        got = sorted(_select_smallest(items, k, {}))
        assert got == sorted(items)[: min(k, n)]


def test_select_smallest_handles_duplicates_and_sorted_input():
    assert sorted(_select_smallest([5, 5, 5, 5], 2, {})) == [5, 5]
    assert sorted(_select_smallest(list(range(100)), 10, {})) == list(range(10))
    assert sorted(_select_smallest(list(range(100, 0, -1)), 3, {})) == [1, 2, 3]


# ---------------------------------------------------------------------------
# the two linear algorithms


@pytest.mark.parametrize("solver", [algorithm1, algorithm2])
def test_identity_when_fraction_zero(solver):
    path = SpanningTree(5, [(i, i + 1) for i in range(4)])
    inst = tree_induced_instance(path, 1)
    out, report = solver(inst, path, DegreeBounds.uniform(5, 2))
    assert out == path
    assert report.ratio == 1 and report.flow_cost == 0 and report.fraction == 0


@pytest.mark.parametrize("solver", [algorithm1, algorithm2])
def test_star_reaches_the_optimum(solver):
    tree, inst = unit_star()
    bounds = DegreeBounds.uniform(4, 2)
    out, report = solver(inst, tree, bounds)
    assert meets_bounds(out, bounds)
    assert report.weight_out == 4  # brute-force optimum over the 16 trees
    assert report.weight_out <= performance_bound(tree, bounds) * report.weight_in


def test_algorithm2_star_recurrence_values():
    tree, inst = unit_star()
    bounds = DegreeBounds.uniform(4, 2)
    _out, report = algorithm2(inst, tree, bounds, root=0)
    # leaves carry no subtree cost; each offers a unit at marginal price 1;
    # the center needs one unit: restricted-network optimum 1
    assert report.flow_cost == 1
    cost = min_cost_flow(build_network(inst, tree, bounds)).cost(inst)
    assert report.flow_cost == cost


@pytest.mark.parametrize("solver", [algorithm1, algorithm2])
def test_ternary_depth3_within_ratio(solver):
    tree, inst = gen_kary(4, 3)
    bounds = DegreeBounds.uniform(tree.n, 3)
    out, report = solver(inst, tree, bounds)
    assert meets_bounds(out, bounds)
    assert report.weight_out <= Fraction(3, 2) * report.weight_in


@pytest.mark.parametrize("solver", [algorithm1, algorithm2])
def test_randomized_guarantee_tree_metrics(solver):
    rng = random.Random(55)
    for _ in range(40):
        n = rng.randint(3, 40)
        tree, inst = random_int_instance(n, rng)
        bounds = random_bounds(n, rng)
        out, report = solver(inst, tree, bounds)
        assert out.is_spanning_tree()
        assert meets_bounds(out, bounds)
        cap = performance_bound(tree, bounds)
        assert report.weight_out <= cap * report.weight_in
        assert report.weight_out == tree_weight(out, inst)


@pytest.mark.parametrize("solver", [algorithm1, algorithm2])
@pytest.mark.parametrize("norm", ["l1", "l2", "linf"])
def test_randomized_guarantee_geometric(solver, norm):
    rng = random.Random(56)
    for _ in range(10):
        n = rng.randint(5, 60)
        inst = random_points_instance(n, rng, norm)
        tree = mst(inst)
        bounds = random_bounds(n, rng, 2, 3)
        out, report = solver(inst, tree, bounds)
        assert meets_bounds(out, bounds)
        cap = performance_bound(tree, bounds)
        assert report.weight_out <= float(cap) * report.weight_in * (1 + 1e-9)


def test_cost_ordering_across_solvers():
    # min-cost flow <= tree-DP cost <= c * w(T); greedy rounding <= c * w(T)
    rng = random.Random(57)
    for _ in range(30):
        n = rng.randint(4, 8)
        tree, inst = random_int_instance(n, rng)
        bounds = random_bounds(n, rng)
        c = flow_fraction(tree, bounds)
        cap = c * tree_weight(tree, inst)
        opt_cost = min_cost_flow(build_network(inst, tree, bounds)).cost(inst)
        _o1, rep1 = algorithm1(inst, tree, bounds)
        _o2, rep2 = algorithm2(inst, tree, bounds)
        assert opt_cost <= rep2.flow_cost <= cap
        assert rep1.flow_cost <= cap
        assert opt_cost <= rep1.flow_cost


@pytest.mark.parametrize("solver", [algorithm1, algorithm2])
def test_nonzero_root_choice(solver):
    rng = random.Random(58)
    for _ in range(10):
        n = rng.randint(4, 20)
        tree, inst = random_int_instance(n, rng)
        bounds = random_bounds(n, rng)
        root = rng.randrange(n)
        out, report = solver(inst, tree, bounds, root=root)
        assert meets_bounds(out, bounds)
        assert report.weight_out <= performance_bound(tree, bounds) * report.weight_in


@pytest.mark.parametrize("solver", [algorithm1, algorithm2])
def test_heavy_multi_deficit_targets(solver):
    # spider with three big arms forces several adoptions at one target
    edges = [(0, i) for i in range(1, 9)]
    edges += [(1, 9), (1, 10), (1, 11), (2, 12), (2, 13)]
    tree = SpanningTree(14, edges)
    inst = tree_induced_instance(tree, 1)
    bounds = DegreeBounds.uniform(14, 3)
    out, report = solver(inst, tree, bounds)
    assert meets_bounds(out, bounds)
    assert out.is_spanning_tree()
    assert report.weight_out <= performance_bound(tree, bounds) * report.weight_in


@pytest.mark.parametrize("solver", [algorithm1, algorithm2])
def test_requires_bounds_at_least_two(solver):
    tree, inst = unit_star()
    with pytest.raises(ValueError):
        solver(inst, tree, DegreeBounds([3, 1, 2, 2]))


def test_executor_survives_entry_child_rehang():
    # the first adoption takes the second adopter's entry child away, so the
    # second adopter's current path to the target runs through slot 0; the
    # executor must not hand it a child on that path
    from dbst._heuristics import _execute_unit_arcs

    tree = SpanningTree(6, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5)])
    inst = tree_induced_instance(tree, 1)
    _parent, children, _order = tree.rooted(0)
    work = tree.copy()
    steps = _execute_unit_arcs(work, inst, {0: [(4, 1), (5, 2)]}, children, {})
    assert [s.adopter for s in steps] == [4, 5]
    assert work.is_spanning_tree()
    assert work.degree(0) == 1
    for s in steps:
        assert s.delta <= inst.weight(s.adopter, s.donor)
