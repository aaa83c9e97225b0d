"""Shared randomized-instance helpers for the test suite.

Random trees are decoded from random Prufer sequences with an independent
decoder (not the library's), so tests that compare against library behavior
do not share code with it.
"""

from __future__ import annotations

import random

from dbst import DegreeBounds, MetricInstance, SpanningTree, tree_induced_instance


def decode_prufer(seq: list[int], n: int) -> list[tuple[int, int]]:
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = degree.index(1)
        edges.append((leaf, v))
        degree[leaf] = 0
        degree[v] -= 1
    u = degree.index(1)
    w = degree.index(1, u + 1)
    edges.append((u, w))
    return edges


def random_tree(n: int, rng: random.Random) -> SpanningTree:
    if n == 1:
        return SpanningTree(1)
    if n == 2:
        return SpanningTree(2, [(0, 1)])
    seq = [rng.randrange(n) for _ in range(n - 2)]
    return SpanningTree(n, decode_prufer(seq, n))


def random_int_instance(n: int, rng: random.Random, max_weight: int = 9):
    """Random tree plus the metric its integer-weighted paths induce."""
    tree = random_tree(n, rng)
    weights = {e: rng.randint(1, max_weight) for e in tree.edges()}
    return tree, tree_induced_instance(tree, weights)


def random_bounds(n: int, rng: random.Random, low: int = 2, high: int = 4) -> DegreeBounds:
    return DegreeBounds([rng.randint(low, high) for _ in range(n)])


def random_points_instance(n: int, rng: random.Random, norm: str = "l2") -> MetricInstance:
    pts = [(rng.random(), rng.random()) for _ in range(n)]
    return MetricInstance.from_points(pts, norm)


def random_legal_flow(tree: SpanningTree, rng: random.Random):
    """Arc-by-arc random flow keeping every surplus within degree - 1."""
    from dbst import AdoptionFlow

    n = tree.n
    flow = AdoptionFlow(n)
    for _ in range(rng.randint(0, 2 * n)):
        u, v = rng.sample(range(n), 2)
        if flow.flow(v, u) > 0:
            continue  # keep the raw arcs one-directional
        trial = flow.copy()
        trial._add(u, v, rng.randint(1, 2))
        if all(trial.surplus()[w] <= tree.degree(w) - 1 for w in range(n)):
            flow = trial
    return flow
