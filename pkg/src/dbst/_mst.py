"""Minimum spanning trees of complete metric instances.

Ties between equal-weight edges go to the lexicographically smaller (u, v)
pair, which makes results reproducible across runs and platforms.  Small
instances use Kruskal over the full edge list (the tie-break is literally the
sort key); larger point/matrix instances switch to a row-at-a-time Prim that
never materialises the full O(n^2) edge list.
"""

from __future__ import annotations

import numpy as np

from ._metric import MetricInstance, point_distance
from ._tree import SpanningTree

_KRUSKAL_LIMIT = 2048
_PRIM_LIMIT = 20000


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def mst(instance: MetricInstance) -> SpanningTree:
    """Minimum spanning tree under the declared deterministic tie-break."""
    n = instance.n
    if n == 1:
        return SpanningTree(1)
    if n <= _KRUSKAL_LIMIT:
        return _kruskal(instance)
    if instance.source == "tree":
        # Every non-tree edge weighs as much as its whole tree path, so each
        # tree edge is a minimum across some cut: the inducing tree is an MST.
        return instance.inducing_tree.copy()
    if instance.source == "points" and n <= _PRIM_LIMIT:
        return _prim_points(instance)
    raise ValueError(
        f"mst: instance with n={n} from source {instance.source!r} exceeds supported size"
    )


def _kruskal(instance: MetricInstance) -> SpanningTree:
    n = instance.n
    dense = instance.dense()
    if dense is not None:
        iu, iv = np.triu_indices(n, k=1)
        w = dense[iu, iv]
        order = np.lexsort((iv, iu, w))
        pairs = ((int(iu[i]), int(iv[i])) for i in order)
    else:
        edges = sorted(
            (instance.weight(u, v), u, v) for u in range(n) for v in range(u + 1, n)
        )
        pairs = ((u, v) for _, u, v in edges)
    uf = _UnionFind(n)
    tree = SpanningTree(n)
    taken = 0
    for u, v in pairs:
        if uf.union(u, v):
            tree.add_edge(u, v)
            taken += 1
            if taken == n - 1:
                break
    return tree


def _prim_points(instance: MetricInstance) -> SpanningTree:
    """Prim with distance rows computed on the fly; O(n) memory."""
    pts = np.asarray(instance.points, dtype=np.float64)
    n = len(pts)
    norm = instance.norm

    def row(i: int) -> np.ndarray:
        diff = pts - pts[i]
        if norm == "l2":
            return np.sqrt((diff * diff).sum(axis=1))
        if norm == "l1":
            return np.abs(diff).sum(axis=1)
        return np.abs(diff).max(axis=1)

    best = row(0)
    link = np.zeros(n, dtype=np.int64)
    in_tree = np.zeros(n, dtype=bool)
    in_tree[0] = True
    best[0] = np.inf
    tree = SpanningTree(n)
    for _ in range(n - 1):
        v = int(np.argmin(best))
        tree.add_edge(int(link[v]), v)
        in_tree[v] = True
        d = row(v)
        closer = d < best
        best = np.where(closer, d, best)
        link[closer] = v
        best[in_tree] = np.inf
    return tree
