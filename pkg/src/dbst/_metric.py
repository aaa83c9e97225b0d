"""Complete metric graphs: explicit matrices, normed point sets, tree paths.

Weights stay in whatever arithmetic they arrived in.  Integer and Fraction
inputs are never coerced to float, so solvers downstream can assert exact
equalities; point instances use float because L2 distances are irrational.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from ._tree import SpanningTree

NORMS = ("l1", "l2", "linf")

# Below this size tree-path weights are walked per query; at or above it a
# rooted prefix-weight table with binary-lifting ancestor jumps is built once.
_PATH_TABLE_THRESHOLD = 64

# Dense matrices are cached only up to this many vertices.
_DENSE_CACHE_LIMIT = 4096


def point_distance(p, q, norm: str):
    if norm == "l2":
        return math.sqrt(sum((a - b) ** 2 for a, b in zip(p, q)))
    if norm == "l1":
        return sum(abs(a - b) for a, b in zip(p, q))
    if norm == "linf":
        return max(abs(a - b) for a, b in zip(p, q))
    raise ValueError(f"unknown norm {norm!r}; expected one of {NORMS}")


def _weight_kind(values) -> str:
    kind = "int"
    for w in values:
        if isinstance(w, float):
            return "float"
        if isinstance(w, Fraction):
            kind = "fraction"
        elif not isinstance(w, int):
            raise TypeError(f"unsupported weight type {type(w).__name__}")
    return kind


class MetricInstance:
    """Symmetric nonnegative edge weights for every pair of ``n`` vertices.

    Construct through :meth:`from_matrix`, :meth:`from_points`, or
    :meth:`from_tree`.  Instances are immutable once built.
    """

    def __init__(self, n: int, source: str):
        if n < 1:
            raise ValueError(f"need at least one vertex, got n={n}")
        self.n = n
        self.source = source  # "matrix" | "points" | "tree"
        self.norm: str | None = None
        self.points: list[tuple] | None = None
        self.kind = "float"
        self._matrix: list[list] | None = None
        self._dense: np.ndarray | None = None
        # tree source internals
        self._base_tree: SpanningTree | None = None
        self._base_weights: dict[tuple[int, int], object] | None = None
        self._depth_weight = None
        self._lift = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_matrix(cls, weights: Sequence[Sequence]) -> "MetricInstance":
        """Full symmetric matrix with zero diagonal; entries int/Fraction/float."""
        n = len(weights)
        inst = cls(n, "matrix")
        mat = [list(row) for row in weights]
        if any(len(row) != n for row in mat):
            raise ValueError("weight matrix must be square")
        for u in range(n):
            if mat[u][u] != 0:
                raise ValueError(f"nonzero diagonal at vertex {u}")
            for v in range(u + 1, n):
                if mat[u][v] != mat[v][u]:
                    raise ValueError(f"asymmetric weights at ({u}, {v})")
                if mat[u][v] < 0:
                    raise ValueError(f"negative weight at ({u}, {v})")
        inst._matrix = mat
        inst.kind = _weight_kind(
            mat[u][v] for u in range(n) for v in range(u + 1, n)
        )
        return inst

    @classmethod
    def from_upper_triangle(cls, n: int, entries: Sequence) -> "MetricInstance":
        """Row-major upper triangle (u < v), the instance-file layout."""
        expected = n * (n - 1) // 2
        entries = list(entries)
        if len(entries) != expected:
            raise ValueError(f"expected {expected} upper-triangle entries, got {len(entries)}")
        mat = [[0] * n for _ in range(n)]
        it = iter(entries)
        for u in range(n):
            for v in range(u + 1, n):
                w = next(it)
                mat[u][v] = w
                mat[v][u] = w
        return cls.from_matrix(mat)

    @classmethod
    def from_points(cls, points: Sequence[Sequence], norm: str = "l2") -> "MetricInstance":
        if norm not in NORMS:
            raise ValueError(f"unknown norm {norm!r}; expected one of {NORMS}")
        pts = [tuple(p) for p in points]
        if not pts:
            raise ValueError("need at least one point")
        dim = len(pts[0])
        if any(len(p) != dim for p in pts):
            raise ValueError("points must share one dimension")
        inst = cls(len(pts), "points")
        inst.norm = norm
        inst.points = pts
        inst.kind = "float"
        return inst

    @classmethod
    def from_tree(cls, tree: SpanningTree, base_weights) -> "MetricInstance":
        """Weights induced by path sums in ``tree``.

        ``base_weights`` maps each tree edge (u, v), u < v, to a nonnegative
        weight; a scalar applies one weight to every edge.
        """
        if not tree.is_spanning_tree():
            raise ValueError("inducing graph is not a spanning tree")
        if not isinstance(base_weights, dict):
            base_weights = {e: base_weights for e in tree.edges()}
        bw = {}
        for u, v in tree.edges():
            key = (u, v) if u < v else (v, u)
            if key not in base_weights:
                raise ValueError(f"missing base weight for tree edge {key}")
            w = base_weights[key]
            if w < 0:
                raise ValueError(f"negative base weight on edge {key}")
            bw[key] = w
        inst = cls(tree.n, "tree")
        inst._base_tree = tree.copy()
        inst._base_weights = bw
        inst.kind = _weight_kind(bw.values())
        if tree.n >= _PATH_TABLE_THRESHOLD:
            inst._build_path_table()
        return inst

    # -- weights ----------------------------------------------------------

    def weight(self, u: int, v: int):
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise IndexError(f"vertex pair ({u}, {v}) out of range 0..{self.n - 1}")
        if u == v:
            return 0 if self.kind != "float" else 0.0
        if self.source == "matrix":
            return self._matrix[u][v]
        if self.source == "points":
            return point_distance(self.points[u], self.points[v], self.norm)
        if self._depth_weight is not None:
            return self._table_weight(u, v)
        return self._walk_weight(u, v)

    def base_edge_weight(self, u: int, v: int):
        """Weight of a single inducing-tree edge (tree source only)."""
        key = (u, v) if u < v else (v, u)
        return self._base_weights[key]

    @property
    def inducing_tree(self) -> SpanningTree | None:
        return self._base_tree

    def _walk_weight(self, u: int, v: int):
        path = self._base_tree.path(u, v)
        total = 0
        for a, b in zip(path, path[1:]):
            total += self.base_edge_weight(a, b)
        return total

    def _build_path_table(self) -> None:
        tree = self._base_tree
        parent, _children, order = tree.rooted(0)
        depth = [0] * tree.n
        dw = [0] * tree.n
        for v in order[1:]:
            p = parent[v]
            depth[v] = depth[p] + 1
            dw[v] = dw[p] + self.base_edge_weight(v, p)
        levels = max(1, max(depth).bit_length())
        lift = [parent]
        for _ in range(levels - 1):
            prev = lift[-1]
            lift.append([prev[x] if x >= 0 else -1 for x in prev])
        self._depth_weight = (depth, dw)
        self._lift = lift

    def _table_weight(self, u: int, v: int):
        depth, dw = self._depth_weight
        lift = self._lift
        a, b = u, v
        if depth[a] < depth[b]:
            a, b = b, a
        diff = depth[a] - depth[b]
        level = 0
        while diff:
            if diff & 1:
                a = lift[level][a]
            diff >>= 1
            level += 1
        if a != b:
            for level in range(len(lift) - 1, -1, -1):
                if lift[level][a] != lift[level][b]:
                    a = lift[level][a]
                    b = lift[level][b]
            a = lift[0][a]
        return dw[u] + dw[v] - 2 * dw[a]

    # -- bulk access -------------------------------------------------------

    def dense(self) -> np.ndarray | None:
        """Full weight matrix as int64/float64, or None when weights are
        Fractions or the instance is too large to cache."""
        if self._dense is not None:
            return self._dense
        if self.kind == "fraction" or self.n > _DENSE_CACHE_LIMIT:
            return None
        n = self.n
        if self.source == "points":
            pts = np.asarray(self.points, dtype=np.float64)
            diff = pts[:, None, :] - pts[None, :, :]
            if self.norm == "l2":
                mat = np.sqrt((diff * diff).sum(axis=2))
            elif self.norm == "l1":
                mat = np.abs(diff).sum(axis=2)
            else:
                mat = np.abs(diff).max(axis=2)
        else:
            dtype = np.int64 if self.kind == "int" else np.float64
            mat = np.zeros((n, n), dtype=dtype)
            if self.source == "matrix":
                for u in range(n):
                    row = self._matrix[u]
                    for v in range(u + 1, n):
                        mat[u, v] = row[v]
                        mat[v, u] = row[v]
            else:
                for u in range(n):
                    for v in range(u + 1, n):
                        w = self.weight(u, v)
                        mat[u, v] = w
                        mat[v, u] = w
        self._dense = mat
        return mat

    # -- checks ---------------------------------------------------------

    def check_triangle(self) -> list[tuple[int, int, int, object]]:
        """All triangle-inequality violations as ``(u, x, v, slack)`` where
        ``slack = w(u,x) + w(x,v) - w(u,v)`` is negative.

        Exact weight kinds are checked with zero tolerance; float weights get
        a relative epsilon allowance so roundoff cannot fabricate violations.
        """
        n = self.n
        dense = self.dense()
        if dense is not None:
            rel = 64 * np.finfo(np.float64).eps if self.kind == "float" else 0
            out = []
            for x in range(n):
                through = dense[:, x][:, None] + dense[x, :][None, :]
                slack = through - dense
                bad = np.argwhere(slack < -rel * (through + dense))
                for u, v in bad:
                    u, v = int(u), int(v)
                    if u != x and v != x and u != v:
                        out.append((u, x, v, slack[u, v].item()))
            return out
        out = []
        for u in range(n):
            for v in range(n):
                if u == v:
                    continue
                wuv = self.weight(u, v)
                for x in range(n):
                    if x == u or x == v:
                        continue
                    slack = self.weight(u, x) + self.weight(x, v) - wuv
                    if slack < 0:
                        out.append((u, x, v, slack))
        return out


def tree_induced_instance(tree: SpanningTree, base_weights) -> MetricInstance:
    """Instance whose weight(u, v) is the u..v path weight in ``tree``."""
    return MetricInstance.from_tree(tree, base_weights)
