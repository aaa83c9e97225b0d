"""Instance families: regular trees, paths, layered point sets, random points.

The regular-tree family realizes the worst case of the degree-reduction
ratio; the path family shows why bounds below 2 ruin any constant ratio; the
layered point family makes Hamilton paths cost nearly twice the spanning-tree
weight.  The random generator uses splitmix64 so the same seed reproduces the
same instance in any implementation of the format.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._metric import MetricInstance, tree_induced_instance
from ._tree import DegreeBounds, SpanningTree


def gen_kary(target_degree: int, depth: int) -> tuple[SpanningTree, MetricInstance]:
    """Complete rooted (D-1)-ary tree of given depth with unit edge weights.

    Every internal non-root vertex has degree D = ``target_degree``; the root
    has degree D-1; vertex ids are assigned in BFS order.  Returns the tree
    and its path-induced metric instance.
    """
    if target_degree < 3:
        raise ValueError(f"target degree must be >= 3, got {target_degree}")
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    branching = target_degree - 1
    n = sum(branching**j for j in range(depth + 1))
    tree = SpanningTree(n)
    next_id = 1
    frontier = [0]
    for _level in range(depth):
        new_frontier = []
        for v in frontier:
            for _ in range(branching):
                tree.add_edge(v, next_id)
                new_frontier.append(next_id)
                next_id += 1
        frontier = new_frontier
    return tree, tree_induced_instance(tree, 1)


def kary_level_sizes(target_degree: int, depth: int) -> list[int]:
    """Cumulative vertex counts: entry i is the number of vertices within
    distance i of the root."""
    branching = target_degree - 1
    sizes = []
    total = 0
    for j in range(depth + 1):
        total += branching**j
        sizes.append(total)
    return sizes


def kary_lower_bound(target_degree: int, bound: int, depth: int) -> Fraction:
    """Exact ratio floor for any max-degree-``bound`` spanning tree of the
    regular-family instance, clamped to at least 1."""
    if target_degree < 3:
        raise ValueError(f"target degree must be >= 3, got {target_degree}")
    if not 2 <= bound <= target_degree:
        raise ValueError(f"bound must be in 2..{target_degree}, got {bound}")
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    sizes = kary_level_sizes(target_degree, depth)
    num = sum(sizes[i] * (target_degree - bound) - 1 for i in range(depth))
    den = sum(sizes[i] * (target_degree - 2) + 1 for i in range(depth))
    return max(Fraction(1), 1 + Fraction(num, den))


def gen_path(n_edges: int) -> tuple[SpanningTree, MetricInstance, DegreeBounds]:
    """Unit-weight path 0-1-...-n_edges with the all-leaves bounds.

    Every vertex gets bound 1 except endpoint 0, which may take any degree.
    The only conforming tree is the star at 0, whose weight grows
    quadratically in the path length.
    """
    if n_edges < 1:
        raise ValueError(f"need at least one edge, got {n_edges}")
    tree = SpanningTree(n_edges + 1, [(i, i + 1) for i in range(n_edges)])
    bounds = DegreeBounds([n_edges] + [1] * n_edges)
    return tree, tree_induced_instance(tree, 1), bounds


@dataclass(frozen=True)
class T2PointSet:
    """Layered planar point set whose Hamilton paths dwarf its MST.

    Base points sit on the x-axis; a level-j point floats at height
    ``scale**(depth-j)`` above each base point at an odd multiple of that
    height.  Duplicated base points (generated at several levels) appear
    once.
    """

    scale: int  # the construction parameter n (>= 2*depth)
    depth: int  # the construction parameter k
    points: tuple[tuple[int, int], ...]  # deduplicated, sorted by (x, y)

    @property
    def n_points(self) -> int:
        return len(self.points)

    def instance(self, norm: str = "l2") -> MetricInstance:
        return MetricInstance.from_points(self.points, norm)

    def level_of(self, point: tuple[int, int]) -> int | None:
        """Level index j of a floating point, or None for base points."""
        x, y = point
        if y == 0:
            return None
        j = 0
        h = self.scale**self.depth
        while h != y and j <= self.depth:
            h //= self.scale
            j += 1
        return j if h == y else None

    def circle_radius(self, level: int) -> int:
        """Radius of the packing circle at a level-j point, j < depth."""
        if not 0 <= level < self.depth:
            raise ValueError(f"levels with circles are 0..{self.depth - 1}, got {level}")
        return self.scale ** (self.depth - level - 1) * (self.scale - 2)


def gen_t2(scale: int, depth: int) -> T2PointSet:
    """The layered point construction with parameters n = scale, k = depth.

    The construction itself only needs scale >= 2; the closed-form bounds in
    :func:`t2_bounds` additionally require scale >= 2*depth.
    """
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    if scale < 2:
        raise ValueError(f"scale must be >= 2, got {scale}")
    n, k = scale, depth
    pts = {(0, 0), (2 * n**k, 0)}
    for j in range(k + 1):
        h = n ** (k - j)
        for i in range(1, n**j + 1):
            x = (2 * i - 1) * h
            pts.add((x, h))
            pts.add((x, 0))
    return T2PointSet(scale, depth, tuple(sorted(pts)))


@dataclass(frozen=True)
class T2Bounds:
    circle_sum: int  # twice the sum of packing-circle radii
    path_lower: int  # floor on any Hamilton path weight (vacuous if <= 0)
    tree_upper: int  # weight of the explicit witness spanning tree
    ratio: Fraction  # path_lower / tree_upper


def t2_bounds(scale: int, depth: int) -> T2Bounds:
    """Closed forms: circle sum 2k n^(k-1) (n-2), Hamilton-path floor
    2 (k-2) n^k, witness tree weight (k+3) n^k."""
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    if scale < 2 * depth:
        raise ValueError(f"scale must be >= 2*depth = {2 * depth}, got {scale}")
    n, k = scale, depth
    circle_sum = 2 * k * n ** (k - 1) * (n - 2)
    path_lower = 2 * (k - 2) * n**k
    tree_upper = (k + 3) * n**k
    return T2Bounds(circle_sum, path_lower, tree_upper, Fraction(2 * (k - 2), k + 3))


def t2_witness_tree(point_set: T2PointSet) -> SpanningTree:
    """Baseline path through the base points plus one vertical per level
    point; spans the set with weight exactly (depth+3) * scale**depth."""
    pts = point_set.points
    index = {p: i for i, p in enumerate(pts)}
    tree = SpanningTree(len(pts))
    base = sorted(p for p in pts if p[1] == 0)
    for a, b in zip(base, base[1:]):
        tree.add_edge(index[a], index[b])
    for p in pts:
        if p[1] != 0:
            tree.add_edge(index[p], index[(p[0], 0)])
    return tree


def t2_witness_weight(point_set: T2PointSet) -> int:
    """Witness tree weight in integer arithmetic; identical under L1, L2,
    and Linf because every edge is axis-aligned."""
    base_span = 2 * point_set.scale**point_set.depth
    verticals = sum(y for _x, y in point_set.points if y != 0)
    return base_span + verticals


def _line_structured_mst_weight(points) -> tuple[float, int]:
    """Euclidean MST weight over a nearest-neighbor candidate graph for
    points lying on few horizontal lines.

    Candidates: consecutive points within each line, plus each point's two
    x-nearest points on the baseline and on the two adjacent lines.  The
    result upper-bounds the true MST weight (exactly equal whenever the MST
    only uses such local edges, which holds for the layered family at every
    size where the exact answer is checkable).  Returns (weight, edge_count);
    the edge count is n-1 iff the candidate graph is connected.
    """
    import numpy as np
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import minimum_spanning_tree

    pts = np.asarray(points, dtype=np.int64)
    n = len(pts)
    if n < 2:
        return 0.0, 0
    xs, ys = pts[:, 0], pts[:, 1]
    heights = np.unique(ys)
    lines = []
    for h in heights:
        idx = np.where(ys == h)[0]
        lines.append(idx[np.argsort(xs[idx], kind="stable")])
    rows, cols = [], []
    for idx in lines:
        if len(idx) > 1:
            rows.append(idx[:-1])
            cols.append(idx[1:])
    for i, a_idx in enumerate(lines):
        for j in {0, i - 1, i + 1}:
            if j == i or j < 0 or j >= len(lines):
                continue
            b_idx = lines[j]
            pos = np.searchsorted(xs[b_idx], xs[a_idx])
            left = b_idx[np.clip(pos - 1, 0, len(b_idx) - 1)]
            right = b_idx[np.clip(pos, 0, len(b_idx) - 1)]
            rows.extend([a_idx, a_idx])
            cols.extend([left, right])
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    keep = rows != cols
    lo = np.minimum(rows[keep], cols[keep])
    hi = np.maximum(rows[keep], cols[keep])
    packed = np.unique(lo.astype(np.int64) * n + hi)
    lo, hi = packed // n, packed % n
    dx = (xs[lo] - xs[hi]).astype(np.float64)
    dy = (ys[lo] - ys[hi]).astype(np.float64)
    weights = np.sqrt(dx * dx + dy * dy)
    graph = coo_matrix((weights, (lo, hi)), shape=(n, n)).tocsr()
    tree = minimum_spanning_tree(graph)
    return float(tree.sum()), int(tree.nnz)


# ---------------------------------------------------------------------------
# seeded random points

_SM64_GAMMA = 0x9E3779B97F4A7C15
_SM64_MIX1 = 0xBF58476D1CE4E5B9
_SM64_MIX2 = 0x94D049BB133111EB
_MASK64 = (1 << 64) - 1


def splitmix64_stream(seed: int):
    """The splitmix64 generator: state += 0x9E3779B97F4A7C15;
    z = state; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9;
    z = (z ^ z>>27) * 0x94D049BB133111EB; yield z ^ z>>31."""
    state = seed & _MASK64
    while True:
        state = (state + _SM64_GAMMA) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * _SM64_MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _SM64_MIX2) & _MASK64
        yield z ^ (z >> 31)


def splitmix64_unit(seed: int):
    """Uniform floats in [0, 1) with 53-bit mantissas from splitmix64."""
    for z in splitmix64_stream(seed):
        yield (z >> 11) / float(1 << 53)


def gen_random(n: int, norm: str = "l2", seed: int = 0) -> MetricInstance:
    """n points drawn uniformly from the unit square, reproducible from the
    seed alone."""
    if n < 2:
        raise ValueError(f"need at least two points, got {n}")
    unit = splitmix64_unit(seed)
    points = [(next(unit), next(unit)) for _ in range(n)]
    return MetricInstance.from_points(points, norm)
