"""Spanning trees over dense integer vertex ids, plus per-vertex degree bounds.

Trees are the only mutable objects in the library; everything that mutates
them goes through ``add_edge``/``remove_edge`` so the degree bookkeeping can
never go stale.  Adjacency is kept as one insertion-ordered dict per vertex,
which gives O(1) edge removal and preserves the original child order that the
linear-time solvers rely on.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator, Sequence


class InfeasibleBoundsError(ValueError):
    """No spanning tree can satisfy the requested degree bounds."""


class SpanningTree:
    """Undirected tree on vertices ``0..n-1`` with exactly ``n-1`` edges."""

    __slots__ = ("n", "_adj", "root")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), root: int | None = None):
        if n < 1:
            raise ValueError(f"need at least one vertex, got n={n}")
        self.n = n
        self._adj: list[dict[int, None]] = [{} for _ in range(n)]
        self.root = root
        for u, v in edges:
            self.add_edge(u, v)

    # -- mutation ------------------------------------------------------

    def add_edge(self, u: int, v: int) -> None:
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if v in self._adj[u]:
            raise ValueError(f"duplicate edge ({u}, {v})")
        self._adj[u][v] = None
        self._adj[v][u] = None

    def remove_edge(self, u: int, v: int) -> None:
        if v not in self._adj[u]:
            raise ValueError(f"edge ({u}, {v}) not present")
        del self._adj[u][v]
        del self._adj[v][u]

    # -- queries -------------------------------------------------------

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def neighbors(self, v: int) -> Iterator[int]:
        return iter(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge once as (u, v) with u < v, in vertex order."""
        for u in range(self.n):
            for v in self._adj[u]:
                if u < v:
                    yield (u, v)

    def num_edges(self) -> int:
        return sum(len(a) for a in self._adj) // 2

    def is_spanning_tree(self) -> bool:
        """Connected and acyclic: n-1 edges reaching every vertex."""
        if self.num_edges() != self.n - 1:
            return False
        seen = bytearray(self.n)
        seen[0] = 1
        stack = [0]
        count = 1
        while stack:
            u = stack.pop()
            for v in self._adj[u]:
                if not seen[v]:
                    seen[v] = 1
                    count += 1
                    stack.append(v)
        return count == self.n

    def copy(self) -> "SpanningTree":
        t = SpanningTree(self.n, root=self.root)
        t._adj = [dict(a) for a in self._adj]
        return t

    def rooted(self, root: int = 0) -> tuple[list[int], list[list[int]], list[int]]:
        """BFS-root the tree.

        Returns ``(parent, children, order)`` where ``parent[root] == -1``,
        children lists preserve adjacency insertion order, and ``order`` is a
        top-down BFS ordering of all vertices.
        """
        self._check_vertex(root)
        parent = [-1] * self.n
        children: list[list[int]] = [[] for _ in range(self.n)]
        order = [root]
        seen = bytearray(self.n)
        seen[root] = 1
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in self._adj[u]:
                if not seen[v]:
                    seen[v] = 1
                    parent[v] = u
                    children[u].append(v)
                    order.append(v)
                    queue.append(v)
        if len(order) != self.n:
            raise ValueError("tree is not connected")
        return parent, children, order

    def path(self, u: int, v: int) -> list[int]:
        """Vertices on the unique u..v path, inclusive."""
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            return [u]
        prev = [-1] * self.n
        prev[u] = u
        queue = deque([u])
        while queue:
            x = queue.popleft()
            for y in self._adj[x]:
                if prev[y] == -1:
                    prev[y] = x
                    if y == v:
                        queue.clear()
                        break
                    queue.append(y)
        if prev[v] == -1:
            raise ValueError(f"no path from {u} to {v}: tree not connected")
        out = [v]
        while out[-1] != u:
            out.append(prev[out[-1]])
        out.reverse()
        return out

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range 0..{self.n - 1}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpanningTree):
            return NotImplemented
        return self.n == other.n and sorted(self.edges()) == sorted(other.edges())

    def __repr__(self) -> str:
        return f"SpanningTree(n={self.n}, edges={sorted(self.edges())})"


class DegreeBounds:
    """Per-vertex degree cap.  Every bound must be a positive integer."""

    __slots__ = ("bound",)

    def __init__(self, bound: Sequence[int]):
        bound = list(bound)
        for v, d in enumerate(bound):
            if not isinstance(d, int) or d < 1:
                raise ValueError(f"bound at vertex {v} must be a positive integer, got {d!r}")
        self.bound = bound

    @classmethod
    def uniform(cls, n: int, d: int) -> "DegreeBounds":
        return cls([d] * n)

    def __getitem__(self, v: int) -> int:
        return self.bound[v]

    def __len__(self) -> int:
        return len(self.bound)

    def __iter__(self) -> Iterator[int]:
        return iter(self.bound)

    def min(self) -> int:
        return min(self.bound)

    def check_feasible(self, n: int) -> None:
        """A complete graph on n vertices has a tree within these caps iff
        every cap is >= 1 and the caps sum to at least 2(n-1)."""
        if len(self.bound) != n:
            raise ValueError(f"expected {n} bounds, got {len(self.bound)}")
        total = sum(self.bound)
        if total < 2 * (n - 1):
            raise InfeasibleBoundsError(
                f"degree caps sum to {total} < 2(n-1) = {2 * (n - 1)}; no spanning tree fits"
            )

    def __repr__(self) -> str:
        return f"DegreeBounds({self.bound})"


def deficits(tree: SpanningTree, bounds: DegreeBounds) -> list[int]:
    """Per-vertex ``degree - bound``; positive entries must shed degree."""
    if len(bounds) != tree.n:
        raise ValueError(f"expected {tree.n} bounds, got {len(bounds)}")
    return [tree.degree(v) - bounds[v] for v in range(tree.n)]


def meets_bounds(tree: SpanningTree, bounds: DegreeBounds) -> bool:
    return all(tree.degree(v) <= bounds[v] for v in range(tree.n))


def tree_weight(tree: SpanningTree, instance) -> object:
    """Sum of instance weights over the tree edges."""
    total = 0
    for u, v in tree.edges():
        total += instance.weight(u, v)
    return total
