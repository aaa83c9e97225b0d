"""Exponential-time ground truth for small instances.

``brute_dbst`` enumerates every labelled tree through its Prufer sequence
(a vertex's tree degree is its sequence count plus one, so degree caps are
filtered before any decoding happens).  ``brute_hamilton_path`` runs the
subset dynamic program over all endpoints.  Both are deliberately independent
of the solver modules they exist to check.
"""

from __future__ import annotations

import numpy as np

from ._metric import MetricInstance
from ._tree import DegreeBounds, InfeasibleBoundsError, SpanningTree

_DBST_MIN, _DBST_MAX = 3, 9
_HAM_MIN, _HAM_MAX = 2, 11


def brute_dbst(instance: MetricInstance, bounds: DegreeBounds) -> tuple[SpanningTree, object]:
    """Minimum-weight spanning tree with degree(v) <= bound(v) for all v."""
    n = instance.n
    if not _DBST_MIN <= n <= _DBST_MAX:
        raise ValueError(f"brute_dbst supports {_DBST_MIN} <= n <= {_DBST_MAX}, got {n}")
    if len(bounds) != n:
        raise ValueError(f"expected {n} bounds, got {len(bounds)}")
    dense = instance.dense()
    if dense is not None:
        result = _best_tree_vectorized(dense, np.asarray(bounds.bound))
    else:
        result = _best_tree_scalar(instance, bounds)
    if result is None:
        raise InfeasibleBoundsError("no spanning tree satisfies the degree caps")
    edges, weight = result
    tree = SpanningTree(n, edges)
    return tree, weight


def _all_sequences(n: int) -> np.ndarray:
    """Every Prufer sequence of length n-2 in lexicographic order."""
    count = n ** (n - 2)
    idx = np.arange(count, dtype=np.int64)
    cols = [(idx // n ** (n - 3 - j)) % n for j in range(n - 2)]
    return np.stack(cols, axis=1).astype(np.int8)


def _decode_batch(seqs: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Decode B sequences at once; returns edge endpoint arrays (B, n-1)."""
    b = len(seqs)
    deg = np.ones((b, n), dtype=np.int8)
    np.add.at(deg, (np.arange(b)[:, None], seqs.astype(np.int64)), 1)
    rows = np.arange(b)
    eu = np.empty((b, n - 1), dtype=np.int64)
    ev = np.empty((b, n - 1), dtype=np.int64)
    for j in range(n - 2):
        leaf = np.argmax(deg == 1, axis=1)  # smallest vertex of degree 1
        other = seqs[:, j].astype(np.int64)
        eu[:, j] = leaf
        ev[:, j] = other
        deg[rows, leaf] = 0
        deg[rows, other] -= 1
    remaining = deg == 1
    eu[:, n - 2] = np.argmax(remaining, axis=1)
    ev[:, n - 2] = n - 1 - np.argmax(remaining[:, ::-1], axis=1)
    return eu, ev


def _best_tree_vectorized(dense: np.ndarray, bound: np.ndarray):
    n = len(dense)
    seqs = _all_sequences(n)
    counts = (seqs[:, :, None] == np.arange(n, dtype=np.int8)).sum(axis=1)
    feasible = ((counts + 1) <= bound[None, :]).all(axis=1)
    seqs = seqs[feasible]
    if len(seqs) == 0:
        return None
    eu, ev = _decode_batch(seqs, n)
    weights = dense[eu, ev].sum(axis=1)
    best = int(np.argmin(weights))
    edges = list(zip(eu[best].tolist(), ev[best].tolist()))
    return edges, weights[best].item()


def _decode_one(seq: list[int], n: int) -> list[tuple[int, int]]:
    deg = [1] * n
    for v in seq:
        deg[v] += 1
    edges = []
    for v in seq:
        leaf = deg.index(1)
        edges.append((leaf, v))
        deg[leaf] = 0
        deg[v] -= 1
    rest = [v for v in range(n) if deg[v] == 1]
    edges.append((rest[0], rest[1]))
    return edges


def _best_tree_scalar(instance: MetricInstance, bounds: DegreeBounds):
    n = instance.n
    best = None
    seq = [0] * (n - 2)
    while True:
        counts = [0] * n
        for v in seq:
            counts[v] += 1
        if all(counts[v] + 1 <= bounds[v] for v in range(n)):
            edges = _decode_one(seq, n)
            w = sum(instance.weight(u, v) for u, v in edges)
            if best is None or w < best[1]:
                best = (edges, w)
        # next sequence in lexicographic order
        pos = n - 3
        while pos >= 0 and seq[pos] == n - 1:
            seq[pos] = 0
            pos -= 1
        if pos < 0:
            return best
        seq[pos] += 1


def brute_hamilton_path(instance: MetricInstance) -> tuple[list[int], object]:
    """Minimum-weight Hamiltonian path over all endpoint pairs."""
    n = instance.n
    if not _HAM_MIN <= n <= _HAM_MAX:
        raise ValueError(f"brute_hamilton_path supports {_HAM_MIN} <= n <= {_HAM_MAX}, got {n}")
    w = [[instance.weight(u, v) for v in range(n)] for u in range(n)]
    full = (1 << n) - 1
    # dp[mask][v]: best path visiting exactly mask, ending at v
    dp = [[None] * n for _ in range(1 << n)]
    parent = [[-1] * n for _ in range(1 << n)]
    for v in range(n):
        dp[1 << v][v] = 0
    for mask in range(1 << n):
        row = dp[mask]
        for v in range(n):
            cur = row[v]
            if cur is None:
                continue
            wv = w[v]
            for u in range(n):
                if mask & (1 << u):
                    continue
                nxt = mask | (1 << u)
                cand = cur + wv[u]
                if dp[nxt][u] is None or cand < dp[nxt][u]:
                    dp[nxt][u] = cand
                    parent[nxt][u] = v
    best_v = min(range(n), key=lambda v: dp[full][v])
    weight = dp[full][best_v]
    path = [best_v]
    mask, v = full, best_v
    while parent[mask][v] != -1:
        p = parent[mask][v]
        mask ^= 1 << v
        v = p
        path.append(v)
    path.reverse()
    return path, weight
