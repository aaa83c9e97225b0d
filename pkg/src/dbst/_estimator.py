"""Scikit-learn style front end.

``BoundedDegreeSpanningTree.fit(X)`` computes a minimum spanning tree of the
input metric and repairs it to satisfy the per-vertex degree caps, exposing
the result as fitted attributes and a sparse adjacency so it composes with
the surrounding ecosystem.
"""

from __future__ import annotations

import numpy as np
from scipy import sparse
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted

from ._flow import solve_optimal
from ._heuristics import algorithm1, algorithm2
from ._metric import NORMS, MetricInstance
from ._mst import mst
from ._tree import DegreeBounds, tree_weight

_ALGORITHMS = ("flow", "greedy", "treedp")


class BoundedDegreeSpanningTree(BaseEstimator):
    """Low-weight spanning tree whose vertex degrees respect a cap.

    Parameters
    ----------
    degree_bound : int or array-like of int, default=3
        Per-vertex degree cap; a scalar applies to every vertex.  Must be
        at least 2 everywhere for the "greedy" and "treedp" algorithms,
        at least 1 for "flow".
    algorithm : {"flow", "greedy", "treedp"}, default="flow"
        "flow" finds a cost-optimal repair via minimum-cost flow; the other
        two are the linear-time variants with the same worst-case ratio.
    metric : {"l1", "l2", "linf", "precomputed"}, default="l2"
        With "precomputed", ``fit`` expects a square symmetric distance
        matrix instead of point coordinates.
    root : int, default=0
        Root used by the linear-time algorithms.
    policy : {"min_delta", "first"}, default="min_delta"
        Neighbor choice when an adoption is executed.

    Attributes
    ----------
    mst_edges_ : ndarray of shape (n-1, 2)
    mst_weight_ : float
    tree_edges_ : ndarray of shape (n-1, 2)
    tree_weight_ : float
    ratio_ : float, ``tree_weight_ / mst_weight_``
    bound_ : float or None, guaranteed ratio cap when all caps are >= 2
    graph_ : scipy.sparse.csr_matrix, symmetric weighted adjacency
    report_ : SolveReport with the solver's accounting
    """

    def __init__(self, degree_bound=3, algorithm="flow", metric="l2", root=0, policy="min_delta"):
        self.degree_bound = degree_bound
        self.algorithm = algorithm
        self.metric = metric
        self.root = root
        self.policy = policy

    def fit(self, X, y=None):
        if self.algorithm not in _ALGORITHMS:
            raise ValueError(f"algorithm must be one of {_ALGORITHMS}, got {self.algorithm!r}")
        if self.metric == "precomputed":
            X = check_array(X)
            if X.shape[0] != X.shape[1]:
                raise ValueError(f"precomputed matrix must be square, got {X.shape}")
            if not np.allclose(X, X.T):
                raise ValueError("precomputed matrix must be symmetric")
            instance = MetricInstance.from_matrix(X.tolist())
        elif self.metric in NORMS:
            X = check_array(X)
            instance = MetricInstance.from_points(X.tolist(), self.metric)
        else:
            raise ValueError(f"metric must be one of {NORMS + ('precomputed',)}, got {self.metric!r}")
        n = instance.n
        if np.ndim(self.degree_bound) == 0:
            bounds = DegreeBounds.uniform(n, int(self.degree_bound))
        else:
            bounds = DegreeBounds([int(d) for d in self.degree_bound])
            if len(bounds) != n:
                raise ValueError(f"expected {n} degree bounds, got {len(bounds)}")

        base = mst(instance)
        if self.algorithm == "flow":
            tree, report = solve_optimal(instance, base, bounds, policy=self.policy)
        elif self.algorithm == "greedy":
            tree, report = algorithm1(instance, base, bounds, root=self.root)
        else:
            tree, report = algorithm2(instance, base, bounds, root=self.root)

        self.n_vertices_ = n
        self.instance_ = instance
        self.mst_ = base
        self.tree_ = tree
        self.mst_edges_ = np.array(sorted(base.edges()), dtype=np.int64).reshape(-1, 2)
        self.tree_edges_ = np.array(sorted(tree.edges()), dtype=np.int64).reshape(-1, 2)
        self.mst_weight_ = float(tree_weight(base, instance))
        self.tree_weight_ = float(tree_weight(tree, instance))
        self.ratio_ = self.tree_weight_ / self.mst_weight_ if self.mst_weight_ else 1.0
        self.bound_ = float(report.bound) if report.bound is not None else None
        self.report_ = report
        self.graph_ = self._as_sparse(instance, tree)
        return self

    def fit_predict_edges(self, X, y=None):
        """Fit and return the degree-bounded tree's edge array."""
        return self.fit(X).tree_edges_

    @staticmethod
    def _as_sparse(instance, tree):
        rows, cols, vals = [], [], []
        for u, v in tree.edges():
            w = float(instance.weight(u, v))
            rows += [u, v]
            cols += [v, u]
            vals += [w, w]
        return sparse.csr_matrix((vals, (rows, cols)), shape=(tree.n, tree.n))

    def degrees(self):
        check_is_fitted(self, "tree_")
        return np.asarray(self.tree_.degrees(), dtype=np.int64)
