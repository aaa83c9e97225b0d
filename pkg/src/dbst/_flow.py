"""The adoption network and its integer minimum-cost flow.

The network mirrors the complete metric graph: both directed arcs of every
pair cost w(u, v) with unbounded capacity, each vertex demands its deficit,
and legality caps the surplus of v at degree(v) - 1.  With every degree cap
at least 1 a minimum-cost feasible flow can always be normalized so deficit
vertices absorb exactly their demand and every other vertex only sends, which
keeps legality slack; the solver below builds that normalized form directly
by wiring a super source to the spare-capacity vertices and a super sink to
the deficit vertices.

Successive shortest augmenting paths with vertex potentials keep all reduced
costs nonnegative, so shortest paths are found by a label-setting pass.
Integer supplies and demands make every augmentation integral.
"""

from __future__ import annotations

import heapq
from math import inf

import numpy as np

from ._adoption import AdoptionFlow, cancel_cycles, flow_to_sequence, replay_sequence
from ._metric import MetricInstance
from ._report import SolveReport
from ._tree import DegreeBounds, InfeasibleBoundsError, SpanningTree, deficits, meets_bounds, tree_weight


class AdoptionNetwork:
    """Complete bidirected arc set plus per-vertex demand and surplus cap."""

    __slots__ = ("n", "instance", "demand", "surplus_cap", "leaf_only")

    def __init__(self, n, instance, demand, surplus_cap, leaf_only=False):
        self.n = n
        self.instance = instance
        self.demand = demand
        self.surplus_cap = surplus_cap
        # Heuristic accelerator: restrict forward arcs to (leaf, deficit
        # vertex) pairs.  Off by default; may miss the optimum.
        self.leaf_only = leaf_only

    def arc_cost(self, u: int, v: int):
        return self.instance.weight(u, v)

    def total_demand(self) -> int:
        return sum(d for d in self.demand if d > 0)

    def total_supply(self) -> int:
        return sum(-d for d in self.demand if d < 0)


def build_network(
    instance: MetricInstance,
    tree: SpanningTree,
    bounds: DegreeBounds,
    leaf_only: bool = False,
) -> AdoptionNetwork:
    """Adoption network for ``tree``: demand(v) = degree(v) - bound(v)."""
    if instance.n != tree.n:
        raise ValueError("instance and tree disagree on vertex count")
    bounds.check_feasible(tree.n)
    demand = deficits(tree, bounds)
    surplus_cap = [tree.degree(v) - 1 for v in range(tree.n)]
    net = AdoptionNetwork(tree.n, instance, demand, surplus_cap, leaf_only)
    if net.total_supply() < net.total_demand():
        raise InfeasibleBoundsError(
            f"total absorbable supply {net.total_supply()} is below total demand {net.total_demand()}"
        )
    return net


def min_cost_flow(network: AdoptionNetwork) -> AdoptionFlow:
    """Minimum-cost legal feasible integer flow, positive arcs acyclic."""
    n = network.n
    need = network.total_demand()
    if need == 0:
        return AdoptionFlow(n)
    dense = network.instance.dense()
    if dense is not None:
        flow = _ssp_dense(network, dense)
    else:
        flow = _ssp_exact(network)
    flow = cancel_cycles(flow)
    # The normalized optimum is legal whenever every cap is >= 1; verify.
    for v, s in enumerate(flow.surplus()):
        if s > network.surplus_cap[v] or s < network.demand[v]:
            raise RuntimeError(f"solver produced an invalid flow at vertex {v}")
    return flow


def _allowed_mask(network: AdoptionNetwork) -> np.ndarray | None:
    if not network.leaf_only:
        return None
    deg_one = [network.surplus_cap[v] == 0 for v in range(network.n)]
    allowed = np.zeros((network.n, network.n), dtype=bool)
    for u in range(network.n):
        if deg_one[u]:
            for v in range(network.n):
                if network.demand[v] > 0:
                    allowed[u, v] = True
    return allowed


def _ssp_dense(network: AdoptionNetwork, dense: np.ndarray) -> AdoptionFlow:
    """Vectorized successive shortest paths for int/float weight matrices."""
    n = network.n
    s, t = n, n + 1
    nn = n + 2
    weights = dense.astype(np.float64)
    fnet = np.zeros((n, n), dtype=np.int64)
    supply_left = np.array([max(0, -d) for d in network.demand], dtype=np.int64)
    demand_left = np.array([max(0, d) for d in network.demand], dtype=np.int64)
    allowed = _allowed_mask(network)
    potential = np.zeros(nn, dtype=np.float64)
    remaining = int(demand_left.sum())

    while remaining > 0:
        dist = np.full(nn, inf)
        parent = np.full(nn, -1, dtype=np.int64)
        done = np.zeros(nn, dtype=bool)
        dist[s] = 0.0
        while True:
            u = int(np.where(done, inf, dist).argmin())
            if not np.isfinite(dist[u]) or done[u]:
                break
            done[u] = True
            if u == t:
                continue
            if u == s:
                open_src = (supply_left > 0) & ~done[:n]
                cand = dist[s] + potential[s] - potential[:n]
                better = open_src & (cand < dist[:n])
                dist[:n][better] = cand[better]
                parent[:n][better] = s
            else:
                eff = np.where(fnet[u] < 0, -weights[u], weights[u])
                if allowed is not None:
                    eff = np.where(allowed[u] | (fnet[u] < 0), eff, inf)
                cand = dist[u] + eff + potential[u] - potential[:n]
                better = ~done[:n] & (cand < dist[:n])
                better[u] = False
                dist[:n][better] = cand[better]
                parent[:n][better] = u
                if demand_left[u] > 0 and not done[t]:
                    cand_t = dist[u] + potential[u] - potential[t]
                    if cand_t < dist[t]:
                        dist[t] = cand_t
                        parent[t] = u
        if not np.isfinite(dist[t]):
            raise InfeasibleBoundsError("adoption network admits no feasible flow")
        # bottleneck along s..t path
        path = []
        v = t
        while v != s:
            u = int(parent[v])
            path.append((u, v))
            v = u
        path.reverse()
        push = remaining
        for u, v in path:
            if u == s:
                push = min(push, int(supply_left[v]))
            elif v == t:
                push = min(push, int(demand_left[u]))
            elif fnet[u, v] < 0:
                push = min(push, int(-fnet[u, v]))
        for u, v in path:
            if u == s:
                supply_left[v] -= push
            elif v == t:
                demand_left[u] -= push
            else:
                fnet[u, v] += push
                fnet[v, u] -= push
        remaining -= push
        potential += np.minimum(dist, dist[t])

    arcs = {}
    pos = np.argwhere(fnet > 0)
    for u, v in pos:
        arcs[(int(u), int(v))] = int(fnet[u, v])
    return AdoptionFlow.from_arcs(n, arcs)


def _ssp_exact(network: AdoptionNetwork) -> AdoptionFlow:
    """Reference successive shortest paths in exact arithmetic (Fractions)."""
    n = network.n
    s, t = n, n + 1
    inst = network.instance
    fnet: dict[tuple[int, int], int] = {}
    supply_left = [max(0, -d) for d in network.demand]
    demand_left = [max(0, d) for d in network.demand]
    allowed = None
    if network.leaf_only:
        allowed = _allowed_mask(network)
    potential = [0] * (n + 2)
    remaining = sum(demand_left)

    def eff_cost(u, v):
        if fnet.get((u, v), 0) - fnet.get((v, u), 0) < 0:
            return -inst.weight(u, v)
        return inst.weight(u, v)

    while remaining > 0:
        dist = [None] * (n + 2)
        parent = [-1] * (n + 2)
        dist[s] = 0
        heap = [(0, s)]
        done = [False] * (n + 2)
        while heap:
            d, u = heapq.heappop(heap)
            if done[u]:
                continue
            done[u] = True
            if u == t:
                continue
            if u == s:
                for v in range(n):
                    if supply_left[v] <= 0:
                        continue
                    cand = d + potential[s] - potential[v]
                    if dist[v] is None or cand < dist[v]:
                        dist[v] = cand
                        parent[v] = s
                        heapq.heappush(heap, (cand, v))
                continue
            for v in range(n):
                if v == u:
                    continue
                if allowed is not None and not allowed[u, v] and fnet.get((u, v), 0) - fnet.get((v, u), 0) >= 0:
                    continue
                cand = d + eff_cost(u, v) + potential[u] - potential[v]
                if dist[v] is None or cand < dist[v]:
                    dist[v] = cand
                    parent[v] = u
                    heapq.heappush(heap, (cand, v))
            if demand_left[u] > 0:
                cand = d + potential[u] - potential[t]
                if dist[t] is None or cand < dist[t]:
                    dist[t] = cand
                    parent[t] = u
                    heapq.heappush(heap, (cand, t))
        if dist[t] is None:
            raise InfeasibleBoundsError("adoption network admits no feasible flow")
        path = []
        v = t
        while v != s:
            u = parent[v]
            path.append((u, v))
            v = u
        path.reverse()
        push = remaining
        for u, v in path:
            if u == s:
                push = min(push, supply_left[v])
            elif v == t:
                push = min(push, demand_left[u])
            else:
                net_uv = fnet.get((u, v), 0) - fnet.get((v, u), 0)
                if net_uv < 0:
                    push = min(push, -net_uv)
        for u, v in path:
            if u == s:
                supply_left[v] -= push
            elif v == t:
                demand_left[u] -= push
            else:
                fnet[(u, v)] = fnet.get((u, v), 0) + push
                fnet[(v, u)] = fnet.get((v, u), 0) - push
        remaining -= push
        for v in range(n + 2):
            if dist[v] is not None:
                potential[v] += min(dist[v], dist[t])
            else:
                potential[v] += dist[t]

    # fnet is antisymmetric (both directions updated per push)
    arcs = {(u, v): f for (u, v), f in fnet.items() if f > 0}
    return AdoptionFlow.from_arcs(n, arcs)


def solve_optimal(
    instance: MetricInstance,
    tree: SpanningTree,
    bounds: DegreeBounds,
    policy: str = "min_delta",
    on_nonmetric: str = "ignore",
) -> tuple[SpanningTree, SolveReport]:
    """Adoption-optimal degree-bounded tree via minimum-cost flow.

    On instances whose weights equal path weights of ``tree`` itself, the
    result is a minimum-weight degree-bounded spanning tree outright.
    ``on_nonmetric`` chooses what a failed triangle check does: "ignore"
    (skip the O(n^3) check), "warn", or "raise".
    """
    if on_nonmetric not in ("ignore", "warn", "raise"):
        raise ValueError(f"on_nonmetric must be ignore|warn|raise, got {on_nonmetric!r}")
    if on_nonmetric != "ignore":
        violations = instance.check_triangle()
        if violations:
            msg = f"instance violates the triangle inequality at {len(violations)} triples"
            if on_nonmetric == "raise":
                raise ValueError(msg)
            import warnings

            warnings.warn(msg, stacklevel=2)
    network = build_network(instance, tree, bounds)
    flow = min_cost_flow(network)
    flow_cost = flow.cost(instance)
    w_in = tree_weight(tree, instance)
    if flow.is_zero():
        result = tree.copy()
        realized = 0
        trace = ()
    else:
        seq = flow_to_sequence(flow, tree, instance, bounds, policy)
        result = replay_sequence(tree, seq)
        realized = seq.realized_delta
        trace = seq.steps
    ok = meets_bounds(result, bounds)
    if not ok:
        raise RuntimeError("flow solver failed to meet the degree bounds")
    bound = None
    if min(bounds) >= 2:
        from ._heuristics import performance_bound

        bound = performance_bound(tree, bounds)
    return result, SolveReport(
        algorithm="flow",
        n=tree.n,
        weight_in=w_in,
        weight_out=w_in + realized,
        flow_cost=flow_cost,
        realized_delta=realized,
        meets_bounds=ok,
        bound=bound,
        steps=len(trace),
        trace=trace,
    )
