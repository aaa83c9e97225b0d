"""Adoption moves, adoption sequences, and their flow counterparts.

An adoption (u, v) detaches one neighbor x of v and reattaches it to u:
degree(v) drops by one, degree(u) grows by one, and the tree stays spanning
because x is never the neighbor of v on the current u..v path.  The nominal
cost of a move is w(u, v); triangle inequality guarantees the realized weight
change w(u,x) - w(v,x) never exceeds it.

Sequences of adoptions correspond to integer skew-symmetric flows: the net
flow on (u, v) counts how often u adopts a neighbor of v.  The converse
construction cancels directed cycles, then replays arcs in reverse
topological order so every vertex gains degree before it loses any, keeping
each move legal.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from ._metric import MetricInstance
from ._tree import DegreeBounds, SpanningTree, deficits

POLICIES = ("min_delta", "first")


class AdoptionError(ValueError):
    """An adoption move was attempted with its precondition unmet."""


class FlowError(ValueError):
    """A flow failed the legality or feasibility requirement at a vertex."""

    def __init__(self, message: str, vertex: int):
        super().__init__(message)
        self.vertex = vertex


@dataclass(frozen=True)
class AdoptionStep:
    adopter: int
    donor: int
    adopted: int
    delta: object  # realized weight change w(adopter, adopted) - w(donor, adopted)


class AdoptionSequence:
    """Immutable record of executed adoptions with cost accounting."""

    __slots__ = ("steps", "nominal_cost", "realized_delta")

    def __init__(self, steps: Sequence[AdoptionStep], nominal_cost):
        self.steps = tuple(steps)
        self.nominal_cost = nominal_cost
        total = 0
        for s in self.steps:
            total += s.delta
        self.realized_delta = total

    def pairs(self) -> list[tuple[int, int]]:
        return [(s.adopter, s.donor) for s in self.steps]

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __repr__(self) -> str:
        return f"AdoptionSequence({len(self.steps)} steps, nominal_cost={self.nominal_cost})"


def adopt(
    tree: SpanningTree,
    u: int,
    v: int,
    instance: MetricInstance,
    policy: str = "min_delta",
) -> tuple[int, object]:
    """Execute one adoption in place; returns (adopted neighbor, weight delta).

    ``min_delta`` picks the eligible neighbor minimizing w(u,x) - w(v,x),
    ties to the smallest vertex id; ``first`` takes the first eligible
    neighbor in adjacency order.
    """
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}; expected one of {POLICIES}")
    if u == v:
        raise AdoptionError(f"vertex {u} cannot adopt from itself")
    if tree.degree(v) < 2:
        raise AdoptionError(f"donor {v} has degree {tree.degree(v)} < 2")
    path = tree.path(u, v)
    blocked = path[-2]  # neighbor of v on the current u..v path
    chosen = None
    if policy == "first":
        for x in tree.neighbors(v):
            if x != blocked:
                chosen = x
                break
    else:
        best = None
        for x in tree.neighbors(v):
            if x == blocked:
                continue
            d = instance.weight(u, x) - instance.weight(v, x)
            if best is None or (d, x) < best:
                best = (d, x)
        if best is not None:
            chosen = best[1]
    if chosen is None:
        raise AdoptionError(f"donor {v} has no adoptable neighbor for adopter {u}")
    tree.remove_edge(v, chosen)
    tree.add_edge(u, chosen)
    delta = instance.weight(u, chosen) - instance.weight(v, chosen)
    return chosen, delta


def apply_sequence(
    tree: SpanningTree,
    pairs: Iterable[tuple[int, int]],
    instance: MetricInstance,
    bounds: DegreeBounds | None = None,
    policy: str = "min_delta",
) -> tuple[SpanningTree, AdoptionSequence]:
    """Execute (adopter, donor) pairs in order on a copy of ``tree``."""
    work = tree.copy()
    steps = []
    nominal = 0
    for u, v in pairs:
        x, delta = adopt(work, u, v, instance, policy)
        steps.append(AdoptionStep(u, v, x, delta))
        nominal += instance.weight(u, v)
    return work, AdoptionSequence(steps, nominal)


def replay_sequence(tree: SpanningTree, seq: AdoptionSequence) -> SpanningTree:
    """Re-apply recorded steps exactly (same adopted neighbors)."""
    work = tree.copy()
    for s in seq:
        work.remove_edge(s.donor, s.adopted)
        work.add_edge(s.adopter, s.adopted)
    return work


def sequence_cost(seq: AdoptionSequence, instance: MetricInstance):
    """Nominal cost: sum of w(adopter, donor) over the steps."""
    total = 0
    for s in seq:
        total += instance.weight(s.adopter, s.donor)
    return total


def sequence_feasible(seq: AdoptionSequence, tree: SpanningTree, bounds: DegreeBounds) -> bool:
    """True iff every vertex's net degree decrease covers its deficit."""
    need = deficits(tree, bounds)
    decrease = [0] * tree.n
    for s in seq:
        decrease[s.donor] += 1
        decrease[s.adopter] -= 1
    return all(decrease[v] >= need[v] for v in range(tree.n))


class AdoptionFlow:
    """Integer skew-symmetric flow on ordered vertex pairs.

    Only the positive direction of each pair is stored; ``flow(u, v)``
    reports the signed value.  The surplus of a vertex is its net inflow
    over positive-flow arcs, i.e. exactly the degree decrease an equivalent
    adoption sequence would inflict on it.
    """

    __slots__ = ("n", "_arcs")

    def __init__(self, n: int, arcs: Mapping[tuple[int, int], int] | None = None):
        self.n = n
        self._arcs: dict[tuple[int, int], int] = {}
        if arcs:
            for (u, v), f in arcs.items():
                self._add(u, v, f)

    @classmethod
    def from_arcs(cls, n: int, arcs: Mapping[tuple[int, int], int]) -> "AdoptionFlow":
        """Build from raw directed counts; antiparallel pairs net out."""
        return cls(n, arcs)

    def _add(self, u: int, v: int, f: int) -> None:
        if not isinstance(f, int):
            raise TypeError(f"flow values must be integers, got {f!r}")
        if u == v:
            raise ValueError(f"self-loop arc at vertex {u}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise IndexError(f"arc ({u}, {v}) out of range")
        cur = self._arcs.pop((u, v), 0) - self._arcs.pop((v, u), 0)
        net = cur + f
        if net > 0:
            self._arcs[(u, v)] = net
        elif net < 0:
            self._arcs[(v, u)] = -net

    def flow(self, u: int, v: int) -> int:
        return self._arcs.get((u, v), 0) - self._arcs.get((v, u), 0)

    def positive_arcs(self) -> list[tuple[int, int, int]]:
        return sorted((u, v, f) for (u, v), f in self._arcs.items())

    def surplus(self) -> list[int]:
        out = [0] * self.n
        for (u, v), f in self._arcs.items():
            out[v] += f
            out[u] -= f
        return out

    def cost(self, instance: MetricInstance):
        total = 0
        for (u, v), f in self._arcs.items():
            total += f * instance.weight(u, v)
        return total

    def is_zero(self) -> bool:
        return not self._arcs

    def copy(self) -> "AdoptionFlow":
        f = AdoptionFlow(self.n)
        f._arcs = dict(self._arcs)
        return f

    def check_legal(self, tree: SpanningTree) -> None:
        """Legal: surplus(v) <= degree(v) - 1, so no vertex drops below degree 1."""
        for v, s in enumerate(self.surplus()):
            if s > tree.degree(v) - 1:
                raise FlowError(
                    f"illegal flow: surplus {s} at vertex {v} exceeds degree-1 = {tree.degree(v) - 1}",
                    v,
                )

    def check_feasible(self, tree: SpanningTree, bounds: DegreeBounds) -> None:
        """Feasible: surplus(v) covers the deficit degree(v) - bound(v)."""
        need = deficits(tree, bounds)
        for v, s in enumerate(self.surplus()):
            if s < need[v]:
                raise FlowError(
                    f"infeasible flow: surplus {s} at vertex {v} is below deficit {need[v]}",
                    v,
                )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AdoptionFlow):
            return NotImplemented
        return self.n == other.n and self._arcs == other._arcs

    def __repr__(self) -> str:
        return f"AdoptionFlow(n={self.n}, arcs={self.positive_arcs()})"


def sequence_to_flow(seq: AdoptionSequence, n: int) -> AdoptionFlow:
    """Flow with f(u, v) = number of times u adopts a neighbor of v."""
    flow = AdoptionFlow(n)
    for s in seq:
        flow._add(s.adopter, s.donor, 1)
    return flow


def cancel_cycles(flow: AdoptionFlow) -> AdoptionFlow:
    """Remove directed cycles among positive arcs; never raises the cost.

    Every vertex's surplus is untouched because a cycle enters and leaves
    each of its vertices equally often.
    """
    out = flow.copy()
    while True:
        cycle = _find_cycle(out)
        if cycle is None:
            return out
        slack = min(out._arcs[arc] for arc in cycle)
        for arc in cycle:
            out._add(arc[1], arc[0], slack)


def _find_cycle(flow: AdoptionFlow) -> list[tuple[int, int]] | None:
    succ: dict[int, list[int]] = {}
    for (u, v), _ in sorted(flow._arcs.items()):
        succ.setdefault(u, []).append(v)
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {u: WHITE for u in succ}
    for start in sorted(succ):
        if color[start] != WHITE:
            continue
        stack = [(start, iter(succ[start]))]
        color[start] = GRAY
        trail = [start]
        while stack:
            u, it = stack[-1]
            advanced = False
            for v in it:
                if v not in succ:
                    continue
                if color.get(v, WHITE) == GRAY:
                    i = trail.index(v)
                    cyc = trail[i:] + [v]
                    return [(cyc[j], cyc[j + 1]) for j in range(len(cyc) - 1)]
                if color.get(v, WHITE) == WHITE:
                    color[v] = GRAY
                    trail.append(v)
                    stack.append((v, iter(succ[v])))
                    advanced = True
                    break
            if not advanced:
                color[u] = BLACK
                trail.pop()
                stack.pop()
    return None


def flow_to_sequence(
    flow: AdoptionFlow,
    tree: SpanningTree,
    instance: MetricInstance,
    bounds: DegreeBounds,
    policy: str = "min_delta",
) -> AdoptionSequence:
    """Turn a legal feasible integer flow into a legal feasible sequence.

    Cycles are cancelled first, then vertices are processed in reverse
    topological order of the remaining positive-arc DAG, so each vertex's
    outgoing arcs (degree gains) run before any incoming arc (degree losses).
    The nominal cost never exceeds the flow cost.
    """
    flow.check_legal(tree)
    flow.check_feasible(tree, bounds)
    dag = cancel_cycles(flow)
    order = _topo_order(dag)
    work = tree.copy()
    steps = []
    nominal = 0
    for u in reversed(order):
        for v in sorted(x for (a, x) in dag._arcs if a == u):
            for _ in range(dag._arcs[(u, v)]):
                x, delta = adopt(work, u, v, instance, policy)
                steps.append(AdoptionStep(u, v, x, delta))
                nominal += instance.weight(u, v)
    return AdoptionSequence(steps, nominal)


def _topo_order(flow: AdoptionFlow) -> list[int]:
    """Kahn's algorithm, smallest ready vertex first, over all n vertices."""
    indeg = [0] * flow.n
    succ: dict[int, list[int]] = {}
    for (u, v), _ in flow._arcs.items():
        indeg[v] += 1
        succ.setdefault(u, []).append(v)
    ready = [v for v in range(flow.n) if indeg[v] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        u = heapq.heappop(ready)
        order.append(u)
        for v in succ.get(u, ()):
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(ready, v)
    if len(order) != flow.n:
        raise RuntimeError("positive arcs still contain a cycle after cancellation")
    return order
