"""Linear-time degree reduction with a guaranteed weight ratio.

Both algorithms start from the same fractional picture: root the tree, push a
uniform amount ``c`` along every edge toward the root, with

    c = 1 - min{ (bound(v) - 2) / (degree(v) - 2) : degree(v) > 2 }

clamped to [0, 1].  That flow is feasible whenever every bound is >= 2 and
costs c * w(T), which caps the weight increase of the repaired tree at a
factor of 1 + c = 2 - min{...}.

`algorithm1` shortcuts every maximal flow path into a single leaf-to-interior
arc, then rounds greedily: each deficit-D vertex keeps one unit on each of
its D cheapest incoming arcs (linear-time selection, no sorting).
`algorithm2` instead solves the flow restricted to tree edges of capacity one
exactly, by a bottom-up two-state dynamic program, and shortcuts the result.

Adoptions are executed with per-vertex doubly linked child lists in original
order: the adopter takes the successor of its entry child, cyclically,
skipping children already adopted, and never the child subtree it currently
occupies (tracked by a tiny union-find over child slots).

Metric evaluations count as single operations in the op counters; everything
else the algorithms do is amortized O(1) per counted operation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._adoption import AdoptionStep
from ._metric import MetricInstance
from ._report import SolveReport
from ._tree import DegreeBounds, SpanningTree, deficits, meets_bounds, tree_weight


def _check_bounds_at_least_two(bounds: DegreeBounds) -> None:
    for v, d in enumerate(bounds):
        if d < 2:
            raise ValueError(f"bound at vertex {v} is {d}; this solver requires bounds >= 2")


def flow_fraction(tree: SpanningTree, bounds: DegreeBounds) -> Fraction:
    """Uniform flow amount c, an exact rational in [0, 1]."""
    _check_bounds_at_least_two(bounds)
    term = None
    for v in range(tree.n):
        deg = tree.degree(v)
        if deg > 2:
            t = Fraction(bounds[v] - 2, deg - 2)
            if term is None or t < term:
                term = t
    if term is None:
        term = Fraction(1)
    return min(max(Fraction(1) - term, Fraction(0)), Fraction(1))


def performance_bound(tree: SpanningTree, bounds: DegreeBounds) -> Fraction:
    """Guaranteed output/input weight ratio: 1 + c, in [1, 2]."""
    return Fraction(1) + flow_fraction(tree, bounds)


@dataclass(frozen=True)
class UniformFlow:
    """Fraction ``c`` pushed along every child->parent edge of the rooted tree."""

    fraction: Fraction
    root: int
    parent: tuple[int, ...]

    def cost(self, instance: MetricInstance):
        total = 0
        for v, p in enumerate(self.parent):
            if p >= 0:
                total += instance.weight(v, p)
        return self.fraction * total

    def surplus(self, tree: SpanningTree) -> list[Fraction]:
        c = self.fraction
        out = []
        for v in range(tree.n):
            deg = tree.degree(v)
            if v == self.root:
                out.append(c * deg)
            else:
                out.append(c * (deg - 2))
        return out


def uniform_flow(tree: SpanningTree, bounds: DegreeBounds, root: int = 0) -> UniformFlow:
    """The fractional uniform flow; feasible, and cost exactly c * w(T).

    At every non-root vertex the surplus c*(degree-2) covers the deficit and
    stays below degree-1.  At the root the surplus is c*degree, which can
    exceed degree-1 when c is close to 1; the integral flows both linear
    algorithms derive from it are strictly legal regardless.
    """
    c = flow_fraction(tree, bounds)
    parent, _children, _order = tree.rooted(root)
    return UniformFlow(c, root, tuple(parent))


# ---------------------------------------------------------------------------
# linear-time selection

def _select_smallest(items: list, k: int, ops: dict) -> list:
    """Return the k smallest items (unordered); expected linear time.

    Partition-based select with median-of-three pivots; no sorting.
    """
    n = len(items)
    if k <= 0:
        return []
    if k >= n:
        return list(items)
    a = list(items)
    lo, hi = 0, n  # window still containing the boundary index k
    steps = 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        x, y, z = a[lo], a[mid], a[hi - 1]
        pivot = max(min(x, y), min(max(x, y), z))  # median of three
        i, j = lo, hi - 1
        while i <= j:
            while a[i] < pivot:
                i += 1
            while a[j] > pivot:
                j -= 1
            if i <= j:
                a[i], a[j] = a[j], a[i]
                i += 1
                j -= 1
        steps += hi - lo
        # a[lo..j] <= pivot, a[i..hi-1] >= pivot, anything between equals it
        if k <= j:
            hi = j + 1
        elif k >= i:
            lo = i
        else:
            break
    ops["select_steps"] = ops.get("select_steps", 0) + steps
    return a[:k]


# ---------------------------------------------------------------------------
# shared adoption executor

def _execute_unit_arcs(
    work: SpanningTree,
    instance: MetricInstance,
    arcs_by_target: dict[int, list[tuple[int, int]]],
    children: list[list[int]],
    ops: dict,
) -> list[AdoptionStep]:
    """Run one adoption per (adopter, entry-child) arc, grouped by target.

    ``arcs_by_target[v]`` holds (u, q) pairs: u adopts a child of v, and q is
    the original child of v whose subtree contained u when the flow was
    built.  Entry children of distinct arcs at one target are distinct
    because flow paths into a vertex use distinct child edges.
    """
    steps: list[AdoptionStep] = []
    weight = instance.weight
    for v in sorted(arcs_by_target):
        arcs = arcs_by_target[v]
        kids = children[v]
        m = len(kids)
        if len(arcs) > m - 1:
            raise RuntimeError(
                f"target {v} takes {len(arcs)} adoptions but has only {m} children"
            )
        slot = {c: i for i, c in enumerate(kids)}
        nxt = [(i + 1) % m for i in range(m)]
        prv = [(i - 1) % m for i in range(m)]
        alive = [True] * m
        holder = list(range(m))  # union-find: slot whose subtree holds each slot's vertices

        def find(i: int) -> int:
            while holder[i] != i:
                holder[i] = holder[holder[i]]
                i = holder[i]
            return i

        for u, q in arcs:
            qi = slot[q]
            rep = find(qi)  # slot of the current child of v whose subtree holds u
            j = nxt[qi]
            while not alive[j]:
                j = nxt[j]
            nxt[qi] = j  # path-compress stale pointers
            if j == rep:
                j = nxt[j]
            x = kids[j]
            if work.degree(v) < 2:
                raise RuntimeError(f"adoption precondition broke at donor {v}")
            work.remove_edge(v, x)
            work.add_edge(u, x)
            delta = weight(u, x) - weight(v, x)
            steps.append(AdoptionStep(u, v, x, delta))
            # splice slot j out of the ring; its subtree now hangs under u
            alive[j] = False
            nxt[prv[j]] = nxt[j]
            prv[nxt[j]] = prv[j]
            holder[find(j)] = rep
        ops["adoptions"] = ops.get("adoptions", 0) + len(arcs)
        ops["weight_queries"] = ops.get("weight_queries", 0) + 2 * len(arcs)
    return steps


def _identity_report(algorithm, tree, instance, bounds, c, ops) -> tuple[SpanningTree, SolveReport]:
    w_in = tree_weight(tree, instance)
    return tree.copy(), SolveReport(
        algorithm=algorithm,
        n=tree.n,
        weight_in=w_in,
        weight_out=w_in,
        flow_cost=0,
        realized_delta=0,
        meets_bounds=meets_bounds(tree, bounds),
        fraction=c,
        bound=Fraction(1) + c,
        steps=0,
        op_counts=ops,
    )


# ---------------------------------------------------------------------------
# Algorithm 1: shortcut the uniform flow, round greedily

def algorithm1(
    instance: MetricInstance,
    tree: SpanningTree,
    bounds: DegreeBounds,
    root: int = 0,
) -> tuple[SpanningTree, SolveReport]:
    """Shortcut + greedy rounding; meets bounds within the 1 + c ratio."""
    c = flow_fraction(tree, bounds)
    ops: dict = {}
    if c == 0 or tree.n <= 2:
        return _identity_report("greedy", tree, instance, bounds, c, ops)
    parent, children, order = tree.rooted(root)
    need = deficits(tree, bounds)
    ops["visits"] = 2 * tree.n

    # One child path continues through each internal vertex (smallest id);
    # every other incoming path terminates there.  src[v] is the leaf whose
    # path exits v through its parent edge.
    carrier = [min(ch) if ch else -1 for ch in children]
    src = [0] * tree.n
    for v in reversed(order):
        src[v] = v if carrier[v] < 0 else src[carrier[v]]

    incoming: dict[int, list[tuple[int, int]]] = {}
    for v in order[1:]:
        p = parent[v]
        if p == root or v != carrier[p]:
            incoming.setdefault(p, []).append((src[v], v))
    ops["visits"] += tree.n
    # shortcutting preserves surplus: c * (degree-2) units still arrive at
    # every interior vertex (c * degree at the root)
    for v, arcs in incoming.items():
        expect = tree.degree(v) if v == root else tree.degree(v) - 2
        if len(arcs) != expect:
            raise RuntimeError(f"shortcut pass changed the surplus at vertex {v}")

    # greedy rounding: deficit-D targets keep their D cheapest incoming arcs
    weight = instance.weight
    selected: dict[int, list[tuple[int, int]]] = {}
    flow_cost = 0
    for v, arcs in incoming.items():
        if need[v] <= 0:
            continue
        if need[v] > len(arcs):
            raise RuntimeError(
                f"deficit vertex {v} has {len(arcs)} incoming shortcut arcs < deficit {need[v]}"
            )
        keyed = [((weight(u, v), u), (u, q)) for (u, q) in arcs]
        ops["weight_queries"] = ops.get("weight_queries", 0) + len(arcs)
        chosen = _select_smallest(keyed, need[v], ops)
        selected[v] = [arc for _, arc in chosen]
        for (w_uv, _u), _arc in chosen:
            flow_cost += w_uv

    w_in = tree_weight(tree, instance)
    work = tree.copy()
    steps = _execute_unit_arcs(work, instance, selected, children, ops)
    realized = sum(s.delta for s in steps) if steps else 0
    ok = meets_bounds(work, bounds)
    if not ok:
        raise RuntimeError("greedy rounding failed to meet the degree bounds")
    return work, SolveReport(
        algorithm="greedy",
        n=tree.n,
        weight_in=w_in,
        weight_out=w_in + realized,
        flow_cost=flow_cost,
        realized_delta=realized,
        meets_bounds=ok,
        fraction=c,
        bound=Fraction(1) + c,
        steps=len(steps),
        trace=tuple(steps),
        op_counts=ops,
    )


# ---------------------------------------------------------------------------
# Algorithm 2: exact min-cost flow on tree arcs of capacity one, by DP

def algorithm2(
    instance: MetricInstance,
    tree: SpanningTree,
    bounds: DegreeBounds,
    root: int = 0,
) -> tuple[SpanningTree, SolveReport]:
    """Tree-restricted min-cost flow via bottom-up DP, then adoptions.

    ``meet_cost[v]`` is the cheapest flow in v's subtree whose inflow covers
    v's own deficit; ``spare_cost[v]`` additionally passes one unit up the
    parent edge.  The marginal price of drawing a unit from child u is
    w(u, v) + spare_cost[u] - meet_cost[u], which is never negative.
    """
    c = flow_fraction(tree, bounds)
    ops: dict = {}
    if c == 0 or tree.n <= 2:
        return _identity_report("treedp", tree, instance, bounds, c, ops)
    parent, children, order = tree.rooted(root)
    need = deficits(tree, bounds)
    weight = instance.weight

    meet_cost = [0] * tree.n
    spare_cost = [0] * tree.n
    pick_meet: list[tuple[int, ...]] = [()] * tree.n
    pick_spare: list[tuple[int, ...]] = [()] * tree.n
    for v in reversed(order):
        ch = children[v]
        deficit = need[v]
        if not ch:
            if deficit + (0 if v == root else 1) > 0:
                raise RuntimeError(f"leaf {v} cannot source the flow its bound demands")
            continue
        base = 0
        keyed = []
        for u in ch:
            base += meet_cost[u]
            keyed.append(((weight(u, v) + spare_cost[u] - meet_cost[u], u), u))
        ops["weight_queries"] = ops.get("weight_queries", 0) + len(ch)
        ops["visits"] = ops.get("visits", 0) + len(ch)
        take_meet = max(0, deficit)
        take_spare = max(0, deficit + 1)
        if v == root:
            if take_meet > len(ch):
                raise RuntimeError(f"root deficit {deficit} exceeds its child count {len(ch)}")
            chosen = _select_smallest(keyed, take_meet, ops)
            chosen.sort()
            pick_meet[v] = tuple(u for _, u in chosen)
            meet_cost[v] = base + sum(k[0] for k, _ in chosen)
        else:
            if take_spare > len(ch):
                raise RuntimeError(
                    f"vertex {v} needs {take_spare} child units but has {len(ch)} children"
                )
            chosen = _select_smallest(keyed, take_spare, ops)
            chosen.sort()
            pick_spare[v] = tuple(u for _, u in chosen)
            pick_meet[v] = tuple(u for _, u in chosen[: max(0, deficit)])
            spare_cost[v] = base + sum(k[0] for k, _ in chosen)
            meet_cost[v] = base + sum(k[0] for k, _ in chosen[: max(0, deficit)])

    flow_cost = meet_cost[root]

    # top-down recovery of the 0/1 flow on tree edges
    has_out = [False] * tree.n  # flow on (v, parent(v))
    stack = [(root, 0)]
    flow_children: list[list[int]] = [[] for _ in range(tree.n)]
    while stack:
        v, mode = stack.pop()
        chosen = pick_spare[v] if mode else pick_meet[v]
        chosen_set = set(chosen)
        for u in children[v]:
            if u in chosen_set:
                has_out[u] = True
                flow_children[v].append(u)
                stack.append((u, 1))
            else:
                stack.append((u, 0))

    # shortcut maximal flow paths; the smallest flow-child's path continues
    src = [0] * tree.n
    for v in reversed(order):
        fc = flow_children[v]
        if has_out[v]:
            src[v] = src[min(fc)] if fc else v
    arcs_by_target: dict[int, list[tuple[int, int]]] = {}
    terminated = [0] * tree.n
    for v in order:
        fc = flow_children[v]
        if not fc:
            continue
        cont = min(fc) if has_out[v] else -1
        for u in fc:
            if u != cont:
                arcs_by_target.setdefault(v, []).append((src[u], u))
                terminated[v] += 1
    # shortcutting must preserve every vertex's surplus
    for v in range(tree.n):
        surplus = len(flow_children[v]) - (1 if has_out[v] else 0)
        if terminated[v] != max(0, surplus):
            raise RuntimeError(f"shortcut pass changed the surplus at vertex {v}")

    w_in = tree_weight(tree, instance)
    work = tree.copy()
    steps = _execute_unit_arcs(work, instance, arcs_by_target, children, ops)
    realized = sum(s.delta for s in steps) if steps else 0
    ok = meets_bounds(work, bounds)
    if not ok:
        raise RuntimeError("tree DP failed to meet the degree bounds")
    return work, SolveReport(
        algorithm="treedp",
        n=tree.n,
        weight_in=w_in,
        weight_out=w_in + realized,
        flow_cost=flow_cost,
        realized_delta=realized,
        meets_bounds=ok,
        fraction=c,
        bound=Fraction(1) + c,
        steps=len(steps),
        trace=tuple(steps),
        op_counts=ops,
    )
