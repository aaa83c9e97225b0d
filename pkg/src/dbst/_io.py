"""File formats.

Instance files are JSON documents with the fields

    n           vertex count
    source      "matrix" | "points" | "tree"
    norm        "l1" | "l2" | "linf"        (points only)
    matrix      row-major upper triangle, u < v, n*(n-1)/2 entries
    points      coordinate pairs
    tree_edges  n-1 [u, v] pairs            (tree source)
    tree_weights weights parallel to tree_edges
    bounds      n positive integers         (optional)

Weights are JSON numbers or exact rationals written as "p/q" strings.
Tree files are ``{"n": ..., "edges": [[u, v], ...]}``.

Adoption traces are plain text, one ``ADOPT u v x delta`` line per step, and
flow dumps are ``FLOW u v f cost`` lines.
"""

from __future__ import annotations

import json
from fractions import Fraction

from ._adoption import AdoptionFlow, AdoptionSequence
from ._metric import MetricInstance
from ._tree import DegreeBounds, SpanningTree


def parse_weight(value):
    if isinstance(value, bool):
        raise ValueError(f"invalid weight {value!r}")
    if isinstance(value, (int, float)):
        return value
    if isinstance(value, str):
        f = Fraction(value)
        return int(f) if f.denominator == 1 else f
    raise ValueError(f"invalid weight {value!r}")


def format_weight(value):
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    return value


def instance_to_dict(instance: MetricInstance, bounds: DegreeBounds | None = None) -> dict:
    doc: dict = {"n": instance.n, "source": instance.source}
    if instance.source == "points":
        doc["norm"] = instance.norm
        doc["points"] = [list(p) for p in instance.points]
    elif instance.source == "matrix":
        doc["matrix"] = [
            format_weight(instance.weight(u, v))
            for u in range(instance.n)
            for v in range(u + 1, instance.n)
        ]
    else:
        tree = instance.inducing_tree
        edges = sorted(tree.edges())
        doc["tree_edges"] = [list(e) for e in edges]
        doc["tree_weights"] = [format_weight(instance.base_edge_weight(u, v)) for u, v in edges]
    if bounds is not None:
        doc["bounds"] = list(bounds)
    return doc


def instance_from_dict(doc: dict) -> tuple[MetricInstance, DegreeBounds | None]:
    try:
        n = int(doc["n"])
        source = doc["source"]
        if source == "points":
            instance = MetricInstance.from_points(doc["points"], doc.get("norm", "l2"))
        elif source == "matrix":
            entries = [parse_weight(w) for w in doc["matrix"]]
            instance = MetricInstance.from_upper_triangle(n, entries)
        elif source == "tree":
            tree = SpanningTree(n, [tuple(e) for e in doc["tree_edges"]])
            weights = {}
            for (u, v), w in zip(doc["tree_edges"], doc["tree_weights"]):
                key = (u, v) if u < v else (v, u)
                weights[key] = parse_weight(w)
            instance = MetricInstance.from_tree(tree, weights)
        else:
            raise ValueError(f"unknown source {source!r}")
    except KeyError as e:
        raise ValueError(f"instance document is missing field {e.args[0]!r}") from None
    if instance.n != n:
        raise ValueError(f"declared n={n} but source describes {instance.n} vertices")
    bounds = None
    if "bounds" in doc:
        bounds = DegreeBounds([int(d) for d in doc["bounds"]])
        if len(bounds) != n:
            raise ValueError(f"expected {n} bounds, got {len(bounds)}")
    return instance, bounds


def save_instance(path, instance: MetricInstance, bounds: DegreeBounds | None = None) -> None:
    with open(path, "w") as fh:
        json.dump(instance_to_dict(instance, bounds), fh)
        fh.write("\n")


def load_instance(path) -> tuple[MetricInstance, DegreeBounds | None]:
    with open(path) as fh:
        return instance_from_dict(json.load(fh))


def save_tree(path, tree: SpanningTree) -> None:
    with open(path, "w") as fh:
        json.dump({"n": tree.n, "edges": [list(e) for e in sorted(tree.edges())]}, fh)
        fh.write("\n")


def load_tree(path) -> SpanningTree:
    with open(path) as fh:
        doc = json.load(fh)
    tree = SpanningTree(int(doc["n"]))
    for u, v in doc["edges"]:
        tree.add_edge(int(u), int(v))
    return tree


def format_trace(steps) -> str:
    """One ``ADOPT u v x delta`` line per executed step.

    Accepts an :class:`AdoptionSequence` or any iterable of steps.
    """
    lines = [
        f"ADOPT {s.adopter} {s.donor} {s.adopted} {format_weight(s.delta)}" for s in steps
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_trace(text: str) -> list[tuple[int, int, int]]:
    """(adopter, donor, adopted) triples from a trace document."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "ADOPT" or len(parts) != 5:
            raise ValueError(f"line {lineno}: expected 'ADOPT u v x delta', got {line!r}")
        out.append((int(parts[1]), int(parts[2]), int(parts[3])))
    return out


def format_flow_dump(flow: AdoptionFlow, instance: MetricInstance) -> str:
    """One ``FLOW u v f cost`` line per positive arc."""
    lines = [
        f"FLOW {u} {v} {f} {format_weight(f * instance.weight(u, v))}"
        for u, v, f in flow.positive_arcs()
    ]
    return "\n".join(lines) + ("\n" if lines else "")
