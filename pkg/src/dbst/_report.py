"""Solver result record shared by the flow solver and the linear heuristics."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


def _as_ratio(num, den):
    if den == 0:
        return Fraction(1) if not isinstance(num, float) else 1.0
    if isinstance(num, float) or isinstance(den, float):
        return num / den
    return Fraction(num, den)


@dataclass
class SolveReport:
    algorithm: str
    n: int
    weight_in: object
    weight_out: object
    flow_cost: object
    realized_delta: object
    meets_bounds: bool
    fraction: object | None = None  # uniform flow amount, heuristics only
    bound: object | None = None  # guaranteed weight_out / weight_in cap
    steps: int = 0
    trace: tuple = ()  # executed AdoptionStep records, in order
    op_counts: dict = field(default_factory=dict)

    @property
    def ratio(self):
        return _as_ratio(self.weight_out, self.weight_in)

    def to_dict(self) -> dict:
        def plain(x):
            if isinstance(x, Fraction):
                return str(x)
            return x

        out = {
            "algorithm": self.algorithm,
            "n": self.n,
            "weight_in": plain(self.weight_in),
            "weight_out": plain(self.weight_out),
            "flow_cost": plain(self.flow_cost),
            "realized_delta": plain(self.realized_delta),
            "c": plain(self.fraction),
            "bound": plain(self.bound),
            "ratio": plain(self.ratio),
            "meets_bounds": self.meets_bounds,
            "steps": self.steps,
        }
        if self.op_counts:
            out["ops"] = dict(self.op_counts)
        return out
