"""Solve reports and their JSON form.

Rationals are emitted as exact ``p/q`` strings so reports are diff-able and
byte-stable.  Wall time is excluded from the JSON unless explicitly asked
for, because report bytes must not vary between identical runs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .model import Assignment, Formula, count_satisfied
from .formats import instance_digest


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(text) -> Fraction:
    """Exact rational from user input; floats go through str to keep intent."""
    if isinstance(text, float):
        return Fraction(str(text))
    return Fraction(text)


@dataclass
class SolveReport:
    algorithm: str
    instance_digest: str
    value: int
    witness: Assignment | None
    oracle_value: int | None = None
    ratio: Fraction | None = None
    epsilon: Fraction | None = None
    seed: int | None = None
    trials: int | None = None
    route: str | None = None
    satisfiable: bool | None = None
    wall_time_ms: float | None = None

    def verify(self, f: Formula) -> None:
        if self.witness is not None and count_satisfied(f, self.witness) != self.value:
            raise AssertionError("report value does not match its witness")
        if self.oracle_value is not None and self.ratio is not None:
            if self.oracle_value > 0 and self.ratio != Fraction(self.value, self.oracle_value):
                raise AssertionError("report ratio does not match value/oracle_value")

    def to_json_dict(self, include_timing: bool = False) -> dict:
        out = {
            "algorithm": self.algorithm,
            "instance_digest": self.instance_digest,
            "value": self.value,
            "witness": self.witness.bitstring() if self.witness is not None else None,
            "oracle_value": self.oracle_value,
            "ratio": fraction_str(self.ratio) if self.ratio is not None else None,
            "epsilon": fraction_str(self.epsilon) if self.epsilon is not None else None,
            "seed": self.seed,
            "trials": self.trials,
            "route": self.route,
            "satisfiable": self.satisfiable,
        }
        if include_timing:
            out["wall_time_ms"] = self.wall_time_ms
        return out

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_json_dict(include_timing), indent=2, sort_keys=True)


def make_report(algorithm: str, f: Formula, value: int, witness: Assignment | None, **kw) -> SolveReport:
    return SolveReport(
        algorithm=algorithm,
        instance_digest=instance_digest(f),
        value=value,
        witness=witness,
        **kw,
    )
