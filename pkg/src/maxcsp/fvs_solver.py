"""Approximation scheme for MAX-THRESHOLD parameterized by an incidence
feedback vertex set.

With a feedback vertex set F of size k, either the instance is small enough
(m at most (1 + 2/eps) * k) to solve exactly through the cover solver, or we
guess the assignment of F's variable vertices, delete F's constraint
vertices, solve the acyclic residual exactly with the forest solver, and keep
the best candidate evaluated on the original formula.  The best candidate
satisfies at least (1 - eps) * OPT constraints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .cover_solver import all_constraints_cover, solve_via_vertex_cover
from .errors import ContractViolationError, PreconditionError
from .forest_solver import solve_forest
from .graphs import VertexSplit, build_incidence_graph, is_acyclic
from .model import Assignment, Formula, Kind, as_threshold_formula, count_satisfied, simplify_fix_variable
from .report import SolveReport, make_report, parse_fraction

ROUTE_EXACT_SMALL = "exact-small"
ROUTE_APPROX = "approx"


@dataclass(frozen=True)
class FvsPlan:
    """A verified feedback vertex set together with the chosen solve route."""

    fvs: VertexSplit
    epsilon: Fraction
    route: str

    @property
    def size(self) -> int:
        return self.fvs.size


def verify_feedback_vertex_set(f: Formula, fvs: VertexSplit) -> None:
    _check_split_range(f, fvs)
    inc = build_incidence_graph(f)
    if not is_acyclic(inc.graph, inc.vertices_of(fvs)):
        raise PreconditionError("deleting the given vertices does not leave a forest")


def _check_split_range(f: Formula, split: VertexSplit) -> None:
    for x in split.variables:
        if not 1 <= x <= f.num_vars:
            raise PreconditionError(f"variable {x} is not in the formula")
    for j in split.constraints:
        if not 0 <= j < f.num_constraints:
            raise PreconditionError(f"constraint index {j} is not in the formula")


def plan_route(f: Formula, fvs: VertexSplit, epsilon) -> FvsPlan:
    """Route selection with exact rational arithmetic on the threshold."""
    eps = parse_fraction(epsilon)
    if not 0 < eps < 1:
        raise PreconditionError(f"epsilon must be in (0, 1), got {eps}")
    k = fvs.size
    small = Fraction(f.num_constraints) <= (1 + Fraction(2) / eps) * k
    return FvsPlan(fvs, eps, ROUTE_EXACT_SMALL if small else ROUTE_APPROX)


def approx_via_fvs(f: Formula, fvs: VertexSplit, epsilon) -> SolveReport:
    """(1 - eps)-approximate MAX-THRESHOLD given a verified feedback vertex set."""
    if any(c.kind is Kind.PARITY for c in f.constraints):
        raise PreconditionError("feedback-vertex-set scheme handles only threshold-style constraints")
    try:
        thr = as_threshold_formula(f)
    except ContractViolationError as exc:
        raise PreconditionError(str(exc)) from exc
    verify_feedback_vertex_set(thr, fvs)
    plan = plan_route(thr, fvs, epsilon)

    if plan.route == ROUTE_EXACT_SMALL:
        res = solve_via_vertex_cover(thr, all_constraints_cover(thr))
        value, witness = res.value, res.witness
    else:
        guess_vars = sorted(fvs.variables)
        kept = [j for j in range(thr.num_constraints) if j not in fvs.constraints]
        best_value = -1
        best_witness: Assignment | None = None
        for sigma in product((0, 1), repeat=len(guess_vars)):
            residual = thr
            for x, v in zip(guess_vars, sigma):
                residual, removed = simplify_fix_variable(residual, x, v)
                if removed:
                    raise AssertionError("threshold simplification must not drop constraints")
            residual = Formula(thr.num_vars, tuple(residual.constraints[j] for j in kept))
            tree = solve_forest(residual)
            candidate = tree.witness
            for x, v in zip(guess_vars, sigma):
                candidate = candidate.replace(x, v)
            # Deleted constraints can be satisfied incidentally, so score the
            # candidate on the original formula.
            value = count_satisfied(thr, candidate)
            if value < tree.value:
                raise AssertionError("original evaluation lost residual constraints")
            if value > best_value:
                best_value = value
                best_witness = candidate
        value, witness = best_value, best_witness

    assert witness is not None
    return make_report(
        "fvs-as",
        f,
        value,
        witness,
        epsilon=plan.epsilon,
        route=plan.route,
    )
