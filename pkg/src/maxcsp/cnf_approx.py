"""Randomized approximation scheme for MAX-CNF (OR constraints only).

Pipeline: split clauses into short / medium / long by scanning for a size
cutoff whose window [d, L*d] holds almost no clause mass, drop the medium
window, then either solve the dominant short side exactly, satisfy a
dominant long side with random assignments, or, in the balanced case, pick a
set of variables that occur almost exclusively in long clauses, solve the
untouched short clauses exactly and randomize the rest.  Candidates are
always scored against the original formula and the best of a fixed number of
trials is returned, so fixed seeds give identical reports.

The exact step is pluggable; the default backend is the brute-force oracle
applied to the relevant subformula projected onto its occurring variables.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import (
    ContractViolationError,
    LemmaViolationError,
    PreconditionError,
    ResourceLimitError,
)
from .model import Assignment, Constraint, Formula, Kind, Literal, count_satisfied
from .oracle import DEFAULT_VAR_LIMIT, OracleResult, max_csp_bruteforce
from .report import SolveReport, make_report, parse_fraction

DEFAULT_TRIALS = 32
DEFAULT_WINDOW_EXPONENT = 4

ExactBackend = Callable[[Formula], OracleResult]


@dataclass(frozen=True)
class ClausePartition:
    """Three-way split of a CNF by clause size.

    ``cutoff`` is the smallest d >= 1 whose window [d, window_ratio * d]
    contains at most an epsilon_prime fraction of all clauses; short means
    size < d, long means size > window_top.  ``histogram`` maps clause size
    to its fraction of the formula.
    """

    formula: Formula
    epsilon_prime: Fraction
    window_exponent: int
    window_ratio: Fraction
    cutoff: int
    window_top: Fraction
    short: tuple[int, ...]
    medium: tuple[int, ...]
    long: tuple[int, ...]
    histogram: dict[int, Fraction]

    @property
    def num_clauses(self) -> int:
        return self.formula.num_constraints


@dataclass(frozen=True)
class SparseVariableSelection:
    """Variables chosen for random assignment in the balanced branch.

    The selection guarantees, and re-checks at runtime, that few short
    clauses touch the chosen variables, that almost every long clause
    contains many of them, and that the set itself is small.
    """

    variables: tuple[int, ...]
    remaining_long: tuple[int, ...]
    audit: dict[str, int]


def _require_cnf(f: Formula) -> None:
    if any(c.kind is not Kind.OR for c in f.constraints):
        raise ContractViolationError("expected a CNF formula (OR constraints only)")


def clause_partition(
    f: Formula, epsilon_prime, window_exponent: int = DEFAULT_WINDOW_EXPONENT
) -> ClausePartition:
    """Find the smallest size cutoff whose medium window is nearly empty.

    Scans d = 1, 2, ... up to one past the largest clause size, where the
    window is empty and the bound holds vacuously, so the scan always
    terminates.
    """
    _require_cnf(f)
    eps_prime = parse_fraction(epsilon_prime)
    if not 0 < eps_prime < 1:
        raise PreconditionError(f"epsilon_prime must be in (0, 1), got {eps_prime}")
    ratio = eps_prime ** (-window_exponent)
    m = f.num_constraints
    sizes = [c.arity for c in f.constraints]
    max_size = max(sizes, default=0)
    cutoff = None
    for d in range(1, max_size + 2):
        top = ratio * d
        mass = sum(1 for s in sizes if d <= s and Fraction(s) <= top)
        if Fraction(mass) <= eps_prime * m:
            cutoff = d
            break
    assert cutoff is not None
    top = ratio * cutoff
    short = tuple(j for j, s in enumerate(sizes) if s < cutoff)
    medium = tuple(j for j, s in enumerate(sizes) if cutoff <= s and Fraction(s) <= top)
    long = tuple(j for j, s in enumerate(sizes) if Fraction(s) > top)
    histogram: dict[int, Fraction] = {}
    if m:
        for s in sizes:
            histogram[s] = histogram.get(s, Fraction(0)) + Fraction(1, m)
    return ClausePartition(
        formula=f,
        epsilon_prime=eps_prime,
        window_exponent=window_exponent,
        window_ratio=ratio,
        cutoff=cutoff,
        window_top=top,
        short=short,
        medium=medium,
        long=long,
        histogram=histogram,
    )


def is_balanced(partition: ClausePartition, epsilon) -> bool:
    """Both the short and the long side hold at least an eps/2 clause fraction."""
    eps = parse_fraction(epsilon)
    bound = eps / 2 * partition.num_clauses
    return Fraction(len(partition.short)) >= bound and Fraction(len(partition.long)) >= bound


def select_sparse_variables(partition: ClausePartition, epsilon) -> SparseVariableSelection:
    """Greedily pick variables that are sparse in short clauses.

    Repeatedly takes the variable minimizing (short occurrences) / (live long
    occurrences), requiring the ratio to be at most (eps/4)^2; drops a live
    long clause once more than 1/eps of its variables have been picked; stops
    when at most eps^2 * m long clauses remain live.  The three selection
    properties are re-checked before returning and any violation raises.
    """
    eps = parse_fraction(epsilon)
    if not 0 < eps < 1:
        raise PreconditionError(f"epsilon must be in (0, 1), got {eps}")
    if not is_balanced(partition, eps):
        raise PreconditionError("selection requires a balanced short/long split")
    f = partition.formula
    m = f.num_constraints

    short_count: dict[int, int] = {}
    for j in partition.short:
        for var in f.constraints[j].variables:
            short_count[var] = short_count.get(var, 0) + 1
    live: set[int] = set(partition.long)
    live_occ: dict[int, set[int]] = {}
    clause_vars: dict[int, tuple[int, ...]] = {}
    for j in partition.long:
        clause_vars[j] = f.constraints[j].variables
        for var in clause_vars[j]:
            live_occ.setdefault(var, set()).add(j)

    chosen: list[int] = []
    chosen_set: set[int] = set()
    picked_in_clause: dict[int, int] = {j: 0 for j in partition.long}
    stop_bound = eps * eps * m
    qual = (eps / 4) ** 2

    while Fraction(len(live)) > stop_bound:
        best_var = None
        best_ratio: Fraction | None = None
        for var, occ in live_occ.items():
            if var in chosen_set or not occ:
                continue
            ratio = Fraction(short_count.get(var, 0), len(occ))
            if best_ratio is None or ratio < best_ratio or (ratio == best_ratio and var < best_var):
                best_var, best_ratio = var, ratio
        if best_var is None or best_ratio > qual:
            raise LemmaViolationError(
                "no sufficiently sparse variable exists; the balanced split is degenerate"
            )
        chosen.append(best_var)
        chosen_set.add(best_var)
        for j in sorted(live_occ[best_var]):
            if j not in live:
                continue
            picked_in_clause[j] += 1
            if Fraction(picked_in_clause[j]) * eps > 1:
                live.discard(j)
                for var in clause_vars[j]:
                    occ = live_occ.get(var)
                    if occ is not None:
                        occ.discard(j)

    touched_short = sum(
        1
        for j in partition.short
        if any(v in chosen_set for v in f.constraints[j].variables)
    )
    sparse_long = sum(
        1
        for j in partition.long
        if Fraction(sum(1 for v in f.constraints[j].variables if v in chosen_set)) * eps <= 1
    )
    audit = {
        "short_clauses_touched": touched_short,
        "long_clauses_with_few_chosen": sparse_long,
        "chosen_size": len(chosen),
    }
    if Fraction(touched_short) > eps * m / 4:
        raise LemmaViolationError("too many short clauses touch the chosen variables")
    if Fraction(sparse_long) > eps * eps * m:
        raise LemmaViolationError("too many long clauses contain few chosen variables")
    if Fraction(len(chosen)) * eps > m:
        raise LemmaViolationError("chosen variable set is larger than m/eps")
    return SparseVariableSelection(tuple(chosen), tuple(sorted(live)), audit)


def _project_and_solve(
    f: Formula, clause_indices: Sequence[int], backend: ExactBackend
) -> dict[int, int]:
    """Solve the given clauses exactly; returns values for occurring variables."""
    if not clause_indices:
        return {}
    variables = sorted({v for j in clause_indices for v in f.constraints[j].variables})
    rename = {v: i + 1 for i, v in enumerate(variables)}
    clauses = []
    for j in clause_indices:
        lits = tuple(Literal(rename[lit.var], lit.positive) for lit in f.constraints[j].literals)
        clauses.append(Constraint(Kind.OR, lits))
    sub = Formula(len(variables), tuple(clauses))
    result = backend(sub)
    return {v: result.witness.value(rename[v]) for v in variables}


def _random_fill(
    base: dict[int, int], num_vars: int, rng: random.Random
) -> Assignment:
    bits = []
    for var in range(1, num_vars + 1):
        if var in base:
            bits.append(base[var])
        else:
            bits.append(rng.getrandbits(1))
    return Assignment(tuple(bits))


def expected_unsatisfied(f: Formula, clause_indices: Iterable[int] | None = None) -> Fraction:
    """Expected number of clauses a uniform random assignment leaves false."""
    _require_cnf(f)
    indices = range(f.num_constraints) if clause_indices is None else clause_indices
    return sum(
        (Fraction(1, 2 ** f.constraints[j].arity) for j in indices), Fraction(0)
    )


def approx_max_cnf(
    f: Formula,
    epsilon,
    seed: int,
    trials: int = DEFAULT_TRIALS,
    window_exponent: int = DEFAULT_WINDOW_EXPONENT,
    exact_backend: ExactBackend | None = None,
    backend_var_limit: int = DEFAULT_VAR_LIMIT,
) -> SolveReport:
    """Best-of-trials randomized (1 - eps)-approximation for MAX-CNF.

    The expectation guarantee requires eps < 1/8 and the default window
    exponent; larger eps values are accepted and simply run the same
    pipeline.  In the balanced branch each trial also scores the two
    unbalanced strategies (exact short side, all random) so the result never
    falls below either baseline.
    """
    _require_cnf(f)
    eps = parse_fraction(epsilon)
    if not 0 < eps < 1:
        raise PreconditionError(f"epsilon must be in (0, 1), got {eps}")
    if trials < 1:
        raise PreconditionError("trials must be at least 1")
    if exact_backend is None:
        def exact_backend(sub: Formula) -> OracleResult:
            if sub.num_vars > backend_var_limit:
                raise ResourceLimitError(
                    f"exact backend limit is {backend_var_limit} variables but the "
                    f"subformula has {sub.num_vars}; raise the backend limit or use "
                    "fewer variables"
                )
            return max_csp_bruteforce(sub, var_limit=backend_var_limit)

    partition = clause_partition(f, eps * eps, window_exponent)
    m = f.num_constraints
    if len(partition.medium) > (eps * eps * m):
        raise AssertionError("medium window holds more clause mass than allowed")

    balanced = is_balanced(partition, eps)
    selection: SparseVariableSelection | None = None
    if balanced:
        try:
            selection = select_sparse_variables(partition, eps)
        except LemmaViolationError:
            selection = None  # fall back to handling the larger side below

    candidates: list[tuple[str, dict[int, int]]] = []
    if selection is not None:
        route = "balanced"
        chosen = set(selection.variables)
        untouched_short = [
            j
            for j in partition.short
            if not any(v in chosen for v in f.constraints[j].variables)
        ]
        candidates.append(("main", _project_and_solve(f, untouched_short, exact_backend)))
        try:
            # baseline: the unbalanced-short strategy on the same instance
            candidates.append(("short", _project_and_solve(f, partition.short, exact_backend)))
        except ResourceLimitError:
            pass  # the baseline is optional quality, the main candidate stands
        candidates.append(("rand", {}))
    else:
        if not balanced:
            # dropped-side accounting: the side being discarded is small
            smaller = min(len(partition.short), len(partition.long))
            if Fraction(smaller) >= eps / 2 * m:
                raise AssertionError("unbalanced branch reached with both sides large")
        if len(partition.short) >= len(partition.long):
            route = "unbalanced-short"
            candidates.append(("main", _project_and_solve(f, partition.short, exact_backend)))
        else:
            route = "unbalanced-long"
            candidates.append(("main", {}))

    best_value = -1
    best_witness: Assignment | None = None
    for trial in range(trials):
        for label, base in candidates:
            rng = random.Random(f"{seed}:{trial}:{label}")
            candidate = _random_fill(base, f.num_vars, rng)
            value = count_satisfied(f, candidate)
            if value > best_value:
                best_value = value
                best_witness = candidate

    assert best_witness is not None
    return make_report(
        "cw-as",
        f,
        best_value,
        best_witness,
        epsilon=eps,
        seed=seed,
        trials=trials,
        route=route,
    )
