"""Ground-truth engines: exhaustive Max-CSP search, GF(2) satisfiability,
and a seeded random-instance generator."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import ContractViolationError, MalformedInstanceError, ResourceLimitError
from .model import (
    Assignment,
    Constraint,
    Formula,
    Kind,
    Literal,
    count_satisfied,
    normalize_parity,
)

DEFAULT_VAR_LIMIT = 26
_CHUNK_BITS = 16


@dataclass(frozen=True)
class OracleResult:
    value: int
    witness: Assignment


def max_csp_bruteforce(f: Formula, var_limit: int = DEFAULT_VAR_LIMIT) -> OracleResult:
    """Exact optimum over all 2^n assignments.

    The witness is the lexicographically first maximizer over the tuple
    (x1, ..., xn).  Enumeration is vectorized in fixed-size chunks; variable
    x1 maps to the most significant index bit so that ascending chunk order
    is lexicographic order.
    """
    n = f.num_vars
    if n > var_limit:
        raise ResourceLimitError(
            f"instance has {n} variables, oracle limit is {var_limit}"
        )
    if n == 0:
        empty = Assignment(())
        return OracleResult(count_satisfied(f, empty), empty)

    specs = []
    for c in f.constraints:
        lits = tuple((n - lit.var, lit.positive) for lit in c.literals)
        specs.append((c, lits))

    total = 1 << n
    chunk = 1 << min(n, _CHUNK_BITS)
    best_value = -1
    best_index = 0
    for lo in range(0, total, chunk):
        hi = min(lo + chunk, total)
        idx = np.arange(lo, hi, dtype=np.int64)
        cache: dict[int, np.ndarray] = {}
        counts = np.zeros(hi - lo, dtype=np.int32)
        for c, lits in specs:
            acc = np.zeros(hi - lo, dtype=np.int32)
            for shift, positive in lits:
                bits = cache.get(shift)
                if bits is None:
                    bits = ((idx >> shift) & 1).astype(np.int32)
                    cache[shift] = bits
                acc += bits if positive else 1 - bits
            counts += _satisfied_mask(c, acc)
        chunk_max = int(counts.max())
        if chunk_max > best_value:
            best_value = chunk_max
            best_index = lo + int(np.argmax(counts))
    bits = tuple((best_index >> (n - i)) & 1 for i in range(1, n + 1))
    return OracleResult(best_value, Assignment(bits))


def _satisfied_mask(c: Constraint, true_counts: np.ndarray) -> np.ndarray:
    if c.kind is Kind.OR:
        return true_counts >= 1
    if c.kind is Kind.AND:
        return true_counts == c.arity
    if c.kind is Kind.PARITY:
        return (true_counts & 1) == c.parity_rhs
    if c.kind is Kind.THRESHOLD:
        return true_counts >= c.threshold
    if c.kind is Kind.MAJORITY:
        return true_counts >= (c.arity + 1) // 2
    raise ContractViolationError(f"unknown constraint kind {c.kind!r}")


def parity_gauss_satisfiable(f: Formula) -> tuple[bool, Assignment | None]:
    """Decide whether all PARITY constraints can hold simultaneously.

    Gaussian elimination over GF(2) on bit-packed integer rows; pivoting
    scans variables in ascending index order.  When consistent, returns one
    satisfying assignment with every free variable set to 0.
    """
    if any(c.kind is not Kind.PARITY for c in f.constraints):
        raise ContractViolationError("parity_gauss_satisfiable expects only PARITY constraints")
    rows: list[int] = []
    rhs: list[int] = []
    for c in f.constraints:
        norm = normalize_parity(c)
        mask = 0
        for lit in norm.literals:
            mask |= 1 << (lit.var - 1)
        rows.append(mask)
        rhs.append(norm.parity_rhs)  # type: ignore[arg-type]

    pivots: list[tuple[int, int]] = []  # (column bit, row index)
    used: list[int] = []
    for col in range(f.num_vars):
        bit = 1 << col
        pivot = None
        for r in range(len(rows)):
            if r not in used and rows[r] & bit:
                pivot = r
                break
        if pivot is None:
            continue
        for r in range(len(rows)):
            if r != pivot and rows[r] & bit:
                rows[r] ^= rows[pivot]
                rhs[r] ^= rhs[pivot]
        pivots.append((col, pivot))
        used.append(pivot)
    for r in range(len(rows)):
        if rows[r] == 0 and rhs[r] == 1:
            return False, None
    bits = [0] * f.num_vars
    for col, r in pivots:
        bits[col] = rhs[r]
    return True, Assignment(tuple(bits))


_KIND_ORDER = (Kind.OR, Kind.AND, Kind.PARITY, Kind.THRESHOLD, Kind.MAJORITY)


def random_formula(
    num_vars: int,
    num_constraints: int,
    kind_mix: Mapping[Kind | str, float],
    arity_range: tuple[int, int],
    seed: int,
) -> Formula:
    """Deterministic random instance: same arguments, same formula.

    Literal variables are drawn without replacement per constraint, signs are
    uniform, thresholds are uniform in [1, arity], parity right-hand sides
    are uniform bits.
    """
    lo, hi = arity_range
    if not 0 <= lo <= hi:
        raise MalformedInstanceError(f"invalid arity range {arity_range}")
    if hi > num_vars:
        raise MalformedInstanceError(
            f"arity range max {hi} exceeds the number of variables {num_vars}"
        )
    mix: dict[Kind, float] = {}
    for k, w in kind_mix.items():
        kind = k if isinstance(k, Kind) else Kind(str(k).upper())
        if w < 0:
            raise MalformedInstanceError("kind weights must be non-negative")
        mix[kind] = mix.get(kind, 0.0) + w
    kinds = [k for k in _KIND_ORDER if mix.get(k, 0.0) > 0]
    if not kinds:
        raise MalformedInstanceError("kind_mix selects no constraint kind")
    weights = [mix[k] for k in kinds]

    rng = random.Random(seed)
    constraints = []
    for _ in range(num_constraints):
        kind = rng.choices(kinds, weights)[0]
        arity = rng.randint(lo, hi)
        variables = rng.sample(range(1, num_vars + 1), arity)
        lits = tuple(Literal(v, bool(rng.getrandbits(1))) for v in variables)
        if kind is Kind.PARITY:
            constraints.append(Constraint(kind, lits, parity_rhs=rng.getrandbits(1)))
        elif kind is Kind.THRESHOLD:
            t = rng.randint(1, arity) if arity >= 1 else 0
            constraints.append(Constraint(kind, lits, threshold=t))
        else:
            constraints.append(Constraint(kind, lits))
    return Formula(num_vars, tuple(constraints))
