"""Core instance model: literals, constraints, formulas, assignments.

Variables are 1-based indices; names are an I/O concern.  All types are
immutable after construction and every operation is a pure function, so
instances can be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple

from .errors import ContractViolationError, MalformedInstanceError


class Kind(str, Enum):
    OR = "OR"
    AND = "AND"
    PARITY = "PARITY"
    THRESHOLD = "THRESHOLD"
    MAJORITY = "MAJORITY"


class Literal(NamedTuple):
    var: int
    positive: bool = True

    @staticmethod
    def from_int(value: int) -> "Literal":
        if value == 0:
            raise MalformedInstanceError("literal 0 does not reference a variable")
        return Literal(abs(value), value > 0)

    def to_int(self) -> int:
        return self.var if self.positive else -self.var

    def negated(self) -> "Literal":
        return Literal(self.var, not self.positive)


def _as_literals(values: Iterable[int | Literal]) -> tuple[Literal, ...]:
    out = []
    for v in values:
        out.append(v if isinstance(v, Literal) else Literal.from_int(v))
    return tuple(out)


@dataclass(frozen=True)
class Constraint:
    """One typed constraint over an ordered list of literals.

    ``parity_rhs`` is meaningful only for PARITY and ``threshold`` only for
    THRESHOLD.  A MAJORITY constraint carries no explicit threshold; it is
    implied as ceil(arity / 2).  A THRESHOLD with threshold larger than the
    arity is representable and always false (solvers create such constraints
    transiently), and a threshold of 0 is always true.
    """

    kind: Kind
    literals: tuple[Literal, ...]
    parity_rhs: int | None = None
    threshold: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "literals", _as_literals(self.literals))
        seen = set()
        for lit in self.literals:
            if lit.var < 1:
                raise MalformedInstanceError(f"variable index {lit.var} out of range")
            if lit.var in seen:
                raise MalformedInstanceError(
                    f"variable {lit.var} occurs more than once in one constraint"
                )
            seen.add(lit.var)
        if self.kind is Kind.PARITY:
            if self.parity_rhs not in (0, 1):
                raise MalformedInstanceError("PARITY constraint needs parity_rhs in {0,1}")
        elif self.parity_rhs is not None:
            raise MalformedInstanceError(f"{self.kind.value} constraint cannot carry parity_rhs")
        if self.kind is Kind.THRESHOLD:
            if self.threshold is None or self.threshold < 0:
                raise MalformedInstanceError("THRESHOLD constraint needs a threshold >= 0")
        elif self.threshold is not None:
            raise MalformedInstanceError(f"{self.kind.value} constraint cannot carry a threshold")

    @property
    def arity(self) -> int:
        return len(self.literals)

    @property
    def variables(self) -> tuple[int, ...]:
        return tuple(lit.var for lit in self.literals)

    def effective_threshold(self) -> int:
        """Number of true literals required (defined for THRESHOLD/MAJORITY)."""
        if self.kind is Kind.THRESHOLD:
            return self.threshold  # type: ignore[return-value]
        if self.kind is Kind.MAJORITY:
            return (self.arity + 1) // 2
        raise ContractViolationError(f"{self.kind.value} constraint has no threshold")


def or_clause(*lits: int | Literal) -> Constraint:
    return Constraint(Kind.OR, _as_literals(lits))


def and_term(*lits: int | Literal) -> Constraint:
    return Constraint(Kind.AND, _as_literals(lits))


def parity(rhs: int, *lits: int | Literal) -> Constraint:
    return Constraint(Kind.PARITY, _as_literals(lits), parity_rhs=rhs)


def at_least(t: int, *lits: int | Literal) -> Constraint:
    return Constraint(Kind.THRESHOLD, _as_literals(lits), threshold=t)


def majority(*lits: int | Literal) -> Constraint:
    return Constraint(Kind.MAJORITY, _as_literals(lits))


@dataclass(frozen=True)
class Formula:
    """A multiset of constraints over variables 1..num_vars.

    Duplicate constraints are permitted; the Max objective counts
    multiplicity.
    """

    num_vars: int
    constraints: tuple[Constraint, ...]

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if self.num_vars < 0:
            raise MalformedInstanceError("num_vars must be non-negative")
        for c in self.constraints:
            for lit in c.literals:
                if lit.var > self.num_vars:
                    raise MalformedInstanceError(
                        f"literal references variable {lit.var} but formula has "
                        f"{self.num_vars} variables"
                    )

    @property
    def num_constraints(self) -> int:
        return len(self.constraints)

    @property
    def occ(self) -> int:
        """Total number of literal occurrences (sum of arities)."""
        return sum(c.arity for c in self.constraints)

    def constraints_containing(self, var: int) -> tuple[int, ...]:
        """Indices of constraints in which ``var`` occurs (either sign)."""
        return tuple(j for j, c in enumerate(self.constraints) if var in c.variables)


@dataclass(frozen=True, order=True)
class Assignment:
    """Total 0/1 assignment, bit i (0-based) holds the value of variable i+1."""

    bits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(self.bits))
        if any(b not in (0, 1) for b in self.bits):
            raise MalformedInstanceError("assignment bits must be 0 or 1")

    @staticmethod
    def zeros(num_vars: int) -> "Assignment":
        return Assignment((0,) * num_vars)

    def __len__(self) -> int:
        return len(self.bits)

    def value(self, var: int) -> int:
        if not 1 <= var <= len(self.bits):
            raise MalformedInstanceError(f"variable {var} is not defined by this assignment")
        return self.bits[var - 1]

    def literal_true(self, lit: Literal) -> bool:
        v = self.value(lit.var)
        return bool(v) if lit.positive else not v

    def replace(self, var: int, value: int) -> "Assignment":
        bits = list(self.bits)
        bits[var - 1] = value
        return Assignment(tuple(bits))

    def bitstring(self) -> str:
        return "".join(str(b) for b in self.bits)


def eval_constraint(c: Constraint, a: Assignment) -> bool:
    """Decide whether assignment ``a`` satisfies constraint ``c``."""
    true_count = 0
    for lit in c.literals:
        if a.literal_true(lit):
            true_count += 1
    if c.kind is Kind.OR:
        return true_count >= 1
    if c.kind is Kind.AND:
        return true_count == c.arity
    if c.kind is Kind.PARITY:
        return (true_count & 1) == c.parity_rhs
    if c.kind is Kind.THRESHOLD:
        return true_count >= c.threshold  # type: ignore[operator]
    if c.kind is Kind.MAJORITY:
        return true_count >= (c.arity + 1) // 2
    raise ContractViolationError(f"unknown constraint kind {c.kind!r}")


def count_satisfied(f: Formula, a: Assignment) -> int:
    """Number of constraints of ``f`` satisfied by the total assignment ``a``."""
    if len(a) != f.num_vars:
        raise MalformedInstanceError(
            f"assignment covers {len(a)} variables, formula has {f.num_vars}"
        )
    return sum(1 for c in f.constraints if eval_constraint(c, a))


def normalize_parity(c: Constraint) -> Constraint:
    """Rewrite a PARITY constraint to use only positive literals.

    Each negated literal contributes a constant 1 on the left side, so the
    right-hand side flips once per negation.  The satisfying assignments are
    unchanged.
    """
    if c.kind is not Kind.PARITY:
        raise ContractViolationError("normalize_parity expects a PARITY constraint")
    negs = sum(1 for lit in c.literals if not lit.positive)
    rhs = c.parity_rhs ^ (negs & 1)  # type: ignore[operator]
    return Constraint(
        Kind.PARITY,
        tuple(Literal(lit.var, True) for lit in c.literals),
        parity_rhs=rhs,
    )


def as_threshold(c: Constraint) -> Constraint:
    """Express an OR/AND/MAJORITY/THRESHOLD constraint as an explicit THRESHOLD."""
    if c.kind is Kind.THRESHOLD:
        return c
    if c.kind is Kind.OR:
        t = 1
    elif c.kind is Kind.AND:
        t = c.arity
    elif c.kind is Kind.MAJORITY:
        t = (c.arity + 1) // 2
    else:
        raise ContractViolationError(f"{c.kind.value} constraint has no threshold form")
    return Constraint(Kind.THRESHOLD, c.literals, threshold=t)


def as_threshold_formula(f: Formula) -> Formula:
    return Formula(f.num_vars, tuple(as_threshold(c) for c in f.constraints))


def simplify_fix_variable(f: Formula, var: int, value: int) -> tuple[Formula, int]:
    """Eliminate ``var`` from ``f`` by fixing it to ``value``.

    Returns the residual formula (same num_vars, the variable simply no
    longer occurs) together with the number of constraints that became
    permanently satisfied and were removed.  MAJORITY constraints touched by
    the elimination are converted to explicit THRESHOLD first so their
    threshold does not re-derive from the shrunken arity.

    For every assignment ``a`` of the remaining variables:
    ``count_satisfied(f, a with var=value) == delta + count_satisfied(residual, a)``.
    """
    if not 1 <= var <= f.num_vars:
        raise ContractViolationError(f"variable {var} is not defined in the formula")
    if value not in (0, 1):
        raise ContractViolationError("value must be 0 or 1")
    out: list[Constraint] = []
    delta = 0
    for c in f.constraints:
        if var not in c.variables:
            out.append(c)
            continue
        lit = next(l for l in c.literals if l.var == var)
        lit_true = bool(value) if lit.positive else not value
        rest = tuple(l for l in c.literals if l.var != var)
        if c.kind is Kind.OR:
            if lit_true:
                delta += 1
            else:
                out.append(Constraint(Kind.OR, rest))
        elif c.kind is Kind.AND:
            if lit_true:
                out.append(Constraint(Kind.AND, rest))
            # a falsified AND is permanently unsatisfied and dropped, delta += 0
        elif c.kind is Kind.PARITY:
            rhs = c.parity_rhs ^ 1 if lit_true else c.parity_rhs
            out.append(Constraint(Kind.PARITY, rest, parity_rhs=rhs))
        else:
            t = c.effective_threshold()
            if lit_true:
                t = max(t - 1, 0)
            out.append(Constraint(Kind.THRESHOLD, rest, threshold=t))
    return Formula(f.num_vars, tuple(out)), delta
