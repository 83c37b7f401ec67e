import itertools

import pytest

from maxcsp import (
    Assignment,
    Constraint,
    Formula,
    Kind,
    Literal,
    MalformedInstanceError,
    ContractViolationError,
    and_term,
    at_least,
    count_satisfied,
    eval_constraint,
    majority,
    normalize_parity,
    or_clause,
    parity,
    simplify_fix_variable,
)

from helpers import satisfying_assignments


def test_eval_or_with_negative_literal():
    c = or_clause(1, -2)
    assert eval_constraint(c, Assignment((0, 0))) is True


def test_eval_threshold_two_of_three():
    c = at_least(2, 1, 2, -3)
    assert eval_constraint(c, Assignment((1, 0, 0))) is True


def test_eval_parity_sum_even_fails_rhs_one():
    c = parity(1, 1, 2)
    assert eval_constraint(c, Assignment((1, 1))) is False


def test_eval_and_majority():
    assert eval_constraint(and_term(1, 2), Assignment((1, 1))) is True
    assert eval_constraint(and_term(1, 2), Assignment((1, 0))) is False
    assert eval_constraint(majority(1, 2, 3), Assignment((1, 1, 0))) is True
    assert eval_constraint(majority(1, 2, 3), Assignment((1, 0, 0))) is False


def test_empty_constraint_semantics():
    a = Assignment(())
    f = Formula(0, ())
    assert count_satisfied(f, a) == 0
    assert eval_constraint(or_clause(), a) is False
    assert eval_constraint(and_term(), a) is True
    assert eval_constraint(at_least(0), a) is True
    assert eval_constraint(at_least(1), a) is False
    assert eval_constraint(parity(0), a) is True
    assert eval_constraint(parity(1), a) is False
    assert eval_constraint(majority(), a) is True


def test_threshold_above_arity_is_false():
    c = at_least(3, 1, 2)
    for bits in itertools.product((0, 1), repeat=2):
        assert eval_constraint(c, Assignment(bits)) is False


def test_count_satisfied_examples():
    f = Formula(1, (or_clause(1), or_clause(-1)))
    assert count_satisfied(f, Assignment((1,))) == 1
    f2 = Formula(2, (or_clause(1), or_clause(1, 2), or_clause(-2)))
    assert count_satisfied(f2, Assignment((1, 0))) == 3


def test_duplicate_variable_rejected():
    with pytest.raises(MalformedInstanceError):
        or_clause(1, -1)
    with pytest.raises(MalformedInstanceError):
        at_least(1, 2, 2)


def test_payload_validation():
    with pytest.raises(MalformedInstanceError):
        Constraint(Kind.OR, (Literal(1),), threshold=1)
    with pytest.raises(MalformedInstanceError):
        Constraint(Kind.MAJORITY, (Literal(1),), threshold=1)
    with pytest.raises(MalformedInstanceError):
        Constraint(Kind.PARITY, (Literal(1),))
    with pytest.raises(MalformedInstanceError):
        Constraint(Kind.THRESHOLD, (Literal(1),), threshold=-1)


def test_formula_validates_variable_range():
    with pytest.raises(MalformedInstanceError):
        Formula(1, (or_clause(2),))


def test_formula_stats():
    f = Formula(3, (or_clause(1, 2), at_least(1, 3), parity(0, 1, 2, 3)))
    assert f.num_constraints == 3
    assert f.occ == 6
    assert f.constraints_containing(1) == (0, 2)
    assert len(f.constraints_containing(2)) == 2


def test_eval_requires_defined_variables():
    with pytest.raises(MalformedInstanceError):
        eval_constraint(or_clause(2), Assignment((1,)))


def test_majority_equals_half_threshold():
    import random

    rng = random.Random(11)
    for _ in range(200):
        arity = rng.randint(0, 4)
        variables = rng.sample(range(1, 5), arity)
        lits = tuple(Literal(v, bool(rng.getrandbits(1))) for v in variables)
        maj = Constraint(Kind.MAJORITY, lits)
        thr = Constraint(Kind.THRESHOLD, lits, threshold=(arity + 1) // 2)
        for bits in itertools.product((0, 1), repeat=4):
            a = Assignment(bits)
            assert eval_constraint(maj, a) == eval_constraint(thr, a)


def test_normalize_parity_examples():
    c = normalize_parity(parity(1, 1, -2))
    assert c.parity_rhs == 0 and all(l.positive for l in c.literals)
    c = normalize_parity(parity(0, -1, -2))
    assert c.parity_rhs == 0
    c = normalize_parity(parity(1, -1, 2, -3))
    assert c.parity_rhs == 1


def test_normalize_parity_preserves_satisfying_sets_exhaustively():
    for arity in range(0, 5):
        variables = tuple(range(1, arity + 1))
        for signs in itertools.product((True, False), repeat=arity):
            for rhs in (0, 1):
                c = Constraint(
                    Kind.PARITY,
                    tuple(Literal(v, s) for v, s in zip(variables, signs)),
                    parity_rhs=rhs,
                )
                assert satisfying_assignments(c, variables) == satisfying_assignments(
                    normalize_parity(c), variables
                )


def test_normalize_parity_wrong_kind():
    with pytest.raises(ContractViolationError):
        normalize_parity(or_clause(1))


def test_simplify_examples():
    f = Formula(3, (at_least(2, 1, 2, -3),))
    res, delta = simplify_fix_variable(f, 1, 1)
    assert delta == 0
    assert res.constraints[0].threshold == 1
    assert res.constraints[0].variables == (2, 3)

    f = Formula(2, (or_clause(-1, 2),))
    res, delta = simplify_fix_variable(f, 1, 1)
    assert delta == 0
    assert res.constraints[0].variables == (2,)

    f = Formula(2, (parity(1, 1, 2),))
    res, delta = simplify_fix_variable(f, 1, 1)
    assert res.constraints[0].parity_rhs == 0


def test_simplify_or_true_removes_with_delta():
    f = Formula(2, (or_clause(1, 2),))
    res, delta = simplify_fix_variable(f, 1, 1)
    assert delta == 1 and res.num_constraints == 0


def test_simplify_and_false_removes_without_delta():
    f = Formula(2, (and_term(1, 2),))
    res, delta = simplify_fix_variable(f, 1, 0)
    assert delta == 0 and res.num_constraints == 0


def test_simplify_majority_converts_to_explicit_threshold():
    f = Formula(3, (majority(1, 2, 3),))
    res, _ = simplify_fix_variable(f, 1, 0)
    c = res.constraints[0]
    assert c.kind is Kind.THRESHOLD and c.threshold == 2 and c.arity == 2


def test_simplify_undefined_variable():
    with pytest.raises(ContractViolationError):
        simplify_fix_variable(Formula(1, ()), 2, 0)


def test_simplify_count_identity_randomized():
    import random

    from maxcsp import random_formula

    rng = random.Random(5)
    for trial in range(40):
        n = rng.randint(2, 6)
        f = random_formula(
            n,
            rng.randint(1, 6),
            {"OR": 1, "AND": 1, "PARITY": 1, "THRESHOLD": 2, "MAJORITY": 1},
            (1, min(3, n)),
            seed=trial,
        )
        x = rng.randint(1, n)
        v = rng.getrandbits(1)
        res, delta = simplify_fix_variable(f, x, v)
        for bits in itertools.product((0, 1), repeat=n):
            if bits[x - 1] != v:
                continue
            a = Assignment(bits)
            assert count_satisfied(f, a) == delta + count_satisfied(res, a)
