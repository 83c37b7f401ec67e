"""Shared test utilities: independent oracles and instance generators."""

from __future__ import annotations

import itertools
import random

from maxcsp import (
    Assignment,
    Constraint,
    Formula,
    Graph,
    Kind,
    Literal,
    VertexSplit,
    count_satisfied,
)


def naive_max_csp(f: Formula) -> tuple[int, Assignment]:
    """Independent enumerator: plain product loop, first maximizer wins."""
    best_v, best_a = -1, None
    for bits in itertools.product((0, 1), repeat=f.num_vars):
        a = Assignment(bits)
        v = count_satisfied(f, a)
        if v > best_v:
            best_v, best_a = v, a
    return best_v, best_a


def satisfying_assignments(c: Constraint, variables: tuple[int, ...]) -> set[tuple[int, ...]]:
    """All assignments of the given variables that satisfy the constraint."""
    from maxcsp import eval_constraint

    n = max(variables, default=0)
    out = set()
    for bits in itertools.product((0, 1), repeat=n):
        a = Assignment(bits)
        if eval_constraint(c, a):
            out.add(tuple(bits[v - 1] for v in variables))
    return out


def set_partitions(items: list):
    """All set partitions of ``items`` (Bell-number many)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def minimum_partition_size(g: Graph) -> int:
    """Exhaustive neighborhood-diversity oracle for small graphs."""
    best = g.num_vertices if g.num_vertices else 0
    for part in set_partitions(list(range(g.num_vertices))):
        ok = True
        for cls in part:
            cls_set = set(cls)
            for v in range(g.num_vertices):
                inside = g.adj[v] & cls_set
                expected = cls_set - {v}
                if inside and inside != expected:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            best = min(best, len(part))
    return best


def brute_min_vertex_cover(g: Graph, max_size: int) -> int | None:
    """Smallest cover size by subset enumeration, None if above max_size."""
    edges = g.edge_list()
    for size in range(0, max_size + 1):
        for subset in itertools.combinations(range(g.num_vertices), size):
            s = set(subset)
            if all(u in s or v in s for u, v in edges):
                return size
    return None


def brute_min_fvs(g: Graph, max_size: int) -> int | None:
    from maxcsp import is_feedback_vertex_set

    for size in range(0, max_size + 1):
        for subset in itertools.combinations(range(g.num_vertices), size):
            if is_feedback_vertex_set(g, subset):
                return size
    return None


# Small graph zoo ------------------------------------------------------------


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i + 1) for i in range(leaves)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def random_graph(n: int, edge_prob: float, rng: random.Random) -> Graph:
    edges = [
        (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < edge_prob
    ]
    return Graph(n, edges)


# Random instance generators -------------------------------------------------


def random_threshold_constraint(
    rng: random.Random,
    variables: list[int],
    majority_only: bool = False,
    threshold_within_arity: bool = False,
) -> Constraint:
    lits = tuple(Literal(v, bool(rng.getrandbits(1))) for v in variables)
    if majority_only:
        return Constraint(Kind.MAJORITY, lits)
    arity = len(lits)
    hi = arity if threshold_within_arity else arity + 1
    t = rng.randint(0, max(hi, 0))
    return Constraint(Kind.THRESHOLD, lits, threshold=t)


def random_forest_formula(
    rng: random.Random,
    max_vars: int = 20,
    max_cons: int = 12,
    majority_only: bool = False,
    threshold_within_arity: bool = False,
) -> Formula:
    """Random THRESHOLD formula whose incidence graph is a forest.

    Builds constraints one at a time, taking each next literal from a
    component (over incidence vertices) not yet linked to the constraint, so
    no cycle ever forms.
    """
    n = rng.randint(1, max_vars)
    m = rng.randint(1, max_cons)
    parent = list(range(n + m))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    constraints = []
    for j in range(m):
        con_node = n + j
        arity = rng.randint(1, 3)
        chosen: list[int] = []
        candidates = list(range(1, n + 1))
        rng.shuffle(candidates)
        for var in candidates:
            if len(chosen) == arity:
                break
            if find(var - 1) != find(con_node):
                parent[find(var - 1)] = find(con_node)
                chosen.append(var)
        if not chosen:
            continue
        constraints.append(
            random_threshold_constraint(rng, chosen, majority_only, threshold_within_arity)
        )
    if not constraints:
        constraints.append(
            random_threshold_constraint(rng, [1], majority_only, threshold_within_arity)
        )
    return Formula(n, tuple(constraints))


def random_small_fvs_instance(
    rng: random.Random,
    max_vars: int = 12,
    max_cons: int = 10,
    hubs: int = 2,
    majority_only: bool = True,
) -> tuple[Formula, VertexSplit]:
    """Forest instance plus up to ``hubs`` extra constraints that close cycles.

    Deleting the hub constraint vertices restores the forest, so they witness
    a feedback vertex set of size at most ``hubs``.
    """
    base = random_forest_formula(
        rng, max_vars=max_vars, max_cons=max_cons, majority_only=majority_only
    )
    n = base.num_vars
    constraints = list(base.constraints)
    hub_positions = []
    for _ in range(hubs):
        arity = rng.randint(2, min(4, n)) if n >= 2 else 1
        variables = rng.sample(range(1, n + 1), arity)
        hub_positions.append(len(constraints))
        constraints.append(
            random_threshold_constraint(rng, variables, majority_only=majority_only)
        )
    return Formula(n, tuple(constraints)), VertexSplit(
        frozenset(), frozenset(hub_positions)
    )


def random_fvs_variable_hub_instance(
    rng: random.Random,
    max_vars: int = 10,
    max_cons: int = 8,
    majority_only: bool = True,
) -> tuple[Formula, VertexSplit]:
    """Forest instance plus one hub variable threaded through several
    constraints; deleting the hub variable vertex restores the forest."""
    base = random_forest_formula(
        rng, max_vars=max_vars - 1, max_cons=max_cons, majority_only=majority_only
    )
    hub = base.num_vars + 1
    touched = rng.sample(
        range(base.num_constraints), min(rng.randint(2, 4), base.num_constraints)
    )
    constraints = []
    for j, c in enumerate(base.constraints):
        if j in touched:
            lits = tuple(c.literals) + (Literal(hub, bool(rng.getrandbits(1))),)
            constraints.append(
                Constraint(c.kind, lits, threshold=c.threshold)
                if c.kind is Kind.THRESHOLD
                else Constraint(c.kind, lits)
            )
        else:
            constraints.append(c)
    f = Formula(hub, tuple(constraints))
    return f, VertexSplit(frozenset({hub}), frozenset())


def random_cover_instance(
    rng: random.Random,
    max_vars: int = 14,
    cover_vars: int = 2,
    cover_cons: int = 2,
    extra_cons: int = 8,
) -> tuple[Formula, VertexSplit]:
    """Instance whose incidence graph is covered by a small designed set.

    ``cover_cons`` constraints range over any variables; every other
    constraint uses only the ``cover_vars`` designated variables, so the
    designated variable and constraint vertices cover all incidence edges.
    """
    n = rng.randint(max(cover_vars, 2), max_vars)
    hub_vars = list(range(1, cover_vars + 1))
    constraints = []
    cover_positions = []
    for _ in range(cover_cons):
        arity = rng.randint(1, min(5, n))
        variables = rng.sample(range(1, n + 1), arity)
        cover_positions.append(len(constraints))
        constraints.append(random_threshold_constraint(rng, variables))
    if hub_vars:
        for _ in range(extra_cons):
            arity = rng.randint(1, len(hub_vars))
            variables = rng.sample(hub_vars, arity)
            constraints.append(random_threshold_constraint(rng, variables))
    f = Formula(n, tuple(constraints))
    return f, VertexSplit(frozenset(hub_vars), frozenset(cover_positions))


def random_cnf(
    rng: random.Random,
    num_vars: int,
    num_clauses: int,
    arities: list[int],
) -> Formula:
    clauses = []
    for _ in range(num_clauses):
        arity = rng.choice(arities)
        arity = min(arity, num_vars)
        variables = rng.sample(range(1, num_vars + 1), arity)
        clauses.append(
            Constraint(
                Kind.OR,
                tuple(Literal(v, bool(rng.getrandbits(1))) for v in variables),
            )
        )
    return Formula(num_vars, tuple(clauses))


def planted_satisfiable_cnf(
    rng: random.Random, num_vars: int, num_clauses: int, arities: list[int]
) -> Formula:
    """CNF guaranteed satisfiable: every clause holds under a hidden assignment."""
    hidden = [rng.getrandbits(1) for _ in range(num_vars)]
    clauses = []
    for _ in range(num_clauses):
        arity = min(rng.choice(arities), num_vars)
        variables = rng.sample(range(1, num_vars + 1), arity)
        lits = [Literal(v, bool(rng.getrandbits(1))) for v in variables]
        pick = rng.randrange(arity)
        v = variables[pick]
        lits[pick] = Literal(v, hidden[v - 1] == 1)
        clauses.append(Constraint(Kind.OR, tuple(lits)))
    return Formula(num_vars, tuple(clauses))


def exhaustive_forest_threshold_formulas(max_vars: int = 3, max_cons: int = 3):
    """Every THRESHOLD formula from a small grammar with forest incidence.

    Grammar: up to ``max_vars`` variables, constraint multisets of size up to
    ``max_cons`` drawn from all unit and binary threshold constraints with
    every sign pattern and every threshold in [0, arity + 1].
    """
    for n in range(1, max_vars + 1):
        pool = []
        for v in range(1, n + 1):
            for sign in (True, False):
                for t in range(0, 3):
                    pool.append(Constraint(Kind.THRESHOLD, (Literal(v, sign),), threshold=t))
        for v in range(1, n + 1):
            for w in range(v + 1, n + 1):
                for sv in (True, False):
                    for sw in (True, False):
                        for t in range(0, 4):
                            pool.append(
                                Constraint(
                                    Kind.THRESHOLD,
                                    (Literal(v, sv), Literal(w, sw)),
                                    threshold=t,
                                )
                            )
        for m in range(0, max_cons + 1):
            for combo in itertools.combinations_with_replacement(range(len(pool)), m):
                constraints = tuple(pool[i] for i in combo)
                if _incidence_is_forest(n, constraints):
                    yield Formula(n, constraints)


def extended_forest_grammar():
    """Three exhaustive grammar slices, all with forest incidence and n+m <= 8.

    Slice one: every threshold formula over <= 3 variables with <= 3
    constraints of arity <= 2 (all signs, thresholds up to arity + 1).
    Slice two: every unit-constraint formula over 5 variables with <= 3
    constraints.  Slice three: every formula over 4 variables with <= 2
    constraints of arity <= 2.
    """
    yield from exhaustive_forest_threshold_formulas(max_vars=3, max_cons=3)

    unit_pool = [
        Constraint(Kind.THRESHOLD, (Literal(v, sign),), threshold=t)
        for v in range(1, 6)
        for sign in (True, False)
        for t in range(0, 3)
    ]
    for m in range(0, 4):
        for combo in itertools.combinations_with_replacement(range(len(unit_pool)), m):
            yield Formula(5, tuple(unit_pool[i] for i in combo))

    pool4 = [
        Constraint(Kind.THRESHOLD, (Literal(v, sign),), threshold=t)
        for v in range(1, 5)
        for sign in (True, False)
        for t in range(0, 3)
    ]
    for v in range(1, 5):
        for w in range(v + 1, 5):
            for sv in (True, False):
                for sw in (True, False):
                    for t in range(0, 4):
                        pool4.append(
                            Constraint(
                                Kind.THRESHOLD,
                                (Literal(v, sv), Literal(w, sw)),
                                threshold=t,
                            )
                        )
    for m in range(0, 3):
        for combo in itertools.combinations_with_replacement(range(len(pool4)), m):
            constraints = tuple(pool4[i] for i in combo)
            if _incidence_is_forest(4, constraints):
                yield Formula(4, constraints)


def _incidence_is_forest(n: int, constraints: tuple[Constraint, ...]) -> bool:
    parent = list(range(n + len(constraints)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for j, c in enumerate(constraints):
        for lit in c.literals:
            a, b = find(lit.var - 1), find(n + j)
            if a == b:
                return False
            parent[a] = b
    return True
