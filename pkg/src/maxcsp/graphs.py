"""Simple undirected graphs and the variable-constraint incidence graph."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import MalformedInstanceError
from .model import Formula


class Graph:
    """Immutable simple undirected graph on vertices 0..num_vertices-1."""

    __slots__ = ("num_vertices", "adj", "sorted_adj")

    def __init__(self, num_vertices: int, edges: Iterable[tuple[int, int]] = ()):
        if num_vertices < 0:
            raise MalformedInstanceError("num_vertices must be non-negative")
        adj: list[set[int]] = [set() for _ in range(num_vertices)]
        for u, v in edges:
            if not (0 <= u < num_vertices and 0 <= v < num_vertices):
                raise MalformedInstanceError(f"edge ({u},{v}) out of range")
            if u == v:
                raise MalformedInstanceError(f"self-loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        self.num_vertices = num_vertices
        self.adj: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in adj)
        self.sorted_adj: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(s)) for s in adj
        )

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edge_list(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u in range(self.num_vertices) for v in self.adj[u] if u < v)

    @property
    def num_edges(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    def __repr__(self) -> str:
        return f"Graph({self.num_vertices}, edges={self.num_edges})"


def connected_components(g: Graph, removed: frozenset[int] = frozenset()) -> list[list[int]]:
    """Components of g restricted to vertices not in ``removed``, each sorted."""
    seen: set[int] = set(removed)
    comps = []
    for start in range(g.num_vertices):
        if start in seen:
            continue
        comp = []
        stack = [start]
        seen.add(start)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in g.adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def bfs_tree(
    g: Graph, root: int, removed: frozenset[int] = frozenset()
) -> tuple[dict[int, int], dict[int, int | None]]:
    """Breadth-first depths and parents from ``root``, ignoring removed vertices."""
    depth = {root: 0}
    parent: dict[int, int | None] = {root: None}
    frontier = [root]
    while frontier:
        nxt = []
        for u in frontier:
            for w in g.sorted_adj[u]:
                if w in removed or w in depth:
                    continue
                depth[w] = depth[u] + 1
                parent[w] = u
                nxt.append(w)
        frontier = nxt
    return depth, parent


def is_acyclic(g: Graph, removed: frozenset[int] = frozenset()) -> bool:
    """Forest test on the subgraph induced by the non-removed vertices."""
    parent = list(range(g.num_vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edge_list():
        if u in removed or v in removed:
            continue
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def find_cycle(g: Graph, removed: frozenset[int] = frozenset()) -> list[int] | None:
    """Return the vertex list of a short cycle, or None if the graph is a forest.

    Runs a BFS from live vertices and keeps the shortest cycle closed by a
    non-tree edge; scanning stops once a cycle of length four is in hand
    (short enough for branching).  Deterministic for a fixed graph.
    """
    best: list[int] | None = None
    for root in range(g.num_vertices):
        if root in removed or len(g.adj[root]) < 2:
            continue
        depth = {root: 0}
        parent: dict[int, int | None] = {root: None}
        frontier = [root]
        found: list[int] | None = None
        while frontier and found is None:
            nxt = []
            for u in frontier:
                for w in g.sorted_adj[u]:
                    if w in removed:
                        continue
                    if w not in depth:
                        depth[w] = depth[u] + 1
                        parent[w] = u
                        nxt.append(w)
                    elif parent[u] != w and parent.get(w) != u:
                        found = _close_cycle(u, w, parent)
                        if found is not None:
                            break
                if found is not None:
                    break
            frontier = nxt
        if found is not None and (best is None or len(found) < len(best)):
            best = found
            if len(best) <= 4:
                return best
    return best


def _close_cycle(u: int, w: int, parent: dict[int, int | None]) -> list[int] | None:
    path_u = _path_to_root(u, parent)
    path_w = _path_to_root(w, parent)
    set_w = {v: i for i, v in enumerate(path_w)}
    for i, v in enumerate(path_u):
        if v in set_w:
            cycle = path_u[: i + 1] + path_w[: set_w[v]][::-1]
            return cycle if len(cycle) >= 3 else None
    return None


def _path_to_root(v: int, parent: dict[int, int | None]) -> list[int]:
    path = [v]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])  # type: ignore[arg-type]
    return path


@dataclass(frozen=True)
class VertexSplit:
    """A set of incidence-graph vertices split into its two sides.

    ``variables`` holds 1-based variable indices, ``constraints`` holds
    0-based constraint positions.
    """

    variables: frozenset[int]
    constraints: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.variables) + len(self.constraints)


@dataclass(frozen=True)
class IncidenceGraph:
    """Bipartite occurrence graph of a formula.

    Vertices 0..num_vars-1 are the variables (variable i at vertex i-1) and
    vertices num_vars..num_vars+m-1 are the constraints (constraint position
    j at vertex num_vars+j).
    """

    num_vars: int
    num_constraints: int
    graph: Graph

    def variable_vertex(self, var: int) -> int:
        return var - 1

    def constraint_vertex(self, index: int) -> int:
        return self.num_vars + index

    def is_variable_vertex(self, vertex: int) -> bool:
        return vertex < self.num_vars

    def variable_at(self, vertex: int) -> int:
        return vertex + 1

    def constraint_at(self, vertex: int) -> int:
        return vertex - self.num_vars

    def split(self, vertices: Iterable[int]) -> VertexSplit:
        vs, cs = set(), set()
        for v in vertices:
            if not 0 <= v < self.graph.num_vertices:
                raise MalformedInstanceError(f"vertex {v} outside the incidence graph")
            if self.is_variable_vertex(v):
                vs.add(self.variable_at(v))
            else:
                cs.add(self.constraint_at(v))
        return VertexSplit(frozenset(vs), frozenset(cs))

    def vertices_of(self, split: VertexSplit) -> frozenset[int]:
        out = {self.variable_vertex(x) for x in split.variables}
        out |= {self.constraint_vertex(j) for j in split.constraints}
        return frozenset(out)


def build_incidence_graph(f: Formula) -> IncidenceGraph:
    """One vertex per variable and per constraint, edges marking occurrence.

    Variables with no occurrences become isolated vertices.
    """
    n, m = f.num_vars, f.num_constraints
    edges: Iterator[tuple[int, int]] = (
        (lit.var - 1, n + j) for j, c in enumerate(f.constraints) for lit in c.literals
    )
    return IncidenceGraph(n, m, Graph(n + m, edges))
