"""Tree decompositions: validation, a min-degree heuristic, rooting, and the
extraction of a hub vertex with many low-degree private neighbours.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .errors import InternalAssertion, PreconditionError
from .graph import Edge, Graph, edge_key
from .report import Violation


@dataclass(frozen=True)
class TreeDecomposition:
    """Tree on nodes ``0 .. len(bags)-1`` with a bag of graph vertices per node."""

    bags: tuple[frozenset[int], ...]
    tree_edges: tuple[Edge, ...]

    @classmethod
    def from_lists(
        cls, bags: Iterable[Iterable[int]], tree_edges: Iterable[tuple[int, int]]
    ) -> TreeDecomposition:
        return cls(
            tuple(frozenset(b) for b in bags),
            tuple(sorted(edge_key(a, b) for a, b in tree_edges)),
        )

    @property
    def nodes(self) -> int:
        return len(self.bags)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def tree_adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.tree_edges:
            adj[a].append(b)
            adj[b].append(a)
        for nbrs in adj:
            nbrs.sort()
        return adj

    def without_vertices(self, vertices: Iterable[int]) -> TreeDecomposition:
        """Erase ``vertices`` from every bag; the tree itself is unchanged."""
        vs = frozenset(vertices)
        return TreeDecomposition(tuple(b - vs for b in self.bags), self.tree_edges)


@dataclass(frozen=True)
class RootedDecomposition:
    base: TreeDecomposition
    root: int
    parent: tuple[int | None, ...]
    height: tuple[int, ...]
    home_node: Mapping[int, int] = field(repr=False)

    @property
    def width(self) -> int:
        return self.base.width

    def bag(self, node: int) -> frozenset[int]:
        return self.base.bags[node]

    def is_ancestor(self, a: int, b: int) -> bool:
        """True if node ``a`` lies on the path from ``b`` to the root."""
        while b is not None:
            if b == a:
                return True
            b = self.parent[b]
        return False


@dataclass(frozen=True)
class StructuralWitness:
    """Hub ``x`` inside a bag ``U`` whose private neighbourhood ``W`` is large.

    Guarantees, for the parameters ``k`` and ``delta0`` it was built with:
    W is stable with N(W) inside U, every w in W has degree at most k,
    x is adjacent to all of W, |U| <= k + 1 and |W| >= delta0 + 2 - 2k.
    """

    U: frozenset[int]
    W: frozenset[int]
    x: int
    k: int
    delta0: int


def _tree_violations(d: TreeDecomposition) -> list[Violation]:
    out: list[Violation] = []
    n = d.nodes
    seen: set[Edge] = set()
    for a, b in d.tree_edges:
        if not (0 <= a < n and 0 <= b < n) or a == b:
            out.append(Violation("tree", (a, b), f"bad tree edge ({a}, {b})"))
        elif (a, b) in seen:
            out.append(Violation("tree", (a, b), f"repeated tree edge ({a}, {b})"))
        seen.add((a, b))
    if out or n == 0:
        return out
    if len(d.tree_edges) != n - 1:
        out.append(
            Violation("tree", None, f"not a tree: {len(d.tree_edges)} edges on {n} nodes")
        )
        return out
    adj = d.tree_adjacency()
    reached = {0}
    queue = deque([0])
    while queue:
        t = queue.popleft()
        for s in adj[t]:
            if s not in reached:
                reached.add(s)
                queue.append(s)
    if len(reached) != n:
        out.append(Violation("tree", None, "not a tree: node set is disconnected"))
    return out


def _contiguity_violations(d: TreeDecomposition) -> list[Violation]:
    out: list[Violation] = []
    adj = d.tree_adjacency()
    holders: dict[int, list[int]] = {}
    for t, bag in enumerate(d.bags):
        for v in bag:
            holders.setdefault(v, []).append(t)
    for v in sorted(holders):
        nodes = set(holders[v])
        start = holders[v][0]
        reached = {start}
        stack = [start]
        while stack:
            t = stack.pop()
            for s in adj[t]:
                if s in nodes and s not in reached:
                    reached.add(s)
                    stack.append(s)
        if reached != nodes:
            out.append(
                Violation("subtree", v, f"vertex {v} non-contiguous over nodes {sorted(nodes)}")
            )
    return out


def validate_td(g: Graph, d: TreeDecomposition) -> list[Violation]:
    """Check tree-ness, vertex cover, edge cover and the subtree condition.

    Returns an empty list iff ``d`` is a tree decomposition of ``g``.
    """
    if d.nodes == 0:
        if g.n == 0:
            return []
        return [Violation("tree", None, "decomposition has no nodes")]
    out = _tree_violations(d)
    covered: set[int] = set()
    for t, bag in enumerate(d.bags):
        for v in bag:
            if not 0 <= v < g.n:
                out.append(Violation("range", (t, v), f"bag {t} holds unknown vertex {v}"))
        covered |= bag
    for v in range(g.n):
        if v not in covered:
            out.append(Violation("vertex-cover", v, f"vertex {v} not covered"))
    for a, b in g.edges:
        if not any(a in bag and b in bag for bag in d.bags):
            out.append(Violation("edge-cover", (a, b), f"edge ({a}, {b}) not covered"))
    if not out or all(v.rule != "tree" for v in out):
        out.extend(_contiguity_violations(d))
    return out


def min_degree_decompose(g: Graph) -> TreeDecomposition:
    """Tree decomposition from a min-degree elimination ordering.

    Node ``i`` holds the ``i``-th eliminated vertex together with its
    neighbours at elimination time; ties go to the smallest vertex id.
    """
    if g.n < 1:
        raise PreconditionError("cannot decompose a graph with no vertices")
    adj = g.adjacency()
    remaining = set(range(g.n))
    order: list[int] = []
    nbrs_at: list[set[int]] = []
    while remaining:
        v = min(remaining, key=lambda u: (len(adj[u]), u))
        nb = adj[v]
        for a in nb:
            adj[a].discard(v)
            adj[a] |= nb - {a}
        order.append(v)
        nbrs_at.append(set(nb))
        remaining.remove(v)
        del adj[v]
    pos = {v: i for i, v in enumerate(order)}
    bags = [frozenset({v} | nbrs_at[i]) for i, v in enumerate(order)]
    tree: list[Edge] = []
    for i, v in enumerate(order[:-1]):
        if nbrs_at[i]:
            tree.append((i, min(pos[u] for u in nbrs_at[i])))
        else:
            tree.append((i, i + 1))
    return TreeDecomposition.from_lists(bags, tree)


def root_decomposition(d: TreeDecomposition, r: int = 0) -> RootedDecomposition:
    """Root ``d`` at node ``r``; compute heights and each vertex's home node."""
    if not 0 <= r < d.nodes:
        raise PreconditionError(f"root {r} is not a node of the decomposition")
    bad = _tree_violations(d) or _contiguity_violations(d)
    if bad:
        raise PreconditionError(f"invalid decomposition: {bad[0]}")
    adj = d.tree_adjacency()
    parent: list[int | None] = [None] * d.nodes
    height = [0] * d.nodes
    home: dict[int, int] = {}
    seen = [False] * d.nodes
    seen[r] = True
    queue = deque([r])
    while queue:
        t = queue.popleft()
        for v in d.bags[t]:
            home.setdefault(v, t)
        for s in adj[t]:
            if not seen[s]:
                seen[s] = True
                parent[s] = t
                height[s] = height[t] + 1
                queue.append(s)
    return RootedDecomposition(d, r, tuple(parent), tuple(height), home)


def check_witness(g: Graph, wit: StructuralWitness) -> list[str]:
    """List the witness guarantees that fail on ``g`` (empty when all hold)."""
    problems = []
    U, W, x, k = wit.U, wit.W, wit.x, wit.k
    if U & W:
        problems.append("U and W intersect")
    if x not in U:
        problems.append("x not in U")
    for w in sorted(W):
        nb = g.neighbours(w)
        if nb & W:
            problems.append(f"W not stable at {w}")
        if not nb <= U:
            problems.append(f"N({w}) not inside U")
        if len(nb) > k:
            problems.append(f"deg({w}) = {len(nb)} > k = {k}")
        if x not in nb:
            problems.append(f"x not adjacent to {w}")
    if len(U) > k + 1:
        problems.append(f"|U| = {len(U)} > k + 1")
    if len(W) < wit.delta0 + 2 - 2 * k:
        problems.append(f"|W| = {len(W)} < delta0 + 2 - 2k = {wit.delta0 + 2 - 2 * k}")
    return problems


def extract_witness(g: Graph, rd: RootedDecomposition, k: int, delta0: int) -> StructuralWitness:
    """Find a hub ``x`` with a large stable set ``W`` of low-degree neighbours.

    Among the vertices of degree at least ``k + 1``, ``x`` is one whose home
    node lies deepest (smallest id on ties); ``U`` is that home bag and
    ``W = N(x) - U``.
    """
    if rd.width > k:
        raise PreconditionError(f"decomposition width {rd.width} exceeds k = {k}")
    if delta0 < 2 * k - 1:
        raise PreconditionError(f"delta0 = {delta0} < 2k - 1 = {2 * k - 1}")
    if not g.edges:
        raise PreconditionError("graph has no edges; no hub vertex exists")
    for a, b in g.edges:
        if g.degree(a) + g.degree(b) < delta0 + 2:
            raise PreconditionError(
                f"edge ({a}, {b}) has degree sum {g.degree(a) + g.degree(b)} "
                f"< delta0 + 2 = {delta0 + 2}"
            )
    big = [v for v in g.vertices() if g.degree(v) >= k + 1]
    if not big:
        raise InternalAssertion("no vertex of degree >= k + 1 despite the degree-sum bound")
    x = max(big, key=lambda v: (rd.height[rd.home_node[v]], -v))
    U = rd.bag(rd.home_node[x])
    W = g.neighbours(x) - U
    wit = StructuralWitness(U, frozenset(W), x, k, delta0)
    problems = check_witness(g, wit)
    if problems:
        raise InternalAssertion(f"witness guarantees fail: {problems}")
    return wit
