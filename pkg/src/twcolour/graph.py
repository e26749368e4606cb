"""Simple undirected graphs and bipartite graphs with fixed sides."""

from __future__ import annotations

from collections.abc import Iterable
from typing import Tuple

from .errors import InvalidInput

Edge = Tuple[int, int]


def edge_key(a: int, b: int) -> Edge:
    """Canonical form of the undirected edge ``ab`` (smaller id first)."""
    return (a, b) if a < b else (b, a)


class Graph:
    """Simple undirected graph on the vertices ``0 .. n-1``.

    Instances are immutable; solvers take working copies through
    :meth:`adjacency`.
    """

    __slots__ = ("n", "edges", "_adj")

    def __init__(self, n: int, edges: Iterable[Edge]) -> None:
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(sorted(edges))
        adj: list[set[int]] = [set() for _ in range(n)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        self._adj = tuple(frozenset(s) for s in adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def neighbours(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(s) for s in self._adj]

    @property
    def max_degree(self) -> int:
        return max((len(s) for s in self._adj), default=0)

    def has_edge(self, a: int, b: int) -> bool:
        return 0 <= a < self.n and b in self._adj[a]

    def adjacency(self) -> dict[int, set[int]]:
        """Mutable copy of the adjacency structure, keyed by vertex."""
        return {v: set(s) for v, s in enumerate(self._adj)}

    def without_edges(self, removed: Iterable[Edge]) -> Graph:
        gone = {edge_key(a, b) for a, b in removed}
        return Graph(self.n, (e for e in self.edges if e not in gone))

    def isolate(self, vertices: Iterable[int]) -> Graph:
        """Drop every edge touching ``vertices``; the vertex ids stay in place."""
        vs = set(vertices)
        return Graph(self.n, (e for e in self.edges if e[0] not in vs and e[1] not in vs))


def build_graph(n: int, edge_list: Iterable[tuple[int, int]]) -> Graph:
    """Validate ``edge_list`` and build a :class:`Graph` on ``n`` vertices.

    Raises :class:`InvalidInput` on a loop, a repeated edge (in either
    orientation) or an endpoint outside ``[0, n)``.
    """
    if n < 0:
        raise InvalidInput(f"negative vertex count {n}")
    seen: set[Edge] = set()
    for a, b in edge_list:
        if not (0 <= a < n and 0 <= b < n):
            raise InvalidInput(f"endpoint out of range in edge ({a}, {b}) for n={n}")
        if a == b:
            raise InvalidInput(f"loop at vertex {a}")
        e = edge_key(a, b)
        if e in seen:
            raise InvalidInput(f"duplicate edge ({a}, {b})")
        seen.add(e)
    return Graph(n, seen)


def min_edge_degree_sum(g: Graph) -> int | None:
    """Smallest ``deg(u) + deg(v)`` over the edges of ``g``; ``None`` if edgeless."""
    return min((g.degree(a) + g.degree(b) for a, b in g.edges), default=None)


class BipartiteGraph:
    """Bipartite graph with an explicit U side and W side.

    The roles are not interchangeable: list sizes and the auxiliary order are
    measured from the U side.  Edges are stored in canonical ``edge_key`` form
    so that a graph and its side-swapped twin share edge keys.
    """

    __slots__ = ("side_u", "side_w", "edges", "_adj", "_in_u")

    def __init__(
        self,
        side_u: Iterable[int],
        side_w: Iterable[int],
        pairs: Iterable[tuple[int, int]],
    ) -> None:
        self.side_u: tuple[int, ...] = tuple(sorted(side_u))
        self.side_w: tuple[int, ...] = tuple(sorted(side_w))
        u_set, w_set = set(self.side_u), set(self.side_w)
        if len(u_set) != len(self.side_u) or len(w_set) != len(self.side_w):
            raise InvalidInput("repeated vertex inside a side")
        if u_set & w_set:
            raise InvalidInput(f"sides overlap in {sorted(u_set & w_set)}")
        adj: dict[int, set[int]] = {v: set() for v in (*self.side_u, *self.side_w)}
        edges: set[Edge] = set()
        for u, w in pairs:
            if u in w_set and w in u_set:
                u, w = w, u
            if u not in u_set or w not in w_set:
                raise InvalidInput(f"edge ({u}, {w}) does not cross the bipartition")
            e = edge_key(u, w)
            if e in edges:
                raise InvalidInput(f"duplicate edge ({u}, {w})")
            edges.add(e)
            adj[u].add(w)
            adj[w].add(u)
        self.edges: tuple[Edge, ...] = tuple(sorted(edges))
        self._adj = {v: frozenset(s) for v, s in adj.items()}
        self._in_u = frozenset(u_set)

    def __repr__(self) -> str:
        return (
            f"BipartiteGraph(|U|={len(self.side_u)}, |W|={len(self.side_w)}, "
            f"m={len(self.edges)})"
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (self.side_u, self.side_w, self.edges) == (
            other.side_u,
            other.side_w,
            other.edges,
        )

    def __hash__(self) -> int:
        return hash((self.side_u, self.side_w, self.edges))

    def in_u(self, v: int) -> bool:
        return v in self._in_u

    def split(self, e: Edge) -> tuple[int, int]:
        """Return the endpoints of ``e`` as ``(u, w)`` with ``u`` on the U side."""
        a, b = e
        return (a, b) if a in self._in_u else (b, a)

    def neighbours(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    @property
    def max_degree(self) -> int:
        return max((len(s) for s in self._adj.values()), default=0)

    def incident(self, v: int) -> list[Edge]:
        return sorted(edge_key(v, x) for x in self._adj[v])

    def swapped(self) -> BipartiteGraph:
        """Same graph with the roles of U and W exchanged."""
        return BipartiteGraph(self.side_w, self.side_u, (self.split(e)[::-1] for e in self.edges))

    def subgraph(self, side_u: Iterable[int], side_w: Iterable[int]) -> BipartiteGraph:
        """Induced bipartite subgraph on the given vertex subsets."""
        su, sw = set(side_u), set(side_w)
        pairs = [self.split(e) for e in self.edges]
        return BipartiteGraph(su, sw, [(u, w) for u, w in pairs if u in su and w in sw])
