"""List edge colouring of bounded-treewidth graphs with lists of size max(ceil((k+3)^2/2), Delta).

The minimal-counterexample induction is run forwards as a peeling loop and
then unwound:

* an edge whose endpoint degrees sum to less than ``Delta + 2`` is peeled,
  since it can always be coloured last;
* otherwise a hub witness (U, W, x) exists, W holds a choosable subset C, and
  C is removed; its edges are coloured last from whatever their lists retain.
"""

from __future__ import annotations

import heapq
import logging
from collections.abc import Collection, Iterable, Mapping
from dataclasses import dataclass
from typing import Union

from .bipartite import (
    DEFAULT_BUDGET,
    ChoosableCertificate,
    EdgeColouring,
    colour_choosable_extension,
    find_choosable_subset,
)
from .errors import InternalAssertion, PreconditionError
from .graph import BipartiteGraph, Edge, Graph, edge_key
from .oracles import validate_edge_colouring
from .treewidth import TreeDecomposition, extract_witness, root_decomposition, validate_td

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class EdgePeel:
    edge: Edge


@dataclass(frozen=True)
class SubsetPeel:
    """A choosable subset C removed together with all its edges."""

    C: frozenset[int]
    neighbourhood: frozenset[int]
    graph: BipartiteGraph
    certificate: ChoosableCertificate

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self.graph.edges


PeelRecord = Union[EdgePeel, SubsetPeel]


def list_size_threshold(k: int) -> int:
    """``ceil((k + 3)^2 / 2)``."""
    if k < 0:
        raise PreconditionError(f"width must be non-negative, got {k}")
    return ((k + 3) ** 2 + 1) // 2


def peel_edges(g: Graph, threshold: int) -> tuple[Graph, list[EdgePeel]]:
    """Remove edges with endpoint degree sum below ``threshold`` until none is left.

    At each step the lexicographically smallest qualifying edge goes first.
    Degree sums only fall, so a qualifying edge stays qualifying.
    """
    adj = g.adjacency()
    heap = [e for e in g.edges if len(adj[e[0]]) + len(adj[e[1]]) < threshold]
    heapq.heapify(heap)
    queued = set(heap)
    peeled: list[EdgePeel] = []
    while heap:
        a, b = heapq.heappop(heap)
        adj[a].discard(b)
        adj[b].discard(a)
        peeled.append(EdgePeel((a, b)))
        for v in (a, b):
            for u in adj[v]:
                e = edge_key(u, v)
                if e not in queued and len(adj[u]) + len(adj[v]) < threshold:
                    queued.add(e)
                    heapq.heappush(heap, e)
    if not peeled:
        return g, peeled
    return g.without_edges(p.edge for p in peeled), peeled


def _smallest_free(lst: Collection[int], used: set[int]) -> int | None:
    free = [c for c in lst if c not in used]
    return min(free) if free else None


def replay_edge_peels(
    partial: Mapping[Edge, int],
    peels: Iterable[EdgePeel],
    lists: Mapping[Edge, Collection[int]],
) -> EdgeColouring:
    """Colour peeled edges, last peeled first, each with its smallest free list colour.

    ``peels`` is given in peeling order.
    """
    colouring = dict(partial)
    used: dict[int, set[int]] = {}
    for (a, b), c in colouring.items():
        used.setdefault(a, set()).add(c)
        used.setdefault(b, set()).add(c)
    for rec in reversed(list(peels)):
        a, b = rec.edge
        c = _smallest_free(lists[rec.edge], used.get(a, set()) | used.get(b, set()))
        if c is None:
            raise InternalAssertion(f"peeled edge {rec.edge} has no free colour left")
        colouring[rec.edge] = c
        used.setdefault(a, set()).add(c)
        used.setdefault(b, set()).add(c)
    return colouring


def solve_list_edge(
    g: Graph,
    td: TreeDecomposition,
    lists: Mapping[Edge, Collection[int]],
    k: int,
    threshold: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> EdgeColouring:
    """Colour every edge of ``g`` from its list.

    ``td`` must be a decomposition of ``g`` of width at most ``k`` and every
    list must hold at least ``max(threshold, Delta(g))`` colours, where
    ``threshold`` defaults to :func:`list_size_threshold` of ``k``.
    """
    problems = validate_td(g, td)
    if problems:
        raise PreconditionError(f"invalid tree decomposition: {problems[0]}")
    if td.width > k:
        raise PreconditionError(f"decomposition width {td.width} exceeds k = {k}")
    delta = max(list_size_threshold(k) if threshold is None else threshold, g.max_degree)
    for e in g.edges:
        if e not in lists:
            raise PreconditionError(f"edge {e} has no list")
        if len(set(lists[e])) < delta:
            raise PreconditionError(
                f"list of edge {e} has {len(set(lists[e]))} colours, fewer than {delta}"
            )

    stack: list[PeelRecord] = []
    cur, cur_td = g, td
    while True:
        cur, peeled = peel_edges(cur, delta + 2)
        stack.extend(peeled)
        if not cur.edges:
            break
        wit = extract_witness(cur, root_decomposition(cur_td, 0), k, delta)
        if not 2 * len(wit.W) > (k + 1) * k:
            raise InternalAssertion(f"|W| = {len(wit.W)} not above (k+1)k/2")
        h = BipartiteGraph(
            wit.U, wit.W, [(u, w) for w in wit.W for u in cur.neighbours(w)]
        )
        cert = find_choosable_subset(h)
        nc = frozenset().union(*(h.neighbours(w) for w in cert.C))
        hc = h.subgraph(nc, cert.C)
        stack.append(SubsetPeel(cert.C, nc, hc, cert))
        log.debug("hub %d: |W|=%d, removing C=%s", wit.x, len(wit.W), sorted(cert.C))
        cur = cur.isolate(cert.C)
        cur_td = cur_td.without_vertices(cert.C)

    colouring: EdgeColouring = {}
    run: list[EdgePeel] = []
    for rec in reversed(stack):
        if isinstance(rec, EdgePeel):
            run.append(rec)
            continue
        if run:
            colouring = replay_edge_peels(colouring, reversed(run), lists)
            run = []
        colouring.update(_extend_subset(colouring, rec, lists, budget))
    if run:
        colouring = replay_edge_peels(colouring, reversed(run), lists)

    bad = validate_edge_colouring(g, colouring, lists)
    if bad:
        raise InternalAssertion(f"list edge colouring failed validation: {bad[0]}")
    return colouring


def _extend_subset(
    colouring: Mapping[Edge, int],
    rec: SubsetPeel,
    lists: Mapping[Edge, Collection[int]],
    budget: int,
) -> EdgeColouring:
    used: dict[int, set[int]] = {v: set() for v in rec.neighbourhood | rec.C}
    for (a, b), c in colouring.items():
        if a in used:
            used[a].add(c)
        if b in used:
            used[b].add(c)
    hc = rec.graph
    residual: dict[Edge, frozenset[int]] = {}
    for e in hc.edges:
        u, w = hc.split(e)
        residual[e] = frozenset(set(lists[e]) - used[u] - used[w])
        if len(residual[e]) < hc.degree(u):
            raise InternalAssertion(
                f"residual list of {e} has {len(residual[e])} colours, below d_H({u}) = {hc.degree(u)}"
            )
    return colour_choosable_extension(hc, residual, budget)
