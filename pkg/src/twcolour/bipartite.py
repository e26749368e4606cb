"""List edge colouring of bipartite graphs by the kernel method.

An *auxiliary order* is a proper edge colouring ``cstar`` of the bipartite
graph, used only as a priority.  For a colour ``c`` the set of uncoloured
edges whose list contains ``c`` is reduced to a kernel (a stable matching
where U-vertices prefer large ``cstar`` and W-vertices prefer small
``cstar``), and that kernel receives ``c``.  With ``cstar(uw) <= deg(u)``
(an L*-colouring) this colours from any lists with ``|L(uw)| >= deg(u)``.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Collection, Iterable, Mapping
from dataclasses import dataclass

from .errors import InternalAssertion, PreconditionError, SearchBudgetExceeded
from .graph import BipartiteGraph, Edge
from .oracles import validate_edge_colouring

DEFAULT_BUDGET = 10_000_000

ListAssignment = Mapping[Edge, Collection[int]]
EdgeColouring = dict[Edge, int]


@dataclass(frozen=True)
class ChoosableCertificate:
    """Trace of the U-vertex removals that led to a choosable subset ``C``.

    ``removed`` lists ``(v, discarded)`` pairs: ``v`` had degree at most
    ``|U'| - 1`` and its W-neighbours were discarded with it.  ``terminal_W``
    is what was left of W when the removals stopped.
    """

    C: frozenset[int]
    removed: tuple[tuple[int, tuple[int, ...]], ...]
    terminal_U: frozenset[int]
    terminal_W: frozenset[int]

    @property
    def base_case(self) -> bool:
        return len(self.terminal_U) == 1


def lstar_lists(h: BipartiteGraph) -> dict[Edge, frozenset[int]]:
    """Lists ``{1, ..., deg(u)}`` on every edge ``uw``."""
    return {e: frozenset(range(1, h.degree(h.split(e)[0]) + 1)) for e in h.edges}


def search_list_colouring(
    edges: Iterable[Edge],
    lists: ListAssignment,
    budget: int = DEFAULT_BUDGET,
) -> EdgeColouring | None:
    """Exhaustive list edge colouring by backtracking.

    Branches on the uncoloured edge with the fewest remaining options
    (lowest index on ties) and tries its colours in increasing order.
    Raises :class:`SearchBudgetExceeded` after ``budget`` search nodes.
    """
    edges = sorted(edges)
    m = len(edges)
    if m == 0:
        return {}
    ends = edges
    allowed = [0] * m
    for i, e in enumerate(edges):
        for c in lists[e]:
            allowed[i] |= 1 << c
    used: dict[int, int] = {}
    for a, b in ends:
        used[a] = 0
        used[b] = 0
    colour = [0] * m
    free = set(range(m))
    nodes = 0

    def pick() -> tuple[int, int]:
        best, best_dom, best_size = -1, 0, 1 << 30
        for i in free:
            a, b = ends[i]
            dom = allowed[i] & ~(used[a] | used[b])
            size = dom.bit_count()
            if size < best_size or (size == best_size and i < best):
                best, best_dom, best_size = i, dom, size
                if size == 0:
                    break
        return best, best_dom

    def rec() -> bool:
        nonlocal nodes
        if not free:
            return True
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceeded(budget)
        i, dom = pick()
        if dom == 0:
            return False
        a, b = ends[i]
        free.discard(i)
        while dom:
            low = dom & -dom
            dom ^= low
            used[a] |= low
            used[b] |= low
            colour[i] = low.bit_length() - 1
            if rec():
                return True
            used[a] ^= low
            used[b] ^= low
        free.add(i)
        return False

    if not rec():
        return None
    return {e: colour[i] for i, e in enumerate(edges)}


def find_lstar_colouring(h: BipartiteGraph, budget: int = DEFAULT_BUDGET) -> EdgeColouring | None:
    """Proper edge colouring with ``colour(uw) <= deg(u)``, or ``None``."""
    return search_list_colouring(h.edges, lstar_lists(h), budget)


def is_choosable_via_lstar(h: BipartiteGraph, budget: int = DEFAULT_BUDGET) -> bool:
    """Whether W is choosable in ``h``, decided through the L* lists."""
    return find_lstar_colouring(h, budget) is not None


def _dominated(h: BipartiteGraph, order: Mapping[Edge, int], e: Edge, kernel: set[Edge]) -> bool:
    u, w = h.split(e)
    c = order[e]
    for f in kernel:
        fu, fw = h.split(f)
        if fu == u and order[f] > c:
            return True
        if fw == w and order[f] < c:
            return True
    return False


def kernel_for_colour(
    h: BipartiteGraph, order: Mapping[Edge, int], candidates: Iterable[Edge]
) -> set[Edge]:
    """Kernel of the candidate edges under the auxiliary order.

    Deferred acceptance: each U-vertex proposes its candidate edges in
    decreasing ``order``; each W-vertex keeps the proposal with the smallest
    ``order`` seen so far.  Every candidate outside the result is dominated
    by a kernel edge at u with larger order or at w with smaller order.
    """
    cands = sorted(set(candidates))
    prefs: dict[int, list[Edge]] = {}
    for e in cands:
        prefs.setdefault(h.split(e)[0], []).append(e)
    for u in prefs:
        prefs[u].sort(key=lambda f: -order[f])
    nxt = dict.fromkeys(prefs, 0)
    held: dict[int, Edge] = {}
    queue = deque(sorted(prefs))
    while queue:
        u = queue.popleft()
        if nxt[u] >= len(prefs[u]):
            continue
        e = prefs[u][nxt[u]]
        nxt[u] += 1
        w = h.split(e)[1]
        cur = held.get(w)
        if cur is None or order[e] < order[cur]:
            held[w] = e
            if cur is not None:
                queue.append(h.split(cur)[0])
        else:
            queue.append(u)
    kernel = set(held.values())
    touched: set[int] = set()
    for e in kernel:
        u, w = h.split(e)
        if u in touched or w in touched:
            raise InternalAssertion(f"kernel is not a matching at edge {e}")
        touched.update((u, w))
    for e in cands:
        if e not in kernel and not _dominated(h, order, e, kernel):
            raise InternalAssertion(f"edge {e} is not dominated by the kernel")
    return kernel


def check_order(h: BipartiteGraph, order: Mapping[Edge, int]) -> None:
    """Raise :class:`PreconditionError` unless ``order`` is a proper edge colouring of ``h``."""
    for e in h.edges:
        if e not in order:
            raise PreconditionError(f"auxiliary order misses edge {e}")
    for v in (*h.side_u, *h.side_w):
        vals = [order[e] for e in h.incident(v)]
        if len(set(vals)) != len(vals):
            raise PreconditionError(f"auxiliary order is not proper at vertex {v}")


def kernel_slack(
    h: BipartiteGraph, lists: ListAssignment, order: Mapping[Edge, int]
) -> list[tuple[Edge, int, int, int]]:
    """Edges where the kernel method's counting condition fails.

    For ``e = uw`` the condition is ``#{f at u : order(f) > order(e)} +
    #{f at w : order(f) < order(e)} < |L(e)|``.  Returns one
    ``(edge, above_at_u, below_at_w, list_size)`` tuple per failing edge.
    """
    bad = []
    for e in h.edges:
        u, w = h.split(e)
        c = order[e]
        above = sum(1 for f in h.incident(u) if order[f] > c)
        below = sum(1 for f in h.incident(w) if order[f] < c)
        if above + below >= len(lists[e]):
            bad.append((e, above, below, len(lists[e])))
    return bad


def kernel_list_colour(
    h: BipartiteGraph, lists: ListAssignment, order: Mapping[Edge, int]
) -> EdgeColouring:
    """Colour ``h`` from ``lists`` by repeated kernels, colours in increasing order."""
    check_order(h, order)
    for e in h.edges:
        if e not in lists:
            raise PreconditionError(f"no list for edge {e}")
    bad = kernel_slack(h, lists, order)
    if bad:
        e, above, below, size = bad[0]
        raise PreconditionError(
            f"edge {e}: {above} larger-order edges at its U end plus {below} "
            f"smaller-order edges at its W end is not below the list size {size}"
        )
    uncoloured = set(h.edges)
    result: EdgeColouring = {}
    for c in sorted(set().union(*(lists[e] for e in h.edges)) if h.edges else ()):
        cands = [e for e in uncoloured if c in lists[e]]
        if not cands:
            continue
        for e in kernel_for_colour(h, order, cands):
            result[e] = c
            uncoloured.discard(e)
    if uncoloured:
        raise InternalAssertion(f"kernel colouring left edges uncoloured: {sorted(uncoloured)}")
    bad_report = validate_edge_colouring(h, result, lists)
    if bad_report:
        raise InternalAssertion(f"kernel colouring is invalid: {bad_report[0]}")
    return result


def find_choosable_subset(h: BipartiteGraph) -> ChoosableCertificate:
    """A nonempty subset of W that is choosable in ``h``.

    Requires ``2|W| > |U|(|U| - 1)``.  While some U-vertex has degree at most
    ``|U| - 1`` the smallest such vertex and its W-neighbours are dropped (the
    strict inequality survives every drop).  With one U-vertex left any single
    W-vertex is choosable; otherwise every remaining U-vertex dominates its
    W-neighbours in degree and the whole remaining W is choosable.
    """
    nu, nw = len(h.side_u), len(h.side_w)
    if nu == 0 or not 2 * nw > nu * (nu - 1):
        raise PreconditionError(
            f"need a nonempty U and 2|W| > |U|(|U|-1); got |U|={nu}, |W|={nw}"
        )
    us = set(h.side_u)
    ws = set(h.side_w)
    removed: list[tuple[int, tuple[int, ...]]] = []
    while len(us) > 1:
        low = [v for v in sorted(us) if len(h.neighbours(v) & ws) <= len(us) - 1]
        if not low:
            break
        v = low[0]
        gone = tuple(sorted(h.neighbours(v) & ws))
        removed.append((v, gone))
        us.discard(v)
        ws.difference_update(gone)
        if not 2 * len(ws) > len(us) * (len(us) - 1):
            raise InternalAssertion(
                f"size inequality lost after dropping {v}: |U'|={len(us)}, |W'|={len(ws)}"
            )
    C = frozenset({min(ws)}) if len(us) == 1 else frozenset(ws)
    return ChoosableCertificate(C, tuple(removed), frozenset(us), frozenset(ws))


def subset_graph(h: BipartiteGraph, C: Iterable[int]) -> BipartiteGraph:
    """Bipartite graph of the edges between ``C`` and its neighbourhood."""
    cs = set(C)
    nc = set().union(*(h.neighbours(w) for w in cs)) if cs else set()
    return h.subgraph(nc, cs)


def colour_choosable_extension(
    h: BipartiteGraph, residual: ListAssignment, budget: int = DEFAULT_BUDGET
) -> EdgeColouring:
    """Colour the C-to-N(C) graph ``h`` from lists with ``|L(uw)| >= deg(u)``.

    ``h`` has U side N(C) and W side C for a subset C from
    :func:`find_choosable_subset`.  A single U-vertex is coloured greedily;
    otherwise an L*-colouring of ``h`` serves as the auxiliary order for
    :func:`kernel_list_colour`.  Should that order not be found, the edges are
    searched directly from ``residual`` before giving up.
    """
    for e in h.edges:
        u = h.split(e)[0]
        if len(residual[e]) < h.degree(u):
            raise PreconditionError(
                f"residual list of edge {e} has {len(residual[e])} colours, "
                f"fewer than deg({u}) = {h.degree(u)}"
            )
    if not h.edges:
        return {}
    hubs = [u for u in h.side_u if h.degree(u)]
    if len(hubs) == 1:
        result: EdgeColouring = {}
        taken: set[int] = set()
        for e in h.incident(hubs[0]):
            c = min(set(residual[e]) - taken)
            result[e] = c
            taken.add(c)
        return result
    try:
        order = find_lstar_colouring(h, budget)
    except SearchBudgetExceeded:
        order = None
    if order is not None:
        return kernel_list_colour(h, residual, order)
    direct = search_list_colouring(h.edges, residual, budget)
    if direct is None:
        raise InternalAssertion("choosable subset admits no colouring from its residual lists")
    return direct
