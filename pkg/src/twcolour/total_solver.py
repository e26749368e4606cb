"""Total colouring with max(Delta, 3k - 3, 2k) + 1 colours on graphs of treewidth <= k.

Forward pass: peel every edge whose endpoint degrees sum to at most Delta;
when none is left, find a hub witness (U, W, x), pick w* in W and delete the
edge x w*.  Backward pass: re-insert peeled edges greedily, and for each
deleted hub edge uncolour W, recolour a few edges around x so that x w*
gets a colour, then give the vertices of W their colours back.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from typing import Any, Union

from .edge_solver import EdgePeel, peel_edges
from .errors import CascadeExhausted, HubNotCompleteToBag, InternalAssertion, PreconditionError
from .graph import Edge, Graph, edge_key
from .oracles import TotalColouring, validate_total_colouring
from .treewidth import (
    StructuralWitness,
    TreeDecomposition,
    extract_witness,
    root_decomposition,
    validate_td,
)

log = logging.getLogger(__name__)

__all__ = [
    "AugmentationState",
    "TotalColouring",
    "augment_at_witness",
    "extend_peeled_total",
    "finish_W",
    "lifted_width",
    "missing_set",
    "solve_total",
    "total_palette",
]


def lifted_width(k: int) -> int:
    """Widths below 3 are treated as 3 (a width-k decomposition has width <= 3)."""
    return max(k, 3)


def total_palette(g: Graph, k: int) -> int:
    kk = lifted_width(k)
    return max(g.max_degree, 3 * kk - 3, 2 * kk) + 1


@dataclass(frozen=True)
class HubRecord:
    witness: StructuralWitness
    w_star: int


@dataclass
class AugmentationState:
    """Working data for recolouring around the hub ``x`` so that ``x w*`` can be coloured."""

    colouring: TotalColouring
    adj: Mapping[int, set[int]]
    U: frozenset[int]
    W: frozenset[int]
    x: int
    w_star: int
    k: int
    alpha: int = 0
    rho_x: int = 0
    F: frozenset[int] = frozenset()
    trace: list[dict[str, Any]] = field(default_factory=list)

    @property
    def palette(self) -> int:
        return self.colouring.palette

    def edge_colour(self, a: int, b: int) -> int | None:
        return self.colouring.edge_colours.get(edge_key(a, b))


def missing_set(state: AugmentationState | TotalColouring, v: int, adj: Mapping[int, Iterable[int]] | None = None) -> set[int]:
    """Colours used neither on ``v`` nor on any coloured edge at ``v``."""
    if isinstance(state, AugmentationState):
        tc, adj = state.colouring, state.adj
    else:
        tc = state
    assert adj is not None
    out = set(range(1, tc.palette + 1))
    out.discard(tc.vertex_colours.get(v))
    for u in adj[v]:
        c = tc.edge_colours.get(edge_key(u, v))
        if c is not None:
            out.discard(c)
    return out


def _forbidden_at_vertex(tc: TotalColouring, adj: Mapping[int, Iterable[int]], v: int) -> set[int]:
    out = set()
    for u in adj[v]:
        if u in tc.vertex_colours:
            out.add(tc.vertex_colours[u])
        c = tc.edge_colours.get(edge_key(u, v))
        if c is not None:
            out.add(c)
    return out


def _forbidden_at_edge(tc: TotalColouring, adj: Mapping[int, Iterable[int]], e: Edge) -> set[int]:
    out = set()
    for v in e:
        if v in tc.vertex_colours:
            out.add(tc.vertex_colours[v])
        for u in adj[v]:
            f = edge_key(u, v)
            if f != e and f in tc.edge_colours:
                out.add(tc.edge_colours[f])
    return out


def _smallest_outside(palette: int, forbidden: set[int]) -> int | None:
    for c in range(1, palette + 1):
        if c not in forbidden:
            return c
    return None


def extend_peeled_total(tc: TotalColouring, adj: Mapping[int, Iterable[int]], uv: Edge) -> TotalColouring:
    """Put a peeled edge back.

    ``adj`` is the graph with ``uv`` present; ``tc`` colours all of it except
    ``uv`` (an uncoloured end is first given its smallest free colour).  If
    the ends share a colour, the lower-degree end is recoloured first.  Needs ``deg(u) + deg(v) <= palette - 1``.
    """
    a, b = uv
    da, db = len(adj[a]), len(adj[b])
    if b not in adj[a]:
        raise PreconditionError(f"edge {uv} is not in the supplied graph")
    if da + db > tc.palette - 1:
        raise PreconditionError(f"degree sum {da + db} of {uv} exceeds palette - 1 = {tc.palette - 1}")
    if uv in tc.edge_colours:
        raise PreconditionError(f"edge {uv} is already coloured")
    u, v = (a, b) if da >= db else (b, a)
    out = tc.copy()
    for end in (u, v):
        if end not in out.vertex_colours:
            c = _smallest_outside(out.palette, _forbidden_at_vertex(out, adj, end))
            if c is None:
                raise InternalAssertion(f"no colour left for vertex {end}")
            out.vertex_colours[end] = c
    if out.vertex_colours[u] == out.vertex_colours[v]:
        c = _smallest_outside(out.palette, _forbidden_at_vertex(out, adj, v))
        if c is None:
            raise InternalAssertion(f"no colour left to recolour vertex {v}")
        out.vertex_colours[v] = c
    c = _smallest_outside(out.palette, _forbidden_at_edge(out, adj, uv))
    if c is None:
        raise InternalAssertion(f"no colour left for peeled edge {uv}")
    out.edge_colours[uv] = c
    return out


def finish_W(tc: TotalColouring, adj: Mapping[int, Iterable[int]], W: Iterable[int]) -> TotalColouring:
    """Give each uncoloured vertex of the stable set ``W`` its smallest free colour."""
    out = tc.copy()
    for w in sorted(W):
        if w in out.vertex_colours:
            raise PreconditionError(f"vertex {w} of W is already coloured")
        c = _smallest_outside(out.palette, _forbidden_at_vertex(out, adj, w))
        if c is None:
            raise InternalAssertion(f"no colour left for vertex {w}")
        out.vertex_colours[w] = c
    return out


def _local_ok(
    state: AugmentationState, vertex_changes: dict[int, int], edge_changes: dict[Edge, int]
) -> bool:
    """Whether applying the changes keeps every touched element properly coloured."""
    vc = dict(state.colouring.vertex_colours)
    ec = dict(state.colouring.edge_colours)
    vc.update(vertex_changes)
    ec.update(edge_changes)
    adj = state.adj
    for v in vertex_changes:
        c = vc[v]
        if not 1 <= c <= state.palette:
            return False
        for u in adj[v]:
            if vc.get(u) == c or ec.get(edge_key(u, v)) == c:
                return False
    for e in edge_changes:
        c = ec[e]
        if not 1 <= c <= state.palette:
            return False
        for v in e:
            if vc.get(v) == c:
                return False
            for u in adj[v]:
                f = edge_key(u, v)
                if f != e and ec.get(f) == c:
                    return False
    return True


def _commit(
    state: AugmentationState,
    move: str,
    vertex_changes: dict[int, int],
    edge_changes: dict[Edge, int],
) -> bool:
    if not _local_ok(state, vertex_changes, edge_changes):
        state.trace.append({"move": move, "status": "rejected", "changes": _describe(vertex_changes, edge_changes)})
        return False
    state.colouring.vertex_colours.update(vertex_changes)
    state.colouring.edge_colours.update(edge_changes)
    state.trace.append({"move": move, "status": "applied", "changes": _describe(vertex_changes, edge_changes)})
    return True


def _describe(vertex_changes: dict[int, int], edge_changes: dict[Edge, int]) -> dict[str, Any]:
    return {
        "vertices": {str(v): c for v, c in sorted(vertex_changes.items())},
        "edges": {f"{a}-{b}": c for (a, b), c in sorted(edge_changes.items())},
    }


def _fail(state: AugmentationState, why: str, cls: type[InternalAssertion] = CascadeExhausted) -> None:
    state.trace.append({"move": "5", "status": "failed", "reason": why})
    raise cls(f"augmentation at hub {state.x}, w*={state.w_star}: {why}", state.trace)


def augment_at_witness(state: AugmentationState) -> TotalColouring:
    """Colour the edge ``x w*`` by one of five recolouring moves.

    The colouring must be proper on everything except the vertices of W
    (uncoloured) and the edge ``x w*``.  Moves are tried in order and the
    first that produces a proper colouring is kept:

    1. a colour missing at both x and w*;
    2. a colour beta missing at w* and outside F sits on an edge x v_beta
       with alpha missing at v_beta: move that edge to alpha, use beta;
    3. rho_x missing at w* and no vertex of U coloured alpha: recolour x;
    4. a colour beta* missing at v_beta but not at w*: shift it onto x v_beta,
       possibly moving x y (y in W) or x itself to alpha;
    5. swap the colours of u x and u v_beta, where u v_beta is the alpha-edge
       at v_beta, and give x w* the old colour of u x.

    Here alpha is the smallest colour missing at x, rho_x the colour of x and
    F the colours of x and its edges into U.  When moves 1-4 all fail, the
    facts that make move 5 valid are checked before it runs.
    """
    tc, adj = state.colouring, state.adj
    x, ws, U, W, k = state.x, state.w_star, state.U, state.W, state.k
    xw = edge_key(x, ws)
    if xw in tc.edge_colours:
        raise PreconditionError(f"hub edge {xw} is already coloured")
    if any(w in tc.vertex_colours for w in W):
        raise PreconditionError("vertices of W must be uncoloured")
    delta = state.palette - 1

    m_x = missing_set(state, x)
    if not m_x:
        _fail(state, "no colour missing at x", InternalAssertion)
    state.alpha = alpha = min(m_x)
    state.rho_x = rho_x = tc.vertex_colours[x]
    state.F = F = frozenset({rho_x} | {tc.edge_colours[edge_key(x, u)] for u in adj[x] if u in U})
    m_ws = missing_set(state, ws)
    state.trace.append(
        {
            "move": "start",
            "x": x,
            "w_star": ws,
            "alpha": alpha,
            "rho_x": rho_x,
            "F": sorted(F),
            "M_w_star": sorted(m_ws),
            "deg_w_star": len(adj[ws]),
        }
    )
    if len(F) > k + 1:
        _fail(state, f"|F| = {len(F)} exceeds k + 1", InternalAssertion)
    if len(m_ws) < delta + 1 - (len(adj[ws]) - 1) or len(m_ws) < 2 * k - 1:
        _fail(state, f"|M(w*)| = {len(m_ws)} is below its guaranteed size", InternalAssertion)

    def x_partner(colour: int) -> int | None:
        for u in adj[x]:
            if tc.edge_colours.get(edge_key(x, u)) == colour:
                return u
        return None

    def v_beta(beta: int) -> int | None:
        y = x_partner(beta)
        return y if y in W else None

    def u_has_alpha() -> bool:
        return any(tc.vertex_colours.get(u) == alpha for u in U)

    # 1
    for beta in sorted(m_ws & m_x):
        if _commit(state, "1", {}, {xw: beta}):
            return tc
    # 2
    for beta in sorted(m_ws - F):
        vb = v_beta(beta)
        if vb is not None and alpha in missing_set(state, vb):
            if _commit(state, "2", {}, {edge_key(x, vb): alpha, xw: beta}):
                return tc
    # 3
    if rho_x in m_ws and not u_has_alpha():
        if _commit(state, "3", {x: alpha}, {xw: rho_x}):
            return tc
    # 4
    for beta in sorted(m_ws - F):
        vb = v_beta(beta)
        if vb is None:
            continue
        xvb = edge_key(x, vb)
        for bstar in sorted(missing_set(state, vb) - m_ws):
            if bstar == rho_x and not u_has_alpha():
                if _commit(state, "4a", {x: alpha}, {xvb: rho_x, xw: beta}):
                    return tc
                continue
            y = x_partner(bstar)
            if y is None or y not in W:
                if _commit(state, "4b", {}, {xw: beta, xvb: bstar}):
                    return tc
            elif alpha in missing_set(state, y):
                if _commit(state, "4c", {}, {edge_key(x, y): alpha, xw: beta, xvb: bstar}):
                    return tc

    # 5: every fact it relies on is checked first
    if len(F) != k + 1:
        _fail(state, f"|F| = {len(F)}, expected k + 1 = {k + 1}")
    if len(adj[ws]) != k:
        _fail(state, f"deg(w*) = {len(adj[ws])}, expected k = {k}")
    if not (F - {rho_x}) <= m_ws:
        _fail(state, "F minus rho_x is not contained in M(w*)")
    free = sorted(m_ws - F)
    if not free:
        _fail(state, "M(w*) minus F is empty")
    beta = free[0]
    vb = v_beta(beta)
    if vb is None:
        _fail(state, f"no W-vertex joined to x by colour {beta}")
    m_vb = missing_set(state, vb)
    if m_vb != m_ws - {beta}:
        _fail(state, f"M(v_beta) = {sorted(m_vb)} differs from M(w*) - beta")
    u = next((y for y in adj[vb] if tc.edge_colours.get(edge_key(y, vb)) == alpha), None)
    if u is None or u not in U:
        _fail(state, f"no alpha-edge from v_beta = {vb} into U")
    if x not in adj[u]:
        _fail(state, f"x is not adjacent to {u} in U", HubNotCompleteToBag)
    rho_ux = tc.edge_colours[edge_key(u, x)]
    if not _commit(state, "5", {}, {edge_key(u, x): alpha, edge_key(u, vb): rho_ux, xw: rho_ux}):
        _fail(state, "final swap is not proper")
    return tc


def solve_total(
    g: Graph,
    td: TreeDecomposition,
    k: int,
    traces: list[list[dict[str, Any]]] | None = None,
) -> TotalColouring:
    """Total colouring of ``g`` with ``total_palette(g, k)`` colours.

    Each hub augmentation appends its move trace to ``traces`` when given.
    """
    problems = validate_td(g, td)
    if problems:
        raise PreconditionError(f"invalid tree decomposition: {problems[0]}")
    if td.width > k:
        raise PreconditionError(f"decomposition width {td.width} exceeds k = {k}")
    kk = lifted_width(k)
    palette = total_palette(g, k)
    delta = palette - 1

    stack: list[Union[EdgePeel, HubRecord]] = []
    cur = g
    while True:
        cur, peeled = peel_edges(cur, delta + 1)
        stack.extend(peeled)
        if not cur.edges:
            break
        wit = extract_witness(cur, root_decomposition(td, 0), kk, delta - 1)
        ws = min(wit.W)
        stack.append(HubRecord(wit, ws))
        cur = cur.without_edges([(wit.x, ws)])

    tc = TotalColouring({v: 1 for v in range(g.n)}, {}, palette)
    adj = cur.adjacency()
    for rec in reversed(stack):
        if isinstance(rec, EdgePeel):
            a, b = rec.edge
            adj[a].add(b)
            adj[b].add(a)
            tc = extend_peeled_total(tc, adj, rec.edge)
            continue
        wit = rec.witness
        adj[wit.x].add(rec.w_star)
        adj[rec.w_star].add(wit.x)
        for w in wit.W:
            del tc.vertex_colours[w]
        state = AugmentationState(tc, adj, wit.U, wit.W, wit.x, rec.w_star, kk)
        tc = augment_at_witness(state)
        tc = finish_W(tc, adj, wit.W)
        if traces is not None:
            traces.append(state.trace)
        _assert_proper(tc, adj)

    bad = validate_total_colouring(g, tc, palette)
    if bad:
        raise InternalAssertion(f"total colouring failed validation: {bad[0]}")
    return tc


def _assert_proper(tc: TotalColouring, adj: Mapping[int, Iterable[int]]) -> None:
    edges = sorted({edge_key(a, b) for a in adj for b in adj[a]})
    view = _GraphView(len(adj), edges)
    bad = validate_total_colouring(view, tc, complete=False)
    if bad:
        raise InternalAssertion(f"augmentation broke properness: {bad[0]}")


@dataclass(frozen=True)
class _GraphView:
    n: int
    edges: list[Edge]
