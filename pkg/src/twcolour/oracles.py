"""Ground truth by brute force, and validators for every colouring kind.

The searches here are deliberately plain so that they can be trusted as
references for the constructive solvers; they share no code with them.
"""

from __future__ import annotations

from collections.abc import Collection, Iterable, Mapping
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Any

from .errors import CapExceeded
from .graph import Edge
from .report import Violation

EDGE_CAP = 24
TOTAL_CAP = 20
CHOOSABLE_EDGE_CAP = 4
CHOOSABLE_UNIVERSE_CAP = 6


@dataclass
class TotalColouring:
    """Vertex and edge colours drawn from ``1 .. palette``; either map may be partial."""

    vertex_colours: dict[int, int] = field(default_factory=dict)
    edge_colours: dict[Edge, int] = field(default_factory=dict)
    palette: int = 0

    def copy(self) -> TotalColouring:
        return TotalColouring(dict(self.vertex_colours), dict(self.edge_colours), self.palette)

    @property
    def colours_used(self) -> set[int]:
        return set(self.vertex_colours.values()) | set(self.edge_colours.values())


# -- validators ----------------------------------------------------------------


def validate_edge_colouring(
    g: Any,
    colouring: Mapping[Edge, int],
    lists: Mapping[Edge, Collection[int]] | None = None,
    complete: bool = True,
) -> list[Violation]:
    """Properness (and list membership when ``lists`` is given).

    ``g`` is anything with an ``edges`` attribute of canonical pairs.
    """
    out: list[Violation] = []
    edge_set = set(g.edges)
    for e in sorted(colouring):
        if e not in edge_set:
            out.append(Violation("unknown-edge", e, f"edge {e} is not in the graph"))
    if complete:
        for e in g.edges:
            if e not in colouring:
                out.append(Violation("uncoloured", e, f"edge {e} has no colour"))
    seen: dict[tuple[int, int], Edge] = {}
    for e in sorted(colouring):
        c = colouring[e]
        for v in e:
            other = seen.get((v, c))
            if other is not None:
                out.append(
                    Violation("properness", (v, e, other), f"edges {other} and {e} share colour {c} at {v}")
                )
            else:
                seen[(v, c)] = e
        if lists is not None and e in edge_set and c not in lists.get(e, ()):
            out.append(Violation("list-membership", e, f"colour {c} of edge {e} not in its list"))
    return out


def validate_total_colouring(
    g: Any, tc: TotalColouring, palette: int | None = None, complete: bool = True
) -> list[Violation]:
    """Check a total colouring: vertices, edges, and edge-versus-endpoint clashes."""
    k = tc.palette if palette is None else palette
    out: list[Violation] = []
    vc, ec = tc.vertex_colours, tc.edge_colours
    n = g.n
    for v, c in sorted(vc.items()):
        if not 0 <= v < n:
            out.append(Violation("unknown-vertex", v, f"vertex {v} is not in the graph"))
        if not 1 <= c <= k:
            out.append(Violation("palette", v, f"vertex {v} has colour {c} outside 1..{k}"))
    edge_set = set(g.edges)
    for e, c in sorted(ec.items()):
        if e not in edge_set:
            out.append(Violation("unknown-edge", e, f"edge {e} is not in the graph"))
        if not 1 <= c <= k:
            out.append(Violation("palette", e, f"edge {e} has colour {c} outside 1..{k}"))
    if complete:
        for v in range(n):
            if v not in vc:
                out.append(Violation("uncoloured", v, f"vertex {v} has no colour"))
        for e in g.edges:
            if e not in ec:
                out.append(Violation("uncoloured", e, f"edge {e} has no colour"))
    for a, b in g.edges:
        if a in vc and b in vc and vc[a] == vc[b]:
            out.append(Violation("vertex-properness", (a, b), f"adjacent {a} and {b} share colour {vc[a]}"))
    seen: dict[tuple[int, int], Edge] = {}
    for e, c in sorted(ec.items()):
        for v in e:
            other = seen.get((v, c))
            if other is not None:
                out.append(
                    Violation("edge-properness", (v, e, other), f"edges {other} and {e} share colour {c} at {v}")
                )
            else:
                seen[(v, c)] = e
            if vc.get(v) == c:
                out.append(Violation("vertex-edge-clash", (v, e), f"edge {e} has the colour {c} of its end {v}"))
    return out


# -- exhaustive oracles ----------------------------------------------------------


def oracle_edge_list_colour(
    g: Any, lists: Mapping[Edge, Collection[int]], cap: int = EDGE_CAP
) -> dict[Edge, int] | None:
    """An L-edge-colouring of ``g`` if one exists, else ``None``.

    Most constrained edge first, colours in increasing order.
    """
    edges = list(g.edges)
    if len(edges) > cap:
        raise CapExceeded(f"{len(edges)} edges exceed the oracle cap of {cap}")
    at: dict[int, list[Edge]] = {}
    for e in edges:
        for v in e:
            at.setdefault(v, []).append(e)
    colour: dict[Edge, int] = {}

    def options(e: Edge) -> list[int]:
        taken = {colour[f] for v in e for f in at[v] if f in colour}
        return sorted(c for c in lists[e] if c not in taken)

    def rec() -> bool:
        todo = [e for e in edges if e not in colour]
        if not todo:
            return True
        e = min(todo, key=lambda f: (len(options(f)), f))
        for c in options(e):
            colour[e] = c
            if rec():
                return True
            del colour[e]
        return False

    return dict(colour) if rec() else None


def oracle_total_colour(g: Any, palette: int, cap: int = TOTAL_CAP) -> TotalColouring | None:
    """A total colouring of ``g`` with colours ``1..palette``, or ``None``.

    Elements are vertices and edges.  The branching element is the one with
    fewest options; ties go to vertices before edges, then to the smaller id.
    """
    if g.n + len(g.edges) > cap:
        raise CapExceeded(f"{g.n} vertices + {len(g.edges)} edges exceed the oracle cap of {cap}")
    elements: list[tuple[int, Any]] = [(0, v) for v in range(g.n)] + [(1, e) for e in g.edges]
    conflicts: dict[tuple[int, Any], list[tuple[int, Any]]] = {x: [] for x in elements}
    for a, b in g.edges:
        conflicts[(0, a)].append((0, b))
        conflicts[(0, b)].append((0, a))
    for e in g.edges:
        for v in e:
            conflicts[(1, e)].append((0, v))
            conflicts[(0, v)].append((1, e))
    for e, f in combinations(g.edges, 2):
        if set(e) & set(f):
            conflicts[(1, e)].append((1, f))
            conflicts[(1, f)].append((1, e))
    colour: dict[tuple[int, Any], int] = {}

    def options(x: tuple[int, Any]) -> list[int]:
        taken = {colour[y] for y in conflicts[x] if y in colour}
        return [c for c in range(1, palette + 1) if c not in taken]

    def rec() -> bool:
        todo = [x for x in elements if x not in colour]
        if not todo:
            return True
        x = min(todo, key=lambda y: (len(options(y)), y))
        for c in options(x):
            colour[x] = c
            if rec():
                return True
            del colour[x]
        return False

    if not rec():
        return None
    return TotalColouring(
        {v: c for (kind, v), c in colour.items() if kind == 0},
        {e: c for (kind, e), c in colour.items() if kind == 1},
        palette,
    )


def _u_degree(g: Any, e: Edge) -> int:
    u = g.split(e)[0]
    return g.degree(u)


def list_assignments(g: Any, universe: Iterable[int]) -> Iterable[dict[Edge, frozenset[int]]]:
    """All assignments ``|L(uw)| = deg(u)`` from ``universe``, up to renaming colours.

    Renaming colours never changes colourability, so the first edge's list is
    pinned to the smallest ``deg(u)`` colours; the other lists range over all
    sorted subsets.
    """
    uni = sorted(set(universe))
    edges = list(g.edges)
    if not edges:
        yield {}
        return
    first = frozenset(uni[: _u_degree(g, edges[0])])
    choices = [[frozenset(c) for c in combinations(uni, _u_degree(g, e))] for e in edges[1:]]
    for rest in product(*choices):
        yield dict(zip(edges, (first, *rest)))


def find_unchoosable_assignment(
    g: Any,
    universe: Iterable[int],
    edge_cap: int = CHOOSABLE_EDGE_CAP,
    universe_cap: int = CHOOSABLE_UNIVERSE_CAP,
) -> dict[Edge, frozenset[int]] | None:
    """A U-degree-sized list assignment with no colouring, if the universe holds one."""
    uni = set(universe)
    if len(g.edges) > edge_cap or len(uni) > universe_cap:
        raise CapExceeded(
            f"choosability oracle limited to {edge_cap} edges and {universe_cap} colours; "
            f"got {len(g.edges)} and {len(uni)}"
        )
    if any(_u_degree(g, e) > len(uni) for e in g.edges):
        raise CapExceeded("universe smaller than a U-side degree")
    for lists in list_assignments(g, uni):
        if oracle_edge_list_colour(g, lists, cap=edge_cap) is None:
            return lists
    return None


def oracle_choosable(
    g: Any,
    universe: Iterable[int] = range(1, 7),
    edge_cap: int = CHOOSABLE_EDGE_CAP,
    universe_cap: int = CHOOSABLE_UNIVERSE_CAP,
) -> bool:
    """Bounded-universe test of whether W is choosable in the bipartite graph ``g``.

    Only assignments drawn from ``universe`` are tried, so a ``True`` answer is
    evidence rather than proof.
    """
    return find_unchoosable_assignment(g, universe, edge_cap, universe_cap) is None

