from __future__ import annotations

from hypothesis import strategies as st

from twcolour.graph import Graph, edge_key


@st.composite
def small_graphs(draw, max_n: int = 8) -> Graph:
    n = draw(st.integers(1, max_n))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)


def independent_witness_check(g: Graph, U, W, x, k, delta0) -> list[str]:
    """Re-derive the hub witness guarantees straight from the graph."""
    out = []
    if x not in U:
        out.append("x outside U")
    for w in W:
        if any(edge_key(w, v) in set(g.edges) for v in W if v != w):
            out.append("W not stable")
        if any(v not in U for v in g.neighbours(w)):
            out.append("N(W) escapes U")
        if g.degree(w) > k:
            out.append("deg(w) > k")
        if not g.has_edge(x, w):
            out.append("x not complete to W")
    if len(U) > k + 1:
        out.append("|U| > k+1")
    if len(W) < delta0 + 2 - 2 * k:
        out.append("|W| too small")
    return out


@st.composite
def bipartite_graphs(draw, max_u: int = 4, max_w: int = 4, min_edges: int = 0):
    from twcolour.graph import BipartiteGraph

    nu = draw(st.integers(1, max_u))
    nw = draw(st.integers(1, max_w))
    pairs = [(u, nu + w) for u in range(nu) for w in range(nw)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, min_size=min(min_edges, len(pairs))))
    return BipartiteGraph(range(nu), range(nu, nu + nw), chosen)


def dominated_independently(h, order, e, kernel) -> bool:
    u, w = h.split(e)
    return any(
        (h.split(f)[0] == u and order[f] > order[e]) or (h.split(f)[1] == w and order[f] < order[e])
        for f in kernel
    )


def triangle_book(a: int, extra: int, seed: int):
    """Partial 2-tree: a triangle on 0, 1, 2 with ``a`` degree-2 pages on each side
    plus ``extra`` pages on random sides.  With ``extra = 0`` all three hubs share
    the maximum degree, so no edge can be peeled and the subset step must run.
    """
    import random

    from twcolour.graph import build_graph
    from twcolour.treewidth import TreeDecomposition

    rng = random.Random(seed)
    sides = [(0, 1), (1, 2), (0, 2)]
    plan = [s for s in sides for _ in range(a)] + [rng.choice(sides) for _ in range(extra)]
    rng.shuffle(plan)
    edges, bags, tree = [(0, 1), (1, 2), (0, 2)], [{0, 1, 2}], []
    for v, (p, q) in enumerate(plan, start=3):
        edges += [(p, v), (q, v)]
        bags.append({p, q, v})
        tree.append((0, len(bags) - 1))
    return build_graph(3 + len(plan), edges), TreeDecomposition.from_lists(bags, tree)


def k4_hub(m: int, seed: int):
    """Partial 3-tree: K4 on 0..3 and ``m`` vertices joined to 0 and two of 1..3."""
    import random

    from twcolour.graph import build_graph
    from twcolour.treewidth import TreeDecomposition

    rng = random.Random(seed)
    edges = [(a, b) for a in range(4) for b in range(a + 1, 4)]
    for i in range(m):
        a, b = rng.choice([(1, 2), (1, 3), (2, 3)])
        edges += [(0, 4 + i), (a, 4 + i), (b, 4 + i)]
    g = build_graph(4 + m, edges)
    bags = [set(range(4))] + [{4 + i, *g.neighbours(4 + i)} for i in range(m)]
    return g, TreeDecomposition.from_lists(bags, [(0, i + 1) for i in range(m)])


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
