"""Instance generators: the tight bipartite family and random partial k-trees."""

from __future__ import annotations

import random
from itertools import combinations

from .errors import PreconditionError
from .graph import BipartiteGraph, Graph, edge_key
from .treewidth import TreeDecomposition


def gen_gi(i: int) -> BipartiteGraph:
    """The i-th member of the bipartite family with 2|W| = |U|(|U| - 1).

    U = {0, ..., i}.  W is built in batches: batch j (1 <= j <= i) has j
    vertices, each adjacent to exactly U_j = {0, ..., j}.  So |U| = i + 1
    and |W| = i(i + 1)/2.
    """
    if i < 1:
        raise PreconditionError(f"gen_gi needs i >= 1, got {i}")
    side_u = range(i + 1)
    side_w: list[int] = []
    pairs: list[tuple[int, int]] = []
    nxt = i + 1
    for j in range(1, i + 1):
        for _ in range(j):
            side_w.append(nxt)
            pairs.extend((u, nxt) for u in range(j + 1))
            nxt += 1
    return BipartiteGraph(side_u, side_w, pairs)


def gi_batches(i: int) -> list[list[int]]:
    """W-vertex ids of ``gen_gi(i)`` grouped by batch (batch j has j vertices)."""
    out, nxt = [], i + 1
    for j in range(1, i + 1):
        out.append(list(range(nxt, nxt + j)))
        nxt += j
    return out


def gen_partial_ktree(
    k: int, n: int, edge_keep: float, seed: int
) -> tuple[Graph, TreeDecomposition]:
    """Random partial k-tree on ``n`` vertices with its width-k decomposition.

    Starts from the clique on ``0..k``; each further vertex is joined to a
    uniformly chosen existing k-clique.  Every edge outside the initial clique
    then survives independently with probability ``edge_keep``.  The initial
    clique is never thinned, so the returned decomposition has width exactly k.
    """
    if not 1 <= k < n:
        raise PreconditionError(f"need 1 <= k < n, got k={k}, n={n}")
    if not 0.0 <= edge_keep <= 1.0:
        raise PreconditionError(f"edge_keep must lie in [0, 1], got {edge_keep}")
    rng = random.Random(seed)
    base = tuple(range(k + 1))
    bags: list[frozenset[int]] = [frozenset(base)]
    tree: list[tuple[int, int]] = []
    cliques: list[tuple[tuple[int, ...], int]] = [(q, 0) for q in combinations(base, k)]
    essential = {edge_key(a, b) for a, b in combinations(base, 2)}
    optional: list[tuple[int, int]] = []
    for v in range(k + 1, n):
        q, node = cliques[rng.randrange(len(cliques))]
        bags.append(frozenset(q) | {v})
        tree.append((node, len(bags) - 1))
        optional.extend(edge_key(u, v) for u in q)
        new_node = len(bags) - 1
        for drop in range(k):
            cliques.append((tuple(sorted(q[:drop] + q[drop + 1 :] + (v,))), new_node))
    kept = [e for e in optional if rng.random() < edge_keep]
    g = Graph(n, essential | set(kept))
    return g, TreeDecomposition.from_lists(bags, tree)
