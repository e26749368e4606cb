from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twcolour.errors import PreconditionError
from twcolour.generators import gen_partial_ktree
from twcolour.graph import build_graph
from twcolour.treewidth import (
    TreeDecomposition,
    extract_witness,
    min_degree_decompose,
    root_decomposition,
    validate_td,
)

from conftest import independent_witness_check, small_graphs

P3 = build_graph(3, [(0, 1), (1, 2)])
P3_TD = TreeDecomposition.from_lists([{0, 1}, {1, 2}], [(0, 1)])


def rules(report):
    return {v.rule for v in report}


def test_p3_decomposition_is_valid():
    assert validate_td(P3, P3_TD) == []
    assert P3_TD.width == 1


def test_uncovered_edge_is_reported():
    g = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    report = validate_td(g, P3_TD)
    assert rules(report) == {"edge-cover"}
    assert "not covered" in str(report[0])


def test_non_contiguous_vertex_is_reported():
    g = build_graph(2, [])
    td = TreeDecomposition.from_lists([{0}, {1}, {0}], [(0, 1), (1, 2)])
    report = validate_td(g, td)
    assert [str(v) for v in report if v.rule == "subtree"][0].startswith("subtree: vertex 0 non-contiguous")


@pytest.mark.parametrize(
    "bags, tree, rule",
    [
        ([{0, 1}, {1, 2}], [], "tree"),
        ([{0, 1}, {1, 2}, {2}], [(0, 1), (1, 2), (0, 2)], "tree"),
        ([{0, 1}], [], "vertex-cover"),
        ([{0, 1}, {1, 2, 7}], [(0, 1)], "range"),
    ],
)
def test_structural_violations(bags, tree, rule):
    assert rule in rules(validate_td(P3, TreeDecomposition.from_lists(bags, tree)))


def test_min_degree_on_tree_and_clique():
    tree = build_graph(6, [(0, 1), (0, 2), (1, 3), (1, 4), (4, 5)])
    td = min_degree_decompose(tree)
    assert validate_td(tree, td) == [] and td.width == 1
    k4 = build_graph(4, [(a, b) for a in range(4) for b in range(a + 1, 4)])
    td = min_degree_decompose(k4)
    assert validate_td(k4, td) == [] and td.width == 3


@pytest.mark.parametrize("seed", range(10))
def test_min_degree_recovers_full_two_trees(seed):
    g, _ = gen_partial_ktree(2, 20, 1.0, seed)
    td = min_degree_decompose(g)
    assert validate_td(g, td) == []
    assert td.width == 2


def test_min_degree_needs_a_vertex():
    with pytest.raises(PreconditionError):
        min_degree_decompose(build_graph(0, []))


@given(small_graphs())
def test_min_degree_always_valid_and_deterministic(g):
    td = min_degree_decompose(g)
    assert validate_td(g, td) == []
    assert min_degree_decompose(g) == td


def test_rooting_single_node_and_path():
    rd = root_decomposition(TreeDecomposition.from_lists([{0, 1, 2}], []), 0)
    assert rd.height == (0,) and set(rd.home_node.values()) == {0}
    td = TreeDecomposition.from_lists([{0}, {0, 1}, {1}], [(0, 1), (1, 2)])
    assert root_decomposition(td, 0).height == (0, 1, 2)
    assert root_decomposition(td, 2).home_node == {0: 1, 1: 2}


@pytest.mark.parametrize("root", [-1, 2])
def test_rooting_rejects_bad_node(root):
    with pytest.raises(PreconditionError):
        root_decomposition(P3_TD, root)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(0, 10_000), st.floats(0.3, 1.0))
def test_home_nodes_of_an_edge_are_comparable(k, seed, keep):
    g, td = gen_partial_ktree(k, k + 12, keep, seed)
    rd = root_decomposition(td, 0)
    for v in g.vertices():
        assert v in rd.bag(rd.home_node[v])
    for a, b in g.edges:
        ta, tb = rd.home_node[a], rd.home_node[b]
        assert rd.is_ancestor(ta, tb) or rd.is_ancestor(tb, ta)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(0, 10_000), st.floats(0.3, 1.0), st.data())
def test_decomposition_survives_deletions(k, seed, keep, data):
    g, td = gen_partial_ktree(k, k + 10, keep, seed)
    gone = data.draw(st.lists(st.sampled_from(g.edges), unique=True, max_size=6))
    assert validate_td(g.without_edges(gone), td) == []
    vs = set(data.draw(st.lists(st.sampled_from(range(g.n)), unique=True, max_size=4)))
    keep_ids = {v: i for i, v in enumerate(v for v in range(g.n) if v not in vs)}
    h = build_graph(len(keep_ids), [(keep_ids[a], keep_ids[b]) for a, b in g.isolate(vs).edges])
    pruned = td.without_vertices(vs)
    relabelled = TreeDecomposition.from_lists(
        [{keep_ids[v] for v in bag} for bag in pruned.bags], pruned.tree_edges
    )
    assert validate_td(h, relabelled) == []


def test_star_witness():
    g = build_graph(9, [(0, i) for i in range(1, 9)])
    td = TreeDecomposition.from_lists([{0, i} for i in range(1, 9)], [(0, i) for i in range(1, 8)])
    wit = extract_witness(g, root_decomposition(td, 0), 1, 7)
    assert wit.x == 0
    assert independent_witness_check(g, wit.U, wit.W, wit.x, 1, 7) == []
    assert len(wit.W) >= 7


def test_p3_witness():
    wit = extract_witness(P3, root_decomposition(P3_TD, 0), 1, 1)
    assert wit.x == 1 and len(wit.W) >= 1


@pytest.mark.parametrize(
    "g, td, k, delta0, fragment",
    [
        (build_graph(3, []), TreeDecomposition.from_lists([{0, 1, 2}], []), 2, 3, "no edges"),
        (P3, P3_TD, 1, 0, "delta0"),
        (P3, P3_TD, 1, 2, "degree sum"),
        (build_graph(3, [(0, 1), (0, 2), (1, 2)]), TreeDecomposition.from_lists([{0, 1, 2}], []), 1, 1, "width"),
    ],
)
def test_witness_preconditions(g, td, k, delta0, fragment):
    with pytest.raises(PreconditionError, match=fragment):
        extract_witness(g, root_decomposition(td, 0), k, delta0)


def qualifying(k, seed):
    g, td = gen_partial_ktree(k, 10 + 5 * k, 0.85, seed)
    delta0 = max(2 * k - 1, min(g.degree(a) + g.degree(b) for a, b in g.edges) - 2)
    return g, td, delta0


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(0, 100_000))
def test_witness_invariants_and_determinism(k, seed):
    g, td, delta0 = qualifying(k, seed)
    if any(g.degree(a) + g.degree(b) < delta0 + 2 for a, b in g.edges):
        return
    rd = root_decomposition(td, 0)
    wit = extract_witness(g, rd, k, delta0)
    assert independent_witness_check(g, wit.U, wit.W, wit.x, k, delta0) == []
    assert extract_witness(g, rd, k, delta0) == wit
