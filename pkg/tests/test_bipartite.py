from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twcolour.bipartite import (
    colour_choosable_extension,
    find_choosable_subset,
    find_lstar_colouring,
    is_choosable_via_lstar,
    kernel_for_colour,
    kernel_list_colour,
    kernel_slack,
    lstar_lists,
    search_list_colouring,
    subset_graph,
)
from twcolour.errors import PreconditionError, SearchBudgetExceeded
from twcolour.generators import gen_gi
from twcolour.graph import BipartiteGraph
from twcolour.oracles import oracle_choosable, validate_edge_colouring

from conftest import bipartite_graphs, dominated_independently


def star(d):
    return BipartiteGraph([0], range(1, d + 1), [(0, w) for w in range(1, d + 1)])


def kn(n):
    return BipartiteGraph(range(n), range(n, 2 * n), [(u, n + w) for u in range(n) for w in range(n)])


def is_lstar(h, col):
    return validate_edge_colouring(h, col) == [] and all(col[e] <= h.degree(h.split(e)[0]) for e in h.edges)


def test_lstar_lists_examples():
    assert lstar_lists(star(1)) == {(0, 1): frozenset({1})}
    assert set(lstar_lists(star(3)).values()) == {frozenset({1, 2, 3})}
    g1 = gen_gi(1)
    assert set(lstar_lists(g1).values()) == {frozenset({1})}
    g3 = gen_gi(3)
    lists = lstar_lists(g3)
    for e in g3.edges:
        assert lists[e] == frozenset(range(1, g3.degree(g3.split(e)[0]) + 1))


def test_single_edge_lstar_colouring():
    assert find_lstar_colouring(star(1)) == {(0, 1): 1}


@pytest.mark.parametrize("i", range(2, 7))
def test_gi_lstar_colourable(i):
    h = gen_gi(i)
    col = find_lstar_colouring(h)
    assert col is not None and is_lstar(h, col)
    assert is_choosable_via_lstar(h)


def test_g1_is_not_choosable():
    assert not is_choosable_via_lstar(gen_gi(1))
    assert not oracle_choosable(gen_gi(1))


def test_search_budget_is_distinct_from_failure():
    with pytest.raises(SearchBudgetExceeded) as info:
        find_lstar_colouring(kn(3), budget=2)
    assert info.value.budget == 2
    assert search_list_colouring([(0, 1), (1, 2)], {(0, 1): {1}, (1, 2): {1}}) is None


def test_lstar_search_is_deterministic():
    h = gen_gi(5)
    assert find_lstar_colouring(h) == find_lstar_colouring(h)


@settings(max_examples=80, deadline=None)
@given(bipartite_graphs(), st.data())
def test_kernel_is_dominating_matching(h, data):
    if not h.edges:
        return
    order = search_list_colouring(h.edges, {e: range(1, h.max_degree + 1) for e in h.edges})
    cands = data.draw(st.lists(st.sampled_from(h.edges), unique=True, min_size=1))
    kernel = kernel_for_colour(h, order, cands)
    assert kernel <= set(cands)
    ends = [v for e in kernel for v in e]
    assert len(ends) == len(set(ends))
    for e in cands:
        if e not in kernel:
            assert dominated_independently(h, order, e, kernel)


@settings(max_examples=80, deadline=None)
@given(bipartite_graphs(), st.integers(0, 2**32))
def test_lstar_order_leaves_slack(h, seed):
    order = find_lstar_colouring(h)
    if order is None:
        return
    rng = random.Random(seed)
    lists = {e: frozenset(rng.sample(range(1, 9), h.degree(h.split(e)[0]))) for e in h.edges}
    for e in h.edges:
        u, w = h.split(e)
        above = sum(order[f] > order[e] for f in h.incident(u))
        below = sum(order[f] < order[e] for f in h.incident(w))
        assert above <= h.degree(u) - order[e] and below <= order[e] - 1
    assert kernel_slack(h, lists, order) == []
    col = kernel_list_colour(h, lists, order)
    assert validate_edge_colouring(h, col, lists) == []


@pytest.mark.parametrize("n", range(1, 4))
def test_galvin_on_complete_bipartite(n):
    h = kn(n)
    order = find_lstar_colouring(h)
    rng = random.Random(n)
    for _ in range(20):
        lists = {e: frozenset(rng.sample(range(1, 2 * n + 1), n)) for e in h.edges}
        assert validate_edge_colouring(h, kernel_list_colour(h, lists, order), lists) == []


def test_kernel_colour_preconditions():
    h = kn(2)
    lists = {e: {1, 2} for e in h.edges}
    with pytest.raises(PreconditionError, match="not proper"):
        kernel_list_colour(h, lists, {e: 1 for e in h.edges})
    order = find_lstar_colouring(h)
    with pytest.raises(PreconditionError, match="list size"):
        kernel_list_colour(h, {e: {1} for e in h.edges}, order)
    with pytest.raises(PreconditionError, match="misses"):
        kernel_list_colour(h, lists, {})


@pytest.mark.parametrize("i", range(1, 9))
def test_gi_rejected_by_choosable_subset(i):
    with pytest.raises(PreconditionError, match="2\\|W\\|"):
        find_choosable_subset(gen_gi(i))


def replay(h, cert):
    us, ws = set(h.side_u), set(h.side_w)
    for v, gone in cert.removed:
        assert v in us
        assert len(h.neighbours(v) & ws) <= len(us) - 1
        assert set(gone) == h.neighbours(v) & ws
        us.discard(v)
        ws.difference_update(gone)
    return us, ws


@settings(max_examples=100, deadline=None)
@given(bipartite_graphs(max_u=4, max_w=8))
def test_choosable_subset_certificate(h):
    nu, nw = len(h.side_u), len(h.side_w)
    if not 2 * nw > nu * (nu - 1):
        with pytest.raises(PreconditionError):
            find_choosable_subset(h)
        return
    cert = find_choosable_subset(h)
    us, ws = replay(h, cert)
    assert us == cert.terminal_U and ws == cert.terminal_W
    assert cert.C and cert.C <= ws
    if not cert.base_case:
        for u in us:
            assert len(h.neighbours(u) & ws) >= len(us)
    sub = subset_graph(h, cert.C)
    assert is_choosable_via_lstar(sub)
    if len(sub.edges) <= 4:
        assert oracle_choosable(sub)


def test_choosable_subset_examples():
    cert = find_choosable_subset(star(3))
    assert cert.base_case and cert.C == frozenset({1})
    h = BipartiteGraph([0, 1], [2, 3], [(0, 2), (0, 3), (1, 2), (1, 3)])
    cert = find_choosable_subset(h)
    assert not cert.base_case and cert.C == frozenset({2, 3})


@settings(max_examples=60, deadline=None)
@given(bipartite_graphs(max_u=4, max_w=8), st.integers(0, 2**32))
def test_extension_colours_from_residual_lists(h, seed):
    nu, nw = len(h.side_u), len(h.side_w)
    if not 2 * nw > nu * (nu - 1):
        return
    sub = subset_graph(h, find_choosable_subset(h).C)
    rng = random.Random(seed)
    residual = {e: frozenset(rng.sample(range(1, 12), sub.degree(sub.split(e)[0]))) for e in sub.edges}
    col = colour_choosable_extension(sub, residual)
    assert validate_edge_colouring(sub, col, residual) == []


def test_extension_rejects_short_list():
    h = kn(2)
    residual = {e: {1, 2} for e in h.edges}
    residual[(0, 2)] = {1}
    with pytest.raises(PreconditionError, match=r"\(0, 2\)"):
        colour_choosable_extension(h, residual)
