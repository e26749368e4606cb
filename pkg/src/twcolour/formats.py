"""Text formats.  Files use 1-based vertex ids; everything in memory is 0-based.

Grammars (``c`` lines are comments everywhere):

graph (.gr)        ``p tw <n> <m>`` then m lines ``<u> <v>``
decomposition (.td) ``s td <bags> <width+1> <n>``, lines ``b <i> <v>...``,
                   then tree edges ``<i> <j>`` between bag ids
bipartite (.bip)   ``p bip <|U|> <|W|> <m>`` then m lines ``<u> <w>``;
                   U is 1..|U| and W is |U|+1..|U|+|W|
lists              one line per edge ``<u> <v> : <c1> <c2> ...``
colouring          ``e <u> <v> <c>`` per edge and ``v <u> <c>`` per vertex;
                   an optional ``c palette <K>`` line records the palette
"""

from __future__ import annotations

from collections.abc import Collection, Iterator, Mapping

from .errors import InvalidInput
from .graph import BipartiteGraph, Edge, Graph, edge_key
from .oracles import TotalColouring
from .treewidth import TreeDecomposition, _tree_violations


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip()
        if line.startswith("c"):
            continue
        if not line:
            raise InvalidInput("blank line", no)
        yield no, line.split()


def _int(tok: str, no: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise InvalidInput(f"expected an integer, got {tok!r}", no) from None


def parse_gr(text: str) -> Graph:
    header: tuple[int, int] | None = None
    seen: set[Edge] = set()
    count = 0
    for no, toks in _lines(text):
        if header is None:
            if len(toks) != 4 or toks[:2] != ["p", "tw"]:
                raise InvalidInput("malformed header, expected 'p tw <n> <m>'", no)
            header = (_int(toks[2], no), _int(toks[3], no))
            if header[0] < 0 or header[1] < 0:
                raise InvalidInput("negative count in header", no)
            continue
        if len(toks) != 2:
            raise InvalidInput("malformed edge line, expected '<u> <v>'", no)
        a, b = _int(toks[0], no), _int(toks[1], no)
        n = header[0]
        if not (1 <= a <= n and 1 <= b <= n):
            raise InvalidInput(f"vertex id out of range 1..{n}", no)
        if a == b:
            raise InvalidInput(f"loop at vertex {a}", no)
        e = edge_key(a - 1, b - 1)
        if e in seen:
            raise InvalidInput(f"duplicate edge {a} {b}", no)
        seen.add(e)
        count += 1
    if header is None:
        raise InvalidInput("missing header 'p tw <n> <m>'")
    if count != header[1]:
        raise InvalidInput(f"wrong edge count: header says {header[1]}, found {count}")
    return Graph(header[0], seen)


def write_gr(g: Graph) -> str:
    out = [f"p tw {g.n} {g.m}"]
    out.extend(f"{a + 1} {b + 1}" for a, b in g.edges)
    return "\n".join(out) + "\n"


def parse_td(text: str) -> TreeDecomposition:
    header: tuple[int, int, int] | None = None
    bags: dict[int, frozenset[int]] = {}
    tree: list[tuple[int, int]] = []
    for no, toks in _lines(text):
        if header is None:
            if len(toks) != 5 or toks[:2] != ["s", "td"]:
                raise InvalidInput("malformed header, expected 's td <bags> <width+1> <n>'", no)
            header = (_int(toks[2], no), _int(toks[3], no), _int(toks[4], no))
            continue
        nb, size, n = header
        if toks[0] == "b":
            if len(toks) < 2:
                raise InvalidInput("bag line without an id", no)
            i = _int(toks[1], no)
            if not 1 <= i <= nb:
                raise InvalidInput(f"bag id {i} out of range 1..{nb}", no)
            if i - 1 in bags:
                raise InvalidInput(f"bag {i} listed twice", no)
            vs = [_int(t, no) for t in toks[2:]]
            if any(not 1 <= v <= n for v in vs):
                raise InvalidInput(f"bag {i} holds a vertex outside 1..{n}", no)
            if len(set(vs)) != len(vs):
                raise InvalidInput(f"bag {i} repeats a vertex", no)
            if len(vs) > size:
                raise InvalidInput(f"bag {i} has {len(vs)} vertices, above declared width+1 = {size}", no)
            bags[i - 1] = frozenset(v - 1 for v in vs)
            continue
        if len(toks) != 2:
            raise InvalidInput("malformed tree edge, expected '<i> <j>'", no)
        i, j = _int(toks[0], no), _int(toks[1], no)
        if not (1 <= i <= nb and 1 <= j <= nb):
            raise InvalidInput(f"tree edge between unknown bags {i} {j}", no)
        tree.append((i - 1, j - 1))
    if header is None:
        raise InvalidInput("missing header 's td <bags> <width+1> <n>'")
    missing = [i + 1 for i in range(header[0]) if i not in bags]
    if missing:
        raise InvalidInput(f"bags {missing} are never listed")
    td = TreeDecomposition.from_lists([bags[i] for i in range(header[0])], tree)
    bad = _tree_violations(td)
    if bad:
        raise InvalidInput(f"not a tree: {bad[0].message}")
    return td


def write_td(td: TreeDecomposition, n: int) -> str:
    out = [f"s td {td.nodes} {td.width + 1} {n}"]
    for i, bag in enumerate(td.bags):
        out.append(" ".join(["b", str(i + 1), *(str(v + 1) for v in sorted(bag))]))
    out.extend(f"{a + 1} {b + 1}" for a, b in td.tree_edges)
    return "\n".join(out) + "\n"


def parse_bipartite(text: str) -> BipartiteGraph:
    header: tuple[int, int, int] | None = None
    pairs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for no, toks in _lines(text):
        if header is None:
            if len(toks) != 5 or toks[:2] != ["p", "bip"]:
                raise InvalidInput("malformed header, expected 'p bip <|U|> <|W|> <m>'", no)
            header = (_int(toks[2], no), _int(toks[3], no), _int(toks[4], no))
            continue
        if len(toks) != 2:
            raise InvalidInput("malformed edge line, expected '<u> <w>'", no)
        nu, nw, _ = header
        u, w = _int(toks[0], no), _int(toks[1], no)
        if not 1 <= u <= nu:
            raise InvalidInput(f"U-vertex {u} out of range 1..{nu}", no)
        if not nu < w <= nu + nw:
            raise InvalidInput(f"W-vertex {w} out of range {nu + 1}..{nu + nw}", no)
        if (u, w) in seen:
            raise InvalidInput(f"duplicate edge {u} {w}", no)
        seen.add((u, w))
        pairs.append((u - 1, w - 1))
    if header is None:
        raise InvalidInput("missing header 'p bip <|U|> <|W|> <m>'")
    if len(pairs) != header[2]:
        raise InvalidInput(f"wrong edge count: header says {header[2]}, found {len(pairs)}")
    nu, nw, _ = header
    return BipartiteGraph(range(nu), range(nu, nu + nw), pairs)


def write_bipartite(h: BipartiteGraph) -> str:
    ids = {v: i + 1 for i, v in enumerate((*h.side_u, *h.side_w))}
    out = [f"p bip {len(h.side_u)} {len(h.side_w)} {len(h.edges)}"]
    rows = sorted((ids[u], ids[w]) for u, w in map(h.split, h.edges))
    out.extend(f"{u} {w}" for u, w in rows)
    return "\n".join(out) + "\n"


def parse_lists(text: str, g: Graph) -> dict[Edge, frozenset[int]]:
    lists: dict[Edge, frozenset[int]] = {}
    edges = set(g.edges)
    for no, toks in _lines(text):
        if len(toks) < 3 or toks[2] != ":":
            raise InvalidInput("malformed list line, expected '<u> <v> : <c>...'", no)
        a, b = _int(toks[0], no), _int(toks[1], no)
        e = edge_key(a - 1, b - 1)
        if e not in edges:
            raise InvalidInput(f"unknown edge {a} {b}", no)
        if e in lists:
            raise InvalidInput(f"duplicate list for edge {a} {b}", no)
        colours = [_int(t, no) for t in toks[3:]]
        if not colours:
            raise InvalidInput(f"empty list for edge {a} {b}", no)
        if any(c < 1 for c in colours):
            raise InvalidInput("colours must be positive integers", no)
        lists[e] = frozenset(colours)
    for a, b in g.edges:
        if (a, b) not in lists:
            raise InvalidInput(f"missing list for edge {a + 1} {b + 1}")
    return lists


def write_lists(lists: Mapping[Edge, Collection[int]]) -> str:
    return "".join(
        f"{a + 1} {b + 1} : {' '.join(str(c) for c in sorted(lists[(a, b)]))}\n"
        for a, b in sorted(lists)
    )


def write_edge_colouring(colouring: Mapping[Edge, int]) -> str:
    return "".join(f"e {a + 1} {b + 1} {colouring[(a, b)]}\n" for a, b in sorted(colouring))


def write_total_colouring(tc: TotalColouring) -> str:
    out = [f"c palette {tc.palette}"]
    out.extend(f"v {v + 1} {c}" for v, c in sorted(tc.vertex_colours.items()))
    out.extend(f"e {a + 1} {b + 1} {c}" for (a, b), c in sorted(tc.edge_colours.items()))
    return "\n".join(out) + "\n"


def parse_colouring(text: str) -> TotalColouring:
    """Read edge and vertex colour lines; ``palette`` is 0 unless recorded."""
    tc = TotalColouring()
    for no, raw in enumerate(text.splitlines(), 1):
        toks = raw.split()
        if not toks:
            raise InvalidInput("blank line", no)
        if toks[0] == "c":
            if len(toks) == 3 and toks[1] == "palette":
                tc.palette = _int(toks[2], no)
            continue
        if toks[0] == "e" and len(toks) == 4:
            a, b, c = (_int(t, no) for t in toks[1:])
            if a < 1 or b < 1 or a == b:
                raise InvalidInput(f"bad edge {a} {b}", no)
            e = edge_key(a - 1, b - 1)
            if e in tc.edge_colours:
                raise InvalidInput(f"edge {a} {b} coloured twice", no)
            tc.edge_colours[e] = c
        elif toks[0] == "v" and len(toks) == 3:
            v, c = _int(toks[1], no), _int(toks[2], no)
            if v < 1:
                raise InvalidInput(f"bad vertex {v}", no)
            if v - 1 in tc.vertex_colours:
                raise InvalidInput(f"vertex {v} coloured twice", no)
            tc.vertex_colours[v - 1] = c
        else:
            raise InvalidInput("expected 'e <u> <v> <c>' or 'v <u> <c>'", no)
    return tc
