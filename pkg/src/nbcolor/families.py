"""Named graphs and parametric families.

The seven small named graphs double as the forbidden-structure seeds and as
test fixtures.  The two parametric families sit exactly on the sharpness edge
of the solver hypotheses: gk(k) is a multigraph that is (3/2, -1)-sparse with
full-set multigraph potential -2, hk(k) its simple counterpart, (8/5, -1)-ish
tight with full-set simple potential -5.  Both are uncolorable and critical.
"""

from __future__ import annotations

import random

from .graph_core import FP, MULTI, SINGLE, Graph, graph, normalize


def k4() -> Graph:
    return graph(4, singles=[(u, v) for u in range(4) for v in range(u + 1, 4)])


def w5() -> Graph:
    # hub 0, rim 1..5
    rim = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]
    return graph(6, singles=[(0, i) for i in range(1, 6)] + rim)


def k222() -> Graph:
    # complete tripartite with parts {0,3}, {1,4}, {2,5}
    singles = []
    for u in range(6):
        for v in range(u + 1, 6):
            if v - u != 3:
                singles.append((u, v))
    return graph(6, singles=singles)


def m7() -> Graph:
    # five-cycle 0..4 plus two apexes: 5 over {0,1,2}, 6 over {0,3,4}
    singles = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]
    singles += [(0, 5), (1, 5), (2, 5)]
    singles += [(0, 6), (3, 6), (4, 6)]
    return graph(7, singles=singles)


def j7() -> Graph:
    # triangle 0,1,2; 3 over {0,2}, 4 over {0,1}, 5 over {1,2}; apex 6 over {3,4,5}
    singles = [(0, 1), (1, 2), (0, 2)]
    singles += [(0, 3), (2, 3), (0, 4), (1, 4), (1, 5), (2, 5)]
    singles += [(3, 6), (4, 6), (5, 6)]
    return graph(7, singles=singles)


def j8() -> Graph:
    # edge 0-1; 2,3,4 each over {0,1}; triangle 5,6,7 hanging off them
    singles = [(0, 1)]
    singles += [(0, z) for z in (2, 3, 4)] + [(1, z) for z in (2, 3, 4)]
    singles += [(5, 6), (6, 7), (5, 7)]
    singles += [(2, 5), (3, 6), (4, 7)]
    return graph(8, singles=singles)


def j12() -> Graph:
    # w1=0 w2=1, v1..v4=2..5, z1..z6=6..11
    singles = [(0, 1), (2, 3), (4, 5)]
    singles += [(2, 6), (3, 6), (2, 7), (3, 7)]    # 4-cycle v1 z1 v2 z2
    singles += [(4, 8), (5, 8), (4, 9), (5, 9)]    # 4-cycle v3 z3 v4 z4
    singles += [(6, 10), (8, 10), (7, 11), (9, 11), (10, 11)]
    singles += [(0, 2), (0, 3), (1, 4), (1, 5)]
    return graph(12, singles=singles)


_BASE = {
    "k4": k4,
    "w5": w5,
    "k222": k222,
    "m7": m7,
    "j7": j7,
    "j8": j8,
    "j12": j12,
}


def base_names() -> tuple[str, ...]:
    return tuple(sorted(_BASE))


def base_graph(name: str) -> Graph:
    try:
        return _BASE[name.lower()]()
    except KeyError:
        raise ValueError(f"unknown base graph {name!r}") from None


def gen_gk(k: int) -> Graph:
    """Chain of k parallel pairs between two parallel-pair end blocks.

    Vertices: a=0, b=1, path v1..v_{2k} = 2..2k+1, c=2k+2, d=2k+3.
    Parallel pairs: ab, cd and v_{2i-1} v_{2i} for each i; the connecting
    edges are single.  3k+7 edges counting parallel pairs twice.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    a, b, c, d = 0, 1, 2 * k + 2, 2 * k + 3
    v = lambda j: 1 + j  # v_j for j in 1..2k
    multis = [(a, b), (c, d)] + [(v(2 * i - 1), v(2 * i)) for i in range(1, k + 1)]
    singles = [(a, v(1)), (b, v(1)), (v(2 * k), c), (v(2 * k), d)]
    singles += [(v(2 * i), v(2 * i + 1)) for i in range(1, k)]
    return graph(2 * k + 4, singles=singles, multis=multis)


def multiedge_replacement(G: Graph, a: int, b: int) -> Graph:
    """Swap the parallel pair ab for the simple widget that forces exactly one
    of a, b into the independent side: new vertices x, y, z with edges ab, ax,
    ay, xy, xz, yz, zb (three vertices, seven edges counting ab)."""
    if G.kind_of(a, b) != MULTI:
        raise ValueError(f"({a}, {b}) is not a parallel pair")
    x, y, z = G.n, G.n + 1, G.n + 2
    H = G.set_kind(a, b, SINGLE).add_vertices(3)
    for u, v in ((a, x), (a, y), (x, y), (x, z), (y, z), (z, b)):
        H = H.with_edge(u, v, SINGLE)
    return H


def gen_hk(k: int) -> Graph:
    """gk(k) with every parallel pair replaced by the simple widget."""
    G = gen_gk(k)
    for u, v, kind in list(G.edges):
        if kind == MULTI:
            G = multiedge_replacement(G, u, v)
    return G


def attach_force_f(G: Graph, w: int) -> tuple[Graph, tuple[int, int]]:
    """Pin w to the forest side of every coloring: two fresh vertices joined
    to w by singles and to each other by a parallel pair."""
    y1, y2 = G.n, G.n + 1
    H = G.add_vertices(2)
    H = H.with_edge(w, y1, SINGLE).with_edge(w, y2, SINGLE).with_edge(y1, y2, MULTI)
    return H, (y1, y2)


def attach_force_i(G: Graph, w: int) -> tuple[Graph, int]:
    """Pin w to the independent side: a fresh forest-tagged vertex joined to w
    by a parallel pair."""
    z = G.n
    H = G.add_vertices(1, tags=(FP,))
    H = H.with_edge(w, z, MULTI)
    return H, z


# -- random instances for the solver suites -------------------------------


def _random_edges(rng: random.Random, n: int, target: int, multi_rate: float):
    raw = []
    pairs = set()
    tries = 0
    while len(raw) < target and tries < 20 * target:
        tries += 1
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v:
            continue
        if u > v:
            u, v = v, u
        if (u, v) in pairs:
            continue
        pairs.add((u, v))
        kind = MULTI if rng.random() < multi_rate else SINGLE
        raw.append((u, v, kind))
    return raw


def random_sparse_multigraph(rng: random.Random, n: int) -> Graph:
    """A (3/2, -1/2)-sparse multigraph with no K4 and no seven-vertex spindle,
    produced by sampling and then deleting edges until both checks pass."""
    from .forbidden import default_catalog, find_forbidden_subgraph
    from .oracle import check_sparse

    cat = default_catalog().restrict(("k4", "m7"))
    target = max(n - 1, int(1.25 * n))
    G = normalize(n, _random_edges(rng, n, target, multi_rate=0.15))
    while True:
        ok, witness = check_sparse(G, "3/2", "-1/2")
        if not ok:
            u, v, kind = rng.choice(G.edges_inside(witness))
            G = G.set_kind(u, v, SINGLE) if kind == MULTI else G.without_edge(u, v)
            continue
        hit = find_forbidden_subgraph(G, cat)
        if hit is not None:
            _, mapping = hit
            images = sorted(mapping.values())
            u, v, kind = rng.choice(G.edges_inside(images))
            G = G.set_kind(u, v, SINGLE) if kind == MULTI else G.without_edge(u, v)
            continue
        return G


def random_sparse_simple(rng: random.Random, n: int) -> Graph:
    """A (8/5, -4/5)-sparse simple graph avoiding every cataloged forbidden
    structure, by the same sample-then-repair loop."""
    from .forbidden import default_catalog, find_forbidden_subgraph
    from .oracle import check_sparse

    cat = default_catalog()
    target = max(n - 1, int(1.35 * n))
    G = normalize(n, _random_edges(rng, n, target, multi_rate=0.0))
    while True:
        ok, witness = check_sparse(G, "8/5", "-4/5")
        if not ok:
            u, v, _ = rng.choice(G.edges_inside(witness))
            G = G.without_edge(u, v)
            continue
        hit = find_forbidden_subgraph(G, cat)
        if hit is not None:
            _, mapping = hit
            images = sorted(mapping.values())
            u, v, _ = rng.choice(G.edges_inside(images))
            G = G.without_edge(u, v)
            continue
        return G
