"""Recursive coloring drivers for multigraphs and simple graphs.

Each driver screens its input (potential floor first, then forbidden
structures) and then runs a worker that either produces a validated coloring,
or reports why it cannot:

  Colored            a coloring that passed validate_coloring
  CertLowPotential   a nonempty subset whose potential beats the hypothesis floor
  CertForbidden      an embedded catalog member
  Diagnostic         a structural dead end with the step that hit it

Workers assume the screened invariants (potential floor on every nonempty
subset, no catalog member) and re-establish them for every recursive call by
construction; a breach at any point turns into a Diagnostic, never a wrong
answer.  Every coloring is validated before it is returned.

The per-level subset scan is exact and cheap: one max-flow per vertex in the
worst case (force v inside, ban its cyclic successor; every proper nonempty
subset has such a boundary pair), and usually just one flow per "dirty" vertex
group recorded by the previous reduction, because a reduction only changes the
potential of subsets that swallow the vertices it touched.

Completeness of the simple driver is relative to the supplied catalog: a
cycle whose attachment pairs are all linked through catalog members is
reported as a Diagnostic rather than resolved, since the full forbidden
family is not constructively enumerable.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .forbidden import Catalog, are_linked, default_catalog, find_forbidden_subgraph
from .graph_core import (
    FP,
    GADGET,
    IP,
    MULTI,
    SINGLE,
    UNCOLORED,
    Coloring,
    ContractionRejected,
    F_SIDE,
    Graph,
    GraphError,
    I_SIDE,
    contract_colored_subset,
    induced_subgraph,
    normalize,
    validate_coloring,
)
from .min_potential import LARGEST, min_potential_constrained, min_potential_pinned
from .oracle import DEFAULT_THRESHOLD, brute_nb_color
from .potential import (
    KindError,
    hypergraph_for_rho_m,
    hypergraph_for_rho_s,
    rho_m,
    rho_s,
)

MULTI_FLOOR = -1
SIMPLE_FLOOR = -4
_MULTI_BAND = 1   # tight subsets up to this value are actionable in-band
_SIMPLE_BAND = 3


# -- outcomes --------------------------------------------------------------


@dataclass(frozen=True)
class Colored:
    coloring: Coloring


@dataclass(frozen=True)
class CertLowPotential:
    subset: frozenset[int]
    rho: int
    threshold: int


@dataclass(frozen=True)
class CertForbidden:
    name: str
    mapping: dict[int, int]


@dataclass(frozen=True)
class Diagnostic:
    step: str
    message: str


Outcome = Colored | CertLowPotential | CertForbidden | Diagnostic


@dataclass(frozen=True)
class Blocked:
    """Why a cycle extension cannot be completed."""

    reason: str


@dataclass
class _Ctx:
    catalog: Catalog
    brute_threshold: int
    trace: list[str] | None

    def note(self, depth: int, msg: str) -> None:
        if self.trace is not None:
            self.trace.append(f"{'  ' * depth}{msg}")


# -- small graph surgery helpers ------------------------------------------


def _delete(G: Graph, drop) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph without `drop`, plus the old-to-new id map."""
    drop = set(drop)
    keep = [v for v in range(G.n) if v not in drop]
    sub, table = induced_subgraph(G, keep)
    return sub, {orig: i for i, orig in enumerate(table)}


def _identify(G: Graph, keep: int, merge: int) -> tuple[Graph, dict[int, int]]:
    """Merge vertex `merge` into `keep`; they must be distinct non-neighbors
    with equal precolor tags.  Parallel collisions collapse by the normalize
    rules.  The map sends every old id (merge included) to its new id."""
    if keep == merge:
        raise GraphError("cannot identify a vertex with itself")
    if G.kind_of(keep, merge) is not None:
        raise GraphError("cannot identify adjacent vertices")
    if G.precolor[keep] != G.precolor[merge]:
        raise GraphError("cannot identify differently tagged vertices")
    idmap = {}
    for v in range(G.n):
        if v != merge:
            idmap[v] = v - (1 if v > merge else 0)
    raw = []
    for u, v, kind in G.edges:
        u2 = keep if u == merge else u
        v2 = keep if v == merge else v
        raw.append((idmap[u2], idmap[v2], kind))
    pre = [G.precolor[v] for v in range(G.n) if v != merge]
    child = normalize(G.n - 1, raw, pre)
    idmap[merge] = idmap[keep]
    return child, idmap


def _lift_deleted(G: Graph, c_child: Coloring, idmap: dict[int, int], extra: dict[int, str]) -> Coloring:
    out = []
    for u in range(G.n):
        if u in extra:
            out.append(extra[u])
        else:
            out.append(c_child.assignment[idmap[u]])
    return Coloring(tuple(out))


def _opp(side: str) -> str:
    return F_SIDE if side == I_SIDE else I_SIDE


def _ok(G: Graph, col: Coloring, step: str) -> Outcome:
    bad = validate_coloring(G, col)
    if bad is not None:
        return Diagnostic(step, f"lifted coloring violates {bad.rule} at {bad.witness}")
    return Colored(col)


def _measure(G: Graph) -> int:
    return G.n + len(G.edges)


# -- the per-level subset scan --------------------------------------------


def _exact_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise AssertionError(f"non-integral potential {x}")
    return int(x)


def _scan(H, n: int, floor: int | None, dirty, band_top: int) -> tuple[int, frozenset[int] | None]:
    """Exact minimum of rho over subsets with 2 <= |X| <= n-1.

    Returns (m, W): an in-band witness (m <= band_top, W its exact minimum
    set, largest among surfaced minimizers) or (m, None) with m a certified
    floor above the band.  `floor`/`dirty` shortcut the work: every qualifying
    subset that contains no dirty group is known to sit at `floor` or above,
    so one forced flow per group settles the rest.  A forced flow that
    surfaces the full vertex set says nothing about proper subsets, so the
    scan falls back to the boundary-pair sweep: force v, ban its cyclic
    successor; every proper nonempty subset has such a pair.

    A singleton winner enters as the bound value+1: by the largest-cardinality
    tie-break no larger set ties it, and singleton potentials keep that bound
    out of every band this module uses.
    """
    if n < 3:
        return band_top + 1, None
    results: list[tuple[int, frozenset[int] | None]] = []
    use_full = floor is None or floor <= band_top
    if not use_full:
        results.append((floor, None))
        for group in dirty:
            W, r = min_potential_pinned(H, force=group, extremal=LARGEST)
            if len(W) == n:
                use_full = True
                break
            val = _exact_int(r)
            if len(W) >= 2:
                results.append((val, W))
            else:
                results.append((val + 1, None))
    if use_full:
        results = []
        for v in range(n):
            W, r = min_potential_pinned(H, force=[v], ban=[(v + 1) % n], extremal=LARGEST)
            val = _exact_int(r)
            if len(W) >= 2:
                results.append((val, W))
            else:
                results.append((val + 1, None))
    m = min(val for val, _ in results)
    if m > band_top:
        return m, None
    surfaced = [(val, W) for val, W in results if W is not None and val == m]
    if not surfaced:
        return m, None
    best = min(surfaced, key=lambda t: (-len(t[1]), tuple(sorted(t[1]))))
    return m, best[1]


def _closure_multi(G: Graph, W) -> frozenset[int]:
    """Absorb outside vertices carrying edge multiplicity two or more into W;
    each absorption strictly lowers rho_m.  Stops before swallowing the whole
    graph."""
    W = set(W)
    n = G.n
    grown = True
    while grown and len(W) + 1 <= n - 1:
        grown = False
        for u in range(n):
            if u in W:
                continue
            mult = 0
            for x in G.adj[u]:
                if x in W:
                    mult += 2 if G.kind_of(u, x) == MULTI else 1
            if mult >= 2:
                W.add(u)
                grown = True
                break
    return frozenset(W)


def _closure_simple(G: Graph, W) -> frozenset[int]:
    """Absorb outside vertices with two plain edges or any gadget into W;
    each absorption strictly lowers rho_s.  Capped at n-2 vertices so the
    simple contraction size bound stays available."""
    W = set(W)
    n = G.n
    grown = True
    while grown and len(W) + 1 <= n - 2:
        grown = False
        for u in range(n):
            if u in W:
                continue
            singles = gadgets = 0
            for x in G.adj[u]:
                if x in W:
                    if G.kind_of(u, x) == GADGET:
                        gadgets += 1
                    else:
                        singles += 1
            if gadgets >= 1 or singles >= 2:
                W.add(u)
                grown = True
                break
    return frozenset(W)


# -- public extension operations ------------------------------------------


def tree_split(T: Graph, s_in, s_out) -> frozenset[int]:
    """Independent set S of a tree whose non-leaves all have degree three,
    with S_in inside S, S_out outside it, and every component of T - S
    containing at most one leaf of T.  Requires |S_out| odd."""
    adj = {v: set(T.adj[v]) for v in range(T.n)}
    if len(T.edges) != T.n - 1 or len(T.components()) != 1:
        raise ValueError("tree_split expects a tree")
    return frozenset(_tree_split_adj(adj, set(s_in), set(s_out)))


def _tree_split_adj(adj: dict, s_in: set, s_out: set) -> set:
    leaves = {v for v, nb in adj.items() if len(nb) <= 1}
    for v, nb in adj.items():
        if v not in leaves and len(nb) != 3:
            raise ValueError("non-leaf vertices must have degree three")
    if (s_in | s_out) != leaves or (s_in & s_out):
        raise ValueError("leaf partition does not match the leaves")
    if len(s_out) % 2 == 0:
        raise ValueError("the outside part must have odd size")
    k = len(leaves)
    if k == 1:
        return set()
    if k == 2:
        return set(s_in)
    if k == 3:
        center = next(v for v, nb in adj.items() if len(nb) == 3)
        if len(s_out) == 3:
            return {center}
        return set(s_in)
    # some non-leaf has exactly two leaf neighbors
    v = min(
        v
        for v, nb in adj.items()
        if v not in leaves and sum(1 for u in nb if u in leaves) == 2
    )
    w1, w2 = sorted(u for u in adj[v] if u in leaves)
    both_out = (w1 in s_out) + (w2 in s_out)
    if both_out == 2:
        sub = {u: set(nb) for u, nb in adj.items() if u not in (w1, w2)}
        sub[v] -= {w1, w2}
        return _tree_split_adj(sub, s_in | {v}, s_out - {w1, w2})
    if both_out == 1:
        out_leaf = w1 if w1 in s_out else w2
        in_leaf = w2 if out_leaf == w1 else w1
        sub = {u: set(nb) for u, nb in adj.items() if u not in (w1, w2)}
        sub[v] -= {w1, w2}
        S = _tree_split_adj(sub, s_in - {in_leaf}, (s_out - {out_leaf}) | {v})
        return S | {in_leaf}
    # both leaves forced inside: drop them with v and suppress v's third leg
    x = next(u for u in adj[v] if u not in (w1, w2))
    sub = {u: set(nb) for u, nb in adj.items() if u not in (v, w1, w2)}
    sub[x] -= {v}
    # x was interior (degree three) and loses only v, so it is suppressed
    a, b = sorted(sub[x])
    del sub[x]
    sub[a] = (sub[a] - {x}) | {b}
    sub[b] = (sub[b] - {x}) | {a}
    S = _tree_split_adj(sub, s_in - {w1, w2}, set(s_out))
    return S | {w1, w2}


def extend_to_forest(G: Graph, partial: dict[int, str], components) -> Coloring | None:
    """Extend a coloring of everything outside `components` over the trees.

    Every tree vertex must have three plain neighbors in G.  A tree extends
    when it has an odd number of edges to F-colored vertices, or a leaf whose
    outside neighbors are both colored I; otherwise the whole call returns
    None.  The construction keeps at most one F-edge per F-component of each
    tree, so gluing onto the fixed F-part never closes a cycle."""
    assign = dict(partial)
    for comp in components:
        comp = sorted(comp)
        if not _extend_tree(G, assign, comp):
            return None
    return Coloring(tuple(assign[v] for v in range(G.n)))


def _extend_tree(G: Graph, assign: dict[int, str], comp: list[int]) -> bool:
    cset = set(comp)
    ext: dict[int, list[int]] = {}
    tadj: dict[int, list[int]] = {}
    for v in comp:
        if G.nsize(v) != 3 or any(G.kind_of(v, u) != SINGLE for u in G.adj[v]):
            raise ValueError("tree vertices must have three plain neighbors")
        ext[v] = [u for u in G.adj[v] if u not in cset]
        tadj[v] = [u for u in G.adj[v] if u in cset]
    if len(comp) == 1:
        v = comp[0]
        f_ext = sum(1 for u in ext[v] if assign[u] == F_SIDE)
        if f_ext == 3:
            assign[v] = I_SIDE
        elif f_ext == 0:
            assign[v] = F_SIDE
        elif f_ext == 1:
            assign[v] = F_SIDE
        else:
            return False
        return True

    aux = {v: set(tadj[v]) for v in comp}
    s_in: set = set()
    s_out: set = set()
    flex: list[int] = []
    for v in comp:
        sides = [assign[u] for u in ext[v]]
        if len(tadj[v]) == 2:
            if sides[0] == I_SIDE:
                # forced into F: suppress from the auxiliary tree
                a, b = sorted(aux[v])
                aux[a].discard(v)
                aux[b].discard(v)
                aux[a].add(b)
                aux[b].add(a)
                del aux[v]
            else:
                # pendant marker for the outside F-edge; negative ids keep the
                # auxiliary vertex set totally ordered
                stub = -(v + 1)
                aux[v].add(stub)
                aux[stub] = {v}
                s_out.add(stub)
        elif len(tadj[v]) == 1:
            f_ext = sides.count(F_SIDE)
            if f_ext == 2:
                s_in.add(v)
            elif f_ext == 1:
                s_out.add(v)
            else:
                flex.append(v)
    if len(s_out) % 2 == 0:
        if not flex:
            return False
        s_out.add(flex[0])
        s_in.update(flex[1:])
    else:
        s_in.update(flex)
    S = _tree_split_adj(aux, s_in, s_out)
    flexset = set(flex)
    for v in comp:
        if v in S and v not in flexset:
            assign[v] = I_SIDE
        else:
            assign[v] = F_SIDE
    return True


def extend_over_induced_cycle(G: Graph, C, partial: dict[int, str]) -> Coloring | Blocked:
    """Color an induced cycle of degree-three vertices given the rest.

    partial covers every vertex off the cycle.  Blocked reasons: every
    attachment sits in I ("all-attachments-I"), or the cycle is odd with all
    attachments in one F-component ("odd-single-F-component")."""
    C = list(C)
    k = len(C)
    cset = set(C)
    if k < 3:
        raise ValueError("a cycle needs at least three vertices")
    zs = []
    for i, x in enumerate(C):
        if G.nsize(x) != 3:
            raise ValueError(f"cycle vertex {x} does not have three neighbors")
        for j, y in enumerate(C):
            if abs(i - j) not in (0, 1, k - 1) and G.kind_of(x, y) is not None:
                raise ValueError("cycle has a chord")
        out = [u for u in G.adj[x] if u not in cset]
        if len(out) != 1:
            raise ValueError(f"cycle vertex {x} needs exactly one outside neighbor")
        zs.append(out[0])
    sides = [partial[z] for z in zs]
    assign = dict(partial)

    if I_SIDE in sides and F_SIDE in sides:
        # rotate so the last attachment is I and the first is F
        shift = None
        for j in range(k):
            if sides[j] == I_SIDE and sides[(j + 1) % k] == F_SIDE:
                shift = (j + 1) % k
                break
        C2 = C[shift:] + C[:shift]
        z2 = zs[shift:] + zs[:shift]
        picked = {C2[0]}
        assign[C2[0]] = I_SIDE
        for j in range(1, k):
            x = C2[j]
            if C2[j - 1] not in picked and assign[z2[j]] != I_SIDE:
                picked.add(x)
                assign[x] = I_SIDE
            else:
                assign[x] = F_SIDE
        return Coloring(tuple(assign[v] for v in range(G.n)))

    if F_SIDE not in sides:
        return Blocked("all-attachments-I")

    # every attachment is in F
    if k % 2 == 0:
        for j, x in enumerate(C):
            assign[x] = I_SIDE if j % 2 == 0 else F_SIDE
        return Coloring(tuple(assign[v] for v in range(G.n)))

    comp = _f_components(G, assign, cset)
    shift = None
    for j in range(k):
        if comp[zs[j]] != comp[zs[(j + 1) % k]]:
            shift = (j + 2) % k  # those two become positions k-1 and k
            break
    if shift is None:
        return Blocked("odd-single-F-component")
    C2 = C[shift:] + C[:shift]
    for j, x in enumerate(C2):
        if j % 2 == 0 and j <= k - 3:
            assign[x] = I_SIDE
        else:
            assign[x] = F_SIDE
    return Coloring(tuple(assign[v] for v in range(G.n)))


def _f_components(G: Graph, assign: dict[int, str], skip: set) -> dict[int, int]:
    """Component id per F-colored vertex outside `skip`, over plain edges."""
    comp: dict[int, int] = {}
    next_id = 0
    for s in range(G.n):
        if s in skip or assign.get(s) != F_SIDE or s in comp:
            continue
        comp[s] = next_id
        stack = [s]
        while stack:
            x = stack.pop()
            for y in G.adj[x]:
                if y in skip or y in comp:
                    continue
                if assign.get(y) == F_SIDE and G.kind_of(x, y) == SINGLE:
                    comp[y] = next_id
                    stack.append(y)
        next_id += 1
    return comp


@dataclass(frozen=True)
class CycleLift:
    """Recolors the removed cycle on top of a child coloring."""

    parent: Graph
    cycle: tuple[int, ...]
    table: tuple[int, ...]  # child id -> parent id

    def lift(self, c_child: Coloring) -> Coloring:
        partial = {self.table[i]: side for i, side in enumerate(c_child.assignment)}
        out = extend_over_induced_cycle(self.parent, self.cycle, partial)
        if isinstance(out, Blocked):
            raise GraphError(f"cycle lift blocked: {out.reason}")
        return out


def reduce_cycle_gadget(G: Graph, C, z1: int, z2: int) -> tuple[Graph, CycleLift]:
    """Remove an induced cycle of degree-three vertices and tie its two
    attachment vertices together: an existing gadget stays, a plain edge is
    upgraded to a gadget, non-adjacent attachments get a plain edge.  The lift
    recolors the cycle with extend_over_induced_cycle; the tie guarantees the
    attachments never end up all-I or single-F-component, so it cannot
    block."""
    if z1 == z2:
        raise ValueError("attachment vertices must be distinct")
    cset = set(C)
    if z1 in cset or z2 in cset:
        raise ValueError("attachment vertices must lie off the cycle")
    rest = [v for v in range(G.n) if v not in cset]
    sub, table = induced_subgraph(G, rest)
    pos = {orig: i for i, orig in enumerate(table)}
    kind = G.kind_of(z1, z2)
    if kind == MULTI:
        raise GraphError("attachment pair carries a parallel pair")
    if kind == GADGET:
        child = sub
    elif kind == SINGLE:
        child = sub.set_kind(pos[z1], pos[z2], GADGET)
    else:
        child = sub.with_edge(pos[z1], pos[z2], SINGLE)
    return child, CycleLift(G, tuple(C), table)


def helper_extend(G1: Graph, v: int) -> Coloring:
    """Coloring of a connected graph with at most one cycle (length four or
    more) plus an attached vertex v, with the independent side inside N(v).
    Tries independent neighbor subsets largest-first and validates."""
    if G1.nsize(v) > 4:
        raise ValueError("the attached vertex takes at most four neighbors")
    base, idmap = _delete(G1, {v})
    if len(base.components()) != 1:
        raise ValueError("the base graph must be connected")
    extra = len(base.edges) - (base.n - 1)
    if extra > 1:
        raise ValueError("the base graph may have at most one cycle")
    if extra == 1:
        cyc = _any_cycle(base)
        if len(cyc) < 4:
            raise ValueError("the base cycle must have length at least four")
        on_c = {orig for orig in G1.adj[v] if idmap.get(orig) in set(cyc)}
        if not on_c:
            raise ValueError("some neighbor of v must lie on the cycle")
    nbrs = sorted(G1.adj[v])
    for size in range(len(nbrs), -1, -1):
        for S in combinations(nbrs, size):
            if any(G1.kind_of(a, b) is not None for a, b in combinations(S, 2)):
                continue
            sset = set(S)
            col = Coloring(
                tuple(I_SIDE if u in sset else F_SIDE for u in range(G1.n))
            )
            if validate_coloring(G1, col) is None:
                return col
    raise GraphError("no helper coloring exists; the preconditions cannot hold")


def _any_cycle(G: Graph) -> list[int]:
    """One cycle of a connected graph with exactly one, by DFS."""
    parent: dict[int, int | None] = {0: None}
    stack = [(0, None)]
    while stack:
        x, p = stack.pop()
        for y in G.adj[x]:
            if y == p:
                continue
            if y in parent:
                # close the cycle through the tree paths
                px = [x]
                while px[-1] is not None:
                    px.append(parent[px[-1]])
                px.pop()
                py = [y]
                while py[-1] is not None:
                    py.append(parent[py[-1]])
                py.pop()
                sx, sy = set(px), set(py)
                cut = next(u for u in px if u in sy)
                cyc = px[: px.index(cut) + 1] + list(reversed(py[: py.index(cut)]))
                return cyc
            parent[y] = x
            stack.append((y, x))
    raise GraphError("no cycle found")


# -- discharging -----------------------------------------------------------


@dataclass(frozen=True)
class DischargeReport:
    """Vertex strata and charge bookkeeping for the simple endgame.

    L holds the plain degree-three uncolored vertices; B the rest.  Strata on
    B split by effective degree (gadgets count twice), precolor, and gadget
    incidence.  ineq_lhs is ell + e'(B) + 3e''(B) + 2|B5| + 2|B5eg| + 3|B3f|
    + 4|Bstar|; the cap is 4.  A forest-side F-tagged vertex of effective
    degree four carries final charge five on its own, so its presence clears
    ineq_ok too."""

    L: frozenset[int]
    B: frozenset[int]
    b4: frozenset[int]
    b4_eg: frozenset[int]
    b5: frozenset[int]
    b5_eg: frozenset[int]
    b3_f: frozenset[int]
    b4_f: frozenset[int]
    b_star: frozenset[int]
    ell: int
    e_prime_b: int
    e_dprime_b: int
    ch: tuple[Fraction, ...]
    ch_star: tuple[Fraction, ...]
    b_tilde: frozenset[int]
    ineq_lhs: int
    ineq_ok: bool
    structured: bool


def _dprime(G: Graph, v: int) -> int:
    d = 0
    for u in G.adj[v]:
        d += 2 if G.kind_of(v, u) == GADGET else 1
    return d


def discharge_classify(G: Graph) -> DischargeReport:
    """Classify vertices for the endgame and run the single discharging rule.

    Preconditions: a simple graph (gadgets allowed), no independent-side
    precolored vertices, every vertex with at least three neighbors, and the
    degree-three part inducing a forest."""
    if G.has_multi:
        raise KindError("discharging applies to simple graphs")
    if G.ip_set:
        raise ValueError("independent-side precolored vertices must be gone")
    n = G.n
    for v in range(n):
        if G.nsize(v) < 3:
            raise ValueError("minimum degree three required")
    dp = [_dprime(G, v) for v in range(n)]
    gadgeted = [any(G.kind_of(v, u) == GADGET for u in G.adj[v]) for v in range(n)]
    L = frozenset(
        v for v in range(n) if G.precolor[v] == UNCOLORED and not gadgeted[v] and dp[v] == 3
    )
    B = frozenset(range(n)) - L

    # forest check and component count over G[L]
    parent = {v: v for v in L}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    ell = len(L)
    for u, v, kind in G.edges:
        if u in L and v in L:
            ru, rv = find(u), find(v)
            if ru == rv:
                raise ValueError("the degree-three part must induce a forest")
            parent[ru] = rv
            ell -= 1

    e_prime = sum(1 for u, v, k in G.edges if u in B and v in B and k != GADGET)
    e_dprime = sum(1 for u, v, k in G.edges if u in B and v in B and k == GADGET)

    b4 = frozenset(v for v in B if G.precolor[v] == UNCOLORED and dp[v] == 4 and not gadgeted[v])
    b4_eg = frozenset(v for v in B if G.precolor[v] == UNCOLORED and dp[v] == 4 and gadgeted[v])
    b5 = frozenset(v for v in B if G.precolor[v] == UNCOLORED and dp[v] == 5 and not gadgeted[v])
    b5_eg = frozenset(v for v in B if G.precolor[v] == UNCOLORED and dp[v] == 5 and gadgeted[v])
    b3_f = frozenset(v for v in B if G.precolor[v] == FP and dp[v] == 3)
    b4_f = frozenset(v for v in B if G.precolor[v] == FP and dp[v] >= 4)
    b_star = frozenset(v for v in B if G.precolor[v] == UNCOLORED and dp[v] >= 6)

    half = Fraction(1, 2)
    ch = []
    for v in range(n):
        base = Fraction(5, 2) * dp[v]
        ch.append(base - (3 if G.precolor[v] == FP else 8))
    ch_star = list(ch)
    for v in B:
        for u in G.adj[v]:
            if u in L:
                ch_star[v] -= half
                ch_star[u] += half
        for u in G.adj[v]:
            if u in B:
                # gadgets receive a full unit from each endpoint, edges a half
                ch_star[v] -= (2 * half) if G.kind_of(v, u) == GADGET else half

    total = sum(ch, Fraction(0)) + e_dprime  # each gadget starts with charge one
    if total != -rho_s(G, range(n)):
        raise AssertionError("discharge bookkeeping lost charge")

    lhs = ell + e_prime + 3 * e_dprime + 2 * len(b5) + 2 * len(b5_eg) + 3 * len(b3_f) + 4 * len(b_star)
    return DischargeReport(
        L=L,
        B=B,
        b4=b4,
        b4_eg=b4_eg,
        b5=b5,
        b5_eg=b5_eg,
        b3_f=b3_f,
        b4_f=b4_f,
        b_star=b_star,
        ell=ell,
        e_prime_b=e_prime,
        e_dprime_b=e_dprime,
        ch=tuple(ch),
        ch_star=tuple(ch_star),
        b_tilde=frozenset(
            w for u, v, k in G.edges if u in B and v in B and k != GADGET for w in (u, v)
        ),
        ineq_lhs=lhs,
        ineq_ok=(lhs <= 4 and not b4_f),
        structured=(B == b4),
    )


# -- the structured endgame ------------------------------------------------


def _l_components(G: Graph, Lset) -> list[list[int]]:
    seen = set()
    out = []
    for s in sorted(Lset):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        stack = [s]
        while stack:
            x = stack.pop()
            for y in G.adj[x]:
                if y in Lset and y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        out.append(sorted(comp))
    return out


def _candidate_fb(G: Graph, report: DischargeReport):
    """Forest-side subsets of B worth trying, cheapest first.

    The pool holds every vertex that carries a constraint: endpoints of plain
    B-edges, gadget endpoints, and F-tagged vertices.  Each candidate must
    cover every plain B-edge, take exactly one endpoint of each gadget,
    include every F-tagged vertex, and stay acyclic inside.  Up to two
    unconstrained B-vertices join as helpers."""
    B = report.B
    fps = frozenset(v for v in B if G.precolor[v] == FP)
    gadget_ends = frozenset(
        w for u, v, k in G.edges if k == GADGET and u in B and v in B for w in (u, v)
    )
    pool = sorted(report.b_tilde | gadget_ends | fps)
    rest = sorted(B - set(pool))
    plain_edges = [
        (u, v) for u, v, k in G.edges if u in B and v in B and k != GADGET
    ]
    gadget_edges = [
        (u, v) for u, v, k in G.edges if u in B and v in B and k == GADGET
    ]
    for size in range(len(pool) + 1):
        for ft in combinations(pool, size):
            fset = set(ft)
            if not fps <= fset:
                continue
            if any(u not in fset and v not in fset for u, v in plain_edges):
                continue
            if any(((u in fset) + (v in fset)) != 1 for u, v in gadget_edges):
                continue
            if _has_cycle_inside(plain_edges, fset):
                continue
            for hsize in range(3):
                for H in combinations(rest, hsize):
                    yield frozenset(ft) | frozenset(H)


def _has_cycle_inside(edges, inside: set) -> bool:
    parent = {v: v for v in inside}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        if u in inside and v in inside:
            ru, rv = find(u), find(v)
            if ru == rv:
                return True
            parent[ru] = rv
    return False


def _endgame_engine(G: Graph, Lset, F_B: frozenset[int]):
    """Exact search for an assignment of L with the B split fixed.

    Depth-first over the trees of G[L], with a rollback union-find tracking
    the F-side forest (the fixed F-components of G[B] enter as its roots).
    Returns an I-set over all of G, or None."""
    n = G.n
    I_B = [v for v in range(n) if v not in Lset and v not in F_B]
    i_b_set = set(I_B)

    # components of the fixed F part over non-gadget edges
    croot: dict[int, int] = {}
    for v in sorted(F_B):
        if v in croot:
            continue
        croot[v] = v
        stack = [v]
        while stack:
            x = stack.pop()
            for y in G.adj[x]:
                if y in F_B and y not in croot and G.kind_of(x, y) != GADGET:
                    croot[y] = v
                    stack.append(y)

    parent: dict[object, object] = {}
    for r in set(croot.values()):
        parent[("b", r)] = ("b", r)

    trail: list[object] = []

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def union(a, b) -> bool:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
        trail.append(ra)
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            ra = trail.pop()
            parent[ra] = ra

    order: list[int] = []
    for comp in _l_components(G, Lset):
        stack = [comp[0]]
        seen = {comp[0]}
        while stack:
            x = stack.pop()
            order.append(x)
            for y in sorted(G.adj[x], reverse=True):
                if y in Lset and y not in seen:
                    seen.add(y)
                    stack.append(y)

    side: dict[int, str] = {}

    def place(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        # independent side
        ok = True
        for u in G.adj[v]:
            if u in i_b_set or side.get(u) == I_SIDE:
                ok = False
                break
        if ok:
            side[v] = I_SIDE
            if place(i + 1):
                return True
            del side[v]
        # forest side
        mark = len(trail)
        parent[v] = v
        ok = True
        for u in G.adj[v]:
            target = None
            if u in F_B:
                target = ("b", croot[u])
            elif side.get(u) == F_SIDE:
                target = u
            if target is not None and not union(v, target):
                ok = False
                break
        if ok:
            side[v] = F_SIDE
            if place(i + 1):
                return True
            del side[v]
        undo(mark)
        del parent[v]
        return False

    if not place(0):
        return None
    i_set = set(I_B) | {v for v in order if side[v] == I_SIDE}
    return i_set


def _endgame_run(G: Graph, report: DischargeReport, ctx: _Ctx, step: str) -> Outcome:
    Lset = report.L
    comps = _l_components(G, Lset)
    for F_B in _candidate_fb(G, report):
        partial = {
            v: (F_SIDE if v in F_B else I_SIDE) for v in range(G.n) if v not in Lset
        }
        col = extend_to_forest(G, partial, comps)
        if col is not None and validate_coloring(G, col) is None:
            return Colored(col)
        i_set = _endgame_engine(G, Lset, F_B)
        if i_set is not None:
            col = Coloring(
                tuple(I_SIDE if v in i_set else F_SIDE for v in range(G.n))
            )
            if validate_coloring(G, col) is None:
                return Colored(col)
    if G.n <= ctx.brute_threshold:
        c = brute_nb_color(G, ctx.brute_threshold)
        if c is not None:
            return Colored(c)
    hit = find_forbidden_subgraph(G, ctx.catalog)
    if hit is not None:
        return CertForbidden(hit[0], hit[1])
    return Diagnostic(step, "endgame candidates exhausted")


def finish_structured(
    G: Graph,
    report: DischargeReport,
    *,
    brute_threshold: int = DEFAULT_THRESHOLD,
    catalog: Catalog | None = None,
) -> Outcome:
    """Color a graph whose vertices are all uncolored with the degree-three
    part a forest and the rest plain degree-four.  With no edges inside the
    degree-four part the split is immediate; otherwise forest-side candidate
    subsets are swept with the exact engine behind them, and exhaustion falls
    back to brute force, then a forbidden-subgraph certificate, then a
    diagnostic."""
    ctx = _Ctx(catalog if catalog is not None else default_catalog(), brute_threshold, None)
    if not report.structured:
        return Diagnostic("10", "vertex strata do not match the structured frame")
    if not report.ineq_ok:
        return Diagnostic("10", "discharging inequality fails")
    if report.e_prime_b == 0:
        col = Coloring(
            tuple(F_SIDE if v in report.L else I_SIDE for v in range(G.n))
        )
        return _ok(G, col, "10")
    return _endgame_run(G, report, ctx, "10")


# -- the multigraph worker -------------------------------------------------


def _multi_worker(G: Graph, ctx: _Ctx, depth: int, floor: int | None, dirty) -> Outcome:
    n = G.n
    if n == 0:
        return Colored(Coloring(()))
    if rho_m(G, range(n)) < MULTI_FLOOR:
        return Diagnostic("entry", "full-set potential below the floor")
    if n <= ctx.brute_threshold:
        c = brute_nb_color(G, ctx.brute_threshold)
        if c is None:
            return Diagnostic("base", "exhaustive search found no coloring")
        ctx.note(depth, f"base n={n}")
        return Colored(c)

    comps = G.components()
    if len(comps) > 1:
        return _split_components(G, comps, ctx, depth, floor, dirty, _multi_worker)

    # step 2a: an independent-side precolored vertex
    for v in range(n):
        if G.precolor[v] != IP:
            continue
        if any(G.precolor[u] == IP for u in G.adj[v]):
            return Diagnostic("2a", "adjacent independent-side precolored pair")
        ctx.note(depth, f"2a v={v}")
        sub, idmap = _delete(G, {v})
        groups = []
        for u in G.adj[v]:
            if G.precolor[u] == UNCOLORED:
                sub = sub.with_precolor(idmap[u], FP)
                groups.append(frozenset([idmap[u]]))
        out = _recurse(G, sub, ctx, depth, floor, _remap_groups(dirty, idmap) + tuple(groups), _multi_worker)
        if not isinstance(out, Colored):
            return out
        return _ok(G, _lift_deleted(G, out.coloring, idmap, {v: I_SIDE}), "2a")

    # step 2b: degree at most one
    for v in range(n):
        if G.degree(v) > 1:
            continue
        ctx.note(depth, f"2b v={v}")
        sub, idmap = _delete(G, {v})
        out = _recurse(G, sub, ctx, depth, floor, _remap_groups(dirty, idmap), _multi_worker)
        if not isinstance(out, Colored):
            return out
        return _ok(G, _lift_deleted(G, out.coloring, idmap, {v: F_SIDE}), "2b")

    # step 2c: a single distinct neighbor through a parallel pair
    for v in range(n):
        if G.nsize(v) != 1:
            continue
        w = G.adj[v][0]
        if G.kind_of(v, w) != MULTI:
            continue  # a single edge here is degree one, handled above
        ctx.note(depth, f"2c v={v} w={w}")
        if G.precolor[v] == UNCOLORED:
            sub, idmap = _delete(G, {v})
            out = _recurse(G, sub, ctx, depth, floor, _remap_groups(dirty, idmap), _multi_worker)
            if not isinstance(out, Colored):
                return out
            wside = out.coloring.assignment[idmap[w]]
            return _ok(G, _lift_deleted(G, out.coloring, idmap, {v: _opp(wside)}), "2c")
        # v is forest-tagged: its partner must take the independent side
        if G.precolor[w] == FP:
            return Diagnostic("2c", "parallel pair inside the forest-tagged set")
        sub, idmap = _delete(G, {v})
        groups = []
        if G.precolor[w] == UNCOLORED:
            sub = sub.with_precolor(idmap[w], IP)
            groups.append(frozenset([idmap[w]]))
        out = _recurse(G, sub, ctx, depth, floor, _remap_groups(dirty, idmap) + tuple(groups), _multi_worker)
        if not isinstance(out, Colored):
            return out
        return _ok(G, _lift_deleted(G, out.coloring, idmap, {v: F_SIDE}), "2c")

    # step 2d: an uncolored vertex with exactly two plain neighbors
    for v in range(n):
        if G.precolor[v] != UNCOLORED or G.nsize(v) != 2:
            continue
        x, y = G.adj[v]
        if G.kind_of(v, x) != SINGLE or G.kind_of(v, y) != SINGLE:
            continue
        ctx.note(depth, f"2d v={v}")
        sub, idmap = _delete(G, {v})
        out = _recurse(G, sub, ctx, depth, floor, _remap_groups(dirty, idmap), _multi_worker)
        if not isinstance(out, Colored):
            return out
        both_f = (
            out.coloring.assignment[idmap[x]] == F_SIDE
            and out.coloring.assignment[idmap[y]] == F_SIDE
        )
        return _ok(G, _lift_deleted(G, out.coloring, idmap, {v: I_SIDE if both_f else F_SIDE}), "2d")

    # steps 3 and 4: the tight-subset scan
    H = hypergraph_for_rho_m(G)
    m, W = _scan(H, n, floor, dirty, _MULTI_BAND)
    if W is None and m <= _MULTI_BAND:
        return Diagnostic("3", "in-band scan floor without an actionable witness")
    if W is not None:
        return _multi_tight_route(G, ctx, depth, W)
    floor2 = m

    # step 5a: a forest-tagged vertex with two plain neighbors
    for v in range(n):
        if G.precolor[v] != FP or G.nsize(v) != 2 or G.degree(v) != 2:
            continue
        w, x = G.adj[v]
        if G.kind_of(w, x) is not None:
            return Diagnostic("5a", "tight triangle the scan should have caught")
        ctx.note(depth, f"5a v={v}")
        sub, idmap = _delete(G, {v})
        child = sub.with_edge(idmap[w], idmap[x], SINGLE)
        groups = (frozenset([idmap[w], idmap[x]]),)
        out = _recurse(G, child, ctx, depth, floor2, groups, _multi_worker)
        if not isinstance(out, Colored):
            return out
        return _ok(G, _lift_deleted(G, out.coloring, idmap, {v: F_SIDE}), "5a")

    # step 5b: no other precolored vertex can survive to this point
    if G.fp_set:
        return Diagnostic("5b", "forest-tagged vertex of degree three or more")

    # step 5c: parallel pairs in a nearly 3-regular graph
    multis = [(u, v) for u, v, k in G.edges if k == MULTI]
    if multis:
        for a, b in multis:
            v = None
            if G.degree(a) == 3:
                v = a
            elif G.degree(b) == 3:
                v = b
            if v is None:
                continue
            x = b if v == a else a
            singles = [u for u in G.adj[v] if u != x]
            if len(singles) != 1:
                return Diagnostic("5c", "unexpected shape at a parallel pair")
            w = singles[0]
            ctx.note(depth, f"5c v={v} multi={x} single={w}")
            sub, idmap = _delete(G, {v})
            child = sub.with_precolor(idmap[w], FP) if sub.precolor[idmap[w]] == UNCOLORED else sub
            groups = (frozenset([idmap[w]]),)
            out = _recurse(G, child, ctx, depth, floor2, groups, _multi_worker)
            if not isinstance(out, Colored):
                return out
            xside = out.coloring.assignment[idmap[x]]
            return _ok(G, _lift_deleted(G, out.coloring, idmap, {v: _opp(xside)}), "5c")
        return Diagnostic("5c", "every parallel pair has both endpoints above degree three")

    # step 5d: triangles
    out = _multi_triangles(G, ctx, depth, floor2)
    if out is not None:
        return out

    # step 6: split a degree-three vertex
    return _multi_finish(G, ctx, depth, floor2)


def _split_components(G, comps, ctx, depth, floor, dirty, worker) -> Outcome:
    assign: list[str | None] = [None] * G.n
    for comp in comps:
        sub, table = induced_subgraph(G, comp)
        pos = {orig: i for i, orig in enumerate(table)}
        groups = tuple(
            frozenset(pos[x] for x in g) for g in dirty if all(x in pos for x in g)
        )
        out = worker(sub, ctx, depth + 1, floor, groups)
        if not isinstance(out, Colored):
            return out
        for i, orig in enumerate(table):
            assign[orig] = out.coloring.assignment[i]
    return _ok(G, Coloring(tuple(assign)), "1")


def _remap_groups(dirty, idmap) -> tuple:
    out = []
    for g in dirty:
        if all(x in idmap for x in g):
            out.append(frozenset(idmap[x] for x in g))
    return tuple(out)


def _recurse(parent: Graph, child: Graph, ctx: _Ctx, depth: int, floor, dirty, worker) -> Outcome:
    if _measure(child) >= _measure(parent):
        raise AssertionError("recursion without progress")
    return worker(child, ctx, depth + 1, floor, dirty)


def _multi_tight_route(G: Graph, ctx: _Ctx, depth: int, W) -> Outcome:
    W2 = _closure_multi(G, W)
    r = rho_m(G, W2)
    if r < MULTI_FLOOR:
        return Diagnostic("3", f"subset potential {r} breaches the floor")
    ctx.note(depth, f"tight W={sorted(W2)} rho={r}")
    inner = sorted(W2)
    sub, table = induced_subgraph(G, inner)
    pos = {orig: i for i, orig in enumerate(table)}
    step = "3"
    if r == 1:
        step = "4"
        w = next(v for v in inner if any(u not in W2 for u in G.adj[v]))
        if sub.precolor[pos[w]] == UNCOLORED:
            sub = sub.with_precolor(pos[w], FP)
    out1 = _recurse(G, sub, ctx, depth, None, (), _multi_worker)
    if not isinstance(out1, Colored):
        return _unwrap_inner(out1, step)
    Gp, lift = contract_colored_subset(G, inner, out1.coloring, "multi")
    out2 = _recurse(G, Gp, ctx, depth, None, (), _multi_worker)
    if not isinstance(out2, Colored):
        return _unwrap_inner(out2, step)
    return _ok(G, lift.lift(out2.coloring), step)


def _unwrap_inner(out: Outcome, step: str) -> Outcome:
    if isinstance(out, Diagnostic):
        return out
    return Diagnostic(step, f"subset recursion returned {type(out).__name__}")


def _multi_triangles(G: Graph, ctx: _Ctx, depth: int, floor2) -> Outcome | None:
    n = G.n
    tri_edges: dict[tuple[int, int], list[int]] = {}
    for u, v, _ in G.edges:
        common = [w for w in G.adj[u] if G.kind_of(v, w) is not None]
        if common:
            tri_edges[(u, v)] = sorted(common)
    if not tri_edges:
        return None
    degs = [G.degree(v) for v in range(n)]
    if sum(1 for d in degs if d == 4) > 1 or any(d >= 5 for d in degs):
        return Diagnostic("5d", "graph is not nearly 3-regular")

    # two triangles over one edge: delete the edge pair, merge the off-corners
    for (u1, u2), common in sorted(tri_edges.items()):
        if len(common) < 2:
            continue
        v, y = common[0], common[1]
        if G.kind_of(v, y) is not None:
            return Diagnostic("5d", "four mutually adjacent vertices survived the screen")
        ctx.note(depth, f"5d shared edge={u1},{u2} corners={v},{y}")
        sub, m1 = _delete(G, {u1, u2})
        child, m2 = _identify(sub, min(m1[v], m1[y]), max(m1[v], m1[y]))
        idmap = {o: m2[m1[o]] for o in m1}
        groups = (frozenset([idmap[v]]),)
        out = _recurse(G, child, ctx, depth, floor2, groups, _multi_worker)
        if not isinstance(out, Colored):
            return out
        for s1 in (F_SIDE, I_SIDE):
            for s2 in (F_SIDE, I_SIDE):
                col = _lift_deleted(G, out.coloring, idmap, {u1: s1, u2: s2})
                if validate_coloring(G, col) is None:
                    return Colored(col)
        return Diagnostic("5d", "no corner assignment over the shared edge lifts")

    # lone triangles: prefer all degree-three ones, try both labelings
    triangles = sorted(
        {tuple(sorted((u, v, w))) for (u, v), ws in tri_edges.items() for w in ws}
    )
    attempts: list[tuple[int, int, int, int]] = []
    for tri in sorted(triangles, key=lambda t: (any(degs[x] == 4 for x in t), t)):
        d4 = [t for t in tri if degs[t] == 4]
        if d4:
            apex_choices = [d4[0]]
        else:
            apex_choices = list(tri)
        for v in apex_choices:
            p, q = sorted(t for t in tri if t != v)
            offs = {}
            for t in (p, q):
                out_nb = [u for u in G.adj[t] if u not in tri]
                if len(out_nb) != 1:
                    return Diagnostic("5d", "triangle corner without a single outside leg")
                offs[t] = out_nb[0]
            if offs[p] == offs[q]:
                return Diagnostic("5d", "shared corner the edge pass should have caught")
            for x in (p, q):
                w = q if x == p else p
                y = offs[x]
                if degs[y] != 3:
                    continue
                if G.kind_of(w, y) is not None:
                    continue
                attempts.append((v, w, x, y))
    last: Outcome | None = None
    for v, w, x, y in attempts[:3]:
        ctx.note(depth, f"5d lone v={v} w={w} x={x} y={y}")
        sub, m1 = _delete(G, {v, x})
        child, m2 = _identify(sub, min(m1[w], m1[y]), max(m1[w], m1[y]))
        idmap = {o: m2[m1[o]] for o in m1}
        groups = (frozenset([idmap[w]]),)
        out = _recurse(G, child, ctx, depth, floor2, groups, _multi_worker)
        if not isinstance(out, Colored):
            last = out
            continue
        done = None
        for s1 in (F_SIDE, I_SIDE):
            for s2 in (F_SIDE, I_SIDE):
                col = _lift_deleted(G, out.coloring, idmap, {v: s1, x: s2})
                if validate_coloring(G, col) is None:
                    done = Colored(col)
                    break
            if done:
                break
        if done:
            return done
        last = Diagnostic("5d", "no apex assignment over the lone triangle lifts")
    return last if last is not None else Diagnostic("5d", "no usable lone triangle labeling")


def _multi_finish(G: Graph, ctx: _Ctx, depth: int, floor2) -> Outcome:
    n = G.n
    v = next((u for u in range(n) if G.degree(u) == 3), None)
    if v is None:
        return Diagnostic("6", "no degree-three vertex to split")
    if G.nsize(v) != 3:
        return Diagnostic("6", "parallel pair survived to the finish")
    w, x, y = sorted(G.adj[v])
    if G.kind_of(w, x) is not None:
        return Diagnostic("6", "triangle survived to the finish")
    ctx.note(depth, f"6 v={v} merge={w},{x} spare={y}")
    sub, m1 = _delete(G, {v})
    child, m2 = _identify(sub, min(m1[w], m1[x]), max(m1[w], m1[x]))
    idmap = {o: m2[m1[o]] for o in m1}
    groups = (frozenset([idmap[w]]),)
    out = _recurse(G, child, ctx, depth, floor2, groups, _multi_worker)
    if not isinstance(out, Colored):
        return out
    sigma = out.coloring.assignment[idmap[w]]
    yside = out.coloring.assignment[idmap[y]]
    vside = I_SIDE if (sigma == F_SIDE and yside == F_SIDE) else F_SIDE
    return _ok(G, _lift_deleted(G, out.coloring, idmap, {v: vside}), "6")


# -- the simple worker -----------------------------------------------------


def _simple_worker(G: Graph, ctx: _Ctx, depth: int, floor: int | None, dirty) -> Outcome:
    n = G.n
    if n == 0:
        return Colored(Coloring(()))
    if rho_s(G, range(n)) < SIMPLE_FLOOR:
        return Diagnostic("entry", "full-set potential below the floor")
    if n <= ctx.brute_threshold:
        c = brute_nb_color(G, ctx.brute_threshold)
        if c is None:
            return Diagnostic("base", "exhaustive search found no coloring")
        ctx.note(depth, f"base n={n}")
        return Colored(c)

    comps = G.components()
    if len(comps) > 1:
        return _split_components(G, comps, ctx, depth, floor, dirty, _simple_worker)

    # step 2: independent-tagged, degree at most one, plain degree two
    for v in range(n):
        if G.precolor[v] != IP:
            continue
        if any(G.precolor[u] == IP for u in G.adj[v]):
            return Diagnostic("2", "adjacent independent-side precolored pair")
        ctx.note(depth, f"2 ip v={v}")
        sub, idmap = _delete(G, {v})
        groups = []
        for u in G.adj[v]:
            if G.precolor[u] == UNCOLORED:
                sub = sub.with_precolor(idmap[u], FP)
                groups.append(frozenset([idmap[u]]))
        out = _recurse(G, sub, ctx, depth, floor, _remap_groups(dirty, idmap) + tuple(groups), _simple_worker)
        if not isinstance(out, Colored):
            return out
        return _ok(G, _lift_deleted(G, out.coloring, idmap, {v: I_SIDE}), "2")

    for v in range(n):
        if G.nsize(v) > 1:
            continue
        if G.nsize(v) == 0:
            continue  # isolated vertices split off with the components
        u = G.adj[v][0]
        kind = G.kind_of(v, u)
        if kind == GADGET and G.precolor[v] != UNCOLORED:
            continue  # a tagged gadget end forms a tight pair for the scan
        ctx.note(depth, f"2 d1 v={v}")
        sub, idmap = _delete(G, {v})
        out = _recurse(G, sub, ctx, depth, floor, _remap_groups(dirty, idmap), _simple_worker)
        if not isinstance(out, Colored):
            return out
        if kind == GADGET:
            uside = out.coloring.assignment[idmap[u]]
            return _ok(G, _lift_deleted(G, out.coloring, idmap, {v: _opp(uside)}), "2")
        return _ok(G, _lift_deleted(G, out.coloring, idmap, {v: F_SIDE}), "2")

    for v in range(n):
        if G.precolor[v] != UNCOLORED or G.nsize(v) != 2:
            continue
        x, y = G.adj[v]
        if G.kind_of(v, x) != SINGLE or G.kind_of(v, y) != SINGLE:
            continue
        ctx.note(depth, f"2 d2 v={v}")
        sub, idmap = _delete(G, {v})
        out = _recurse(G, sub, ctx, depth, floor, _remap_groups(dirty, idmap), _simple_worker)
        if not isinstance(out, Colored):
            return out
        both_f = (
            out.coloring.assignment[idmap[x]] == F_SIDE
            and out.coloring.assignment[idmap[y]] == F_SIDE
        )
        return _ok(G, _lift_deleted(G, out.coloring, idmap, {v: I_SIDE if both_f else F_SIDE}), "2")

    # step 3: the scan, with the low band consumed here
    H = hypergraph_for_rho_s(G)
    m, W = _scan(H, n, floor, dirty, _SIMPLE_BAND)
    if W is None and m <= _SIMPLE_BAND:
        return Diagnostic("3", "in-band scan floor without an actionable witness")
    floor2 = m  # the level minimum, whether or not a witness surfaced
    if W is not None and rho_s(G, W) <= 0:
        out = _simple_tight_route(G, H, ctx, depth, W, "3")
        if out is not None:
            return out
        W = None

    # step 4: short cycles in the degree-three part
    Lset = frozenset(
        v
        for v in range(n)
        if G.precolor[v] == UNCOLORED
        and G.nsize(v) == 3
        and all(G.kind_of(v, u) == SINGLE for u in G.adj[v])
    )
    c3 = _first_triangle(G, Lset)
    if c3 is not None:
        zs = _attachments(G, c3)
        if len(set(zs)) == 1:
            return Diagnostic("4", "triangle attachments collapse to one vertex")
        out = _cycle_device_route(G, ctx, depth, c3, [(0, 1), (1, 2), (2, 0)], floor2, "4")
        return out if out is not None else Diagnostic("4", "every triangle attachment pair is linked")
    c4 = _first_induced_c4(G, Lset)
    if c4 is not None:
        return _cycle_pin_route(G, ctx, depth, c4, floor2, "4")

    # step 5: the remaining in-band witnesses
    if W is not None:
        out = _simple_tight_route(G, H, ctx, depth, W, "5")
        if out is not None:
            return out

    # step 6: five-cycles in the degree-three part
    c5 = _first_induced_c5(G, Lset)
    if c5 is not None:
        pairs = [(a, b) for a in range(5) for b in range(a + 1, 5)]
        out = _cycle_device_route(G, ctx, depth, c5, pairs, floor2, "6")
        return out if out is not None else Diagnostic("6", "every five-cycle attachment pair is linked")

    # step 7: residual degree-two vertices
    out = _simple_degree_two(G, ctx, depth, floor2)
    if out is not None:
        return out

    # step 8: longer cycles in the degree-three part
    cyc = _shortest_l_cycle(G, Lset)
    if cyc is not None:
        k = len(cyc)
        if k < 6:
            return Diagnostic("8", "short cycle survived the dedicated steps")
        if k % 2 == 0:
            return _cycle_pin_route(G, ctx, depth, cyc, floor2, "8")
        pairs = [(j, (j + 1) % k) for j in range(k)]
        out = _cycle_device_route(G, ctx, depth, cyc, pairs, floor2, "8")
        return out if out is not None else Diagnostic("8", "every cycle attachment pair is linked")

    # steps 9 and 10: discharging and the structured endgame
    try:
        report = discharge_classify(G)
    except (ValueError, KindError) as exc:
        return Diagnostic("9", f"classification preconditions failed: {exc}")
    if not report.ineq_ok:
        return Diagnostic("9", f"discharging inequality fails at {report.ineq_lhs}")
    if report.structured:
        ctx.note(depth, "10 structured endgame")
        return finish_structured(
            G, report, brute_threshold=ctx.brute_threshold, catalog=ctx.catalog
        )
    ctx.note(depth, "9 strata endgame")
    if report.b3_f:
        out = _eliminate_b3f(G, report)
        if out is not None:
            return out
    return _endgame_run(G, report, ctx, "9")


def _simple_tight_route(G: Graph, H, ctx: _Ctx, depth: int, W, step: str) -> Outcome | None:
    n = G.n
    W2 = _closure_simple(G, W)
    if len(W2) == n - 1:
        # the size bound for contraction asks for two outside vertices
        W3, r3 = min_potential_constrained(H, m1=2, m2=2, extremal=LARGEST)
        if _exact_int(r3) > _SIMPLE_BAND:
            ctx.note(depth, f"{step} tight set fills the graph, smaller sets are clean")
            return None
        W2 = _closure_simple(G, W3)
        if len(W2) >= n - 1:
            return Diagnostic(step, "tight subset cannot leave two vertices outside")
    r = rho_s(G, W2)
    if r < SIMPLE_FLOOR:
        return Diagnostic(step, f"subset potential {r} breaches the floor")
    ctx.note(depth, f"{step} tight W={sorted(W2)} rho={r}")
    inner = sorted(W2)
    sub, _ = induced_subgraph(G, inner)
    out1 = _recurse(G, sub, ctx, depth, None, (), _simple_worker)
    if not isinstance(out1, Colored):
        return _unwrap_inner(out1, step)
    try:
        Gp, lift = contract_colored_subset(G, inner, out1.coloring, "simple")
    except ContractionRejected as exc:
        return Diagnostic(step, f"outside vertex {exc.vertex} still holds two edges into the subset")
    out2 = _recurse(G, Gp, ctx, depth, None, (), _simple_worker)
    if not isinstance(out2, Colored):
        return _unwrap_inner(out2, step)
    return _ok(G, lift.lift(out2.coloring), step)


def _attachments(G: Graph, C) -> list[int]:
    cset = set(C)
    zs = []
    for x in C:
        out = [u for u in G.adj[x] if u not in cset]
        if len(out) != 1:
            raise AssertionError("cycle vertex without a single outside leg")
        zs.append(out[0])
    return zs


def _cycle_device_route(G, ctx, depth, C, pairs, floor2, step) -> Outcome | None:
    zs = _attachments(G, C)
    cset = set(C)
    rest = [v for v in range(G.n) if v not in cset]
    sub, table = induced_subgraph(G, rest)
    pos = {orig: i for i, orig in enumerate(table)}
    for a, b in pairs:
        za, zb = zs[a], zs[b]
        if za == zb:
            continue
        if are_linked(sub, pos[za], pos[zb], ctx.catalog) is not None:
            continue
        ctx.note(depth, f"{step} cycle={list(C)} tie={za},{zb}")
        child, lift = reduce_cycle_gadget(G, C, za, zb)
        groups = () if G.kind_of(za, zb) == GADGET else (frozenset([pos[za], pos[zb]]),)
        out = _recurse(G, child, ctx, depth, floor2, groups, _simple_worker)
        if not isinstance(out, Colored):
            return _unwrap_inner(out, step)
        return _ok(G, lift.lift(out.coloring), step)
    return None


def _cycle_pin_route(G, ctx, depth, C, floor2, step) -> Outcome:
    zs = _attachments(G, C)
    z1 = zs[0]
    cset = set(C)
    rest = [v for v in range(G.n) if v not in cset]
    sub, table = induced_subgraph(G, rest)
    pos = {orig: i for i, orig in enumerate(table)}
    groups: tuple = ()
    child = sub
    if child.precolor[pos[z1]] == UNCOLORED:
        child = child.with_precolor(pos[z1], FP)
        groups = (frozenset([pos[z1]]),)
    ctx.note(depth, f"{step} cycle={list(C)} pin={z1}")
    out = _recurse(G, child, ctx, depth, floor2, groups, _simple_worker)
    if not isinstance(out, Colored):
        return _unwrap_inner(out, step)
    partial = {table[i]: side for i, side in enumerate(out.coloring.assignment)}
    col = extend_over_induced_cycle(G, C, partial)
    if isinstance(col, Blocked):
        return Diagnostic(step, f"cycle extension blocked: {col.reason}")
    return _ok(G, col, step)


def _first_triangle(G: Graph, Lset):
    best = None
    for u, v, _ in G.edges:
        if u not in Lset or v not in Lset:
            continue
        for w in G.adj[u]:
            if w in Lset and w > v and G.kind_of(v, w) is not None:
                tri = (u, v, w)
                if best is None or tri < best:
                    best = tri
    return best


def _first_induced_c4(G: Graph, Lset):
    best = None
    Ls = sorted(Lset)
    for a in Ls:
        for c in Ls:
            if c <= a or G.kind_of(a, c) is not None:
                continue
            common = [x for x in G.adj[a] if x in Lset and G.kind_of(c, x) is not None]
            for i, x in enumerate(common):
                for y in common[i + 1 :]:
                    if G.kind_of(x, y) is not None:
                        continue
                    cyc = _canon_cycle((a, x, c, y))
                    if best is None or cyc < best:
                        best = cyc
    return best


def _first_induced_c5(G: Graph, Lset):
    best = None
    for a in sorted(Lset):
        for b in G.adj[a]:
            if b <= a or b not in Lset:
                continue
            for c in G.adj[b]:
                if c <= a or c == a or c not in Lset or G.kind_of(a, c):
                    continue
                for d in G.adj[c]:
                    if d <= a or d in (a, b) or d not in Lset or G.kind_of(a, d) or G.kind_of(b, d):
                        continue
                    for e in G.adj[d]:
                        if e <= a or e in (a, b, c) or e not in Lset:
                            continue
                        if G.kind_of(b, e) or G.kind_of(c, e):
                            continue
                        if G.kind_of(a, e):
                            cyc = _canon_cycle((a, b, c, d, e))
                            if best is None or cyc < best:
                                best = cyc
    return best


def _canon_cycle(cyc) -> tuple[int, ...]:
    cyc = list(cyc)
    k = len(cyc)
    i = cyc.index(min(cyc))
    r = cyc[i:] + cyc[:i]
    alt = [r[0]] + list(reversed(r[1:]))
    return min(tuple(r), tuple(alt))


def _shortest_l_cycle(G: Graph, Lset):
    adjL = {v: [u for u in G.adj[v] if u in Lset] for v in Lset}
    best: tuple[int, ...] | None = None
    for s in sorted(Lset):
        parent: dict[int, int | None] = {s: None}
        depth = {s: 0}
        queue = [s]
        head = 0
        while head < len(queue):
            x = queue[head]
            head += 1
            for y in adjL[x]:
                if y not in parent:
                    parent[y] = x
                    depth[y] = depth[x] + 1
                    queue.append(y)
                elif parent[x] != y and parent[y] != x:
                    px = [x]
                    while px[-1] is not None:
                        px.append(parent[px[-1]])
                    px.pop()
                    py = [y]
                    while py[-1] is not None:
                        py.append(parent[py[-1]])
                    py.pop()
                    sy = set(py)
                    cut = next((u for u in px if u in sy), None)
                    if cut is None:
                        continue
                    cyc = px[: px.index(cut) + 1] + list(reversed(py[: py.index(cut)]))
                    if len(cyc) >= 3 and (best is None or len(cyc) < len(best)):
                        best = _canon_cycle(cyc)
        if best is not None and len(best) == 3:
            break
    return best


def _simple_degree_two(G: Graph, ctx: _Ctx, depth: int, floor2) -> Outcome | None:
    n = G.n
    for v in range(n):
        if G.nsize(v) != 2:
            continue
        u1, u2 = G.adj[v]
        kinds = (G.kind_of(v, u1), G.kind_of(v, u2))
        gadget_count = kinds.count(GADGET)
        if G.precolor[v] == UNCOLORED:
            if gadget_count == 0:
                continue  # handled at step 2
            if gadget_count == 2:
                return Diagnostic("7", "two gadgets share an endpoint")
            w1 = u1 if kinds[0] == GADGET else u2
            w2 = u2 if w1 == u1 else u1
            ctx.note(depth, f"7 case1 v={v}")
            sub, idmap = _delete(G, {v})
            groups: tuple = ()
            child = sub
            if child.precolor[idmap[w2]] == UNCOLORED:
                child = child.with_precolor(idmap[w2], FP)
                groups = (frozenset([idmap[w2]]),)
            out = _recurse(G, child, ctx, depth, floor2, groups, _simple_worker)
            if not isinstance(out, Colored):
                return out
            w1side = out.coloring.assignment[idmap[w1]]
            return _ok(G, _lift_deleted(G, out.coloring, idmap, {v: _opp(w1side)}), "7")
        if G.precolor[v] != FP:
            continue
        if gadget_count:
            return Diagnostic("7", "forest-tagged gadget end survived the scan")
        if G.precolor[u1] != UNCOLORED or G.precolor[u2] != UNCOLORED:
            return Diagnostic("7", "tight precolored pair survived the scan")
        w1, w2 = sorted((u1, u2))
        between = G.kind_of(w1, w2)
        sub, idmap = _delete(G, {v})
        if between is not None:
            ctx.note(depth, f"7 case2 v={v}")
            if between == SINGLE:
                child = sub.set_kind(idmap[w1], idmap[w2], GADGET)
                groups = (frozenset([idmap[w1], idmap[w2]]),)
            else:
                child = sub
                groups = ()
        else:
            linked = are_linked(sub, idmap[w1], idmap[w2], ctx.catalog)
            if linked is not None:
                return Diagnostic("7", "neighbors of a tagged degree-two vertex are linked")
            ctx.note(depth, f"7 case3 v={v}")
            child = sub.with_edge(idmap[w1], idmap[w2], SINGLE)
            groups = (frozenset([idmap[w1], idmap[w2]]),)
        out = _recurse(G, child, ctx, depth, floor2, groups, _simple_worker)
        if not isinstance(out, Colored):
            return out
        return _ok(G, _lift_deleted(G, out.coloring, idmap, {v: F_SIDE}), "7")
    return None


def _eliminate_b3f(G: Graph, report: DischargeReport) -> Outcome | None:
    """The single tagged degree-three vertex trades places with the middle of
    its neighbors' tree paths."""
    if len(report.b3_f) != 1 or report.e_prime_b or report.e_dprime_b or report.ell != 1:
        return None
    (w,) = report.b3_f
    nbrs = sorted(G.adj[w])
    if any(u not in report.L for u in nbrs):
        return None
    paths = []
    for a, b in combinations(nbrs, 2):
        p = _tree_path(G, report.L, a, b)
        if p is None:
            return None
        paths.append(set(p))
    meet = paths[0] & paths[1] & paths[2]
    if len(meet) != 1:
        return None
    (x,) = meet
    i_set = (set(report.B) | {x}) - {w}
    col = Coloring(tuple(I_SIDE if v in i_set else F_SIDE for v in range(G.n)))
    if validate_coloring(G, col) is None:
        return Colored(col)
    return None


def _tree_path(G: Graph, Lset, a: int, b: int):
    parent = {a: None}
    stack = [a]
    while stack:
        x = stack.pop()
        if x == b:
            break
        for y in G.adj[x]:
            if y in Lset and y not in parent:
                parent[y] = x
                stack.append(y)
    if b not in parent:
        return None
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    return path


# -- public drivers --------------------------------------------------------


def color_multigraph(
    G: Graph,
    *,
    brute_threshold: int = DEFAULT_THRESHOLD,
    trace: list[str] | None = None,
) -> Outcome:
    """Decide the multigraph coloring problem under the potential floor -1.

    Screens the potential over all nonempty subsets, then the two multigraph
    forbidden structures, then runs the reduction worker."""
    if G.has_gadget:
        raise KindError("the multigraph driver does not accept gadget edges")
    if G.n == 0:
        return Colored(Coloring(()))
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 10000))
    H = hypergraph_for_rho_m(G)
    W, r = min_potential_constrained(H, m1=1, m2=0, extremal=LARGEST)
    if r < MULTI_FLOOR:
        return CertLowPotential(W, _exact_int(r), MULTI_FLOOR)
    cat = default_catalog().restrict(("k4", "m7"))
    hit = find_forbidden_subgraph(G, cat)
    if hit is not None:
        return CertForbidden(hit[0], hit[1])
    ctx = _Ctx(cat, brute_threshold, trace)
    return _multi_worker(G, ctx, 0, None, ())


def color_simple(
    G: Graph,
    catalog: Catalog | None = None,
    *,
    brute_threshold: int = DEFAULT_THRESHOLD,
    trace: list[str] | None = None,
) -> Outcome:
    """Decide the simple-graph coloring problem under the potential floor -4,
    relative to the supplied forbidden-structure catalog."""
    if G.has_multi:
        raise KindError("the simple driver does not accept parallel pairs")
    if G.n == 0:
        return Colored(Coloring(()))
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 10000))
    cat = catalog if catalog is not None else default_catalog()
    H = hypergraph_for_rho_s(G)
    W, r = min_potential_constrained(H, m1=1, m2=0, extremal=LARGEST)
    if r < SIMPLE_FLOOR:
        return CertLowPotential(W, _exact_int(r), SIMPLE_FLOOR)
    hit = find_forbidden_subgraph(G, cat)
    if hit is not None:
        return CertForbidden(hit[0], hit[1])
    ctx = _Ctx(cat, brute_threshold, trace)
    return _simple_worker(G, ctx, 0, None, ())
