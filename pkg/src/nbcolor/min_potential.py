"""Minimum-potential subsets via max-flow.

The reduction: a network with source s, sink t, one node per hypergraph
vertex, one node per hyperedge.  Arcs s->v with capacity w_v, f->t with
capacity w_f, and v->f with effectively infinite capacity whenever v sits in
f.  A minimum s-t cut corresponds to the subset W of vertices whose source
arcs it cuts, and its weight equals rho(W) plus the total hyperedge weight,
so a max-flow computation finds a minimizer of rho.

Cardinality constraints use two devices on top of that reduction: an upper
bound |W| <= n - m2 by deleting every m2-subset X (with the hyperedges it
touches) and taking the best branch, and a lower bound |W| >= m1 by forcing
every m1-subset Y into W through one huge-weight hyperedge whose weight is
discounted when reading the answer.  Extremal cardinality among minimizers
comes from an exact integer perturbation: scale all weights so that one unit
of cardinality can never outweigh one unit of potential, then nudge vertex
weights by one.

All arithmetic is integer after a single denominator-clearing pass, so every
answer is exact.  Two shortcut rules (documented at their call sites) skip
device branches whose answer is already known; both are exact, they never
change results.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .potential import WeightedHypergraph, rho_hyper

LARGEST = "largest"
SMALLEST = "smallest"
EXTREMAL_MODES = (None, LARGEST, SMALLEST)


class FlowNetwork:
    """Dinic's algorithm over integer capacities."""

    def __init__(self, num_nodes: int):
        self.n = num_nodes
        self.head: list[list[int]] = [[] for _ in range(num_nodes)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_arc(self, u: int, v: int, cap: int) -> int:
        idx = len(self.to)
        self.head[u].append(idx)
        self.to.append(v)
        self.cap.append(cap)
        self.head[v].append(idx + 1)
        self.to.append(u)
        self.cap.append(0)
        return idx

    def _levels(self, s: int, t: int):
        level = [-1] * self.n
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for idx in self.head[u]:
                v = self.to[idx]
                if self.cap[idx] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level if level[t] >= 0 else None

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        while True:
            level = self._levels(s, t)
            if level is None:
                return total
            it = [0] * self.n

            def augment(u: int, limit: int) -> int:
                if u == t:
                    return limit
                while it[u] < len(self.head[u]):
                    idx = self.head[u][it[u]]
                    v = self.to[idx]
                    if self.cap[idx] > 0 and level[v] == level[u] + 1:
                        pushed = augment(v, min(limit, self.cap[idx]))
                        if pushed:
                            self.cap[idx] -= pushed
                            self.cap[idx ^ 1] += pushed
                            return pushed
                    it[u] += 1
                return 0

            while True:
                pushed = augment(s, 1 << 62)
                if not pushed:
                    break
                total += pushed

    def source_side(self, s: int) -> set[int]:
        """Nodes reachable from s in the residual graph; call after max_flow."""
        seen = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for idx in self.head[u]:
                v = self.to[idx]
                if self.cap[idx] > 0 and v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen


@dataclass(frozen=True)
class AuxNetwork:
    """The cut network for one hypergraph: a minimum source-side cut picks
    out a minimum-potential subset, offset by the total edge weight."""

    flow: FlowNetwork
    source: int
    sink: int
    vertex_node: tuple[int, ...]
    scale: int                      # integer caps are weight * scale
    total_edge_weight_scaled: int


def _denominator_scale(H: WeightedHypergraph) -> int:
    dens = [w.denominator for w in H.vertex_weights]
    dens += [w.denominator for _, w in H.edges]
    return lcm(*dens) if dens else 1


def build_aux_network(H: WeightedHypergraph) -> AuxNetwork:
    L = _denominator_scale(H)
    net = FlowNetwork(2 + H.n + len(H.edges))
    s, t = 0, 1
    vnode = tuple(2 + v for v in range(H.n))
    finite = 0
    caps_v = []
    for v in range(H.n):
        c = int(H.vertex_weights[v] * L)
        caps_v.append(c)
        finite += c
    caps_e = []
    total_e = 0
    for _, w in H.edges:
        c = int(w * L)
        caps_e.append(c)
        total_e += c
        finite += c
    big = finite + 1
    for v in range(H.n):
        if caps_v[v] > 0:
            net.add_arc(s, vnode[v], caps_v[v])
    for j, (members, _) in enumerate(H.edges):
        enode = 2 + H.n + j
        net.add_arc(enode, t, caps_e[j])
        for v in sorted(members):
            net.add_arc(vnode[v], enode, big)
    return AuxNetwork(net, s, t, vnode, L, total_e)


def max_flow(aux: AuxNetwork) -> tuple[int, set[int]]:
    """Runs the flow and returns (scaled cut value, source-side node set)."""
    value = aux.flow.max_flow(aux.source, aux.sink)
    return value, aux.flow.source_side(aux.source)


def _solve_device(H: WeightedHypergraph, banned: frozenset[int], forced, extremal) -> frozenset[int]:
    """One flow instance with optional deleted vertices, one optional forced
    group, and the extremal perturbation.  Returns the minimizer W."""
    L = _denominator_scale(H)
    n = H.n
    M = n + 1 if extremal else 1
    caps_v = [0] * n
    for v in range(n):
        if v in banned:
            continue
        base = int(H.vertex_weights[v] * L) * M
        if extremal == LARGEST and base > 0:
            base -= 1
        elif extremal == SMALLEST:
            base += 1
        caps_v[v] = base
    edges = [(members, int(w * L) * M) for members, w in H.edges if not (members & banned)]
    finite = sum(caps_v) + sum(c for _, c in edges)
    # the huge forcing hyperedge participates in the bound like any other arc
    big_placeholder = finite + 1
    if forced:
        finite += big_placeholder
    big = finite + 1

    net = FlowNetwork(2 + n + len(edges) + (1 if forced else 0))
    s, t = 0, 1
    vnode = [2 + v for v in range(n)]
    for v in range(n):
        if v not in banned and caps_v[v] > 0:
            net.add_arc(s, vnode[v], caps_v[v])
    for j, (members, c) in enumerate(edges):
        enode = 2 + n + j
        net.add_arc(enode, t, c)
        for v in sorted(members):
            net.add_arc(vnode[v], enode, big)
    if forced:
        enode = 2 + n + len(edges)
        net.add_arc(enode, t, big_placeholder)
        for v in sorted(forced):
            net.add_arc(vnode[v], enode, big)
    net.max_flow(s, t)
    reach = net.source_side(s)
    W = frozenset(v for v in range(n) if v not in banned and vnode[v] not in reach)
    if forced and not (forced <= W):
        raise AssertionError("forcing device failed to pin its subset")
    return W


def _rank_key(H: WeightedHypergraph, W: frozenset[int], extremal):
    r = rho_hyper(H, W)
    if extremal == LARGEST:
        return (r, -len(W), tuple(sorted(W)))
    if extremal == SMALLEST:
        return (r, len(W), tuple(sorted(W)))
    return (r, 0, tuple(sorted(W)))


def min_potential_subset(H: WeightedHypergraph) -> tuple[frozenset[int], Fraction]:
    """Unconstrained minimizer of rho over all subsets (the empty set counts)."""
    W = _solve_device(H, frozenset(), None, None)
    return W, rho_hyper(H, W)


def min_potential_constrained(
    H: WeightedHypergraph,
    m1: int = 0,
    m2: int = 0,
    extremal: str | None = None,
) -> tuple[frozenset[int], Fraction]:
    """Minimize rho over subsets with m1 <= |W| <= n - m2.

    Ties on rho are settled by extremal cardinality when asked, then by the
    lexicographically smallest vertex tuple among the candidate sets the
    device branches surface.
    """
    n = H.n
    if extremal not in EXTREMAL_MODES:
        raise ValueError(f"unknown extremal mode {extremal!r}")
    if m1 < 0 or m2 < 0 or m1 > n - m2:
        raise ValueError(f"no subset satisfies {m1} <= |W| <= {n} - {m2}")

    # exact shortcut: a feasible unconstrained extremal minimizer already
    # answers the constrained problem
    W0 = _solve_device(H, frozenset(), None, extremal)
    if m1 <= len(W0) <= n - m2:
        return W0, rho_hyper(H, W0)

    best = None
    best_key = None

    def consider(W):
        nonlocal best, best_key
        if m1 <= len(W) <= n - m2:
            key = _rank_key(H, W, extremal)
            if best_key is None or key < best_key:
                best_key, best = key, W

    # Sweep the side of the window that W0 violates: forcing an m1-subset
    # guarantees the lower bound by membership, banning an m2-subset the
    # upper bound, so primary branches almost always land inside the window.
    # A branch whose extremal minimizer still misses the window falls back
    # to the crossed sweep, pruned by the branch minimum: restricting a
    # branch never lowers its rho, and in extremal mode an out-of-window
    # extremal minimizer means every in-window set is strictly worse.
    if len(W0) < m1:
        pend = []
        for Y in itertools.combinations(range(n), m1):
            forced = frozenset(Y)
            W1 = _solve_device(H, frozenset(), forced, extremal)
            if len(W1) <= n - m2:
                consider(W1)
            else:
                pend.append((forced, rho_hyper(H, W1)))
        for forced, lb in pend:
            if best_key is not None and lb > best_key[0]:
                continue
            if extremal == SMALLEST and best_key is not None and lb >= best_key[0]:
                continue
            for X in itertools.combinations(
                [v for v in range(n) if v not in forced], m2
            ):
                consider(_solve_device(H, frozenset(X), forced, extremal))
    else:
        pend = []
        for X in itertools.combinations(range(n), m2):
            banned = frozenset(X)
            W1 = _solve_device(H, banned, None, extremal)
            if len(W1) >= m1:
                consider(W1)
            else:
                pend.append((banned, rho_hyper(H, W1)))
        for banned, lb in pend:
            if best_key is not None and lb > best_key[0]:
                continue
            if extremal == LARGEST and best_key is not None and lb >= best_key[0]:
                continue
            for Y in itertools.combinations(
                [v for v in range(n) if v not in banned], m1
            ):
                consider(_solve_device(H, banned, frozenset(Y), extremal))
    return best, best_key[0]


def min_potential_pinned(
    H: WeightedHypergraph,
    force=(),
    ban=(),
    extremal: str | None = LARGEST,
) -> tuple[frozenset[int], Fraction]:
    """Minimize rho over subsets that contain every vertex of `force` and
    avoid every vertex of `ban`.  One flow instance; membership constraints
    are exact (banned vertices are deleted, forced ones pinned through a
    huge-weight hyperedge)."""
    fset = frozenset(force)
    bset = frozenset(ban)
    if extremal not in EXTREMAL_MODES:
        raise ValueError(f"unknown extremal mode {extremal!r}")
    if fset & bset:
        raise ValueError(f"force and ban overlap on {sorted(fset & bset)}")
    for v in fset | bset:
        if not 0 <= v < H.n:
            raise ValueError(f"vertex {v} out of range")
    W = _solve_device(H, bset, fset or None, extremal)
    return W, rho_hyper(H, W)


def min_proper_nonempty(
    H: WeightedHypergraph, extremal: str | None = LARGEST
) -> tuple[frozenset[int], Fraction]:
    """Minimize rho over proper nonempty subsets (m1=1, m2=1) with the same
    devices, organized so the common cases cost one flow."""
    n = H.n
    if n < 2:
        raise ValueError("need at least two vertices for a proper nonempty subset")
    W0 = _solve_device(H, frozenset(), None, extremal)
    if 0 < len(W0) < n:
        return W0, rho_hyper(H, W0)
    best = None
    best_key = None
    for x in range(n):
        banned = frozenset([x])
        Wx = _solve_device(H, banned, None, extremal)
        if Wx:
            candidates = [Wx]
        else:
            # this branch's nonempty sets all have rho >= 1 > rho(empty); if a
            # strictly better branch is in hand, skip the forcing sweep
            if best_key is not None and best_key[0] <= 0:
                continue
            candidates = [
                _solve_device(H, banned, frozenset([y]), extremal)
                for y in range(n)
                if y != x
            ]
        for W in candidates:
            key = _rank_key(H, W, extremal)
            if best_key is None or key < best_key:
                best_key, best = key, W
    return best, best_key[0]


# -- reference implementation by enumeration ------------------------------


def min_potential_enum(
    H: WeightedHypergraph,
    m1: int = 0,
    m2: int = 0,
    extremal: str | None = None,
) -> tuple[frozenset[int], Fraction]:
    """Authoritative but exponential: walk all subsets.  Ties on rho go to
    the extremal cardinality, then to the lexicographically smallest tuple
    over every qualifying subset (not just surfaced candidates)."""
    n = H.n
    if m1 < 0 or m2 < 0 or m1 > n - m2:
        raise ValueError(f"no subset satisfies {m1} <= |W| <= {n} - {m2}")
    L = _denominator_scale(H)
    wv = [int(H.vertex_weights[v] * L) for v in range(n)]
    masks = []
    for members, w in H.edges:
        mask = 0
        for v in members:
            mask |= 1 << v
        masks.append((mask, int(w * L)))
    best_key = None
    best = None
    for bits in range(1 << n):
        size = bits.bit_count()
        if size < m1 or size > n - m2:
            continue
        total = 0
        for v in range(n):
            if bits >> v & 1:
                total += wv[v]
        for mask, w in masks:
            if bits & mask == mask:
                total -= w
        if extremal == LARGEST:
            second = -size
        elif extremal == SMALLEST:
            second = size
        else:
            second = 0
        members = tuple(v for v in range(n) if bits >> v & 1)
        key = (total, second, members)
        if best_key is None or key < best_key:
            best_key, best = key, members
    return frozenset(best), Fraction(best_key[0], L)
