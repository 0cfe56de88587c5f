"""Potential functions.

Three flavors share one shape, "vertex credit minus edge debit":

  rho_m  multigraph potential  3|W cap U| + |W cap Fp| - 2 e(W)   (multi counts two edges)
  rho_s  simple-graph potential 8|W cap U| + 3|W cap Fp| - 5 e'(W) - 11 e''(W)
         (e' ordinary edges, e'' gadget edges)
  rho_hyper  generic weighted-hypergraph potential
             sum of vertex weights in X minus weights of hyperedges inside X

Everything is exact: integers for the two graph potentials, Fractions for the
hypergraph one.  rho_m refuses graphs with gadget records, rho_s refuses
graphs with multi records.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .graph_core import FP, GADGET, IP, MULTI, UNCOLORED, Graph


class KindError(ValueError):
    """Potential applied to a graph of the wrong kind."""


def rho_m(G: Graph, W) -> int:
    if G.has_gadget:
        raise KindError("multigraph potential does not accept gadget edges")
    W = set(W)
    vertex = 0
    for v in W:
        tag = G.precolor[v]
        if tag == UNCOLORED:
            vertex += 3
        elif tag == FP:
            vertex += 1
    edge = 0
    for u, v, kind in G.edges:
        if u in W and v in W:
            edge += 2 if kind == MULTI else 1
    return vertex - 2 * edge


def rho_s(G: Graph, W) -> int:
    if G.has_multi:
        raise KindError("simple-graph potential does not accept multi edges")
    W = set(W)
    vertex = 0
    for v in W:
        tag = G.precolor[v]
        if tag == UNCOLORED:
            vertex += 8
        elif tag == FP:
            vertex += 3
    debit = 0
    for u, v, kind in G.edges:
        if u in W and v in W:
            debit += 11 if kind == GADGET else 5
    return vertex - debit


# -- weighted hypergraphs -------------------------------------------------


@dataclass(frozen=True)
class WeightedHypergraph:
    n: int
    vertex_weights: tuple[Fraction, ...]
    edges: tuple[tuple[frozenset[int], Fraction], ...]

    def __post_init__(self):
        if len(self.vertex_weights) != self.n:
            raise ValueError("vertex weight count mismatch")
        for w in self.vertex_weights:
            if w < 0:
                raise ValueError("vertex weights must be nonnegative")
        for members, w in self.edges:
            if not members:
                raise ValueError("empty hyperedge")
            if not all(0 <= u < self.n for u in members):
                raise ValueError("hyperedge member out of range")
            if w <= 0:
                raise ValueError("hyperedge weights must be positive")

    @cached_property
    def total_edge_weight(self) -> Fraction:
        return sum((w for _, w in self.edges), Fraction(0))


def hypergraph(n, vertex_weights, hyperedges) -> WeightedHypergraph:
    """Canonical constructor: weights coerced to Fraction, duplicate
    hyperedges merged by summing their weights, deterministic order."""
    vw = tuple(Fraction(w) for w in vertex_weights)
    merged: dict[frozenset[int], Fraction] = {}
    for members, w in hyperedges:
        members = frozenset(members)
        merged[members] = merged.get(members, Fraction(0)) + Fraction(w)
    edges = tuple(
        (members, merged[members])
        for members in sorted(merged, key=lambda f: (len(f), sorted(f)))
    )
    return WeightedHypergraph(n, vw, edges)


def rho_hyper(H: WeightedHypergraph, X) -> Fraction:
    X = set(X)
    total = sum((H.vertex_weights[u] for u in X), Fraction(0))
    for members, w in H.edges:
        if members <= X:
            total -= w
    return total


# -- graph -> hypergraph reductions ---------------------------------------

_RHO_M_VERTEX = {UNCOLORED: 3, FP: 1, IP: 0}
_RHO_S_VERTEX = {UNCOLORED: 8, FP: 3, IP: 0}


def hypergraph_for_rho_m(G: Graph) -> WeightedHypergraph:
    """Hypergraph whose potential agrees with rho_m on every subset."""
    if G.has_gadget:
        raise KindError("multigraph potential does not accept gadget edges")
    vw = [_RHO_M_VERTEX[G.precolor[v]] for v in range(G.n)]
    he = [((u, v), 4 if kind == MULTI else 2) for u, v, kind in G.edges]
    return hypergraph(G.n, vw, he)


def hypergraph_for_rho_s(G: Graph) -> WeightedHypergraph:
    """Hypergraph whose potential agrees with rho_s on every subset."""
    if G.has_multi:
        raise KindError("simple-graph potential does not accept multi edges")
    vw = [_RHO_S_VERTEX[G.precolor[v]] for v in range(G.n)]
    he = [((u, v), 11 if kind == GADGET else 5) for u, v, kind in G.edges]
    return hypergraph(G.n, vw, he)


def hypergraph_for_sparsity(G: Graph, a) -> WeightedHypergraph:
    """Potential a|X| - e(X); a multi record contributes two edges, any other
    record one.  Sparsity (a, b) holds iff the minimum over nonempty X
    is at least b."""
    a = Fraction(a)
    vw = [a] * G.n
    he = [((u, v), 2 if kind == MULTI else 1) for u, v, kind in G.edges]
    return hypergraph(G.n, vw, he)
