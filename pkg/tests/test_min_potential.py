"""Flow-based subset minimization against the enumeration reference."""

import itertools
import random
from fractions import Fraction

import pytest

from nbcolor.min_potential import (
    LARGEST,
    SMALLEST,
    build_aux_network,
    max_flow,
    min_potential_constrained,
    min_potential_enum,
    min_potential_pinned,
    min_potential_subset,
    min_proper_nonempty,
)
from nbcolor.potential import hypergraph, rho_hyper


# worked example: six vertices u..z with the two-triangle-plus-tail shape
WORKED = hypergraph(
    6,
    [3, 4, 2, 1, 9, 15],
    [
        ((0, 1), 5),
        ((0, 2), 8),
        ((1, 2), 2),
        ((1, 3), 7),
        ((2, 4), 5),
        ((3, 4), 3),
        ((3, 5), 6),
        ((4, 5), 7),
    ],
)


def test_worked_example_minimum():
    W, val = min_potential_subset(WORKED)
    assert val == -12
    assert W == frozenset({0, 1, 2, 3})
    assert rho_hyper(WORKED, W) == -12


def test_worked_example_network_cut():
    aux = build_aux_network(WORKED)
    assert aux.scale == 1
    assert aux.total_edge_weight_scaled == 43
    value, reach = max_flow(aux)
    # min cut = rho(W) + total edge weight
    assert value == 31
    W = {v for v in range(WORKED.n) if aux.vertex_node[v] not in reach}
    assert W == {0, 1, 2, 3}


def random_hypergraph(rng, max_n=7, max_edges=10, max_w=12):
    n = rng.randint(1, max_n)
    weights = [rng.randint(0, max_w) for _ in range(n)]
    edges = []
    for _ in range(rng.randint(0, max_edges)):
        size = rng.randint(1, min(3, n))
        members = tuple(rng.sample(range(n), size))
        edges.append((members, rng.randint(1, max_w)))
    return hypergraph(n, weights, edges)


def test_flow_matches_enum_unconstrained():
    rng = random.Random(90210)
    for _ in range(60):
        H = random_hypergraph(rng)
        W, val = min_potential_subset(H)
        We, vale = min_potential_enum(H)
        assert val == vale
        assert rho_hyper(H, W) == val


def test_flow_matches_enum_extremal_unconstrained():
    # minimizers form a lattice, so the largest and the smallest minimizer
    # are each unique and both routes must return them exactly
    rng = random.Random(4711)
    for _ in range(40):
        H = random_hypergraph(rng)
        for mode in (LARGEST, SMALLEST):
            W, val = min_potential_constrained(H, extremal=mode)
            We, vale = min_potential_enum(H, extremal=mode)
            assert val == vale
            assert W == We


def test_flow_matches_enum_constrained():
    rng = random.Random(1729)
    for _ in range(25):
        H = random_hypergraph(rng, max_n=6, max_edges=8)
        for m1, m2 in itertools.product(range(3), repeat=2):
            if m1 > H.n - m2:
                continue
            for mode in (None, LARGEST, SMALLEST):
                W, val = min_potential_constrained(H, m1, m2, mode)
                We, vale = min_potential_enum(H, m1, m2, mode)
                assert val == vale
                assert m1 <= len(W) <= H.n - m2
                assert rho_hyper(H, W) == val


def test_constrained_bad_window():
    H = hypergraph(3, [1, 1, 1], [])
    with pytest.raises(ValueError):
        min_potential_constrained(H, m1=2, m2=2)
    with pytest.raises(ValueError):
        min_potential_constrained(H, m1=-1)
    with pytest.raises(ValueError):
        min_potential_constrained(H, extremal="median")


def test_fractional_weights():
    H = hypergraph(2, ["1/2", "1/3"], [((0, 1), "5/6")])
    W, val = min_potential_constrained(H, extremal=LARGEST)
    assert val == 0
    assert W == frozenset({0, 1})
    W, val = min_potential_constrained(H, extremal=SMALLEST)
    assert val == 0
    assert W == frozenset()
    _, val = min_potential_constrained(H, m1=1, m2=1)
    assert val == Fraction(1, 3)


def test_extremal_tiebreak_path():
    # rho is 0 on both the empty set and the whole pair, 1 in between
    H = hypergraph(2, [1, 1], [((0, 1), 2)])
    W, _ = min_potential_constrained(H, extremal=LARGEST)
    assert W == frozenset({0, 1})
    W, _ = min_potential_constrained(H, extremal=SMALLEST)
    assert W == frozenset()


def test_pinned_respects_membership():
    rng = random.Random(31337)
    for _ in range(30):
        H = random_hypergraph(rng, max_n=6, max_edges=8)
        verts = list(range(H.n))
        force = frozenset(rng.sample(verts, rng.randint(0, min(2, H.n))))
        rest = [v for v in verts if v not in force]
        ban = frozenset(rng.sample(rest, rng.randint(0, min(2, len(rest)))))
        W, val = min_potential_pinned(H, force, ban)
        assert force <= W
        assert not (ban & W)
        assert rho_hyper(H, W) == val
        # reference: walk every subset honoring the pins
        best = min(
            rho_hyper(H, set(sub) | force)
            for sub in itertools.chain.from_iterable(
                itertools.combinations([v for v in rest if v not in ban], k)
                for k in range(len(rest) - len(ban) + 1)
            )
        )
        assert val == best


def test_pinned_rejects_bad_input():
    H = hypergraph(3, [1, 1, 1], [])
    with pytest.raises(ValueError):
        min_potential_pinned(H, force=[0], ban=[0])
    with pytest.raises(ValueError):
        min_potential_pinned(H, force=[3])
    with pytest.raises(ValueError):
        min_potential_pinned(H, ban=[-1])
    with pytest.raises(ValueError):
        min_potential_pinned(H, extremal="weird")


def test_proper_nonempty():
    rng = random.Random(2718)
    for _ in range(30):
        H = random_hypergraph(rng, max_n=6, max_edges=8)
        if H.n < 2:
            continue
        for mode in (LARGEST, SMALLEST):
            W, val = min_proper_nonempty(H, mode)
            We, vale = min_potential_enum(H, m1=1, m2=1, extremal=mode)
            assert val == vale
            assert 0 < len(W) < H.n
            assert rho_hyper(H, W) == val
    with pytest.raises(ValueError):
        min_proper_nonempty(hypergraph(1, [1], []))


def test_submodularity_spot():
    rng = random.Random(555)
    for _ in range(200):
        H = random_hypergraph(rng, max_n=7, max_edges=9)
        verts = range(H.n)
        A = {v for v in verts if rng.random() < 0.5}
        B = {v for v in verts if rng.random() < 0.5}
        lhs = rho_hyper(H, A) + rho_hyper(H, B)
        rhs = rho_hyper(H, A | B) + rho_hyper(H, A & B)
        assert lhs >= rhs
