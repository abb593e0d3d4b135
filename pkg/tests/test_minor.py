"""Interval-minor containment: decision procedure vs brute-force oracle."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from imfree import (
    OrderedBipartiteGraph,
    Witness,
    complete,
    contains,
    contains_bruteforce,
    parse_pattern,
    verify_witness,
    witness_error,
)


def G(text):
    return OrderedBipartiteGraph.from_grid(text)


def test_parse_pattern():
    assert parse_pattern("K2,3") == complete(2, 3)
    for bad in ("2,3", "Kx,y", "K2", "K0,3"):
        with pytest.raises(ValueError):
            parse_pattern(bad)


def test_trivial_containments():
    g = G("3 3\n010\n101\n010")
    # [TRIVIAL] K_{1,1} is an interval minor of anything with an edge
    assert contains(g, complete(1, 1)) is not None
    # [TRIVIAL] the graph contains itself
    assert contains(g, g) is not None


def test_diamond_is_k22_free():
    g = G("3 3\n010\n101\n010")
    # [DERIVED] cross-checked by the exhaustive oracle below
    assert contains(g, complete(2, 2)) is None
    assert contains_bruteforce(g, complete(2, 2)) is None


def test_containment_positive_with_witness():
    g = G("3 3\n110\n011\n101")
    w = contains(g, complete(2, 2))
    assert w is not None
    assert verify_witness(g, complete(2, 2), w)


def test_transpose_orientation():
    g = G("2 3\n111\n111")
    h = complete(3, 2)
    assert contains(g, h, allow_transpose=True) is not None
    assert contains(g, h, allow_transpose=False) is None
    w = contains(g, h)
    assert w.transposed


def test_witness_error_reasons():
    g = G("2 2\n11\n11")
    h = complete(2, 2)
    ok = contains(g, h)
    assert witness_error(g, h, ok) is None
    bad = Witness(False, ((0, 1), (0, 1)), ((0, 1), (1, 2)))
    assert witness_error(g, h, bad) == "row-blocks:gap-or-overlap"
    bad = Witness(False, ((0, 1),), ((0, 1), (1, 2)))
    assert witness_error(g, h, bad) == "row-blocks:count"
    free = G("2 2\n10\n01")
    good_blocks = Witness(False, ((0, 1), (1, 2)), ((0, 1), (1, 2)))
    assert witness_error(free, h, good_blocks).startswith("block(")
    assert not verify_witness(free, h, good_blocks)


def _random_graph(rng, p, q):
    return OrderedBipartiteGraph(
        p, q, tuple(rng.getrandbits(q) for _ in range(p))
    )


def test_agreement_with_oracle_random():
    # [DERIVED] greedy decision equals exhaustive oracle on random instances
    rng = random.Random(20260823)
    patterns = [
        complete(2, 2),
        complete(2, 3),
        complete(3, 3),
        G("2 2\n10\n01"),
        G("2 3\n101\n010"),
    ]
    for _ in range(400):
        g = _random_graph(rng, rng.randint(1, 5), rng.randint(1, 5))
        for h in patterns:
            got = contains(g, h)
            ref = contains_bruteforce(g, h)
            assert (got is None) == (ref is None), (g.to_grid(), h.to_grid())
            if got is not None:
                assert verify_witness(g, h, got)


@settings(max_examples=150, deadline=None)
@given(
    st.integers(1, 4),
    st.integers(1, 4),
    st.data(),
)
def test_monotone_under_edge_addition(p, q, data):
    rows = tuple(
        data.draw(st.integers(0, (1 << q) - 1), label=f"row{i}")
        for i in range(p)
    )
    g = OrderedBipartiteGraph(p, q, rows)
    h = complete(2, 2)
    if contains(g, h) is None:
        return
    # adding edges can never destroy containment
    i = data.draw(st.integers(0, p - 1))
    j = data.draw(st.integers(0, q - 1))
    bigger = OrderedBipartiteGraph(
        p, q, rows[:i] + (rows[i] | (1 << j),) + rows[i + 1 :]
    )
    assert contains(bigger, h) is not None
