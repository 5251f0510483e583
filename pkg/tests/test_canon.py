import random
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diamondlab.canon import canonical_code, class_codes, decode, encode, graph_classes, labeled_graphs
from diamondlab.graphs import Graph

# number of unlabelled graphs on v vertices
KNOWN_COUNTS = [1, 1, 2, 4, 11, 34, 156]


def brute_code(G):
    return max(encode(G, order) for order in permutations(range(G.v)))


def relabel(G, perm):
    return Graph.from_edges(G.v, [(perm[a], perm[b]) for a, b in G.edges()])


@pytest.mark.parametrize("v", range(7))
def test_class_counts(v):
    assert len(class_codes(v)) == KNOWN_COUNTS[v]


@pytest.mark.parametrize("v", range(6))
def test_canonical_matches_brute_force(v):
    seen = {}
    for G in labeled_graphs(v):
        seen.setdefault(brute_code(G), set()).add(canonical_code(G))
    assert all(len(codes) == 1 for codes in seen.values())
    assert len(seen) == KNOWN_COUNTS[v]


@given(st.integers(1, 7), st.randoms(use_true_random=False), st.floats(0, 1))
def test_canonical_code_invariant_under_relabel(v, rnd, p):
    edges = [(a, b) for b in range(v) for a in range(b) if rnd.random() < p]
    G = Graph.from_edges(v, edges)
    perm = list(range(v))
    rnd.shuffle(perm)
    assert canonical_code(relabel(G, perm)) == canonical_code(G)


def test_encode_decode_roundtrip():
    rng = random.Random(0)
    for v in range(8):
        for _ in range(20):
            code = rng.getrandbits(v * (v - 1) // 2) if v > 1 else 0
            assert encode(decode(v, code)) == code


def test_graph_classes_are_canonical():
    for G in graph_classes(5):
        assert canonical_code(G) == encode(G)
