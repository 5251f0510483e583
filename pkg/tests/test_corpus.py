import random

from diamondlab.corpus import (
    diamond_free_with_empty,
    random_diamond_free,
    random_families,
    random_graphs,
    random_structures,
)
from diamondlab.lattice import Family
from diamondlab.patterns import is_diamond_free


def brute_force(n):
    out = set()
    for bits in range(1 << ((1 << n) - 1)):
        F = Family.of(n, [0] + [s for s in range(1, 1 << n) if bits >> (s - 1) & 1])
        if is_diamond_free(F):
            out.add(F.members)
    return out


def test_exhaustive_enumeration_matches_brute_force():
    for n in range(0, 4):
        got = [F.members for F in diamond_free_with_empty(n)]
        assert len(got) == len(set(got))
        assert set(got) == brute_force(n)


def test_exhaustive_n4_all_valid():
    fams = list(diamond_free_with_empty(4))
    assert len(fams) == 1280
    assert all(0 in F and is_diamond_free(F) for F in fams)


def test_random_families_valid_and_seeded():
    a = random_families([6, 7], 200, seed=4)
    b = random_families([6, 7], 200, seed=4)
    assert a == b
    assert a != random_families([6, 7], 200, seed=5)
    assert all(0 in F and is_diamond_free(F) for F in a)
    assert {F.n for F in a} == {6, 7}


def test_random_families_are_mostly_maximal_at_full_density():
    rng = random.Random(2)
    for _ in range(20):
        F = random_diamond_free(5, rng, density=1.0)
        for S in range(1, 32):
            if S not in F:
                assert not is_diamond_free(F.with_set(S))


def test_random_structures_shape():
    for n, S in random_structures(100, seed=3):
        v = S.graph.v
        assert 4 <= v <= 8 and v <= n <= 3 * v and len(S.parts) == n - v


def test_random_graphs_seeded():
    assert random_graphs(10, seed=1) == random_graphs(10, seed=1)
