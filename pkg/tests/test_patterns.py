from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diamondlab.errors import BadParameter
from diamondlab.lattice import Family, middle_layers
from diamondlab.patterns import (
    PatternPoset,
    contains_pattern,
    e_value,
    find_embedding,
    is_diamond_free,
    longest_chain,
    make_pattern,
    parse_pattern,
)

DIAMOND = make_pattern("diamond")


def relations(P):
    return {(i, j) for i in range(P.size) for j in range(P.size) if P.lt(i, j)}


def test_make_pattern_shapes():
    assert DIAMOND.size == 4
    assert relations(DIAMOND) == {(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)}
    assert relations(make_pattern("chain", 2)) == {(0, 1)}
    assert relations(make_pattern("fork", 3)) == {(0, 1), (0, 2), (0, 3)}
    D3 = make_pattern("k_diamond", 3)
    assert D3.size == 5 and D3.height() == 3
    assert make_pattern("chain", 5).height() == 5


@pytest.mark.parametrize("args", [("chain", 0), ("fork", 1), ("k_diamond", 0), ("crown", 2), ("chain", None)])
def test_make_pattern_rejects(args):
    with pytest.raises(BadParameter):
        make_pattern(*args)


def test_pattern_poset_validation():
    with pytest.raises(BadParameter):
        PatternPoset("loop", 2, (0b10, 0b01))
    with pytest.raises(BadParameter):
        PatternPoset("self", 1, (0b1,))
    with pytest.raises(BadParameter):
        PatternPoset("gap", 3, (0b010, 0b100, 0))


def test_parse_pattern_literals():
    assert parse_pattern("diamond") == DIAMOND
    assert parse_pattern("B2") == DIAMOND
    assert parse_pattern("P4").size == 4
    assert parse_pattern("V3").size == 4
    assert parse_pattern("D5").size == 7
    for bad in ["P", "X3", "diamond2", ""]:
        with pytest.raises(BadParameter):
            parse_pattern(bad)


def test_contains_examples():
    assert contains_pattern(Family.of(2, range(4)), DIAMOND)[0]
    for n in range(2, 9):
        assert not contains_pattern(middle_layers(n, 2), DIAMOND)[0]
    chain4 = Family.from_elements(3, [[], [1], [1, 2], [1, 2, 3]])
    found, wit = contains_pattern(chain4, DIAMOND)
    assert found
    images = [chain4.members[wit[i]] for i in range(4)]
    assert len(set(images)) == 4
    for i, j in relations(DIAMOND):
        assert images[i] & images[j] == images[i] and images[i] != images[j]


def test_diamond_free_examples():
    assert not is_diamond_free(Family.of(2, range(4)))
    assert is_diamond_free(Family.from_elements(3, [[], [1], [2], [1, 3], [2, 3]]))
    for sets in combinations(range(8), 3):
        assert is_diamond_free(Family.of(3, sets))


def test_fast_diamond_check_exhaustive_n3():
    for bits in range(1 << 8):
        F = Family.of(3, [s for s in range(8) if bits >> s & 1])
        assert is_diamond_free(F) == (not contains_pattern(F, DIAMOND)[0])


def test_fast_diamond_check_n4_with_empty():
    for bits in range(0, 1 << 16, 2):
        F = Family.of(4, [0] + [s for s in range(1, 16) if bits >> s & 1])
        assert is_diamond_free(F) == (not contains_pattern(F, DIAMOND)[0])


small_families = st.integers(1, 4).flatmap(
    lambda n: st.sets(st.integers(0, (1 << n) - 1), max_size=10).map(lambda s: Family.of(n, s))
)


@given(small_families, st.integers(1, 5))
def test_chain_freeness_matches_longest_chain(F, k):
    P = make_pattern("chain", k)
    assert contains_pattern(F, P)[0] == (longest_chain(F) >= k)


@given(small_families, st.data())
def test_containment_monotone(F, data):
    sub = data.draw(st.sets(st.sampled_from(F.members)) if len(F) else st.just(set()))
    G = Family.of(F.n, sub)
    for P in (DIAMOND, make_pattern("fork", 2), make_pattern("chain", 3)):
        if contains_pattern(G, P)[0]:
            assert contains_pattern(F, P)[0]


def test_weak_embedding_allows_comparable_middle():
    # B and C comparable: the 4-chain still holds a weak diamond
    assert find_embedding([0, 1, 3, 7], DIAMOND) is not None


def test_e_values():
    assert e_value(DIAMOND, 6) == 2
    assert e_value(make_pattern("chain", 2), 5) == 1
    assert e_value(make_pattern("chain", 4), 8) == 3
    with pytest.raises(BadParameter):
        e_value(DIAMOND, 13)
