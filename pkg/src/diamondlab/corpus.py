"""Seeded and exhaustive test corpora: diamond-free families, structures, graphs."""

from __future__ import annotations

import random

from .graphs import Bipartition, Graph, StructureW
from .lattice import Family, size_order


def _below_counts_ok(members: int, S: int) -> bool:
    # with the empty set present: at most one nonempty member strictly inside S
    count = 0
    A = (S - 1) & S
    while A:
        if members >> A & 1:
            count += 1
            if count > 1:
                return False
        A = (A - 1) & S
    return True


def diamond_free_with_empty(n: int):
    """Every diamond-free family of B_n containing the empty set, in DFS order.

    Sets are added in (size, mask) order, so a new set is never below an
    existing one and only its own lower count matters.
    """
    cands = sorted(range(1, 1 << n), key=size_order)
    chosen: list[int] = []

    def go(idx, members):
        if idx == len(cands):
            yield Family.of(n, [0] + chosen)
            return
        S = cands[idx]
        if _below_counts_ok(members, S):
            chosen.append(S)
            yield from go(idx + 1, members | 1 << S)
            chosen.pop()
        yield from go(idx + 1, members)

    yield from go(0, 0)


def random_diamond_free(n: int, rng: random.Random, density: float | None = None) -> Family:
    """Random diamond-free family containing the empty set.

    Sets are visited in random order and kept with probability ``density``
    whenever the family stays diamond-free.
    """
    p = rng.uniform(0.2, 1.0) if density is None else density
    cands = list(range(1, 1 << n))
    rng.shuffle(cands)
    members = 1  # bit 0: the empty set
    below = {}  # member -> number of nonempty members strictly inside it
    for S in cands:
        if rng.random() >= p:
            continue
        if not _below_counts_ok(members & ~1, S):
            continue
        # S would sit inside existing supersets: each may have had none below
        supers = [T for T in below if T & S == S and T != S]
        if any(below[T] >= 1 for T in supers):
            continue
        below[S] = 0
        A = (S - 1) & S
        while A:
            if members >> A & 1:
                below[S] += 1
            A = (A - 1) & S
        for T in supers:
            below[T] += 1
        members |= 1 << S
    return Family.of(n, [S for S in range(1 << n) if members >> S & 1])


def random_families(ns, count: int, seed: int) -> list[Family]:
    """``count`` families spread round-robin over the universe sizes ``ns``."""
    rng = random.Random(seed)
    ns = list(ns)
    return [random_diamond_free(ns[i % len(ns)], rng) for i in range(count)]


def random_graph(v: int, rng: random.Random, p: float | None = None) -> Graph:
    p = rng.random() if p is None else p
    edges = [(a, b) for b in range(v) for a in range(b) if rng.random() < p]
    return Graph.from_edges(v, edges)


def random_graphs(count: int, seed: int, v_min: int = 4, v_max: int = 16) -> list[Graph]:
    rng = random.Random(seed)
    return [random_graph(rng.randint(v_min, v_max), rng) for _ in range(count)]


def random_structure(rng: random.Random, v_min: int = 4, v_max: int = 8) -> tuple[int, StructureW]:
    """(n, S) with v_min <= v <= v_max, v <= n <= 3v, and n - v bipartitions."""
    v = rng.randint(v_min, v_max)
    n = rng.randint(max(v, 4), 3 * v)
    G = random_graph(v, rng)
    parts = tuple(Bipartition.from_x(v, rng.getrandbits(v) if v else 0) for _ in range(n - v))
    return n, StructureW(G, parts)


def random_structures(count: int, seed: int, v_min: int = 4, v_max: int = 8) -> list[tuple[int, StructureW]]:
    rng = random.Random(seed)
    return [random_structure(rng, v_min, v_max) for _ in range(count)]
