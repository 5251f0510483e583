"""Canonical forms for small graphs and enumeration of isomorphism classes.

A graph is encoded by its upper-triangle adjacency bits, pair (i, j) with
i < j at position ``pair_index``.  The canonical code is the largest code
over vertex orders that respect a colour refinement; refinement colours are
isomorphism invariant, so only permutations inside colour cells are tried.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product

from .graphs import Graph


def pair_positions(v: int) -> dict[tuple[int, int], int]:
    pos = {}
    k = 0
    for j in range(v):
        for i in range(j):
            pos[(i, j)] = k
            k += 1
    return pos


def encode(G: Graph, order=None) -> int:
    """Adjacency code of G with vertex ``order[k]`` placed at position k."""
    order = range(G.v) if order is None else order
    code = 0
    k = 0
    for j in range(G.v):
        oj = order[j]
        for i in range(j):
            if G.adj[order[i]] >> oj & 1:
                code |= 1 << k
            k += 1
    return code


def decode(v: int, code: int) -> Graph:
    edges = [pair for pair, k in pair_positions(v).items() if code >> k & 1]
    return Graph.from_edges(v, edges)


def refine(G: Graph) -> list[int]:
    """Stable colouring by iterated (colour, sorted neighbour colours) signatures."""
    colors = [G.degree(u) for u in range(G.v)]
    while True:
        sigs = [
            (colors[u], tuple(sorted(colors[w] for w in range(G.v) if G.adj[u] >> w & 1)))
            for u in range(G.v)
        ]
        ranks = {s: r for r, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def canonical_code(G: Graph) -> int:
    colors = refine(G)
    cells = []
    for c in sorted(set(colors)):
        cells.append([u for u in range(G.v) if colors[u] == c])
    best = -1
    for choice in product(*(permutations(cell) for cell in cells)):
        order = [u for cell in choice for u in cell]
        code = encode(G, order)
        if code > best:
            best = code
    return best


def canonical_form(G: Graph) -> Graph:
    return decode(G.v, canonical_code(G))


def labeled_graphs(v: int):
    """Every labelled graph on v vertices, in code order."""
    pos = pair_positions(v)
    for code in range(1 << len(pos)):
        yield decode(v, code)


@lru_cache(maxsize=None)
def class_codes(v: int) -> tuple[int, ...]:
    """Sorted canonical codes of all isomorphism classes on v vertices."""
    if v == 0:
        return (0,)
    seen = set()
    for code in class_codes(v - 1):
        base = decode(v - 1, code)
        for nb in range(1 << (v - 1)):
            adj = list(base.adj) + [nb]
            for u in range(v - 1):
                if nb >> u & 1:
                    adj[u] |= 1 << (v - 1)
            seen.add(canonical_code(Graph(v, tuple(adj))))
    return tuple(sorted(seen))


def graph_classes(v: int) -> list[Graph]:
    return [decode(v, c) for c in class_codes(v)]
