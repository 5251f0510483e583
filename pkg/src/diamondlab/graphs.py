"""Graph structure of a diamond-free family and the bound f(n, G, W).

Vertices are 0..v-1; ``adj[u]`` is the neighbour bitmask of u.  A structure
pairs a graph with one ordered bipartition (X_w, Y_w) per singleton w.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    BadDimensions,
    EmptySetMissing,
    FormatError,
    NotDiamondFree,
    TooFewVertices,
    TooManyVertices,
    UniverseTooLarge,
)
from .lattice import Family, falling, popcount, psi_census

MAX_VERTICES = 32
MAX_BRACKET_VERTICES = 22


@dataclass(frozen=True)
class Graph:
    v: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.v <= MAX_VERTICES:
            raise TooManyVertices(f"v={self.v} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.v:
            raise ValueError("adjacency length must equal v")
        for u, nb in enumerate(self.adj):
            if nb >> u & 1:
                raise ValueError("graph must be irreflexive")
            if nb >> self.v:
                raise ValueError("neighbour outside vertex set")
            for w in range(self.v):
                if nb >> w & 1 and not self.adj[w] >> u & 1:
                    raise ValueError("graph must be symmetric")

    @classmethod
    def from_edges(cls, v: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * v
        for a, b in edges:
            if a == b:
                raise ValueError("loops are not allowed")
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        return cls(v, tuple(adj))

    @classmethod
    def empty(cls, v: int) -> "Graph":
        return cls(v, (0,) * v)

    @classmethod
    def complete(cls, v: int) -> "Graph":
        full = (1 << v) - 1
        return cls(v, tuple(full ^ (1 << u) for u in range(v)))

    @property
    def full(self) -> int:
        return (1 << self.v) - 1

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.adj[a] >> b & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.v) for b in range(a + 1, self.v) if self.adj[a] >> b & 1]

    def edge_count(self, mask: int | None = None) -> int:
        mask = self.full if mask is None else mask
        total = 0
        m = mask
        while m:
            low = m & -m
            u = low.bit_length() - 1
            total += popcount(self.adj[u] & mask)
            m ^= low
        return total // 2

    def nonedge_count(self, mask: int | None = None) -> int:
        mask = self.full if mask is None else mask
        k = popcount(mask)
        return k * (k - 1) // 2 - self.edge_count(mask)

    def degree(self, u: int) -> int:
        return popcount(self.adj[u])

    def nondegree(self, u: int) -> int:
        return self.v - 1 - self.degree(u)

    def complement(self) -> "Graph":
        full = self.full
        return Graph(self.v, tuple(full ^ nb ^ (1 << u) for u, nb in enumerate(self.adj)))

    def induced(self, vertices: Sequence[int]) -> "Graph":
        idx = {u: i for i, u in enumerate(vertices)}
        edges = [(idx[a], idx[b]) for a, b in combinations(vertices, 2) if self.has_edge(a, b)]
        return Graph.from_edges(len(vertices), edges)


@dataclass(frozen=True)
class Bipartition:
    X: int
    Y: int

    @classmethod
    def from_x(cls, v: int, X: int) -> "Bipartition":
        full = (1 << v) - 1
        return cls(X & full, full & ~X)

    def check(self, v: int) -> None:
        if self.X & self.Y or (self.X | self.Y) != (1 << v) - 1:
            raise BadDimensions("X and Y must partition the vertex set")


@dataclass(frozen=True)
class StructureW:
    """Graph on V plus one bipartition per w in W.

    ``vertices`` and ``singletons`` record the ground-set elements when the
    structure was extracted from a family; they are informational.
    """

    graph: Graph
    parts: tuple[Bipartition, ...]
    vertices: tuple[int, ...] = ()
    singletons: tuple[int, ...] = ()

    def __post_init__(self):
        for p in self.parts:
            p.check(self.graph.v)


@dataclass(frozen=True)
class SubgraphCensus:
    alpha: tuple[int, int, int, int]
    beta: tuple[int, int, int, int, int, int, int]


def subgraph_census(G: Graph) -> SubgraphCensus:
    """Counts of induced 3- and 4-vertex subgraphs by number of edges."""
    alpha = [0] * 4
    beta = [0] * 7
    adj = G.adj
    for a, b, c in combinations(range(G.v), 3):
        alpha[(adj[a] >> b & 1) + (adj[a] >> c & 1) + (adj[b] >> c & 1)] += 1
    for a, b, c, d in combinations(range(G.v), 4):
        e = (
            (adj[a] >> b & 1) + (adj[a] >> c & 1) + (adj[a] >> d & 1)
            + (adj[b] >> c & 1) + (adj[b] >> d & 1) + (adj[c] >> d & 1)
        )
        beta[e] += 1
    return SubgraphCensus(tuple(alpha), tuple(beta))


def extract_structure(F: Family) -> StructureW:
    """W = singletons of F, G = 2-sets of F inside V = [n] - W, X_w = {x : {x,w} in F}."""
    if 0 not in F:
        raise EmptySetMissing("the family must contain the empty set")
    n = F.n
    W = [e for e in range(n) if (1 << e) in F]
    V = [e for e in range(n) if (1 << e) not in F]
    idx = {e: i for i, e in enumerate(V)}
    edges = [(idx[a], idx[b]) for a, b in combinations(V, 2) if (1 << a | 1 << b) in F]
    G = Graph.from_edges(len(V), edges)
    parts = []
    for w in W:
        X = 0
        for x in V:
            if (1 << x | 1 << w) in F:
                X |= 1 << idx[x]
        parts.append(Bipartition.from_x(len(V), X))
    return StructureW(G, tuple(parts), tuple(e + 1 for e in V), tuple(e + 1 for e in W))


def _term(num: int, den: int) -> Fraction:
    if num == 0:
        return Fraction(0)
    if den == 0:
        raise BadDimensions("nonzero term over a vanishing falling factorial")
    return Fraction(num, den)


def _check_dims(n: int, S: StructureW) -> None:
    v = S.graph.v
    if v > n:
        raise BadDimensions(f"v={v} exceeds n={n}")
    if len(S.parts) > n - v:
        raise BadDimensions(f"{len(S.parts)} bipartitions but only n - v = {n - v} slots")


def bracket(n: int, G: Graph, part: Bipartition) -> Fraction:
    """(|X|-|Y|)/(n)_2 + (4 ebar(Y) - 2 ebar(X))/(n)_3 for one bipartition."""
    a = popcount(part.X) - popcount(part.Y)
    b = 4 * G.nonedge_count(part.Y) - 2 * G.nonedge_count(part.X)
    return _term(a, falling(n, 2)) + _term(b, falling(n, 3))


def structure_terms(n: int, census: SubgraphCensus) -> Fraction:
    a, b = census.alpha, census.beta
    return _term(2 * a[1] - 2 * a[2], falling(n, 3)) + _term(6 * b[0], falling(n, 4))


def f_value(n: int, S: StructureW) -> Fraction:
    """The bound f(n, G, W) evaluated exactly."""
    _check_dims(n, S)
    total = structure_terms(n, subgraph_census(S.graph))
    for part in S.parts:
        total += bracket(n, S.graph, part)
    return total


def epsilon_from_counts(n: int, v: int, y_size: int, ebar_h: int, ebar_y: int, ebar_x: int) -> Fraction:
    """Per-(w, H) correction term, from |Y cap H| and the nonedge counts inside H."""
    if y_size == 0:
        return Fraction(0)
    lead = Fraction(v * y_size, 2 * falling(n, 2))
    tail = Fraction(falling(v, 2) * (2 * ebar_h + 4 * ebar_y - 2 * ebar_x), 12 * falling(n, 3))
    return tail - lead


def h_density(n: int, G: Graph, H: int, parts: Sequence[Bipartition]) -> Fraction:
    """Summand of f for one 4-set H of vertices, with the epsilon terms left explicit."""
    v = G.v
    verts = [u for u in range(v) if H >> u & 1]
    alpha = [0] * 4
    for t in combinations(verts, 3):
        alpha[G.edge_count(sum(1 << u for u in t))] += 1
    e_h = G.edge_count(H)
    ebar_h = 6 - e_h
    n2, n3, n4 = falling(n, 2), falling(n, 3), falling(n, 4)
    w = len(parts)
    d = Fraction(falling(v, 3) * (alpha[1] - alpha[2]), 12 * n3)
    if e_h == 0:
        d += Fraction(falling(v, 4), 4 * n4)
    d += Fraction(w * v, n2) - Fraction(w * falling(v, 2) * ebar_h, 6 * n3)
    for part in parts:
        Y = part.Y & H
        X = part.X & H
        d += epsilon_from_counts(n, v, popcount(Y), ebar_h, G.nonedge_count(Y), G.nonedge_count(X))
    return d


def per_H_sum(n: int, S: StructureW) -> Fraction:
    """Average over all 4-sets H of V of the per-H summand; equals f_value."""
    G = S.graph
    if G.v < 4:
        raise TooFewVertices("the per-4-set rewrite needs v >= 4")
    _check_dims(n, S)
    total = Fraction(0)
    for quad in combinations(range(G.v), 4):
        H = sum(1 << u for u in quad)
        total += h_density(n, G, H, S.parts)
    return total / math.comb(G.v, 4)


def nonedge_table(G: Graph) -> list[int]:
    """ebar(mask) for every vertex subset, by adding one vertex at a time."""
    size = 1 << G.v
    e = [0] * size
    ebar = [0] * size
    for mask in range(1, size):
        low = mask & -mask
        u = low.bit_length() - 1
        rest = mask ^ low
        e[mask] = e[rest] + popcount(G.adj[u] & rest)
        k = popcount(mask)
        ebar[mask] = k * (k - 1) // 2 - e[mask]
    return ebar


def bracket_profile(G: Graph) -> list[tuple[int, int, int]]:
    """(|X|-|Y|, 4 ebar(Y) - 2 ebar(X), X) for every X, full mask first."""
    if G.v > MAX_BRACKET_VERTICES:
        raise TooManyVertices(f"bipartition enumeration limited to v <= {MAX_BRACKET_VERTICES}")
    full = G.full
    ebar = nonedge_table(G)
    out = []
    for X in range(full, -1, -1):
        Y = full ^ X
        out.append((2 * popcount(X) - G.v, 4 * ebar[Y] - 2 * ebar[X], X))
    return out


def max_bracket(n: int, G: Graph) -> tuple[Fraction, Bipartition]:
    """Largest single-w bracket over all 2^v bipartitions and a maximiser.

    Ties go to the numerically largest X.
    """
    best = None
    best_x = 0
    for a, b, X in bracket_profile(G):
        val = _term(a, falling(n, 2)) + _term(b, falling(n, 3))
        if best is None or val > best:
            best, best_x = val, X
    return best, Bipartition.from_x(G.v, best_x)


def worst_case_f(n: int, G: Graph) -> Fraction:
    """sup over all W of f(n, G, W): f is affine in each of the n - v bracket slots."""
    if G.v > n:
        raise BadDimensions(f"v={G.v} exceeds n={n}")
    best, _ = max_bracket(n, G)
    return structure_terms(n, subgraph_census(G)) + (n - G.v) * best


def handshake_sides(G: Graph, part: Bipartition) -> tuple[int, int]:
    """Both sides of sum_Y deg + sum_X nondeg = |X||Y| + 2 e(Y) + 2 ebar(X)."""
    left = sum(G.degree(u) for u in range(G.v) if part.Y >> u & 1)
    left += sum(G.nondegree(u) for u in range(G.v) if part.X >> u & 1)
    right = popcount(part.X) * popcount(part.Y) + 2 * G.edge_count(part.Y) + 2 * G.nonedge_count(part.X)
    return left, right


@dataclass(frozen=True)
class PsiBoundsReport:
    n: int
    psi1: int
    psi3: int
    psi1_scaled: Fraction
    psi1_lower: Fraction
    gap_scaled: Fraction
    gap_upper: Fraction

    @property
    def psi1_ok(self) -> bool:
        return self.psi1_scaled >= self.psi1_lower

    @property
    def gap_ok(self) -> bool:
        return self.gap_scaled <= self.gap_upper

    @property
    def ok(self) -> bool:
        return self.psi1_ok and self.gap_ok


def psi_bounds_check(F: Family, assume_diamond_free: bool = False) -> PsiBoundsReport:
    """Exact chain census against the lower bound on Psi_1 and the upper bound on Psi_3 - Psi_1.

    Both sides are scaled by 1/(n-3)!.
    """
    from .patterns import is_diamond_free

    n = F.n
    if 0 not in F:
        raise EmptySetMissing("the family must contain the empty set")
    if n > 9:
        raise UniverseTooLarge("psi_bounds_check enumerates chains; n <= 9")
    if n < 3:
        raise BadDimensions("the chain-type bounds need n >= 3")
    if not assume_diamond_free and not is_diamond_free(F):
        raise NotDiamondFree("psi bounds only hold for diamond-free families")
    census = psi_census(F)
    S = extract_structure(F)
    G = S.graph
    sub = subgraph_census(G)
    a, b = sub.alpha, sub.beta
    W = len(S.parts)
    scale = math.factorial(n - 3)
    lower = 2 * a[2]
    upper = Fraction(2 * (a[1] - a[2]))
    if b[0]:
        upper += Fraction(6 * b[0], n - 3)
    for p in S.parts:
        x, y = popcount(p.X), popcount(p.Y)
        ebar_x, ebar_y = G.nonedge_count(p.X), G.nonedge_count(p.Y)
        lower += x * y + 2 * G.edge_count(p.Y) + 2 * ebar_x + (W - 1) * y
        upper += (x - y) * (n - 2) + 4 * ebar_y - 2 * ebar_x
    return PsiBoundsReport(
        n=n,
        psi1=census[1],
        psi3=census[3],
        psi1_scaled=Fraction(census[1], scale),
        psi1_lower=Fraction(lower),
        gap_scaled=Fraction(census[3] - census[1], scale),
        gap_upper=upper,
    )


def parse_graph(text: str) -> tuple[Graph, tuple[Bipartition, ...]]:
    """Graph text format: ``v=<int>``, then ``i j`` edge lines (1-indexed).

    Lines ``X a b ...`` add one bipartition with the listed vertices in X
    (a bare ``X`` means X is empty); they turn the file into a structure.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("v="):
        raise FormatError("graph file must start with 'v=<int>'")
    try:
        v = int(lines[0][2:])
    except ValueError as exc:
        raise FormatError(f"bad header {lines[0]!r}") from exc
    if not 0 <= v <= MAX_VERTICES:
        raise FormatError(f"v={v} outside 0..{MAX_VERTICES}")
    edges = []
    xs = []
    for ln in lines[1:]:
        toks = ln.split()
        try:
            if toks[0] == "X":
                verts = [int(t) for t in toks[1:]]
                if any(not 1 <= u <= v for u in verts):
                    raise FormatError(f"vertex out of range in {ln!r}")
                xs.append(sum(1 << (u - 1) for u in verts))
                continue
            if len(toks) != 2:
                raise FormatError(f"bad edge line {ln!r}")
            a, b = int(toks[0]), int(toks[1])
        except ValueError as exc:
            raise FormatError(f"bad line {ln!r}") from exc
        if not (1 <= a <= v and 1 <= b <= v) or a == b:
            raise FormatError(f"bad edge {ln!r}")
        edges.append((a - 1, b - 1))
    G = Graph.from_edges(v, edges)
    return G, tuple(Bipartition.from_x(v, X) for X in xs)


def graph_to_text(G: Graph, parts: Sequence[Bipartition] = ()) -> str:
    lines = [f"v={G.v}"]
    lines.extend(f"{a + 1} {b + 1}" for a, b in G.edges())
    for p in parts:
        lines.append(" ".join(["X"] + [str(u + 1) for u in range(G.v) if p.X >> u & 1]))
    return "\n".join(lines) + "\n"
