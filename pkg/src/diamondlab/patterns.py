"""Small pattern posets and weak-subposet containment in set families."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .errors import BadParameter
from .lattice import Family, middle_layers, popcount, size_order

MAX_PATTERN = 8


@dataclass(frozen=True)
class PatternPoset:
    """Strict order on elements 0..size-1; ``less[i]`` is the bitmask of j with i < j."""

    name: str
    size: int
    less: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.size <= MAX_PATTERN:
            raise BadParameter(f"pattern size must be 1..{MAX_PATTERN}")
        for i in range(self.size):
            if self.less[i] >> i & 1:
                raise BadParameter("relation must be irreflexive")
            for j in range(self.size):
                if self.less[i] >> j & 1:
                    if self.less[j] >> i & 1:
                        raise BadParameter("relation must be antisymmetric")
                    if self.less[j] & ~self.less[i]:
                        raise BadParameter("relation must be transitive")

    def lt(self, i: int, j: int) -> bool:
        return bool(self.less[i] >> j & 1)

    def below(self, j: int) -> list[int]:
        return [i for i in range(self.size) if self.less[i] >> j & 1]

    def height(self) -> int:
        """Number of elements in a longest chain."""
        memo: dict[int, int] = {}

        def up(i):
            if i not in memo:
                memo[i] = 1 + max((up(j) for j in range(self.size) if self.lt(i, j)), default=0)
            return memo[i]

        return max(up(i) for i in range(self.size))

    def linear_extension(self) -> list[int]:
        # elements with more predecessors come later; stable on index
        return sorted(range(self.size), key=lambda j: (len(self.below(j)), j))


def _closure(size: int, pairs: Sequence[tuple[int, int]]) -> tuple[int, ...]:
    less = [0] * size
    for a, b in pairs:
        less[a] |= 1 << b
    changed = True
    while changed:
        changed = False
        for i in range(size):
            acc = less[i]
            for j in range(size):
                if less[i] >> j & 1:
                    acc |= less[j]
            if acc != less[i]:
                less[i] = acc
                changed = True
    return tuple(less)


def make_pattern(kind: str, k: int | None = None) -> PatternPoset:
    """Build ``diamond``, ``chain`` (k elements), ``fork`` (V_k) or ``k_diamond``."""
    if kind == "diamond":
        return PatternPoset("diamond", 4, _closure(4, [(0, 1), (0, 2), (1, 3), (2, 3)]))
    if kind == "chain":
        if k is None or not 1 <= k <= MAX_PATTERN:
            raise BadParameter(f"chain needs 1 <= k <= {MAX_PATTERN}")
        return PatternPoset(f"P{k}", k, _closure(k, [(i, i + 1) for i in range(k - 1)]))
    if kind == "fork":
        if k is None or not 2 <= k <= MAX_PATTERN - 1:
            raise BadParameter(f"fork needs 2 <= r <= {MAX_PATTERN - 1}")
        return PatternPoset(f"V{k}", k + 1, _closure(k + 1, [(0, i) for i in range(1, k + 1)]))
    if kind == "k_diamond":
        if k is None or not 1 <= k <= MAX_PATTERN - 2:
            raise BadParameter(f"k-diamond needs 1 <= k <= {MAX_PATTERN - 2}")
        top = k + 1
        pairs = [(0, i) for i in range(1, k + 1)] + [(i, top) for i in range(1, k + 1)]
        return PatternPoset(f"D{k}", k + 2, _closure(k + 2, pairs))
    raise BadParameter(f"unknown pattern kind {kind!r}")


_LITERAL = re.compile(r"^(diamond|B2|[PVD])(\d*)$")


def parse_pattern(text: str) -> PatternPoset:
    """CLI literals: ``diamond`` (or ``B2``), ``P4``, ``V3``, ``D5``."""
    m = _LITERAL.match(text.strip())
    if not m:
        raise BadParameter(f"unrecognised pattern {text!r}")
    head, num = m.groups()
    if head in ("diamond", "B2"):
        if num:
            raise BadParameter(f"unrecognised pattern {text!r}")
        return make_pattern("diamond")
    if not num:
        raise BadParameter(f"pattern {text!r} needs a size")
    kind = {"P": "chain", "V": "fork", "D": "k_diamond"}[head]
    return make_pattern(kind, int(num))


def _proper_subset(a: int, b: int) -> bool:
    return a != b and a & b == a


def find_embedding(sets: Sequence[int], P: PatternPoset, fixed: dict[int, int] | None = None):
    """Order-preserving injection of P into ``sets`` as a list of images, or None.

    Weak containment: u < w in P forces image(u) to be a proper subset of
    image(w); incomparable pattern elements may land on comparable sets.
    ``fixed`` pins some pattern elements to given sets.
    """
    sets = sorted(sets, key=size_order)
    order = P.linear_extension()
    fixed = fixed or {}
    images: list[int | None] = [None] * P.size
    used: set[int] = set()
    for p, s in fixed.items():
        if s in used:
            return None
        images[p] = s
        used.add(s)
    for p in fixed:
        for q in range(P.size):
            if images[q] is None:
                continue
            if P.lt(p, q) and not _proper_subset(images[p], images[q]):
                return None
            if P.lt(q, p) and not _proper_subset(images[q], images[p]):
                return None
    # minimum set size an image needs: number of elements below it in a chain
    depth = [0] * P.size
    for j in order:
        depth[j] = max((depth[i] + 1 for i in P.below(j)), default=0)
    free = [p for p in order if p not in fixed]
    preds = {p: P.below(p) for p in free}
    succs = {p: [q for q in range(P.size) if P.lt(p, q)] for p in free}

    def ok(p, s):
        for q in preds[p]:
            iq = images[q]
            if iq is not None and not _proper_subset(iq, s):
                return False
        for q in succs[p]:
            iq = images[q]
            if iq is not None and not _proper_subset(s, iq):
                return False
        return True

    def go(idx):
        if idx == len(free):
            return True
        p = free[idx]
        need = depth[p]
        for s in sets:
            if s in used or popcount(s) < need or not ok(p, s):
                continue
            images[p] = s
            used.add(s)
            if go(idx + 1):
                return True
            used.discard(s)
            images[p] = None
        return False

    if go(0):
        return list(images)
    return None


def contains_pattern(F: Family, P: PatternPoset):
    """(True, witness) if P embeds weakly in F, else (False, None).

    The witness maps pattern element i to the index of its image in ``F.members``.
    """
    emb = find_embedding(F.members, P)
    if emb is None:
        return False, None
    pos = {m: i for i, m in enumerate(F.members)}
    return True, {i: pos[s] for i, s in enumerate(emb)}


def is_diamond_free(F: Family) -> bool:
    """No pair A < D of members with two or more members strictly between them."""
    ms = F.by_size()
    for d_idx, D in enumerate(ms):
        below = [A for A in ms[:d_idx] if _proper_subset(A, D)]
        for A in below:
            between = 0
            for B in below:
                if _proper_subset(A, B):
                    between += 1
                    if between >= 2:
                        return False
    return True


def longest_chain(F: Family) -> int:
    """Number of members in a longest chain of F (DAG longest path)."""
    ms = F.by_size()
    best = [1] * len(ms)
    for j, b in enumerate(ms):
        for i in range(j):
            if _proper_subset(ms[i], b) and best[i] + 1 > best[j]:
                best[j] = best[i] + 1
    return max(best, default=0)


def e_value(P: PatternPoset, n: int) -> int:
    """Largest m such that the m middle layers of B_n do not contain P."""
    if n > 12:
        raise BadParameter("e_value is limited to n <= 12")
    for m in range(1, n + 2):
        if contains_pattern(middle_layers(n, m), P)[0]:
            return m - 1
    return n + 1
