"""Subsets of [n] as bitmasks, families, Lubell values and full-chain censuses.

A set S of [n] = {1, ..., n} is stored as an int whose bit i is set iff
element i+1 is in S.  All values are exact: ``fractions.Fraction`` for
rationals, Python ints for counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .errors import FormatError, UniverseTooLarge

MAX_FAMILY_N = 24
MAX_CHAIN_N = 10


def popcount(x: int) -> int:
    return bin(x).count("1")


def mask_of(elements: Iterable[int]) -> int:
    """Bitmask of a set given by its 1-indexed elements."""
    m = 0
    for e in elements:
        if e < 1:
            raise FormatError(f"elements are 1-indexed, got {e}")
        m |= 1 << (e - 1)
    return m


def elements_of(mask: int) -> list[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def format_set(mask: int) -> str:
    if mask == 0:
        return "{}"
    return ",".join(str(e) for e in elements_of(mask))


def size_order(mask: int) -> tuple[int, int]:
    """Sort key: by cardinality, then by bitmask value."""
    return (popcount(mask), mask)


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def falling(n, k: int):
    """Falling factorial (n)_k = n(n-1)...(n-k+1); (n)_0 = 1.  ``n`` may be a Fraction."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = 1
    for i in range(k):
        out *= n - i
    return out


def sigma(n: int, k: int) -> int:
    """Sum of the k largest binomial coefficients C(n, l)."""
    return sum(sorted((math.comb(n, l) for l in range(n + 1)), reverse=True)[:k])


@dataclass(frozen=True)
class Family:
    """A deduplicated family of subsets of [n], members strictly increasing as ints."""

    n: int
    members: tuple[int, ...]
    _index: frozenset = field(default=frozenset(), init=False, repr=False, compare=False)

    def __post_init__(self):
        if not 0 <= self.n <= MAX_FAMILY_N:
            raise UniverseTooLarge(f"n={self.n} outside 0..{MAX_FAMILY_N}")
        ms = self.members
        top = 1 << self.n
        for a, b in zip(ms, ms[1:]):
            if a >= b:
                raise ValueError("members must be strictly increasing")
        if ms and (ms[0] < 0 or ms[-1] >= top):
            raise ValueError(f"member outside 2^[{self.n}]")
        object.__setattr__(self, "_index", frozenset(ms))

    @classmethod
    def of(cls, n: int, sets: Iterable[int]) -> "Family":
        return cls(n, tuple(sorted(set(sets))))

    @classmethod
    def from_elements(cls, n: int, sets: Iterable[Iterable[int]]) -> "Family":
        return cls.of(n, (mask_of(s) for s in sets))

    def __contains__(self, mask: int) -> bool:
        return mask in self._index

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def by_size(self) -> list[int]:
        return sorted(self.members, key=size_order)

    def with_set(self, mask: int) -> "Family":
        return Family.of(self.n, self.members + (mask,))

    def to_text(self) -> str:
        lines = [f"n={self.n}"]
        lines.extend(format_set(m) for m in self.by_size())
        return "\n".join(lines) + "\n"

    def __str__(self) -> str:
        return "{" + ", ".join("{" + format_set(m).strip("{}") + "}" for m in self.by_size()) + "}"


def parse_family(text: str) -> Family:
    """Parse the family text format: ``n=<int>`` then one set per line."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("n="):
        raise FormatError("family file must start with 'n=<int>'")
    try:
        n = int(lines[0][2:])
    except ValueError as exc:
        raise FormatError(f"bad header {lines[0]!r}") from exc
    if not 0 <= n <= MAX_FAMILY_N:
        raise FormatError(f"n={n} outside 0..{MAX_FAMILY_N}")
    sets = []
    for ln in lines[1:]:
        body = ln.strip("{}").strip()
        if not body:
            sets.append(0)
            continue
        try:
            elems = [int(tok) for tok in body.split(",")]
        except ValueError as exc:
            raise FormatError(f"bad set line {ln!r}") from exc
        if any(e < 1 or e > n for e in elems):
            raise FormatError(f"element out of range in {ln!r}")
        sets.append(mask_of(elems))
    return Family.of(n, sets)


def lubell(F: Family) -> Fraction:
    """Sum over members of 1 / C(n, |member|)."""
    n = F.n
    total = Fraction(0)
    for m in F.members:
        total += Fraction(1, math.comb(n, popcount(m)))
    return total


def layer(n: int, k: int) -> list[int]:
    """All k-subsets of [n] as masks, in increasing mask order."""
    if k < 0 or k > n:
        return []
    return sorted(sum(1 << i for i in c) for c in combinations(range(n), k))


def middle_layer_sizes(n: int, k: int) -> range:
    # floor variant: sizes floor((n-k+1)/2) .. floor((n+k-1)/2)
    if not 1 <= k <= n + 1:
        raise ValueError(f"need 1 <= k <= n+1, got k={k}, n={n}")
    return range((n - k + 1) // 2, (n + k - 1) // 2 + 1)


def middle_layers(n: int, k: int) -> Family:
    sets = []
    for s in middle_layer_sizes(n, k):
        sets.extend(layer(n, s))
    return Family.of(n, sets)


@dataclass(frozen=True)
class PsiCensus:
    """counts[i] = number of full chains of B_n meeting the family exactly i times."""

    n: int
    counts: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        return self.counts[i] if 0 <= i < len(self.counts) else 0

    @property
    def total(self) -> int:
        return sum(self.counts)

    def average_hits(self) -> Fraction:
        return Fraction(sum(i * c for i, c in enumerate(self.counts)), math.factorial(self.n))


def psi_census(F: Family, method: str = "dp") -> PsiCensus:
    """Census of full chains by number of members hit.

    ``method="dp"`` sweeps the lattice bottom-up, keeping for every set S a
    histogram of hit counts over the |S|! saturated chains from the empty
    set to S.  ``method="permutations"`` walks all n! permutations with a
    prefix-mask accumulator and serves as the independent oracle.
    """
    n = F.n
    if n > MAX_CHAIN_N:
        raise UniverseTooLarge(f"chain census needs n <= {MAX_CHAIN_N}, got {n}")
    if method == "permutations":
        return _census_permutations(F)
    if method != "dp":
        raise ValueError(f"unknown census method {method!r}")
    width = n + 2
    inF = F._index
    hist: list[list[int] | None] = [None] * (1 << n)
    start = [0] * width
    start[1 if 0 in inF else 0] = 1
    hist[0] = start
    for mask in sorted(range(1, 1 << n), key=popcount):
        acc = [0] * width
        bits = mask
        while bits:
            low = bits & -bits
            prev = hist[mask ^ low]
            for h in range(width):
                acc[h] += prev[h]
            bits ^= low
        if mask in inF:
            acc = [0] + acc[:-1]
        hist[mask] = acc
    return PsiCensus(n, tuple(hist[(1 << n) - 1]))


def _census_permutations(F: Family) -> PsiCensus:
    n = F.n
    inF = F._index
    counts = [0] * (n + 2)
    base = 1 if 0 in inF else 0
    for perm in permutations(range(n)):
        hits = base
        prefix = 0
        for i in perm:
            prefix |= 1 << i
            if prefix in inF:
                hits += 1
        counts[hits] += 1
    return PsiCensus(n, tuple(counts))


def is_antichain(sets: Sequence[int]) -> bool:
    for a, b in combinations(sets, 2):
        if a & b == a or a & b == b:
            return False
    return True
