"""Exhaustive and branch-and-bound searches for La(n, P) and the diamond Lubell maximum.

Both searches walk the sets of B_n in (size, mask) order and branch
include-first.  The tree is cut at a fixed depth into independent subtrees
that are searched in isolation and merged by (objective, DFS order), so the
witness and node count never depend on how many workers ran.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import partial

from ._parallel import pmap
from .errors import BadParameter, BudgetExceeded
from .lattice import Family, popcount, size_order
from .patterns import PatternPoset, find_embedding


@dataclass
class SearchConfig:
    node_budget: int | None = 20_000_000
    threads: int | None = None
    split_depth: int = 4
    require_exhaustive: bool = False


@dataclass(frozen=True)
class SearchResult:
    objective: int | Fraction
    witness: Family
    nodes_explored: int
    exhaustive: bool


class _Stop(Exception):
    pass


class _LaProblem:
    """Largest P-free family; new sets are always of maximal size so far."""

    def __init__(self, n: int, P: PatternPoset):
        self.n = n
        self.P = P
        self.candidates = sorted(range(1 << n), key=size_order)
        self.maximal = [p for p in range(P.size) if P.less[p] == 0]
        self.scale = 1
        self.base = 0
        self.floor = 0
        self.cur: list[int] = []

    def push(self, S):
        self.cur.append(S)

    def pop(self, S):
        self.cur.pop()

    def gain(self, S):
        return 1

    def feasible(self, S):
        trial = self.cur + [S]
        return all(find_embedding(trial, self.P, {p: S}) is None for p in self.maximal)

    def bound(self, value, idx):
        return value + len(self.candidates) - idx

    def family(self, sets):
        return Family.of(self.n, sets)


class _LubellStarProblem:
    """Diamond-free families containing the empty set, scored by Lubell value.

    With the empty set present, a diamond exists iff some member has two
    other nonempty members strictly inside it, so adding S only needs the
    number of current members below S.  The minimal nonempty members and
    the rest form two antichains, each of Lubell mass at most 1; the bound
    caps both, counting only remaining sets that are still addable.
    """

    def __init__(self, n: int):
        self.n = n
        self.candidates = sorted(range(1, 1 << n), key=size_order)
        # integer weights: 1/C(n,|S|) scaled by the lcm of all binomials
        self.scale = math.lcm(*(math.comb(n, k) for k in range(n + 1)))
        self.weight = [self.scale // math.comb(n, popcount(S)) for S in self.candidates]
        self._w = dict(zip(self.candidates, self.weight))
        # bit A of sub[S] is set for every nonempty proper subset A of S
        self.sub = {}
        for S in self.candidates:
            bits = 0
            A = (S - 1) & S
            while A:
                bits |= 1 << A
                A = (A - 1) & S
            self.sub[S] = bits
        self.base = self.scale
        self.floor = 2 * self.scale if n >= 2 else 0
        self.members = 0
        self.low = 0
        self.up = 0
        self._kind: list[bool] = []

    def _below(self, S):
        return (self.members & self.sub[S]).bit_count()

    def push(self, S):
        is_up = self._below(S) > 0
        self._kind.append(is_up)
        if is_up:
            self.up += self._w[S]
        else:
            self.low += self._w[S]
        self.members |= 1 << S

    def pop(self, S):
        self.members &= ~(1 << S)
        if self._kind.pop():
            self.up -= self._w[S]
        else:
            self.low -= self._w[S]

    def gain(self, S):
        return self._w[S]

    def feasible(self, S):
        return self._below(S) <= 1

    def bound(self, value, idx):
        free = minimal = 0
        members, sub = self.members, self.sub
        for S, w in zip(self.candidates[idx:], self.weight[idx:]):
            c = (members & sub[S]).bit_count()
            if c <= 1:
                free += w
                if c == 0:
                    minimal += w
        one = self.scale
        return one + min(one, self.low + minimal) + min(one, self.up + free)

    def family(self, sets):
        return Family.of(self.n, [0] + sets)


def _prefixes(problem, depth):
    """Feasible decision prefixes over the first ``depth`` candidates, include-first order."""
    out = []
    depth = min(depth, len(problem.candidates))
    cur: list[int] = []

    def go(idx, value):
        if idx == depth:
            out.append((list(cur), value))
            return
        S = problem.candidates[idx]
        if problem.feasible(S):
            cur.append(S)
            problem.push(S)
            go(idx + 1, value + problem.gain(S))
            problem.pop(S)
            cur.pop()
        go(idx + 1, value)

    go(0, problem.base)
    return out, depth


def _run_subtree(problem, depth, budget, prefix):
    cur, value = prefix
    cur = list(cur)
    for S in cur:
        problem.push(S)
    cands = problem.candidates
    state = {"nodes": 0, "best": None, "best_value": None}

    def dfs(idx, value):
        state["nodes"] += 1
        if budget is not None and state["nodes"] > budget:
            raise _Stop
        if idx == len(cands):
            if state["best"] is None or value > state["best_value"]:
                state["best"] = list(cur)
                state["best_value"] = value
            return
        b = problem.bound(value, idx)
        if b < problem.floor:
            return
        if state["best"] is not None and b <= state["best_value"]:
            return
        S = cands[idx]
        if problem.feasible(S):
            cur.append(S)
            problem.push(S)
            dfs(idx + 1, value + problem.gain(S))
            problem.pop(S)
            cur.pop()
        dfs(idx + 1, value)

    complete = True
    try:
        dfs(depth, value)
    except _Stop:
        complete = False
        state["nodes"] = budget
    finally:
        for S in reversed(cur):
            problem.pop(S)
    return state["best_value"], state["best"], state["nodes"], complete


def _search(problem, config: SearchConfig) -> SearchResult:
    prefixes, depth = _prefixes(problem, config.split_depth)
    budget = config.node_budget
    per = None if budget is None else max(1, -(-budget // len(prefixes)))
    parts = pmap(partial(_run_subtree, problem, depth, per), prefixes, config.threads)
    best_value, best, nodes, complete = None, None, 0, True
    for value, fam, cnt, done in parts:
        nodes += cnt
        complete = complete and done
        if fam is not None and (best is None or value > best_value):
            best_value, best = value, fam
    if best is None:
        best, best_value = [], problem.base
    objective = best_value if problem.scale == 1 else Fraction(best_value, problem.scale)
    result = SearchResult(objective, problem.family(best), nodes, complete)
    if config.require_exhaustive and not complete:
        raise BudgetExceeded(result)
    return result


def la(n: int, P: PatternPoset, config: SearchConfig | None = None) -> SearchResult:
    """Size of the largest P-free family of B_n, with a witness."""
    if not 0 <= n <= 6:
        raise BadParameter("la search supports 0 <= n <= 6")
    return _search(_LaProblem(n, P), config or SearchConfig())


def lubell_star(n: int, config: SearchConfig | None = None) -> SearchResult:
    """Maximum Lubell value of a diamond-free family of B_n containing the empty set."""
    if not 0 <= n <= 6:
        raise BadParameter("lubell_star search supports 0 <= n <= 6")
    return _search(_LubellStarProblem(n), config or SearchConfig())


def conjectured_lubell_star(n: int) -> Fraction:
    """2 + floor(n^2/4) / (n(n-1)), the value of the known constructions."""
    if n < 2:
        raise BadParameter("formula needs n >= 2")
    return 2 + Fraction(n * n // 4, n * (n - 1))
