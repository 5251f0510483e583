"""Corpus-level verifications that produce :class:`Report` objects.

Each check is a pure function of its arguments (seed included), and
parallel work is cut into fixed chunks before it is handed to workers,
so reports are identical for any thread count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import partial

from . import certificate as cert
from ._parallel import pmap
from .canon import labeled_graphs
from .corpus import diamond_free_with_empty, random_families, random_graphs, random_structures
from .graphs import extract_structure, f_value, per_H_sum, psi_bounds_check
from .lattice import Family, lubell, psi_census
from .report import Report

CHUNK = 64


@dataclass
class CorpusConfig:
    """Which families to check: exhaustive universes and/or a seeded random sample."""

    exhaustive_ns: tuple[int, ...] = (2, 3, 4)
    random_ns: tuple[int, ...] = (6, 7)
    count: int = 1000
    seed: int = 1
    threads: int | None = None


def corpus(cfg: CorpusConfig) -> list[Family]:
    fams: list[Family] = []
    for n in cfg.exhaustive_ns:
        fams.extend(diamond_free_with_empty(n))
    if cfg.count and cfg.random_ns:
        fams.extend(random_families(cfg.random_ns, cfg.count, cfg.seed))
    return fams


def _chunks(items, size=CHUNK):
    return [items[i:i + size] for i in range(0, len(items), size)]


def _family_checks(want_psi: bool, fams) -> list[list[dict]]:
    out = []
    for F in fams:
        bad = []
        census = psi_census(F)
        lam = lubell(F)
        fact = math.factorial(F.n)
        if lam != 2 + Fraction(census[3] - census[1], fact):
            bad.append({"kind": "chain_identity", "lubell": lam})
        if census.average_hits() != lam:
            bad.append({"kind": "average_hits", "lubell": lam})
        f = f_value(F.n, extract_structure(F))
        if lam > 2 + f:
            bad.append({"kind": "lubell_bound", "lubell": lam, "bound": 2 + f})
        if want_psi and F.n >= 3:
            r = psi_bounds_check(F, assume_diamond_free=True)
            if not r.psi1_ok:
                bad.append({"kind": "psi1_lower", "scaled": r.psi1_scaled, "bound": r.psi1_lower})
            if not r.gap_ok:
                bad.append({"kind": "psi_gap", "scaled": r.gap_scaled, "bound": r.gap_upper})
        out.append(bad)
    return out


def _run_families(name: str, fams: list[Family], want_psi: bool, threads) -> Report:
    rep = Report(name)
    parts = pmap(partial(_family_checks, want_psi), _chunks(fams), threads)
    results = [b for part in parts for b in part]
    for F, bad in zip(fams, results):
        rep.cases_checked += 1
        for b in bad:
            rep.violate(n=F.n, family=str(F), **b)
    by_n: dict[int, int] = {}
    for F in fams:
        by_n[F.n] = by_n.get(F.n, 0) + 1
    rep.values["families_per_n"] = dict(sorted(by_n.items()))
    return rep


def verify_lemma2(cfg: CorpusConfig | None = None) -> Report:
    """Chain identity, Lubell = average hits, and Lubell <= 2 + f, with the chain-type bounds."""
    cfg = cfg or CorpusConfig()
    return _run_families("lemma2", corpus(cfg), True, cfg.threads)


def verify_psi_bounds(cfg: CorpusConfig | None = None) -> Report:
    cfg = cfg or CorpusConfig(exhaustive_ns=(3, 4), random_ns=(7,), count=500)
    fams = [F for F in corpus(cfg) if 3 <= F.n <= 9]
    rep = Report("psi-bounds")
    parts = pmap(_psi_chunk, _chunks(fams), cfg.threads)
    for F, (ok1, ok2) in zip(fams, [r for p in parts for r in p]):
        rep.cases_checked += 1
        if not ok1:
            rep.violate(kind="psi1_lower", family=str(F))
        if not ok2:
            rep.violate(kind="psi_gap", family=str(F))
    return rep


def _psi_chunk(fams):
    out = []
    for F in fams:
        r = psi_bounds_check(F, assume_diamond_free=True)
        out.append((r.psi1_ok, r.gap_ok))
    return out


def _fh_chunk(items):
    return [per_H_sum(n, S) == f_value(n, S) for n, S in items]


def verify_fH(count: int = 500, seed: int = 1, threads: int | None = None) -> Report:
    """The per-4-set rewrite of f agrees with f on random structures."""
    items = random_structures(count, seed)
    rep = Report("fH")
    parts = pmap(_fh_chunk, _chunks(items, 16), threads)
    for (n, S), ok in zip(items, [r for p in parts for r in p]):
        rep.cases_checked += 1
        if not ok:
            rep.violate(n=n, v=S.graph.v, edges=S.graph.edges(), X=[p.X for p in S.parts])
    return rep


def verify_sq_identity(v_all: int = 5, count: int = 200, seed: int = 1, v_max: int = 16,
                       threads: int | None = None) -> Report:
    """The squared forms expand into per-4-set weights plus 3-vertex terms."""
    graphs = list(labeled_graphs(v_all)) + random_graphs(count, seed, 4, v_max)
    parts = pmap(cert.sq_identity_check, _chunks(graphs, 128), threads)
    rep = Report("sq-identity")
    for p in parts:
        rep.cases_checked += p.cases_checked
        rep.violations.extend(p.violations)
    rep.values["labeled_v"] = v_all
    rep.values["random_graphs"] = count
    return rep


TABLES = ("eps", "dstar", "gamma-c", "simplified", "certificate", "gmax")


def verify_tables(which: str = "all") -> list[Report]:
    runs = {
        "eps": cert.epsilon_table_check,
        "dstar": cert.dstar_table_check,
        "gamma-c": cert.gamma_c_check,
        "simplified": cert.simplified_check,
        "certificate": lambda: _merge("certificate", [cert.certificate_check(),
                                                      cert.certificate_check(derived=True)]),
        "gmax": cert.g_max_check,
    }
    names = TABLES if which == "all" else (which,)
    return [runs[name]() for name in names]


def _merge(name: str, reports: list[Report]) -> Report:
    out = Report(name)
    for r in reports:
        out.cases_checked += r.cases_checked
        out.violations.extend(r.violations)
        out.notes.extend(r.notes)
        for k, v in r.values.items():
            out.values[f"{r.table}.{k}"] = v
    return out
