"""Command-line front end.

Exit status: 0 when every requested check passes, 1 on a violation (or a
pattern found by ``check``, or an unfinished ``--exhaustive`` search),
2 on usage or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import certificate as cert
from . import verify
from .errors import BudgetExceeded, DiamondLabError
from .graphs import StructureW, extract_structure, f_value, parse_graph
from .lattice import format_set, lubell, parse_family, psi_census
from .patterns import contains_pattern, parse_pattern
from .report import Report, fmt
from .search import SearchConfig, conjectured_lubell_star, la, lubell_star

VERIFY_TARGETS = ("lemma2", "fH", "psi-bounds", "epsilon", "sq-identity", "case1", "lemma3", "tables")


class UsageError(Exception):
    pass


@dataclass
class Outcome:
    ok: bool
    payload: dict = field(default_factory=dict)
    text: str = ""
    csv: str = ""


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _need(args, name):
    val = getattr(args, name.replace("-", "_"))
    if val is None:
        raise UsageError(f"--{name} is required for '{args.command}'")
    return val


def _family(args):
    return parse_family(_read(_need(args, "family")))


def _cmd_lubell(args) -> Outcome:
    F = _family(args)
    val = lubell(F)
    return Outcome(True, {"n": F.n, "size": len(F), "lubell": fmt(val)}, fmt(val) + "\n")


def _cmd_census(args) -> Outcome:
    F = _family(args)
    c = psi_census(F)
    payload = {"n": F.n, "counts": list(c.counts), "lubell": fmt(c.average_hits())}
    text = "\n".join(f"psi[{i}] = {k}" for i, k in enumerate(c.counts)) + f"\nlubell = {fmt(c.average_hits())}\n"
    rows = "i,count\n" + "".join(f"{i},{k}\n" for i, k in enumerate(c.counts))
    return Outcome(True, payload, text, rows)


def _cmd_check(args) -> Outcome:
    F = _family(args)
    P = parse_pattern(args.pattern or "diamond")
    found, mapping = contains_pattern(F, P)
    payload = {"pattern": P.name, "contains": found}
    text = f"{P.name}: {'contains' if found else 'free'}\n"
    if found:
        members = F.members
        wit = {str(p): format_set(members[i]) for p, i in sorted(mapping.items())}
        payload["witness"] = wit
        text += "".join(f"  {p} -> {s}\n" for p, s in wit.items())
    return Outcome(not found, payload, text)


def _search_config(args) -> SearchConfig:
    return SearchConfig(
        node_budget=args.node_budget,
        threads=args.threads,
        require_exhaustive=False,
    )


def _search_outcome(args, result, extra: dict) -> Outcome:
    payload = {
        "objective": fmt(result.objective),
        "exhaustive": result.exhaustive,
        "nodes_explored": result.nodes_explored,
        "witness": [format_set(S) for S in result.witness.by_size()],
        **extra,
    }
    if args.witness_out:
        with open(args.witness_out, "w", encoding="utf-8") as fh:
            fh.write(result.witness.to_text())
    ok = result.exhaustive or not args.exhaustive
    if "matches_formula" in extra and result.exhaustive:
        ok = ok and extra["matches_formula"]
    text = "".join(f"{k} = {v if not isinstance(v, list) else ' '.join(v)}\n" for k, v in payload.items())
    return Outcome(ok, payload, text)


def _cmd_search_la(args) -> Outcome:
    P = parse_pattern(args.pattern or "diamond")
    res = la(_need(args, "n"), P, _search_config(args))
    return _search_outcome(args, res, {"pattern": P.name, "n": args.n})


def _cmd_lubell_star(args) -> Outcome:
    n = _need(args, "n")
    res = lubell_star(n, _search_config(args))
    extra = {"n": n}
    if n >= 2:
        formula = conjectured_lubell_star(n)
        extra["formula"] = fmt(formula)
        extra["matches_formula"] = res.objective == formula
    return _search_outcome(args, res, extra)


def _cmd_f_value(args) -> Outcome:
    n = _need(args, "n") if args.family is None else None
    if args.family is not None:
        F = _family(args)
        n = F.n if args.n is None else args.n
        S = extract_structure(F)
    else:
        G, parts = parse_graph(_read(_need(args, "graph")))
        S = StructureW(G, parts)
    val = f_value(n, S)
    payload = {"n": n, "v": S.graph.v, "w": len(S.parts), "f": fmt(val)}
    return Outcome(True, payload, fmt(val) + "\n")


def _verify_reports(args) -> list[Report]:
    t = args.target
    seed = args.seed if args.seed is not None else 1
    if t in ("lemma2", "psi-bounds"):
        if args.n is not None and args.exhaustive:
            cfg = verify.CorpusConfig(exhaustive_ns=(args.n,), random_ns=(), count=0, seed=seed)
        elif args.n is not None:
            cfg = verify.CorpusConfig(exhaustive_ns=(), random_ns=(args.n,),
                                      count=args.count or 500, seed=seed)
        elif t == "lemma2":
            cfg = verify.CorpusConfig(count=args.count if args.count is not None else 1000, seed=seed)
        else:
            cfg = verify.CorpusConfig(exhaustive_ns=(3, 4), random_ns=(7,),
                                      count=args.count if args.count is not None else 500, seed=seed)
        cfg.threads = args.threads
        return [verify.verify_lemma2(cfg) if t == "lemma2" else verify.verify_psi_bounds(cfg)]
    if t == "fH":
        return [verify.verify_fH(args.count or 500, seed, args.threads)]
    if t == "sq-identity":
        return [verify.verify_sq_identity(count=args.count if args.count is not None else 200,
                                          seed=seed, threads=args.threads)]
    if t == "epsilon":
        return [cert.epsilon_table_check((5, args.n_max or 30))]
    if t == "case1":
        return [cert.case1_check((6, args.n_max or 60))]
    if t == "lemma3":
        v_max = 7 if args.v_max is None else args.v_max
        return [cert.lemma3_scan(v_max, args.n_max or 40, threads=args.threads)]
    if t == "tables":
        which = args.which or "all"
        if which != "all" and which not in verify.TABLES:
            raise UsageError(f"--which must be one of: all, {', '.join(verify.TABLES)}")
        return verify.verify_tables(which)
    raise UsageError(f"unknown verify target {t!r}")


def _cmd_verify(args) -> Outcome:
    reports = _verify_reports(args)
    ok = all(r.ok for r in reports)
    if len(reports) == 1:
        payload = reports[0].as_dict()
    else:
        payload = {"reports": [r.as_dict() for r in reports], "ok": ok}
    text = "".join(r.to_text() for r in reports)
    csv = "\n".join(r.to_csv() for r in reports if r.rows)
    return Outcome(ok, payload, text, csv)


COMMANDS = {
    "lubell": _cmd_lubell,
    "census": _cmd_census,
    "check": _cmd_check,
    "search-la": _cmd_search_la,
    "lubell-star": _cmd_lubell_star,
    "f-value": _cmd_f_value,
    "verify": _cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diamondlab", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--v-max", type=int)
    common.add_argument("--n-max", type=int)
    common.add_argument("--pattern")
    common.add_argument("--family", metavar="FILE")
    common.add_argument("--graph", metavar="FILE")
    common.add_argument("--seed", type=int)
    common.add_argument("--threads", type=int)
    common.add_argument("--count", type=int)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--out", metavar="FILE")
    common.add_argument("--exhaustive", action="store_true")
    common.add_argument("--node-budget", type=int, default=20_000_000)
    common.add_argument("--witness-out", metavar="FILE")
    common.add_argument("--which")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "verify":
            p.add_argument("target", choices=VERIFY_TARGETS)
    return parser


def render(outcome: Outcome, fmt_name: str) -> str:
    if fmt_name == "json":
        return json.dumps(outcome.payload, indent=2) + "\n"
    if fmt_name == "csv" and outcome.csv:
        return outcome.csv
    return outcome.text or json.dumps(outcome.payload, indent=2) + "\n"


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        outcome = COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (UsageError, DiamondLabError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = render(outcome, args.format)
    try:
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(out)
        else:
            sys.stdout.write(out)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0 if outcome.ok else 1


def main() -> None:
    sys.exit(run())
