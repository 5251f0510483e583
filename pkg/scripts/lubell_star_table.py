"""Exhaustive maximum Lubell value of diamond-free families containing the empty set.

    python scripts/lubell_star_table.py --n-max 5 --threads 8

n=6 finishes in a few minutes on 8 cores (about 30M search nodes).
"""

import argparse
import time

from diamondlab.report import fmt
from diamondlab.search import SearchConfig, conjectured_lubell_star, lubell_star


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=5)
    ap.add_argument("--threads", type=int)
    ap.add_argument("--node-budget", type=int)
    args = ap.parse_args()
    cfg = SearchConfig(node_budget=args.node_budget, threads=args.threads)
    print("n,lubell_star,formula,match,exhaustive,nodes,seconds,witness")
    for n in range(2, args.n_max + 1):
        t = time.perf_counter()
        res = lubell_star(n, cfg)
        dt = time.perf_counter() - t
        formula = conjectured_lubell_star(n)
        wit = " ".join(str(S).replace(",", "") for S in res.witness.to_text().split("\n")[1:] if S)
        print(f"{n},{fmt(res.objective)},{fmt(formula)},{res.objective == formula},"
              f"{res.exhaustive},{res.nodes_explored},{dt:.2f},{wit}", flush=True)


if __name__ == "__main__":
    main()
