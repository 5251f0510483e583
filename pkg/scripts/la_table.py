"""Exhaustive La(n, P) for small n and a few pattern posets, with middle-layer sums for chains."""

import argparse

from diamondlab.lattice import sigma
from diamondlab.patterns import parse_pattern
from diamondlab.search import SearchConfig, la


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=4)
    ap.add_argument("--patterns", default="P2,P3,P4,P5,V2,V3,D3,diamond")
    ap.add_argument("--threads", type=int)
    args = ap.parse_args()
    cfg = SearchConfig(node_budget=None, threads=args.threads)
    print("pattern,n,la,sigma_k_minus_1,exhaustive")
    for name in args.patterns.split(","):
        P = parse_pattern(name)
        for n in range(1, args.n_max + 1):
            res = la(n, P, cfg)
            # chain-free maxima are the k-1 middle layers; other patterns have no reference column
            ref = sigma(n, P.size - 1) if name.startswith("P") else ""
            print(f"{P.name},{n},{res.objective},{ref},{res.exhaustive}", flush=True)


if __name__ == "__main__":
    main()
