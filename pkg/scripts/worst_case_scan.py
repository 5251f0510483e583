"""Worst case of f over all bipartition choices, for every graph on at most 7 vertices.

Writes one CSV row per n with the tightest graph and its slack to 1/4 + 1/(4(n-3)).
"""

import argparse
import sys
import time

from diamondlab.certificate import lemma3_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--v-max", type=int, default=7)
    ap.add_argument("--n-min", type=int, default=11)
    ap.add_argument("--n-max", type=int, default=40)
    ap.add_argument("--threads", type=int)
    args = ap.parse_args()
    t = time.perf_counter()
    rep = lemma3_scan(args.v_max, args.n_max, n_min=args.n_min, threads=args.threads)
    sys.stdout.write(rep.to_csv())
    print(f"# {rep.cases_checked} (graph, n) pairs, {len(rep.violations)} violations, "
          f"{time.perf_counter() - t:.1f}s", file=sys.stderr)
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
