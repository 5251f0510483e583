"""Recompute every certificate table and write one CSV per table plus a JSON summary.

    python scripts/reproduce_tables.py --out results/
"""

import argparse
import json
import pathlib

from diamondlab import certificate as cert
from diamondlab import verify


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results")
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    reports = verify.verify_tables("all") + [cert.case1_check()]
    summary = {}
    for rep in reports:
        if rep.rows:
            (out / f"{rep.table}.csv").write_text(rep.to_csv())
        summary[rep.table] = rep.as_dict()
        print(rep.to_text(), end="")
    (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    return 0 if all(r.ok for r in reports) else 1


if __name__ == "__main__":
    raise SystemExit(main())
