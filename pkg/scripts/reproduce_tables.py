"""Recompute both tables of induced crossed modules and compare with the bundled expectations."""

from __future__ import annotations

import argparse
import json
import sys
import time

from xmodcalc.tables import format_table, run_table
from xmodcalc.tasks import TaskOptions


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tables", nargs="+", default=["1", "2"], choices=["1", "2"])
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--aut-budget", type=int, default=100)
    ap.add_argument("--json", metavar="PATH", help="write all row results as JSON")
    args = ap.parse_args(argv)

    opts = TaskOptions(aut_budget=args.aut_budget)
    payload = {}
    failed = False
    for which in args.tables:
        t0 = time.perf_counter()
        results = run_table(which, opts, jobs=args.jobs)
        print(f"Table {which} ({time.perf_counter() - t0:.1f}s)")
        print(format_table(which, results))
        print()
        payload[which] = [r.to_dict() for r in results]
        failed |= any(r.status == "FAIL" for r in results)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
