"""Compare the general pipeline with the closed-form models over all admissible chains M <| P <= Q, |Q| <= 24."""

from __future__ import annotations

import argparse
import csv
import sys
import time

from xmodcalc.sweep import run_case, sweep_cases


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-predicted", type=int, default=1024, help="skip cases whose predicted order is larger")
    ap.add_argument("--csv", metavar="PATH", help="write one row per case")
    ap.add_argument("-v", "--verbose", action="store_true")
    args = ap.parse_args(argv)

    cases, skipped = sweep_cases(args.max_predicted)
    t0 = time.perf_counter()
    rows = []
    for case in cases:
        o = run_case(case)
        rows.append(o)
        if args.verbose or not o.agrees:
            print(f"{'ok ' if o.agrees else 'BAD'} {case.label}: order {o.order} {o.oracles} ({o.seconds:.2f}s)")
    agree = sum(o.agrees for o in rows)
    print(f"{agree}/{len(rows)} cases agree; {len(skipped)} skipped over order {args.max_predicted}; {time.perf_counter() - t0:.1f}s")
    for case in skipped:
        print(f"  skipped {case.label}: predicted order {case.predicted_order}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["Q", "P_order", "M_order", "kinds", "predicted", "computed", "agrees", "seconds"])
            for o in rows:
                c = o.case
                w.writerow([c.q_label, c.P.order, c.M.order, "+".join(c.kinds), c.predicted_order, o.order, o.agrees, f"{o.seconds:.3f}"])
    return 0 if agree == len(rows) else 1


if __name__ == "__main__":
    sys.exit(main())
