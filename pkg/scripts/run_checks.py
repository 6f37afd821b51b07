#!/usr/bin/env python3
"""Run the full identity harness and print a per-check summary table.

    python scripts/run_checks.py [--json report.json]
"""

import argparse
import sys
import time
from collections import defaultdict

from qtheta import verify
from qtheta.cli import dumps_canonical, report_document


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--json", help="also write the full report document here")
    args = ap.parse_args()

    t0 = time.perf_counter()
    reports = verify.run_all()
    elapsed = time.perf_counter() - t0

    by_check = defaultdict(list)
    for r in reports:
        by_check[r.check_id].append(r)
    print(f"{'check':<22}{'points':>7}{'max abs_err':>14}{'tol':>10}  status")
    for check_id, reps in by_check.items():
        worst = max(r.abs_err for r in reps)
        status = "ok" if all(r.passed for r in reps) else "FAIL"
        print(f"{check_id:<22}{len(reps):>7}{worst:>14.3e}{reps[0].tol:>10.0e}  {status}")
    n_fail = sum(not r.passed for r in reports)
    print(f"\n{len(reports)} reports, {n_fail} failed, {elapsed:.2f} s")

    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(dumps_canonical(report_document(reports, verify.Tolerances())))
    return 1 if n_fail else 0


if __name__ == "__main__":
    sys.exit(main())
