"""Run every verification suite on the reference types and save the reports.

Writes results/verification.json (deterministic) and results/verification.csv,
and prints per-suite wall times.
"""

import argparse
import pathlib
import sys

from weyl_strata import export
from weyl_strata.verify import REFERENCE_TYPES, SUITES, exit_code, run_verification


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="results")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--types", default=",".join(REFERENCE_TYPES))
    args = ap.parse_args()

    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    reports = run_verification(tuple(args.types.split(",")), "all", SUITES, jobs=args.jobs)
    (out / "verification.json").write_text(export.reports_to_json(reports))
    (out / "verification.csv").write_text(export.reports_to_csv(reports))
    total = 0.0
    for r in reports:
        total += r.wall_time
        status = "pass" if r.passed else f"FAIL ({len(r.failures)})"
        print(f"{r.suite:17s} {r.type_label:3s} delta={r.delta_label:6s} cases={r.cases:<10d} {r.wall_time:6.2f}s {status}")
    print(f"total suite time {total:.1f}s; reports in {out}/")
    return exit_code(reports)


if __name__ == "__main__":
    sys.exit(main())
