#!/usr/bin/env python3
"""Run every verification battery and write one JSON suite report.

The report is a pure function of (seed, samples): rerunning with the
same arguments must reproduce the file byte for byte.
"""

import argparse
import sys

from affine_buildings import reports


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--samples", type=int, default=20,
                        help="per-battery sample count")
    parser.add_argument("--out", default="suite-report.json",
                        help="where to write the JSON report")
    args = parser.parse_args(argv)

    report = reports.full_run(seed=args.seed, samples=args.samples)
    for line in reports.summary_lines(report, "suite"):
        print(line)
    reports.write_report(args.out, report)
    print("report: %s" % args.out)
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
