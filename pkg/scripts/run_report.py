"""Run every acceptance check and write the JSON report.

    python scripts/run_report.py --out report.json [--profile deep] [--jobs 2]
"""

import argparse

from grigquot.cli import main


def run(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="report.json")
    ap.add_argument("--profile", default="default", choices=["default", "deep"])
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args(argv)
    return main(["report-all", "--profile", a.profile, "--jobs", str(a.jobs),
                 "--seed", str(a.seed), "--json", a.out])


if __name__ == "__main__":
    raise SystemExit(run())
