"""Regenerate the Markdown tables for the listed tensor squares and the
class <= 3 exponent sweep.

    python3 scripts/example_tables.py --out results/
"""

import argparse
import time

from qtensor import claims as cl
from qtensor.report import write_reports


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="results")
    ap.add_argument("--qmax", type=int, default=8, help="largest q in the exponent sweep")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    config = cl.Config(seed=args.seed)
    t0 = time.perf_counter()
    results = cl.verify("Ex5.3", config=config)
    results += cl.verify("Thm5.2", catalog_filter="class-le-3", qs=range(args.qmax + 1), config=config)
    for r in results:
        if r.verdict != "pass":
            print(r.line())
    for p in write_reports(results, args.out):
        print("wrote", p)
    n_fail = sum(r.verdict == "fail" for r in results)
    print(f"{len(results)} instances, {n_fail} fail, {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
