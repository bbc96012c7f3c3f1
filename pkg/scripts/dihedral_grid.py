"""Pc-route timings and results for D_n, 3 <= n <= 10, q odd."""

import argparse
import time

from qtensor.catalog import pc_from_spec
from qtensor.eq import schur_multiplier_q, tensor_square_pc


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--nmax", type=int, default=10)
    ap.add_argument("--qs", default="1,3,5,7,9")
    args = ap.parse_args()
    qs = [int(x) for x in args.qs.split(",")]
    print("| n | q | structure | order | H_2 | seconds |")
    print("|---|---|---|---|---|---|")
    for n in range(3, args.nmax + 1):
        for q in qs:
            t0 = time.perf_counter()
            g = pc_from_spec(f"dihedral:{n}")
            rep = tensor_square_pc(g, q)
            h2 = schur_multiplier_q(g, q)
            dt = time.perf_counter() - t0
            print(f"| {n} | {q} | {rep.structure} | {rep.order} | {list(h2) or 'trivial'} | {dt:.3f} |")


if __name__ == "__main__":
    main()
