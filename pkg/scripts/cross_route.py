"""Compare the pc route with enumeration of tau^q for every q-perfect
catalog group, printing one line per case."""

import argparse

from qtensor import claims as cl


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--catalog", default="all")
    ap.add_argument("--q", default="1..9")
    args = ap.parse_args()
    a, b = args.q.split("..") if ".." in args.q else (args.q, args.q)
    res = cl.verify("CrossRoute", catalog_filter=args.catalog, qs=range(int(a), int(b) + 1))
    for r in res:
        if r.verdict != "skipped":
            print(r.line())
    print(f"{sum(r.verdict == 'pass' for r in res)} agree, {sum(r.verdict == 'fail' for r in res)} disagree")


if __name__ == "__main__":
    main()
