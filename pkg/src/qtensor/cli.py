"""Command-line front end: ``qtensor tensor-square | eta | verify | report``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time

from . import claims as cl
from .catalog import FILTERS, pc_from_spec
from .eq import NotQPerfectError, exterior_square_pc, tensor_square_pc
from .groups import GroupTableError
from .models import realized
from .report import EtaReport, GroupReport, write_reports
from .todd_coxeter import DEFAULT_MAX_COSETS, CosetLimitExceeded

log = logging.getLogger("qtensor")


class CliError(Exception):
    pass


def parse_q_range(s: str) -> list[int]:
    """``3`` or ``0..8`` (inclusive) or ``1,3,5``."""
    out: list[int] = []
    for part in s.split(","):
        if ".." in part:
            a, b = part.split("..", 1)
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    if not out or min(out) < 0:
        raise argparse.ArgumentTypeError(f"bad q range {s!r}")
    return out


def _enum_report(spec: str, q: int, args, tau: bool = False) -> GroupReport:
    t0 = time.perf_counter()
    r = realized(spec, q, tau, args.max_cosets, args.strategy)
    t1 = time.perf_counter()
    rep = GroupReport.from_handle(r.upsilon.upsilon_part(), "enum", q)
    rep.timings = {"enumerate": t1 - t0, "analysis": time.perf_counter() - t1}
    return rep


def cmd_tensor_square(args) -> dict:
    route = args.route
    if route in ("pc", "both"):
        try:
            pc_rep = tensor_square_pc(pc_from_spec(args.spec), args.q)
        except NotQPerfectError as exc:
            raise CliError(str(exc)) from None
        if route == "pc":
            return pc_rep.to_json()
    enum_rep = _enum_report(args.spec, args.q, args)
    if route == "enum":
        return enum_rep.to_json()
    if not pc_rep.same_group(enum_rep):
        raise CliError(f"routes disagree: pc {pc_rep.stable()} vs enum {enum_rep.stable()}")
    return {"agree": True, "pc": pc_rep.to_json(), "enum": enum_rep.to_json()}


def cmd_exterior_square(args) -> dict:
    if args.route == "pc":
        return exterior_square_pc(pc_from_spec(args.spec), args.q).to_json()
    return _enum_report(args.spec, args.q, args, tau=True).to_json()


def eta_report(spec: str, q: int, max_cosets: int = DEFAULT_MAX_COSETS, strategy: str = "hlt") -> EtaReport:
    t0 = time.perf_counter()
    r = realized(spec, q, False, max_cosets, strategy)
    t1 = time.perf_counter()
    ups = r.upsilon
    u = ups.upsilon_part()
    L = r.L
    d = ups.degree_upsilon
    mu = int((ups.handle.elements[:, d + L.identity] == d + L.identity).sum())
    image = L.closure(r.eta.rho_images())
    theta = r.order // len(image)
    rep = GroupReport.from_handle(u, "enum", q)
    return EtaReport(spec, q, r.order, r.upsilon_order, len(r.pair.K), mu, theta, rep, r.index,
                     {"enumerate": t1 - t0, "analysis": time.perf_counter() - t1})


def cmd_eta(args) -> dict:
    if (args.G is None) != (args.H is None):
        raise CliError("give both --G and --H, or neither for the diagonal pair")
    spec = args.L if args.G is None else f"{args.L}/{args.G}/{args.H}"
    return eta_report(spec, args.q, args.max_cosets, args.strategy).to_json()


def _config(args) -> cl.Config:
    return cl.Config(seed=args.seed, max_cosets=args.max_cosets, strategy=args.strategy)


def _run_verify(args) -> list:
    try:
        selected = cl.resolve(args.claim)
    except KeyError as exc:
        raise CliError(exc.args[0]) from None
    if args.catalog is not None and args.catalog not in FILTERS:
        raise CliError(f"unknown catalog filter {args.catalog!r}; choose from {', '.join(FILTERS)}")
    config = _config(args)
    results = []
    for c in selected:
        for inst in cl.instances_for(c, args.group, args.catalog, args.q, args.param):
            res = cl.run_one(c, inst, config)
            results.append(res)
            print(res.line(), flush=True)
    return results


def cmd_verify(args) -> int:
    results = _run_verify(args)
    n = {v: sum(r.verdict == v for r in results) for v in ("pass", "fail", "skipped")}
    print(f"{len(results)} instances: {n['pass']} pass, {n['fail']} fail, {n['skipped']} skipped (seed {args.seed})")
    return 1 if n["fail"] else 0


def cmd_report(args) -> int:
    results = _run_verify(args)
    if not results:
        raise CliError("no instances selected")
    for p in write_reports(results, args.out):
        print(f"wrote {p}")
    return 1 if any(r.verdict == "fail" for r in results) else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qtensor", description=__doc__)
    p.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS)
    p.add_argument("--strategy", choices=("hlt", "felsch"), default="hlt")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="cmd", required=True)

    t = sub.add_parser("tensor-square", help="G (x)q G by the pc route, enumeration, or both")
    t.add_argument("spec")
    t.add_argument("--q", type=int, required=True)
    t.add_argument("--route", choices=("pc", "enum", "both"), default="enum")
    t.set_defaults(func=cmd_tensor_square)

    x = sub.add_parser("exterior-square", help="G ^q G by the pc route or enumeration of tau^q")
    x.add_argument("spec")
    x.add_argument("--q", type=int, required=True)
    x.add_argument("--route", choices=("pc", "enum"), default="pc")
    x.set_defaults(func=cmd_exterior_square)

    e = sub.add_parser("eta", help="orders and Upsilon structure of eta^q(G, H)")
    e.add_argument("L")
    e.add_argument("--G", help="comma-separated generators of G in L")
    e.add_argument("--H", help="comma-separated generators of H in L")
    e.add_argument("--q", type=int, required=True)
    e.set_defaults(func=cmd_eta)

    for name, func, helptext in (("verify", cmd_verify, "check claims on instances"),
                                 ("report", cmd_report, "check claims and write JSON + Markdown")):
        v = sub.add_parser(name, help=helptext)
        if name == "verify":
            v.add_argument("claim", help="claim id or 'all'")
        else:
            v.add_argument("--claim", default="all")
            v.add_argument("--out", required=True)
        v.add_argument("--catalog", help=f"catalog filter: {', '.join(FILTERS)}")
        v.add_argument("--group", help="a single group or pair spec")
        v.add_argument("--q", type=parse_q_range, help="e.g. 3, 0..8 or 1,3,5")
        v.add_argument("--param", type=int, help="extra claim parameter (Prop2.6: the q of eta^pq -> eta^p)")
        v.add_argument("--seed", type=int, default=0)
        v.set_defaults(func=func)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        out = args.func(args)
    except (CliError, GroupTableError, CosetLimitExceeded, ValueError) as exc:
        print(f"qtensor: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"qtensor: {exc}", file=sys.stderr)
        return 2
    if isinstance(out, dict):
        print(json.dumps(out, indent=1))
        return 0
    return out


if __name__ == "__main__":
    sys.exit(main())
