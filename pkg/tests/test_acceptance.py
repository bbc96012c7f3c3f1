"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run directly (``python3 tests/test_acceptance.py``) for just the summary.
"""

import json
import random
import sys
import time

import pytest

from qtensor import analysis as an
from qtensor import claims as cl
from qtensor.abelian import is_q_perfect
from qtensor.catalog import catalog, pc_from_spec
from qtensor.cli import eta_report
from qtensor.eq import exterior_square_pc
from qtensor.eta import build_nu_q, build_tau_q
from qtensor.groups import group_from_spec
from qtensor.models import pair_from_spec, realize, realized
from qtensor.pc import PcPresentation
from qtensor.todd_coxeter import enumerate_cosets

PAIR = "dihedral:4/r/r^2,s"
LINES: list[str] = []  # collected for the pytest terminal summary
DN_GRID = [(n, q) for n in range(3, 11) for q in (1, 3, 5, 7, 9)]


def _report(num, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {num}: {title} [{detail}]"
    print(line, file=sys.__stdout__, flush=True)
    LINES.append(line)
    return ok


def _run(claim, instances, config=cl.Config()):
    c = cl.CLAIMS[claim]
    return [cl.run_one(c, i, config) for i in instances]


def _bad(results):
    return [r for r in results if r.verdict != "pass"]


def criterion_1():
    res = _run("Prop4.4", [cl.Instance(f"dihedral:{n}", q) for n, q in DN_GRID])
    slow = [r for r in res if r.seconds >= 1.0]
    worst = max(r.seconds for r in res)
    ok = not _bad(res) and not slow and len(res) == 40
    return _report(1, "D_n (x)q D_n = D_n and H_2 trivial, q odd, 3 <= n <= 10", ok,
                   f"{len(res) - len(_bad(res))}/40 pass, slowest {worst:.3f}s")


def criterion_2():
    res = _run("Eq25", [cl.Instance(f"dihedral:{n}", q) for n, q in DN_GRID])
    return _report(2, "naive E_q(D_n) has the single relation t2^n t3^(n-2)", not _bad(res) and len(res) == 40,
                   f"{len(res) - len(_bad(res))}/40 pass")


def criterion_3():
    res = _run("Prop4.3", [cl.Instance(f"dihedral:{n}", q) for n, q in DN_GRID])
    return _report(3, "element orders in E_q(D_n)", not _bad(res) and len(res) == 40,
                   f"{len(res) - len(_bad(res))}/40 pass")


EX53 = [("dihedral:4", 4, 128, (2, 2, 2, 2, 2, 4)), ("quaternion:8", 4, 256, (2, 2, 2, 2, 4, 4)),
        ("cyclic:2", 2, 4, (4,)), ("cyclic:2", 6, 4, (4,)), ("cyclic:6", 2, 12, (12,)),
        ("cyclic:6", 6, 36, (3, 12)), ("cyclic:10", 2, 20, (20,))]


def criterion_4():
    problems, peak = [], 0
    for spec, q, order, inv in EX53:
        r = realized(spec, q)
        u = r.upsilon.upsilon_part()
        got = an.abelian_invariants(u)
        limit = 40000 if spec == "cyclic:10" else 8192
        peak = max(peak, r.table.max_live)
        if u.order != order or got != inv or r.index > limit:
            problems.append(f"{spec} q={q}: order {u.order}, {got}, {r.index} cosets")
    res = _run("Ex5.3", [cl.Instance(s, q) for s, q, _, _ in EX53])
    problems += [r.line() for r in _bad(res)]
    return _report(4, "listed tensor squares by enumeration", not problems,
                   "; ".join(problems) or f"7/7 match, largest table {max(realized(s, q).index for s, q, _, _ in EX53)}"
                   f" cosets (peak live {peak})")


def criterion_5():
    c = cl.CLAIMS["CrossRoute"]
    inst = c.defaults()
    res = [cl.run_one(c, i) for i in inst]
    expected = sum(1 for e in catalog() for q in range(1, 10) if is_q_perfect(e.pc, q))
    ok = not _bad(res) and len(res) == expected and len(res) > 0
    return _report(5, "pc route W equals enumerated Upsilon/Delta for q-perfect catalog cases", ok,
                   f"{len(res) - len(_bad(res))}/{len(res)} agree")


def criterion_6():
    groups = [e.spec for e in catalog("class-le-3")]
    res = _run("Thm5.2", [cl.Instance(s, q) for s in groups for q in range(9)])
    attained = realized("cyclic:2", 2).upsilon.upsilon_part().exponent()
    has16 = {"dihedral:8", "quaternion:16"} <= set(groups)
    ok = not _bad(res) and attained == 4 and has16
    return _report(6, "exponent bound for class <= 3, q = 0..8", ok,
                   f"{len(res) - len(_bad(res))}/{len(res)} pass, exp(C_2 (x)2 C_2) = {attained}")


LEMMA_INSTANCES = [cl.Instance("cyclic:4", 2), cl.Instance("dihedral:3", 3), cl.Instance(PAIR, 2)]


def criterion_7():
    ids = [i for i in cl.claim_ids() if i.startswith("Lemma2.2.")]
    res = []
    for cid in ids:
        res += _run(cid, LEMMA_INSTANCES)
    # every quantified domain is small enough to be checked exhaustively
    exhaustive = all(len(pair_from_spec(i.spec).G) ** 4 <= cl.Config().exhaustive_tuples for i in LEMMA_INSTANCES)
    bad = _bad(res)
    # (iv) and (v) involve hats and need q >= 1: all instances here have q >= 1
    return _report(7, "commutator identities (i)-(x), exhaustive", not bad and exhaustive and len(ids) == 10,
                   f"{len(res) - len(bad)}/{len(res)} pass" + ("" if not bad else "; " + bad[0].line()))


def criterion_8():
    res = _run("Prop2.7", [cl.Instance(PAIR, 2)])
    res += _run("Prop2.4.c", [cl.Instance(PAIR, 2)])
    res += _run("Rem2.5", [cl.Instance(PAIR, 2)])
    res += _run("Prop2.6", [cl.Instance(PAIR, p, 2) for p in (1, 2, 3)])
    res += _run("Rem3.3", [cl.Instance(s, q) for s in ("dihedral:4", "quaternion:8") for q in (0, 2, 3, 4)])
    bad = _bad(res)
    return _report(8, "structure suite", not bad and len(res) == 14,
                   f"{len(res) - len(bad)}/{len(res)} pass" + ("" if not bad else "; " + bad[0].line()))


def _table_dumps(spec, q, tau, strategy):
    e = (build_tau_q if tau else build_nu_q)(pair_from_spec(spec) if tau else group_from_spec(spec), q,
                                             economical=True)
    return enumerate_cosets(e.base, [], strategy=strategy).dumps()


def criterion_9():
    problems = []
    for spec, q, tau in (("cyclic:4", 2, False), ("dihedral:3", 3, True), ("quaternion:8", 2, False)):
        counts = set()
        for strategy in ("hlt", "felsch"):
            a, b = _table_dumps(spec, q, tau, strategy), _table_dumps(spec, q, tau, strategy)
            if a != b:
                problems.append(f"{strategy} table differs between runs for {spec} q={q}")
            counts.add(a.count("\n"))
        if len(counts) != 1:
            problems.append(f"strategies disagree on the coset count for {spec} q={q}")
    for e in catalog("order-le-16"):
        if not e.pc.n:
            continue
        rng = random.Random(e.spec)
        words = [[rng.choice([1, -1]) * rng.randint(1, e.pc.n) for _ in range(30)] for _ in range(20)]
        fresh = PcPresentation.loads(e.pc.dumps())
        if [e.pc.collect(w) for w in words] != [fresh.collect(w) for w in words]:
            problems.append(f"collection differs between runs for {e.spec}")
    for spec, q in (("dihedral:5", 3), ("quaternion:8", 3)):
        pc = pc_from_spec(spec)
        if exterior_square_pc(pc, q).stable() != exterior_square_pc(pc_from_spec(spec), q).stable():
            problems.append(f"pc report differs for {spec}")
    strip = lambda d: {k: v for k, v in d.items() if k not in ("seconds", "timings")}
    a = strip(eta_report(PAIR, 2).to_json())
    fresh = realize(build_nu_q(group_from_spec("cyclic:4"), 2, economical=True))
    if a != strip(eta_report(PAIR, 2).to_json()) or fresh.table.dumps() != realized("cyclic:4", 2).table.dumps():
        problems.append("eta report or realization differs between runs")
    conf = cl.Config(seed=5, exhaustive_domain=4, samples=200)
    r1 = [json.dumps(strip(r.to_json()), sort_keys=True) for r in cl.verify("Lemma2.2.i", group="dihedral:3",
                                                                            qs=[3], config=conf)]
    r2 = [json.dumps(strip(r.to_json()), sort_keys=True) for r in cl.verify("Lemma2.2.i", group="dihedral:3",
                                                                            qs=[3], config=conf)]
    if r1 != r2:
        problems.append("sampled verdicts differ under a fixed seed")
    return _report(9, "determinism of enumeration, collection and reports", not problems,
                   "; ".join(problems) or "bit-exact across runs")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i + 1}" for i in range(len(CRITERIA))])
def test_criterion(criterion):
    assert criterion()


if __name__ == "__main__":
    t0 = time.perf_counter()
    results = [c() for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria pass in {time.perf_counter() - t0:.1f}s")
    sys.exit(0 if all(results) else 1)
