"""Result records and their JSON / Markdown forms.

`GroupReport.to_json` emits exactly the keys in `GROUP_REPORT_KEYS`.
`timings` maps stage names to seconds; everything else is a pure
function of the input, so two reports agree bit for bit once timings are
dropped (`GroupReport.stable`).
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field
from typing import Iterable

from . import analysis as an

GROUP_REPORT_KEYS = ("order", "exponent", "invariant_factors", "structure", "route", "q", "timings")
VERDICTS = ("pass", "fail", "skipped")


@dataclass
class GroupReport:
    order: int
    exponent: int
    invariant_factors: list[int] | None    # None for non-abelian groups
    structure: str
    route: str
    q: int
    timings: dict[str, float] = field(default_factory=dict)

    @classmethod
    def from_handle(cls, s: an.SubgroupHandle, route: str, q: int, timings=None) -> "GroupReport":
        inv = list(an.abelian_invariants(s)) if s.is_abelian() else None
        return cls(s.order, s.exponent(), inv, an.recognize_structure(s), route, q, dict(timings or {}))

    def to_json(self) -> dict:
        d = asdict(self)
        d["timings"] = {k: round(v, 4) for k, v in self.timings.items()}
        return {k: d[k] for k in GROUP_REPORT_KEYS}

    def stable(self) -> dict:
        d = self.to_json()
        d.pop("timings")
        return d

    def same_group(self, other: "GroupReport") -> bool:
        keys = ("order", "exponent", "invariant_factors", "structure")
        return all(getattr(self, k) == getattr(other, k) for k in keys)


@dataclass
class EtaReport:
    instance: str
    q: int
    eta_order: int
    upsilon_order: int
    K_order: int
    mu_order: int
    theta_order: int
    upsilon: GroupReport
    cosets: int
    timings: dict[str, float] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"instance": self.instance, "q": self.q, "eta_order": self.eta_order,
                "upsilon_order": self.upsilon_order, "K_order": self.K_order,
                "mu_order": self.mu_order, "theta_order": self.theta_order,
                "cosets": self.cosets, "upsilon": self.upsilon.to_json(),
                "timings": {k: round(v, 4) for k, v in self.timings.items()}}


@dataclass
class ClaimResult:
    claim: str
    instance: str
    verdict: str
    witness: str | None = None
    replay: str | None = None
    detail: str = ""
    seconds: float = 0.0
    row: dict | None = None        # table data for the Markdown report

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"verdict must be one of {VERDICTS}")
        if self.verdict == "fail" and not (self.witness and self.replay):
            raise ValueError("fail verdicts need a witness and a replay command")

    def to_json(self) -> dict:
        d = asdict(self)
        d["seconds"] = round(self.seconds, 4)
        return d

    def line(self) -> str:
        s = f"{self.verdict.upper():7s} {self.claim:14s} {self.instance}"
        if self.detail:
            s += f"  [{self.detail}]"
        if self.verdict == "fail":
            s += f"\n        witness: {self.witness}\n        replay:  {self.replay}"
        return s


def markdown_table(rows: Iterable[dict]) -> str:
    """Table in the shape group | q | structure | exponent | bound satisfied."""
    rows = list(rows)
    if not rows:
        raise ValueError("no rows to tabulate")
    head = "| group | q | structure | exponent | bound satisfied | seconds |"
    out = [head, "|---|---|---|---|---|---|"]
    for r in rows:
        out.append(f"| {r['group']} | {r['q']} | {r['structure']} | {r['exponent']} | "
                   f"{r['bound']} | {r['seconds']:.3f} |")
    return "\n".join(out) + "\n"


def write_reports(results: list[ClaimResult], out_dir: str) -> list[str]:
    if not results:
        raise ValueError("no results to report")
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    p = os.path.join(out_dir, "claims.json")
    with open(p, "w", encoding="utf-8") as fh:
        json.dump([r.to_json() for r in results], fh, indent=1, sort_keys=True)
    paths.append(p)
    lines = ["# Claim verification", "", "| claim | instance | verdict | seconds |", "|---|---|---|---|"]
    lines += [f"| {r.claim} | {r.instance} | {r.verdict} | {r.seconds:.3f} |" for r in results]
    by_claim: dict[str, list[dict]] = {}
    for r in results:
        if r.row:
            by_claim.setdefault(r.claim, []).append(r.row)
    for claim, rows in by_claim.items():
        lines += ["", f"## {claim}", "", markdown_table(rows)]
    p = os.path.join(out_dir, "claims.md")
    with open(p, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    paths.append(p)
    return paths
