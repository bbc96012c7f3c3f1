import json

import pytest

from qtensor import analysis as an
from qtensor.groups import group_from_spec
from qtensor.report import GROUP_REPORT_KEYS, ClaimResult, GroupReport, markdown_table, write_reports


def test_group_report_keys():
    s = an.whole(an.regular_perm_group(group_from_spec("abelian:[2,4]")))
    r = GroupReport.from_handle(s, "enum", 2, {"total": 0.5})
    d = r.to_json()
    assert tuple(d) == GROUP_REPORT_KEYS
    assert d["invariant_factors"] == [2, 4]
    assert "timings" not in r.stable()


def test_fail_needs_witness():
    with pytest.raises(ValueError):
        ClaimResult("X", "i", "fail")
    with pytest.raises(ValueError):
        ClaimResult("X", "i", "maybe")
    r = ClaimResult("X", "i", "fail", witness="w", replay="qtensor verify X")
    assert "replay" in r.line()


def test_reports(tmp_path):
    row = {"group": "cyclic:2", "q": 2, "structure": "cyclic:4", "exponent": 4, "bound": "yes", "seconds": 0.1}
    res = [ClaimResult("Ex5.3", "cyclic:2 q=2", "pass", seconds=0.1, row=row)]
    paths = write_reports(res, str(tmp_path))
    data = json.loads((tmp_path / "claims.json").read_text())
    assert data[0]["verdict"] == "pass" and "seconds" in data[0]
    md = (tmp_path / "claims.md").read_text()
    assert "| group | q | structure | exponent | bound satisfied | seconds |" in md
    assert len(paths) == 2
    with pytest.raises(ValueError):
        write_reports([], str(tmp_path))
    with pytest.raises(ValueError):
        markdown_table([])


def test_io_errors_surface(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    with pytest.raises(OSError):
        write_reports([ClaimResult("X", "i", "pass")], str(blocker / "sub"))
