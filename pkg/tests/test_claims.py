import pytest

from qtensor import claims as cl
from qtensor.report import ClaimResult

REQUIRED = ([f"Lemma2.2.{k}" for k in ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x")]
            + ["Cor2.3", "Cor2.3.iso", "Prop2.4.a", "Prop2.4.b", "Prop2.4.c", "Rem2.5", "Prop2.6", "Prop2.7",
               "Thm3.2.i", "Thm3.2.iii", "Thm3.2.iv", "Thm3.2.v", "Rem3.3", "Prop4.2", "Eq25", "Prop4.3",
               "Prop4.4", "Lemma5.1.i", "Lemma5.1.ii", "Lemma5.1.iii", "Thm5.2", "Ex5.3"])


def test_registry_covers_all_items():
    assert set(REQUIRED) <= set(cl.claim_ids())
    assert len(cl.resolve("all")) == len(cl.claim_ids())


def test_unknown_claim_lists_ids():
    with pytest.raises(KeyError, match="Lemma2.2.ix"):
        cl.resolve("Lemma9.9")


@pytest.mark.parametrize("claim,group,q", [("Lemma2.2.ix", "cyclic:4", 2), ("Prop2.7", "dihedral:4", 3),
                                           ("Lemma2.2.vi", "quaternion:8", 2), ("Prop2.4.b", "dihedral:3", 2)])
def test_examples_pass(claim, group, q):
    (r,) = cl.verify(claim, group=group, qs=[q])
    assert r.verdict == "pass", r.line()


def test_hypotheses_skip():
    (r,) = cl.verify("Cor2.3", group="dihedral:3", qs=[2])
    assert r.verdict == "skipped"
    (r,) = cl.verify("Prop4.4", group="cyclic:5", qs=[3])
    assert r.verdict == "skipped"
    (r,) = cl.verify("Lemma2.2.iv", group="cyclic:4", qs=[0])
    assert r.verdict == "skipped"


def test_iso_is_report_only():
    (r,) = cl.verify("Cor2.3.iso", group="cyclic:6", qs=[6])
    assert r.verdict == "skipped"
    assert "enumerated [3, 12]" in r.detail and "Z-tensor prediction [6]" in r.detail


def test_sampling_is_seeded():
    small = cl.Config(seed=7, exhaustive_domain=3, samples=50)
    ctx1 = cl.Ctx(small, "Lemma2.2.i", cl.Instance("cyclic:4", 2))
    ctx2 = cl.Ctx(small, "Lemma2.2.i", cl.Instance("cyclic:4", 2))
    a, b = list(ctx1.tuples(range(10), range(10))), list(ctx2.tuples(range(10), range(10)))
    assert a == b and len(a) == 50
    other = cl.Ctx(cl.Config(seed=8, exhaustive_domain=3, samples=50), "Lemma2.2.i", cl.Instance("cyclic:4", 2))
    assert list(other.tuples(range(10), range(10))) != a
    full = cl.Ctx(cl.Config(), "x", cl.Instance("cyclic:4", 2))
    assert len(list(full.tuples(range(10), range(10)))) == 100


def test_sampled_run_passes_and_is_deterministic():
    conf = cl.Config(seed=3, exhaustive_domain=4, samples=30)
    a = cl.verify("Lemma2.2.i", group="dihedral:3", qs=[3], config=conf)
    b = cl.verify("Lemma2.2.i", group="dihedral:3", qs=[3], config=conf)
    assert [r.verdict for r in a] == [r.verdict for r in b] == ["pass"]


def _always_fails(inst, ctx):
    for (k,) in ctx.tuples(range(5)):
        return cl.Outcome(False, f"k={k}")


def test_fail_carries_witness_and_replay():
    c = cl.Claim("Demo", "demo", "eta", _always_fails, lambda: [cl.Instance("cyclic:4", 2)])
    r = cl.run_one(c, cl.Instance("cyclic:4", 2, 5), cl.Config(seed=11))
    assert isinstance(r, ClaimResult) and r.verdict == "fail"
    assert r.witness == "k=0"
    assert r.replay == "qtensor verify Demo --group 'cyclic:4' --q 2 --seed 11 --param 5"


def test_instances_for_overrides():
    c = cl.CLAIMS["Thm5.2"]
    inst = cl.instances_for(c, catalog_filter="cyclic", qs=[2])
    assert {i.q for i in inst} == {2} and len(inst) == 16
    inst = cl.instances_for(c, group="dihedral:4")
    assert [i.q for i in inst] == list(range(9))


def test_thm52_parts():
    (a,) = cl.verify("Thm5.2.i", group="cyclic:2", qs=[2])
    (b,) = cl.verify("Thm5.2.ii", group="cyclic:2", qs=[2])
    assert (a.verdict, b.verdict) == ("skipped", "pass")
    assert b.row["exponent"] == 4
