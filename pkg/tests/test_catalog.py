import pytest

from qtensor.catalog import FILTERS, SPECS, catalog, entry


def test_contents():
    assert len(SPECS) == len(set(SPECS))
    specs = set(SPECS)
    assert {"cyclic:16", "dihedral:10", "quaternion:8", "quaternion:16", "modular:16",
            "abelian:[2,2]", "abelian:[2,2,2]"} <= specs


@pytest.mark.parametrize("spec", SPECS)
def test_entries_valid(spec):
    e = entry(spec)
    assert e.pc_matches_table()
    assert e.pc.check_consistency() == []
    assert e.describe()["order"] == e.order


def test_metadata():
    assert entry("dihedral:8").nilpotency_class == 3
    assert entry("quaternion:16").nilpotency_class == 3
    assert entry("modular:16").exponent == 8
    assert entry("dihedral:5").nilpotency_class is None
    assert entry("abelian:[3,3]").is_abelian


def test_filters():
    cl3 = {e.spec for e in catalog("class-le-3")}
    assert {"dihedral:8", "quaternion:16", "dihedral:4"} <= cl3
    assert "dihedral:3" not in cl3
    assert all(e.order <= 8 for e in catalog("order-le-8"))
    assert all(e.spec.startswith("cyclic:") for e in catalog("cyclic"))
    for f in FILTERS:
        assert catalog(f)
    with pytest.raises(ValueError):
        catalog("nope")
