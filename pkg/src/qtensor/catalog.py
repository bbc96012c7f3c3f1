"""The built-in group catalog with pc presentations and metadata."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from . import analysis as an
from .groups import FiniteGroupTable, GroupTableError, _SPEC, group_from_spec
from .pc import PcPresentation, abelian_pc, metacyclic_pc

FILTERS = ("all", "class-le-3", "cyclic", "dihedral", "abelian", "order-le-8", "order-le-16")


def pc_from_spec(spec: str) -> PcPresentation:
    """Pc presentation matching `group_from_spec(spec)` (g1 = y, g2 = x for
    the metacyclic families, one generator per factor for abelian ones)."""
    m = _SPEC.match(spec)
    if not m:
        try:
            with open(spec, encoding="utf-8") as fh:
                return PcPresentation.loads(fh.read())
        except OSError:
            raise GroupTableError(f"unknown group spec {spec!r}") from None
    kind, arg = m.groups()
    if kind == "abelian":
        vals = [int(v) for v in arg.strip("[]").split(",") if v.strip()]
        return abelian_pc([d for d in vals if d > 1])
    k = int(arg)
    if kind == "cyclic":
        return abelian_pc([k] if k > 1 else [])
    if kind == "dihedral":
        if k == 1:
            return abelian_pc([2])
        if k == 2:
            return abelian_pc([2, 2])
        return metacyclic_pc(k, 2, 0, k - 1)
    if kind == "dihedral2":
        return pc_from_spec(f"dihedral:{2 ** (k - 1)}")
    if kind == "quaternion":
        return metacyclic_pc(k // 2, 2, k // 4, k // 2 - 1)
    if kind == "modular":
        return metacyclic_pc(k // 2, 2, 0, k // 4 + 1)
    raise GroupTableError(f"no pc presentation for {spec!r}")


def pc_generator_images(spec: str, table: FiniteGroupTable) -> list[int]:
    """Elements of `table` corresponding to the pc generators of `pc_from_spec`."""
    kind = spec.split(":", 1)[0]
    if kind in ("abelian", "cyclic") or spec in ("dihedral:1", "dihedral:2"):
        if spec == "dihedral:1":
            return [table.gens["s"]]
        if spec == "dihedral:2":
            return [table.gens["s"], table.gens["r"]]
        if kind == "cyclic":
            return [table.gens["x"]] if table.order > 1 else []
        vals = [int(v) for v in spec.split(":", 1)[1].strip("[]").split(",") if v.strip()]
        return [table.gens[f"a{i + 1}"] for i, d in enumerate(vals) if d > 1]
    x, y = list(table.gens)
    return [table.gens[y], table.gens[x]]


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    spec: str

    @cached_property
    def table(self) -> FiniteGroupTable:
        return group_from_spec(self.spec)

    @cached_property
    def pc(self) -> PcPresentation:
        return pc_from_spec(self.spec)

    @property
    def order(self) -> int:
        return self.table.order

    @property
    def nilpotency_class(self) -> int | None:
        return self.table.nilpotency_class

    @property
    def derived_length(self) -> int | None:
        return self.table.derived_length

    @property
    def exponent(self) -> int:
        return self.table.exponent

    @property
    def is_abelian(self) -> bool:
        return self.nilpotency_class is not None and self.nilpotency_class <= 1

    def pc_matches_table(self) -> bool:
        """The pc generators map onto the table's elements isomorphically."""
        pc, t = self.pc, self.table
        if pc.order != t.order:
            return False
        target = an.regular_perm_group(t)
        if pc.n == 0:
            return t.order == 1
        images = [an.table_element(t, e) for e in pc_generator_images(self.spec, t)]
        hom = an.GroupHom(pc.to_presentation(), target, images)
        return an.hom_image(hom).order == t.order

    def describe(self) -> dict:
        return {"spec": self.spec, "order": self.order, "class": self.nilpotency_class,
                "exponent": self.exponent}


SPECS: tuple[str, ...] = (
    tuple(f"cyclic:{n}" for n in range(1, 17))
    + tuple(f"dihedral:{n}" for n in range(1, 11))
    + ("quaternion:8", "quaternion:16", "modular:16",
       "abelian:[2,2]", "abelian:[2,2,2]", "abelian:[3,3]")
)


@lru_cache(maxsize=None)
def entry(spec: str) -> CatalogEntry:
    return CatalogEntry(spec)


def catalog(filter: str = "all") -> list[CatalogEntry]:
    """Catalog entries selected by a filter name (see `FILTERS`)."""
    entries = [entry(s) for s in SPECS]
    if filter == "all":
        return entries
    if filter == "class-le-3":
        return [e for e in entries if e.nilpotency_class is not None and e.nilpotency_class <= 3]
    if filter in ("cyclic", "dihedral", "abelian"):
        if filter == "abelian":
            return [e for e in entries if e.is_abelian]
        return [e for e in entries if e.spec.startswith(filter + ":")]
    if filter.startswith("order-le-"):
        bound = int(filter.rsplit("-", 1)[1])
        return [e for e in entries if e.order <= bound]
    raise ValueError(f"unknown catalog filter {filter!r}; choose from {FILTERS}")
