"""Nonabelian q-tensor squares and the groups eta^q(G, H) of finite groups."""

from .catalog import catalog, pc_from_spec
from .eq import build_Eq, exterior_square_pc, schur_multiplier_q, tensor_square_pc
from .eta import build_eta_q, build_nu_q, build_tau_q
from .groups import EmbeddedPair, FiniteGroupTable, group_from_spec
from .models import pair_from_spec, realized
from .pc import PcPresentation
from .todd_coxeter import enumerate_cosets

__version__ = "0.1.0"

__all__ = [
    "EmbeddedPair", "FiniteGroupTable", "PcPresentation", "build_Eq", "build_eta_q", "build_nu_q",
    "build_tau_q", "catalog", "enumerate_cosets", "exterior_square_pc", "group_from_spec",
    "pair_from_spec", "pc_from_spec", "realized", "schur_multiplier_q", "tensor_square_pc",
]
