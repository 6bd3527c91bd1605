"""Schur-ring closures over dihedral and cyclic groups, and trivalent GRR constructions."""

from schurgrr.groups import Group, GroupElement, cyclic, dihedral, make_group, parse_set
from schurgrr.group_ring import RingElement, simple_quantity
from schurgrr.schur import SchurPartition, closure, is_trivial, structure_constants
from schurgrr.cayley import cayley_graph, automorphism_order, is_grr
from schurgrr.construct import ConnectingSpec, check_spec, make_spec, table_row, inherit, certify

__all__ = [
    "Group",
    "GroupElement",
    "make_group",
    "dihedral",
    "cyclic",
    "parse_set",
    "RingElement",
    "simple_quantity",
    "SchurPartition",
    "closure",
    "is_trivial",
    "structure_constants",
    "cayley_graph",
    "automorphism_order",
    "is_grr",
    "ConnectingSpec",
    "check_spec",
    "make_spec",
    "table_row",
    "inherit",
    "certify",
]
