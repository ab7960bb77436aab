"""Finite groups as Cayley tables: construction, subgroup covers, and the
invariants they define, with an exhaustively enumerated small-group catalog."""

from .core import (
    ElementSet,
    Group,
    Isomorphism,
    are_isomorphic,
    format_group,
    generated_subgroup,
    group_from_closure,
    induced_group,
    minimal_generating_set,
    parse_group_text,
    quotient_group,
    read_group,
    validate_cayley,
    write_group,
)
from .construct import (
    abelian_type,
    alternating,
    build,
    build_named,
    central_product,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    elementary_abelian,
    general_linear,
    parse_group_spec,
    registered_actions,
    semidihedral,
    semidirect_product,
    spec_text,
    symmetric,
)
from .covers import (
    Cover,
    cover_of,
    max_irredundant_bruteforce,
    max_irredundant_size,
    maximal_cyclic_cover,
    maximal_cyclic_subgroups,
    min_cover_size,
)
from .structure import (
    DerivedSeries,
    OrderProfile,
    SubgroupLattice,
    agemo,
    agemo_members,
    all_subgroups,
    center,
    centralizer,
    commutator_subgroup,
    derived_series,
    is_normal,
    metabelian_power_check,
    omega,
    omega_members,
    order_profile,
)
from .catalog import (
    CatalogEntry,
    catalog_problems,
    curated_catalog,
    enumerate_groups_of_order,
    load_catalog,
)
from .classify import (
    ClassificationReport,
    PropertyCheck,
    structural_property_suite,
    verify_theorem,
)
from . import errors

__version__ = "0.1.0"

__all__ = [
    "CatalogEntry",
    "ClassificationReport",
    "Cover",
    "DerivedSeries",
    "ElementSet",
    "Group",
    "Isomorphism",
    "OrderProfile",
    "PropertyCheck",
    "SubgroupLattice",
    "__version__",
    "abelian_type",
    "agemo",
    "agemo_members",
    "all_subgroups",
    "alternating",
    "are_isomorphic",
    "build",
    "build_named",
    "catalog_problems",
    "center",
    "centralizer",
    "central_product",
    "commutator_subgroup",
    "cover_of",
    "curated_catalog",
    "cyclic",
    "derived_series",
    "dicyclic",
    "dihedral",
    "direct_product",
    "elementary_abelian",
    "enumerate_groups_of_order",
    "errors",
    "format_group",
    "general_linear",
    "generated_subgroup",
    "group_from_closure",
    "induced_group",
    "is_normal",
    "load_catalog",
    "max_irredundant_bruteforce",
    "max_irredundant_size",
    "maximal_cyclic_cover",
    "maximal_cyclic_subgroups",
    "metabelian_power_check",
    "min_cover_size",
    "minimal_generating_set",
    "omega",
    "omega_members",
    "order_profile",
    "parse_group_spec",
    "parse_group_text",
    "quotient_group",
    "read_group",
    "registered_actions",
    "semidihedral",
    "semidirect_product",
    "spec_text",
    "structural_property_suite",
    "symmetric",
    "validate_cayley",
    "verify_theorem",
    "write_group",
]
