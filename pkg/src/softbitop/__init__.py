"""Finite soft sets, soft topologies and soft bitopological groups, checked exhaustively."""

from .bitop import (
    CoverProblem,
    SBTGInstance,
    SoftBitopSpace,
    bi_soft_connected,
    check_sbtg_hom,
    is_sbtg_componentwise,
    is_sbtg_oracle,
    minimal_subcover,
    pairwise_soft_separation,
    slices_pairwise_separation,
    thm5_equivalence,
    verify_cover,
)
from .core_sets import SEIndex, SESubset, SoftSet, Universe, enumerate_se, make_soft_set
from .errors import (
    AxiomViolation,
    CapExceeded,
    NotCanonical,
    ShapeError,
    SoftBitopError,
    TheoremViolation,
    UnknownLabel,
)
from .finite_group import FiniteGroup, SEGroup, SoftGroup, make_group
from .finite_topology import CarrierMap, FiniteTopology
from .instance_io import load_instance, parse_instance
from .soft_topology import SoftTopology, canonical_enlargement, materialize_tau_star
from .verdict import Verdict

__all__ = [
    "AxiomViolation",
    "CapExceeded",
    "CarrierMap",
    "CoverProblem",
    "FiniteGroup",
    "FiniteTopology",
    "NotCanonical",
    "SBTGInstance",
    "SEGroup",
    "SEIndex",
    "SESubset",
    "ShapeError",
    "SoftBitopError",
    "SoftBitopSpace",
    "SoftGroup",
    "SoftSet",
    "SoftTopology",
    "TheoremViolation",
    "Universe",
    "UnknownLabel",
    "Verdict",
    "bi_soft_connected",
    "canonical_enlargement",
    "check_sbtg_hom",
    "enumerate_se",
    "is_sbtg_componentwise",
    "is_sbtg_oracle",
    "load_instance",
    "make_group",
    "make_soft_set",
    "materialize_tau_star",
    "minimal_subcover",
    "pairwise_soft_separation",
    "parse_instance",
    "slices_pairwise_separation",
    "thm5_equivalence",
    "verify_cover",
]

__version__ = "0.1.0"
