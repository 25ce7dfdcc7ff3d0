"""Verlinde numbers for compact simple groups and their quotients by central subgroups."""
from .centerlat import (
    CenterCharacter,
    CenterElement,
    CenterSubgroup,
    all_subgroups,
    center_group,
    center_weyl_map,
    coxeter_fixed_subgroup,
    levels,
    subgroup_from_generators,
    subgroup_from_spec,
    trivial_subgroup,
)
from .fusion import (
    FusionVector,
    LevelWeightTable,
    SMatrix,
    character,
    common_fixed_weights,
    epsilon,
    fusion_product,
    level_weights,
    s_matrix,
    tau_natural,
    weyl_denominator,
)
from .phases import PhaseValue, delta, delta_closed_form, is_prequantizable, kappa, prequant_commutator
from .rootdata import LieType, RootDatum, build_root_datum
from .verlinde import (
    ModuliSpec,
    congruence_check,
    pu_n_prime,
    trivial_stabilizer_check,
    verlinde_nsc,
    verlinde_nsc_table,
    verlinde_sc,
)
from .weyl import WeylElement, WeylGroup, coxeter_element, enumerate_weyl, longest_element

__version__ = "0.1.0"

__all__ = [
    "CenterCharacter",
    "CenterElement",
    "CenterSubgroup",
    "FusionVector",
    "LevelWeightTable",
    "LieType",
    "ModuliSpec",
    "PhaseValue",
    "RootDatum",
    "SMatrix",
    "WeylElement",
    "WeylGroup",
    "all_subgroups",
    "build_root_datum",
    "center_group",
    "center_weyl_map",
    "character",
    "common_fixed_weights",
    "congruence_check",
    "coxeter_element",
    "coxeter_fixed_subgroup",
    "delta",
    "delta_closed_form",
    "enumerate_weyl",
    "epsilon",
    "fusion_product",
    "is_prequantizable",
    "kappa",
    "level_weights",
    "levels",
    "longest_element",
    "prequant_commutator",
    "pu_n_prime",
    "s_matrix",
    "subgroup_from_generators",
    "subgroup_from_spec",
    "tau_natural",
    "trivial_stabilizer_check",
    "trivial_subgroup",
    "verlinde_nsc",
    "verlinde_nsc_table",
    "verlinde_sc",
    "weyl_denominator",
]
