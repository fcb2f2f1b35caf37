"""Finite matrix groups over Z/ℓ, their characters, projective spaces and dimension bounds."""
from .bounds import (algebraic_forced, bmk_lower_bound, depth_dim_lower_bound, max_depth_for_dim,
                     min_nontrivial_dim)
from .characters import Character, CharacterTable, ClassStructure, character_table, factoring_level
from .finite import FiniteMatrixGroup, enumerate_group, normal_closure, subgroup_generated
from .modular import crt_split, predicted_order
from .projective import ProjectiveSpace, permutation_character_norm, projective_space, projective_space_rep

__all__ = [
    "Character",
    "CharacterTable",
    "ClassStructure",
    "FiniteMatrixGroup",
    "ProjectiveSpace",
    "algebraic_forced",
    "bmk_lower_bound",
    "character_table",
    "crt_split",
    "depth_dim_lower_bound",
    "enumerate_group",
    "factoring_level",
    "max_depth_for_dim",
    "min_nontrivial_dim",
    "normal_closure",
    "permutation_character_norm",
    "predicted_order",
    "projective_space",
    "projective_space_rep",
    "subgroup_generated",
]
