"""VIC(Z)-modules on finite windows of ranks."""
from .analysis import (Covariants, Filtration, FiltrationLayer, GLExtension, GrowthReport, PropagationVerdict,
                       StableDepth, TripleVerdict, algebraic_isotypic_filtration, covariants_phi,
                       depth_four_control, depth_propagation_check, extend_sl_to_gl, extended_submodule_check,
                       generated_by_image, generated_submodule, generation_degree, growth_classify,
                       injectivity_degree, length_bound, noetherian_witness, phi_shift_identity, polynomial_degree,
                       shift_generation, stabilization_degree, stable_depth, torsion_head_module,
                       twist_dual_comparison, validate_weak_triple, zero_map_module, zero_then_trivial)
from .io import build_recipe, load_module, module_from_json
from .module import (Layer, VicWindowModule, cokernel_module, direct_sum, inverse_transpose_twist, iterated_shift,
                     projective_module, shift, standard_module, submodule, sum_zero_module, tensor, trivial_module)

__all__ = [
    "Covariants",
    "Filtration",
    "FiltrationLayer",
    "GLExtension",
    "GrowthReport",
    "Layer",
    "PropagationVerdict",
    "StableDepth",
    "TripleVerdict",
    "VicWindowModule",
    "algebraic_isotypic_filtration",
    "build_recipe",
    "cokernel_module",
    "covariants_phi",
    "depth_four_control",
    "depth_propagation_check",
    "direct_sum",
    "extend_sl_to_gl",
    "extended_submodule_check",
    "generated_by_image",
    "generated_submodule",
    "generation_degree",
    "growth_classify",
    "injectivity_degree",
    "inverse_transpose_twist",
    "iterated_shift",
    "length_bound",
    "load_module",
    "module_from_json",
    "noetherian_witness",
    "phi_shift_identity",
    "polynomial_degree",
    "projective_module",
    "shift",
    "shift_generation",
    "stabilization_degree",
    "stable_depth",
    "standard_module",
    "submodule",
    "sum_zero_module",
    "tensor",
    "torsion_head_module",
    "trivial_module",
    "twist_dual_comparison",
    "validate_weak_triple",
    "zero_map_module",
    "zero_then_trivial",
]
