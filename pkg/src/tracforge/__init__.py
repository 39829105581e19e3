"""Trace ideals, test ideals and module closures over quotients of polynomial rings."""

from .closurelab import (
    ClosureReport,
    closure_of_ideal,
    closure_of_submodule,
    colon_capturing_check,
    family_test_ideal,
    generates,
    has_free_summand,
    is_m_primary,
    singular_containment_check,
    socle,
    test_ideal,
    trace_ideal,
    trace_module,
)
from .fpmod import (
    FPModule,
    ModuleMap,
    direct_sum,
    ext1,
    free_module,
    free_resolution,
    from_cokernel,
    from_submodule,
    hom,
    hom_to_ring,
    minimalize,
    syzygy_of_residue_field,
    tensor,
)
from .gbengine import (
    Ideal,
    Submodule,
    annihilator,
    buchberger,
    colon,
    dimension_is_zero,
    eliminate,
    intersect,
    kernel_of_matrix,
    krull_dimension,
    membership,
    normal_form,
    radical_membership,
    syzygies,
)
from .polycore import QQ, Field, MonomialOrder, Polynomial, PolyRing, QuotientRing, make_ring, polynomial_ring

__all__ = [name for name in dir() if not name.startswith("_")]
