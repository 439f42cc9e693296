"""Exact computations with differential graded Lie algebras over the rationals:
cohomology, free and Chevalley-Eilenberg constructions, Maurer-Cartan theory,
Kuranishi models and equivariant splittings."""
from .artin import (ArtinAlgebra, SmallExtension, dual_numbers, power_series_extension,
                    small_extension, square_zero_extension, truncated_power_series)
from .ce import CEComplex, ce_cohomology, ce_complex, ce_of_morphism, ce_product
from .deformation import (HomotopyData, KuranishiResult, MCElement, SemiUniversalModel, etale_check,
                          gauge_act, homotopy_data, is_mc, kuranishi, kuranishi_residual, mc_check,
                          obstruction_lift, prorep_check, semi_universal_model, tangent_space)
from .dgla import (Cohomology, Dgla, DglaMorphism, Truncation, cohomology, cohomology_dims, cone,
                   induced_map_on_H, quasi_iso_check, validate_dgla, validate_morphism)
from .equivariant import (GroupAction, equivariant_complement, equivariant_kuranishi,
                          equivariant_semi_universal, reynolds, validate_action)
from .errors import *  # noqa: F401,F403
from .free import free_approximation_init, free_approximation_step, free_dgla
from .graded import GradedMap, GradedVectorSpace, dual, shift, tensor
from .io import parse_dgla, serialize_dgla
from .linalg import Matrix, Subspace, complement, image_basis, kernel_basis, rref

__version__ = "0.1.0"
