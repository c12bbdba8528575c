"""Exact generic Iwahori, parahoric and spherical Hecke algebras of split root data."""
from .affine_weyl import AffineWeylGroup, DoubleCoset, ExtAffineElement, Facet, affine_weyl_group
from .bernstein import OPPOSITE, STANDARD, canonical_decomposition, theta, theta_relation_exponent, z_basis_element
from .central_map import (
    central_ic_class,
    expand_in_z_basis,
    satake_structure_constants,
    spherical_crosscheck,
    verify_bernstein_iso,
)
from .dual_weights import Character, tensor_multiplicities, weight_multiplicities, weyl_dimension
from .errors import HeckeForgeError, InvariantViolation
from .exactpoly import GroupRingElement, LaurentPoly, Q
from .hecke import HeckeAlgebra, HeckeElement, hecke_algebra
from .kernels import BACKEND as KERNEL_BACKEND
from .parahoric import ParahoricAlgebra, ParahoricElement, parahoric_algebra
from .rootdata import PRESETS, RootDatum, build_root_datum, load_root_datum, preset

__version__ = "0.1.0"
