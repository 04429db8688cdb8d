"""Orbifold and higher-order Euler characteristics of finite G-sets, their
Grothendieck-ring classes, power structures, and L-weighted versions for
equivariant bundles."""

from .bundles import (CharacterBundle, VectClass, ZeroBundle, age, age_wreath, class_of_vect,
                      generalized_chi, verify_wreath_bundle_theorem)
from .euler import chi_k_recursive, chi_k_tuples, euler_char, verify_induction_invariance
from .groups import FiniteGroup, direct_product, named_group, wreath_product
from .gsets import GSet, point, regular, trivial_gset, wreath_power
from .k0fgr import FgrClass, class_of
from .lpoly import LPolynomial
from .powerstructures import effective_power, verify_tamanoi, zeta_lambda_divergence

__version__ = "0.1.0"

__all__ = [
    "CharacterBundle", "VectClass", "ZeroBundle", "age", "age_wreath", "class_of_vect",
    "generalized_chi", "verify_wreath_bundle_theorem", "chi_k_recursive", "chi_k_tuples",
    "euler_char", "verify_induction_invariance", "FiniteGroup", "direct_product", "named_group",
    "wreath_product", "GSet", "point", "regular", "trivial_gset", "wreath_power", "FgrClass",
    "class_of", "LPolynomial", "effective_power", "verify_tamanoi", "zeta_lambda_divergence",
]
