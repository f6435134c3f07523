"""Finite crossed modules, their bispaces, and Cech bibundle classification."""

from .errors import (ActionError, BispaceError, BudgetExceeded, CocycleError, CrossedModuleAxiomError,
                     GroupAxiomError, HomomorphismError, MismatchError, MorphismError, NerveError, NotNormalError,
                     NotSubgroupError, ValidationError, XmodError)
from .groups import (FiniteGroup, GroupHom, Subgroup, builtin_groups, cyclic_group, dihedral_group,
                     direct_product, enumerate_automorphisms, find_group_isomorphism, quotient_group,
                     semidirect_product, symmetric_group, validate_group, validate_hom)
from .crossed import (CrossedModule, CrossedModuleMorphism, adjoint_module, builtin_crossed_modules, jandl_module,
                      two_group, v4_module, validate_crossed_module, validate_morphism)
from .bispace import (Bispace, BispaceMorphism, dual, extend, find_isomorphism, make_bispace, pi0_group,
                      standard_bispace, tensor, trivial_bispace, twist, type_of)

__version__ = "0.1.0"
