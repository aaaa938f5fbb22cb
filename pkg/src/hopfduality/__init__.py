"""Duality for finite-dimensional coinvolutive Hopf-von Neumann algebras without Haar weights."""
from .algebra import (AlgebraRep, AxiomReport, FinStarAlgebra, Subspace, cstar_envelope,
                      envelope_of_ideal, hull, irreducible_star_reps, jacobson_radical,
                      verify_star_algebra, wedderburn_blocks)
from .duality import (DualConstruction, absolutely_continuous_ideal, annihilator_ideal_check,
                      canonical_D, canonical_E, de_identity, dual_morphism, dualize,
                      grouplike_group, is_reflexive, reconstruct_group, triple_dual_check)
from .errors import HopfDualityError
from .estimators import HopfDual, StarEnvelope
from .groups import (FiniteGroup, cyclic, dihedral, dual_group, function_algebra,
                     group_vn_algebra, product, quaternion8, symmetric, twisted_hopf,
                     two_element_monoid)
from .hopf import HopfMorphism, HopfVNAlgebra, compose, flip_map, verify_hopf, verify_morphism
from .predual import PredualAlgebra, build_predual, coefficient
from .report import DualityReport, duality_report
from .reps import (Generator, StarRep, build_generator, coefficients, extract_rep, is_standard,
                   kronecker, nondegenerate_on_ideal)

__version__ = "0.1.0"
