"""Exact combinatorics of Langlands-type parameters over finite fields.

The package builds based root data and their duals, Weyl groups with
twisted conjugacy on the Frobenius coset, finite torus arithmetic through
Smith normal forms, enumerations of rigid / Weil / inertial parameter
classes, and parameters of Weil-Deligne type with their component groups.
A brute-force oracle over explicit finite fields cross-checks every count.
All arithmetic is exact (integers and fractions); nothing uses floats.
"""

from .errors import (BoundExceededError, DatumError, FinweilError,
                     IncompatibleParameterError, ParseError,
                     UnsupportedFactorError)
from .root_datum import (BasedRootDatum, GaloisTwist, dualize, dual_twist,
                         format_datum, is_isomorphic, make_twist, parse_datum,
                         standard_datum, trivial_twist, validate)
from .weyl import (FrobeniusElement, TwistedClass, WeylGroup, coset_centralizer,
                   frobenius_element, generate, twisted_classes)
from .finite_torus import (FiniteAbelianGroup, NormMap, TorusTorsionPoint,
                           character_orbits, fixed_point_group, norm_map,
                           torsion_point)
from .centralizer import (CenterTorsionWitness, ComponentGroupPresentation,
                          PseudoLevi, center_torsion_surjection_check,
                          centralizer_roots, pi0_centralizer, weyl_stabilizer)
from .weil_params import (InertialClass, RigidClass, TorusLanglandsTable,
                          WeilParameterClass, enumerate_rigid, inertial_class,
                          inertial_classes, packet_size_bound, rigid_to_weil,
                          torus_langlands, weil_classes)
from .weil_deligne import (CanonicalQuotient, ExtendedComponentGroup, WDClass,
                           WDTable, a_group, canonical_quotient, duality,
                           enumerate_orbits, enumerate_special_wd,
                           extended_group, is_special, special_partition)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
