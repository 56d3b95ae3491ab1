"""Exact lattice computations with toric rings: Hilbert bases, monomial primes,
symbolic powers, class groups and bounded containment checks."""

from .classgroup import class_group, exponent
from .cone import Cone, dual_cone, faces
from .families import FamilySpec, build
from .ideals import power_membership, prime_from_face, prime_from_rays, symbolic_membership
from .semigroup import SemigroupRing, enumerate_points, hilbert_basis

__all__ = [
    "Cone", "FamilySpec", "SemigroupRing", "build", "class_group", "dual_cone", "enumerate_points",
    "exponent", "faces", "hilbert_basis", "power_membership", "prime_from_face", "prime_from_rays",
    "symbolic_membership",
]
