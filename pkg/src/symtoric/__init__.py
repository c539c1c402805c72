"""Exact symplectic linear algebra, Delzant polytopes and toric quantization."""

__version__ = "0.1.0"

from .errors import (Degenerate, Empty, InconsistentEquations, InputError, IntegralityFailure,
                     InvarianceViolation, KernelConditionViolated, NegativeModulus, NotDelzant,
                     NotLagrangian, OddDimension, OutsidePolytope, PreconditionError,
                     SymtoricError, Unbounded, VerificationFailure)
from .exact import Gaussian, I, Matrix
from .torus import Subtorus
from .polytope import HPolytope, enumerate_vertices, face_lattice, lattice_points, verify_delzant
from .symplin import (FiniteGroupRep, Subspace, SymplecticSpace, WeightRep, darboux_basis,
                      linear_reduce, reduce_lagrangian, symplectic_complement)
from .delzant import DelzantData, build_delzant
from .quant import qr_check, quantization_basis
from .stratify import infinitesimal_partition, orbit_type_partition, reduced_space_strata
