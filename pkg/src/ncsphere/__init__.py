"""Exact classification invariants of rational noncommutative tori and spheres."""

from .classify import (
    AlgebraDescriptor,
    CharClass,
    RecoveryInvariants,
    center_finiteness,
    characteristic_two_class,
    class_chain_check,
    fiber_k0_rank,
    iso_sphere3,
    iso_torus2,
    recovery_invariants,
)
from .errors import (
    EnumerationGuardError,
    InternalInvariantError,
    InvalidMatrixError,
    LatticeError,
)
from .faces import (
    CenterSkeleton,
    FaceInvariants,
    FiberStructure,
    JumpComplex,
    all_faces,
    azumaya_faces,
    center_skeleton,
    face_invariants,
    fiber_structure,
    is_azumaya,
    jump_complex,
)
from .intmat import IntMatrix, hermite_normal_form, skew_normal_form, smith_normal_form
from .lattice import Lattice, integrality_kernel, lattice_index, lattice_restrict, lattice_sum
from .report import InvariantReport, build_report, congruence_payload, iso_payload
from .theta import (
    SkewRationalMatrix,
    ThetaProfile,
    TorusDecomposition,
    congruence_witness,
    congruent_over_Z,
    decompose,
    profile,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraDescriptor",
    "CenterSkeleton",
    "CharClass",
    "EnumerationGuardError",
    "FaceInvariants",
    "FiberStructure",
    "IntMatrix",
    "InternalInvariantError",
    "InvalidMatrixError",
    "InvariantReport",
    "JumpComplex",
    "Lattice",
    "LatticeError",
    "RecoveryInvariants",
    "SkewRationalMatrix",
    "ThetaProfile",
    "TorusDecomposition",
    "all_faces",
    "azumaya_faces",
    "build_report",
    "center_finiteness",
    "center_skeleton",
    "characteristic_two_class",
    "class_chain_check",
    "congruence_payload",
    "congruence_witness",
    "congruent_over_Z",
    "decompose",
    "face_invariants",
    "fiber_k0_rank",
    "fiber_structure",
    "hermite_normal_form",
    "integrality_kernel",
    "is_azumaya",
    "iso_payload",
    "iso_sphere3",
    "iso_torus2",
    "jump_complex",
    "lattice_index",
    "lattice_restrict",
    "lattice_sum",
    "profile",
    "recovery_invariants",
    "skew_normal_form",
    "smith_normal_form",
]
