"""Face-indexed geometry of the deformed sphere.

Faces are subsets of {1, ..., n}, written as sorted 1-based tuples.  Each
face F carries the rank of the restricted matrix, the lattice-index
multiplicity of the fiber over the face interior, and the degree of the
branched torus cover on the face coordinates.  Faces where the rank
drops form the jump complex; its complement is the locus where the
algebra is Azumaya.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from .errors import EnumerationGuardError, InternalInvariantError
from .lattice import Lattice, integrality_kernel, lattice_index, lattice_restrict
from .theta import SkewRationalMatrix, ThetaProfile, profile

__all__ = [
    "Face",
    "FaceInvariants",
    "JumpComplex",
    "FiberStructure",
    "CenterSkeleton",
    "SkeletonRecord",
    "DEFAULT_MAX_BITS",
    "all_faces",
    "face_invariants",
    "face_invariant_table",
    "jump_complex",
    "azumaya_faces",
    "is_azumaya",
    "fiber_structure",
    "center_skeleton",
]

Face = tuple[int, ...]

DEFAULT_MAX_BITS = 20


def _as_face(coords: Iterable[int], n: int) -> Face:
    face = tuple(sorted(set(coords)))
    if face and (face[0] < 1 or face[-1] > n):
        raise ValueError("face coordinates must lie in 1..n")
    return face


def all_faces(n: int, max_bits: int = DEFAULT_MAX_BITS) -> Iterator[Face]:
    """All subsets of {1..n}, sorted by size then lexicographically."""
    if n > max_bits:
        raise EnumerationGuardError(
            f"face enumeration over {n} coordinates exceeds the {max_bits}-bit guard"
        )
    for size in range(n + 1):
        yield from combinations(range(1, n + 1), size)


@dataclass(frozen=True)
class FaceInvariants:
    """Arithmetic data of one face."""

    face: Face
    h_face: int
    pi_degree_face: int
    multiplicity: int
    cover_degree: int
    quotient_rank: int


def _face_profile(theta: SkewRationalMatrix, face: Face) -> ThetaProfile | None:
    if not face:
        return None
    return profile(theta.restrict(face))


def face_invariants(theta: SkewRationalMatrix, coords: Iterable[int]) -> FaceInvariants:
    """Invariants of a single face of theta.

    The empty face is the basepoint: rank 1 by convention, trivial
    multiplicity and cover.
    """
    n = theta.n
    face = _as_face(coords, n)
    if not face:
        return FaceInvariants(
            face=(),
            h_face=1,
            pi_degree_face=1,
            multiplicity=1,
            cover_degree=1,
            quotient_rank=n,
        )
    prof = profile(theta.restrict(face))
    kernel = integrality_kernel(theta.entries)
    restricted = lattice_restrict(kernel, face)
    multiplicity = lattice_index(restricted, prof.kernel)
    q_diag = [theta.row_denominator_lcm(c - 1) for c in face]
    q_box = Lattice.from_rows(
        len(face),
        [[q_diag[i] if i == j else 0 for j in range(len(face))] for i in range(len(face))],
    )
    cover = lattice_index(q_box, restricted)
    return FaceInvariants(
        face=face,
        h_face=prof.h,
        pi_degree_face=prof.pi_degree,
        multiplicity=multiplicity,
        cover_degree=cover,
        quotient_rank=n - len(face),
    )


def face_invariant_table(
    theta: SkewRationalMatrix, max_bits: int = DEFAULT_MAX_BITS
) -> dict[Face, FaceInvariants]:
    """face_invariants for every face, keyed by face."""
    return {face: face_invariants(theta, face) for face in all_faces(theta.n, max_bits)}


@dataclass(frozen=True)
class JumpComplex:
    """Faces where the rank drops below the full-face value."""

    n: int
    faces: frozenset[Face]

    def sorted_faces(self) -> list[Face]:
        return sorted(self.faces, key=lambda f: (len(f), f))

    def facets(self) -> list[Face]:
        """Maximal faces of the complex."""
        out = []
        for face in self.faces:
            if not any(other != face and set(face) <= set(other) for other in self.faces):
                out.append(face)
        return sorted(out, key=lambda f: (len(f), f))


def _face_rank(theta: SkewRationalMatrix, face: Face, cache: dict[Face, int]) -> int:
    if face not in cache:
        cache[face] = 1 if not face else profile(theta.restrict(face)).h
    return cache[face]


def jump_complex(theta: SkewRationalMatrix, max_bits: int = DEFAULT_MAX_BITS) -> JumpComplex:
    """All faces with h_face < h, checked to be downward closed."""
    full = profile(theta).h
    cache: dict[Face, int] = {}
    jumped = [
        face
        for face in all_faces(theta.n, max_bits)
        if _face_rank(theta, face, cache) < full
    ]
    members = frozenset(jumped)
    for face in jumped:
        for drop in face:
            smaller = tuple(c for c in face if c != drop)
            if smaller not in members:
                raise InternalInvariantError(
                    f"jump complex not downward closed at {face} / {smaller}"
                )
    return JumpComplex(n=theta.n, faces=members)


def azumaya_faces(theta: SkewRationalMatrix, max_bits: int = DEFAULT_MAX_BITS) -> list[Face]:
    """Faces where the restricted rank equals the full rank."""
    full = profile(theta).h
    cache: dict[Face, int] = {}
    return [
        face
        for face in all_faces(theta.n, max_bits)
        if _face_rank(theta, face, cache) == full
    ]


def is_azumaya(theta: SkewRationalMatrix) -> bool:
    """Whether the deformed sphere is Azumaya over its center.

    Happens exactly when theta is integral, equivalently h == 1; both
    tests run and must agree.
    """
    by_entries = theta.is_integral()
    by_rank = profile(theta).h == 1
    if by_entries != by_rank:
        raise InternalInvariantError("integrality test disagrees with rank test")
    return by_rank


@dataclass(frozen=True)
class FiberStructure:
    """Matrix-block shape of the fiber over a face-interior central point."""

    face: Face
    block_size: int
    block_count: int
    total_dim: int


def fiber_structure(
    theta: SkewRationalMatrix, coords: Iterable[int], n_tensor: int = 1
) -> FiberStructure:
    """Fiber of the deformed sphere tensored with an n_tensor x n_tensor
    matrix factor: block_count copies of a full matrix algebra of size
    block_size."""
    if n_tensor < 1:
        raise ValueError("tensor size must be at least 1")
    inv = face_invariants(theta, coords)
    size = n_tensor * inv.pi_degree_face
    count = inv.multiplicity
    return FiberStructure(
        face=inv.face,
        block_size=size,
        block_count=count,
        total_dim=count * size * size,
    )


@dataclass(frozen=True)
class SkeletonRecord:
    face: Face
    torus_rank: int
    cover_degree: int


@dataclass(frozen=True)
class CenterSkeleton:
    """The center's spectrum as a face-indexed union of branched torus covers."""

    n: int
    dim_x: int
    sphere_sufficient: bool
    records: tuple[SkeletonRecord, ...]

    def record_for(self, face: Face) -> SkeletonRecord:
        for rec in self.records:
            if rec.face == face:
                return rec
        raise KeyError(face)


def center_skeleton(
    theta: SkewRationalMatrix,
    max_bits: int = DEFAULT_MAX_BITS,
    table: Mapping[Face, FaceInvariants] | None = None,
) -> CenterSkeleton:
    """Face-by-face description of the central spectrum.

    sphere_sufficient reports whether the integrality kernel is exactly
    the product of the row-denominator lattices, in which case the
    skeleton data already pins the center down to a product cover of the
    sphere; otherwise the kernel is strictly bigger and the cover glues.
    """
    n = theta.n
    if table is None:
        table = face_invariant_table(theta, max_bits)
    records = tuple(
        SkeletonRecord(face=face, torus_rank=len(face), cover_degree=table[face].cover_degree)
        for face in all_faces(n, max_bits)
    )
    dim_x = 2 * n - 1
    if dim_x != (n - 1) + records[-1].torus_rank:
        raise InternalInvariantError("spectrum dimension bookkeeping broken")
    kernel = integrality_kernel(theta.entries)
    q_lattice = Lattice.from_rows(
        n, [[theta.row_denominator_lcm(i) if i == j else 0 for j in range(n)] for i in range(n)]
    )
    return CenterSkeleton(
        n=n,
        dim_x=dim_x,
        sphere_sufficient=kernel == q_lattice,
        records=records,
    )
