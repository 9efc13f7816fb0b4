"""Brute-force witnesses for the main invariants.

Nothing in this module shares normal-form machinery with the main path:
every count is a raw enumeration.  That makes the routines exponential
and only usable at desk scale, which is the point; each one carries a
hard guard and refuses anything bigger rather than silently degrading.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import isqrt
from typing import Sequence

from .errors import EnumerationGuardError, InternalInvariantError, InvalidMatrixError, LatticeError
from .intmat import IntMatrix
from .lattice import Lattice
from .theta import SkewRationalMatrix

__all__ = [
    "OracleReport",
    "brute_image_count",
    "brute_coset_index",
    "twisted_block_structure",
    "IMAGE_COUNT_GUARD",
    "COSET_INDEX_GUARD",
    "BLOCK_STRUCTURE_GUARD",
]

IMAGE_COUNT_GUARD = 10**7
COSET_INDEX_GUARD = 10**5
BLOCK_STRUCTURE_GUARD = 10**6


@dataclass(frozen=True)
class OracleReport:
    """One main-path value next to its brute-force twin."""

    checked_quantity: str
    main_value: int
    oracle_value: int
    agrees: bool

    def __post_init__(self) -> None:
        if self.agrees != (self.main_value == self.oracle_value):
            raise InternalInvariantError("oracle report flag contradicts its values")


def brute_image_count(scaled: IntMatrix, ell: int) -> int:
    """Size of the image of scaled acting on (Z/ell)^n, by full enumeration."""
    if not scaled.is_square():
        raise ValueError("square matrix required")
    if ell < 1:
        raise ValueError("modulus must be positive")
    n = scaled.nrows
    if ell**n > IMAGE_COUNT_GUARD:
        raise EnumerationGuardError(
            f"image enumeration of size {ell}^{n} exceeds guard {IMAGE_COUNT_GUARD}"
        )
    rows = scaled.rows
    images = set()
    for v in product(range(ell), repeat=n):
        images.add(tuple(sum(r * x for r, x in zip(row, v)) % ell for row in rows))
    return len(images)


def brute_coset_index(sub: Lattice, sup: Lattice) -> int:
    """Index [sup : sub] by counting sup-points in a fundamental box of sub.

    The Hermite pivots of sub bound a box that contains exactly one
    representative of every sub-coset, so counting the box points that
    belong to sup counts the cosets.
    """
    if sub.ambient_rank != sup.ambient_rank:
        raise LatticeError("ambient rank mismatch")
    if not (sub.is_full_rank() and sup.is_full_rank()):
        raise LatticeError("index is infinite unless both lattices have full rank")
    if not sup.contains_lattice(sub):
        raise LatticeError("first argument is not contained in second")
    pivots = []
    for row in sub.basis:
        pivots.append(next(v for v in row if v))
    volume = 1
    for p in pivots:
        volume *= p
    if volume > COSET_INDEX_GUARD:
        raise EnumerationGuardError(
            f"coset enumeration over {volume} box points exceeds guard {COSET_INDEX_GUARD}"
        )
    count = 0
    for point in product(*(range(p) for p in pivots)):
        if sup.contains(list(point)):
            count += 1
    return count


def twisted_block_structure(
    theta: SkewRationalMatrix, face: Sequence[int], ell: int
) -> tuple[int, int]:
    """(block_count, block_size) of the twisted algebra of (Z/ell)^F.

    The twist is the bicharacter induced by theta on the face
    coordinates; ell must clear the face denominators.  Counting the
    radical of the pairing by enumeration gives the block count, and the
    square root of |group| / |radical| the common block size.
    """
    coords = sorted(set(face))
    if coords and (coords[0] < 1 or coords[-1] > theta.n):
        raise ValueError("face coordinates out of range")
    if ell < 1:
        raise ValueError("modulus must be positive")
    k = len(coords)
    if k == 0:
        return 1, 1
    sub = theta.restrict(coords)
    try:
        scaled = sub.scaled(ell)
    except InvalidMatrixError as exc:
        raise InvalidMatrixError(
            f"modulus {ell} does not clear the face denominators"
        ) from exc
    group_size = ell**k
    if group_size > BLOCK_STRUCTURE_GUARD:
        raise EnumerationGuardError(
            f"group enumeration of size {ell}^{k} exceeds guard {BLOCK_STRUCTURE_GUARD}"
        )
    rows = scaled.rows
    radical = 0
    for g in product(range(ell), repeat=k):
        if all(sum(r * x for r, x in zip(row, g)) % ell == 0 for row in rows):
            radical += 1
    if group_size % radical:
        raise InternalInvariantError("radical size does not divide group size")
    quotient = group_size // radical
    size = isqrt(quotient)
    if size * size != quotient:
        raise InternalInvariantError("nondegenerate quotient size is not a perfect square")
    return radical, size
