"""Isomorphism decisions and recovery invariants.

For the three-dimensional spheres and two-dimensional tori, matrices are
a single rational angle and the isomorphism question is an integer-shift
question up to sign.  The same verdict can be read off a characteristic
class living in Z / (q n); class_chain_check runs both routes, plus the
raw divisibility form, and insists they agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import InternalInvariantError
from .theta import SkewRationalMatrix, profile

__all__ = [
    "AlgebraDescriptor",
    "CharClass",
    "RecoveryInvariants",
    "IsoVerdict",
    "characteristic_two_class",
    "iso_sphere3",
    "iso_torus2",
    "iso_verdict",
    "class_chain_check",
    "recovery_invariants",
    "fiber_k0_rank",
    "center_finiteness",
]


@dataclass(frozen=True)
class AlgebraDescriptor:
    """A deformed algebra tensored with a full matrix factor."""

    kind: str  # "sphere" or "torus"
    theta: SkewRationalMatrix
    n_tensor: int

    def __post_init__(self) -> None:
        if self.kind not in ("sphere", "torus"):
            raise ValueError("kind must be 'sphere' or 'torus'")
        if self.n_tensor < 1:
            raise ValueError("tensor size must be at least 1")
        if self.kind == "sphere" and self.theta.n < 2:
            raise ValueError("sphere descriptors need dimension at least 2")

    @property
    def m(self) -> int:
        return self.theta.n


@dataclass(frozen=True)
class CharClass:
    """Residue class in Z / modulus."""

    modulus: int
    residue: int

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        if not 0 <= self.residue < self.modulus:
            raise ValueError("residue must be reduced into [0, modulus)")


def characteristic_two_class(p: int, q: int, n: int) -> CharClass:
    """Obstruction class of the angle p/q tensored with an n x n factor.

    The inverse of p mod q is lifted to its representative in [0, q),
    multiplied by n, and reduced mod q*n.  Requires gcd(p, q) == 1.
    """
    if q < 1:
        raise ValueError("denominator must be positive")
    if n < 1:
        raise ValueError("tensor size must be at least 1")
    if gcd(p, q) != 1:
        raise ValueError("p and q must be coprime")
    lifted = pow(p, -1, q)
    return CharClass(modulus=q * n, residue=(n * lifted) % (q * n))


def _angles_match(theta: Fraction, other: Fraction) -> str | None:
    if (theta - other).denominator == 1:
        return "difference"
    if (theta + other).denominator == 1:
        return "sum"
    return None


def iso_sphere3(theta: Fraction, n: int, theta_prime: Fraction, n_prime: int) -> bool:
    """Isomorphism of three-spheres deformed by single angles, with matrix
    factors of sizes n and n_prime: sizes must match and the angles must
    agree up to sign and integer shift."""
    if n < 1 or n_prime < 1:
        raise ValueError("tensor sizes must be at least 1")
    return n == n_prime and _angles_match(Fraction(theta), Fraction(theta_prime)) is not None


def iso_torus2(theta: Fraction, n: int, theta_prime: Fraction, n_prime: int) -> bool:
    """Same criterion as the sphere case; the torus angle classifies the
    same way."""
    return iso_sphere3(theta, n, theta_prime, n_prime)


@dataclass(frozen=True)
class IsoVerdict:
    """Explained isomorphism decision for the single-angle families."""

    kind: str
    isomorphic: bool
    relation: str | None  # "difference" or "sum" when isomorphic
    shift: int | None  # the integer theta -+ theta' when isomorphic
    classes: tuple[CharClass, CharClass] | None


def iso_verdict(
    kind: str, theta: Fraction, n: int, theta_prime: Fraction, n_prime: int
) -> IsoVerdict:
    """Decision plus its witness data, for reporting.

    When both angles share a lowest-term denominator and the sizes agree
    the two characteristic classes are attached; their equality up to
    sign is the same verdict, which is asserted.
    """
    if kind not in ("sphere3", "torus2"):
        raise ValueError("kind must be 'sphere3' or 'torus2'")
    theta = Fraction(theta)
    theta_prime = Fraction(theta_prime)
    decide = iso_sphere3 if kind == "sphere3" else iso_torus2
    verdict = decide(theta, n, theta_prime, n_prime)
    relation = None
    shift = None
    if verdict:
        relation = _angles_match(theta, theta_prime)
        diff = theta - theta_prime if relation == "difference" else theta + theta_prime
        shift = int(diff)
    classes = None
    if n == n_prime and theta.denominator == theta_prime.denominator:
        classes = (
            characteristic_two_class(theta.numerator, theta.denominator, n),
            characteristic_two_class(theta_prime.numerator, theta_prime.denominator, n),
        )
        by_classes = (
            classes[0].residue == classes[1].residue
            or (classes[0].residue + classes[1].residue) % classes[0].modulus == 0
        )
        if by_classes != verdict:
            raise InternalInvariantError("class comparison disagrees with angle comparison")
    return IsoVerdict(
        kind=kind, isomorphic=verdict, relation=relation, shift=shift, classes=classes
    )


def class_chain_check(p: int, q: int, p_prime: int, q_prime: int, n: int) -> bool:
    """Equivalence of the three forms of the sign-shift criterion.

    For angles p/q and p'/q with a common denominator and tensor size n,
    these are all the same statement: the characteristic classes agree up
    to sign mod q*n; q divides one of p +- p'; the two algebras are
    isomorphic.  Computes all three, insists they agree, returns the
    shared verdict.
    """
    if q != q_prime:
        raise ValueError("chain comparison needs a common denominator")
    if gcd(p, q) != 1 or gcd(p_prime, q) != 1:
        raise ValueError("angles must be in lowest terms")
    a = characteristic_two_class(p, q, n)
    b = characteristic_two_class(p_prime, q, n)
    by_classes = a.residue == b.residue or (a.residue + b.residue) % a.modulus == 0
    by_divisibility = (p - p_prime) % q == 0 or (p + p_prime) % q == 0
    by_iso = iso_sphere3(Fraction(p, q), n, Fraction(p_prime, q), n)
    if not (by_classes == by_divisibility == by_iso):
        raise InternalInvariantError(
            f"criterion chain split: classes={by_classes}, "
            f"divisibility={by_divisibility}, iso={by_iso}"
        )
    return by_classes


@dataclass(frozen=True)
class RecoveryInvariants:
    """What an observer can read back off the algebra alone.

    k0_rank is only forced for tori (a power of two in the dimension);
    for spheres it is left unset rather than guessed.
    """

    kind: str
    min_irrep_dim: int
    k0_rank: int | None
    identity_divisibility: int
    dim_center_spectrum: int


def recovery_invariants(descriptor: AlgebraDescriptor) -> RecoveryInvariants:
    """Invariants that recover the construction parameters.

    Spheres: the smallest irreducible representation has the dimension of
    the tensor factor (vertex fibers are commutative circles times the
    matrix factor), and the center's spectrum has dimension 2m - 1.
    Tori: the smallest irreducible representation picks up the PI degree,
    K_0 is free of rank 2^(m-1), and the class of the identity is
    divisible exactly by the tensor size.
    """
    m = descriptor.m
    n_tensor = descriptor.n_tensor
    if descriptor.kind == "sphere":
        return RecoveryInvariants(
            kind="sphere",
            min_irrep_dim=n_tensor,
            k0_rank=None,
            identity_divisibility=n_tensor,
            dim_center_spectrum=2 * m - 1,
        )
    return RecoveryInvariants(
        kind="torus",
        min_irrep_dim=n_tensor * profile(descriptor.theta).pi_degree,
        k0_rank=2 ** (m - 1),
        identity_divisibility=n_tensor,
        dim_center_spectrum=m,
    )


def fiber_k0_rank(theta: SkewRationalMatrix, face: tuple[int, ...]) -> int:
    """Free rank of K_0 of the torus fiber over a proper face.

    The fiber over a face F is a torus algebra on the m - |F| coordinates
    off the face, contributing rank 2^(m - |F| - 1).  The full face has
    no torus fiber and is rejected.
    """
    m = theta.n
    coords = tuple(sorted(set(face)))
    if coords and (coords[0] < 1 or coords[-1] > m):
        raise ValueError("face coordinates must lie in 1..m")
    if len(coords) >= m:
        raise ValueError("the full face carries no torus fiber")
    r = m - len(coords)
    return 2 ** (r - 1)


def center_finiteness(theta: SkewRationalMatrix) -> tuple[bool, bool]:
    """(algebraically_finite, topologically_finite) over the center.

    Finite generation as a module over the center holds exactly when
    theta is integral, which is when the algebra is commutative;
    topological center-finiteness holds unconditionally.
    """
    return theta.is_integral(), True
