"""Rational skew deformation matrices and their arithmetic invariants.

The central quantity is the Azumaya rank h: the index of Z^n inside
Z^n + theta Z^n.  It is computed here on the lattice route, plus two
independent routes (image counting through the Smith form, and the index
of the integrality kernel) used as cross-checks.  h is always a perfect
square and its square root is the PI degree of the deformed algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Sequence

from .errors import InternalInvariantError, InvalidMatrixError
from .intmat import IntMatrix, SkewNormalForm, skew_normal_form, smith_normal_form
from .lattice import Lattice, integrality_kernel, lattice_index, lattice_sum

__all__ = [
    "SkewRationalMatrix",
    "ThetaProfile",
    "TorusDecomposition",
    "profile",
    "h_by_image_count",
    "h_by_kernel_index",
    "decompose",
    "congruent_over_Z",
    "congruence_witness",
]


def _as_fraction(value: object) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    raise InvalidMatrixError(f"exact rational expected, got {value!r}")


class SkewRationalMatrix:
    """Immutable skew-symmetric matrix over Q with zero diagonal."""

    __slots__ = ("entries", "n")

    def __init__(self, entries: Sequence[Sequence[object]]):
        rows = tuple(tuple(_as_fraction(x) for x in row) for row in entries)
        n = len(rows)
        if n == 0:
            raise InvalidMatrixError("matrix must have dimension at least 1")
        for row in rows:
            if len(row) != n:
                raise InvalidMatrixError("matrix must be square")
        for i in range(n):
            if rows[i][i] != 0:
                raise InvalidMatrixError(f"diagonal entry ({i + 1},{i + 1}) is nonzero")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != -rows[j][i]:
                    raise InvalidMatrixError(
                        f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) are not opposite"
                    )
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "n", n)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("SkewRationalMatrix is immutable")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SkewRationalMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"SkewRationalMatrix({[[str(x) for x in row] for row in self.entries]!r})"

    @property
    def ell(self) -> int:
        """Least common denominator of all entries (1 for integral matrices)."""
        out = 1
        for row in self.entries:
            for x in row:
                out = lcm(out, x.denominator)
        return out

    def is_integral(self) -> bool:
        return self.ell == 1

    def scaled(self, factor: int) -> IntMatrix:
        """factor * theta as an integer matrix; factor must clear denominators."""
        rows = []
        for row in self.entries:
            out = []
            for x in row:
                y = x * factor
                if y.denominator != 1:
                    raise InvalidMatrixError(
                        f"{factor} does not clear the denominator of {x}"
                    )
                out.append(y.numerator)
            rows.append(out)
        return IntMatrix(rows, ncols=self.n)

    def restrict(self, coords: Sequence[int]) -> "SkewRationalMatrix":
        """Principal submatrix on a nonempty 1-based coordinate set."""
        face = sorted(set(coords))
        if not face:
            raise ValueError("empty coordinate set has no submatrix")
        if face[0] < 1 or face[-1] > self.n:
            raise ValueError("coordinates out of range")
        picked = [c - 1 for c in face]
        return SkewRationalMatrix(
            [[self.entries[i][j] for j in picked] for i in picked]
        )

    def conjugated(self, transform: IntMatrix) -> "SkewRationalMatrix":
        """transform @ theta @ transform.T over exact rationals."""
        if transform.shape != (self.n, self.n):
            raise ValueError("transform shape mismatch")
        t = transform.rows
        inter = [
            [sum(Fraction(t[i][k]) * self.entries[k][j] for k in range(self.n)) for j in range(self.n)]
            for i in range(self.n)
        ]
        return SkewRationalMatrix(
            [
                [sum(inter[i][k] * t[j][k] for k in range(self.n)) for j in range(self.n)]
                for i in range(self.n)
            ]
        )

    def row_denominator_lcm(self, i: int) -> int:
        """lcm of the lowest-term denominators in row i (0-based)."""
        out = 1
        for x in self.entries[i]:
            out = lcm(out, x.denominator)
        return out


@dataclass(frozen=True)
class ThetaProfile:
    """Arithmetic summary of one deformation matrix."""

    theta: SkewRationalMatrix
    ell: int
    scaled: IntMatrix
    kernel: Lattice
    h: int
    pi_degree: int
    q: tuple[int, ...]
    normal_form: SkewNormalForm


@dataclass(frozen=True)
class TorusDecomposition:
    """Congruence type over Z: free part plus elementary rotation factors.

    witness @ theta @ witness.T is the block-diagonal matrix with a
    free_rank zero block followed by 2x2 blocks [[0, f], [-f, 0]] for the
    rotation factors f, which divide one another in lowest-term ladder
    order inherited from the skew normal form.
    """

    free_rank: int
    factors: tuple[Fraction, ...]
    witness: IntMatrix

    @property
    def n(self) -> int:
        return self.free_rank + 2 * len(self.factors)

    def block_matrix(self) -> SkewRationalMatrix:
        n = self.n
        rows: list[list[Fraction]] = [[Fraction(0)] * n for _ in range(n)]
        for i, f in enumerate(self.factors):
            a = self.free_rank + 2 * i
            rows[a][a + 1] = f
            rows[a + 1][a] = -f
        return SkewRationalMatrix(rows)


def profile(theta: SkewRationalMatrix) -> ThetaProfile:
    """Compute the full arithmetic profile of theta.

    h is taken on the lattice route: scale by the common denominator ell
    and measure the index of ell*Z^n inside ell*Z^n + (ell*theta)Z^n,
    which equals [Z^n + theta Z^n : Z^n].  A non-square h means a bug,
    not bad input, and raises accordingly.
    """
    n = theta.n
    ell = theta.ell
    scaled = theta.scaled(ell)
    ambient = Lattice.scaled_standard(n, ell)
    column_span = Lattice.from_rows(n, scaled.transpose().rows)
    h = lattice_index(ambient, lattice_sum(ambient, column_span))
    pi = isqrt(h)
    if pi * pi != h:
        raise InternalInvariantError(f"Azumaya rank {h} is not a perfect square")
    kernel = integrality_kernel(theta.entries)
    for i in range(n):
        unit = [0] * n
        unit[i] = ell
        if not kernel.contains(unit):
            raise InternalInvariantError("integrality kernel misses ell * Z^n")
    q = tuple(theta.row_denominator_lcm(i) for i in range(n))
    for qi in q:
        if ell % qi:
            raise InternalInvariantError("row denominator does not divide ell")
    return ThetaProfile(
        theta=theta,
        ell=ell,
        scaled=scaled,
        kernel=kernel,
        h=h,
        pi_degree=pi,
        q=q,
        normal_form=skew_normal_form(scaled),
    )


def h_by_image_count(theta: SkewRationalMatrix, ell: int | None = None) -> int:
    """Azumaya rank as the image size of ell*theta acting on (Z/ell)^n.

    Any positive multiple of the minimal common denominator may be passed
    as ell; the count does not depend on the choice.  The image size is
    read off the Smith form: each invariant factor s contributes
    ell / gcd(s, ell) points.
    """
    minimal = theta.ell
    if ell is None:
        ell = minimal
    if ell <= 0 or ell % minimal:
        raise ValueError("ell must be a positive multiple of the common denominator")
    scaled = theta.scaled(ell)
    s, _, _ = smith_normal_form(scaled)
    out = 1
    for i in range(theta.n):
        out *= ell // gcd(s[i, i], ell)
    return out


def h_by_kernel_index(theta: SkewRationalMatrix) -> int:
    """Azumaya rank as the index of the integrality kernel in Z^n."""
    return lattice_index(integrality_kernel(theta.entries), Lattice.standard(theta.n))


def decompose(theta: SkewRationalMatrix) -> TorusDecomposition:
    """Split theta, up to unimodular congruence, into a free block plus
    2x2 rotation blocks.

    The divisor chain of the skew normal form of ell*theta, divided back
    by ell, gives the rotation factors; the zero block moves to the front.
    """
    ell = theta.ell
    nf = skew_normal_form(theta.scaled(ell))
    n = theta.n
    k = nf.zero_rank
    r = len(nf.divisors)
    # permutation sending (blocks, zero block) to (zero block, blocks)
    perm_rows = []
    for i in range(k):
        row = [0] * n
        row[2 * r + i] = 1
        perm_rows.append(row)
    for i in range(2 * r):
        row = [0] * n
        row[i] = 1
        perm_rows.append(row)
    witness = IntMatrix(perm_rows, ncols=n) @ nf.transform
    result = TorusDecomposition(
        free_rank=k,
        factors=tuple(Fraction(d, ell) for d in nf.divisors),
        witness=witness,
    )
    if theta.conjugated(witness) != result.block_matrix():
        raise InternalInvariantError("decomposition witness does not reproduce block form")
    return result


def congruent_over_Z(a: SkewRationalMatrix, b: SkewRationalMatrix) -> bool:
    """Whether some unimodular T carries a to T a T^T == b.

    Decided on a common denominator: scale both by lcm(ell_a, ell_b) and
    compare skew divisor chains and zero ranks, which classify integer
    skew matrices up to congruence.
    """
    if a.n != b.n:
        return False
    ell = lcm(a.ell, b.ell)
    nf_a = skew_normal_form(a.scaled(ell))
    nf_b = skew_normal_form(b.scaled(ell))
    return nf_a.divisors == nf_b.divisors and nf_a.zero_rank == nf_b.zero_rank


def congruence_witness(a: SkewRationalMatrix, b: SkewRationalMatrix) -> IntMatrix | None:
    """A unimodular W with W a W^T == b, or None if the two are not congruent.

    Both matrices reduce to the same block form; chaining one transform
    through the inverse of the other produces the witness, which is
    verified by multiplication before being returned.
    """
    if not congruent_over_Z(a, b):
        return None
    ell = lcm(a.ell, b.ell)
    t_a = skew_normal_form(a.scaled(ell)).transform
    t_b = skew_normal_form(b.scaled(ell)).transform
    witness = t_b.inverse_unimodular() @ t_a
    if a.conjugated(witness) != b:
        raise InternalInvariantError("congruence witness failed verification")
    return witness
