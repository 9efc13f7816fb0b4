"""Subgroups of Z^n as row-span lattices in canonical Hermite form.

A Lattice stores the unique Hermite basis of its row span, so two
lattices are equal as groups exactly when they compare equal
syntactically.  All indices are computed exactly; a full-rank pair gives
[super : sub] as a quotient of Hermite pivot products.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .errors import LatticeError
from .intmat import IntMatrix, hermite_normal_form, smith_normal_form

__all__ = [
    "Lattice",
    "integrality_kernel",
    "lattice_index",
    "lattice_restrict",
    "lattice_sum",
]


def _pivot_col(row: Sequence[int]) -> int:
    for j, v in enumerate(row):
        if v:
            return j
    return -1


class Lattice:
    """Row span of an integer matrix, held in canonical Hermite form."""

    __slots__ = ("ambient_rank", "basis")

    def __init__(self, ambient_rank: int, basis: Sequence[Sequence[int]]):
        rows = tuple(tuple(r) for r in basis)
        if ambient_rank < 0:
            raise ValueError("ambient rank must be nonnegative")
        for r in rows:
            if len(r) != ambient_rank:
                raise ValueError("basis row length differs from ambient rank")
        prev = -1
        for r in rows:
            j = _pivot_col(r)
            if j < 0:
                raise ValueError("zero row in basis")
            if j <= prev:
                raise ValueError("basis is not in echelon order")
            if r[j] <= 0:
                raise ValueError("pivot must be positive")
            prev = j
        # canonical: entries above each pivot already reduced
        for k, r in enumerate(rows):
            j = _pivot_col(r)
            for above in rows[:k]:
                if not 0 <= above[j] < r[j]:
                    raise ValueError("basis is not reduced above pivots")
        object.__setattr__(self, "ambient_rank", ambient_rank)
        object.__setattr__(self, "basis", rows)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Lattice is immutable")

    @classmethod
    def from_rows(cls, ambient_rank: int, rows: Sequence[Sequence[int]]) -> "Lattice":
        """Span of arbitrary integer rows, canonicalized."""
        mat = IntMatrix([list(r) for r in rows], ncols=ambient_rank)
        h, _ = hermite_normal_form(mat)
        kept = [row for row in h.rows if any(row)]
        return cls(ambient_rank, kept)

    @classmethod
    def standard(cls, n: int) -> "Lattice":
        return cls(n, IntMatrix.identity(n).rows)

    @classmethod
    def scaled_standard(cls, n: int, k: int) -> "Lattice":
        """k * Z^n for k >= 1."""
        if k < 1:
            raise ValueError("scale must be positive")
        return cls(n, IntMatrix.diagonal([k] * n).rows)

    @classmethod
    def zero(cls, ambient_rank: int) -> "Lattice":
        return cls(ambient_rank, ())

    @property
    def rank(self) -> int:
        return len(self.basis)

    def is_full_rank(self) -> bool:
        return self.rank == self.ambient_rank

    def matrix(self) -> IntMatrix:
        return IntMatrix([list(r) for r in self.basis], ncols=self.ambient_rank)

    def determinant(self) -> int:
        """Product of Hermite pivots; equals [Z^n : L] for full-rank L."""
        if not self.is_full_rank():
            raise LatticeError("determinant needs a full-rank lattice")
        out = 1
        for r in self.basis:
            out *= r[_pivot_col(r)]
        return out

    def contains(self, vector: Sequence[int]) -> bool:
        """Membership by back-substitution against the echelon basis."""
        v = list(vector)
        if len(v) != self.ambient_rank:
            raise ValueError("vector length differs from ambient rank")
        for row in self.basis:
            j = _pivot_col(row)
            if v[j] % row[j]:
                return False
            f = v[j] // row[j]
            if f:
                v = [s - f * t for s, t in zip(v, row)]
        return not any(v)

    def contains_lattice(self, other: "Lattice") -> bool:
        if self.ambient_rank != other.ambient_rank:
            return False
        return all(self.contains(r) for r in other.basis)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.ambient_rank == other.ambient_rank and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_rank, self.basis))

    def __repr__(self) -> str:
        return f"Lattice({self.ambient_rank}, {[list(r) for r in self.basis]!r})"


def lattice_sum(a: Lattice, b: Lattice) -> Lattice:
    """Smallest lattice containing both summands."""
    if a.ambient_rank != b.ambient_rank:
        raise LatticeError("summands live in different ambient ranks")
    return Lattice.from_rows(a.ambient_rank, a.basis + b.basis)


def lattice_index(sub: Lattice, sup: Lattice) -> int:
    """Index [sup : sub] for full-rank nested lattices.

    The index is the determinant quotient; finiteness forces both ranks
    to equal the ambient rank, anything else is a domain error.
    """
    if sub.ambient_rank != sup.ambient_rank:
        raise LatticeError("ambient rank mismatch")
    if not (sub.is_full_rank() and sup.is_full_rank()):
        raise LatticeError("index is infinite unless both lattices have full rank")
    if not sup.contains_lattice(sub):
        raise LatticeError("index undefined: first argument is not contained in second")
    num, den = sub.determinant(), sup.determinant()
    if num % den:
        raise LatticeError("determinant quotient not integral")
    return num // den


def lattice_restrict(lat: Lattice, coords: Sequence[int]) -> Lattice:
    """Vectors of lat supported on the 1-based coordinate set, reindexed.

    The result lives in ambient rank len(coords).  Computed via the left
    kernel of the complementary columns: Hermite rows of the transform
    matching zero rows of the form span exactly the combinations landing
    in the coordinate subspace.
    """
    face = sorted(set(coords))
    if face and (face[0] < 1 or face[-1] > lat.ambient_rank):
        raise ValueError("coordinates out of range")
    picked = [c - 1 for c in face]
    if not picked:
        return Lattice.zero(0)
    others = [j for j in range(lat.ambient_rank) if j not in set(picked)]
    if not lat.basis:
        return Lattice.zero(len(picked))
    outside = IntMatrix(
        [[row[j] for j in others] for row in lat.basis], ncols=len(others)
    )
    h, u = hermite_normal_form(outside)
    combos = [u.row(i) for i in range(h.nrows) if not any(h.row(i))]
    new_rows = []
    for x in combos:
        vec = [sum(xi * row[j] for xi, row in zip(x, lat.basis)) for j in picked]
        new_rows.append(vec)
    return Lattice.from_rows(len(picked), new_rows)


def integrality_kernel(entries: Sequence[Sequence[Fraction]]) -> Lattice:
    """All integer vectors m with (matrix @ m) integral again.

    For a rational square matrix A with common denominator ell this is the
    preimage of 0 under ell*A acting on (Z/ell)^n, hence a finite-index
    sublattice of Z^n containing ell * Z^n.  Solved through the Smith form
    of ell*A: with U (ell A) V = S, the congruence S y = 0 mod ell fixes
    each y_i up to a multiple of ell / gcd(s_i, ell), and m = y V^T.
    """
    n = len(entries)
    rows = [list(r) for r in entries]
    for r in rows:
        if len(r) != n:
            raise ValueError("square matrix required")
    ell = 1
    for r in rows:
        for x in r:
            ell = lcm(ell, Fraction(x).denominator)
    scaled = IntMatrix(
        [[int(Fraction(x) * ell) for x in r] for r in rows], ncols=n
    )
    s, _, v = smith_normal_form(scaled)
    vt = v.transpose()
    gens = []
    for i in range(n):
        step = ell // gcd(s[i, i], ell)
        gens.append([step * c for c in vt.row(i)])
    kern = Lattice.from_rows(n, gens)
    if not kern.is_full_rank():
        raise LatticeError("integrality kernel lost full rank")
    return kern
