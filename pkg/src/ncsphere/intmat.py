"""Exact integer matrices and their normal forms.

Everything here runs on Python ints, so there is no precision ceiling and
no floating point anywhere.  Matrices are immutable; the normal-form
routines return fresh objects together with unimodular transforms that
witness the reduction.

Conventions: vectors are rows, lattices are row spans, and the Hermite
form is the row-style one (upper triangular, positive pivots, entries
above a pivot reduced into [0, pivot)).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import InternalInvariantError

__all__ = [
    "IntMatrix",
    "SkewNormalForm",
    "hermite_normal_form",
    "smith_normal_form",
    "skew_normal_form",
]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b == g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


class IntMatrix:
    """Immutable rectangular matrix over the integers."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int | None = None):
        frozen = tuple(tuple(entry for entry in row) for row in rows)
        for row in frozen:
            for entry in row:
                if not isinstance(entry, int) or isinstance(entry, bool):
                    raise TypeError(f"integer entry expected, got {entry!r}")
        widths = {len(row) for row in frozen}
        if len(widths) > 1:
            raise ValueError("ragged rows")
        if frozen:
            width = widths.pop()
            if ncols is not None and ncols != width:
                raise ValueError("ncols disagrees with row length")
        else:
            if ncols is None:
                raise ValueError("empty matrix needs an explicit column count")
            width = ncols
        object.__setattr__(self, "_rows", frozen)
        object.__setattr__(self, "nrows", len(frozen))
        object.__setattr__(self, "ncols", width)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)], ncols=n
        )

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> "IntMatrix":
        n = len(entries)
        return cls(
            [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)],
            ncols=n,
        )

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    def row(self, i: int) -> tuple[int, ...]:
        return self._rows[i]

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self._rows[i][j]

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self._rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self._rows]!r})"

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            [[self._rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            ncols=self.nrows,
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-v for v in row] for row in self._rows], ncols=self.ncols)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in product")
        cols = other.transpose().rows
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self._rows],
            ncols=other.ncols,
        )

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_skew(self) -> bool:
        if not self.is_square():
            return False
        return all(
            self._rows[i][j] == -self._rows[j][i]
            for i in range(self.nrows)
            for j in range(i, self.ncols)
        )

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            return 1
        a = [list(row) for row in self._rows]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.is_square() and self.det() in (1, -1)

    def inverse_unimodular(self) -> "IntMatrix":
        """Inverse of a matrix with determinant +-1, exact over the integers.

        Gauss-Jordan over Fractions followed by an integrality check; the
        check can only fail if the matrix was not unimodular.
        """
        from fractions import Fraction

        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        work = [
            [Fraction(self._rows[i][j]) for j in range(n)]
            + [Fraction(1 if i == j else 0) for j in range(n)]
            for i in range(n)
        ]
        for col in range(n):
            pivot = next((i for i in range(col, n) if work[i][col]), None)
            if pivot is None:
                raise ValueError("matrix is singular")
            work[col], work[pivot] = work[pivot], work[col]
            inv = 1 / work[col][col]
            work[col] = [v * inv for v in work[col]]
            for i in range(n):
                if i != col and work[i][col]:
                    f = work[i][col]
                    work[i] = [v - f * w for v, w in zip(work[i], work[col])]
        out = []
        for i in range(n):
            row = []
            for j in range(n, 2 * n):
                v = work[i][j]
                if v.denominator != 1:
                    raise ValueError("matrix is not unimodular")
                row.append(v.numerator)
            out.append(row)
        return IntMatrix(out, ncols=n)


def hermite_normal_form(mat: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns (H, U) with U unimodular and U @ mat == H.  H is upper
    triangular in the echelon sense: pivots positive, each entry above a
    pivot lies in [0, pivot), zero rows collected at the bottom.
    """
    r, c = mat.shape
    a = [list(row) for row in mat.rows]
    u = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    piv = 0
    for col in range(c):
        if piv == r:
            break
        lead = next((i for i in range(piv, r) if a[i][col]), None)
        if lead is None:
            continue
        if lead != piv:
            a[piv], a[lead] = a[lead], a[piv]
            u[piv], u[lead] = u[lead], u[piv]
        for i in range(piv + 1, r):
            if not a[i][col]:
                continue
            g, x, y = _xgcd(a[piv][col], a[i][col])
            p, q = a[piv][col] // g, a[i][col] // g
            a[piv], a[i] = (
                [x * s + y * t for s, t in zip(a[piv], a[i])],
                [-q * s + p * t for s, t in zip(a[piv], a[i])],
            )
            u[piv], u[i] = (
                [x * s + y * t for s, t in zip(u[piv], u[i])],
                [-q * s + p * t for s, t in zip(u[piv], u[i])],
            )
        if a[piv][col] < 0:
            a[piv] = [-v for v in a[piv]]
            u[piv] = [-v for v in u[piv]]
        p = a[piv][col]
        for i in range(piv):
            f = a[i][col] // p
            if f:
                a[i] = [s - f * t for s, t in zip(a[i], a[piv])]
                u[i] = [s - f * t for s, t in zip(u[i], u[piv])]
        piv += 1
    return IntMatrix(a, ncols=c), IntMatrix(u, ncols=r)


def smith_normal_form(mat: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form with transforms: returns (S, U, V), U @ mat @ V == S.

    S is diagonal with nonnegative entries s1 | s2 | ... ; U and V are
    unimodular.  Classical pivot improvement: repeatedly move a smallest
    nonzero entry to the corner, take remainders until it divides its row
    and column, eliminate, then fold any non-multiple left in the trailing
    block into the pivot row.
    """
    r, c = mat.shape
    a = [list(row) for row in mat.rows]
    u = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    v = [[1 if i == j else 0 for j in range(c)] for i in range(c)]

    def row_add(i: int, j: int, f: int) -> None:
        a[i] = [s + f * t for s, t in zip(a[i], a[j])]
        u[i] = [s + f * t for s, t in zip(u[i], u[j])]

    def col_add(i: int, j: int, f: int) -> None:
        for row in a:
            row[i] += f * row[j]
        for row in v:
            row[i] += f * row[j]

    t = 0
    bound = min(r, c)
    while t < bound:
        pos = None
        best = None
        for i in range(t, r):
            for j in range(t, c):
                w = a[i][j]
                if w and (best is None or abs(w) < best):
                    best = abs(w)
                    pos = (i, j)
        if pos is None:
            break
        i0, j0 = pos
        if i0 != t:
            a[t], a[i0] = a[i0], a[t]
            u[t], u[i0] = u[i0], u[t]
        if j0 != t:
            for row in a:
                row[t], row[j0] = row[j0], row[t]
            for row in v:
                row[t], row[j0] = row[j0], row[t]
        p = a[t][t]
        dirty = False
        for i in range(t + 1, r):
            if a[i][t] % p:
                row_add(i, t, -(a[i][t] // p))
                dirty = True
        if dirty:
            continue
        for j in range(t + 1, c):
            if a[t][j] % p:
                col_add(j, t, -(a[t][j] // p))
                dirty = True
        if dirty:
            continue
        for i in range(t + 1, r):
            if a[i][t]:
                row_add(i, t, -(a[i][t] // p))
        for j in range(t + 1, c):
            if a[t][j]:
                col_add(j, t, -(a[t][j] // p))
        offender = None
        for i in range(t + 1, r):
            for j in range(t + 1, c):
                if a[i][j] % p:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_add(t, offender, 1)
            continue
        if p < 0:
            a[t] = [-w for w in a[t]]
            u[t] = [-w for w in u[t]]
        t += 1
    return IntMatrix(a, ncols=c), IntMatrix(u, ncols=r), IntMatrix(v, ncols=c)


@dataclass(frozen=True)
class SkewNormalForm:
    """Result of reducing an integer skew-symmetric matrix by congruence.

    transform @ H @ transform.T is block diagonal: 2x2 blocks
    [[0, d], [-d, 0]] with d = divisors[i] > 0 and d_i | d_{i+1},
    followed by a zero_rank x zero_rank zero block.
    """

    transform: IntMatrix
    divisors: tuple[int, ...]
    zero_rank: int

    @property
    def n(self) -> int:
        return 2 * len(self.divisors) + self.zero_rank

    def block_matrix(self) -> IntMatrix:
        n = self.n
        rows = [[0] * n for _ in range(n)]
        for i, d in enumerate(self.divisors):
            rows[2 * i][2 * i + 1] = d
            rows[2 * i + 1][2 * i] = -d
        return IntMatrix(rows, ncols=n)


def skew_normal_form(mat: IntMatrix) -> SkewNormalForm:
    """Skew analogue of the Smith form, over unimodular congruence.

    Every row operation is mirrored by the same column operation, so the
    reduction is T @ mat @ T.T throughout and skewness is preserved
    exactly.  The pivot loop mirrors the Smith routine: smallest entry to
    the corner, remainder steps until it divides rows t and t+1, exact
    elimination, then divisibility of the trailing block for the chain.
    """
    if not mat.is_skew():
        raise ValueError("skew-symmetric matrix required")
    n = mat.nrows
    a = [list(row) for row in mat.rows]
    t_rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def sym_swap(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        t_rows[i], t_rows[j] = t_rows[j], t_rows[i]
        for row in a:
            row[i], row[j] = row[j], row[i]

    def sym_add(i: int, j: int, f: int) -> None:
        a[i] = [s + f * w for s, w in zip(a[i], a[j])]
        t_rows[i] = [s + f * w for s, w in zip(t_rows[i], t_rows[j])]
        for row in a:
            row[i] += f * row[j]

    def sym_neg(i: int) -> None:
        a[i] = [-w for w in a[i]]
        t_rows[i] = [-w for w in t_rows[i]]
        for row in a:
            row[i] = -row[i]

    divisors: list[int] = []
    t = 0
    while t + 1 < n:
        pos = None
        best = None
        for i in range(t, n):
            for j in range(i + 1, n):
                w = a[i][j]
                if w and (best is None or abs(w) < best):
                    best = abs(w)
                    pos = (i, j)
        if pos is None:
            break
        i0, j0 = pos
        if i0 != t:
            sym_swap(t, i0)
        if j0 != t + 1:
            sym_swap(t + 1, j0)
        if a[t][t + 1] < 0:
            sym_neg(t + 1)
        p = a[t][t + 1]
        dirty = False
        for k in range(t + 2, n):
            if a[t][k] % p:
                sym_add(k, t + 1, -(a[t][k] // p))
                dirty = True
            if a[t + 1][k] % p:
                sym_add(k, t, a[t + 1][k] // p)
                dirty = True
        if dirty:
            continue
        for k in range(t + 2, n):
            if a[t][k]:
                sym_add(k, t + 1, -(a[t][k] // p))
            if a[t + 1][k]:
                sym_add(k, t, a[t + 1][k] // p)
        offender = None
        for i in range(t + 2, n):
            for j in range(i + 1, n):
                if a[i][j] % p:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            sym_add(t, offender, 1)
            continue
        divisors.append(p)
        t += 2

    for i in range(t, n):
        for j in range(t, n):
            if a[i][j]:
                raise InternalInvariantError("trailing block not cleared")
    result = SkewNormalForm(
        transform=IntMatrix(t_rows, ncols=n),
        divisors=tuple(divisors),
        zero_rank=n - 2 * len(divisors),
    )
    # The form is cheap to certify, so certify it on every call.
    if result.transform @ mat @ result.transform.transpose() != result.block_matrix():
        raise InternalInvariantError("congruence transform does not reproduce block form")
    for d, e in zip(result.divisors, result.divisors[1:]):
        if e % d:
            raise InternalInvariantError("divisor chain broken")
    if not result.transform.is_unimodular():
        raise InternalInvariantError("transform not unimodular")
    return result
