from __future__ import annotations

import random
from fractions import Fraction

import pytest

from conftest import random_int_matrix, random_skew, random_unimodular
from ncsphere.errors import LatticeError
from ncsphere.lattice import (
    Lattice,
    integrality_kernel,
    lattice_index,
    lattice_restrict,
    lattice_sum,
)


def solve_membership(basis, vector) -> bool:
    # oracle: Gaussian elimination over Q, then integrality of the coordinates
    rows = [list(map(Fraction, r)) + [Fraction(0)] * 0 for r in basis]
    if not rows:
        return not any(vector)
    m = len(rows)
    n = len(rows[0])
    aug = [[rows[i][j] for j in range(n)] for i in range(m)]
    target = list(map(Fraction, vector))
    coeffs = [[Fraction(1 if i == k else 0) for k in range(m)] for i in range(m)]
    # reduce [basis | I] to echelon over Q, carrying the target along
    piv_rows = []
    r = 0
    for col in range(n):
        p = next((i for i in range(r, m) if aug[i][col]), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        coeffs[r], coeffs[p] = coeffs[p], coeffs[r]
        for i in range(m):
            if i != r and aug[i][col]:
                f = aug[i][col] / aug[r][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
                coeffs[i] = [a - f * b for a, b in zip(coeffs[i], coeffs[r])]
        piv_rows.append((r, col))
        r += 1
    x = [Fraction(0)] * m
    residue = target[:]
    for i, col in piv_rows:
        f = residue[col] / aug[i][col]
        x[i] = f
        residue = [a - f * b for a, b in zip(residue, aug[i])]
    if any(residue):
        return False
    original = [sum(x[i] * coeffs[i][k] for i in range(m)) for k in range(m)]
    return all(v.denominator == 1 for v in original)


def coset_count(sub: Lattice, sup: Lattice) -> int:
    # oracle: closure walk over quotient representatives
    def canon(v):
        v = list(v)
        for row in sub.basis:
            j = next(k for k, w in enumerate(row) if w)
            f = v[j] // row[j]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return tuple(v)

    seen = {canon([0] * sub.ambient_rank)}
    frontier = list(seen)
    while frontier:
        cur = frontier.pop()
        for gen in sup.basis:
            for sign in (1, -1):
                nxt = canon([a + sign * b for a, b in zip(cur, gen)])
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        if len(seen) > 5000:
            raise AssertionError("oracle runaway")
    return len(seen)


def test_canonical_form_is_syntactic_identity():
    rng = random.Random(11)
    for _ in range(50):
        n = rng.randint(1, 4)
        m = random_int_matrix(rng, n, n)
        t = random_unimodular(rng, n)
        assert Lattice.from_rows(n, m.rows) == Lattice.from_rows(n, (t @ m).rows)


def test_membership_matches_rational_solve():
    rng = random.Random(22)
    for _ in range(80):
        n = rng.randint(1, 4)
        lat = Lattice.from_rows(n, random_int_matrix(rng, rng.randint(0, n), n).rows)
        for _ in range(6):
            v = [rng.randint(-12, 12) for _ in range(n)]
            assert lat.contains(v) == solve_membership(lat.basis, v)


def test_sum_example():
    a = Lattice.from_rows(2, [[1, 1]])
    b = Lattice.from_rows(2, [[1, -1]])
    s = lattice_sum(a, b)
    assert s.basis == ((1, 1), (0, 2))
    assert lattice_index(s, Lattice.standard(2)) == 2


def test_sum_contains_both_summands():
    rng = random.Random(33)
    for _ in range(40):
        n = rng.randint(1, 4)
        a = Lattice.from_rows(n, random_int_matrix(rng, rng.randint(1, n), n).rows)
        b = Lattice.from_rows(n, random_int_matrix(rng, rng.randint(1, n), n).rows)
        s = lattice_sum(a, b)
        assert s.contains_lattice(a)
        assert s.contains_lattice(b)


def test_index_requires_containment_and_rank():
    with pytest.raises(LatticeError):
        lattice_index(Lattice.from_rows(2, [[1, 0]]), Lattice.standard(2))
    with pytest.raises(LatticeError):
        lattice_index(Lattice.from_rows(2, [[3, 0], [0, 1]]), Lattice.scaled_standard(2, 2))


def test_index_multiplicative_in_towers():
    rng = random.Random(44)
    done = 0
    while done < 30:
        n = rng.randint(1, 3)
        outer = Lattice.standard(n)
        mid_m = random_int_matrix(rng, n, n, bound=3)
        if mid_m.det() == 0:
            continue
        mid = Lattice.from_rows(n, mid_m.rows)
        scale = rng.randint(1, 3)
        inner = Lattice.from_rows(n, [[scale * v for v in row] for row in mid.basis])
        assert lattice_index(inner, outer) == lattice_index(inner, mid) * lattice_index(mid, outer)
        done += 1


def test_index_agrees_with_coset_walk():
    rng = random.Random(55)
    done = 0
    while done < 40:
        n = rng.randint(1, 3)
        m = random_int_matrix(rng, n, n, bound=4)
        if m.det() == 0:
            continue
        sub = Lattice.from_rows(n, m.rows)
        sup = Lattice.standard(n)
        idx = lattice_index(sub, sup)
        if idx > 1000:
            continue
        assert idx == coset_count(sub, sup)
        done += 1


def test_restrict_full_face_is_identity():
    rng = random.Random(66)
    for _ in range(30):
        n = rng.randint(1, 4)
        lat = Lattice.from_rows(n, random_int_matrix(rng, n, n).rows)
        assert lattice_restrict(lat, range(1, n + 1)) == lat


def test_restrict_empty_face():
    lat = Lattice.standard(3)
    out = lattice_restrict(lat, [])
    assert out.ambient_rank == 0
    assert out.basis == ()


def test_restrict_membership_consistency():
    # every vector of the restriction, padded with zeros, lies in the original
    rng = random.Random(77)
    for _ in range(40):
        n = rng.randint(2, 4)
        lat = Lattice.from_rows(n, random_int_matrix(rng, n, n).rows)
        k = rng.randint(1, n)
        face = sorted(rng.sample(range(1, n + 1), k))
        res = lattice_restrict(lat, face)
        for row in res.basis:
            full = [0] * n
            for c, v in zip(face, row):
                full[c - 1] = v
            assert lat.contains(full)


def test_integrality_kernel_two_by_two():
    theta = [[Fraction(0), Fraction(1, 2)], [Fraction(-1, 2), Fraction(0)]]
    kern = integrality_kernel(theta)
    assert kern.basis == ((2, 0), (0, 2))


def test_integrality_kernel_parity_example():
    half = Fraction(1, 2)
    theta = [
        [Fraction(0), half, half],
        [-half, Fraction(0), half],
        [-half, -half, Fraction(0)],
    ]
    kern = integrality_kernel(theta)
    assert kern.basis == ((1, 1, 1), (0, 2, 0), (0, 0, 2))
    assert lattice_index(kern, Lattice.standard(3)) == 4
    assert lattice_restrict(kern, [1]).basis == ((2,),)
    assert lattice_restrict(kern, [1, 2]).basis == ((2, 0), (0, 2))


def test_integrality_kernel_brute_membership():
    # oracle: every vector in a small box is in the kernel exactly when
    # theta maps it into the integers
    rng = random.Random(88)
    for _ in range(25):
        n = rng.randint(1, 3)
        theta = random_skew(rng, n, max_den=4, max_num=4)
        kern = integrality_kernel(theta.entries)
        span = range(-4, 5)
        import itertools

        for v in itertools.product(span, repeat=n):
            image_integral = all(
                sum(theta.entries[i][j] * v[j] for j in range(n)).denominator == 1
                for i in range(n)
            )
            assert kern.contains(list(v)) == image_integral


def test_integrality_kernel_contains_ell_lattice():
    rng = random.Random(99)
    for _ in range(40):
        n = rng.randint(1, 4)
        theta = random_skew(rng, n)
        kern = integrality_kernel(theta.entries)
        ell = theta.ell
        assert kern.contains_lattice(Lattice.scaled_standard(n, ell))
