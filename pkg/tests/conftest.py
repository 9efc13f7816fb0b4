from __future__ import annotations

import random
from fractions import Fraction

from ncsphere.intmat import IntMatrix
from ncsphere.theta import SkewRationalMatrix


def random_skew(rng: random.Random, n: int, max_den: int = 8, max_num: int = 8) -> SkewRationalMatrix:
    entries = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))
            entries[i][j] = x
            entries[j][i] = -x
    return SkewRationalMatrix(entries)


def random_unimodular(rng: random.Random, n: int, steps: int = 14) -> IntMatrix:
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        kind = rng.randrange(3)
        i = rng.randrange(n)
        j = rng.randrange(n)
        if kind == 0 and i != j:
            c = rng.randint(-3, 3)
            rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
        elif kind == 1 and i != j:
            rows[i], rows[j] = rows[j], rows[i]
        elif kind == 2:
            rows[i] = [-a for a in rows[i]]
    return IntMatrix(rows, ncols=n)


def random_int_matrix(rng: random.Random, r: int, c: int, bound: int = 9) -> IntMatrix:
    return IntMatrix(
        [[rng.randint(-bound, bound) for _ in range(c)] for _ in range(r)], ncols=c
    )
