from __future__ import annotations

import random
from fractions import Fraction

import pytest

from conftest import random_skew
from ncsphere.errors import EnumerationGuardError, InvalidMatrixError, LatticeError
from ncsphere.intmat import IntMatrix
from ncsphere.lattice import Lattice
from ncsphere.oracles import (
    OracleReport,
    brute_coset_index,
    brute_image_count,
    twisted_block_structure,
)
from ncsphere.theta import SkewRationalMatrix

HALF = Fraction(1, 2)
S5 = SkewRationalMatrix(
    [
        [0, HALF, HALF],
        [-HALF, 0, HALF],
        [-HALF, -HALF, 0],
    ]
)


def test_image_count_small_cases():
    assert brute_image_count(IntMatrix([[0]]), 1) == 1
    assert brute_image_count(IntMatrix([[0, 1], [-1, 0]]), 2) == 4
    assert brute_image_count(S5.scaled(2), 2) == 4


def test_image_count_guard_trips():
    with pytest.raises(EnumerationGuardError):
        brute_image_count(IntMatrix.identity(10), 10)


def test_coset_index_identity_and_scaling():
    assert brute_coset_index(Lattice.standard(3), Lattice.standard(3)) == 1
    assert brute_coset_index(Lattice.scaled_standard(2, 6), Lattice.standard(2)) == 36
    assert (
        brute_coset_index(Lattice.scaled_standard(2, 6), Lattice.scaled_standard(2, 2))
        == 9
    )


def test_coset_index_nontrivial_superlattice():
    sup = Lattice.from_rows(2, [[1, 1], [0, 2]])
    sub = Lattice.scaled_standard(2, 2)
    assert brute_coset_index(sub, sup) == 2


def test_coset_index_guard_trips():
    with pytest.raises(EnumerationGuardError):
        brute_coset_index(Lattice.scaled_standard(3, 100), Lattice.standard(3))


def test_coset_index_requires_containment():
    with pytest.raises(LatticeError):
        brute_coset_index(Lattice.from_rows(2, [[3, 0], [0, 1]]), Lattice.scaled_standard(2, 2))
    with pytest.raises(LatticeError):
        brute_coset_index(Lattice.from_rows(2, [[1, 0]]), Lattice.standard(2))


def test_twisted_blocks_golden_values():
    assert twisted_block_structure(S5, (1, 2, 3), 2) == (2, 2)
    assert twisted_block_structure(S5, (1,), 2) == (2, 1)
    two_torus = SkewRationalMatrix([[0, HALF], [-HALF, 0]])
    assert twisted_block_structure(two_torus, (1, 2), 2) == (1, 2)
    assert twisted_block_structure(two_torus, (), 5) == (1, 1)


def test_twisted_blocks_dimension_conservation():
    rng = random.Random(4001)
    for _ in range(30):
        theta = random_skew(rng, rng.randint(1, 3), max_den=5, max_num=5)
        ell = theta.ell
        for size in range(theta.n + 1):
            face = tuple(range(1, size + 1))
            count, block = twisted_block_structure(theta, face, ell)
            assert count * block * block == ell**size


def test_twisted_blocks_reject_uncleared_denominator():
    with pytest.raises(InvalidMatrixError):
        twisted_block_structure(S5, (1, 2), 3)


def test_twisted_blocks_guard_trips():
    theta = random_skew(random.Random(4002), 4, max_den=2)
    with pytest.raises(EnumerationGuardError):
        twisted_block_structure(theta, (1, 2, 3, 4), 64)


def test_oracle_report_consistency_flag():
    OracleReport("h", 4, 4, True)
    OracleReport("h", 4, 5, False)
    with pytest.raises(Exception):
        OracleReport("h", 4, 5, True)
