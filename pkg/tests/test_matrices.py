"""Graded 3x3 matrix calculus: grading patterns, d^3 = 0, Leibniz, Jacobi."""

from __future__ import annotations

import random

import pytest

from z3forms import (
    ETA,
    GradedMatrix,
    eta_differential,
    grade_of,
    graded_commutator,
)
from z3forms.scalar import J, ONE, Scalar, ZERO, jpow


def rand_scalar(rng: random.Random) -> Scalar:
    return Scalar(rng.randint(-4, 4), rng.randint(-4, 4))


def rand_matrix(rng: random.Random) -> GradedMatrix:
    return GradedMatrix.from_rows(
        [[rand_scalar(rng) for _ in range(3)] for _ in range(3)]
    )


def rand_homogeneous(rng: random.Random, g: int) -> GradedMatrix:
    rows = [[ZERO] * 3 for _ in range(3)]
    for a in range(3):
        rows[a][(a + g) % 3] = rand_scalar(rng)
    return GradedMatrix.from_rows(rows)


def unit_matrix(a: int, b: int) -> GradedMatrix:
    rows = [[ZERO] * 3 for _ in range(3)]
    rows[a][b] = ONE
    return GradedMatrix.from_rows(rows)


def test_eta_is_grade_one_with_cube_identity():
    assert grade_of(ETA) == 1
    assert ETA * ETA * ETA == GradedMatrix.identity()
    assert grade_of(ETA * ETA) == 2
    assert grade_of(GradedMatrix.identity()) == 0


def test_grade_patterns():
    # grade g lives on the diagonal shifted right by g (mod 3)
    for g in (0, 1, 2):
        for a in range(3):
            assert grade_of(unit_matrix(a, (a + g) % 3)) == g
    mixed = unit_matrix(0, 0) + unit_matrix(0, 1)
    assert grade_of(mixed) == "mixed"
    assert grade_of(GradedMatrix.zero()) == 0


def test_grade_multiplies_additively():
    rng = random.Random(41)
    for _ in range(100):
        gb, gc = rng.randint(0, 2), rng.randint(0, 2)
        b = rand_homogeneous(rng, gb)
        c = rand_homogeneous(rng, gc)
        p = b * c
        if p.is_zero():
            continue
        assert grade_of(p) == (gb + gc) % 3


def test_differential_of_identity_vanishes():
    assert eta_differential(GradedMatrix.identity()).is_zero()


def test_differential_cubes_to_zero_random():
    rng = random.Random(42)
    for _ in range(250):
        b = rand_matrix(rng)
        d3 = eta_differential(eta_differential(eta_differential(b)))
        assert d3.is_zero()
        # second power need not vanish: grade-1 pattern witnesses d^2 != 0
    witness = unit_matrix(0, 1)
    assert not eta_differential(eta_differential(witness)).is_zero()


def test_graded_leibniz_random():
    rng = random.Random(43)
    for _ in range(250):
        gb = rng.randint(0, 2)
        b = rand_homogeneous(rng, gb)
        c = rand_matrix(rng)
        lhs = eta_differential(b * c)
        rhs = eta_differential(b) * c + (b * eta_differential(c)).scale(jpow(gb))
        assert (lhs - rhs).is_zero()


def test_differential_linear_over_graded_parts():
    rng = random.Random(44)
    for _ in range(60):
        b = rand_matrix(rng)
        parts = b.graded_parts()
        recombined = GradedMatrix.zero()
        for part in parts.values():
            recombined = recombined + eta_differential(part)
        assert (eta_differential(b) - recombined).is_zero()


def test_graded_commutator_requires_homogeneous():
    mixed = unit_matrix(0, 0) + unit_matrix(0, 1)
    with pytest.raises(ValueError):
        graded_commutator(mixed, ETA)
    with pytest.raises(ValueError):
        graded_commutator(ETA, mixed)


def test_jacobi_identity_fails_witness():
    # nested graded commutators do not cycle to zero: explicit witness
    b = unit_matrix(0, 1)          # grade 1
    c = unit_matrix(1, 2)          # grade 1
    d = unit_matrix(2, 2)          # grade 0
    total = (
        graded_commutator(graded_commutator(b, c), d)
        + graded_commutator(graded_commutator(c, d), b)
        + graded_commutator(graded_commutator(d, b), c)
    )
    expected = unit_matrix(0, 2).scale(ONE - J)
    assert total == expected
    assert not total.is_zero()
