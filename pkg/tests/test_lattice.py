from __future__ import annotations

import random
from fractions import Fraction

import pytest

from bwlist.arith import PHI, CVector, GaussianInt, QComplex, phi_pow, rsd
from bwlist.lattice import (
    BWPoint,
    NotAMember,
    automorphism_t,
    generator_combination,
    generator_matrix,
    is_member,
    multilinear_evaluate,
    multilinear_interpolate,
    random_member,
    swap_halves,
)

ZERO = GaussianInt(0, 0)
ONE = GaussianInt(1, 0)
I = GaussianInt(0, 1)


def test_level_zero_is_all_gaussian_integers() -> None:
    assert is_member([GaussianInt(3, -7)])
    assert is_member(CVector([QComplex(2, 5)]))
    assert not is_member(CVector([QComplex(Fraction(1, 2), 0)]))


def test_level_one_membership() -> None:
    # [u, u + phi v]: second minus first must be divisible by phi
    assert is_member([ONE, I])
    assert is_member([ZERO, PHI])
    assert not is_member([ONE, ZERO])
    assert not is_member([ZERO, ONE])


def test_membership_rejects_bad_length() -> None:
    with pytest.raises(ValueError):
        is_member([ONE, ONE, ONE])


def test_bwpoint_of_validates() -> None:
    p = BWPoint.of([ONE, I])
    assert p.n == 1
    assert p.norm_sq() == 2
    with pytest.raises(NotAMember):
        BWPoint.of([ONE, ZERO])


def test_generator_matrix_level_two() -> None:
    g = generator_matrix(2)
    two_i = GaussianInt(0, 2)
    assert g.rows == (
        (ONE, ONE, ONE, ONE),
        (ZERO, PHI, ZERO, PHI),
        (ZERO, ZERO, PHI, PHI),
        (ZERO, ZERO, ZERO, two_i),
    )
    assert g.diagonal() == (ONE, PHI, PHI, two_i)


def test_generator_diagonal_entries_and_determinant() -> None:
    for n in range(5):
        g = generator_matrix(n)
        det_norm = 1
        for j, d in enumerate(g.diagonal()):
            assert d == phi_pow(j.bit_count())
            det_norm *= d.norm_sq()
        assert det_norm == 1 << (n * (1 << (n - 1))) if n else det_norm == 1


def test_generator_rows_are_members() -> None:
    for n in range(5):
        g = generator_matrix(n)
        for row in g.rows:
            assert is_member(row)


def test_generator_combinations_are_members() -> None:
    rng = random.Random(3)
    for n in range(5):
        for _ in range(20):
            coeffs = [GaussianInt(rng.randint(-3, 3), rng.randint(-3, 3))
                      for _ in range(1 << n)]
            point = generator_combination(coeffs, n)
            assert is_member(point)


def test_member_set_is_closed_under_ring_ops() -> None:
    rng = random.Random(9)
    for n in range(5):
        for _ in range(20):
            x = random_member(rng, n).to_cvector()
            y = random_member(rng, n).to_cvector()
            assert is_member(x + y)
            assert is_member(QComplex(0, 1) * x)
            assert is_member(x.mul_phi())
            assert is_member(-x)


def test_random_member_is_deterministic_per_seed() -> None:
    a = random_member(random.Random(4), 3)
    b = random_member(random.Random(4), 3)
    assert a == b


def test_swap_halves_preserves_membership() -> None:
    rng = random.Random(21)
    for n in range(1, 6):
        for _ in range(10):
            x = random_member(rng, n).to_cvector()
            swapped = swap_halves(x)
            assert is_member(swapped)
            assert swap_halves(swapped) == x


def test_automorphism_maps_members_to_members() -> None:
    rng = random.Random(8)
    for n in range(1, 6):
        for _ in range(10):
            x = random_member(rng, n).to_cvector()
            assert is_member(automorphism_t(x))


def test_automorphism_squares_to_i() -> None:
    rng = random.Random(15)
    for n in range(1, 5):
        for _ in range(10):
            x = random_member(rng, n).to_cvector()
            assert automorphism_t(automorphism_t(x)) == QComplex(0, 1) * x


def test_automorphism_preserves_distances() -> None:
    rng = random.Random(30)

    def coord() -> QComplex:
        return QComplex(Fraction(rng.randint(-8, 8), rng.choice((1, 2, 4))),
                        Fraction(rng.randint(-8, 8), rng.choice((1, 2, 4))))

    for n in (1, 2, 3):
        for _ in range(20):
            x = CVector(coord() for _ in range(1 << n))
            y = CVector(coord() for _ in range(1 << n))
            assert rsd(automorphism_t(x), automorphism_t(y)) == rsd(x, y)
            assert automorphism_t(x).norm_sq() == x.norm_sq()


def test_multilinear_evaluate_single_monomial() -> None:
    # the S = {0} coefficient contributes phi^1 on every index containing bit 0
    coeffs = {1: ONE}
    point = multilinear_evaluate([coeffs.get(j, ZERO) for j in range(2)])
    assert tuple(point) == (ZERO, PHI)


def test_multilinear_round_trips() -> None:
    rng = random.Random(12)
    for n in range(5):
        size = 1 << n
        for _ in range(15):
            coeffs = [GaussianInt(rng.randint(-3, 3), rng.randint(-3, 3))
                      for _ in range(size)]
            point = multilinear_evaluate(coeffs)
            assert is_member(point)
            back, residual = multilinear_interpolate(point)
            assert list(back) == coeffs
            assert all(g == ZERO for g in residual)

            member = random_member(rng, n)
            cs, res = multilinear_interpolate(member)
            assert multilinear_evaluate(cs) == member
            assert all(g == ZERO for g in res)


def test_multilinear_interpolate_rejects_non_members() -> None:
    with pytest.raises(NotAMember):
        multilinear_interpolate([ONE, ZERO])


def test_point_text_format() -> None:
    assert str(BWPoint.of([ONE, I])) == "1,0 0,1"
