from __future__ import annotations

from fractions import Fraction

import pytest

from bwlist.bounds import (
    DEFAULT_ETA_GRID,
    applicable_upper,
    johnson_eps,
    johnson_half,
    lower_eps,
    upper_34,
    upper_58,
    upper_eps,
    validate_bounds,
)


def test_johnson_half_values() -> None:
    assert [johnson_half(n) for n in range(4)] == [4, 8, 16, 32]


def test_johnson_eps_values() -> None:
    assert johnson_eps(Fraction(1, 2)) == 1
    assert johnson_eps(Fraction(1, 4)) == 2
    assert johnson_eps(Fraction(1, 5)) == 2
    assert johnson_eps(Fraction(1, 8)) == 4
    with pytest.raises(ValueError):
        johnson_eps(Fraction(3, 4))
    with pytest.raises(ValueError):
        johnson_eps(0)


def test_fixed_radius_uppers() -> None:
    assert [upper_58(n) for n in range(3)] == [4, 96, 2304]
    assert [upper_34(n) for n in range(3)] == [4, 2304, 1327104]


def test_upper_eps_values() -> None:
    assert upper_eps(Fraction(1, 2), 0) == 4
    assert upper_eps(Fraction(1, 2), 1) == 4 * 2**16
    assert upper_eps(Fraction(1, 3), 1) == 4 * 3**16
    # non-integer power: ceiling must round up
    assert upper_eps(Fraction(2, 3), 1) == -(-4 * 3**16 // 2**16)
    with pytest.raises(ValueError):
        upper_eps(0, 1)


def test_lower_eps_power_of_two() -> None:
    # eps = 2^-t gives exponent (n - t)(t - 1)
    assert lower_eps(Fraction(1, 2), 5) == 1
    assert lower_eps(Fraction(1, 4), 2) == 1
    assert lower_eps(Fraction(1, 4), 3) == 2
    assert lower_eps(Fraction(1, 4), 6) == 16
    assert lower_eps(Fraction(1, 8), 5) == 16
    assert lower_eps(Fraction(1, 16), 10) == 1 << 18


def test_lower_eps_general_values() -> None:
    # frozen from a high-precision evaluation of 2^((n - log2(1/eps))(log2(1/eps) - 1))
    assert lower_eps(Fraction(1, 3), 5) == 3
    assert lower_eps(Fraction(1, 6), 6) == 42
    assert lower_eps(Fraction(1, 3), 2) == 1


def test_lower_eps_always_at_least_one() -> None:
    for n in range(7):
        for eps in (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(1, 5)):
            assert lower_eps(eps, n) >= 1


def test_applicable_upper_dispatch() -> None:
    assert applicable_upper(Fraction(1, 4), 2) == ("johnson-eps", 2)
    assert applicable_upper(Fraction(1, 2), 2) == ("johnson-half", 16)
    assert applicable_upper(Fraction(5, 8), 2) == ("five-eighths", 2304)
    assert applicable_upper(Fraction(3, 4), 2) == ("three-quarters", 1327104)
    name, value = applicable_upper(Fraction(7, 8), 1)
    assert name == "one-minus-eps"
    assert value == upper_eps(Fraction(1, 8), 1)
    assert applicable_upper(Fraction(1), 2) == ("none", None)
    assert applicable_upper(Fraction(3, 2), 2) == ("none", None)


def test_default_eta_grid_covers_every_formula() -> None:
    names = {applicable_upper(eta, 1)[0] for eta in DEFAULT_ETA_GRID}
    assert names == {
        "johnson-eps", "johnson-half", "five-eighths",
        "three-quarters", "one-minus-eps", "none",
    }


def test_validate_bounds_all_ok_small_levels() -> None:
    for n in (0, 1, 2):
        reports = validate_bounds(n, trials=4, seed=1)
        assert reports
        for rep in reports:
            assert rep.ok
            assert rep.measured >= rep.lower
            if rep.upper is not None:
                assert rep.measured <= rep.upper


def test_validate_bounds_adversarial_word_is_tight_at_half() -> None:
    reports = validate_bounds(1, trials=1, seed=0)
    tight = [rep for rep in reports
             if rep.eta == Fraction(1, 2) and rep.formula == "johnson-half"
             and rep.measured == rep.upper]
    assert tight  # the all-phi/2 word meets the 4N bound exactly


def test_validate_bounds_is_deterministic() -> None:
    a = validate_bounds(1, trials=3, seed=9)
    b = validate_bounds(1, trials=3, seed=9)
    assert a == b
