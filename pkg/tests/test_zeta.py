import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from perigee.orbits import CountSequence, RealizabilityError, fixed_from_least
from perigee.toral import IntegerPolynomial, toral_fix_sequence
from perigee.zeta import (
    VERDICT_NO_RECURRENCE,
    VERDICT_RATIONAL,
    ZetaSeries,
    berlekamp_massey,
    orbit_product_form,
    rationality_probe,
    sequence_from_series,
    zeta_truncate,
)


def doubling_sequence(top):
    return CountSequence.fixed([2**n - 1 for n in range(1, top + 1)])


def test_truncate_examples():
    series = zeta_truncate(doubling_sequence(8), 5)
    assert series.coefficients == (1, 1, 2, 4, 8, 16)
    ones = zeta_truncate(CountSequence.fixed([1] * 8), 4)
    assert ones.coefficients == (1, 1, 1, 1, 1)
    single = zeta_truncate(CountSequence.fixed([1, 0, 0]), 3)
    assert single.coefficients == (1, 1, Fraction(1, 2), Fraction(1, 6))


def test_truncate_validation():
    with pytest.raises(ValueError):
        zeta_truncate(CountSequence.least([1, 2]), 2)
    with pytest.raises(ValueError):
        zeta_truncate(doubling_sequence(4), 9)


def test_recurrence_invariant():
    F = CountSequence.fixed([3, 1, 4, 1, 5, 9, 2, 6])
    series = zeta_truncate(F, 8)
    c = series.coefficients
    for m in range(1, 9):
        assert m * c[m] == sum(F.values[k - 1] * c[m - k] for k in range(1, m + 1))


def test_doubling_coefficients_through_32():
    series = zeta_truncate(doubling_sequence(32), 32)
    assert series.coefficients == tuple([1] + [2**m for m in range(32)])


def test_orbit_product_matches_exponential():
    series = zeta_truncate(doubling_sequence(8), 5)
    product = orbit_product_form(doubling_sequence(8), 5)
    assert product.coefficients == series.coefficients
    ones = CountSequence.fixed([1] * 6)
    assert orbit_product_form(ones, 4).coefficients == (1, 1, 1, 1, 1)


def test_orbit_product_rejects_unrealizable():
    with pytest.raises(RealizabilityError) as info:
        orbit_product_form(CountSequence.fixed([1, 2]), 2)
    assert info.value.n == 2


def test_round_trip_recovers_counts():
    F = doubling_sequence(16)
    assert sequence_from_series(zeta_truncate(F, 16)).values == F.values


@given(st.lists(st.integers(min_value=0, max_value=9), min_size=8, max_size=24))
@settings(max_examples=100, deadline=None)
def test_realizable_series_are_integral(orbit_counts):
    least = CountSequence.least([n * o for n, o in enumerate(orbit_counts, start=1)])
    F = fixed_from_least(least)
    series = zeta_truncate(F, F.N)
    assert all(c.denominator == 1 and c >= 0 for c in series.coefficients)
    assert orbit_product_form(F, F.N).coefficients == series.coefficients


def test_berlekamp_massey_basics():
    # geometric sequence: single-term recurrence
    L, C = berlekamp_massey([1, 2, 4, 8, 16, 32])
    assert C == (1, -2)
    # Fibonacci
    L, C = berlekamp_massey([1, 1, 2, 3, 5, 8, 13, 21])
    assert C == (1, -1, -1)


def test_probe_doubling():
    verdict = rationality_probe(zeta_truncate(doubling_sequence(32), 32))
    assert verdict.verdict == VERDICT_RATIONAL
    assert verdict.numerator == (1, -1)
    assert verdict.denominator == (1, -2)


def test_probe_constant():
    verdict = rationality_probe(zeta_truncate(CountSequence.fixed([1] * 12), 12))
    assert verdict.verdict == VERDICT_RATIONAL
    assert verdict.numerator == (1,)
    assert verdict.denominator == (1, -1)


def test_probe_golden_mean():
    F = toral_fix_sequence(IntegerPolynomial((-1, -1, 1)), 32)
    verdict = rationality_probe(zeta_truncate(F, 32))
    assert verdict.verdict == VERDICT_RATIONAL
    assert verdict.numerator == (1, 0, -1)
    assert verdict.denominator == (1, -1, -1)


def test_probe_identity_on_candidate():
    # N(z) = D(z) * S(z) through order M, exactly
    F = toral_fix_sequence(IntegerPolynomial((-1, -1, 1)), 32)
    series = zeta_truncate(F, 32)
    verdict = rationality_probe(series)
    num, den = verdict.numerator, verdict.denominator
    for m in range(33):
        acc = Fraction(0)
        for j, d in enumerate(den):
            if j <= m:
                acc += d * series.coefficients[m - j]
        expected = num[m] if m < len(num) else 0
        assert acc == expected


def test_probe_requires_enough_terms():
    with pytest.raises(ValueError):
        rationality_probe(zeta_truncate(CountSequence.fixed([1] * 6), 6))


def test_probe_no_low_order_recurrence():
    rng = random.Random(17)
    # factorial-ish growth defeats any short linear recurrence
    values = [rng.randint(1, 5) * (n + 1) ** n % (10**9 + 7) for n in range(24)]
    series = zeta_truncate(CountSequence.fixed(values), 24)
    verdict = rationality_probe(series)
    assert verdict.verdict == VERDICT_NO_RECURRENCE
    assert verdict.numerator is None


def test_probe_json():
    verdict = rationality_probe(zeta_truncate(doubling_sequence(16), 16))
    obj = verdict.to_json()
    assert obj == {
        "verdict": VERDICT_RATIONAL,
        "num_coeffs": ["1", "-1"],
        "den_coeffs": ["1", "-2"],
    }


def test_series_requires_unit_constant():
    with pytest.raises(ValueError):
        ZetaSeries(coefficients=(Fraction(2),))
