import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mollified_mobius.arith import (
    RationalPoint,
    build_tables,
    convergents,
    frac,
    reciprocal_phi_sum,
    sawtooth,
    sawtooth2,
    sin_turns,
)
from mollified_mobius.exceptions import CapacityError, DomainError


def test_table_examples():
    assert build_tables(10).mobius[6] == 1
    assert build_tables(10).lam[8] == pytest.approx(math.log(2), abs=1e-15)
    assert build_tables(12).phi[12] == 4


def test_tables_against_naive_factorisation(small_tables):
    for n in range(1, 500):
        fac = {}
        m, p = n, 2
        while m > 1:
            while m % p == 0:
                fac[p] = fac.get(p, 0) + 1
                m //= p
            p += 1
        mu = 0 if any(e > 1 for e in fac.values()) else (-1) ** len(fac)
        phi = n
        for p in fac:
            phi = phi // p * (p - 1)
        lam = math.log(next(iter(fac))) if len(fac) == 1 else 0.0
        assert small_tables.mobius[n] == mu
        assert small_tables.phi[n] == phi
        assert small_tables.lam[n] == pytest.approx(lam, abs=1e-15)
        assert small_tables.spf[n] == (min(fac) if fac else 1)


def test_mobius_inversion_and_chebyshev(small_tables):
    n_max = small_tables.limit
    mu_sum = np.zeros(n_max + 1, dtype=np.int64)
    lam_sum = np.zeros(n_max + 1)
    for d in range(1, n_max + 1):
        mu_sum[d::d] += small_tables.mobius[d]
        lam_sum[d::d] += small_tables.lam[d]
    assert mu_sum[1] == 1
    assert np.all(mu_sum[2:] == 0)
    n = np.arange(1, n_max + 1)
    assert np.max(np.abs(lam_sum[1:] - np.log(n))) <= 1e-12


def test_tables_are_read_only(small_tables):
    with pytest.raises(ValueError):
        small_tables.mobius[1] = 0


def test_capacity_errors(small_tables):
    with pytest.raises(CapacityError):
        build_tables(0)
    with pytest.raises(CapacityError):
        build_tables(100, max_limit=50)
    with pytest.raises(CapacityError):
        small_tables.require(small_tables.limit + 1)


@pytest.mark.parametrize("x, expected", [(1.2, 0.2), (-0.25, 0.75), (3.0, 0.0)])
def test_frac_examples(x, expected):
    assert frac(x) == pytest.approx(expected, abs=1e-15)


def test_frac_rejects_non_finite():
    for bad in (math.inf, -math.inf, math.nan):
        with pytest.raises(DomainError):
            frac(bad)


def test_frac_tiny_negative_stays_below_one():
    assert 0.0 <= frac(-1e-18) < 1.0


def test_sawtooth_examples():
    assert sawtooth(0.25) == -0.25
    assert sawtooth(7.0) == 0.0
    assert sawtooth(-0.25) == 0.25


@settings(max_examples=300)
@given(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False))
def test_frac_range_and_period(x):
    f = frac(x)
    assert 0.0 <= f < 1.0
    g = frac(x + 1.0)
    assert min(abs(f - g), 1 - abs(f - g)) <= 1e-12 * max(1.0, abs(x))


def test_sawtooth_odd_and_periodic():
    rng = np.random.default_rng(1)
    xs = rng.uniform(-50, 50, 10_000)
    xs = xs[np.abs(xs - np.round(xs)) > 1e-6]
    assert all(sawtooth(x) + sawtooth(-x) == pytest.approx(0.0, abs=1e-12) for x in xs)
    assert all(abs(sawtooth(x + 1) - sawtooth(x)) <= 1e-12 for x in xs)


def test_sawtooth2_anchors():
    # oracle: direct cosine series to 1e6 terms, error <= 1/(2 pi^2 1e6)
    assert sawtooth2(0.0, 1_000_000) == pytest.approx(1 / 12, abs=1e-7)
    assert sawtooth2(0.5, 1_000_000) == pytest.approx(-1 / 24, abs=1e-7)
    # oracle: exact integral of psi on [0, 0.3] = 0.3^2/2 - 0.3/2
    assert sawtooth2(0.3, 1_000_000) - sawtooth2(0.0, 1_000_000) == pytest.approx(-0.105, abs=1e-6)


def test_sawtooth2_truncation_bound():
    exact = 1 / 12
    for terms in (1, 10, 100):
        assert abs(sawtooth2(0.0, terms) - exact) <= 1 / (2 * math.pi**2 * terms)
    with pytest.raises(DomainError):
        sawtooth2(0.1, 0)


def test_sin_turns_exact_quarters():
    assert list(sin_turns(np.arange(5), 4)) == [0.0, 1.0, 0.0, -1.0, 0.0]
    assert sin_turns(3, 6) == 0.0
    assert sin_turns(1, 3) == pytest.approx(math.sqrt(3) / 2, abs=1e-15)


def test_rational_point_validation():
    assert RationalPoint.parse("2/5") == RationalPoint(2, 5)
    assert RationalPoint.from_fraction(Fraction(-1, 3)) == RationalPoint(2, 3)
    assert str(RationalPoint(0, 1)) == "0/1"
    with pytest.raises(DomainError, match="not reduced"):
        RationalPoint.parse("2/4")
    for bad in ("5/4", "-1/3", "x/3"):
        with pytest.raises(DomainError):
            RationalPoint.parse(bad)
    with pytest.raises(DomainError):
        RationalPoint(0, 0)


def test_convergents_examples(small_tables):
    golden = (math.sqrt(5) - 1) / 2
    assert convergents(golden, 20).denominators == [1, 2, 3, 5, 8, 13]
    assert convergents(0.5, 100).entries == [(1, 2)]
    s = reciprocal_phi_sum(convergents(golden, 10**6), build_tables(10**6))
    assert 0 < s < 4


@settings(max_examples=100)
@given(st.floats(min_value=1e-6, max_value=1 - 1e-6))
def test_convergent_properties(alpha):
    cl = convergents(alpha, 10**9)
    qs = cl.denominators
    assert all(b > a for a, b in zip(qs, qs[1:]))
    x = Fraction(alpha)
    for (p, q), (_, q2) in zip(cl.entries, cl.entries[1:]):
        assert abs(x - Fraction(p, q)) < Fraction(1, q * q2)
