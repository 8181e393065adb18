import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rdprimes.errors import InsufficientPrecision, PreconditionError
from rdprimes.frequency import Frequency, dist_to_int, parse_theta, required_bits


def test_parse_examples():
    assert parse_theta("1/3") == Frequency.rat(1, 3)
    assert parse_theta("dec:0.5").as_fraction() == Fraction(1, 2)
    g = parse_theta("golden", 7, 10)
    assert g.bits >= 7 * math.log2(10) + 64
    assert abs(float(g) - (math.sqrt(5) - 1) / 2) < 1e-15
    assert abs(float(parse_theta("sqrt2", 3, 10)) - (math.sqrt(2) - 1)) < 1e-15


@pytest.mark.parametrize("bad", ["1/0", "abc", "dec:x", "pi"])
def test_parse_rejects(bad):
    with pytest.raises(PreconditionError):
        parse_theta(bad)


def test_rational_reduced_mod_one():
    assert Frequency.rat(5, 3) == Frequency.rat(2, 3)
    assert Frequency.rat(1).as_fraction() == 0


def test_named_rematerialised():
    g = parse_theta("golden", 1, 10)
    hi = g.ensure_precision(30, 10)
    assert hi.bits >= required_bits(30, 10)
    assert (-g).ensure_precision(30, 10).as_fraction() == (-hi).as_fraction()


def test_truncated_fixed_rejected():
    f = Frequency.fixed(12345, 40)
    with pytest.raises(InsufficientPrecision):
        f.ensure_precision(20, 10)
    assert Frequency.fixed(12345, 40, exact=True).ensure_precision(20, 10).bits == 40


def test_dist_to_int():
    assert dist_to_int(0.25) == 0.25
    assert dist_to_int(0.75) == 0.25
    assert dist_to_int(-0.1) == pytest.approx(0.1)


@settings(max_examples=200, deadline=None)
@given(st.integers(-10**6, 10**6), st.integers(1, 10**6), st.integers(0, 2**33))
def test_frac_times_rational(p, q, n):
    f = Frequency.rat(p, q)
    want = float(Fraction(n * p, q) % 1)
    assert f.frac_times(n) == pytest.approx(want, abs=1e-15)
    arr = f.frac_times_array(np.array([n]))
    assert arr[0] == pytest.approx(want, abs=1e-15)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**120), st.integers(1, 120), st.integers(0, 2**34 - 1))
def test_frac_times_fixed(m, bits, n):
    f = Frequency.fixed(m, bits, exact=True)
    want = float(Fraction(n * (m % 2**bits), 2**bits) % 1)
    got = f.frac_times_array(np.array([n]))[0]
    assert min(abs(got - want), 1 - abs(got - want)) < 1e-14


@settings(max_examples=100, deadline=None)
@given(st.fractions(), st.integers(2, 16), st.integers(0, 60))
def test_frac_power(r, b, i):
    f = Frequency.from_fraction(r)
    want = float((b**i * Fraction(r)) % 1)
    got = f.frac_power(b, i)
    assert min(abs(got - want), 1 - abs(got - want)) < 1e-14


@settings(max_examples=100, deadline=None)
@given(st.fractions(), st.fractions())
def test_addition_exact(a, b):
    s = Frequency.from_fraction(a) + Frequency.from_fraction(b)
    assert s.as_fraction() == (a + b) % 1
    assert (-Frequency.from_fraction(a)).as_fraction() == (-a) % 1


@settings(max_examples=100, deadline=None)
@given(st.floats(-1e6, 1e6, allow_nan=False))
def test_from_float_exact(x):
    assert Frequency.from_float(x).as_fraction() == Fraction(x) % 1
