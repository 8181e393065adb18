import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rdprimes.digits import new_digit_system
from rdprimes.errors import PreconditionError
from rdprimes.fourier import (chat, chat_points, decay_envelope, envelope, hybrid_scan,
                              l1_scan, large_sieve_scan, large_spectra_count,
                              spectra_constant)
from rdprimes.frequency import Frequency, parse_theta

from oracles import chat_direct


def test_chat_examples(ds7):
    assert chat(ds7, 3, Frequency()).value == pytest.approx(729, abs=1e-9)
    assert chat(ds7, 1, Frequency.rat(1, 2)).value == pytest.approx(1, abs=1e-12)
    assert chat(ds7, 2, Frequency.rat(1, 4)).value == pytest.approx(1 + 2j, abs=1e-12)


def test_envelope_examples(ds7):
    assert envelope(ds7, 3, Frequency()) == 729
    assert envelope(ds7, 1, Frequency.rat(1, 2)) == pytest.approx(2)
    assert envelope(ds7, 2, Frequency.rat(1, 4)) == pytest.approx(8)
    assert decay_envelope(ds7, 3, Frequency()) == pytest.approx(729)
    assert decay_envelope(ds7, 1, Frequency.rat(1, 2)) == pytest.approx(9 * math.exp(-1 / 40))
    with pytest.raises(PreconditionError):
        decay_envelope(new_digit_system(4, [1, 3]), 2, Frequency())


def test_l1_examples(ds7):
    r = l1_scan(ds7, 1, Frequency())
    direct = sum(abs(chat_direct(ds7, 1, Fraction(a, 10))) for a in range(10))
    assert r.lhs == pytest.approx(direct)
    assert r.rhs == pytest.approx(64.05, abs=0.01) and r.satisfied
    r0 = l1_scan(ds7, 0, Frequency())
    assert r0.lhs == pytest.approx(1) and r0.rhs == 1 and r0.satisfied
    assert l1_scan(ds7, 4, Frequency.from_fraction(Fraction(123, 1000))).satisfied


def test_large_sieve_reports(ds7):
    r = large_sieve_scan(ds7, 2, 2, Frequency())
    assert r.lhs > 0 and r.satisfied
    big = large_sieve_scan(ds7, 1, 5, Frequency())
    assert big.rhs == pytest.approx((25 + 10) * (ds7.constants().C0 * math.log(10)))
    assert large_sieve_scan(ds7, 3, 4, Frequency.rat(3, 10)).satisfied


def test_hybrid_reports(ds7):
    r = hybrid_scan(ds7, 4, 2, 10, Frequency())
    assert r.context["points"] > 0
    with pytest.raises(PreconditionError):
        hybrid_scan(ds7, 4, 2, 10**4 / 40, Frequency())
    full = hybrid_scan(new_digit_system(10, []), 4, 2, 10, Frequency())
    assert full.context["alpha"] < ds7.constants().alpha


def test_large_spectra(ds7):
    r = large_spectra_count(ds7, 2, Frequency(), (0, 1), 1)
    assert r.lhs >= 1 and r.satisfied
    r2 = large_spectra_count(ds7, 4, Frequency(), (-100, 101), 2)
    assert r2.lhs >= 1
    huge = large_spectra_count(ds7, 2, Frequency(), (0, 50), 1e6)
    assert huge.satisfied and huge.lhs <= 50
    assert spectra_constant(10) == pytest.approx(4000 * math.log(4))


def test_chat_at_integer_shift_is_full(ds7):
    vals, errs = chat_points(ds7, 3, Frequency(), [(np.array([0, 1000, -1000]), 1000)])
    assert np.allclose(vals, 729)


systems = st.integers(2, 12).flatmap(
    lambda b: st.tuples(st.just(b), st.sets(st.integers(0, b - 1), max_size=b - 1)))


@settings(max_examples=80, deadline=None)
@given(systems, st.integers(0, 4), st.integers(0, 10**6), st.integers(1, 10**6))
def test_chat_matches_direct(sys_, N, p, q):
    ds = new_digit_system(*sys_)
    if ds.base**N > 2 * 10**4:
        return
    th = Fraction(p, q)
    ev = chat(ds, N, Frequency.from_fraction(th))
    assert abs(ev.value - chat_direct(ds, N, th)) <= max(ev.abs_error_bound, 1e-9)


@settings(max_examples=150, deadline=None)
@given(systems, st.integers(0, 10), st.fractions(0, 1))
def test_envelopes_dominate(sys_, N, th):
    ds = new_digit_system(*sys_)
    f = Frequency.from_fraction(th)
    ev = chat(ds, N, f)
    assert abs(ev.value) <= envelope(ds, N, f) * (1 + 1e-9) + ev.abs_error_bound
    if ds.has_consecutive_pair:
        assert abs(ev.value) <= decay_envelope(ds, N, f) * (1 + 1e-9) + ev.abs_error_bound


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 25))
def test_named_theta_deep_levels(N):
    ds = new_digit_system(10, [7])
    g = parse_theta("golden", N, 10)
    ev = chat(ds, N, g)
    assert abs(ev.value) <= 9**N
    assert ev.abs_error_bound < 1e-6 * 9**N
