import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rdprimes.arith import RationalApprox, dirichlet_approx
from rdprimes.digits import new_digit_system
from rdprimes.errors import BudgetExceeded, PreconditionError
from rdprimes.frequency import Frequency, parse_theta
from rdprimes.sieve import (ResidueClass, lambda_exp_sum, lambda_fourier_check,
                            lambda_transform_grid, lambda_weighted_sum, lambda_weighted_terms,
                            restricted_primes, sieve_range, von_mangoldt_transform)

from oracles import restricted_primes_direct, von_mangoldt

PSI10 = 3 * math.log(2) + 2 * math.log(3) + math.log(5) + math.log(7)


def test_sieve_range_examples():
    seg = sieve_range(0, 10)
    assert seg.primes().tolist() == [2, 3, 5, 7]
    n, p = seg.prime_powers()
    assert n.tolist() == [2, 3, 4, 5, 7, 8, 9]
    assert sieve_range(90, 100).primes().tolist() == [97]
    assert sieve_range(0, 2).primes().size == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**5), st.integers(1, 3000))
def test_von_mangoldt_matches_oracle(lo, width):
    seg = sieve_range(lo, lo + width)
    got = seg.von_mangoldt()
    want = [von_mangoldt(n) for n in range(lo, lo + width)]
    assert np.allclose(got, want)


def test_lambda_sum_examples(ds7, ds_full):
    assert lambda_weighted_sum(ds_full, 1) == pytest.approx(PSI10, rel=1e-12)
    # prime powers below 100 carrying a digit 7 (49 has none, so it stays)
    excluded = [7, 17, 27, 37, 47, 67, 71, 73, 79, 97]
    assert all(not ds7.contains(n) for n in excluded) and ds7.contains(49)
    psi100 = sum(von_mangoldt(n) for n in range(100))
    want = psi100 - sum(von_mangoldt(n) for n in excluded)
    assert want == pytest.approx(sum(von_mangoldt(n) for n in range(100) if ds7.contains(n)))
    assert lambda_weighted_sum(ds7, 2) == pytest.approx(want, rel=1e-12)
    assert lambda_weighted_sum(ds7, 1, ResidueClass(2, 0)) == pytest.approx(3 * math.log(2))


def test_restricted_primes_examples(ds7):
    assert restricted_primes(ds7, 100).size == 16
    assert restricted_primes(ds7, 100, ResidueClass(10, 1)).tolist() == [11, 31, 41, 61]
    assert restricted_primes(ds7, 2).size == 0


def test_exp_sum_examples(ds7):
    assert lambda_exp_sum(ds7, 3, Frequency()) == pytest.approx(lambda_weighted_sum(ds7, 3))
    want = 3 * math.log(2) - 2 * math.log(3) - math.log(5)
    assert lambda_exp_sum(ds7, 1, Frequency.rat(1, 2)) == pytest.approx(want)
    assert lambda_exp_sum(ds7, 2, Frequency.rat(1)) == lambda_exp_sum(ds7, 2, Frequency())


def test_fourier_check_examples():
    r = lambda_fourier_check(1000, RationalApprox(1, 2, 0.0, Fraction(0)))
    direct = abs(sum(von_mangoldt(n) * (-1) ** n for n in range(1000)))
    assert r.lhs == pytest.approx(direct)
    r10 = lambda_fourier_check(10, RationalApprox(0, 1, 0.0, Fraction(0)))
    assert r10.lhs == pytest.approx(PSI10)
    assert r10.context["middleTerm"] == "not-applicable"
    g = parse_theta("golden", 4, 10)
    approx = dirichlet_approx(g, 987)
    assert (approx.ell, approx.d) == (610, 987)
    assert lambda_fourier_check(10**4, approx).satisfied


def test_grid_transform_matches_exp_sum(ds_full):
    vals = lambda_transform_grid(1000, np.array([0, 1, 250, 999]), sign=1)
    for m, v in zip([0, 1, 250, 999], vals):
        assert v == pytest.approx(von_mangoldt_transform(10, 3, Frequency.rat(m, 1000)))


def test_budget(ds7):
    with pytest.raises(BudgetExceeded):
        lambda_weighted_sum(ds7, 11)
    with pytest.raises(PreconditionError):
        ResidueClass(3, 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 12), st.sets(st.integers(0, 11), max_size=3),
       st.integers(1, 12), st.integers(0, 11), st.integers(2, 3000))
def test_restricted_primes_match_oracle(b, exc, q, t, limit):
    exc = {d for d in exc if d < b}
    if len(exc) >= b:
        return
    ds = new_digit_system(b, exc)
    t %= q
    got = restricted_primes(ds, limit, ResidueClass(q, t)).tolist()
    assert got == restricted_primes_direct(ds, limit, q, t)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 12), st.integers(2, 4))
def test_residue_partition_exact(q, N):
    ds = new_digit_system(10, [7])
    total = lambda_weighted_terms(ds, N)
    parts = sum((lambda_weighted_terms(ds, N, ResidueClass(q, t)) for t in range(q)),
                start=type(total)())
    assert parts == total
    s = sum(lambda_weighted_sum(ds, N, ResidueClass(q, t)) for t in range(q))
    assert s == pytest.approx(lambda_weighted_sum(ds, N), rel=1e-12)
