from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rdprimes.density import Obstruction, kappa, maynard_coefficient, obstruction, verify_dirichlet
from rdprimes.digits import new_digit_system
from rdprimes.errors import BudgetExceeded


@pytest.mark.parametrize("q,t,val", [(2, 1, Fraction(5, 6)), (3, 1, Fraction(5, 12)),
                                     (10, 3, Fraction(5, 18))])
def test_kappa_examples(ds7, q, t, val):
    k = kappa(ds7, q, t)
    assert k.value == val


def test_kappa_str(ds7):
    assert str(kappa(ds7, 3, 1)) == "5/12"


def test_obstruction_examples(ds7):
    assert obstruction(ds7, 4, 2) is Obstruction.UNIT
    assert obstruction(ds7, 10, 7) is Obstruction.DIGIT
    assert obstruction(ds7, 3, 1) is Obstruction.NONE


def test_maynard_examples(ds7):
    assert maynard_coefficient(ds7) == Fraction(5, 6)
    assert maynard_coefficient(new_digit_system(10, [])) == 1
    assert maynard_coefficient(new_digit_system(10, [2])) == Fraction(10, 9)


def test_partition_identity(ds7):
    total = kappa(ds7, 1, 0).value
    for q in range(1, 31):
        assert sum(kappa(ds7, q, t).value for t in range(q)) == total


def test_well_defined(ds7):
    for q in (4, 8, 12, 20, 21, 25):
        for t in range(q):
            k = kappa(ds7, q, t)
            dec = k.decomposition
            assert kappa(ds7, q, t, L=dec.L + 1).value == k.value
            assert kappa(ds7, q, t, h=dec.h + dec.v).value == k.value


def test_verify_dirichlet_classical(ds_full):
    rep = verify_dirichlet(ds_full, 1, 0, range(4, 6))
    assert all(abs(r.ratio - 1) < 0.02 for r in rep.rows)


def test_verify_dirichlet_obstructed(ds7):
    rep = verify_dirichlet(ds7, 10, 7, range(4, 6))
    assert kappa(ds7, 10, 7).value == 0
    assert all(r.empirical == 0 for r in rep.rows)
    assert all(r.ratio is None for r in rep.rows)


def test_verify_dirichlet_progression(ds7):
    rep = verify_dirichlet(ds7, 3, 1, range(4, 7))
    assert rep.kappa == Fraction(5, 12)
    assert all(abs(r.ratio - 1) < 0.1 for r in rep.rows)


systems = st.integers(3, 16).flatmap(
    lambda b: st.tuples(st.just(b), st.sets(st.integers(0, b - 1), max_size=b - 2)))


@settings(max_examples=60, deadline=None)
@given(systems, st.integers(1, 40), st.data())
def test_obstruction_implies_zero(sys_, q, data):
    ds = new_digit_system(*sys_)
    t = data.draw(st.integers(0, q - 1))
    try:
        k = kappa(ds, q, t).value
    except BudgetExceeded:
        return
    if obstruction(ds, q, t) is not Obstruction.NONE:
        assert k == 0
    if ds.contains(1) and t == 1 % q:
        assert k > 0


@settings(max_examples=40, deadline=None)
@given(systems)
def test_maynard_consistency(sys_):
    ds = new_digit_system(*sys_)
    assert maynard_coefficient(ds) == kappa(ds, 1, 0).value
