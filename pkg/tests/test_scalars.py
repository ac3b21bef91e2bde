from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from skewcy.errors import FieldMismatch, NotRepresentable, ZeroInput
from skewcy.scalars import (
    Cyclotomic,
    PrimeField,
    Rationals,
    common_field,
    cyclotomic_polynomial,
    embed,
    root_of_unity_order,
    root_of_unity_solve,
)

FIELDS = [Rationals(), PrimeField(101), PrimeField(2), Cyclotomic(3), Cyclotomic(4), Cyclotomic(12)]

fractions = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 20))


@st.composite
def elements(draw, F):
    if isinstance(F, Cyclotomic):
        out = F.zero
        for k in range(F.degree):
            out = out + F(draw(fractions)) * F.zeta(k)
        return out
    if isinstance(F, PrimeField):
        return F(draw(st.integers(0, F.p - 1)))
    return F(draw(fractions))


@pytest.mark.parametrize("F", FIELDS, ids=str)
@given(data=st.data())
def test_field_axioms(F, data):
    a, b, c = (data.draw(elements(F)) for _ in range(3))
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == F.zero
    if a:
        assert a * a.inverse() == F.one
        assert (a ** -2) * a * a == F.one


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    assert Cyclotomic(5).degree == 4


def test_zeta_has_exact_order():
    for n in (3, 4, 5, 6, 8, 12):
        F = Cyclotomic(n)
        z = F.zeta()
        assert z ** n == 1
        assert all(z ** k != 1 for k in range(1, n))
        assert root_of_unity_order(z) == n


def test_formatting():
    F = Cyclotomic(3)
    z = F.zeta()
    assert str(z) == "z"
    assert str(z * z) == "-z - 1"
    assert str(F(Fraction(-1, 3))) == "-1/3"
    G = Cyclotomic(5)
    assert str(G.zeta(2) - G(Fraction(1, 2)) * G.zeta() + 3) == "z^2 - 1/2*z + 3"
    assert str(PrimeField(7)(-1)) == "6"


def test_prime_field_rejects_composite_and_bad_denominators():
    with pytest.raises(ValueError):
        PrimeField(91)
    with pytest.raises(ZeroDivisionError):
        PrimeField(5)(Fraction(1, 5))


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        Cyclotomic(3).one + Cyclotomic(4).one
    with pytest.raises(FieldMismatch):
        common_field([PrimeField(5), Rationals()])


def test_embedding_is_a_ring_map():
    F, G = Cyclotomic(4), Cyclotomic(12)
    a = F.zeta() + 2
    b = F.zeta() * F(Fraction(1, 3)) - 1
    assert embed(a * b, G) == embed(a, G) * embed(b, G)
    assert embed(F.zeta(), G) == G.zeta(3)


def test_root_of_unity_solve_in_place_and_enlarged():
    F = Cyclotomic(4)
    d, K = root_of_unity_solve(F(-1), 2)
    assert K == F and d ** 2 == -1
    d, K = root_of_unity_solve(Rationals()(-1), 2)
    assert K == Cyclotomic(4) and d ** 2 == K(-1)
    z3 = Cyclotomic(3).zeta()
    d, K = root_of_unity_solve(z3.inverse(), -2)
    assert d ** -2 == z3.inverse()
    d, K = root_of_unity_solve(PrimeField(13)(4), 2)
    assert d ** 2 == 4


def test_root_of_unity_solve_rejects():
    with pytest.raises(NotRepresentable):
        root_of_unity_solve(Rationals()(2), 3)
    with pytest.raises(ZeroInput):
        root_of_unity_solve(Rationals()(0), 3)
    assert root_of_unity_order(Rationals()(2)) is None
