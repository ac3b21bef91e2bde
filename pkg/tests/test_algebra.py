from __future__ import annotations

import pytest

from skewcy.algebra import check_automorphism, make_algebra, xi, xi_parameters
from skewcy.catalog import load_entry
from skewcy.errors import DegreeNotPreserved, NotAnAutomorphism, SingularMatrix
from skewcy.scalars import Cyclotomic, Rationals

Q = Rationals()


def test_swap_is_an_automorphism_of_kminus1_but_not_of_kq():
    A = load_entry("kminus1_plane").algebra
    s = A.automorphism([[0, 1], [1, 0]])
    assert s.order().order == 2
    B = load_entry("quantum_plane(3)").algebra
    with pytest.raises(NotAnAutomorphism) as exc:
        B.automorphism([[0, 1], [1, 0]])
    assert exc.value.relation is not None


def test_validation_errors():
    A = make_algebra(["x", "y"], [(1, 0), (0, 1)], ["y*x - x*y"])
    with pytest.raises(DegreeNotPreserved):
        check_automorphism(A, [[1, 1], [0, 1]])
    P = load_entry("polynomial(2)").algebra
    with pytest.raises(SingularMatrix):
        P.automorphism([[1, 1], [1, 1]])


def test_group_operations():
    A = load_entry("polynomial(2)").algebra
    s = A.automorphism([[1, 2], [3, 4]])
    t = A.automorphism([[0, 1], [1, 0]])
    assert (s * s.inverse()).is_identity
    assert s ** 3 == s * s * s
    assert s ** -2 == (s.inverse()) ** 2
    assert (s * t)(A.gen("x1")) == s(t(A.gen("x1")))
    assert s.det() == Q(-2)


def test_orders():
    F = Cyclotomic(4)
    D = load_entry("downup_010").algebra
    assert D.diagonal([1, F.zeta()]).order().order == 4
    assert D.xi(-1).order().order == 2
    K = make_algebra(["x"], [1], [])
    rep = K.diagonal([2]).order()
    assert rep.order is None and not rep.finite
    assert "root of unity" in rep.reason


def test_xi_and_parameters():
    A = make_algebra(["x", "y", "u"], [(1, 0), (0, 1), (1, 1)], ["y*x - x*y"])
    s = xi(A, [2, 3])
    assert s.diagonal == [Q(2), Q(3), Q(6)]
    assert xi_parameters(s) == [Q(2), Q(3)]
    assert xi_parameters(A.identity()) == [Q(1), Q(1)]
    assert xi_parameters(A.diagonal([1, 1, 2])) is None


def test_downup_normal_element():
    A = load_entry("downup_010").algebra
    z = A.parse("x*y - y*x")
    assert A.nf(A.gen("x") * z + z * A.gen("x")).is_zero()
    assert A.nf(A.gen("y") * z + z * A.gen("y")).is_zero()


def test_minimal_relations_and_quadratic():
    A = make_algebra(["x", "y"], [1, 1], ["y*x - x*y", "y*x*x - x*x*y", "2*y*x - 2*x*y"])
    assert len(A.minimal_relations) == 1
    assert A.is_quadratic
    assert not load_entry("downup_010").algebra.is_quadratic


def test_base_change_and_total_grading():
    A = load_entry("skewpoly(2)").algebra
    Z = A.with_total_grading()
    assert Z.rank == 1 and Z.hilbert() == A.hilbert()
    B = A.base_change(Cyclotomic(3))
    assert B.hilbert() == A.hilbert()
    assert B.field == Cyclotomic(3)
