from __future__ import annotations

import pytest

from oracles import brute_force_dims, hilbert_from_series
from skewcy.algebra import make_algebra
from skewcy.catalog import load_entry
from skewcy.errors import DegreeBoundExceeded, InhomogeneousRelation
from skewcy.free import GeneratorTable, NcPolynomial
from skewcy.rewriting import RewriteSystem
from skewcy.scalars import Rationals

CATALOG_SPECS = [
    "polynomial(2)",
    "polynomial(3)",
    "skewpoly(2)",
    "skewpoly(3)",
    "skewpoly(3, field=prime:101)",
    "quantum_plane(3)",
    "kminus1_plane",
    "downup_010",
]


@pytest.mark.parametrize("spec", CATALOG_SPECS)
def test_groebner_dimensions_match_brute_force_to_degree_5(spec):
    A = load_entry(spec, degree=5).algebra
    expected = brute_force_dims(A.ngens, A.relations, A.field, 5)
    assert A.hilbert() == expected
    assert A.rewrite.overlap_failures() == []


def test_downup_hilbert_series():
    A = load_entry("downup_010").algebra
    expected = hilbert_from_series([1], [1, 1, 2], 8)
    assert expected == [1, 2, 4, 6, 9, 12, 16, 20, 25]
    assert A.hilbert() == expected
    assert len(A.basis(3)) == 6


def test_infinite_groebner_basis_is_truncated_exactly():
    # yxy = xyx has an infinite basis (rules y x^n y x -> ...); truncation is still exact
    sizes = []
    for D in (5, 7):
        A = make_algebra(["x", "y"], [1, 1], ["y*x*y - x*y*x"], D=D)
        sizes.append(len(A.rewrite.groebner))
        assert A.hilbert() == brute_force_dims(2, A.relations, A.field, D)
    assert sizes[1] > sizes[0]


def test_groebner_of_quantum_plane():
    A = load_entry("quantum_plane(3)").algebra
    assert [g.format(A.table) for g in A.rewrite.groebner] == ["y*x - 3*x*y"]
    assert A.nf(A.parse("y*x*x")) == A.parse("9*x^2*y")


def test_normal_form_is_idempotent_and_linear():
    A = load_entry("downup_010").algebra
    f = A.parse("y*y*x*x + 3*x*y*x*y - y*x*y*x")
    g = A.parse("y^3*x - x*y")
    assert A.nf(A.nf(f)) == A.nf(f)
    assert A.nf(f + g) == A.nf(f) + A.nf(g)


def test_degree_bound_is_enforced():
    A = make_algebra(["x", "y"], [1, 1], ["y*x - x*y"], D=3)
    with pytest.raises(DegreeBoundExceeded) as exc:
        A.nf(A.parse("x^4"))
    assert exc.value.needed == 4
    with pytest.raises(DegreeBoundExceeded):
        A.basis(4)


def test_inhomogeneous_relation_rejected():
    Q = Rationals()
    T = GeneratorTable.standard(["x"])
    x = NcPolynomial.gen(Q, 0)
    with pytest.raises(InhomogeneousRelation):
        RewriteSystem(T, Q, [x * x - x], 4)


def test_weighted_generators():
    # k<a,b>/(ab - ba) with |a| = 1, |b| = 2: dims 1,1,2,2,3,3
    A = make_algebra(["a", "b"], [1, 2], ["b*a - a*b"], D=5)
    assert A.hilbert() == [1, 1, 2, 2, 3, 3]
