from __future__ import annotations

import random

import pytest
import sympy

from oracles import annihilator_rational
from skewcy import linalg
from skewcy.algebra import make_algebra
from skewcy.catalog import load_entry
from skewcy.errors import NoRuleAvailable, NotCertified, NotQuadratic
from skewcy.koszul import (
    as_index,
    certify_koszul_as_regular,
    convention_selftest,
    hdet_koszul,
    hdet_lookup,
    homological_determinant,
    nakayama,
    nakayama_koszul,
    quadratic_data,
    quadratic_dual,
)
from skewcy.scalars import PrimeField, Rationals

Q = Rationals()


def as_sympy(vectors):
    return sympy.Matrix([[sympy.Rational(c.value.numerator, c.value.denominator) for c in v] for v in vectors])


def same_span(ours, oracle):
    A, B = as_sympy(ours), sympy.Matrix(oracle)
    return A.rank() == B.rank() == A.col_join(B).rank()


@pytest.mark.parametrize("rel", ["y*x - x*y", "y*x - 3*x*y", "y*x + x*y", "x*x - y*y"])
def test_dual_relation_space_matches_pairing_kernel(rel):
    A = make_algebra(["x", "y"], [1, 1], [rel])
    q = quadratic_data(A)
    oracle = annihilator_rational([[int(c.value) if c.value.denominator == 1 else c.value for c in r] for r in q.R], 4)
    assert len(q.R) + len(q.dual_R) == 4
    assert same_span(q.dual_R, oracle)
    for r in q.R:
        for s in q.dual_R:
            assert sum((a * b for a, b in zip(r, s)), Q.zero) == 0


def test_dual_of_polynomial_ring_is_exterior():
    E = quadratic_dual(load_entry("polynomial(2)").algebra)
    assert sorted(E.format(r) for r in E.minimal_relations) == ["x1'^2", "x2'*x1' + x1'*x2'", "x2'^2"]
    assert E.hilbert()[:4] == [1, 2, 1, 0]


def test_dual_of_free_algebra_is_trivial():
    E = quadratic_dual(make_algebra(["x", "y"], [1, 1], []))
    assert E.hilbert()[:3] == [1, 2, 0]


def test_dual_of_quantum_plane():
    E = quadratic_dual(load_entry("quantum_plane(3)").algebra)
    want = make_algebra(["x'", "y'"], [1, 1], ["x'*x'", "y'*y'", "y'*x' + 1/3*x'*y'"])
    assert E.same_ideal(want)


@pytest.mark.parametrize("spec", ["polynomial(3)", "skewpoly(3)", "quantum_plane(5)", "kminus1_plane"])
def test_double_dual_has_the_same_ideal(spec):
    A = load_entry(spec).algebra
    E = quadratic_dual(A)
    AA = quadratic_dual(E, names=A.table.names, degree_bound=A.degree_bound)
    assert AA.same_ideal(A)


def test_certificates():
    c = certify_koszul_as_regular(load_entry("polynomial(2)").algebra)
    assert c.certified and c.d == 2 and c.as_index == (2,)
    assert "numerically certified to degree 8" in c.note
    c = certify_koszul_as_regular(load_entry("skewpoly(3)").algebra)
    assert c.certified and c.d == 3 and c.as_index == (1, 1, 1)
    bad = certify_koszul_as_regular(make_algebra(["x", "y"], [1, 1], ["x*y"]))
    assert not bad.certified
    assert any("degenerate" in f for f in bad.failures)
    with pytest.raises(NotQuadratic):
        certify_koszul_as_regular(load_entry("downup_010").algebra)
    with pytest.raises(NotCertified):
        nakayama_koszul(make_algebra(["x", "y"], [1, 1], ["x*y"]))


def test_numerical_identity_holds_for_certified_algebras():
    for spec in ("polynomial(3)", "skewpoly(3)", "quantum_plane(3)"):
        A = load_entry(spec).algebra
        c = certify_koszul_as_regular(A)
        a, e = A.hilbert(), c.dual_hilbert
        for n in range(1, A.degree_bound + 1):
            assert sum((-1) ** i * e[i] * a[n - i] for i in range(n + 1)) == 0


def test_classical_nakayama_of_exterior_algebra():
    c = certify_koszul_as_regular(load_entry("polynomial(2)").algebra)
    fr = c.frobenius
    assert fr.nu.matrix == linalg.scale(linalg.identity(Q, 2), Q(-1))
    E = fr.algebra
    for a in E.gens:
        for b in E.gens:
            assert fr.pair(a, b) == fr.pair(fr.nu(b), a)


def test_classical_nakayama_of_quantum_dual():
    c = certify_koszul_as_regular(load_entry("quantum_plane(3)").algebra)
    assert c.frobenius.nu.diagonal == [Q(-1) / 3, Q(-3)]


def test_nakayama_examples():
    assert nakayama_koszul(load_entry("polynomial(4)").algebra).is_identity
    mu = nakayama_koszul(load_entry("quantum_plane(3)").algebra)
    assert mu.diagonal == [Q(1) / 3, Q(3)]
    assert convention_selftest() == []


def test_hdet_examples():
    P = load_entry("polynomial(2)").algebra
    s = P.automorphism([[2, 1], [5, -1]])
    assert hdet_koszul(P, s) == s.det()
    K = load_entry("kminus1_plane").algebra
    assert hdet_koszul(K, K.automorphism([[0, 1], [1, 0]])) == 1
    S = load_entry("skewpoly(3)").algebra
    assert hdet_koszul(S, S.xi([2, 3, 5])) == Q(30)


def test_hdet_lookup_rules():
    P = load_entry("downup_010")
    A = P.algebra
    F = A.field
    h, src = hdet_lookup(A, P.automorphisms["sigma"])
    assert h == F(-1) and src == "registry"
    assert hdet_lookup(A, P.automorphisms["xi"])[0] == 1
    assert hdet_lookup(A, A.xi(F.zeta()))[0] == F.zeta() ** 4
    Pn = load_entry("polynomial(2)").algebra
    s = Pn.automorphism([[1, 1], [0, 3]])
    assert hdet_lookup(Pn, s)[0] == 3
    bare = make_algebra(["x", "y"], [1, 1], ["y*x - 2*x*y"])
    with pytest.raises(NoRuleAvailable):
        hdet_lookup(bare, bare.diagonal([1, 2]))


def test_hdet_xi_agrees_with_lookup_on_certified_algebras():
    for spec in ("polynomial(3)", "quantum_plane(3)", "kminus1_plane"):
        A = load_entry(spec).algebra
        for d in (2, -1, Q(3) / 7):
            s = A.xi(d)
            assert hdet_koszul(A, s) == hdet_lookup(A, s, ell=as_index(A)[0])[0]


def test_dispatch_provenance():
    A = load_entry("quantum_plane(3)").algebra
    assert nakayama(A)[1] == "computed-koszul"
    assert nakayama(A, source="registry")[1] == "registry"
    D = load_entry("downup_010").algebra
    mu, src = nakayama(D)
    assert src == "registry" and mu == D.xi(-1)
    assert as_index(D) == ((4,), "registry")
    assert homological_determinant(D, D.xi(-1)) == (D.field.one, "registry")


def random_diagonal(A, rng, F):
    return A.diagonal([F.random_element(rng, nonzero=True) for _ in range(A.ngens)])


def test_hdet_multiplicative_and_mu_central():
    rng = random.Random(7)
    P = load_entry("polynomial(2)").algebra
    for _ in range(20):
        while True:
            M = [[Q(rng.randint(-3, 3)) for _ in range(2)] for _ in range(2)]
            if linalg.det(M, Q):
                break
        s = P.automorphism(M)
        t = P.automorphism([[1, rng.randint(-2, 2)], [0, rng.choice([1, 2, -1])]])
        assert hdet_koszul(P, s * t) == hdet_koszul(P, s) * hdet_koszul(P, t)
    S = load_entry("skewpoly(3)").algebra
    mu = nakayama_koszul(S)
    for _ in range(10):
        s = random_diagonal(S, rng, Q)
        assert mu.commutes_with(s)
        assert hdet_koszul(S, s * mu) == hdet_koszul(S, s) * hdet_koszul(S, mu)
    assert hdet_koszul(S, mu) == 1


def test_prime_field_skew_ring():
    F = PrimeField(101)
    A = load_entry("skewpoly(3, field=prime:101, p12=5, p13=7, p23=11)").algebra
    mu = nakayama_koszul(A)
    assert mu.diagonal == [F(1) / 35, F(5) / 11, F(77)]
