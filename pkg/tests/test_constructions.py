from __future__ import annotations

import random

import pytest

from skewcy.algebra import make_algebra
from skewcy.catalog import load_entry
from skewcy.constructions import (
    check_witness,
    eigenvalue_of,
    graded_twist,
    hi1_candidate,
    inner_witness,
    nakayama_of_quotient,
    normality_witness,
    ore_extension,
    quotient_by_normal,
    rectify_diagonal,
    smash_product,
    tensor_product,
)
from skewcy.errors import (
    GroupClosureExceeded,
    NonCommutingFamily,
    NotEigenvector,
    NotMultiplicative,
    NotNormal,
    NotRepresentable,
    ZeroASIndex,
)
from skewcy.koszul import nakayama_koszul
from skewcy.scalars import Cyclotomic, Rationals

Q = Rationals()


def bigraded_plane():
    return make_algebra(["x", "y"], [(1, 0), (0, 1)], ["y*x - x*y"])


def test_identity_twist():
    A = load_entry("skewpoly(3)").algebra
    tw = graded_twist(A, [A.identity()] * 3)
    assert tw.same_ideal(A)


def test_twist_gives_skew_plane():
    A = bigraded_plane()
    tw = graded_twist(A, [A.diagonal([1, 7]), A.identity()])
    assert tw.same_ideal(make_algebra(["x", "y"], [(1, 0), (0, 1)], ["y*x - 7*x*y"]))


def test_downup_twist():
    P = load_entry("downup_010")
    A = P.algebra
    tw = graded_twist(A, [P.automorphisms["sigma"]])
    target = A.rebuild(relations=[A.parse("x^2*y + y*x^2"), A.parse("y^2*x + x*y^2")])
    assert tw.same_ideal(target)
    assert tw.hilbert() == A.hilbert()


def test_twist_involution():
    rng = random.Random(3)
    for spec in ("skewpoly(3)", "quantum_plane(3)", "downup_010"):
        P = load_entry(spec)
        A = P.algebra
        F = A.field
        fam = [A.diagonal([F.random_element(rng, nonzero=True) for _ in range(A.ngens)]) for _ in range(A.rank)]
        tw = graded_twist(A, fam)
        back = graded_twist(tw, [s.on(tw) for s in [f.inverse() for f in fam]])
        assert back.same_ideal(A)


def test_non_commuting_family_rejected():
    A = make_algebra(["x", "y"], [(1, 0), (1, 0)], ["y*x - x*y"])
    s = A.automorphism([[0, 1], [1, 0]])
    t = A.diagonal([1, 2])
    with pytest.raises(NonCommutingFamily):
        graded_twist(A, [s, t])


def test_ore_extension_examples():
    K = make_algebra(["x"], [1], [])
    C = ore_extension(K, K.diagonal([5]), t_degree=1)
    assert C.same_ideal(make_algebra(["x", "t"], [1, 1], ["t*x - 5*x*t"]))
    A = load_entry("quantum_plane(3)").algebra
    D = ore_extension(A, A.identity())
    T = tensor_product(A, make_algebra(["t"], [1], []))
    assert D.same_ideal(T)
    mu = nakayama_koszul(D)
    assert mu.diagonal == nakayama_koszul(A).diagonal + [Q(1)]


def test_tensor_product_of_polynomial_rings():
    AB = tensor_product(make_algebra(["x"], [1], []), make_algebra(["y"], [1], []))
    assert AB.rank == 2
    assert AB.hilbert() == list(range(1, AB.degree_bound + 2))
    clash = tensor_product(make_algebra(["x"], [1], []), make_algebra(["x"], [1], []))
    assert clash.table.names == ("x", "x1")


def test_normality_witness_examples():
    P = load_entry("downup_010")
    A = P.algebra
    w = normality_witness(A, A.parse("x*y - y*x"), P.automorphisms["xi"])
    assert w.tau == A.xi(-1)
    assert w.eigenvalue == 1
    B = load_entry("quantum_plane(3)").algebra
    w = normality_witness(B, B.parse("x"))
    assert w.tau.diagonal == [Q(1), Q(1) / 3]
    F = make_algebra(["x", "y"], [1, 1], [])
    with pytest.raises(NotNormal) as exc:
        normality_witness(F, F.parse("x"))
    assert exc.value.generator == "y"


def test_quotients():
    B = load_entry("quantum_plane(3)").algebra
    w = normality_witness(B, B.parse("x"))
    q = quotient_by_normal(B, B.parse("x"))
    assert q.algebra.table.names == ("y",)
    assert q.algebra.hilbert() == [1] * (B.degree_bound + 1)
    nq = nakayama_of_quotient(q, nakayama_koszul(B), w.tau)
    assert nq.is_identity
    D = load_entry("downup_010").algebra
    z = D.parse("x*y - y*x")
    q = quotient_by_normal(D, z)
    assert q.algebra.is_quadratic
    assert q.algebra.same_ideal(make_algebra(["x", "y"], [1, 1], ["y*x - x*y"], field=D.field))
    with pytest.raises(NotEigenvector):
        P = load_entry("polynomial(2)").algebra
        qq = quotient_by_normal(P, P.parse("x1 + x2"))
        nakayama_of_quotient(qq, P.diagonal([1, 2]), P.identity())


def test_eigenvalue_of():
    P = load_entry("polynomial(2)").algebra
    s = P.diagonal([2, 3])
    assert eigenvalue_of(s, P.parse("x1*x2")) == 6
    assert eigenvalue_of(s, P.parse("x1 + x2")) is None


def test_smash_products():
    P = load_entry("polynomial(2)").algebra
    swap = P.automorphism([[0, 1], [1, 0]])
    B = smash_product(P, [swap], check_degree=4)
    assert B.order == 2
    x = B.element(P.parse("x1"), 1)
    assert B.mul(x, x) == B.element(P.parse("x1*x2"), 0)
    trivial = smash_product(P, [], check_degree=3)
    assert trivial.order == 1 and len(trivial.basis(2)) == 3
    D = load_entry("downup_010")
    S = smash_product(D.algebra, [D.automorphisms["xi"]])
    assert S.order == 2 and len(S.basis(0)) == 2
    assert S.associativity_failures == []
    with pytest.raises(GroupClosureExceeded):
        K = make_algebra(["x"], [1], [])
        smash_product(K, [K.diagonal([2])], cap=10)


def test_conjugation_by_group_elements():
    D = load_entry("downup_010")
    A = D.algebra
    S = smash_product(A, [D.automorphisms["xi"], D.automorphisms["sigma"]], check_degree=3)
    assert S.order == 8  # diag(s, s*z^k), s = +-1
    for g in range(S.order):
        for i in range(A.ngens):
            a = S.element(A.gen(i))
            conj = S.mul(S.mul(S.group_element(g), a), S.group_element(S.inverse[g]))
            assert conj == S.element(S.group[g](A.gen(i)))


def test_hi1_candidate_and_witness():
    D = load_entry("downup_010")
    A = D.algebra
    B = smash_product(A, [D.automorphisms["xi"]])
    rho = hi1_candidate(B, A.xi(-1), [1, 1])
    w = inner_witness(B, rho)
    assert w.found and w.coefficients[0] == 0 and w.coefficients[1] != 0
    assert check_witness(B, rho, w.unit, degree=5) == []
    P = load_entry("quantum_plane(3)").algebra
    T = smash_product(P, [], check_degree=3)
    rho = hi1_candidate(T, nakayama_koszul(P), [1], degree=4)
    assert not inner_witness(T, rho).found
    rho = hi1_candidate(T, P.identity(), [1], degree=3)
    w = inner_witness(T, rho)
    assert w.found and w.unit == T.one()


def test_hi1_candidate_rejects_noncentral_mu():
    K = load_entry("kminus1_plane")
    A = K.algebra
    B = smash_product(A, [K.automorphisms["swap"]], check_degree=3)
    with pytest.raises(NotMultiplicative):
        hi1_candidate(B, A.diagonal([1, -1]), [1, 1], degree=3)
    with pytest.raises(NotMultiplicative):
        hi1_candidate(B, A.identity(), [1, 2], degree=3)


def test_rectify_diagonal():
    P = load_entry("quantum_plane(z, field=cyclotomic:3)")
    r = rectify_diagonal(P.algebra, P.automorphisms["mu"], 2)
    assert r.scalar is not None and not r.notes
    z = Cyclotomic(3).zeta()
    assert [d ** -2 for d in r.sigma.diagonal] == [z.inverse(), z]
    poly = load_entry("polynomial(2)").algebra
    r = rectify_diagonal(poly, poly.identity(), 2)
    assert r.sigma.is_identity and r.twist.same_ideal(poly)
    Q2 = load_entry("quantum_plane(2)")
    with pytest.raises(NotRepresentable):
        rectify_diagonal(Q2.algebra, Q2.automorphisms["mu"], 2)
    with pytest.raises(ZeroASIndex):
        rectify_diagonal(poly, poly.identity(), 0)


def test_rectify_enlarges_field():
    K = load_entry("kminus1_plane")
    r = rectify_diagonal(K.algebra, K.automorphisms["mu"], 2)
    assert r.algebra.field == Cyclotomic(4)
    assert r.scalar is not None
