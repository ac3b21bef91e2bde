"""Quadratic duals, numerical Koszul certification and the Frobenius route.

For a Koszul AS-regular algebra ``A = T(V)/(R)`` the dual ``E = T(V*)/(R^perp)``
is Frobenius with top degree ``d``. The Nakayama automorphism of ``A`` and
homological determinants are read off from ``E``:

* ``mu_A|_V = (-1)^(d+1) * transpose(nu|_{V*})`` with ``nu`` the classical
  Nakayama automorphism of ``E``;
* ``hdet(sigma) = lambda^-1`` where ``lambda`` is the scalar by which the
  contragredient of ``sigma`` acts on ``E_d``.

Both conventions are checked against known closed forms by
:func:`convention_selftest` before the first computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import linalg
from .algebra import GradedAlgebra, GradedAutomorphism, xi_parameters
from .errors import (
    DegeneratePairing,
    DualNotPreserved,
    NoRuleAvailable,
    NotAnAutomorphism,
    NotCertified,
    NotQuadratic,
    NotMultiplicative,
    AlgebraError,
)
from .free import GeneratorTable, NcPolynomial, Word
from .scalars import Rationals, Scalar

COMPUTED = "computed-koszul"
REGISTRY = "registry"


@dataclass
class QuadraticData:
    """Bases of ``R`` in ``V (x) V`` and ``R^perp`` in ``V* (x) V*``.

    Vectors are indexed by the words ``(i, j)`` in ``pairs``.
    """

    names: tuple[str, ...]
    pairs: list[Word]
    R: list[list[Scalar]]
    dual_R: list[list[Scalar]]


def quadratic_data(A: GradedAlgebra) -> QuadraticData:
    if not A.is_quadratic:
        raise NotQuadratic(f"{A!r} is not quadratic and generated in degree 1")
    F = A.field
    T = A.table
    n = A.ngens
    pairs = [(i, j) for i in range(n) for j in range(n)]
    rels = [[r.coefficient(p) for p in pairs] for r in A.minimal_relations]
    R = [row for row in linalg.rref(rels, F)[0] if any(row)] if rels else []
    # R^perp block by block so that the dual relations stay multihomogeneous
    blocks: dict[tuple, list[int]] = {}
    for k, p in enumerate(pairs):
        blocks.setdefault(T.word_degree(p), []).append(k)
    dual_R = []
    for deg in sorted(blocks):
        idx = blocks[deg]
        sub = [[row[k] for k in idx] for row in R if any(row[k] for k in idx)]
        for v in linalg.nullspace(sub, F, len(idx)):
            full = [F.zero] * len(pairs)
            for k, c in zip(idx, v):
                full[k] = c
            dual_R.append(full)
    return QuadraticData(T.names, pairs, R, dual_R)


def quadratic_dual(A: GradedAlgebra, names=None, degree_bound: int | None = None) -> GradedAlgebra:
    """The algebra on dual generators (named ``x'`` by default) with relations ``R^perp``."""
    q = quadratic_data(A)
    F = A.field
    if names is None:
        names = tuple(f"{x}'" for x in A.table.names)
    table = GeneratorTable(tuple(names), A.table.degrees)
    rels = [NcPolynomial(F, dict(zip(q.pairs, v))) for v in q.dual_R]
    if degree_bound is None:
        degree_bound = max(A.degree_bound, A.ngens + 2)
    label = f"{A.name}^!" if A.name else None
    return GradedAlgebra(table, F, rels, degree_bound, name=label)


# ---------- Frobenius data of the dual ----------

@dataclass
class FrobeniusData:
    """Frobenius structure of a finite-dimensional connected graded algebra."""

    algebra: GradedAlgebra
    basis: dict[int, list[Word]]
    top_degree: int
    top_word: Word
    pairing: dict[int, list[list[Scalar]]]
    nu_blocks: dict[int, list[list[Scalar]]]
    nu: GradedAutomorphism

    def pair(self, a: NcPolynomial, b: NcPolynomial) -> Scalar:
        return self.algebra.nf(a * b).coefficient(self.top_word)


def _pairing_matrix(E: GradedAlgebra, left: list[Word], right: list[Word], top: Word):
    F = E.field
    rows = []
    for u in left:
        row = []
        for v in right:
            row.append(E.nf(NcPolynomial.monomial(F, u + v)).coefficient(top))
        rows.append(row)
    return rows


def classical_nakayama(E: GradedAlgebra, d: int) -> FrobeniusData:
    """Solve ``<a, b> = <nu(b), a>`` degree by degree and check ``nu`` is an automorphism."""
    F = E.field
    basis = {i: E.basis(i) for i in range(d + 1)}
    if len(basis[d]) != 1:
        raise DegeneratePairing(f"top degree {d} has dimension {len(basis[d])}, not 1")
    top = basis[d][0]
    P = {}
    for i in range(d + 1):
        M = _pairing_matrix(E, basis[i], basis[d - i], top)
        if len(basis[i]) != len(basis[d - i]) or (M and not linalg.det(M, F)):
            raise DegeneratePairing(f"pairing of degrees {i} and {d - i} is degenerate")
        P[i] = M
    N = {}
    for j in range(d + 1):
        i = d - j
        if not basis[j]:
            N[j] = []
            continue
        N[j] = linalg.matmul(linalg.inverse(linalg.transpose(P[j]), F), P[i])
    n = E.ngens
    if [w for w in basis.get(1, [])] != [(k,) for k in range(n)]:
        raise DegeneratePairing("degree-one basis of the dual is not its generator set")
    try:
        nu = GradedAutomorphism(E, N[1])
    except NotAnAutomorphism as exc:
        raise NotMultiplicative("nu does not preserve the dual relations", pair=None) from exc
    for j in range(2, d + 1):
        words = basis[j]
        induced = [[F.zero] * len(words) for _ in words]
        for c, w in enumerate(words):
            img = nu(NcPolynomial.monomial(F, w))
            for r, u in enumerate(words):
                induced[r][c] = img.coefficient(u)
        if not linalg.mat_equal(induced, N[j]):
            raise NotMultiplicative(f"nu is not multiplicative in degree {j}", pair=None)
    return FrobeniusData(E, basis, d, top, P, N, nu)


# ---------- certification ----------

@dataclass
class KoszulCertificate:
    algebra: GradedAlgebra
    dual: GradedAlgebra
    certified: bool
    checked_to: int
    d: int | None = None
    as_index: tuple[int, ...] | None = None
    failures: list[str] = dc_field(default_factory=list)
    dual_hilbert: list[int] = dc_field(default_factory=list)
    frobenius: FrobeniusData | None = None

    @property
    def as_index_total(self) -> int | None:
        return self.d

    @property
    def note(self) -> str:
        if not self.certified:
            return "not certified: " + "; ".join(self.failures)
        return (
            f"numerically certified to degree {self.checked_to} "
            "(Koszul numerical identity, Frobenius dual); not a proof of Koszulity. "
            "Nakayama convention: mu_A|_V = (-1)^(d+1) nu^T, fixed by skew polynomial rings; "
            "the inverse convention would give mu_A^-1."
        )

    def to_dict(self) -> dict:
        return {
            "certified": self.certified,
            "checked_to": self.checked_to,
            "global_dimension": self.d,
            "as_index": list(self.as_index) if self.as_index else None,
            "dual_hilbert": self.dual_hilbert,
            "failures": list(self.failures),
            "note": self.note,
        }


def certify_koszul_as_regular(A: GradedAlgebra) -> KoszulCertificate:
    """Certify numerically (to ``A.degree_bound``) that ``A`` is Koszul AS regular.

    Raises :class:`NotQuadratic`; any other failed check is recorded in the
    returned certificate with ``certified == False``.
    """
    hit = A._cache.get("koszul")
    if hit is not None:
        return hit
    E = quadratic_dual(A)
    D = A.degree_bound
    dims = E.hilbert()
    cert = KoszulCertificate(A, E, False, D, dual_hilbert=dims)
    nz = [i for i, v in enumerate(dims) if v]
    d = nz[-1]
    if d == len(dims) - 1:
        cert.failures.append(f"dual is nonzero in degree {d}, the degree bound of the dual")
    elif dims[d] != 1:
        cert.failures.append(f"top degree {d} of the dual has dimension {dims[d]}, not 1")
    a_dims = A.hilbert()
    for n in range(1, D + 1):
        s = sum((-1) ** i * dims[i] * a_dims[n - i] for i in range(0, min(n, len(dims) - 1) + 1))
        if s:
            cert.failures.append(f"numerical Koszul identity fails in degree {n} (sum {s})")
            break
    if not cert.failures:
        try:
            cert.frobenius = classical_nakayama(E, d)
        except (DegeneratePairing, NotMultiplicative) as exc:
            cert.failures.append(str(exc))
    if not cert.failures:
        cert.certified = True
        cert.d = d
        top = cert.frobenius.top_word
        cert.as_index = E.table.word_degree(top)
    A._cache["koszul"] = cert
    return cert


def _require(A: GradedAlgebra) -> KoszulCertificate:
    cert = certify_koszul_as_regular(A)
    if not cert.certified:
        raise NotCertified(cert.note)
    return cert


# ---------- Koszul route ----------

_SELFTEST = {"state": "pending"}


def nakayama_koszul(A: GradedAlgebra) -> GradedAutomorphism:
    """``mu_A`` from the classical Nakayama automorphism of the dual."""
    _ensure_conventions()
    hit = A._cache.get("nakayama_koszul")
    if hit is not None:
        return hit
    cert = _require(A)
    F = A.field
    sign = F.one if cert.d % 2 == 1 else -F.one
    M = linalg.scale(linalg.transpose(cert.frobenius.nu.matrix), sign)
    mu = GradedAutomorphism(A, M)
    A._cache["nakayama_koszul"] = mu
    return mu


def dual_action(A: GradedAlgebra, sigma: GradedAutomorphism) -> GradedAutomorphism:
    """The contragredient ``(sigma^-1)^T`` on the dual, checked to preserve ``R^perp``."""
    cert = _require(A)
    S = linalg.transpose(linalg.inverse(sigma.matrix, A.field))
    try:
        return GradedAutomorphism(cert.dual, S)
    except NotAnAutomorphism as exc:
        raise DualNotPreserved("contragredient action does not preserve R^perp") from exc


def hdet_koszul(A: GradedAlgebra, sigma: GradedAutomorphism) -> Scalar:
    _ensure_conventions()
    cert = _require(A)
    top = cert.frobenius.top_word
    F = A.field
    lam = dual_action(A, sigma)(NcPolynomial.monomial(F, top)).coefficient(top)
    return lam.inverse()


def hdet_lookup(A: GradedAlgebra, sigma: GradedAutomorphism, ell=None) -> tuple[Scalar, str]:
    """Closed-form homological determinant with its provenance.

    ``xi_delta`` gives ``prod delta_s^l_s`` when the AS index is known;
    otherwise the algebra's registered rule (``det`` or ``det_squared``).
    """
    known = A.known
    if ell is None and known.as_index is not None:
        ell = known.as_index
    if ell is not None:
        delta = xi_parameters(sigma)
        if delta is not None:
            ell = tuple(ell) if not isinstance(ell, int) else (ell,)
            if len(ell) == len(delta):
                out = A.field.one
                for dl, e in zip(delta, ell):
                    out = out * dl ** e
                return out, known.provenance.get("as_index", REGISTRY)
    rule = known.hdet_rule
    if rule == "det":
        return sigma.det(), known.provenance.get("hdet_rule", REGISTRY)
    if rule == "det_squared":
        return sigma.det() ** 2, known.provenance.get("hdet_rule", REGISTRY)
    raise NoRuleAvailable(f"no closed-form hdet rule for {sigma.format()} on {A!r}")


# ---------- dispatch ----------

def koszul_available(A: GradedAlgebra) -> bool:
    try:
        return certify_koszul_as_regular(A).certified
    except NotQuadratic:
        return False


def nakayama(A: GradedAlgebra, source: str = "auto") -> tuple[GradedAutomorphism, str]:
    """``(mu_A, provenance)``; ``source`` is ``auto``, ``koszul`` or ``registry``."""
    if source in ("auto", "koszul") and (source == "koszul" or koszul_available(A)):
        return nakayama_koszul(A), COMPUTED
    if A.known.nakayama is not None:
        return GradedAutomorphism(A, A.known.nakayama), A.known.provenance.get("nakayama", REGISTRY)
    raise NoRuleAvailable(f"no Nakayama automorphism available for {A!r}")


def as_index(A: GradedAlgebra, source: str = "auto") -> tuple[tuple[int, ...], str]:
    if source in ("auto", "koszul") and (source == "koszul" or koszul_available(A)):
        return _require(A).as_index, COMPUTED
    if A.known.as_index is not None:
        ell = tuple(A.known.as_index)
        if len(ell) != A.rank:
            raise NoRuleAvailable(f"registered AS index {ell} does not match grading rank {A.rank}")
        return ell, A.known.provenance.get("as_index", REGISTRY)
    raise NoRuleAvailable(f"no AS index available for {A!r}")


def homological_determinant(
    A: GradedAlgebra, sigma: GradedAutomorphism, source: str = "auto"
) -> tuple[Scalar, str]:
    if source in ("auto", "koszul") and (source == "koszul" or koszul_available(A)):
        return hdet_koszul(A, sigma), COMPUTED
    return hdet_lookup(A, sigma)


# ---------- convention guard ----------

def convention_selftest() -> list[str]:
    """Check the sign and transpose conventions on algebras with known answers.

    Returns a list of failures (empty when the conventions hold).
    """
    from .algebra import make_algebra

    F = Rationals()
    bad = []
    q = F(3)
    Aq = make_algebra(["x", "y"], [1, 1], ["y*x - 3*x*y"], D=4, field=F)
    mu = nakayama_koszul(Aq)
    want = [[q.inverse(), F.zero], [F.zero, q]]
    if not linalg.mat_equal(mu.matrix, want):
        bad.append(f"skew plane: mu = {linalg.format_matrix(mu.matrix)}, expected diag(1/3, 3)")
    P = make_algebra(["x", "y"], [1, 1], ["y*x - x*y"], D=4, field=F)
    S = [[F(2), F(1)], [F(5), F(-1)]]
    h = hdet_koszul(P, GradedAutomorphism(P, S))
    if h != linalg.det(S, F):
        bad.append(f"polynomial ring: hdet = {h}, expected det = {linalg.det(S, F)}")
    if not nakayama_koszul(P).is_identity:
        bad.append("polynomial ring: mu is not the identity")
    return bad


def _ensure_conventions():
    if _SELFTEST["state"] in ("ok", "running"):
        return
    _SELFTEST["state"] = "running"
    try:
        bad = convention_selftest()
    except Exception:
        _SELFTEST["state"] = "pending"
        raise
    if bad:
        _SELFTEST["state"] = "pending"
        raise AlgebraError("convention self-test failed: " + "; ".join(bad))
    _SELFTEST["state"] = "ok"
