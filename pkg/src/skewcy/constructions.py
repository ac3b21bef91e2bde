"""Graded twists, Ore extensions, tensor products, quotients and smash products."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from . import linalg
from .algebra import GradedAlgebra, GradedAutomorphism, minimize_relations, xi_parameters
from .errors import (
    FieldMismatch,
    GroupClosureExceeded,
    NonCommutingFamily,
    NotEigenvector,
    NotMultiplicative,
    NotNormal,
    ZeroASIndex,
)
from .free import GeneratorTable, NcPolynomial, Word, apply_linear
from .scalars import Scalar, common_field, embed, root_of_unity_solve

DEFAULT_SEED = 1729


# ---------- graded twists ----------

def _as_family(A: GradedAlgebra, family) -> list[GradedAutomorphism]:
    if isinstance(family, GradedAutomorphism):
        family = [family]
    family = list(family)
    if len(family) != A.rank:
        raise ValueError(f"a twisting family needs {A.rank} automorphisms, got {len(family)}")
    out = [s if s.algebra is A else s.on(A) for s in family]
    for i in range(len(out)):
        for j in range(i + 1, len(out)):
            if not out[i].commutes_with(out[j]):
                raise NonCommutingFamily(f"sigma_{i + 1} and sigma_{j + 1} do not commute")
    return out


def family_power(family: Sequence[GradedAutomorphism], exponent: Sequence[int]) -> GradedAutomorphism:
    """``prod_s sigma_s^(exponent_s)`` for a commuting family."""
    out = family[0].algebra.identity()
    for s, e in zip(family, exponent):
        if e:
            out = out.compose(s ** e)
    return out


def graded_twist(A: GradedAlgebra, family, name: str | None = None) -> GradedAlgebra:
    """Left graded twist ``a o b = sigma^|b|(a) b`` by a commuting family.

    A relation ``sum c_w x_w`` of the twist is obtained by rewriting each
    ``o``-word in the old product: slot ``j`` of a word gets
    ``sigma^-(degree of the letters to its right)``.
    """
    fam = _as_family(A, family)
    T = A.table
    cache: dict[tuple, list[NcPolynomial]] = {}

    def images(exponent):
        if exponent not in cache:
            cache[exponent] = family_power(fam, exponent).images
        return cache[exponent]

    def slots(word: Word):
        out = []
        suffix = [0] * T.rank
        for letter in reversed(word):
            out.append(images(tuple(-v for v in suffix)))
            for s, v in enumerate(T.degrees[letter]):
                suffix[s] += v
        return out[::-1]

    rels = [apply_linear(r, slots) for r in A.relations]
    label = name or (f"{A.name}^sigma" if A.name else None)
    return A.rebuild(relations=rels, known=None, name=label)


# ---------- Ore extensions and tensor products ----------

def _fresh_name(taken, base: str) -> str:
    if base not in taken:
        return base
    k = 1
    while f"{base}{k}" in taken:
        k += 1
    return f"{base}{k}"


def ore_extension(
    A: GradedAlgebra, phi: GradedAutomorphism, t_degree=None, name: str = "t"
) -> GradedAlgebra:
    """``A[t; phi]`` with ``t a = phi(a) t``.

    Without ``t_degree`` the new variable gets its own grading coordinate, so
    the result is ``Z^(w+1)``-graded. A ``t_degree`` of length ``w`` keeps the
    grading group of ``A``.
    """
    if phi.algebra is not A:
        phi = phi.on(A)
    F = A.field
    T = A.table
    n = A.ngens
    if t_degree is None:
        degrees = tuple(d + (0,) for d in T.degrees) + ((0,) * T.rank + (1,),)
    else:
        t_degree = (t_degree,) if isinstance(t_degree, int) else tuple(t_degree)
        if len(t_degree) != T.rank:
            raise ValueError(f"t_degree must have length {T.rank}")
        degrees = T.degrees + (t_degree,)
    tname = _fresh_name(T.names, name)
    table = GeneratorTable(T.names + (tname,), degrees)
    t = NcPolynomial.gen(F, n)
    rels = list(A.relations)
    for i in range(n):
        rels.append(t * NcPolynomial.gen(F, i) - phi.images[i] * t)
    label = f"{A.name}[{tname}]" if A.name else None
    return GradedAlgebra(table, F, rels, A.degree_bound, name=label)


def tensor_product(A: GradedAlgebra, B: GradedAlgebra, degree_bound: int | None = None) -> GradedAlgebra:
    """``A (x) B`` with generators of ``B`` after those of ``A``; names clashing are suffixed."""
    if A.field != B.field:
        raise FieldMismatch(f"tensor product of algebras over {A.field} and {B.field}")
    F = A.field
    m, n = A.ngens, B.ngens
    wa, wb = A.rank, B.rank
    names = list(A.table.names)
    for x in B.table.names:
        names.append(_fresh_name(names, x) if x in names else x)
    degrees = tuple(d + (0,) * wb for d in A.table.degrees) + tuple((0,) * wa + d for d in B.table.degrees)
    table = GeneratorTable(tuple(names), degrees)
    rels = list(A.relations)
    for r in B.relations:
        rels.append(NcPolynomial(F, {tuple(i + m for i in w): c for w, c in r.terms.items()}))
    for i in range(m):
        for j in range(n):
            a, b = NcPolynomial.gen(F, i), NcPolynomial.gen(F, m + j)
            rels.append(b * a - a * b)
    D = degree_bound or min(A.degree_bound, B.degree_bound)
    label = f"{A.name} (x) {B.name}" if A.name and B.name else None
    return GradedAlgebra(table, F, rels, D, name=label)


def block_diagonal(F, M, N):
    m, n = len(M), len(N)
    out = linalg.zeros(F, m + n, m + n)
    for i in range(m):
        for j in range(m):
            out[i][j] = M[i][j]
    for i in range(n):
        for j in range(n):
            out[m + i][m + j] = N[i][j]
    return out


def tensor_automorphism(AB: GradedAlgebra, sigma: GradedAutomorphism, tau: GradedAutomorphism):
    return GradedAutomorphism(AB, block_diagonal(AB.field, sigma.matrix, tau.matrix))


# ---------- normal elements and quotients ----------

@dataclass
class NormalWitness:
    element: NcPolynomial
    tau: GradedAutomorphism
    eigenvalue: Scalar | None = None


def eigenvalue_of(sigma: GradedAutomorphism, z: NcPolynomial) -> Scalar | None:
    """``c`` with ``sigma(z) = c z`` in the algebra, or ``None``."""
    A = sigma.algebra
    zn = A.nf(z)
    img = sigma(zn)
    if zn.is_zero():
        return None
    lw = zn.leading_word(A.table)
    c = img.coefficient(lw) / zn.coefficient(lw)
    return c if A.nf(img - zn.scale(c)).is_zero() else None


def normality_witness(A: GradedAlgebra, z: NcPolynomial, mu: GradedAutomorphism | None = None) -> NormalWitness:
    """Find the automorphism ``tau`` with ``z a = tau(a) z``.

    Raises :class:`NotNormal` naming the first generator with no solution.
    """
    T = A.table
    F = A.field
    z = A.nf(z)
    if z.is_zero() or not z.is_homogeneous(T) or z.total_degree(T) < 1:
        raise NotNormal("z must be a nonzero homogeneous element of positive degree")
    n = A.ngens
    M = linalg.zeros(F, n, n)
    for i in range(n):
        same = [k for k in range(n) if T.degrees[k] == T.degrees[i]]
        lhs = A.nf(z * A.gen(i))
        cols = [A.nf(A.gen(k) * z) for k in same]
        words = sorted(set(lhs.terms).union(*(c.terms for c in cols)))
        system = [[c.coefficient(w) for c in cols] for w in words]
        sol = linalg.solve(system, [lhs.coefficient(w) for w in words], F) if words else [F.zero] * len(same)
        if sol is None:
            raise NotNormal(f"z*{T.names[i]} is not of the form f*z with f linear", generator=T.names[i])
        for k, c in zip(same, sol):
            M[k][i] = c
    tau = GradedAutomorphism(A, M)
    if not A.equal(tau(z), z):
        raise NotNormal("tau does not fix z")
    ev = eigenvalue_of(mu, z) if mu is not None else None
    return NormalWitness(z, tau, ev)


@dataclass
class Quotient:
    """``A/(z)`` together with the projection ``A -> A/(z)``."""

    parent: GradedAlgebra
    algebra: GradedAlgebra
    element: NcPolynomial
    kept: list[int]
    images: list[NcPolynomial]

    def project(self, f: NcPolynomial) -> NcPolynomial:
        return self.algebra.nf(apply_linear(f, self.images))

    def restrict(self, sigma: GradedAutomorphism) -> GradedAutomorphism:
        """Induced automorphism of the quotient (requires ``sigma(z)`` in ``(z)``)."""
        B = self.algebra
        F = B.field
        M = linalg.zeros(F, B.ngens, B.ngens)
        for col, k in enumerate(self.kept):
            img = self.project(sigma.images[k])
            for row in range(B.ngens):
                M[row][col] = img.coefficient((row,))
        return GradedAutomorphism(B, M)


def quotient_by_normal(A: GradedAlgebra, z: NcPolynomial, name: str | None = None) -> Quotient:
    """``A/(z)``; a linear ``z`` is used to eliminate its leading generator."""
    T = A.table
    F = A.field
    z = A.nf(z)
    if z.is_zero() or not z.is_homogeneous(T):
        raise NotNormal("z must be a nonzero homogeneous element")
    label = name or (f"{A.name}/(z)" if A.name else None)
    if len(z.leading_word(T)) == 1:
        g = z.leading_word(T)[0]
        kept = [k for k in range(A.ngens) if k != g]
        new_index = {k: i for i, k in enumerate(kept)}
        lc = z.coefficient((g,))
        images = []
        for k in range(A.ngens):
            if k == g:
                expr = NcPolynomial(F, {(new_index[w[0]],): -c / lc for w, c in z.terms.items() if w != (g,)})
                images.append(expr)
            else:
                images.append(NcPolynomial.gen(F, new_index[k]))
        table = GeneratorTable(tuple(T.names[k] for k in kept), tuple(T.degrees[k] for k in kept))
        rels = [apply_linear(r, images) for r in A.relations]
        rels = minimize_relations(table, F, [r for r in rels if not r.is_zero()])
        B = GradedAlgebra(table, F, rels, A.degree_bound, name=label)
        return Quotient(A, B, z, kept, images)
    rels = minimize_relations(T, F, list(A.relations) + [z])
    B = GradedAlgebra(T, F, rels, A.degree_bound, name=label)
    return Quotient(A, B, z, list(range(A.ngens)), [NcPolynomial.gen(F, i) for i in range(A.ngens)])


def nakayama_of_quotient(q: Quotient, mu_A: GradedAutomorphism, tau: GradedAutomorphism) -> GradedAutomorphism:
    """Candidate ``(mu_A o tau)|`` on ``A/(z)``; ``z`` must be a ``mu_A``-eigenvector."""
    if eigenvalue_of(mu_A, q.element) is None:
        raise NotEigenvector("z is not an eigenvector of mu_A")
    return q.restrict(mu_A.compose(tau))


def lift_nakayama(q: Quotient, mu_B: GradedAutomorphism, tau: GradedAutomorphism) -> GradedAutomorphism:
    """Solve ``mu_B = (mu_A o tau)|`` for ``mu_A`` on generators: ``mu_A = mu_B o tau^-1``.

    Only meaningful when the quotient keeps every generator.
    """
    A = q.parent
    if len(q.kept) != A.ngens:
        raise ValueError("lifting needs a quotient that keeps all generators")
    M = linalg.matmul(mu_B.matrix, linalg.inverse(tau.matrix, A.field))
    return GradedAutomorphism(A, M)


# ---------- smash products ----------

def _key(sigma: GradedAutomorphism):
    return tuple(tuple(c.value for c in row) for row in sigma.matrix)


SmashElement = dict  # (word, group index) -> Scalar


class SmashAlgebra:
    """``A # kG`` for a finite group ``G`` of graded automorphisms of ``A``.

    Elements are dicts mapping ``(normal word, group index)`` to scalars;
    index 0 is the identity of ``G``.
    """

    def __init__(self, base: GradedAlgebra, generators: Sequence[GradedAutomorphism], cap: int = 64,
                 seed: int = DEFAULT_SEED, samples: int = 200, check_degree: int | None = None):
        self.base = base
        self.field = base.field
        self.seed = seed
        elems = [base.identity()]
        index = {_key(elems[0]): 0}
        gens = [g if g.algebra is base else g.on(base) for g in generators]
        frontier = [0]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    h = elems[a].compose(g)
                    k = _key(h)
                    if k not in index:
                        if len(elems) >= cap:
                            raise GroupClosureExceeded(f"group closure exceeds {cap} elements")
                        index[k] = len(elems)
                        elems.append(h)
                        nxt.append(index[k])
            frontier = nxt
        self.group = elems
        self._index = index
        m = len(elems)
        self.table = [[index[_key(elems[i].compose(elems[j]))] for j in range(m)] for i in range(m)]
        self.inverse = [next(j for j in range(m) if self.table[i][j] == 0) for i in range(m)]
        self._act: dict = {}
        self._prod: dict = {}
        self.associativity_failures = self.check_associativity(samples, check_degree)
        if self.associativity_failures:
            raise NotMultiplicative("smash multiplication is not associative", pair=self.associativity_failures[0])

    def __repr__(self):
        return f"<SmashAlgebra {self.base!r} # kG, |G|={len(self.group)}>"

    @property
    def order(self) -> int:
        return len(self.group)

    def index_of(self, sigma: GradedAutomorphism) -> int:
        return self._index[_key(sigma)]

    # elements
    def element(self, a: NcPolynomial, g: int = 0) -> SmashElement:
        out = {}
        for w, c in self.base.nf(a).terms.items():
            out[(w, g)] = c
        return out

    def group_element(self, g: int) -> SmashElement:
        return {((), g): self.field.one}

    def one(self) -> SmashElement:
        return self.group_element(0)

    def basis(self, degree: int) -> list[tuple[Word, int]]:
        return [(w, g) for w in self.base.basis(degree) for g in range(self.order)]

    def _acts(self, g: int, v: Word) -> dict:
        k = (g, v)
        if k not in self._act:
            self._act[k] = self.group[g](NcPolynomial.monomial(self.field, v)).terms
        return self._act[k]

    def _word_product(self, u: Word, v: Word) -> dict:
        k = (u, v)
        if k not in self._prod:
            self._prod[k] = self.base.nf(NcPolynomial.monomial(self.field, u + v)).terms
        return self._prod[k]

    def mul(self, a: SmashElement, b: SmashElement) -> SmashElement:
        """``(a # g)(b # h) = a g(b) # gh``."""
        out: dict = {}
        for (u, g), c in a.items():
            for (v, h), d in b.items():
                gh = self.table[g][h]
                for v2, e in self._acts(g, v).items():
                    for w, f in self._word_product(u, v2).items():
                        key = (w, gh)
                        s = c * d * e * f
                        out[key] = out[key] + s if key in out else s
        return {k: c for k, c in out.items() if c}

    def add(self, a: SmashElement, b: SmashElement, scale=1) -> SmashElement:
        out = dict(a)
        for k, c in b.items():
            s = out.get(k)
            out[k] = c * scale if s is None else s + c * scale
        return {k: c for k, c in out.items() if c}

    def format(self, a: SmashElement) -> str:
        if not a:
            return "0"
        parts = []
        T = self.base.table
        for (w, g), c in sorted(a.items(), key=lambda kv: (T.key(kv[0][0]), kv[0][1])):
            parts.append(f"({c})*{T.format_word(w)}#g{g}")
        return " + ".join(parts)

    # checks
    def sample_triples(self, n: int, samples: int, rng: random.Random):
        triples = []
        for i in range(n + 1):
            for j in range(n - i + 1):
                k = n - i - j
                bi, bj, bk = self.base.basis(i), self.base.basis(j), self.base.basis(k)
                if bi and bj and bk:
                    triples.append((i, j, k))
        out = []
        if not triples:
            return out
        m = self.order
        for _ in range(samples):
            i, j, k = triples[rng.randrange(len(triples))]
            pick = []
            for deg in (i, j, k):
                words = self.base.basis(deg)
                pick.append((words[rng.randrange(len(words))], rng.randrange(m)))
            out.append(tuple(pick))
        return out

    def check_associativity(self, samples: int = 200, degree: int | None = None) -> list:
        rng = random.Random(self.seed)
        D = self.base.degree_bound if degree is None else degree
        bad = []
        F = self.field
        for n in range(D + 1):
            for a, b, c in self.sample_triples(n, samples, rng):
                ea, eb, ec = ({a: F.one}, {b: F.one}, {c: F.one})
                if self.mul(self.mul(ea, eb), ec) != self.mul(ea, self.mul(eb, ec)):
                    bad.append((a, b, c))
        return bad


def smash_product(A: GradedAlgebra, generators: Sequence[GradedAutomorphism], cap: int = 64,
                  seed: int = DEFAULT_SEED, samples: int = 200, check_degree: int | None = None) -> SmashAlgebra:
    return SmashAlgebra(A, generators, cap=cap, seed=seed, samples=samples, check_degree=check_degree)


@dataclass
class SmashCandidate:
    """``a # g -> mu(a) # chi(g) phi(g)`` with ``phi`` a permutation of group indices."""

    smash: SmashAlgebra
    base_part: GradedAutomorphism
    chi: list[Scalar]
    phi: list[int]
    checked_pairs: int = 0

    def __call__(self, x: SmashElement) -> SmashElement:
        B = self.smash
        out: dict = {}
        for (w, g), c in x.items():
            img = self.base_part(NcPolynomial.monomial(B.field, w))
            for v, d in img.terms.items():
                key = (v, self.phi[g])
                s = c * d * self.chi[g]
                out[key] = out[key] + s if key in out else s
        return {k: c for k, c in out.items() if c}

    def is_identity(self) -> bool:
        return self.base_part.is_identity and all(c == 1 for c in self.chi) and self.phi == list(
            range(len(self.phi))
        )


def hi1_candidate(B: SmashAlgebra, mu_A: GradedAutomorphism, hdet_values, samples: int = 200,
                  degree: int | None = None) -> SmashCandidate:
    """``rho(a # g) = mu_A(a) # hdet(g) g``, checked multiplicative.

    ``hdet_values`` is a list indexed like ``B.group`` or a callable on
    automorphisms.
    """
    F = B.field
    m = B.order
    chi = [hdet_values(g) for g in B.group] if callable(hdet_values) else list(hdet_values)
    chi = [F(c) for c in chi]
    for i in range(m):
        for j in range(m):
            if chi[B.table[i][j]] != chi[i] * chi[j]:
                raise NotMultiplicative("hdet values are not a character of G", pair=(f"g{i}", f"g{j}"))
    mu = mu_A if mu_A.algebra is B.base else mu_A.on(B.base)
    rho = SmashCandidate(B, mu, chi, list(range(m)))
    gens = [B.element(B.base.gen(i)) for i in range(B.base.ngens)] + [B.group_element(g) for g in range(m)]
    labels = list(B.base.table.names) + [f"g{g}" for g in range(m)]
    pairs = [(a, b, la, lb) for a, la in zip(gens, labels) for b, lb in zip(gens, labels)]
    rng = random.Random(B.seed + 1)
    D = B.base.degree_bound if degree is None else degree
    for n in range(D + 1):
        for i in range(n + 1):
            left, right = B.basis(i), B.basis(n - i)
            if not left or not right:
                continue
            for _ in range(max(1, samples // (n + 1))):
                a, b = left[rng.randrange(len(left))], right[rng.randrange(len(right))]
                pairs.append(({a: F.one}, {b: F.one}, _label(B, a), _label(B, b)))
    for a, b, la, lb in pairs:
        rho.checked_pairs += 1
        if rho(B.mul(a, b)) != B.mul(rho(a), rho(b)):
            raise NotMultiplicative(f"rho(ab) != rho(a)rho(b) for a = {la}, b = {lb}", pair=(la, lb))
    return rho


def _label(B: SmashAlgebra, basis_elt) -> str:
    w, g = basis_elt
    return f"{B.base.table.format_word(w)}#g{g}"


@dataclass
class InnerWitness:
    unit: SmashElement | None
    solution_dimension: int
    coefficients: list[Scalar] | None = None

    @property
    def found(self) -> bool:
        return self.unit is not None


def _kg_left_matrix(B: SmashAlgebra, coeffs):
    m = B.order
    F = B.field
    M = linalg.zeros(F, m, m)
    for h in range(m):
        for g, c in enumerate(coeffs):
            if c:
                M[B.table[g][h]][h] = M[B.table[g][h]][h] + c
    return M


def inner_witness(B: SmashAlgebra, rho: SmashCandidate, tries: int = 32) -> InnerWitness:
    """Search ``u`` in ``B_0 = kG`` invertible with ``rho(b) u = u b`` on generators."""
    F = B.field
    m = B.order
    tests = [B.element(B.base.gen(i)) for i in range(B.base.ngens)] + [B.group_element(g) for g in range(m)]
    columns = []
    for g in range(m):
        u = B.group_element(g)
        col = {}
        for t, b in enumerate(tests):
            diff = B.add(B.mul(rho(b), u), B.mul(u, b), scale=-1)
            for k, c in diff.items():
                col[(t, k)] = c
        columns.append(col)
    keys = sorted(set().union(*columns), key=lambda k: (k[0], B.base.table.key(k[1][0]), k[1][1]))
    system = [[col.get(k, F.zero) for col in columns] for k in keys]
    basis = linalg.nullspace(system, F, m) if keys else linalg.identity(F, m)
    candidates = list(basis)
    rng = random.Random(B.seed + 2)
    for _ in range(tries if len(basis) > 1 else 0):
        v = [F.zero] * m
        for b in basis:
            c = F.random_element(rng, nonzero=True, size=5)
            v = [x + c * y for x, y in zip(v, b)]
        candidates.append(v)
    for v in candidates:
        if any(v) and linalg.det(_kg_left_matrix(B, v), F):
            unit = {((), g): c for g, c in enumerate(v) if c}
            return InnerWitness(unit, len(basis), v)
    return InnerWitness(None, len(basis))


def check_witness(B: SmashAlgebra, rho: SmashCandidate, u: SmashElement, degree: int | None = None) -> list:
    """Basis elements ``b`` (to ``degree``) with ``rho(b) u != u b``."""
    D = B.base.degree_bound if degree is None else degree
    bad = []
    for n in range(D + 1):
        for b in B.basis(n):
            e = {b: B.field.one}
            if B.mul(rho(e), u) != B.mul(u, e):
                bad.append(b)
    return bad


# ---------- rectifying a diagonal Nakayama automorphism ----------

@dataclass
class Rectification:
    algebra: GradedAlgebra
    sigma: GradedAutomorphism
    twist: GradedAlgebra
    nakayama: GradedAutomorphism
    scalar: Scalar | None
    provenance: str
    notes: list[str] = dc_field(default_factory=list)


def rectify_diagonal(A: GradedAlgebra, mu: GradedAutomorphism, ell: int) -> Rectification:
    """Twist ``A`` (Z-graded by total degree) so that its Nakayama automorphism is ``xi_c``.

    Solves ``delta_i^-ell = a_i`` for the eigenvalues ``a_i`` of ``mu``,
    enlarging the cyclotomic field when needed, and twists by
    ``sigma = diag(delta)``.
    """
    from .identities import hi2_rhs
    from .koszul import koszul_available, nakayama_koszul

    if ell == 0:
        raise ZeroASIndex("the AS index must be nonzero")
    if not mu.is_diagonal:
        raise ValueError("rectify_diagonal needs a diagonal Nakayama automorphism")
    deltas = []
    fields = [A.field]
    for a in mu.diagonal:
        d, Fd = root_of_unity_solve(a, -ell)
        deltas.append(d)
        fields.append(Fd)
    F = common_field(fields)
    Z = A.with_total_grading().base_change(F)
    deltas = [embed(d, F) for d in deltas]
    n = Z.ngens
    S = [[deltas[i] if i == j else F.zero for j in range(n)] for i in range(n)]
    sigma = GradedAutomorphism(Z, S)
    tw = graded_twist(Z, [sigma])
    if koszul_available(tw):
        nak, prov = nakayama_koszul(tw), "computed-koszul"
    else:
        mu_z = GradedAutomorphism(Z, [[embed(c, F) for c in row] for row in mu.matrix])
        rhs, prov = hi2_rhs(Z, [sigma], mu_z, (ell,))
        nak = rhs.on(tw)
    params = xi_parameters(nak)
    notes = []
    if params is None:
        notes.append("twisted Nakayama automorphism is not of the form xi_c")
    return Rectification(Z, sigma, tw, nak, params[0] if params else None, prov, notes)
