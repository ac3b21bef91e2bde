"""Finitely presented graded algebras and their graded automorphisms."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from . import linalg
from .errors import (
    AlgebraMismatch,
    DegreeNotPreserved,
    NotAnAutomorphism,
    SingularMatrix,
    ZeroScalar,
)
from .free import GeneratorTable, NcPolynomial, Word, apply_linear, images_from_matrix
from .rewriting import RewriteSystem
from .scalars import Field, Rationals, Scalar, embed, root_of_unity_order

DEFAULT_DEGREE_BOUND = 8
DEFAULT_ORDER_CAP = 10_000


@dataclass
class KnownData:
    """Facts about an algebra that cannot be recomputed by the Koszul route.

    Every entry carries a provenance string in ``provenance`` keyed by the
    attribute name.
    """

    nakayama: list[list[Scalar]] | None = None
    as_index: tuple[int, ...] | None = None
    hdet_rule: str | None = None
    twist_nakayama: list[tuple[list, list]] = dc_field(default_factory=list)
    provenance: dict[str, str] = dc_field(default_factory=dict)

    def is_empty(self) -> bool:
        return self.nakayama is None and self.as_index is None and self.hdet_rule is None


class GradedAlgebra:
    """``F / (relations)`` for a free algebra ``F`` on graded generators.

    The rewrite system is completed to ``degree_bound`` at construction, so
    normal forms, bases and Hilbert coefficients are exact up to that degree.
    """

    def __init__(
        self,
        table: GeneratorTable,
        field: Field,
        relations: Sequence[NcPolynomial],
        degree_bound: int = DEFAULT_DEGREE_BOUND,
        known: KnownData | None = None,
        name: str | None = None,
    ):
        self.table = table
        self.field = field
        self.relations = [r for r in relations if not r.is_zero()]
        self.degree_bound = degree_bound
        self.rewrite = RewriteSystem(table, field, self.relations, degree_bound)
        self.known = known if known is not None else KnownData()
        self.name = name
        self._cache: dict = {}

    def __repr__(self):
        label = self.name or "algebra"
        return f"<GradedAlgebra {label}: {len(self.table)} generators over {self.field}, D={self.degree_bound}>"

    # ---------- elements ----------
    @property
    def ngens(self) -> int:
        return len(self.table)

    @property
    def rank(self) -> int:
        return self.table.rank

    def gen(self, i: int | str) -> NcPolynomial:
        if isinstance(i, str):
            i = self.table.index(i)
        return NcPolynomial.gen(self.field, i)

    @property
    def gens(self) -> list[NcPolynomial]:
        return [self.gen(i) for i in range(self.ngens)]

    def one(self) -> NcPolynomial:
        return NcPolynomial.constant(self.field, 1)

    def parse(self, text: str) -> NcPolynomial:
        from .parsing import parse_expression

        return parse_expression(text, self.table, self.field)

    def nf(self, f: NcPolynomial) -> NcPolynomial:
        return self.rewrite.normal_form(f)

    def equal(self, f: NcPolynomial, g: NcPolynomial) -> bool:
        return self.nf(f - g).is_zero()

    def format(self, f: NcPolynomial) -> str:
        return f.format(self.table)

    def basis(self, degree) -> list[Word]:
        return self.rewrite.monomial_basis(degree)

    def hilbert(self) -> list[int]:
        return self.rewrite.hilbert_prefix()

    def coordinates(self, f: NcPolynomial, words: Sequence[Word]) -> list[Scalar]:
        g = self.nf(f)
        return [g.coefficient(w) for w in words]

    # ---------- presentation queries ----------
    @property
    def minimal_relations(self) -> list[NcPolynomial]:
        if "minimal" not in self._cache:
            self._cache["minimal"] = minimize_relations(self.table, self.field, self.relations)
        return self._cache["minimal"]

    @property
    def generated_in_degree_one(self) -> bool:
        return all(t == 1 for t in self.table.totals)

    @property
    def is_quadratic(self) -> bool:
        return self.generated_in_degree_one and all(
            r.total_degree(self.table) == 2 for r in self.minimal_relations
        )

    def same_ideal(self, other: GradedAlgebra, degree: int | None = None) -> bool:
        """Whether both presentations define the same ideal up to ``degree``."""
        if other.table.names != self.table.names or other.field != self.field:
            return False
        if degree is None:
            degree = min(self.degree_bound, other.degree_bound)
        for a, b in ((self, other), (other, self)):
            for g in a.rewrite.groebner:
                if g.total_degree(a.table) <= degree and not b.nf(g).is_zero():
                    return False
        return True

    # ---------- derived algebras ----------
    def rebuild(self, *, table=None, field=None, relations=None, degree_bound=None, known=None, name=None):
        return GradedAlgebra(
            table or self.table,
            field or self.field,
            self.relations if relations is None else relations,
            self.degree_bound if degree_bound is None else degree_bound,
            known=known,
            name=name if name is not None else self.name,
        )

    def with_total_grading(self) -> GradedAlgebra:
        """The same algebra regarded as Z-graded by total degree."""
        if self.rank == 1:
            return self
        table = GeneratorTable(self.table.names, tuple((t,) for t in self.table.totals))
        known = None
        if self.known.nakayama is not None or self.known.hdet_rule is not None:
            known = KnownData(
                nakayama=self.known.nakayama,
                as_index=(sum(self.known.as_index),) if self.known.as_index else None,
                hdet_rule=self.known.hdet_rule,
                provenance=dict(self.known.provenance),
            )
        return self.rebuild(table=table, known=known)

    def base_change(self, F: Field) -> GradedAlgebra:
        """Extend scalars along the canonical inclusion ``self.field -> F``."""
        if F == self.field:
            return self
        rels = [_embed_poly(r, F) for r in self.relations]
        known = None
        if not self.known.is_empty():
            known = KnownData(
                nakayama=[[embed(c, F) for c in row] for row in self.known.nakayama]
                if self.known.nakayama
                else None,
                as_index=self.known.as_index,
                hdet_rule=self.known.hdet_rule,
                provenance=dict(self.known.provenance),
            )
        return self.rebuild(field=F, relations=rels, known=known)

    # ---------- automorphisms ----------
    def automorphism(self, matrix) -> GradedAutomorphism:
        return check_automorphism(self, matrix)

    def identity(self) -> GradedAutomorphism:
        return GradedAutomorphism(self, linalg.identity(self.field, self.ngens), validate=False)

    def diagonal(self, entries: Sequence) -> GradedAutomorphism:
        F = self.field
        n = self.ngens
        M = [[F(entries[i]) if i == j else F.zero for j in range(n)] for i in range(n)]
        return check_automorphism(self, M)

    def xi(self, delta) -> GradedAutomorphism:
        return xi(self, delta)


def _embed_poly(f: NcPolynomial, F: Field) -> NcPolynomial:
    return NcPolynomial(F, {w: embed(c, F) for w, c in f.terms.items()})


def minimize_relations(table: GeneratorTable, F: Field, relations) -> list[NcPolynomial]:
    """Drop relations lying in the ideal generated by relations of lower degree.

    Relations of equal degree are reduced to a linearly independent set.
    """
    rels = sorted((r for r in relations if not r.is_zero()), key=lambda r: r.total_degree(table))
    kept: list[NcPolynomial] = []
    for r in rels:
        deg = r.total_degree(table)
        rs = RewriteSystem(table, F, kept, deg)
        if not rs.normal_form(r).is_zero():
            kept.append(r.monic(table))
    return kept


def make_algebra(gens, degrees, relations, D: int = DEFAULT_DEGREE_BOUND, field: Field | None = None, name=None):
    """Build a graded algebra from names, multidegrees and relations.

    ``degrees`` may hold integers (Z-grading) or tuples; relations may be
    polynomials or expression strings.
    """
    F = field or Rationals()
    degs = tuple((d,) if isinstance(d, int) else tuple(d) for d in degrees)
    table = GeneratorTable(tuple(gens), degs)
    rels = []
    for r in relations:
        if isinstance(r, str):
            from .parsing import parse_expression

            r = parse_expression(r, table, F)
        rels.append(r)
    return GradedAlgebra(table, F, rels, D, name=name)


@dataclass(frozen=True)
class OrderReport:
    """Order of an automorphism; ``order is None`` means infinite."""

    order: int | None
    reason: str

    @property
    def finite(self) -> bool:
        return self.order is not None

    def __str__(self):
        return str(self.order) if self.order is not None else f"infinite ({self.reason})"


class GradedAutomorphism:
    """A graded automorphism determined by a linear action on generators.

    ``matrix[i][j]`` is the coefficient of generator ``i`` in the image of
    generator ``j``; composition is matrix multiplication.
    """

    def __init__(self, algebra: GradedAlgebra, matrix, validate: bool = True):
        F = algebra.field
        n = algebra.ngens
        M = [[F(c) for c in row] for row in matrix]
        if len(M) != n or any(len(r) != n for r in M):
            raise ValueError(f"expected a {n}x{n} matrix")
        self.algebra = algebra
        self.matrix = M
        self.images = images_from_matrix(F, M)
        if validate:
            self._validate()

    def _validate(self):
        A = self.algebra
        T = A.table
        n = A.ngens
        for i in range(n):
            for j in range(n):
                if self.matrix[i][j] and T.degrees[i] != T.degrees[j]:
                    raise DegreeNotPreserved(
                        f"image of {T.names[j]} involves {T.names[i]} of a different multidegree"
                    )
        if not linalg.det(self.matrix, A.field):
            raise SingularMatrix("automorphism matrix is singular")
        for r in A.relations:
            if r.total_degree(T) > A.degree_bound:
                continue
            if not A.nf(self.apply(r)).is_zero():
                raise NotAnAutomorphism(
                    f"relation {r.format(T)} is not mapped into the ideal", relation=r
                )

    # ---------- action ----------
    def apply(self, f: NcPolynomial) -> NcPolynomial:
        """Image in the free algebra (not reduced)."""
        return apply_linear(f, self.images)

    def __call__(self, f: NcPolynomial) -> NcPolynomial:
        return self.algebra.nf(self.apply(f))

    # ---------- group structure ----------
    def _same(self, other: GradedAutomorphism):
        a, b = self.algebra, other.algebra
        if a is not b and (a.table != b.table or a.field != b.field):
            raise AlgebraMismatch("automorphisms of different algebras")

    def compose(self, other: GradedAutomorphism) -> GradedAutomorphism:
        """``self o other``."""
        self._same(other)
        return GradedAutomorphism(self.algebra, linalg.matmul(self.matrix, other.matrix), validate=False)

    __mul__ = compose

    def inverse(self) -> GradedAutomorphism:
        return GradedAutomorphism(
            self.algebra, linalg.inverse(self.matrix, self.algebra.field), validate=False
        )

    def __pow__(self, k: int) -> GradedAutomorphism:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = self.algebra.identity()
        while k:
            if k & 1:
                out = out.compose(base)
            base = base.compose(base)
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, GradedAutomorphism):
            return NotImplemented
        return linalg.mat_equal(self.matrix, other.matrix)

    __hash__ = None  # type: ignore[assignment]

    def commutes_with(self, other: GradedAutomorphism) -> bool:
        return self.compose(other) == other.compose(self)

    def on(self, algebra: GradedAlgebra) -> GradedAutomorphism:
        """The same generator action, validated on another algebra."""
        if algebra.table.names != self.algebra.table.names:
            raise AlgebraMismatch("generator names differ")
        return GradedAutomorphism(algebra, self.matrix)

    @property
    def is_identity(self) -> bool:
        return self == self.algebra.identity()

    @property
    def is_diagonal(self) -> bool:
        return all(not c for i, row in enumerate(self.matrix) for j, c in enumerate(row) if i != j)

    @property
    def diagonal(self) -> list[Scalar]:
        return [self.matrix[i][i] for i in range(len(self.matrix))]

    def det(self) -> Scalar:
        return linalg.det(self.matrix, self.algebra.field)

    def order(self, cap: int = DEFAULT_ORDER_CAP) -> OrderReport:
        F = self.algebra.field
        if F.characteristic == 0:
            if root_of_unity_order(self.det()) is None:
                return OrderReport(None, "eigenvalue that is not a root of unity")
            if self.is_diagonal and any(root_of_unity_order(c) is None for c in self.diagonal):
                return OrderReport(None, "eigenvalue that is not a root of unity")
        power = self
        for k in range(1, cap + 1):
            if power.is_identity:
                return OrderReport(k, "exact")
            power = power.compose(self)
        return OrderReport(None, f"iteration cap {cap} reached")

    def format(self) -> str:
        A = self.algebra
        return ", ".join(
            f"{A.table.names[j]} -> {self.images[j].format(A.table)}" for j in range(A.ngens)
        )

    def __repr__(self):
        return f"<GradedAutomorphism {self.format()}>"

    def to_json(self) -> dict:
        A = self.algebra
        return {
            "images": {A.table.names[j]: self.images[j].format(A.table) for j in range(A.ngens)},
            "matrix": linalg.format_matrix(self.matrix),
        }


def check_automorphism(A: GradedAlgebra, M) -> GradedAutomorphism:
    """Validate ``M`` as a graded automorphism of ``A``.

    Raises :class:`NotAnAutomorphism` naming the first relation whose image
    leaves the ideal, :class:`SingularMatrix` or :class:`DegreeNotPreserved`.
    """
    if isinstance(M, GradedAutomorphism):
        M = M.matrix
    return GradedAutomorphism(A, M)


def xi(A: GradedAlgebra, delta) -> GradedAutomorphism:
    """The automorphism scaling each homogeneous element a by delta^|a|."""
    F = A.field
    if not isinstance(delta, (list, tuple)):
        delta = (delta,) * A.rank
    delta = [F(d) for d in delta]
    if len(delta) != A.rank:
        raise ValueError(f"xi needs {A.rank} scalars")
    if any(not d for d in delta):
        raise ZeroScalar("xi needs nonzero scalars")
    entries = []
    for deg in A.table.degrees:
        c = F.one
        for d, e in zip(delta, deg):
            c = c * d ** e
        entries.append(c)
    n = A.ngens
    M = [[entries[i] if i == j else F.zero for j in range(n)] for i in range(n)]
    return GradedAutomorphism(A, M, validate=False)


def xi_parameters(sigma: GradedAutomorphism) -> list[Scalar] | None:
    """Recover delta with ``sigma == xi(delta)``, or ``None`` if impossible.

    Each grading coordinate needs a generator whose multidegree is the
    corresponding unit vector.
    """
    A = sigma.algebra
    if not sigma.is_diagonal:
        return None
    w = A.rank
    delta: list[Scalar | None] = [None] * w
    for i, deg in enumerate(A.table.degrees):
        if sum(deg) == 1 and all(v >= 0 for v in deg):
            s = deg.index(1)
            if delta[s] is None:
                delta[s] = sigma.matrix[i][i]
    if any(d is None for d in delta):
        return None
    if xi(A, delta) != sigma:
        return None
    return delta  # type: ignore[return-value]
