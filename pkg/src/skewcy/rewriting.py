"""Truncated noncommutative Buchberger completion for homogeneous ideals.

Completion runs degree by degree. Because the ideal is graded, a system
completed to degree ``D`` gives exact normal forms for every element whose
terms have total degree at most ``D``, even when the full Groebner basis is
infinite.
"""

from __future__ import annotations

from collections import defaultdict

from .errors import DegreeBoundExceeded, InhomogeneousRelation
from .free import GeneratorTable, NcPolynomial, Word
from .scalars import Field, Scalar


class RewriteSystem:
    """Interreduced rewrite rules ``leading word -> tail`` complete to a degree.

    Parameters
    ----------
    table, field
        Generators and coefficient field.
    relations
        Homogeneous polynomials generating the two-sided ideal.
    degree_bound
        Total degree ``D`` up to which every overlap is resolved.
    """

    def __init__(self, table: GeneratorTable, field: Field, relations, degree_bound: int):
        self.table = table
        self.field = field
        self.complete_to = degree_bound
        self._tails: dict[Word, NcPolynomial] = {}
        self._lw_lengths: set[int] = set()
        self._memo: dict[Word, dict[Word, Scalar]] = {}
        self._memo_below = 0
        rels = []
        for r in relations:
            if r.field != field:
                raise ValueError("relation over the wrong field")
            if r.is_zero():
                continue
            if not r.is_homogeneous(table):
                raise InhomogeneousRelation(f"relation {r.format(table)} is not homogeneous")
            if r.total_degree(table) < 1:
                raise InhomogeneousRelation("a nonzero constant relation kills the algebra")
            rels.append(r)
        self._complete(rels)

    # ---------- completion ----------
    def _complete(self, relations):
        T = self.table
        D = self.complete_to
        by_degree: dict[int, list[NcPolynomial]] = defaultdict(list)
        for r in relations:
            by_degree[r.total_degree(T)].append(r)
        pending: dict[int, list[tuple[Word, Word, int]]] = defaultdict(list)
        for n in range(1, D + 1):
            self._memo_below = n
            self._memo = {w: v for w, v in self._memo.items() if T.word_total(w) < n}
            candidates = list(by_degree.get(n, []))
            for u, v, k in sorted(pending.pop(n, []), key=lambda o: (o[0] + o[1][o[2]:], o)):
                candidates.append(self._spoly(u, v, k))
            new_words = []
            for c in candidates:
                h = self._reduce(c)
                if h.is_zero():
                    continue
                h = h.monic(T)
                lw = h.leading_word(T)
                tail = NcPolynomial.monomial(self.field, lw) - h
                self._tails[lw] = tail
                self._lw_lengths.add(len(lw))
                new_words.append(lw)
                for other in list(self._tails):
                    for ov in _overlaps(lw, other):
                        deg = T.word_total(ov[0] + ov[1][ov[2]:])
                        if deg <= D:
                            pending[deg].append(ov)
                    if other != lw:
                        for ov in _overlaps(other, lw):
                            deg = T.word_total(ov[0] + ov[1][ov[2]:])
                            if deg <= D:
                                pending[deg].append(ov)
            for lw in new_words:
                self._tails[lw] = self._reduce(self._tails[lw])
        self._memo_below = D + 1

    def _rule(self, lw: Word) -> NcPolynomial:
        return NcPolynomial.monomial(self.field, lw) - self._tails[lw]

    def _spoly(self, u: Word, v: Word, k: int) -> NcPolynomial:
        F = self.field
        right = NcPolynomial.monomial(F, v[k:])
        left = NcPolynomial.monomial(F, u[: len(u) - k])
        return self._rule(u) * right - left * self._rule(v)

    # ---------- reduction ----------
    def _nf_word(self, w: Word) -> dict[Word, Scalar]:
        hit = self._memo.get(w)
        if hit is not None:
            return hit
        result = None
        n = len(w)
        for i in range(n):
            for L in self._lw_lengths:
                j = i + L
                if j <= n and w[i:j] in self._tails:
                    result = {}
                    pre, post = w[:i], w[j:]
                    for t, c in self._tails[w[i:j]].terms.items():
                        for u, d in self._nf_word(pre + t + post).items():
                            s = result.get(u)
                            result[u] = c * d if s is None else s + c * d
                    result = {u: c for u, c in result.items() if c}
                    break
            if result is not None:
                break
        if result is None:
            result = {w: self.field.one}
        if self.table.word_total(w) < self._memo_below:
            self._memo[w] = result
        return result

    def _reduce(self, f: NcPolynomial) -> NcPolynomial:
        out: dict[Word, Scalar] = {}
        for w, c in f.terms.items():
            for u, d in self._nf_word(w).items():
                s = out.get(u)
                out[u] = c * d if s is None else s + c * d
        return NcPolynomial(self.field, out)

    # ---------- public API ----------
    def normal_form(self, f: NcPolynomial) -> NcPolynomial:
        deg = max((self.table.word_total(w) for w in f.terms), default=0)
        if deg > self.complete_to:
            raise DegreeBoundExceeded(deg, self.complete_to, "normal form")
        return self._reduce(f)

    def is_normal_word(self, w: Word) -> bool:
        n = len(w)
        return not any(
            w[i : i + L] in self._tails for i in range(n) for L in self._lw_lengths if i + L <= n
        )

    @property
    def leading_words(self) -> list[Word]:
        return sorted(self._tails, key=self.table.key)

    @property
    def groebner(self) -> list[NcPolynomial]:
        """The monic interreduced rules, ascending by leading word."""
        return [self._rule(lw) for lw in self.leading_words]

    def normal_words(self, total: int) -> list[Word]:
        if total > self.complete_to:
            raise DegreeBoundExceeded(total, self.complete_to, "monomial basis")
        cache = self.__dict__.setdefault("_normal_words", {0: [()]})
        if total in cache:
            return cache[total]
        if total < 0:
            return []
        T = self.table
        out = []
        for i, ti in enumerate(T.totals):
            if ti <= total:
                for w in self.normal_words(total - ti):
                    cand = w + (i,)
                    n = len(cand)
                    if not any(cand[n - L :] in self._tails for L in self._lw_lengths if L <= n):
                        out.append(cand)
        out.sort()
        cache[total] = out
        return out

    def monomial_basis(self, degree) -> list[Word]:
        """Normal words of a total degree (int) or a multidegree (tuple)."""
        if isinstance(degree, int):
            return self.normal_words(degree)
        degree = tuple(degree)
        words = self.normal_words(sum(degree))
        return [w for w in words if self.table.word_degree(w) == degree]

    def hilbert_prefix(self) -> list[int]:
        return [len(self.normal_words(n)) for n in range(self.complete_to + 1)]

    def overlap_failures(self) -> list[tuple[Word, Word, int]]:
        """Overlaps of degree <= complete_to whose S-polynomial does not reduce to 0."""
        bad = []
        words = self.leading_words
        for u in words:
            for v in words:
                for ov in _overlaps(u, v):
                    if self.table.word_total(u + v[ov[2]:]) <= self.complete_to:
                        if not self._reduce(self._spoly(*ov)).is_zero():
                            bad.append(ov)
        return bad


def _overlaps(u: Word, v: Word):
    """Proper overlaps where a suffix of u equals a prefix of v."""
    for k in range(1, min(len(u), len(v))):
        if u[len(u) - k :] == v[:k]:
            yield (u, v, k)
