"""Free algebras on graded generators: words, deglex order, polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, Union

from .errors import DegreeNotPreserved, FieldMismatch, ZeroDegreeGenerator
from .scalars import Field, Scalar

Word = tuple[int, ...]


@dataclass(frozen=True)
class GeneratorTable:
    """Ordered generator names with multidegrees in Z^w.

    The declaration order is the tie-break of the deglex order: generator 0
    is the smallest letter.
    """

    names: tuple[str, ...]
    degrees: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.names) != len(self.degrees):
            raise ValueError("one multidegree per generator is required")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate generator names in {self.names}")
        ranks = {len(d) for d in self.degrees}
        if len(ranks) > 1:
            raise ValueError("all multidegrees must have the same length")
        for name, d in zip(self.names, self.degrees):
            if sum(d) < 1:
                raise ZeroDegreeGenerator(f"generator {name} has total degree {sum(d)} < 1")

    @classmethod
    def standard(cls, names: Sequence[str], w: int = 1) -> GeneratorTable:
        return cls(tuple(names), tuple((1,) + (0,) * (w - 1) for _ in names))

    def __len__(self):
        return len(self.names)

    @property
    def rank(self) -> int:
        return len(self.degrees[0]) if self.degrees else 1

    @property
    def totals(self) -> tuple[int, ...]:
        return tuple(sum(d) for d in self.degrees)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def word_degree(self, word: Word) -> tuple[int, ...]:
        out = [0] * self.rank
        for i in word:
            for s, v in enumerate(self.degrees[i]):
                out[s] += v
        return tuple(out)

    def word_total(self, word: Word) -> int:
        t = self.totals
        return sum(t[i] for i in word)

    def key(self, word: Word):
        return (self.word_total(word), word)

    def compare(self, u: Word, v: Word) -> int:
        """Deglex comparison: -1, 0 or 1."""
        ku, kv = self.key(u), self.key(v)
        return (ku > kv) - (ku < kv)

    def format_word(self, word: Word) -> str:
        if not word:
            return "1"
        parts = []
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            name = self.names[word[i]]
            parts.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return "*".join(parts)

    def words_of_total(self, n: int) -> list[Word]:
        """All words of total degree n, deglex ascending."""
        t = self.totals
        out: list[Word] = []

        def rec(prefix, remaining):
            if remaining == 0:
                out.append(tuple(prefix))
                return
            for i, ti in enumerate(t):
                if ti <= remaining:
                    prefix.append(i)
                    rec(prefix, remaining - ti)
                    prefix.pop()

        rec([], n)
        return sorted(out)


class NcPolynomial:
    """Element of the free algebra with exact coefficients.

    Terms map words (tuples of generator indices) to nonzero scalars.
    """

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms: dict[Word, Scalar] | None = None):
        self.field = field
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls, field: Field) -> NcPolynomial:
        return cls(field)

    @classmethod
    def constant(cls, field: Field, c) -> NcPolynomial:
        return cls(field, {(): field(c)})

    @classmethod
    def monomial(cls, field: Field, word: Iterable[int], c=1) -> NcPolynomial:
        return cls(field, {tuple(word): field(c)})

    @classmethod
    def gen(cls, field: Field, i: int) -> NcPolynomial:
        return cls(field, {(i,): field.one})

    def copy(self) -> NcPolynomial:
        p = NcPolynomial(self.field)
        p.terms = dict(self.terms)
        return p

    def _check(self, other: NcPolynomial):
        if other.field != self.field:
            raise FieldMismatch(f"polynomials over {self.field} and {other.field}")

    def _lift(self, other) -> NcPolynomial | None:
        if isinstance(other, NcPolynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Scalar)) or hasattr(other, "numerator"):
            return NcPolynomial.constant(self.field, other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for w, c in o.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        p = NcPolynomial(self.field)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = NcPolynomial(self.field)
        p.terms = {w: -c for w, c in self.terms.items()}
        return p

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c) -> NcPolynomial:
        c = self.field(c)
        if not c:
            return NcPolynomial(self.field)
        p = NcPolynomial(self.field)
        p.terms = {w: c * v for w, v in self.terms.items()}
        return p

    def __mul__(self, other):
        if isinstance(other, NcPolynomial):
            self._check(other)
            out: dict[Word, Scalar] = {}
            for u, a in self.terms.items():
                for v, b in other.terms.items():
                    w = u + v
                    s = out.get(w)
                    s = a * b if s is None else s + a * b
                    out[w] = s
            return NcPolynomial(self.field, out)
        if isinstance(other, (int, Scalar)) or hasattr(other, "numerator"):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Scalar)) or hasattr(other, "numerator"):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined in the free algebra")
        out = NcPolynomial.constant(self.field, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, NcPolynomial):
            return self.field == other.field and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, word: Word) -> Scalar:
        return self.terms.get(tuple(word), self.field.zero)

    def words(self, table: GeneratorTable | None = None) -> list[Word]:
        """Words of the support, deglex descending."""
        if table is None:
            return sorted(self.terms, key=lambda w: (len(w), w), reverse=True)
        return sorted(self.terms, key=table.key, reverse=True)

    def leading_word(self, table: GeneratorTable) -> Word:
        return max(self.terms, key=table.key)

    def leading_coefficient(self, table: GeneratorTable) -> Scalar:
        return self.terms[self.leading_word(table)]

    def monic(self, table: GeneratorTable) -> NcPolynomial:
        return self.scale(self.leading_coefficient(table).inverse())

    def multidegrees(self, table: GeneratorTable) -> set[tuple[int, ...]]:
        return {table.word_degree(w) for w in self.terms}

    def is_homogeneous(self, table: GeneratorTable) -> bool:
        return len(self.multidegrees(table)) <= 1

    def multidegree(self, table: GeneratorTable) -> tuple[int, ...]:
        degs = self.multidegrees(table)
        if len(degs) != 1:
            raise ValueError("polynomial is not homogeneous (or is zero)")
        return degs.pop()

    def total_degree(self, table: GeneratorTable) -> int:
        return max((table.word_total(w) for w in self.terms), default=0)

    def format(self, table: GeneratorTable) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for w in self.words(table):
            c = self.terms[w]
            cs = str(c)
            mono = table.format_word(w)
            compound = " + " in cs or " - " in cs
            if not w:
                body, neg = cs, False
                if cs.startswith("-") and not compound:
                    body, neg = cs[1:], True
                elif compound:
                    body = f"({cs})"
            elif c == 1:
                body, neg = mono, False
            elif c == -1:
                body, neg = mono, True
            elif compound:
                body, neg = f"({cs})*{mono}", False
            elif cs.startswith("-"):
                body, neg = f"{cs[1:]}*{mono}", True
            else:
                body, neg = f"{cs}*{mono}", False
            pieces.append((neg, body))
        neg, body = pieces[0]
        out = ("-" if neg else "") + body
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        inner = ", ".join(f"{w}: {c}" for w, c in sorted(self.terms.items()))
        return f"NcPolynomial({{{inner}}})"


# A linear action on generators: images[i] is the image of generator i.
Images = Sequence[NcPolynomial]
SlotAction = Union[Images, Callable[[Word], Sequence[Images]]]


def apply_linear(f: NcPolynomial, action: SlotAction, table: GeneratorTable | None = None) -> NcPolynomial:
    """Replace each letter of each word by its slot image and expand.

    ``action`` is either a single list of generator images, used in every
    slot, or a callable returning the list of images to use for each slot
    of a given word. If ``table`` is given, images must preserve the
    multidegree of the generator they replace.
    """
    F = f.field
    out: dict[Word, Scalar] = {}
    for word, coeff in f.terms.items():
        slots = action(word) if callable(action) else [action] * len(word)
        acc: dict[Word, Scalar] = {(): coeff}
        for pos, letter in enumerate(word):
            img = slots[pos][letter]
            if table is not None:
                for w in img.terms:
                    if table.word_degree(w) != table.degrees[letter]:
                        raise DegreeNotPreserved(
                            f"image of {table.names[letter]} leaves its multidegree component"
                        )
            nxt: dict[Word, Scalar] = {}
            for u, a in acc.items():
                for v, b in img.terms.items():
                    w = u + v
                    s = nxt.get(w)
                    nxt[w] = a * b if s is None else s + a * b
            acc = {w: c for w, c in nxt.items() if c}
        for w, c in acc.items():
            s = out.get(w)
            out[w] = c if s is None else s + c
    return NcPolynomial(F, out)


def images_from_matrix(F: Field, M) -> list[NcPolynomial]:
    """Generator images of a matrix whose column j is the image of x_j."""
    n = len(M)
    return [NcPolynomial(F, {(i,): M[i][j] for i in range(n)}) for j in range(n)]
