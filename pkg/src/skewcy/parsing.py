"""Expression grammar and the line-oriented presentation file format.

Expressions use ``*`` for the (noncommutative) product, ``^k`` for powers,
``+``/``-``, parentheses, integer and ``a/b`` literals, and ``z`` (or
``zeta``) for the chosen primitive root of unity of a cyclotomic field.
Precedence: ``^`` > ``*`` > unary ``-`` > binary ``+``/``-``.

A presentation file looks like::

    [field]
    cyclotomic 4
    [grading]
    1
    [generators]
    x = (1)
    y = (1)
    [relations]
    x^2*y - y*x^2
    y^2*x - x*y^2
    [automorphism sigma]
    y = z*y
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import (
    DegreeMismatch,
    FieldLiteralOutOfRange,
    PresentationSyntaxError,
    UnknownGenerator,
)
from .free import GeneratorTable, NcPolynomial
from .scalars import Cyclotomic, Field, PrimeField, Rationals

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>[-+*^()]))")


def _tokenize(text: str, line: int | None):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            col = pos + 1 + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise PresentationSyntaxError(f"unexpected character {text[col - 1]!r}", line, col)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start + 1))
        pos = m.end()
    tokens.append(("end", "", len(text) + 1))
    return tokens


class _ExprParser:
    def __init__(self, text, table: GeneratorTable, F: Field, line=None):
        self.tokens = _tokenize(text, line)
        self.i = 0
        self.table = table
        self.F = F
        self.line = line

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return PresentationSyntaxError(msg, self.line, tok[2])

    def parse(self) -> NcPolynomial:
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        out = self.sum()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return out

    def sum(self):
        acc = self.signed()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.signed()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def signed(self):
        if self.peek() == ("op", "-", self.peek()[2]):
            self.take()
            return -self.signed()
        return self.product()

    def product(self):
        acc = self.power()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            acc = acc * self.power()
        return acc

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num" or "/" in tok[1]:
                raise self.error("exponent must be a non-negative integer", tok)
            return base ** int(tok[1])
        return base

    def atom(self):
        tok = self.take()
        kind, text, col = tok
        F = self.F
        if kind == "num":
            q = Fraction(text)
            try:
                return NcPolynomial.constant(F, F(q))
            except ZeroDivisionError:
                raise FieldLiteralOutOfRange(f"literal {text} is not defined in {F}", self.line, col)
        if kind == "ident":
            if text in self.table.names:
                return NcPolynomial.gen(F, self.table.index(text))
            if text in ("z", "zeta") and isinstance(F, Cyclotomic):
                return NcPolynomial.constant(F, F.zeta())
            raise UnknownGenerator(f"unknown generator {text!r}", self.line, col)
        if kind == "op" and text == "(":
            inner = self.sum()
            close = self.take()
            if close[1] != ")":
                raise self.error("expected ')'", close)
            return inner
        raise self.error(f"unexpected {text or 'end of input'!r}", tok)


def parse_expression(text: str, table: GeneratorTable, F: Field, line: int | None = None) -> NcPolynomial:
    return _ExprParser(text, table, F, line).parse()


def parse_scalar(text: str, F: Field, line: int | None = None):
    p = parse_expression(text, GeneratorTable((), ()), F, line)
    if any(p.terms.keys() - {()}):
        raise PresentationSyntaxError(f"{text!r} is not a scalar", line)
    return p.coefficient(())


# ---------- presentation files ----------

OPTION_KEYS = ("degree", "seed")
KNOWN_KEYS = ("nakayama", "as_index", "hdet_rule", "source")
HDET_RULES = ("det", "det_squared")


@dataclass
class PresentationFile:
    field: Field
    grading: int
    generators: list[tuple[str, tuple[int, ...]]]
    relations: list[NcPolynomial] = dc_field(default_factory=list)
    automorphisms: dict[str, list[NcPolynomial]] = dc_field(default_factory=dict)
    groups: dict[str, list[str]] = dc_field(default_factory=dict)
    options: dict[str, int] = dc_field(default_factory=dict)
    known: dict[str, str] = dc_field(default_factory=dict)

    @property
    def table(self) -> GeneratorTable:
        return GeneratorTable(tuple(n for n, _ in self.generators), tuple(d for _, d in self.generators))

    @property
    def degree_bound(self) -> int:
        from .algebra import DEFAULT_DEGREE_BOUND

        return self.options.get("degree", DEFAULT_DEGREE_BOUND)

    def build(self, degree: int | None = None) -> "Presentation":
        return build_presentation(self, degree)

    def serialize(self) -> str:
        return serialize_presentation(self)


@dataclass
class Presentation:
    """A parsed file turned into validated objects."""

    source: PresentationFile
    algebra: object
    automorphisms: dict
    groups: dict[str, list[str]]

    def auto(self, name: str):
        if name in ("id", "identity"):
            return self.algebra.identity()
        if name not in self.automorphisms:
            raise UnknownGenerator(f"no automorphism named {name!r}")
        return self.automorphisms[name]


def _parse_field(body, line_no) -> Field:
    words = body.split()
    try:
        if words[0] in ("rationals", "Q", "QQ"):
            if len(words) == 1:
                return Rationals()
        elif words[0] == "prime" and len(words) == 2:
            return PrimeField(int(words[1]))
        elif words[0] == "cyclotomic" and len(words) == 2:
            return Cyclotomic(int(words[1]))
    except (ValueError, IndexError) as exc:
        raise PresentationSyntaxError(f"bad field specification: {exc}", line_no)
    raise PresentationSyntaxError(f"bad field specification {body!r}", line_no)


def _parse_tuple(text, line_no) -> tuple[int, ...]:
    t = text.strip()
    if t.startswith("(") and t.endswith(")"):
        t = t[1:-1]
    try:
        return tuple(int(p) for p in t.split(",") if p.strip())
    except ValueError:
        raise PresentationSyntaxError(f"bad degree {text!r}", line_no)


_SECTION = re.compile(r"^\[\s*(field|grading|generators|relations|options|known|automorphism\s+(\S+)|group\s+(\S+))\s*\]$")


def _split_sections(text: str):
    sections = []
    current = None
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            m = _SECTION.match(line)
            if not m:
                raise PresentationSyntaxError(f"unknown section header {line!r}", no, 1)
            head = m.group(1).split()[0]
            name = m.group(2) or m.group(3)
            current = (head, name, no, [])
            sections.append(current)
            continue
        if current is None:
            raise PresentationSyntaxError("content before the first section header", no, 1)
        current[3].append((no, line))
    return sections


def parse_presentation(text: str) -> PresentationFile:
    sections = _split_sections(text)
    by_head: dict[str, list] = {}
    for s in sections:
        by_head.setdefault(s[0], []).append(s)
    for head in ("field", "grading", "generators", "relations", "options", "known"):
        if len(by_head.get(head, [])) > 1:
            raise PresentationSyntaxError(f"duplicate [{head}] section", by_head[head][1][2])

    F: Field = Rationals()
    if "field" in by_head:
        lines = by_head["field"][0][3]
        if len(lines) != 1:
            raise PresentationSyntaxError("[field] takes one line", by_head["field"][0][2])
        F = _parse_field(lines[0][1], lines[0][0])

    w = 1
    if "grading" in by_head:
        lines = by_head["grading"][0][3]
        try:
            w = int(lines[0][1])
        except (ValueError, IndexError):
            raise PresentationSyntaxError("[grading] takes one positive integer", by_head["grading"][0][2])
        if w < 1 or len(lines) != 1:
            raise PresentationSyntaxError("[grading] takes one positive integer", lines[0][0])

    gens: list[tuple[str, tuple[int, ...]]] = []
    for no, line in by_head.get("generators", [(None, None, 0, [])])[0][3]:
        name, _, deg = (p.strip() for p in line.partition("="))
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", name):
            raise PresentationSyntaxError(f"bad generator name {name!r}", no, 1)
        if name in ("z", "zeta") and isinstance(F, Cyclotomic):
            raise PresentationSyntaxError(f"{name!r} denotes the root of unity in {F}", no, 1)
        d = _parse_tuple(deg, no) if deg else (1,) + (0,) * (w - 1)
        if len(d) != w:
            raise DegreeMismatch(f"generator {name} needs a degree of length {w}", no)
        if sum(d) < 1:
            raise DegreeMismatch(f"generator {name} has total degree < 1", no)
        if name in (g for g, _ in gens):
            raise PresentationSyntaxError(f"duplicate generator {name!r}", no, 1)
        gens.append((name, d))
    pf = PresentationFile(F, w, gens)
    table = pf.table

    for no, line in by_head.get("relations", [(None, None, 0, [])])[0][3]:
        r = parse_expression(line, table, F, no)
        if not r.is_homogeneous(table):
            raise DegreeMismatch("relation is not homogeneous", no)
        pf.relations.append(r)

    for head, name, start, lines in sections:
        if head == "automorphism":
            if name in pf.automorphisms:
                raise PresentationSyntaxError(f"duplicate automorphism {name!r}", start)
            pf.automorphisms[name] = _parse_automorphism(lines, table, F)
        elif head == "group":
            if name in pf.groups:
                raise PresentationSyntaxError(f"duplicate group {name!r}", start)
            members = []
            for no, line in lines:
                members += [m.strip() for m in line.split(",") if m.strip()]
            pf.groups[name] = members

    for no, line in by_head.get("options", [(None, None, 0, [])])[0][3]:
        key, _, value = (p.strip() for p in line.partition("="))
        if key not in OPTION_KEYS:
            raise PresentationSyntaxError(f"unknown option {key!r}", no, 1)
        try:
            pf.options[key] = int(value)
        except ValueError:
            raise PresentationSyntaxError(f"option {key} needs an integer", no)

    for no, line in by_head.get("known", [(None, None, 0, [])])[0][3]:
        key, _, value = (p.strip() for p in line.partition("="))
        if key not in KNOWN_KEYS and not key.startswith("twist_nakayama."):
            raise PresentationSyntaxError(f"unknown [known] key {key!r}", no, 1)
        if key == "hdet_rule" and value not in HDET_RULES:
            raise PresentationSyntaxError(f"hdet_rule must be one of {HDET_RULES}", no)
        pf.known[key] = value

    for gname, members in pf.groups.items():
        for m in members:
            if m not in pf.automorphisms and m not in ("id", "identity"):
                raise UnknownGenerator(f"group {gname} refers to unknown automorphism {m!r}")
    return pf


def _parse_automorphism(lines, table: GeneratorTable, F: Field) -> list[NcPolynomial]:
    images = [NcPolynomial.gen(F, i) for i in range(len(table))]
    for no, line in lines:
        lhs, eq, rhs = (p.strip() for p in line.partition("="))
        if not eq:
            raise PresentationSyntaxError("expected 'generator = expression'", no, 1)
        if lhs == "matrix":
            rows = _parse_matrix(rhs, F, no)
            n = len(table)
            if len(rows) != n or any(len(r) != n for r in rows):
                raise PresentationSyntaxError(f"matrix must be {n}x{n}", no)
            for j in range(n):
                images[j] = NcPolynomial(F, {(i,): rows[i][j] for i in range(n)})
            continue
        if lhs not in table.names:
            raise UnknownGenerator(f"unknown generator {lhs!r}", no, 1)
        j = table.index(lhs)
        img = parse_expression(rhs, table, F, no)
        for w in img.terms:
            if len(w) != 1 or table.degrees[w[0]] != table.degrees[j]:
                raise DegreeMismatch(
                    f"image of {lhs} must be linear in generators of multidegree {table.degrees[j]}", no
                )
        images[j] = img
    return images


def _parse_matrix(text, F, no):
    t = text.strip()
    if not (t.startswith("[[") and t.endswith("]]")):
        raise PresentationSyntaxError("matrix must look like [[a, b], [c, d]]", no)
    rows = []
    for chunk in t[2:-2].split("],"):
        chunk = chunk.strip().lstrip("[").rstrip("]")
        rows.append([parse_scalar(e, F, no) for e in chunk.split(",")])
    return rows


def serialize_presentation(pf: PresentationFile) -> str:
    table = pf.table
    out = ["[field]", pf.field.spec_text, "", "[grading]", str(pf.grading), "", "[generators]"]
    for name, d in pf.generators:
        out.append(f"{name} = ({', '.join(map(str, d))})")
    out += ["", "[relations]"]
    out += [r.format(table) for r in pf.relations]
    for name, images in pf.automorphisms.items():
        out += ["", f"[automorphism {name}]"]
        out += [f"{table.names[j]} = {img.format(table)}" for j, img in enumerate(images)]
    for name, members in pf.groups.items():
        out += ["", f"[group {name}]", ", ".join(members)]
    if pf.options:
        out += ["", "[options]"]
        out += [f"{k} = {v}" for k, v in pf.options.items()]
    if pf.known:
        out += ["", "[known]"]
        out += [f"{k} = {v}" for k, v in pf.known.items()]
    return "\n".join(out) + "\n"


def build_presentation(pf: PresentationFile, degree: int | None = None) -> Presentation:
    from .algebra import GradedAlgebra, GradedAutomorphism, KnownData
    from . import linalg

    F = pf.field
    table = pf.table
    D = degree if degree is not None else pf.degree_bound
    n = len(table)

    def matrix_of(images):
        return [[images[j].coefficient((i,)) for j in range(n)] for i in range(n)]

    def named_matrix(name):
        name = name.strip()
        if name in ("id", "identity"):
            return linalg.identity(F, n)
        if name not in pf.automorphisms:
            raise UnknownGenerator(f"[known] refers to unknown automorphism {name!r}")
        return matrix_of(pf.automorphisms[name])

    known = KnownData()
    source = pf.known.get("source", "registry")
    for key, value in pf.known.items():
        if key == "nakayama":
            known.nakayama = named_matrix(value)
        elif key == "as_index":
            known.as_index = _parse_tuple(value, None)
        elif key == "hdet_rule":
            known.hdet_rule = value
        elif key.startswith("twist_nakayama."):
            family = [named_matrix(m) for m in key.split(".", 1)[1].split(",")]
            known.twist_nakayama.append((family, named_matrix(value)))
        if key != "source":
            known.provenance[key] = source
    A = GradedAlgebra(table, F, pf.relations, D, known=known)
    autos = {name: GradedAutomorphism(A, matrix_of(images)) for name, images in pf.automorphisms.items()}
    return Presentation(pf, A, autos, dict(pf.groups))


def load_presentation(path: str, degree: int | None = None) -> Presentation:
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read()).build(degree)


def presentation_of(A, automorphisms: dict | None = None, groups: dict | None = None) -> PresentationFile:
    """A presentation file describing ``A`` (minimal relations) and named automorphisms."""
    table = A.table
    pf = PresentationFile(
        A.field,
        table.rank,
        list(zip(table.names, table.degrees)),
        list(A.minimal_relations),
    )
    for name, sigma in (automorphisms or {}).items():
        pf.automorphisms[name] = list(sigma.images)
    for name, members in (groups or {}).items():
        pf.groups[name] = list(members)
    if A.degree_bound != 8:
        pf.options["degree"] = A.degree_bound
    return pf
