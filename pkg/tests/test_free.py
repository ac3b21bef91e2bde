from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, strategies as st

from skewcy.errors import DegreeNotPreserved, ZeroDegreeGenerator
from skewcy.free import GeneratorTable, NcPolynomial, apply_linear
from skewcy.scalars import Rationals

Q = Rationals()
T2 = GeneratorTable.standard(["x", "y"])
T3 = GeneratorTable(("a", "b", "c"), ((1,), (2,), (1,)))


def all_words(table, max_total):
    out = []
    for n in range(max_total + 1):
        out += table.words_of_total(n)
    return out


@pytest.mark.parametrize("table", [T2, T3], ids=["xy", "weighted"])
def test_deglex_is_a_monomial_order_to_degree_5(table):
    words = all_words(table, 5)
    keys = sorted(words, key=table.key)
    assert len(set(keys)) == len(words)  # total and antisymmetric
    rank = {w: i for i, w in enumerate(keys)}
    small = all_words(table, 2)
    for u, v in product(all_words(table, 3), repeat=2):
        if rank[u] < rank[v]:
            for a, b in product(small, repeat=2):
                if table.word_total(a + v + b) <= 5:
                    assert table.compare(a + u + b, a + v + b) == -1
    assert keys[0] == ()
    assert all(table.compare((), w) == -1 for w in words if w)


def test_deglex_examples():
    assert T2.compare((1,), (0, 0)) == -1  # total degree first
    assert T2.compare((0, 1), (1, 0)) == -1  # then lexicographic, x < y
    assert T3.compare((2,), (1,)) == -1  # weights count: c (1) < b (2)
    assert T3.compare((0, 2), (1,)) == -1  # equal totals fall back to lex


def test_words_of_total_counts():
    assert [len(T2.words_of_total(n)) for n in range(6)] == [1, 2, 4, 8, 16, 32]
    # a, c of weight 1 and b of weight 2: Fibonacci-like counts
    assert [len(T3.words_of_total(n)) for n in range(6)] == [1, 2, 5, 12, 29, 70]


def test_table_validation():
    with pytest.raises(ZeroDegreeGenerator):
        GeneratorTable(("x",), ((0,),))
    with pytest.raises(ValueError):
        GeneratorTable(("x", "x"), ((1,), (1,)))
    with pytest.raises(ValueError):
        GeneratorTable(("x", "y"), ((1,), (1, 0)))


terms = st.dictionaries(
    st.lists(st.integers(0, 1), max_size=3).map(tuple),
    st.integers(-4, 4),
    max_size=4,
)


def poly(d):
    return NcPolynomial(Q, {w: Q(c) for w, c in d.items()})


@given(terms, terms, terms)
def test_ring_axioms(a, b, c):
    a, b, c = poly(a), poly(b), poly(c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert a - a == 0
    assert a * NcPolynomial.constant(Q, 1) == a


def test_noncommutative_and_format():
    x, y = NcPolynomial.gen(Q, 0), NcPolynomial.gen(Q, 1)
    assert x * y != y * x
    f = x * x * y - y * x.scale(3) + 2
    assert f.format(T2) == "x^2*y - 3*y*x + 2"
    assert f.leading_word(T2) == (0, 0, 1)
    assert f.total_degree(T2) == 3
    assert not f.is_homogeneous(T2)
    assert (x * y - y * x).multidegree(T2) == (2,)
    assert (x ** 0) == NcPolynomial.constant(Q, 1)


def test_apply_linear():
    x, y = NcPolynomial.gen(Q, 0), NcPolynomial.gen(Q, 1)
    swap = [y, x]
    assert apply_linear(x * x * y, swap) == y * y * x
    per_slot = lambda w: [[x.scale(2), y], [x, y.scale(3)]][: len(w)]
    assert apply_linear(x * y, per_slot) == (x * y).scale(6)
    bigraded = GeneratorTable(("x", "y"), ((1, 0), (0, 1)))
    with pytest.raises(DegreeNotPreserved):
        apply_linear(x, [x + y, y], bigraded)
