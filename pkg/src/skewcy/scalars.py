"""Exact scalars over Q, prime fields GF(p) and cyclotomic fields Q(z_n).

Every field element is a :class:`Scalar` carrying its field. Representations
are canonical, so two scalars are equal exactly when their stored values
are identical. Cyclotomic elements live in the power basis of
``Q[x]/(Phi_n(x))``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import FieldMismatch, NotRepresentable, ZeroInput


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        den = cyclotomic_polynomial(d)
        # exact division by a monic integer polynomial
        quot = [0] * (len(num) - len(den) + 1)
        rem = list(num)
        for k in range(len(quot) - 1, -1, -1):
            c = rem[k + len(den) - 1]
            quot[k] = c
            if c:
                for i, b in enumerate(den):
                    rem[k + i] -= c * b
        assert not any(rem), "cyclotomic division left a remainder"
        num = quot
    return tuple(num)


class Field:
    """Common behaviour of the three supported fields."""

    characteristic: int = 0

    def __call__(self, x) -> Scalar:
        if isinstance(x, Scalar):
            if x.field == self:
                return x
            if isinstance(x.field, Rationals):
                return self(x.value)
            raise FieldMismatch(f"cannot coerce element of {x.field} into {self}")
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return Scalar(self, self._from_int(x))
        if isinstance(x, Fraction):
            return Scalar(self, self._from_fraction(x))
        raise TypeError(f"cannot convert {x!r} to a scalar")

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def _from_fraction(self, q: Fraction):
        return self._mul(self._from_int(q.numerator), self._inv(self._from_int(q.denominator)))

    def random_element(self, rng: random.Random, nonzero: bool = False, size: int = 9) -> Scalar:
        while True:
            s = self._random(rng, size)
            if not (nonzero and not s):
                return s

    def _random(self, rng, size):
        return self(Fraction(rng.randint(-size, size), rng.randint(1, size)))


@dataclass(frozen=True)
class Rationals(Field):
    def __str__(self):
        return "Q"

    @property
    def spec_text(self) -> str:
        return "rationals"

    def _from_int(self, n):
        return Fraction(n)

    def _from_fraction(self, q):
        return q

    _add = staticmethod(lambda a, b: a + b)
    _sub = staticmethod(lambda a, b: a - b)
    _mul = staticmethod(lambda a, b: a * b)
    _neg = staticmethod(lambda a: -a)
    _is_zero = staticmethod(lambda a: a == 0)

    @staticmethod
    def _inv(a):
        return 1 / a

    @staticmethod
    def _format(a: Fraction) -> str:
        return str(a)


@dataclass(frozen=True)
class PrimeField(Field):
    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def characteristic(self) -> int:  # type: ignore[override]
        return self.p

    def __str__(self):
        return f"GF({self.p})"

    @property
    def spec_text(self) -> str:
        return f"prime {self.p}"

    def _from_int(self, n):
        return n % self.p

    def _from_fraction(self, q):
        if q.denominator % self.p == 0:
            raise ZeroDivisionError(f"denominator of {q} vanishes in GF({self.p})")
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    def _add(self, a, b):
        return (a + b) % self.p

    def _sub(self, a, b):
        return (a - b) % self.p

    def _mul(self, a, b):
        return a * b % self.p

    def _neg(self, a):
        return -a % self.p

    def _inv(self, a):
        return pow(a, -1, self.p)

    _is_zero = staticmethod(lambda a: a == 0)
    _format = staticmethod(str)

    def _random(self, rng, size):
        return Scalar(self, rng.randrange(self.p))


@dataclass(frozen=True)
class Cyclotomic(Field):
    """Q(z_n) with z a primitive n-th root of unity."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("cyclotomic order must be positive")

    def __str__(self):
        return f"Q(z_{self.n})"

    @property
    def spec_text(self) -> str:
        return f"cyclotomic {self.n}"

    @property
    def degree(self) -> int:
        return len(cyclotomic_polynomial(self.n)) - 1

    def zeta(self, k: int = 1) -> Scalar:
        return Scalar(self, _zeta_powers(self.n)[k % self.n])

    def _from_int(self, n):
        return (Fraction(n),) + (Fraction(0),) * (self.degree - 1)

    def _from_fraction(self, q):
        return (q,) + (Fraction(0),) * (self.degree - 1)

    def _add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def _neg(self, a):
        return tuple(-x for x in a)

    _is_zero = staticmethod(lambda a: not any(a))

    def _mul(self, a, b):
        phi = len(a)
        prod = [Fraction(0)] * (2 * phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return _reduce_mod_phi(self.n, prod)

    def _inv(self, a):
        phi = len(a)
        # columns: a * x^j; solve M c = e_0
        cols = []
        basis = [tuple(Fraction(int(i == j)) for i in range(phi)) for j in range(phi)]
        for e in basis:
            cols.append(self._mul(a, e))
        rows = [[cols[j][i] for j in range(phi)] + [Fraction(int(i == 0))] for i in range(phi)]
        for c in range(phi):
            piv = next(r for r in range(c, phi) if rows[r][c] != 0)
            rows[c], rows[piv] = rows[piv], rows[c]
            inv = 1 / rows[c][c]
            rows[c] = [v * inv for v in rows[c]]
            for r in range(phi):
                if r != c and rows[r][c] != 0:
                    f = rows[r][c]
                    rows[r] = [v - f * w for v, w in zip(rows[r], rows[c])]
        return tuple(rows[i][phi] for i in range(phi))

    @staticmethod
    def _format(a) -> str:
        parts = []
        for k in range(len(a) - 1, -1, -1):
            c = a[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            neg = c < 0
            mag = -c if neg else c
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append((neg, body))
        if not parts:
            return "0"
        neg, body = parts[0]
        out = ("-" if neg else "") + body
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out


@lru_cache(maxsize=None)
def _reduction_table(n: int):
    phi_poly = cyclotomic_polynomial(n)
    phi = len(phi_poly) - 1
    return phi, phi_poly


def _reduce_mod_phi(n: int, coeffs: list) -> tuple:
    phi, poly = _reduction_table(n)
    r = list(coeffs)
    for k in range(len(r) - 1, phi - 1, -1):
        c = r[k]
        if c:
            r[k] = Fraction(0)
            for i in range(phi):
                if poly[i]:
                    r[k - phi + i] -= c * poly[i]
    r = r[:phi] + [Fraction(0)] * (phi - len(r))
    return tuple(r)


@lru_cache(maxsize=None)
def _zeta_powers(n: int) -> tuple:
    phi = len(cyclotomic_polynomial(n)) - 1
    out = []
    for k in range(n):
        vec = [Fraction(0)] * max(phi, k + 1)
        vec[k] = Fraction(1)
        out.append(_reduce_mod_phi(n, vec))
    return tuple(out)


class Scalar:
    """An immutable element of a :class:`Field`."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    def _coerce(self, other) -> Scalar | None:
        if isinstance(other, Scalar):
            if other.field is self.field or other.field == self.field:
                return other
            raise FieldMismatch(f"cannot combine elements of {self.field} and {other.field}")
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.field, self.field._add(self.value, o.value))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.field, self.field._sub(self.value, o.value))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.field, self.field._sub(o.value, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.field, self.field._mul(self.value, o.value))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field, self.field._neg(self.value))

    def inverse(self) -> Scalar:
        if not self:
            raise ZeroDivisionError("inverse of zero")
        return Scalar(self.field, self.field._inv(self.value))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return not self.field._is_zero(self.value)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.field(other).value
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        return self.field._format(self.value)

    def __repr__(self):
        return f"Scalar({self}, {self.field})"

    def is_rational(self) -> bool:
        if isinstance(self.field, Cyclotomic):
            return not any(self.value[1:])
        return True


# ---------- roots of unity ----------

def root_of_unity_order(a: Scalar) -> int | None:
    """Multiplicative order of ``a`` if it is a root of unity, else ``None``."""
    if not a:
        raise ZeroInput("zero is not a root of unity")
    F = a.field
    if isinstance(F, PrimeField):
        bound = F.p - 1
    elif isinstance(F, Cyclotomic):
        bound = _lcm(2, F.n)
    else:
        bound = 2
    if a ** bound != 1:
        return None
    return min(r for r in _divisors(bound) if a ** r == 1)


def embed(a: Scalar, target: Field) -> Scalar:
    """Image of ``a`` under the canonical inclusion into ``target``."""
    src = a.field
    if src == target:
        return a
    if isinstance(src, Rationals) or (isinstance(src, Cyclotomic) and a.is_rational()):
        q = a.value if isinstance(src, Rationals) else a.value[0]
        return target(q)
    if isinstance(src, Cyclotomic) and isinstance(target, Cyclotomic) and target.n % src.n == 0:
        step = target.n // src.n
        out = target.zero
        for k, c in enumerate(a.value):
            if c:
                out = out + target.zeta(k * step) * target(c)
        return out
    raise FieldMismatch(f"no embedding of {src} into {target}")


def common_field(fields) -> Field:
    """Smallest supported field containing every field in ``fields``."""
    fields = list(fields)
    primes = {f for f in fields if isinstance(f, PrimeField)}
    if primes:
        if len(primes) > 1 or len(primes) != len(set(fields)):
            raise FieldMismatch("cannot mix prime fields with other fields")
        return primes.pop()
    n = 1
    for f in fields:
        if isinstance(f, Cyclotomic):
            n = _lcm(n, f.n)
    return Rationals() if n == 1 and not any(isinstance(f, Cyclotomic) for f in fields) else Cyclotomic(n)


def root_of_unity_solve(a: Scalar, m: int) -> tuple[Scalar, Field]:
    """Find ``d`` with ``d**m == a``.

    The returned field is either ``a.field`` or a cyclotomic enlargement of
    it; ``d`` lives in the returned field. Raises :class:`NotRepresentable`
    when ``a`` is not a root of unity (or, over GF(p), has no m-th root).
    """
    if m == 0:
        raise ValueError("m must be nonzero")
    if not a:
        raise ZeroInput("cannot extract a root of zero")
    F = a.field
    if isinstance(F, PrimeField):
        for v in range(1, F.p):
            d = F(v)
            if d ** m == a:
                return d, F
        raise NotRepresentable(f"{a} has no {m}-th root in {F}")
    order = root_of_unity_order(a)
    if order is None:
        raise NotRepresentable(f"{a} is not a root of unity")
    n = F.n if isinstance(F, Cyclotomic) else 1
    for sign in (1, -1):
        for e in range(n):
            d = F(sign) if n == 1 else F.zeta(e) * sign
            if d ** m == a:
                return d, F
    big = Cyclotomic(_lcm(n, abs(m) * order))
    target = embed(a, big)
    for e in range(big.n):
        d = big.zeta(e)
        if d ** m == target:
            return d, big
    raise NotRepresentable(f"no {m}-th root of {a} found in {big}")  # pragma: no cover
