"""Exact arithmetic in real multi-quadratic extensions of the rationals.

A scalar is a finite sum sum_n q_n * sqrt(n) over distinct squarefree
nonnegative integers n with rational coefficients q_n; the key n = 1 holds
the rational part.  Because square roots of distinct squarefree integers are
linearly independent over the rationals, the representation is unique and
the zero test is structural: a scalar is zero iff its term map is empty.

Sign determination never trusts floating point: it brackets the value with
rational interval arithmetic (``math.isqrt`` bounds) at doubling precision,
which terminates for any nonzero value.

Non-goals: general real algebraic numbers (cubic or higher radicals raise
no claim here; the representable field is exactly ℚ(sqrt(d1), ..., sqrt(dr))
with the number of distinct radicals capped, default 8, overridable through
the VALFLAG_RADICAL_CAP environment variable).
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

from .errors import CapacityError, ParseError

RationalLike = Union[int, Fraction]
ScalarLike = Union["Scalar", int, Fraction, str]

DEFAULT_RADICAL_CAP = 8
RADICAL_CAP_ENV = "VALFLAG_RADICAL_CAP"


def radical_cap() -> int:
    """Current bound on the number of distinct radicals in one scalar."""
    raw = os.environ.get(RADICAL_CAP_ENV)
    if raw is None:
        return DEFAULT_RADICAL_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise CapacityError(
            f"{RADICAL_CAP_ENV} must be an integer, got {raw!r}"
        ) from exc
    if cap < 1:
        raise CapacityError(f"{RADICAL_CAP_ENV} must be positive, got {cap}")
    return cap


def squarefree_split(n: int) -> tuple[int, int]:
    """Write n = outer**2 * inner with inner squarefree; returns (outer, inner).

    Trial division; radicands in this library stay small.
    """
    if n < 0:
        raise ValueError(f"radicand must be nonnegative, got {n}")
    if n == 0:
        return 0, 1
    outer, inner = 1, 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            outer *= p ** (e // 2)
            if e % 2:
                inner *= p
        p += 1 if p == 2 else 2
    return outer, inner * n


@lru_cache(maxsize=None)
def _sqrt_bounds(n: int, prec: int) -> tuple[Fraction, Fraction]:
    # lo <= sqrt(n) < hi with hi - lo = 2**-prec
    t = math.isqrt(n << (2 * prec))
    scale = 1 << prec
    return Fraction(t, scale), Fraction(t + 1, scale)


class Scalar:
    """An element of a real multi-quadratic field, exact and immutable."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, RationalLike] | None = None):
        """Build from a map radicand -> coefficient.

        Radicands need not be squarefree; they are reduced
        (8 -> 2*sqrt(2)).  Zero coefficients are dropped.
        """
        reduced: dict[int, Fraction] = {}
        if terms:
            for n, q in terms.items():
                q = Fraction(q)
                if not q:
                    continue
                outer, inner = squarefree_split(n)
                if outer == 0:
                    continue
                coeff = q * outer
                acc = reduced.get(inner, Fraction(0)) + coeff
                if acc:
                    reduced[inner] = acc
                elif inner in reduced:
                    del reduced[inner]
        nrad = sum(1 for n in reduced if n != 1)
        if nrad > radical_cap():
            raise CapacityError(
                f"scalar would carry {nrad} distinct radicals, "
                f"cap is {radical_cap()} (set {RADICAL_CAP_ENV} to raise it)"
            )
        self._terms = reduced

    # -- constructors -------------------------------------------------

    @classmethod
    def rational(cls, q: RationalLike) -> "Scalar":
        return cls({1: Fraction(q)})

    @classmethod
    def sqrt(cls, n: int) -> "Scalar":
        return cls({n: 1})

    @staticmethod
    def coerce(value: ScalarLike) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return Scalar.rational(value)
        if isinstance(value, str):
            return parse_scalar(value)
        raise TypeError(f"cannot interpret {value!r} as a scalar")

    # -- structure ----------------------------------------------------

    def items(self) -> Iterable[tuple[int, Fraction]]:
        return sorted(self._terms.items())

    def coefficient(self, radicand: int) -> Fraction:
        return self._terms.get(radicand, Fraction(0))

    def rational_part(self) -> Fraction:
        return self._terms.get(1, Fraction(0))

    def radicals(self) -> list[int]:
        """Squarefree radicands n > 1 present in this scalar, sorted."""
        return sorted(n for n in self._terms if n != 1)

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(n == 1 for n in self._terms)

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.rational_part()

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- field arithmetic ----------------------------------------------

    def __add__(self, other: ScalarLike) -> "Scalar":
        other = Scalar.coerce(other)
        merged = dict(self._terms)
        for n, q in other._terms.items():
            acc = merged.get(n, Fraction(0)) + q
            if acc:
                merged[n] = acc
            elif n in merged:
                del merged[n]
        return Scalar(merged)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar({n: -q for n, q in self._terms.items()})

    def __sub__(self, other: ScalarLike) -> "Scalar":
        return self + (-Scalar.coerce(other))

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        return Scalar.coerce(other) - self

    def __mul__(self, other: ScalarLike) -> "Scalar":
        other = Scalar.coerce(other)
        prod: dict[int, Fraction] = {}
        for m, qm in self._terms.items():
            for n, qn in other._terms.items():
                g = math.gcd(m, n)
                key = (m // g) * (n // g)
                coeff = qm * qn * g
                acc = prod.get(key, Fraction(0)) + coeff
                if acc:
                    prod[key] = acc
                elif key in prod:
                    del prod[key]
        return Scalar(prod)

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike) -> "Scalar":
        other = Scalar.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("scalar division by zero")
        num, den = self, other
        while not den.is_rational():
            p = _smallest_prime_factor(min(den.radicals()))
            conj = Scalar(
                {n: (-q if n % p == 0 else q) for n, q in den._terms.items()}
            )
            num = num * conj
            den = den * conj
        return num._scale(1 / den.as_rational())

    def __rtruediv__(self, other: ScalarLike) -> "Scalar":
        return Scalar.coerce(other) / self

    def _scale(self, q: RationalLike) -> "Scalar":
        q = Fraction(q)
        return Scalar({n: c * q for n, c in self._terms.items()})

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            return Scalar.rational(1) / self ** (-k)
        out = Scalar.rational(1)
        for _ in range(k):
            out = out * self
        return out

    # -- order ----------------------------------------------------------

    def _interval(self, prec: int) -> tuple[Fraction, Fraction]:
        lo = hi = Fraction(0)
        for n, q in self._terms.items():
            if n == 1:
                lo += q
                hi += q
                continue
            slo, shi = _sqrt_bounds(n, prec)
            if q >= 0:
                lo += q * slo
                hi += q * shi
            else:
                lo += q * shi
                hi += q * slo
        return lo, hi

    def sign(self) -> int:
        """Exact sign in {-1, 0, +1}."""
        if not self._terms:
            return 0
        if self.is_rational():
            q = self._terms[1]
            return -1 if q < 0 else 1
        prec = 64
        while True:
            lo, hi = self._interval(prec)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            prec *= 2

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Scalar.rational(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._terms.items())))

    def __lt__(self, other: ScalarLike) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: ScalarLike) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: ScalarLike) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: ScalarLike) -> bool:
        return (self - other).sign() >= 0

    def floor(self) -> int:
        """Largest integer <= self, exact."""
        if self.is_rational():
            q = self.rational_part()
            return q.numerator // q.denominator
        prec = 64
        while True:
            lo, hi = self._interval(prec)
            flo = lo.numerator // lo.denominator
            fhi = hi.numerator // hi.denominator
            if flo == fhi:
                return flo
            prec *= 2

    def approx(self) -> float:
        """Floating approximation; display only, never used in decisions."""
        return float(
            sum(float(q) * math.sqrt(n) for n, q in self._terms.items())
        )

    # -- misc -----------------------------------------------------------

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"Scalar({format_scalar(self)!r})"


ZERO = Scalar()
ONE = Scalar.rational(1)


def _smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    p = 3
    while p * p <= n:
        if n % p == 0:
            return p
        p += 2
    return n


def scalar_vector(values: Sequence[ScalarLike]) -> tuple[Scalar, ...]:
    return tuple(Scalar.coerce(v) for v in values)


def dot(xs: Sequence[Scalar], coeffs: Sequence[ScalarLike]) -> Scalar:
    """sum coeffs[i] * xs[i]; rational coefficients avoid full products."""
    acc = Scalar()
    for x, c in zip(xs, coeffs):
        if isinstance(c, Scalar):
            if c:
                acc = acc + x * c
        elif c:
            acc = acc + x._scale(c)
    return acc


def rational_part_basis(v: Sequence[Scalar]) -> list[list[Fraction]]:
    """Irrationality constraints of a scalar vector.

    Returns one row per radical n > 1 appearing anywhere in v; the row lists
    the coefficient of sqrt(n) in each v_i.  An integer vector m satisfies
    sum m_i * v_i in ℚ exactly when m annihilates every returned row.
    """
    radicals = sorted({n for x in v for n in x.radicals()})
    return [[x.coefficient(n) for x in v] for n in radicals]


def simplest_between(a: ScalarLike, b: ScalarLike) -> Fraction:
    """The simplest rational strictly between a and b (requires a < b).

    Simplest means smallest denominator, ties broken toward the smaller
    absolute numerator; computed by the Stern-Brocot / continued-fraction
    walk using exact comparisons only.
    """
    a = Scalar.coerce(a)
    b = Scalar.coerce(b)
    if not a < b:
        raise ValueError(f"empty interval ({a}, {b})")
    return _simplest_positive(a, b)


def _simplest_positive(a: Scalar, b: Scalar) -> Fraction:
    if a.sign() < 0:
        if b.sign() > 0:
            return Fraction(0)
        return -_simplest_positive(-b, -a)
    # 0 <= a < b
    fa = a.floor()
    if b > fa + 1:
        return Fraction(fa + 1)
    a1 = a - fa
    b1 = b - fa
    if a1.is_zero():
        inv = ONE / b1
        return fa + Fraction(1, inv.floor() + 1)
    inner = _simplest_positive(ONE / b1, ONE / a1)
    return fa + 1 / inner


# -- text grammar -------------------------------------------------------
#
# expr     := ('+'|'-')? term (('+'|'-') term)*
# term     := rational ('*' 'sqrt(' uint ')')? | 'sqrt(' uint ')'
# rational := int ('/' uint)?
#
# The leading sign is a permissive extension so that formatted output like
# "-sqrt(2)" reads back; canonical output always parses.


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, token: str) -> bool:
        self.skip_ws()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str) -> None:
        if not self.take(token):
            raise ParseError(f"expected {token!r}", self.text, self.pos)

    def uint(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected an unsigned integer", self.text, start)
        return int(self.text[start : self.pos])

    def done(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)


def _parse_rational(cur: _Cursor) -> Fraction:
    sign = -1 if cur.take("-") else 1
    if sign == 1:
        cur.take("+")
    num = cur.uint()
    if cur.take("/"):
        pos = cur.pos
        den = cur.uint()
        if den == 0:
            raise ParseError("zero denominator", cur.text, pos)
        return Fraction(sign * num, den)
    return Fraction(sign * num)


def _parse_term(cur: _Cursor) -> Scalar:
    if cur.take("sqrt("):
        n = cur.uint()
        cur.expect(")")
        return Scalar({n: 1})
    coeff = _parse_rational(cur)
    if cur.take("*"):
        cur.expect("sqrt(")
        n = cur.uint()
        cur.expect(")")
        return Scalar({n: coeff})
    return Scalar.rational(coeff)


def parse_scalar(text: str) -> Scalar:
    """Parse the scalar grammar; raises ParseError with position info."""
    cur = _Cursor(text)
    if cur.peek() == "":
        raise ParseError("empty scalar expression", text, cur.pos)
    negate = False
    if cur.peek() in "+-":
        negate = cur.take("-")
        if not negate:
            cur.take("+")
    value = _parse_term(cur)
    if negate:
        value = -value
    while not cur.done():
        if cur.take("+"):
            value = value + _parse_term(cur)
        elif cur.take("-"):
            value = value - _parse_term(cur)
        else:
            raise ParseError("expected '+' or '-'", cur.text, cur.pos)
    return value


def format_scalar(s: Scalar) -> str:
    """Canonical text form; parse_scalar(format_scalar(s)) == s."""
    if s.is_zero():
        return "0"
    parts: list[str] = []
    for n, q in s.items():
        if n == 1:
            body = str(abs(q))
        elif abs(q) == 1:
            body = f"sqrt({n})"
        else:
            body = f"{abs(q)}*sqrt({n})"
        if not parts:
            parts.append(body if q > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if q > 0 else f"- {body}")
    return " ".join(parts)
