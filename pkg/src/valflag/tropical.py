"""Max-plus (tropical) Laurent polynomials over the rational semifield.

Coefficients are stored in log convention: the written form t^a is stored
as the rational a, so tropical multiplication of coefficients is rational
addition and the tropical zero is -infinity (represented by the float
flag NEG_INF, never stored inside a polynomial).

A polynomial is a sparse map from integer exponent vectors to rational
coefficient exponents; tropical addition is coefficientwise max and is
idempotent (f + f = f).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import DimensionError, DomainError, ParseError
from .scalars import RationalLike, Scalar, dot

NEG_INF = float("-inf")


@dataclass(frozen=True)
class ExponentVector:
    """(gamma, u): the coefficient exponent and the monomial exponents of a
    term t^gamma * x^u, also used as a lattice point of ℚ x Z^n."""

    gamma: Fraction
    u: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "gamma", Fraction(self.gamma))
        object.__setattr__(self, "u", tuple(int(e) for e in self.u))

    @property
    def n(self) -> int:
        return len(self.u)

    def add(self, other: "ExponentVector") -> "ExponentVector":
        self._check(other)
        return ExponentVector(
            self.gamma + other.gamma,
            tuple(a + b for a, b in zip(self.u, other.u)),
        )

    def sub(self, other: "ExponentVector") -> "ExponentVector":
        self._check(other)
        return ExponentVector(
            self.gamma - other.gamma,
            tuple(a - b for a, b in zip(self.u, other.u)),
        )

    def scale(self, k: int) -> "ExponentVector":
        return ExponentVector(self.gamma * k, tuple(e * k for e in self.u))

    def _check(self, other: "ExponentVector") -> None:
        if len(self.u) != len(other.u):
            raise DimensionError(
                f"exponent vectors of lengths {len(self.u)} and {len(other.u)}"
            )


class TropPolynomial:
    """Sparse tropical Laurent polynomial in n variables."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[tuple[int, ...], RationalLike] = ()):
        self.n = int(n)
        clean: dict[tuple[int, ...], Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for u, gamma in items:
            u = tuple(int(e) for e in u)
            if len(u) != self.n:
                raise DimensionError(
                    f"exponent {u} has length {len(u)}, expected {self.n}"
                )
            gamma = Fraction(gamma)
            prev = clean.get(u)
            if prev is None or gamma > prev:
                clean[u] = gamma
        self._terms = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "TropPolynomial":
        return cls(n, {})

    @classmethod
    def unit(cls, n: int) -> "TropPolynomial":
        """The multiplicative unit 1 = t^0."""
        return cls(n, {(0,) * n: Fraction(0)})

    @classmethod
    def term(cls, gamma: RationalLike, u: Sequence[int]) -> "TropPolynomial":
        return cls(len(u), {tuple(u): Fraction(gamma)})

    @classmethod
    def from_exponent(cls, ev: ExponentVector) -> "TropPolynomial":
        return cls.term(ev.gamma, ev.u)

    # -- structure -------------------------------------------------------

    def items(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self._terms.items())

    def exponents(self) -> Iterator[ExponentVector]:
        for u, gamma in self.items():
            yield ExponentVector(gamma, u)

    def is_zero(self) -> bool:
        return not self._terms

    def is_term(self) -> bool:
        return len(self._terms) == 1

    def the_term(self) -> ExponentVector:
        if not self.is_term():
            raise ValueError(f"{self} is not a single term")
        ((u, gamma),) = self._terms.items()
        return ExponentVector(gamma, u)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TropPolynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.items())))

    # -- semiring arithmetic ----------------------------------------------

    def _check(self, other: "TropPolynomial") -> None:
        if self.n != other.n:
            raise DimensionError(
                f"polynomials in {self.n} and {other.n} variables"
            )

    def __add__(self, other: "TropPolynomial") -> "TropPolynomial":
        """Tropical sum: coefficientwise max."""
        self._check(other)
        merged = dict(self._terms)
        for u, gamma in other._terms.items():
            prev = merged.get(u)
            if prev is None or gamma > prev:
                merged[u] = gamma
        return TropPolynomial(self.n, merged)

    def __mul__(self, other: "TropPolynomial") -> "TropPolynomial":
        """Tropical product: max-plus convolution."""
        self._check(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for u, a in self._terms.items():
            for v, b in other._terms.items():
                w = tuple(i + j for i, j in zip(u, v))
                c = a + b
                prev = out.get(w)
                if prev is None or c > prev:
                    out[w] = c
        return TropPolynomial(self.n, out)

    def __pow__(self, k: int) -> "TropPolynomial":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = TropPolynomial.unit(self.n)
        for _ in range(k):
            out = out * self
        return out

    # -- evaluation ---------------------------------------------------------

    def eval_at(self, x: Sequence[Scalar]):
        """max over terms of gamma + <x, u>; NEG_INF for the zero polynomial."""
        if len(x) != self.n:
            raise DimensionError(
                f"point of length {len(x)} for a {self.n}-variable polynomial"
            )
        if not self._terms:
            return NEG_INF
        best = None
        for u, gamma in self._terms.items():
            val = Scalar.rational(gamma) + dot(x, u)
            if best is None or val > best:
                best = val
        return best

    def eval_homog(self, r: Scalar, x: Sequence[Scalar]):
        """max over terms of r*gamma + <x, u>; requires r >= 0.

        Restricting to r = 1 recovers eval_at.
        """
        r = Scalar.coerce(r)
        if r.sign() < 0:
            raise DomainError(f"homogenizing coordinate must be >= 0, got {r}")
        if len(x) != self.n:
            raise DimensionError(
                f"point of length {len(x)} for a {self.n}-variable polynomial"
            )
        if not self._terms:
            return NEG_INF
        best = None
        for u, gamma in self._terms.items():
            val = r._scale(gamma) + dot(x, u)
            if best is None or val > best:
                best = val
        return best

    def __str__(self) -> str:
        names = _default_names(self.n)
        return format_poly(self, names)

    def __repr__(self) -> str:
        return f"TropPolynomial({self.n}, {self!s})"


def _default_names(n: int) -> list[str]:
    if n <= 3:
        return ["x", "y", "z"][:n]
    return [f"x{i + 1}" for i in range(n)]


# -- text grammar ----------------------------------------------------------
#
# poly   := '0' | term ('+' term)*
# term   := factor ('*' factor)*
# factor := 't' '^' rational | name ('^' int)?
#
# Repeated factors multiply (exponents add).  A term with no t factor has
# coefficient exponent 0.


def parse_poly(text: str, names: Sequence[str]) -> TropPolynomial:
    names = list(names)
    n = len(names)
    stripped = text.strip()
    if stripped == "0":
        return TropPolynomial.zero(n)
    poly = TropPolynomial.zero(n)
    pos = 0
    for chunk in stripped.split("+"):
        gamma = Fraction(0)
        u = [0] * n
        piece = chunk.strip()
        if not piece:
            raise ParseError("empty term", text, pos)
        for factor in piece.split("*"):
            factor = factor.strip()
            if not factor:
                raise ParseError("empty factor", text, pos)
            base, _, exp = factor.partition("^")
            base = base.strip()
            exp = exp.strip()
            if base == "t":
                if not exp:
                    raise ParseError("t requires an exponent", text, pos)
                gamma += _parse_signed_rational(exp, text, pos)
            elif base in names:
                e = 1
                if exp:
                    e = _parse_signed_int(exp, text, pos)
                u[names.index(base)] += e
            else:
                raise ParseError(f"unknown factor {base!r}", text, pos)
        poly = poly + TropPolynomial.term(gamma, u)
        pos += len(chunk) + 1
    return poly


def parse_term(text: str, names: Sequence[str]) -> ExponentVector:
    poly = parse_poly(text, names)
    if not poly.is_term():
        raise ParseError(f"expected a single term, got {len(poly)}", text, 0)
    return poly.the_term()


def _parse_signed_int(text: str, src: str, pos: int) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise ParseError(f"bad integer {text!r}", src, pos) from exc


def _parse_signed_rational(text: str, src: str, pos: int) -> Fraction:
    num, slash, den = text.partition("/")
    try:
        if slash:
            value = Fraction(int(num), int(den))
        else:
            value = Fraction(int(num))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}", src, pos) from exc
    return value


def format_exponent(ev: ExponentVector, names: Sequence[str]) -> str:
    parts = []
    if ev.gamma != 0 or not any(ev.u):
        parts.append(f"t^{ev.gamma}")
    for name, e in zip(names, ev.u):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(f: TropPolynomial, names: Sequence[str]) -> str:
    if f.is_zero():
        return "0"
    return " + ".join(format_exponent(ev, names) for ev in f.exponents())
