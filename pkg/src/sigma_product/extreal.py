"""Exact nonnegative extended-real arithmetic.

Values are either exact nonnegative rationals or the single point at
infinity.  Multiplication uses the measure-theoretic convention that
infinity times zero is zero; addition treats infinity as absorbing.
All values are immutable and hashable.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Union

Rational = Fraction

RationalLike = Union[int, Fraction]


@total_ordering
class ExtNonNeg:
    """A nonnegative rational, or infinity.

    Supports ``+``, ``*`` and total ordering.  The canonical text form is
    ``p/q`` (just ``n`` for integers) for finite values and ``inf`` for
    infinity; ``parse`` inverts it bit-exactly.
    """

    __slots__ = ("_value",)

    def __init__(self, value: RationalLike | None):
        if value is not None:
            value = Fraction(value)
            if value < 0:
                raise ValueError(f"extended value must be nonnegative, got {value}")
        object.__setattr__(self, "_value", value)

    def __setattr__(self, name, value):
        raise AttributeError("ExtNonNeg is immutable")

    @staticmethod
    def of(value: RationalLike | ExtNonNeg) -> ExtNonNeg:
        if isinstance(value, ExtNonNeg):
            return value
        return ExtNonNeg(value)

    @property
    def is_finite(self) -> bool:
        return self._value is not None

    @property
    def is_zero(self) -> bool:
        return self._value == 0

    @property
    def finite(self) -> Fraction:
        """The rational payload; raises on infinity."""
        if self._value is None:
            raise ValueError("value is infinite")
        return self._value

    def __add__(self, other: ExtNonNeg) -> ExtNonNeg:
        other = ExtNonNeg.of(other)
        if self._value is None or other._value is None:
            return INF
        return ExtNonNeg(self._value + other._value)

    __radd__ = __add__

    def __mul__(self, other: ExtNonNeg) -> ExtNonNeg:
        other = ExtNonNeg.of(other)
        if self._value is None:
            return ZERO if other.is_zero else INF
        if other._value is None:
            return ZERO if self.is_zero else INF
        return ExtNonNeg(self._value * other._value)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ExtNonNeg(other)
        if not isinstance(other, ExtNonNeg):
            return NotImplemented
        return self._value == other._value

    def __lt__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ExtNonNeg(other)
        if not isinstance(other, ExtNonNeg):
            return NotImplemented
        if self._value is None:
            return False
        if other._value is None:
            return True
        return self._value < other._value

    def __hash__(self) -> int:
        return hash(("ExtNonNeg", self._value))

    def __str__(self) -> str:
        return "inf" if self._value is None else render_rational(self._value)

    def __repr__(self) -> str:
        return f"ExtNonNeg({self})"

    @staticmethod
    def parse(text: str) -> ExtNonNeg:
        text = text.strip()
        if text == "inf":
            return INF
        return ExtNonNeg(parse_rational(text))


ZERO = ExtNonNeg(0)
ONE = ExtNonNeg(1)
INF = ExtNonNeg(None)


def render_rational(value: Fraction) -> str:
    """Canonical ``p/q`` rendering; integers render without a denominator."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def ext_sum(terms: Iterable[ExtNonNeg]) -> ExtNonNeg:
    total = ZERO
    for term in terms:
        total = total + term
    return total


class FiniteTerms:
    """A series that is just a finite list of terms."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[RationalLike | ExtNonNeg]):
        self.terms = tuple(ExtNonNeg.of(t) for t in terms)

    def total(self) -> ExtNonNeg:
        return ext_sum(self.terms)


class Geometric:
    """The series first, first*ratio, first*ratio^2, ...; requires ratio < 1."""

    __slots__ = ("first", "ratio")

    def __init__(self, first: RationalLike, ratio: RationalLike):
        first = Fraction(first)
        ratio = Fraction(ratio)
        if first < 0:
            raise ValueError("geometric first term must be nonnegative")
        if not 0 <= ratio < 1:
            raise ValueError("geometric ratio must satisfy 0 <= ratio < 1")
        self.first = first
        self.ratio = ratio

    def total(self) -> ExtNonNeg:
        return ExtNonNeg(self.first / (1 - self.ratio))

    def term(self, index: int) -> Fraction:
        return self.first * self.ratio**index


class ConstantTail:
    """An infinite series repeating one term forever."""

    __slots__ = ("term",)

    def __init__(self, term: RationalLike | ExtNonNeg):
        self.term = ExtNonNeg.of(term)

    def total(self) -> ExtNonNeg:
        return ZERO if self.term.is_zero else INF


SeriesDesc = Union[FiniteTerms, Geometric, ConstantTail]


def sum_series(series: SeriesDesc) -> ExtNonNeg:
    """Exact value of one of the three closed-form series shapes."""
    return series.total()
