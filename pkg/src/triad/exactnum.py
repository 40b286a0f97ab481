"""Exact rational scalars for vertex coordinates.

Repeated trisection produces denominators 3**d and halving produces 2**p.
Storing those values as floats would let two routes to the same vertex
disagree in the last bit, and the vertex database keys on exact equality.
``ExactScalar`` keeps every value as a normalized fraction whose numerator
and denominator must fit in a signed 64-bit word; exceeding that raises
:class:`~triad.errors.ExactOverflowError` instead of wrapping.
"""

from __future__ import annotations

from math import gcd
from typing import Literal, Union

from .errors import ExactOverflowError, ZeroDenominatorError

#: Largest magnitude allowed for a stored numerator or denominator.
CAPACITY = 2**63 - 1

Ordering = Literal["less", "equal", "greater"]


class ExactScalar:
    """Immutable normalized rational ``numerator / denominator``.

    >>> make(6, 18)
    ExactScalar(1/3)
    >>> make(2, -3).numerator
    -2
    """

    __slots__ = ("numerator", "denominator")

    numerator: int
    denominator: int

    def __init__(self, numerator: int, denominator: int = 1) -> None:
        if denominator == 0:
            raise ZeroDenominatorError("ExactScalar with zero denominator")
        if denominator < 0:
            numerator, denominator = -numerator, -denominator
        g = gcd(numerator, denominator)
        if g > 1:
            numerator //= g
            denominator //= g
        if abs(numerator) > CAPACITY or denominator > CAPACITY:
            raise ExactOverflowError(
                f"{numerator}/{denominator} exceeds the 64-bit rational capacity"
            )
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "denominator", denominator)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("ExactScalar is immutable")

    def __reduce__(self):
        return (ExactScalar, (self.numerator, self.denominator))

    @classmethod
    def parse(cls, text: Union[str, int, "ExactScalar"]) -> "ExactScalar":
        """Read ``"num/den"`` or a bare integer (string or int)."""
        if isinstance(text, ExactScalar):
            return text
        if isinstance(text, bool):
            raise TypeError("booleans are not coordinates")
        if isinstance(text, int):
            return cls(text)
        if not isinstance(text, str):
            raise TypeError(f"cannot parse {type(text).__name__} as ExactScalar")
        num, sep, den = text.strip().partition("/")
        try:
            return cls(int(num), int(den) if sep else 1)
        except ValueError:
            raise ValueError(f"not a rational literal: {text!r}") from None

    # arithmetic ---------------------------------------------------------

    def __add__(self, other: "ExactScalar") -> "ExactScalar":
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return ExactScalar(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    def __sub__(self, other: "ExactScalar") -> "ExactScalar":
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return ExactScalar(
            self.numerator * other.denominator - other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    def __mul__(self, other: "ExactScalar") -> "ExactScalar":
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return ExactScalar(
            self.numerator * other.numerator, self.denominator * other.denominator
        )

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(-self.numerator, self.denominator)

    def __abs__(self) -> "ExactScalar":
        return self if self.numerator >= 0 else -self

    # comparison ---------------------------------------------------------

    def _key(self, other: "ExactScalar") -> tuple[int, int]:
        return (
            self.numerator * other.denominator,
            other.numerator * self.denominator,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return (
            self.numerator == other.numerator
            and self.denominator == other.denominator
        )

    def __hash__(self) -> int:
        return hash((self.numerator, self.denominator))

    def __lt__(self, other: "ExactScalar") -> bool:
        if not isinstance(other, ExactScalar):
            return NotImplemented
        lhs, rhs = self._key(other)
        return lhs < rhs

    def __le__(self, other: "ExactScalar") -> bool:
        if not isinstance(other, ExactScalar):
            return NotImplemented
        lhs, rhs = self._key(other)
        return lhs <= rhs

    def __gt__(self, other: "ExactScalar") -> bool:
        if not isinstance(other, ExactScalar):
            return NotImplemented
        lhs, rhs = self._key(other)
        return lhs > rhs

    def __ge__(self, other: "ExactScalar") -> bool:
        if not isinstance(other, ExactScalar):
            return NotImplemented
        lhs, rhs = self._key(other)
        return lhs >= rhs

    # conversion ---------------------------------------------------------

    def __float__(self) -> float:
        # int / int is correctly rounded in CPython
        return self.numerator / self.denominator

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"

    def __repr__(self) -> str:
        return f"ExactScalar({self})"


ZERO = ExactScalar(0)
ONE = ExactScalar(1)


def make(num: int, den: int = 1) -> ExactScalar:
    """Build a normalized rational; ``den == 0`` raises ``ZeroDenominatorError``."""
    return ExactScalar(num, den)


def arith(
    lhs: ExactScalar, rhs: ExactScalar, op: str
) -> Union[ExactScalar, Ordering]:
    """Dispatch ``add``/``sub``/``mul``/``cmp`` on two scalars."""
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "cmp":
        if lhs < rhs:
            return "less"
        if lhs > rhs:
            return "greater"
        return "equal"
    raise ValueError(f"unknown operation {op!r}")


def affine_third(a: ExactScalar, b: ExactScalar, k: int) -> ExactScalar:
    """Return ``a + k*(b - a)/3`` exactly, for ``k`` in {1, 2}.

    This is the coordinate shared by both cut points of a trisection;
    ``a > b`` is allowed and simply walks the edge in the other direction.
    """
    if k not in (1, 2):
        raise ValueError(f"k must be 1 or 2, got {k}")
    # (3a + k(b - a)) / 3 over the common denominator a.den * b.den
    ad, bd = a.denominator, b.denominator
    num = (3 - k) * a.numerator * bd + k * b.numerator * ad
    return ExactScalar(num, 3 * ad * bd)


def midpoint(a: ExactScalar, b: ExactScalar) -> ExactScalar:
    return ExactScalar(
        a.numerator * b.denominator + b.numerator * a.denominator,
        2 * a.denominator * b.denominator,
    )


def to_float(x: ExactScalar) -> float:
    return float(x)
