"""Exact rational scalars and rational-or-infinity values.

All numeric computation in this package runs on arbitrary-precision
rationals (gmpy2.mpq); there is no floating point anywhere. ``ExtRat``
adjoins a single positive infinity, used for dual gauges that are
unbounded on a unit ball.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from gmpy2 import mpq

Q = mpq
Rational = Union[int, Fraction, mpq, str]


def as_q(x: Rational) -> mpq:
    """Coerce ints, Fractions and 'p/q' strings to an exact rational."""
    if isinstance(x, mpq):
        return x
    if isinstance(x, (int, Fraction)):
        return mpq(x)
    if isinstance(x, str):
        return mpq(x.strip())
    raise TypeError(f"not an exact rational: {x!r} ({type(x).__name__})")


def q_str(x: mpq) -> str:
    return str(x)


class ExtRat:
    """A rational number or +infinity, ordered with infinity on top.

    Addition and scalar multiplication are defined where the result is
    unambiguous; ``inf - inf`` style operations are not needed and not
    provided.
    """

    __slots__ = ("value",)

    def __init__(self, value: Rational | None):
        # value None encodes +infinity
        self.value = None if value is None else as_q(value)

    @classmethod
    def finite(cls, x: Rational) -> "ExtRat":
        return cls(x)

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def unwrap(self) -> mpq:
        if self.value is None:
            raise ValueError("infinite value where a finite rational was required")
        return self.value

    def __eq__(self, other) -> bool:
        if isinstance(other, ExtRat):
            return self.value == other.value
        if self.value is None:
            return False
        return self.value == other

    def __hash__(self):
        return hash(self.value)

    def __lt__(self, other) -> bool:
        o = other if isinstance(other, ExtRat) else ExtRat(other)
        if self.value is None:
            return False
        if o.value is None:
            return True
        return self.value < o.value

    def __le__(self, other) -> bool:
        return self == other or self < other

    def __gt__(self, other) -> bool:
        return not self <= other

    def __ge__(self, other) -> bool:
        return not self < other

    def __add__(self, other) -> "ExtRat":
        o = other if isinstance(other, ExtRat) else ExtRat(other)
        if self.value is None or o.value is None:
            return INFINITY
        return ExtRat(self.value + o.value)

    def __mul__(self, scalar: Rational) -> "ExtRat":
        s = as_q(scalar)
        if self.value is None:
            if s <= 0:
                raise ValueError("infinity may only be scaled by a positive rational")
            return INFINITY
        return ExtRat(self.value * s)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return "ExtRat(inf)" if self.value is None else f"ExtRat({self.value})"

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)


INFINITY = ExtRat(None)

QZERO = Q(0)
QONE = Q(1)
