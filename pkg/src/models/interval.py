"""
Rational-endpoint interval arithmetic and certified root enclosures.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

Number = Union[int, Fraction]


class Interval:
    """Closed interval [lower, upper] with exact rational endpoints"""

    __slots__ = ("_lower", "_upper")

    def __init__(self, lower: Number, upper: Number = None):
        lower = Fraction(lower)
        upper = lower if upper is None else Fraction(upper)
        if upper < lower:
            raise ValueError(f"Empty interval [{lower}, {upper}]")
        self._lower = lower
        self._upper = upper

    @property
    def lower(self) -> Fraction:
        return self._lower

    @property
    def upper(self) -> Fraction:
        return self._upper

    @property
    def spread(self) -> Fraction:
        return self._upper - self._lower

    @property
    def bound(self) -> Fraction:
        return max(abs(self._lower), abs(self._upper))

    @property
    def midpoint(self) -> Fraction:
        return (self._lower + self._upper) / 2

    def contains_value(self, value: Number) -> bool:
        return self._lower <= value <= self._upper

    def contains(self, child: "Interval") -> bool:
        return child.lower >= self._lower and child.upper <= self._upper

    def sign(self) -> int:
        """+1 or -1 when the interval excludes zero, 0 when undecided"""
        if self._lower > 0:
            return 1
        if self._upper < 0:
            return -1
        return 0

    def __add__(self, other) -> "Interval":
        other = _as_interval(other)
        return Interval(self._lower + other.lower, self._upper + other.upper)

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self._upper, -self._lower)

    def __sub__(self, other) -> "Interval":
        return self + (-_as_interval(other))

    def __rsub__(self, other) -> "Interval":
        return _as_interval(other) - self

    def __mul__(self, other) -> "Interval":
        other = _as_interval(other)
        products = (
            self._lower * other.lower,
            self._lower * other.upper,
            self._upper * other.lower,
            self._upper * other.upper,
        )
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Interval":
        result = Interval(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Interval):
            return NotImplemented
        return self._lower == other.lower and self._upper == other.upper

    def __hash__(self) -> int:
        return hash((self._lower, self._upper))

    def __repr__(self) -> str:
        return f"Interval({self._lower}, {self._upper})"


def _as_interval(value) -> Interval:
    if isinstance(value, Interval):
        return value
    return Interval(Fraction(value))


@dataclass(frozen=True)
class RootEnclosure:
    """
    Four disjoint intervals I1 > I2 > I3 > I4, each holding one real root.

    ``coefficients`` are the (a, b, c, d) of the quartic the roots belong to,
    kept so the enclosure can be refined later.
    """

    coefficients: Tuple[Fraction, Fraction, Fraction, Fraction]
    intervals: Tuple[Interval, Interval, Interval, Interval]
    bits: int

    def root(self, j: int) -> Interval:
        """Enclosure of x_j (1-based, x1 largest)"""
        return self.intervals[j - 1]

    @property
    def width(self) -> Fraction:
        return max(iv.spread for iv in self.intervals)

    def is_ordered(self) -> bool:
        return all(
            self.intervals[k].lower > self.intervals[k + 1].upper for k in range(3)
        )
