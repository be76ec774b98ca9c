"""Exact rational scalars and rational-endpoint interval arithmetic.

Scalars are :class:`fractions.Fraction` (always in lowest terms, positive
denominator). Intervals are closed, carry exact rational endpoints and every
operation returns an enclosure of the exact image. The only inexact step is
the square root, which is rounded outward on a dyadic grid.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt
from numbers import Rational

DEFAULT_SQRT_WIDTH = Fraction(1, 2**256)


class DivisionByIntervalContainingZero(ZeroDivisionError):
    pass


class NegativeRadicand(ValueError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def _sqrt_floor(q: Fraction, scale: int) -> Fraction:
    # largest k/scale with (k/scale)^2 <= q
    return Fraction(isqrt(q.numerator * scale * scale // q.denominator), scale)


def _sqrt_ceil(q: Fraction, scale: int) -> Fraction:
    n = q.numerator * scale * scale
    d = q.denominator
    m = -(-n // d)
    k = isqrt(m)
    if k * k < m:
        k += 1
    return Fraction(k, scale)


def _exact_sqrt(q: Fraction) -> Fraction | None:
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def _scale_for(width: Fraction) -> int:
    # dyadic grid fine enough that one grid step is at most width / 2
    scale = 1
    while Fraction(2, scale) > width:
        scale <<= 1
    return scale


class Interval:
    """Closed interval ``[lo, hi]`` with exact rational endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = as_fraction(lo)
        hi = lo if hi is None else as_fraction(hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    @classmethod
    def coerce(cls, x) -> "Interval":
        return x if isinstance(x, Interval) else cls(x)

    # -- inspection -----------------------------------------------------
    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    __contains__ = contains

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def sign(self) -> int:
        """+1 / -1 when the interval excludes zero, 0 otherwise."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return 0

    def intersect(self, other: "Interval") -> "Interval | None":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return Interval(lo, hi) if lo <= hi else None

    def hull(self, other) -> "Interval":
        other = Interval.coerce(other)
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def __eq__(self, other):
        if not isinstance(other, Interval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __repr__(self):
        return f"Interval({self.lo}, {self.hi})"

    def __float__(self):
        return float(self.mid)

    # -- arithmetic -----------------------------------------------------
    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, Interval):
            return Interval(self.lo + other.lo, self.hi + other.hi)
        try:
            c = as_fraction(other)
        except TypeError:
            return NotImplemented
        return Interval(self.lo + c, self.hi + c)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Interval):
            return Interval(self.lo - other.hi, self.hi - other.lo)
        try:
            c = as_fraction(other)
        except TypeError:
            return NotImplemented
        return Interval(self.lo - c, self.hi - c)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Interval):
            a, b, c, d = self.lo, self.hi, other.lo, other.hi
            if a >= 0 and c >= 0:
                return Interval(a * c, b * d)
            ps = (a * c, a * d, b * c, b * d)
            return Interval(min(ps), max(ps))
        try:
            k = as_fraction(other)
        except TypeError:
            return NotImplemented
        if k >= 0:
            return Interval(self.lo * k, self.hi * k)
        return Interval(self.hi * k, self.lo * k)

    __rmul__ = __mul__

    def reciprocal(self) -> "Interval":
        if self.contains_zero():
            raise DivisionByIntervalContainingZero(f"1/{self!r}")
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        if isinstance(other, Interval):
            return self * other.reciprocal()
        try:
            k = as_fraction(other)
        except TypeError:
            return NotImplemented
        if k == 0:
            raise DivisionByIntervalContainingZero(f"{self!r}/0")
        return self * (1 / k)

    def __rtruediv__(self, other):
        return Interval.coerce(other) * self.reciprocal()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (self ** (-n)).reciprocal()
        if n == 0:
            return Interval(1)
        lo, hi = self.lo, self.hi
        if n % 2 == 1 or lo >= 0:
            return Interval(lo**n, hi**n)
        if hi <= 0:
            return Interval(hi**n, lo**n)
        return Interval(0, max(-lo, hi) ** n)

    def sqrt(self, width=None) -> "Interval":
        """Outward-rounded square root.

        The result exceeds the exact image by at most ``width`` in total.
        """
        if self.lo < 0:
            raise NegativeRadicand(f"sqrt of {self!r}")
        width = DEFAULT_SQRT_WIDTH if width is None else as_fraction(width)
        if width <= 0:
            raise ValueError("width bound must be positive")
        scale = _scale_for(width)
        lo = _exact_sqrt(self.lo)
        if lo is None:
            lo = _sqrt_floor(self.lo, scale)
        hi = _exact_sqrt(self.hi)
        if hi is None:
            hi = _sqrt_ceil(self.hi, scale)
        return Interval(lo, hi)


def interval_arith(op: str, a, b=None) -> Interval:
    """Dispatch helper: ``op`` in add, sub, mul, div, neg, int_pow."""
    a = Interval.coerce(a)
    if op == "neg":
        return -a
    if op == "int_pow":
        return a ** int(b)
    b = Interval.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown interval op {op!r}")


def interval_sqrt(a, width_bound=None) -> Interval:
    return Interval.coerce(a).sqrt(width_bound)


def isqrt_interval(x, width=None) -> Interval:
    """Enclosure of sqrt(x) for a single exact rational."""
    return Interval(as_fraction(x)).sqrt(width)


def sign(x) -> int:
    """Sign of an exact scalar, or certified sign of an interval (0 if undecided)."""
    if isinstance(x, Interval):
        return x.sign()
    return (x > 0) - (x < 0)


def decimal_digits(iv: Interval, max_digits: int = 40) -> tuple[str, int]:
    """Render an interval as a decimal string whose digits are all guaranteed.

    Returns ``(text, n)`` where ``n`` is the number of fractional digits
    printed: the interval width is below half a unit of the last printed
    digit and the rounded midpoint is within half a unit of every point.
    """
    mid = iv.mid
    best = None
    for n in range(0, max_digits + 1):
        unit = Fraction(1, 10**n)
        if iv.width >= unit / 2:
            break
        scaled = mid * 10**n
        k = (scaled.numerator * 2 + scaled.denominator) // (2 * scaled.denominator)
        approx = Fraction(k, 10**n)
        if abs(approx - iv.lo) <= unit / 2 and abs(approx - iv.hi) <= unit / 2:
            best = (k, n)
    if best is None:
        return f"~{float(mid):.3g}", 0
    k, n = best
    neg = k < 0
    k = abs(k)
    s = str(k).rjust(n + 1, "0")
    text = s[:-n] + "." + s[-n:] if n else s
    return ("-" if neg else "") + text, n
