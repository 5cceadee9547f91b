"""Closed-interval arithmetic with outward rounding.

Every operation returns an interval that contains the exact set image of its
operands, so composite expressions evaluated here enclose their true value.
Directed rounding is implemented without access to the FPU rounding mode:

* addition/subtraction use the 2Sum error-free transformation to decide
  whether the rounded result is exact, too low, or too high, and step one
  representable value outward only when needed;
* multiplication uses Dekker's TwoProduct (27-bit splitting) the same way;
* division and square root detect exactness by multiplying back, and
  otherwise step one value outward on both sides (IEEE 754 guarantees the
  rounded result is within half an ulp, so one step suffices);
* arccos is only faithfully rounded by libm, so its result is widened by
  _ACOS_SLOP representable values on each side.

Intervals whose endpoints are not finite poison downstream computation: any
arithmetic involving them returns ENTIRE, the whole real line.  Operations
applied entirely outside their domain raise DomainError; intervals that
merely straddle a domain boundary are intersected with the domain first and
evaluate soundly.
"""

from __future__ import annotations

import enum
import math

from .errors import DomainError

_INF = math.inf

# Widening applied to each side of libm arccos results.  glibc documents at
# most a few ulp of error for acos; two steps on each side is comfortably
# beyond any faithful implementation.
_ACOS_SLOP = 2

_PI_HI = math.nextafter(math.pi, _INF)  # true pi lies in [math.pi, _PI_HI]


def _two_sum(a: float, b: float) -> tuple[float, float]:
    # s + e == a + b exactly, provided no overflow.
    s = a + b
    t = s - a
    e = (a - (s - t)) + (b - t)
    return s, e


_SPLITTER = 134217729.0  # 2**27 + 1


def _two_prod(a: float, b: float) -> tuple[float, float]:
    # p + e == a * b exactly, provided no overflow/underflow of the splits.
    p = a * b
    c = _SPLITTER * a
    ah = c - (c - a)
    al = a - ah
    d = _SPLITTER * b
    bh = d - (d - b)
    bl = b - bh
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


def _add_down(a: float, b: float) -> float:
    s, e = _two_sum(a, b)
    if e < 0.0 or not math.isfinite(s):
        return math.nextafter(s, -_INF)
    return s


def _add_up(a: float, b: float) -> float:
    s, e = _two_sum(a, b)
    if e > 0.0 or not math.isfinite(s):
        return math.nextafter(s, _INF)
    return s


# Below the normal range Dekker's error term is itself subject to rounding,
# so exactness cannot be trusted there and results are widened outright.
_TINY = 2.2250738585072014e-308


def _mul_down(a: float, b: float) -> float:
    p, e = _two_prod(a, b)
    if not math.isfinite(p):
        return math.nextafter(p, -_INF)
    if p == 0.0:
        if a != 0.0 and b != 0.0 and (a > 0.0) != (b > 0.0):
            return math.nextafter(0.0, -_INF)
        return p
    if abs(p) < _TINY or e < 0.0:
        return math.nextafter(p, -_INF)
    return p


def _mul_up(a: float, b: float) -> float:
    p, e = _two_prod(a, b)
    if not math.isfinite(p):
        return math.nextafter(p, _INF)
    if p == 0.0:
        if a != 0.0 and b != 0.0 and (a > 0.0) == (b > 0.0):
            return math.nextafter(0.0, _INF)
        return p
    if abs(p) < _TINY or e > 0.0:
        return math.nextafter(p, _INF)
    return p


class TriBool(enum.Enum):
    """Three-valued truth of a predicate over every point of a box."""

    CERTAINLY_TRUE = "certainly_true"
    CERTAINLY_FALSE = "certainly_false"
    UNKNOWN = "unknown"

    def __bool__(self) -> bool:  # pragma: no cover - guard against misuse
        raise TypeError("TriBool must be compared explicitly, not truth-tested")

    def negate(self) -> "TriBool":
        if self is TriBool.CERTAINLY_TRUE:
            return TriBool.CERTAINLY_FALSE
        if self is TriBool.CERTAINLY_FALSE:
            return TriBool.CERTAINLY_TRUE
        return TriBool.UNKNOWN


def tri_and(*values: TriBool) -> TriBool:
    if any(v is TriBool.CERTAINLY_FALSE for v in values):
        return TriBool.CERTAINLY_FALSE
    if all(v is TriBool.CERTAINLY_TRUE for v in values):
        return TriBool.CERTAINLY_TRUE
    return TriBool.UNKNOWN


def tri_or(*values: TriBool) -> TriBool:
    if any(v is TriBool.CERTAINLY_TRUE for v in values):
        return TriBool.CERTAINLY_TRUE
    if all(v is TriBool.CERTAINLY_FALSE for v in values):
        return TriBool.CERTAINLY_FALSE
    return TriBool.UNKNOWN


class Interval:
    """A closed interval [lo, hi].  Instances are immutable by convention."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: float, hi: float):
        lo = float(lo)
        hi = float(hi)
        if math.isnan(lo) or math.isnan(hi):
            raise DomainError("interval endpoint is NaN")
        if lo > hi:
            raise DomainError(f"empty interval [{lo!r}, {hi!r}]")
        self.lo = lo
        self.hi = hi

    # -- constructors ------------------------------------------------------

    @classmethod
    def point(cls, value: float) -> "Interval":
        return cls(value, value)

    @classmethod
    def hull_of(cls, a: "Interval", b: "Interval") -> "Interval":
        return cls(min(a.lo, b.lo), max(a.hi, b.hi))

    # -- basic queries -----------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        if not self.is_finite:
            return 0.0
        mid = 0.5 * (self.lo + self.hi)
        if not math.isfinite(mid):
            mid = 0.5 * self.lo + 0.5 * self.hi
        # rounding may push the midpoint outside a one-ulp interval
        return min(max(mid, self.lo), self.hi)

    def contains(self, value: float) -> bool:
        return self.lo <= value <= self.hi

    def contains_interval(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def intersect(self, other: "Interval") -> "Interval | None":
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi:
            return None
        return Interval(lo, hi)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Interval):
            return self.lo == other.lo and self.hi == other.hi
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    def __repr__(self) -> str:
        return f"Interval({self.lo!r}, {self.hi!r})"

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(value: object) -> "Interval | None":
        if isinstance(value, Interval):
            return value
        if isinstance(value, (int, float)):
            return Interval.point(float(value))
        return None

    def __add__(self, other: object) -> "Interval":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not (self.is_finite and o.is_finite):
            return ENTIRE
        return Interval(_add_down(self.lo, o.lo), _add_up(self.hi, o.hi))

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other: object) -> "Interval":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not (self.is_finite and o.is_finite):
            return ENTIRE
        return Interval(_add_down(self.lo, -o.hi), _add_up(self.hi, -o.lo))

    def __rsub__(self, other: object) -> "Interval":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: object) -> "Interval":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not (self.is_finite and o.is_finite):
            return ENTIRE
        pairs = (
            (self.lo, o.lo),
            (self.lo, o.hi),
            (self.hi, o.lo),
            (self.hi, o.hi),
        )
        return Interval(
            min(_mul_down(a, b) for a, b in pairs),
            max(_mul_up(a, b) for a, b in pairs),
        )

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "Interval":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not (self.is_finite and o.is_finite):
            return ENTIRE
        if o.lo <= 0.0 <= o.hi:
            raise DomainError(f"division by interval containing zero: {o!r}")
        pairs = (
            (self.lo, o.lo),
            (self.lo, o.hi),
            (self.hi, o.lo),
            (self.hi, o.hi),
        )
        return Interval(
            min(_div_down(a, b) for a, b in pairs),
            max(_div_up(a, b) for a, b in pairs),
        )

    def __rtruediv__(self, other: object) -> "Interval":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __abs__(self) -> "Interval":
        if self.lo >= 0.0:
            return self
        if self.hi <= 0.0:
            return Interval(-self.hi, -self.lo)
        return Interval(0.0, max(-self.lo, self.hi))

    def square(self) -> "Interval":
        """x*x with the dependency between the factors taken into account."""
        if not self.is_finite:
            return ENTIRE
        if self.lo >= 0.0:
            return Interval(_mul_down(self.lo, self.lo), _mul_up(self.hi, self.hi))
        if self.hi <= 0.0:
            return Interval(_mul_down(self.hi, self.hi), _mul_up(self.lo, self.lo))
        big = max(-self.lo, self.hi)
        return Interval(0.0, _mul_up(big, big))

    def __pow__(self, exponent: int) -> "Interval":
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        if exponent == 0:
            return Interval(1.0, 1.0)
        if exponent == 2:
            return self.square()
        result = self
        for _ in range(exponent - 1):
            result = result * self
        return result

    def sqrt(self) -> "Interval":
        if not self.is_finite:
            return ENTIRE
        if self.hi < 0.0:
            raise DomainError(f"sqrt of negative interval {self!r}")
        lo = max(self.lo, 0.0)
        return Interval(_sqrt_down(lo), _sqrt_up(self.hi))

    def acos(self) -> "Interval":
        if not self.is_finite:
            return Interval(0.0, _PI_HI)
        lo_x = max(self.lo, -1.0)
        hi_x = min(self.hi, 1.0)
        if lo_x > hi_x:
            raise DomainError(f"arccos of interval outside [-1, 1]: {self!r}")
        lo = math.acos(hi_x)
        hi = math.acos(lo_x)
        for _ in range(_ACOS_SLOP):
            lo = math.nextafter(lo, -_INF)
            hi = math.nextafter(hi, _INF)
        return Interval(max(lo, 0.0), min(hi, _PI_HI))

    def min_with(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), min(self.hi, other.hi))

    def max_with(self, other: "Interval") -> "Interval":
        return Interval(max(self.lo, other.lo), max(self.hi, other.hi))

    # -- three-valued comparisons -------------------------------------------

    def tri_le(self, other: "Interval") -> TriBool:
        if self.hi <= other.lo:
            return TriBool.CERTAINLY_TRUE
        if self.lo > other.hi:
            return TriBool.CERTAINLY_FALSE
        return TriBool.UNKNOWN

    def tri_lt(self, other: "Interval") -> TriBool:
        if self.hi < other.lo:
            return TriBool.CERTAINLY_TRUE
        if self.lo >= other.hi:
            return TriBool.CERTAINLY_FALSE
        return TriBool.UNKNOWN

    def tri_ge(self, other: "Interval") -> TriBool:
        return other.tri_le(self)

    def tri_gt(self, other: "Interval") -> TriBool:
        return other.tri_lt(self)


def _exactly(p: float, e: float, target: float) -> bool:
    # IEEE results are within half an ulp, so when the multiply-back misses we
    # step a single value outward; when it hits exactly no step is needed.
    if p != target or e != 0.0:
        return False
    return p == 0.0 or abs(p) >= _TINY


def _sqrt_down(x: float) -> float:
    r = math.sqrt(x)
    p, e = _two_prod(r, r)
    if _exactly(p, e, x):
        return r
    return math.nextafter(r, -_INF)


def _sqrt_up(x: float) -> float:
    r = math.sqrt(x)
    p, e = _two_prod(r, r)
    if _exactly(p, e, x):
        return r
    return math.nextafter(r, _INF)


def _div_down(a: float, b: float) -> float:
    q = a / b
    p, e = _two_prod(q, b)
    if _exactly(p, e, a):
        return q
    return math.nextafter(q, -_INF)


def _div_up(a: float, b: float) -> float:
    q = a / b
    p, e = _two_prod(q, b)
    if _exactly(p, e, a):
        return q
    return math.nextafter(q, _INF)


ENTIRE = Interval(-_INF, _INF)
