"""Kind-generic numeric helpers.

The geometric formulas are written once and evaluated over four operand
kinds: Python floats (the packing path), numpy float arrays (bulk real
sampling), scalar Interval enclosures (constants and spot checks), and
IntervalArray lanes (the prover hot path).  The helpers here dispatch on the
operand kind so a formula body stays plain arithmetic plus sqrt/acos/min/max
and an occasional two-way branch.

Branches take the two outcomes as zero-argument callables.  On the float path
only the chosen side runs, so expressions that would leave their domain on
the dead side are never evaluated.  On enclosure paths an undecidable branch
condition evaluates both sides and returns their hull, which contains every
value either side could take.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .errors import DomainError
from .iarrays import IntervalArray
from .interval import ENTIRE, Interval, TriBool

Numeric = object  # float | np.ndarray | Interval | IntervalArray


def sqrt(x: Numeric) -> Numeric:
    if isinstance(x, (IntervalArray, Interval)):
        return x.sqrt()
    if isinstance(x, np.ndarray):
        with np.errstate(invalid="ignore"):
            return np.sqrt(x)
    if x < 0.0:
        raise DomainError(f"sqrt of negative value {x!r}")
    return math.sqrt(x)


def acos(x: Numeric) -> Numeric:
    if isinstance(x, (IntervalArray, Interval)):
        return x.acos()
    if isinstance(x, np.ndarray):
        with np.errstate(invalid="ignore"):
            return np.arccos(x)
    if not -1.0 <= x <= 1.0:
        raise DomainError(f"arccos of value outside [-1, 1]: {x!r}")
    return math.acos(x)


def square(x: Numeric) -> Numeric:
    if isinstance(x, (IntervalArray, Interval)):
        return x.square()
    return x * x


def smin(a: Numeric, b: Numeric) -> Numeric:
    if isinstance(a, IntervalArray):
        return a.min_with(b)
    if isinstance(b, IntervalArray):
        return b.min_with(a)
    if isinstance(a, Interval) or isinstance(b, Interval):
        ia = a if isinstance(a, Interval) else Interval.point(float(a))
        ib = b if isinstance(b, Interval) else Interval.point(float(b))
        return ia.min_with(ib)
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return np.minimum(a, b)
    return a if a < b else b


def smax(a: Numeric, b: Numeric) -> Numeric:
    if isinstance(a, IntervalArray):
        return a.max_with(b)
    if isinstance(b, IntervalArray):
        return b.max_with(a)
    if isinstance(a, Interval) or isinstance(b, Interval):
        ia = a if isinstance(a, Interval) else Interval.point(float(a))
        ib = b if isinstance(b, Interval) else Interval.point(float(b))
        return ia.max_with(ib)
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return np.maximum(a, b)
    return a if a > b else b


def lift(value: float, like: Numeric) -> Numeric:
    """A point constant of the same kind as ``like``."""
    if isinstance(like, IntervalArray):
        return IntervalArray.constant(float(value), float(value), like.shape)
    if isinstance(like, Interval):
        return Interval.point(float(value))
    return float(value)


def enclosure(iv: Interval, like: Numeric) -> Numeric:
    """An irrational constant, kind-matched to ``like``.

    On enclosure paths the full interval is kept; on real paths the midpoint
    is the conventional double approximation.
    """
    if isinstance(like, IntervalArray):
        return IntervalArray.constant(iv.lo, iv.hi, like.shape)
    if isinstance(like, Interval):
        return iv
    return iv.midpoint


def _pair(value: Numeric) -> "tuple[object, object]":
    if isinstance(value, (IntervalArray, Interval)):
        return value.lo, value.hi
    f = float(value)
    return f, f


def _interval_branch(
    tri: TriBool, if_true: Callable[[], Interval], if_false: Callable[[], Interval]
) -> Interval:
    if tri is TriBool.CERTAINLY_TRUE:
        return if_true()
    if tri is TriBool.CERTAINLY_FALSE:
        return if_false()
    try:
        a = if_true()
    except DomainError:
        a = ENTIRE
    try:
        b = if_false()
    except DomainError:
        b = ENTIRE
    return Interval.hull_of(a, b)


def _array_branch(
    ct: np.ndarray,
    cf: np.ndarray,
    if_true: Callable[[], IntervalArray],
    if_false: Callable[[], IntervalArray],
) -> IntervalArray:
    # Chunks cover nearby boxes, so a branch condition usually resolves the
    # same way across all lanes; skip the dead side entirely then.
    if ct.all():
        return if_true()
    if cf.all():
        return if_false()
    a = if_true()
    b = if_false()
    lo = np.where(ct, a.lo, np.where(cf, b.lo, np.minimum(a.lo, b.lo)))
    hi = np.where(ct, a.hi, np.where(cf, b.hi, np.maximum(a.hi, b.hi)))
    return IntervalArray(lo, hi)


def branch_le(
    lhs: Numeric,
    rhs: Numeric,
    if_true: Callable[[], Numeric],
    if_false: Callable[[], Numeric],
) -> Numeric:
    """Evaluate ``if_true`` where lhs <= rhs, ``if_false`` elsewhere."""
    if isinstance(lhs, IntervalArray):
        rlo, rhi = _pair(rhs)
        return _array_branch(lhs.hi <= rlo, lhs.lo > rhi, if_true, if_false)
    if isinstance(lhs, Interval):
        r = rhs if isinstance(rhs, Interval) else Interval.point(float(rhs))
        return _interval_branch(lhs.tri_le(r), if_true, if_false)
    if isinstance(lhs, np.ndarray):
        return np.where(lhs <= rhs, if_true(), if_false())
    return if_true() if lhs <= rhs else if_false()


def branch_lt(
    lhs: Numeric,
    rhs: Numeric,
    if_true: Callable[[], Numeric],
    if_false: Callable[[], Numeric],
) -> Numeric:
    """Evaluate ``if_true`` where lhs < rhs, ``if_false`` elsewhere."""
    if isinstance(lhs, IntervalArray):
        rlo, rhi = _pair(rhs)
        return _array_branch(lhs.hi < rlo, lhs.lo >= rhi, if_true, if_false)
    if isinstance(lhs, Interval):
        r = rhs if isinstance(rhs, Interval) else Interval.point(float(rhs))
        return _interval_branch(lhs.tri_lt(r), if_true, if_false)
    if isinstance(lhs, np.ndarray):
        return np.where(lhs < rhs, if_true(), if_false())
    return if_true() if lhs < rhs else if_false()
