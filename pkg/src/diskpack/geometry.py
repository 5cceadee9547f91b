"""Closed-form disk geometry shared by the packer and the verifier.

The unit disk is centered at the origin with y growing upward.  Every
function here is written against the kind-generic helpers in scalars, so one
formula body serves plain floats (packing), numpy arrays (bulk sampling) and
interval kinds (verified enclosures).  Float arguments get strict domain
checks; enclosure kinds clamp partial overshoot instead, which extends each
function continuously across the domain boundary and keeps slightly-too-wide
boxes evaluable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .interval import Interval
from .scalars import (
    Numeric,
    acos,
    branch_le,
    enclosure,
    smax,
    smin,
    sqrt,
    square,
)

_TWO = Interval.point(2.0)

# Pocket regime threshold: sqrt((2 + sqrt(2)) / 3).  Below it the largest
# square inscribed in a pocket rests on the pocket bottom; above it the
# square centers vertically on the diameter and the pocket is used only down
# to the square's bottom edge.
S1_STAR_ENCLOSURE = ((_TWO + _TWO.sqrt()) / Interval.point(3.0)).sqrt()
S1_STAR = S1_STAR_ENCLOSURE.midpoint

# sqrt((11 + 6*sqrt(3)) / 13): the side above which the topmost square's
# bottom corners leave the inscribed-square region.  Documented constant
# only; no algorithm branch depends on it.
S1_PRIME_ENCLOSURE = (
    (Interval.point(11.0) + 6 * Interval.point(3.0).sqrt()) / Interval.point(13.0)
).sqrt()
S1_PRIME = S1_PRIME_ENCLOSURE.midpoint

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class DiskConstants:
    critical_area: float
    critical_density: float
    worst_side: float
    s1_star: float
    s1_prime: float


CONSTANTS = DiskConstants(
    critical_area=8.0 / 5.0,
    critical_density=8.0 / (5.0 * math.pi),
    worst_side=2.0 / math.sqrt(5.0),
    s1_star=S1_STAR,
    s1_prime=S1_PRIME,
)


def _real(*values: object) -> bool:
    return all(isinstance(v, (int, float)) for v in values)


def T(u: Numeric) -> Numeric:
    """Side of the largest axis-parallel square centered on x = 0 with its
    bottom edge on the line y = u, inside the unit disk; 0 when no square
    fits."""
    if _real(u) and not -1.0 <= u <= 1.0:
        raise DomainError(f"T: ordinate {u!r} outside [-1, 1]")
    return smax(0.0, (2 * (sqrt(5 - square(u)) - 2 * u)) / 5)


def T_inv(s: Numeric) -> Numeric:
    """Ordinate of the bottom edge of a horizontally centered square of side
    s pushed as high as possible (top corners on the circle)."""
    if _real(s) and not 0.0 < s <= SQRT2 + 1e-9:
        raise DomainError(f"T_inv: side {s!r} outside (0, sqrt(2)]")
    return sqrt(1 - square(s) / 4) - s


def ell1(s1: Numeric) -> Numeric:
    """Length of the straight bottom boundary of the pocket beside a topmost
    square of side s1: chord half-length at the square's bottom line, minus
    half the square."""
    ti = T_inv(s1)
    return sqrt(smax(1 - square(ti), 0.0)) - s1 / 2


def sigma(s1: Numeric) -> Numeric:
    """Side of the largest axis-parallel square fitting in a pocket beside
    the topmost square of side s1.

    Two regimes split at S1_STAR.  Below it the inscribed square rests on
    the pocket bottom y = T_inv(s1) flush against s1, so its outer top
    corner pins it: (s1/2 + x)^2 + (T_inv(s1) + x)^2 = 1.  Above it the
    square centers vertically on the diameter instead:
    (s1/2 + x)^2 + (x/2)^2 = 1.
    """
    if _real(s1) and not 0.0 < s1 < 2.0:
        raise DomainError(f"sigma: side {s1!r} outside (0, 2)")
    thr = enclosure(S1_STAR_ENCLOSURE, s1)

    def resting() -> Numeric:
        ti = T_inv(s1)
        d = s1 - 2 * ti
        return (-s1 - 2 * ti + sqrt(smax(8 - square(d), 0.0))) / 4

    def centered() -> Numeric:
        return (sqrt(20 - square(s1)) - 2 * s1) / 5

    return branch_le(s1, thr, resting, centered)


def segment_area_below(c: Numeric) -> Numeric:
    """arccos(c) - c*sqrt(1 - c^2): the disk area on the far side of the
    horizontal line y = c, i.e. the area of {y >= c}.  Callers measuring the
    area below a cut at ordinate t pass c = -t."""
    if _real(c) and not -1.0 <= c <= 1.0:
        raise DomainError(f"segment_area_below: cut {c!r} outside [-1, 1]")
    return acos(c) - c * sqrt(smax(1 - square(c), 0.0))


def chord_width(y_t: Numeric, h: Numeric) -> Numeric:
    """Width of the widest axis-parallel rectangle of height h with top edge
    at ordinate y_t inside the disk (the chord at the narrower of its two
    edges)."""
    rad = smin(1 - square(y_t), 1 - square(y_t - h))
    if _real(rad) and rad < 0.0:
        raise DomainError(f"chord_width: band [{y_t!r} - {h!r}, {y_t!r}] outside disk")
    return 2 * sqrt(smax(rad, 0.0))


def x_max(a: Numeric, b: Numeric, u: Numeric) -> Numeric:
    """Largest abscissa for the left side of a square of side u confined to
    the horizontal band [b, a] of the disk.  With c = min(a, -b): if the
    square can straddle the diameter (u <= 2c) it slides to the vertically
    centered position; otherwise it sits flush at the nearer cut and its far
    corners pin it to the circle."""
    c = smin(a, -b)

    def centered() -> Numeric:
        return T_inv(u)

    def flush() -> Numeric:
        rad = 1 - square(u - c)
        if _real(rad) and rad < 0.0:
            raise DomainError(f"x_max: side {u!r} does not fit the band [{b!r}, {a!r}]")
        return sqrt(smax(rad, 0.0)) - u

    return branch_le(u, 2 * c, centered, flush)


def y_residual(a: Numeric, h: Numeric, w: Numeric, h_next: Numeric) -> Numeric:
    """Lower bound on the total packed width along a subcontainer of top
    ordinate a, height h and inscribed width w, at the moment a square of
    side h_next no longer fits.  May be negative."""
    return w / 2 - h + x_max(a, a - h, h_next)


def z_below(s1: Numeric, heights: "list[Numeric]") -> Numeric:
    """Side of the largest square placeable below the stack of subcontainers
    of the given heights hanging under the topmost square s1; 0 once the
    stack reaches the bottom of the disk."""
    total = sum(heights) if heights else 0.0
    return T(smin(-T_inv(s1) + total, 1.0))


@dataclass(frozen=True)
class PocketGeometry:
    """Straight-boundary data of the pocket beside the topmost square.

    bx and by are the lengths of the horizontal and vertical straight
    boundaries; bottom_y is the ordinate of the pocket's usable bottom.
    Below S1_STAR the bottom is the square's own bottom line; above it the
    pocket is truncated at the bottom edge of its inscribed square, where
    the horizontal boundary length works out to exactly sigma.
    """

    s1: float
    sigma: float
    ell1: float
    bx: float
    by: float
    bottom_y: float


def pocket_geometry(s1: float) -> PocketGeometry:
    sg = sigma(s1)
    l1 = ell1(s1)
    ti = T_inv(s1)
    if s1 <= S1_STAR:
        return PocketGeometry(s1=s1, sigma=sg, ell1=l1, bx=l1, by=s1, bottom_y=ti)
    return PocketGeometry(
        s1=s1, sigma=sg, ell1=l1, bx=sg, by=ti + s1 + sg / 2, bottom_y=-sg / 2
    )


@dataclass(frozen=True)
class PlacedSquare:
    """Axis-parallel square given by its lower-left corner and side."""

    x: float
    y: float
    side: float

    @property
    def x2(self) -> float:
        return self.x + self.side

    @property
    def y2(self) -> float:
        return self.y + self.side

    def far_corner_norm(self) -> float:
        return math.hypot(
            max(abs(self.x), abs(self.x2)), max(abs(self.y), abs(self.y2))
        )


def square_in_disk(sq: PlacedSquare, tol: float = 1e-9) -> bool:
    """True iff all four corners lie within distance 1 + tol of the center."""
    return sq.far_corner_norm() <= 1.0 + tol


def squares_overlap(p: PlacedSquare, q: PlacedSquare, tol: float = 1e-9) -> bool:
    """True iff the interiors still intersect after shrinking each square by
    tol on every side (shared edges do not count as overlap)."""
    return (
        min(p.x2, q.x2) - max(p.x, q.x) > 2 * tol
        and min(p.y2, q.y2) - max(p.y, q.y) > 2 * tol
    )
