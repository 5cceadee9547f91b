"""Independent reference computations used to freeze expected values.

Everything here is built from first principles -- geometric fit predicates
driven by bisection, or high-precision mpmath evaluation of independently
re-derived expressions -- without importing the closed forms under test, so
agreement between the two is evidence rather than tautology.

Coordinate conventions (shared with the library): unit disk centered at the
origin; the topmost square of side ``s1`` spans ``[-s1/2, s1/2]`` in x with
its two top corners on the circle, so its bottom edge sits on the line
``y = sqrt(1 - s1^2/4) - s1``.
"""

from __future__ import annotations

import math

import mpmath as mp


def bottom_line(s1: float) -> float:
    """Bottom ordinate of the topmost square (top corners on the circle)."""
    return math.sqrt(1.0 - s1 * s1 / 4.0) - s1


def pocket_square_fits(s1: float, t: float) -> bool:
    """Fit predicate for a square of side t in the pocket right of the
    topmost square: left edge on x = s1/2, bottom ordinate no lower than the
    topmost square's bottom line, all four corners inside the unit circle.

    The best vertical position is the one minimizing the larger |y| of the
    two right corners: centered on the diameter when the floor allows,
    resting on the floor otherwise."""
    floor = bottom_line(s1)
    y0 = max(floor, -t / 2.0)
    x = s1 / 2.0 + t
    y = max(abs(y0), abs(y0 + t))
    return x * x + y * y <= 1.0


def sigma_bisect(s1: float, steps: int = 60) -> float:
    """Side of the largest pocket square, by bisection on the fit predicate
    alone (no closed form).  60 steps resolve 2^-60 < 1e-18."""
    lo, hi = 0.0, 1.0
    for _ in range(steps):
        mid = (lo + hi) / 2.0
        if pocket_square_fits(s1, mid):
            lo = mid
        else:
            hi = mid
    return lo


def mp_sigma(s1: "str | float", dps: int = 60) -> mp.mpf:
    """High-precision pocket-square side via the same fit predicate."""
    with mp.workdps(dps):
        v = mp.mpf(s1)
        floor = mp.sqrt(1 - v * v / 4) - v

        def fits(t: mp.mpf) -> bool:
            y0 = max(floor, -t / 2)
            x = v / 2 + t
            y = max(abs(y0), abs(y0 + t))
            return x * x + y * y <= 1

        lo, hi = mp.mpf(0), mp.mpf(1)
        for _ in range(220):  # 2^-220 ~ 1e-67
            mid = (lo + hi) / 2
            if fits(mid):
                lo = mid
            else:
                hi = mid
        return lo


def s1_star_bisect(dps: int = 60) -> mp.mpf:
    """Crossover s1 where the pocket square stops resting on the bottom line
    and becomes centered on the diameter: the floor equals -sigma/2 there."""
    with mp.workdps(dps):

        def gap(s1: mp.mpf) -> mp.mpf:
            floor = mp.sqrt(1 - s1 * s1 / 4) - s1
            return floor + mp_sigma(s1, dps) / 2

        lo, hi = mp.mpf("0.9"), mp.mpf("1.2")
        # gap is decreasing in s1 (floor falls faster than sigma/2 grows)
        for _ in range(200):
            mid = (lo + hi) / 2
            if gap(mid) > 0:
                lo = mid
            else:
                hi = mid
        return (lo + hi) / 2


def mp_T(u: "str | float", dps: int = 60) -> mp.mpf:
    """Side of the square with bottom edge on y = u and top corners on the
    circle: solve (s/2)^2 + (u + s)^2 = 1 for the positive root."""
    with mp.workdps(dps):
        uu = mp.mpf(u)
        # (5/4) s^2 + 2 u s + (u^2 - 1) = 0
        disc = 4 * uu * uu - 5 * (uu * uu - 1)
        s = (-2 * uu + mp.sqrt(disc)) / mp.mpf("2.5")
        return max(s, mp.mpf(0))


def mp_T_inv(s: "str | float", dps: int = 60) -> mp.mpf:
    """Bottom ordinate of the topmost square of side s (top corners on the
    circle)."""
    with mp.workdps(dps):
        v = mp.mpf(s)
        return mp.sqrt(1 - v * v / 4) - v


def mp_segment_area(c: "str | float", dps: int = 60) -> mp.mpf:
    """Area of the disk part above y = c, by direct chord-length
    integration (independent of the acos closed form)."""
    with mp.workdps(dps):
        cc = mp.mpf(c)
        return mp.quad(lambda y: 2 * mp.sqrt(1 - y * y), [cc, 1])


def mp_ell1(s1: "str | float", dps: int = 60) -> mp.mpf:
    """Pocket width at the bottom line: half-chord minus half the square."""
    with mp.workdps(dps):
        v = mp.mpf(s1)
        a = mp_T_inv(v, dps)
        return mp.sqrt(1 - a * a) - v / 2


if __name__ == "__main__":
    # regenerate the frozen literals used in the tests
    mp.mp.dps = 40
    star = s1_star_bisect()
    print(f"s1_star           = {mp.nstr(star, 22)}")
    for tag in ("0.295", "0.5", "1.0", "1.2"):
        print(f"sigma({tag:5s})      = {mp.nstr(mp_sigma(tag), 22)}")
    print(f"sigma(sqrt(8/5))  = {mp.nstr(mp_sigma(mp.sqrt(mp.mpf(8) / 5)), 22)}")
    print(f"T(0)              = {mp.nstr(mp_T('0'), 22)}")
    print(f"T(0.25)           = {mp.nstr(mp_T('0.25'), 22)}")
    print(f"T_inv(0.295)      = {mp.nstr(mp_T_inv('0.295'), 22)}")
    print(f"T_inv(1.0)        = {mp.nstr(mp_T_inv('1.0'), 22)}")
    print(f"ell1(0.295)       = {mp.nstr(mp_ell1('0.295'), 22)}")
    print(f"ell1(1.0)         = {mp.nstr(mp_ell1('1.0'), 22)}")
    print(f"segment_area(0)   = {mp.nstr(mp_segment_area('0'), 22)}")
    print(f"segment_area(0.3) = {mp.nstr(mp_segment_area('0.3'), 22)}")
    print(f"segment_area(-0.5)= {mp.nstr(mp_segment_area('-0.5'), 22)}")
