"""Packing squares into the unit disk with a guaranteed area threshold.

Any finite set of axis-parallel squares with total area at most 8/5 is
packed, and 8/5 is best possible (two squares of side 2/sqrt(5) + eps fail
for every eps > 0).  The packer dispatches on the largest side s1:

* s1 <= 0.295: a concentric container square of side 1.388 takes all but the
  four largest squares by shelf packing; those four go to pockets centered
  on the container's sides.
* s1 <= 1/sqrt(2) and the four largest squares have total area >= 39/25:
  the four largest go to the quadrants of the inscribed square; the rest are
  shelf packed into a small container sitting on top of it.
* otherwise: s1 is packed topmost.  Later squares go into the two pockets
  beside s1 (refined shelf packing) when they fit, and otherwise into a
  stack of horizontal subcontainers below s1, each filled by vertical
  strips (refined shelf packing again).

Refined shelf packing places each square flush against its support cut and,
if the circle refuses the flush spot, slides it by the minimal amount toward
the horizontal diameter that makes it fit; the slide can only succeed in
shelves whose band reaches the diameter.

All placements carry a small admission tolerance (default 1e-9): corners may
exceed the unit circle by at most tol, which the validator accepts.  This
slack is essential at the critical instance, where corners land on the
circle up to roundoff.
"""

from __future__ import annotations

import enum
import math
import random
from bisect import bisect_left, insort
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .errors import InputError
from .geometry import (
    CONSTANTS,
    PlacedSquare,
    PocketGeometry,
    SQRT2,
    T_inv,
    pocket_geometry,
    squares_overlap,
)

DEFAULT_TOL = 1e-9
TRACE_LIMIT = 10_000

_C1_CONTAINER = 1.388
_C1_POCKET = 0.295
# lower-left corners of the four C1 pockets, in filling order
_C1_POCKET_ORIGINS = (
    (-_C1_POCKET / 2, _C1_CONTAINER / 2),   # top
    (-_C1_POCKET / 2, -_C1_CONTAINER / 2 - _C1_POCKET),  # bottom
    (-_C1_CONTAINER / 2 - _C1_POCKET, -_C1_POCKET / 2),  # left
    (_C1_CONTAINER / 2, -_C1_POCKET / 2),   # right
)
_C2_TOP4_AREA = 39.0 / 25.0
_C2_CELL = SQRT2 / 2
_C2_BOX = SQRT2 / 5


class FailReason(enum.Enum):
    AREA_EXCEEDS_GUARANTEE = "area-exceeds-guarantee"
    NO_PLACEMENT_FOUND = "no-placement-found"


@dataclass(frozen=True)
class Instance:
    """A packing instance: positive, finite square sides in input order."""

    sides: "tuple[float, ...]"

    def __post_init__(self) -> None:
        for i, s in enumerate(self.sides):
            if not isinstance(s, (int, float)) or not math.isfinite(s) or s <= 0:
                raise InputError(f"side {i} is {s!r}; sides must be finite and > 0")

    @property
    def total_area(self) -> float:
        return sum(s * s for s in self.sides)

    def __len__(self) -> int:
        return len(self.sides)


@dataclass(frozen=True)
class Packing:
    placements: "tuple[PlacedSquare, ...]"  # aligned with the input order
    case: str
    total_area: float


@dataclass(frozen=True)
class PackResult:
    ok: bool
    packing: Optional[Packing]
    failed_index: Optional[int]
    reason: Optional[FailReason]
    trace: "tuple[str, ...]"


def refined_shelf_place(
    side: float,
    x_lo: float,
    x_hi: float,
    y_min: float,
    y_max: float,
    flush: float,
    tol: float = DEFAULT_TOL,
) -> Optional[float]:
    """Bottom ordinate for a square of the given side and x-extent, as close
    to the flush ordinate as the disk and the structural bounds allow.

    y_min/y_max bound the square's bottom (cursors, band floor/ceiling);
    choosing the admissible ordinate nearest to flush realizes the minimal
    slide toward the diameter.  Returns None when no ordinate works."""
    xm = max(abs(x_lo), abs(x_hi))
    r2 = (1.0 + tol) * (1.0 + tol) - xm * xm
    if r2 < 0.0:
        return None
    reach = math.sqrt(r2)
    lo = max(y_min, -reach)
    hi = min(y_max, reach - side)
    if lo > hi:
        return None
    return min(max(flush, lo), hi)


def shelf_pack(
    width: float,
    height: float,
    sides: Sequence[float],
    tol: float = DEFAULT_TOL,
) -> "tuple[list[tuple[float, float]], Optional[int]]":
    """Classic shelf packing of nonincreasing sides into a width x height
    rectangle anchored at (0, 0).

    Returns the lower-left positions of the placed prefix and the index of
    the first side that did not fit (None if all fit).  Shelves run
    horizontally; each shelf's height is its first square."""
    positions: "list[tuple[float, float]]" = []
    shelf_y = 0.0
    shelf_h = 0.0
    cursor = 0.0
    for i, s in enumerate(sides):
        if s > width + tol:
            return positions, i
        if positions and s <= shelf_h and cursor + s <= width + tol:
            positions.append((cursor, shelf_y))
            cursor += s
            continue
        # open a new shelf (also handles the very first square)
        new_y = shelf_y + shelf_h
        if new_y + s > height + tol:
            return positions, i
        shelf_y, shelf_h, cursor = new_y, s, s
        positions.append((0.0, shelf_y))
    return positions, None


@dataclass
class _Shelf:
    y0: float
    height: float
    frontier: float  # outer x edge of the packed run


@dataclass
class _Strip:
    base: float   # inner x edge
    width: float
    cursor: float  # filling frontier ordinate


class _Pocket:
    """Refined shelf packing state for one pocket beside the top square.

    Shelves run parallel to the shorter straight boundary: horizontally
    (stacked upward from the pocket floor) when bx <= by, and as vertical
    strips (advancing outward) otherwise.  The circle itself bounds the
    pocket on the outside, so only the floor and the inner support are
    explicit."""

    def __init__(self, geo: PocketGeometry, direction: int, tol: float) -> None:
        self.geo = geo
        self.direction = direction  # +1 packs rightward (C_r), -1 leftward
        self.tol = tol
        self.horizontal = geo.bx <= geo.by
        self.inner_x = direction * geo.s1 / 2
        self.shelves: "list[_Shelf]" = []
        self.strips: "list[_Strip]" = []

    def _x_extent(self, inner: float, side: float) -> "tuple[float, float]":
        if self.direction > 0:
            return inner, inner + side
        return inner - side, inner

    def try_place(self, side: float) -> Optional[PlacedSquare]:
        if side > self.geo.sigma + self.tol:
            return None
        if self.horizontal:
            return self._try_shelves(side)
        return self._try_strips(side)

    def _try_shelves(self, side: float) -> Optional[PlacedSquare]:
        if self.shelves:
            sh = self.shelves[-1]
            if side <= sh.height + self.tol:
                x_lo, x_hi = self._x_extent(sh.frontier, side)
                y = refined_shelf_place(
                    side, x_lo, x_hi, sh.y0, sh.y0 + sh.height - side, sh.y0, self.tol
                )
                if y is not None:
                    sh.frontier += self.direction * side
                    return PlacedSquare(x_lo, y, side)
        floor = (
            self.shelves[-1].y0 + self.shelves[-1].height
            if self.shelves
            else self.geo.bottom_y
        )
        x_lo, x_hi = self._x_extent(self.inner_x, side)
        y = refined_shelf_place(side, x_lo, x_hi, floor, floor, floor, self.tol)
        if y is None:
            return None
        self.shelves.append(_Shelf(y0=floor, height=side, frontier=self.inner_x + self.direction * side))
        return PlacedSquare(x_lo, y, side)

    def _try_strips(self, side: float) -> Optional[PlacedSquare]:
        if self.strips:
            st = self.strips[-1]
            if side <= st.width + self.tol:
                x_lo, x_hi = self._x_extent(st.base, side)
                y = refined_shelf_place(
                    side, x_lo, x_hi, st.cursor, math.inf, st.cursor, self.tol
                )
                if y is not None:
                    st.cursor = y + side
                    return PlacedSquare(x_lo, y, side)
        base = (
            self.strips[-1].base + self.direction * self.strips[-1].width
            if self.strips
            else self.inner_x
        )
        x_lo, x_hi = self._x_extent(base, side)
        floor = self.geo.bottom_y
        y = refined_shelf_place(side, x_lo, x_hi, floor, math.inf, floor, self.tol)
        if y is None:
            return None
        self.strips.append(_Strip(base=base, width=side, cursor=y + side))
        return PlacedSquare(x_lo, y, side)


class _Subcontainer:
    """One horizontal slice of the bottom part, filled by vertical strips.

    The strip support is the horizontal cut closer to the disk center (the
    top cut on ties); squares stack away from it and may slide toward the
    diameter when the circle refuses the flush spot."""

    def __init__(self, top: float, height: float, tol: float) -> None:
        self.top = top
        self.height = height
        self.bottom = top - height
        self.tol = tol
        self.support_top = abs(top) <= abs(self.bottom)
        self.strips: "list[_Strip]" = []

    def _attempt(self, st: _Strip, side: float, is_new: bool) -> Optional[float]:
        x_lo, x_hi = st.base, st.base + side
        if self.support_top:
            flush = (self.top if is_new else st.cursor) - side
            return refined_shelf_place(
                side, x_lo, x_hi, self.bottom, flush, flush, self.tol
            )
        flush = self.bottom if is_new else st.cursor
        return refined_shelf_place(
            side, x_lo, x_hi, flush, self.top - side, flush, self.tol
        )

    def try_place(self, side: float) -> Optional[PlacedSquare]:
        if side > self.height + self.tol:
            return None
        if self.strips:
            st = self.strips[-1]
            if side <= st.width + self.tol:
                y = self._attempt(st, side, is_new=False)
                if y is not None:
                    st.cursor = y if self.support_top else y + side
                    return PlacedSquare(st.base, y, side)
        base = (
            self.strips[-1].base + self.strips[-1].width
            if self.strips
            else -_chord(self.top, self.height) / 2
        )
        st = _Strip(base=base, width=side, cursor=0.0)
        y = self._attempt(st, side, is_new=True)
        if y is None:
            return None
        st.cursor = y if self.support_top else y + side
        self.strips.append(st)
        return PlacedSquare(base, y, side)


def _chord(y_t: float, h: float) -> float:
    """Width of the disk band [y_t - h, y_t], clamped instead of raising so
    bands that poke out by a tolerance still get a (zero) width."""
    rad = min(1.0 - y_t * y_t, 1.0 - (y_t - h) * (y_t - h))
    return 2.0 * math.sqrt(max(rad, 0.0))


@dataclass
class PackState:
    """Working state of the topmost-square strategy."""

    s1: float
    tol: float
    geo: PocketGeometry
    pockets: "list[_Pocket]"
    subcontainers: "list[_Subcontainer]"
    trace: "list[str]"

    def note(self, text: str) -> None:
        if len(self.trace) < TRACE_LIMIT:
            self.trace.append(text)
        elif len(self.trace) == TRACE_LIMIT:
            self.trace.append("... trace truncated")


def top_pack_try(state: PackState, side: float) -> Optional[PlacedSquare]:
    """Try the left then the right pocket beside the top square."""
    for pocket, name in zip(state.pockets, ("pocket-left", "pocket-right")):
        sq = pocket.try_place(side)
        if sq is not None:
            state.note(f"side {side:.9g} -> {name} at ({sq.x:.9g}, {sq.y:.9g})")
            return sq
    return None


def bottom_pack(state: PackState, side: float) -> Optional[PlacedSquare]:
    """Place into the last subcontainer, or slice a new one below it."""
    if state.subcontainers:
        sq = state.subcontainers[-1].try_place(side)
        if sq is not None:
            state.note(
                f"side {side:.9g} -> subcontainer {len(state.subcontainers) - 1}"
                f" at ({sq.x:.9g}, {sq.y:.9g})"
            )
            return sq
        top_new = state.subcontainers[-1].bottom
    else:
        top_new = T_inv(state.s1)
    if top_new - side < -1.0 - state.tol:
        return None
    if _chord(top_new, side) < side - state.tol:
        return None
    sub = _Subcontainer(top_new, side, state.tol)
    sq = sub.try_place(side)
    if sq is None:
        return None
    state.subcontainers.append(sub)
    state.note(
        f"side {side:.9g} -> new subcontainer {len(state.subcontainers) - 1}"
        f" at ({sq.x:.9g}, {sq.y:.9g})"
    )
    return sq


def _instance(sides: Union[Instance, Sequence[float]]) -> Instance:
    if isinstance(sides, Instance):
        return sides
    return Instance(tuple(float(s) for s in sides))


def _sorted_order(sides: Sequence[float]) -> "list[int]":
    return sorted(range(len(sides)), key=lambda i: (-sides[i], i))


def _result(
    case: str,
    sides: Sequence[float],
    by_index: "dict[int, PlacedSquare]",
    trace: "list[str]",
    failed: Optional[int],
) -> PackResult:
    total = sum(s * s for s in sides)
    if failed is None:
        placements = tuple(by_index[i] for i in range(len(sides)))
        return PackResult(True, Packing(placements, case, total), None, None, tuple(trace))
    reason = (
        FailReason.AREA_EXCEEDS_GUARANTEE
        if total > CONSTANTS.critical_area
        else FailReason.NO_PLACEMENT_FOUND
    )
    return PackResult(False, None, failed, reason, tuple(trace))


def pack_c1(sides: Union[Instance, Sequence[float]], tol: float = DEFAULT_TOL) -> PackResult:
    """Concentric container of side 1.388 plus four side pockets; requires
    every side at most 0.295."""
    inst = _instance(sides)
    order = _sorted_order(inst.sides)
    trace: "list[str]" = []
    by_index: "dict[int, PlacedSquare]" = {}
    for slot, i in enumerate(order[:4]):
        ox, oy = _C1_POCKET_ORIGINS[slot]
        by_index[i] = PlacedSquare(ox, oy, inst.sides[i])
        trace.append(f"side {inst.sides[i]:.9g} -> container pocket {slot}")
    rest = order[4:]
    positions, fail = shelf_pack(
        _C1_CONTAINER, _C1_CONTAINER, [inst.sides[i] for i in rest], tol
    )
    for (px, py), i in zip(positions, rest):
        by_index[i] = PlacedSquare(
            px - _C1_CONTAINER / 2, py - _C1_CONTAINER / 2, inst.sides[i]
        )
    failed = None if fail is None else rest[fail]
    if fail is not None:
        trace.append(f"side {inst.sides[rest[fail]]:.9g} -> no shelf in container")
    return _result("C1", inst.sides, by_index, trace, failed)


def pack_c2(sides: Union[Instance, Sequence[float]], tol: float = DEFAULT_TOL) -> PackResult:
    """Four largest squares into the quadrants of the inscribed square, the
    rest shelf packed into a container of side sqrt(2)/5 on top of it."""
    inst = _instance(sides)
    order = _sorted_order(inst.sides)
    trace: "list[str]" = []
    by_index: "dict[int, PlacedSquare]" = {}
    # quadrant cells, each cornered at the disk center
    corners = ((-1, -1), (1, -1), (-1, 1), (1, 1))
    for slot, i in enumerate(order[:4]):
        s = inst.sides[i]
        cx, cy = corners[slot]
        by_index[i] = PlacedSquare(0.0 if cx > 0 else -s, 0.0 if cy > 0 else -s, s)
        trace.append(f"side {s:.9g} -> quadrant {slot}")
    rest = order[4:]
    positions, fail = shelf_pack(_C2_BOX, _C2_BOX, [inst.sides[i] for i in rest], tol)
    for (px, py), i in zip(positions, rest):
        by_index[i] = PlacedSquare(px - _C2_BOX / 2, py + _C2_CELL, inst.sides[i])
    failed = None if fail is None else rest[fail]
    if fail is not None:
        trace.append(f"side {inst.sides[rest[fail]]:.9g} -> no shelf in top container")
    return _result("C2", inst.sides, by_index, trace, failed)


def pack_c3(sides: Union[Instance, Sequence[float]], tol: float = DEFAULT_TOL) -> PackResult:
    """Topmost square plus pocket and subcontainer packing."""
    inst = _instance(sides)
    order = _sorted_order(inst.sides)
    s1 = inst.sides[order[0]]
    trace: "list[str]" = []
    by_index: "dict[int, PlacedSquare]" = {}
    if s1 > SQRT2 + 1e-12:
        return _result("C3", inst.sides, by_index, trace, order[0])
    geo = pocket_geometry(s1)
    state = PackState(
        s1=s1,
        tol=tol,
        geo=geo,
        pockets=[_Pocket(geo, -1, tol), _Pocket(geo, +1, tol)],
        subcontainers=[],
        trace=trace,
    )
    by_index[order[0]] = PlacedSquare(-s1 / 2, T_inv(s1), s1)
    state.note(f"side {s1:.9g} -> topmost")
    for i in order[1:]:
        s = inst.sides[i]
        sq = top_pack_try(state, s)
        if sq is None:
            sq = bottom_pack(state, s)
        if sq is None:
            state.note(f"side {s:.9g} -> no placement")
            return _result("C3", inst.sides, by_index, trace, i)
        by_index[i] = sq
    return _result("C3", inst.sides, by_index, trace, None)


def pack(sides: Union[Instance, Sequence[float]], tol: float = DEFAULT_TOL) -> PackResult:
    """Pack squares into the unit disk; guaranteed to succeed when the total
    area is at most 8/5.  Placements are returned in input order."""
    inst = _instance(sides)
    if not inst.sides:
        return PackResult(True, Packing((), "C3", 0.0), None, None, ())
    order = _sorted_order(inst.sides)
    s1 = inst.sides[order[0]]
    if s1 <= _C1_POCKET:
        return pack_c1(inst, tol)
    top4 = sum(inst.sides[i] ** 2 for i in order[:4])
    if s1 <= 1 / SQRT2 and top4 >= _C2_TOP4_AREA:
        return pack_c2(inst, tol)
    return pack_c3(inst, tol)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    checked: int
    containment_violations: "tuple[int, ...]"
    overlap_violations: "tuple[tuple[int, int], ...]"
    max_corner_norm: float


def validate(placements: Sequence[PlacedSquare], tol: float = DEFAULT_TOL) -> ValidationReport:
    """Check containment (corner norms at most 1 + tol) and pairwise
    disjointness (interiors shrunk by tol per side)."""
    n = len(placements)
    if n == 0:
        return ValidationReport(True, 0, (), (), 0.0)
    x = np.array([p.x for p in placements])
    y = np.array([p.y for p in placements])
    s = np.array([p.side for p in placements])
    mx = np.maximum(np.abs(x), np.abs(x + s))
    my = np.maximum(np.abs(y), np.abs(y + s))
    norms = np.hypot(mx, my)
    contained = norms <= 1.0 + tol
    containment = tuple(int(i) for i in np.nonzero(~contained)[0])

    overlaps: "list[tuple[int, int]]" = []
    # sweep over x with add/remove events; the active set is kept sorted by
    # bottom ordinate and scanned over a window of the tallest side
    events = []
    for i, p in enumerate(placements):
        events.append((p.x, 1, i))
        events.append((p.x2 - 2 * tol, 0, i))  # removes fire before adds
    events.sort()
    max_side = float(s.max())
    active: "list[tuple[float, int]]" = []
    for _, kind, i in events:
        p = placements[i]
        if kind == 0:
            pos = bisect_left(active, (p.y, i))
            if pos < len(active) and active[pos] == (p.y, i):
                active.pop(pos)
            continue
        lo = bisect_left(active, (p.y - max_side - 1e-15, -1))
        for yy, j in active[lo:]:
            if yy >= p.y2 - 2 * tol:
                break
            if squares_overlap(p, placements[j], tol):
                overlaps.append((min(i, j), max(i, j)))
        insort(active, (p.y, i))
    ok = not containment and not overlaps
    return ValidationReport(ok, n, containment, tuple(overlaps), float(norms.max()))


def gen_worst_case(eps: float = 0.0) -> Instance:
    """Two squares of side 2/sqrt(5) + eps: packable exactly when eps <= 0."""
    side = CONSTANTS.worst_side + eps
    if side <= 0:
        raise InputError(f"eps {eps!r} leaves no positive side")
    return Instance((side, side))


_DISTS = ("uniform", "powerlaw", "equal", "adversarial_top4")


def gen_random(seed: int, n: int, target_area: float, dist: str = "uniform") -> Instance:
    """Random instance with the given total area (within 1e-9).

    dist: 'uniform' draws sides uniformly, 'powerlaw' heavily favors small
    squares (u**4), 'equal' uses identical sides, and 'adversarial_top4'
    builds four equal large squares holding most of the area (stressing the
    39/25 dispatch boundary) plus equal small ones."""
    if n < 1:
        raise InputError(f"n must be >= 1, got {n}")
    if not math.isfinite(target_area) or target_area <= 0:
        raise InputError(f"target_area must be finite and > 0, got {target_area!r}")
    if dist not in _DISTS:
        raise InputError(f"unknown dist {dist!r}; expected one of {_DISTS}")
    rng = random.Random(seed)
    if dist == "adversarial_top4":
        if n < 4:
            raise InputError("adversarial_top4 needs n >= 4")
        if n == 4:
            a4 = target_area
        else:
            # push the four big squares toward the 39/25 dispatch boundary,
            # but always leave area for the small ones
            a4 = min(
                _C2_TOP4_AREA + 0.75 * (target_area - _C2_TOP4_AREA),
                0.999 * target_area,
            )
        big = math.sqrt(a4 / 4)
        sides = [big] * 4
        if n > 4:
            small = math.sqrt((target_area - a4) / (n - 4))
            sides += [small] * (n - 4)
    else:
        sides = []
        for _ in range(n):
            u = rng.random()
            while u == 0.0:
                u = rng.random()
            sides.append({"uniform": u, "powerlaw": u**4, "equal": 1.0}[dist])
        factor = math.sqrt(target_area / sum(s * s for s in sides))
        sides = [s * factor for s in sides]
    # absorb the scaling roundoff into the last square
    rest = sum(s * s for s in sides[:-1])
    sides[-1] = math.sqrt(max(target_area - rest, 1e-30))
    rng.shuffle(sides)
    return Instance(tuple(sides))
