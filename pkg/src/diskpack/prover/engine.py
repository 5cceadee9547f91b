"""Branch-and-prune proving of inequalities over boxes.

A ConstraintSystem states: for all variable values in the given ranges that
satisfy every hypothesis, the conclusion holds.  prove() explores the range
box with interval arithmetic: a sub-box is discarded when some hypothesis
certainly fails on it or the conclusion certainly holds on it; otherwise it
is bisected.  Boxes that reach the depth or width floor undecided are
reported (the statement is then not established at this resolution).  When
the conclusion certainly fails somewhere, real-valued midpoint evaluation
hunts for a concrete counterexample.

Boxes are processed in chunks: a chunk is a set of boxes of (essentially)
equal per-variable widths stored as two lane-major arrays, so every formula
evaluates vectorized across lanes.  Hypotheses marked cheap touch only raw
variables and run before the derived quantities are computed; surviving
lanes are compacted first, which keeps the expensive formulas off refuted
regions.

All expression callbacks receive an environment dict and must be written
against the kind-generic scalar helpers, so the same callback serves the
interval sweep (IntervalArray), the midpoint hunt (numpy arrays) and
single-point confirmation (floats).
"""

from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from ..errors import ContractError, DiskpackError
from ..iarrays import IntervalArray


@dataclass(frozen=True)
class Variable:
    name: str
    lo: float
    hi: float
    min_width: Optional[float] = None  # overrides ProverConfig.min_width

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)) or self.lo > self.hi:
            raise ContractError(f"variable {self.name}: bad range [{self.lo}, {self.hi}]")


_OPS = ("<", "<=", ">", ">=")


@dataclass(frozen=True)
class Relation:
    """`fn(env) op bound`, evaluated on intervals (certainty masks) or on
    real points (plain booleans)."""

    label: str
    fn: Callable[[dict], object]
    op: str
    bound: float = 0.0
    cheap: bool = False

    def __post_init__(self) -> None:
        if self.op not in _OPS:
            raise ContractError(f"relation {self.label!r}: unknown op {self.op!r}")

    def certs(self, env: dict) -> "tuple[np.ndarray, np.ndarray]":
        v = self.fn(env)
        if self.op == "<=":
            return v.cert_le(self.bound), v.cert_gt(self.bound)
        if self.op == "<":
            return v.cert_lt(self.bound), v.cert_ge(self.bound)
        if self.op == ">":
            return v.cert_gt(self.bound), v.cert_le(self.bound)
        return v.cert_ge(self.bound), v.cert_lt(self.bound)

    def holds(self, env: dict):
        v = self.fn(env)
        if self.op == "<=":
            return v <= self.bound
        if self.op == "<":
            return v < self.bound
        if self.op == ">":
            return v > self.bound
        return v >= self.bound


@dataclass(frozen=True)
class OrRelation:
    """Disjunction of relations: certainly true when some part is, certainly
    false when all parts are."""

    label: str
    parts: "tuple[Relation, ...]"
    cheap: bool = False

    def certs(self, env: dict) -> "tuple[np.ndarray, np.ndarray]":
        ct = cf = None
        for p in self.parts:
            pct, pcf = p.certs(env)
            ct = pct if ct is None else np.logical_or(ct, pct)
            cf = pcf if cf is None else np.logical_and(cf, pcf)
        return ct, cf

    def holds(self, env: dict):
        out = None
        for p in self.parts:
            h = p.holds(env)
            out = h if out is None else np.logical_or(out, h)
        return out


Hypothesis = Union[Relation, OrRelation]


class SplitPolicy(enum.Enum):
    EARLIEST = "earliest"
    WIDEST = "widest"


@dataclass(frozen=True)
class ProverConfig:
    max_depth: int = 60
    min_width: float = 1e-4
    split_policy: SplitPolicy = SplitPolicy.EARLIEST
    worker_count: int = 1
    chunk_lanes: int = 8192
    undecided_cap: int = 64


class ProofStatus(enum.Enum):
    PROVED = "proved"
    DISPROVED = "disproved"
    UNDECIDED = "undecided"


@dataclass
class ProofStats:
    boxes_explored: int = 0
    boxes_pruned: int = 0
    max_depth_reached: int = 0
    undecided_count: int = 0
    peak_lanes: int = 0
    wall_time_s: float = 0.0

    def merge(self, other: "ProofStats") -> None:
        self.boxes_explored += other.boxes_explored
        self.boxes_pruned += other.boxes_pruned
        self.max_depth_reached = max(self.max_depth_reached, other.max_depth_reached)
        self.undecided_count += other.undecided_count
        self.peak_lanes = max(self.peak_lanes, other.peak_lanes)


@dataclass(frozen=True)
class ProofResult:
    name: str
    status: ProofStatus
    stats: ProofStats
    counterexample: Optional["dict[str, float]"] = None
    undecided_boxes: "tuple[dict[str, tuple[float, float]], ...]" = ()


@dataclass(frozen=True)
class ConstraintSystem:
    """For all assignments in the variable ranges satisfying every
    hypothesis, the conclusion holds.  prepare() may add derived entries to
    the environment for the non-cheap relations and the conclusion."""

    name: str
    variables: "tuple[Variable, ...]"
    hypotheses: "tuple[Hypothesis, ...]"
    conclusion: Relation
    prepare: Optional[Callable[[dict], dict]] = None
    default_config: Optional[ProverConfig] = None


def _env_from(system: ConstraintSystem, lo: np.ndarray, hi: np.ndarray) -> dict:
    return {
        v.name: IntervalArray(np.ascontiguousarray(lo[:, j]), np.ascontiguousarray(hi[:, j]))
        for j, v in enumerate(system.variables)
    }


def _prepared(system: ConstraintSystem, env: dict) -> dict:
    return system.prepare(env) if system.prepare is not None else env


def _compact_env(env: dict, keep: np.ndarray) -> dict:
    return {
        k: IntervalArray(v.lo[keep], v.hi[keep]) if isinstance(v, IntervalArray) else v
        for k, v in env.items()
    }


def _real_counterexample(
    system: ConstraintSystem, mids: np.ndarray
) -> Optional["dict[str, float]"]:
    """Evaluate hypotheses and conclusion on real points; return the first
    point satisfying every hypothesis and violating the conclusion."""
    with np.errstate(all="ignore"):
        env = {v.name: mids[:, j] for j, v in enumerate(system.variables)}
        env = _prepared(system, env)
        ok = np.ones(mids.shape[0], dtype=bool)
        for rel in system.hypotheses:
            ok &= np.asarray(rel.holds(env), dtype=bool)
        bad = ok & ~np.asarray(system.conclusion.holds(env), dtype=bool)
    hits = np.flatnonzero(bad)
    if hits.size == 0:
        return None
    k = int(hits[0])
    return {v.name: float(mids[k, j]) for j, v in enumerate(system.variables)}


def confirm_counterexample(system: ConstraintSystem, point: "dict[str, float]") -> bool:
    """True iff the real point satisfies every hypothesis and violates the
    conclusion (domain errors count as not confirmed)."""
    env = {v.name: float(point[v.name]) for v in system.variables}
    try:
        env = _prepared(system, env)
        for rel in system.hypotheses:
            if not rel.holds(env):
                return False
        return not system.conclusion.holds(env)
    except DiskpackError:
        return False


def _split_index(widths: np.ndarray, minw: np.ndarray, policy: SplitPolicy) -> int:
    splittable = widths > minw
    if not splittable.any():
        return int(np.argmax(widths / minw))
    if policy is SplitPolicy.EARLIEST:
        return int(np.argmax(splittable))
    ratios = np.where(splittable, widths / minw, -np.inf)
    return int(np.argmax(ratios))


def _box_dict(system: ConstraintSystem, lo: np.ndarray, hi: np.ndarray) -> dict:
    return {
        v.name: (float(lo[j]), float(hi[j])) for j, v in enumerate(system.variables)
    }


def _search(
    system: ConstraintSystem,
    config: ProverConfig,
    lo0: np.ndarray,
    hi0: np.ndarray,
) -> ProofResult:
    nv = len(system.variables)
    minw = np.array(
        [v.min_width if v.min_width is not None else config.min_width for v in system.variables]
    )
    cheap = [h for h in system.hypotheses if h.cheap]
    main = [h for h in system.hypotheses if not h.cheap]
    stats = ProofStats()
    undecided: "list[dict]" = []
    stack = [(0, lo0.reshape(1, nv), hi0.reshape(1, nv))]
    lanes_resident = 1

    while stack:
        depth, LO, HI = stack.pop()
        # Same-depth boxes share one width vector (the split choice depends
        # only on widths, which depend only on depth), so merging trailing
        # same-depth chunks is lossless and keeps the lanes vectorized.
        if stack and stack[-1][0] == depth and LO.shape[0] < config.chunk_lanes:
            group = [LO]
            group_hi = [HI]
            total = LO.shape[0]
            while stack and stack[-1][0] == depth and total < config.chunk_lanes:
                _, lo2, hi2 = stack.pop()
                group.append(lo2)
                group_hi.append(hi2)
                total += lo2.shape[0]
            LO = np.concatenate(group)
            HI = np.concatenate(group_hi)
        lanes = LO.shape[0]
        stats.peak_lanes = max(stats.peak_lanes, lanes_resident)
        lanes_resident -= lanes
        stats.boxes_explored += lanes
        stats.max_depth_reached = max(stats.max_depth_reached, depth)

        env = _env_from(system, LO, HI)
        alive = np.ones(lanes, dtype=bool)
        for rel in cheap:
            _, cf = rel.certs(env)
            alive &= ~cf
            if not alive.any():
                break
        idx = np.flatnonzero(alive)
        stats.boxes_pruned += lanes - idx.size
        if idx.size == 0:
            continue
        LOa, HIa = LO[idx], HI[idx]
        env = _prepared(system, _env_from(system, LOa, HIa))
        alive = np.ones(idx.size, dtype=bool)
        for rel in main:
            _, cf = rel.certs(env)
            alive &= ~cf
        aidx = np.flatnonzero(alive)
        stats.boxes_pruned += idx.size - aidx.size
        if aidx.size == 0:
            continue
        if aidx.size < idx.size:
            # The conclusion is the expensive formula; evaluate it only on
            # lanes that survived every hypothesis.
            env = _compact_env(env, aidx)
            LOa, HIa = LOa[aidx], HIa[aidx]
        concl_ct, concl_cf = system.conclusion.certs(env)
        sidx = np.flatnonzero(~concl_ct)
        stats.boxes_pruned += aidx.size - sidx.size
        if sidx.size == 0:
            continue
        LOs, HIs = LOa[sidx], HIa[sidx]

        widths = (HIs - LOs).max(axis=0)
        at_floor = bool(np.all(widths <= minw))
        is_leaf = depth >= config.max_depth or at_floor

        cand = np.arange(sidx.size) if is_leaf else np.flatnonzero(concl_cf[sidx])
        if cand.size:
            cex = _real_counterexample(system, 0.5 * (LOs[cand] + HIs[cand]))
            if cex is not None:
                return ProofResult(system.name, ProofStatus.DISPROVED, stats, cex)

        if is_leaf:
            stats.undecided_count += sidx.size
            for k in range(min(sidx.size, 8 - len(undecided))):
                undecided.append(_box_dict(system, LOs[k], HIs[k]))
            if stats.undecided_count > config.undecided_cap:
                return ProofResult(
                    system.name, ProofStatus.UNDECIDED, stats, None, tuple(undecided)
                )
            continue

        j = _split_index(widths, minw, config.split_policy)
        mid = LOs[:, j] + 0.5 * (HIs[:, j] - LOs[:, j])
        hi_a = HIs.copy()
        hi_a[:, j] = mid
        lo_b = LOs.copy()
        lo_b[:, j] = mid
        children_lo = np.concatenate([LOs, lo_b])
        children_hi = np.concatenate([hi_a, HIs])
        n_children = children_lo.shape[0]
        for start in range(0, n_children, config.chunk_lanes):
            end = min(start + config.chunk_lanes, n_children)
            stack.append((depth + 1, children_lo[start:end], children_hi[start:end]))
            lanes_resident += end - start
        stats.peak_lanes = max(stats.peak_lanes, lanes_resident)

    status = ProofStatus.PROVED if stats.undecided_count == 0 else ProofStatus.UNDECIDED
    return ProofResult(system.name, status, stats, None, tuple(undecided))


def _initial_parts(
    system: ConstraintSystem, parts: int
) -> "list[tuple[np.ndarray, np.ndarray]]":
    lo = np.array([v.lo for v in system.variables])
    hi = np.array([v.hi for v in system.variables])
    boxes = [(lo, hi)]
    while len(boxes) < parts:
        blo, bhi = boxes.pop(0)
        w = bhi - blo
        j = int(np.argmax(w))
        if w[j] <= 0:
            boxes.append((blo, bhi))
            break
        mid = blo[j] + 0.5 * w[j]
        hi_a = bhi.copy()
        hi_a[j] = mid
        lo_b = blo.copy()
        lo_b[j] = mid
        boxes.append((blo, hi_a))
        boxes.append((lo_b, bhi))
    return boxes


def _worker_entry(args) -> ProofResult:
    name, config, lo, hi = args
    from .catalog import lemma_catalog

    system = next(s for s in lemma_catalog() if s.name == name)
    return _search(system, config, np.asarray(lo), np.asarray(hi))


def prove(system: ConstraintSystem, config: Optional[ProverConfig] = None) -> ProofResult:
    """Run the branch-and-prune search; the result status is the conjunction
    over all parts of the range box, independent of scheduling."""
    cfg = config or system.default_config or ProverConfig()
    t0 = time.perf_counter()
    lo = np.array([v.lo for v in system.variables])
    hi = np.array([v.hi for v in system.variables])

    results: "list[ProofResult]" = []
    if cfg.worker_count > 1:
        from .catalog import lemma_catalog

        if any(s.name == system.name for s in lemma_catalog()):
            import multiprocessing as mp

            parts = _initial_parts(system, 4 * cfg.worker_count)
            jobs = [(system.name, cfg, p[0].tolist(), p[1].tolist()) for p in parts]
            ctx = mp.get_context("fork")
            with ctx.Pool(cfg.worker_count) as pool:
                results = pool.map(_worker_entry, jobs)
        else:
            results = [_search(system, cfg, lo, hi)]
    else:
        results = [_search(system, cfg, lo, hi)]

    stats = ProofStats()
    counterexample = None
    undecided_boxes: "list[dict]" = []
    status = ProofStatus.PROVED
    for r in results:
        stats.merge(r.stats)
        if r.status is ProofStatus.DISPROVED and counterexample is None:
            counterexample = r.counterexample
            status = ProofStatus.DISPROVED
        elif r.status is ProofStatus.UNDECIDED and status is not ProofStatus.DISPROVED:
            status = ProofStatus.UNDECIDED
            undecided_boxes.extend(r.undecided_boxes)
    stats.wall_time_s = time.perf_counter() - t0
    return ProofResult(system.name, status, stats, counterexample, tuple(undecided_boxes[:8]))
