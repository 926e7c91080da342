"""Display descriptions and radial resolution profiles.

A display is a stack of concentric resolution tiers ordered from highest to
lowest resolution, each optionally steerable (it tracks the gaze up to a
limit) and optionally blended (its outer edge ramps down to the next tier's
resolution), plus an off-axis degradation curve multiplying the whole thing.

Resolution profiles are piecewise linear in cpd over eccentricity.  The
on-axis profile describes the display looking straight ahead; the perceived
profile under a gaze offset scores non-tracking content along the radial
direction that loses the most resolution, which for these monotone profiles
is the direction away from the display centre.

Everything here is immutable and pure; profiles may be evaluated from any
number of threads concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:  # pragma: no cover
    from .acuity import AcuityModel
    from .classify import ClassifierConfig

DEGRADATION_NONE = "none"
DEGRADATION_PIECEWISE_LINEAR = "piecewise-linear"
DEGRADATION_KINDS = (DEGRADATION_NONE, DEGRADATION_PIECEWISE_LINEAR)

# Panel width used when a blend ramp overlaps a varying degradation span; the
# product is quadratic there and is approximated by chords at this pitch.
_PRODUCT_SUBDIV_DEG = 0.01

_KNOT_EPS = 1e-12


class DisplaySpecError(ValueError):
    """Raised when a display description violates one of its invariants."""


@dataclass(frozen=True)
class Tier:
    """One resolution tier: a disc of constant resolution around its centre."""

    resolution_cpd: float
    half_fov_deg: float
    steerable: bool = False
    steer_range_deg: float = 0.0
    blend_width_deg: float = 0.0

    def __post_init__(self):
        for name in ("resolution_cpd", "half_fov_deg", "steer_range_deg", "blend_width_deg"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not self.resolution_cpd > 0:
            raise DisplaySpecError(f"tier resolution must be > 0, got {self.resolution_cpd!r}")
        if not self.half_fov_deg > 0:
            raise DisplaySpecError(f"tier half field of view must be > 0, got {self.half_fov_deg!r}")
        if not 0 <= self.blend_width_deg <= self.half_fov_deg:
            raise DisplaySpecError(
                "blend width must lie in [0, half field of view], "
                f"got {self.blend_width_deg!r} for half fov {self.half_fov_deg!r}"
            )
        if self.steer_range_deg < 0:
            raise DisplaySpecError(f"steer range must be >= 0, got {self.steer_range_deg!r}")
        if self.steerable != (self.steer_range_deg > 0):
            raise DisplaySpecError(
                "steerable tiers must have steer range > 0 and fixed tiers steer range 0, "
                f"got steerable={self.steerable!r} with steer_range_deg={self.steer_range_deg!r}"
            )


@dataclass(frozen=True)
class OffAxisDegradation:
    """Resolution multiplier vs display eccentricity (lens falloff).

    Piecewise linear between breakpoints, held constant past the last one.
    The first breakpoint must be (0, 1): no degradation on axis.
    """

    kind: str = DEGRADATION_NONE
    breakpoints: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "breakpoints", tuple((float(e), float(m)) for e, m in self.breakpoints)
        )
        if self.kind not in DEGRADATION_KINDS:
            raise DisplaySpecError(
                f"unknown degradation kind {self.kind!r}, expected one of {DEGRADATION_KINDS}"
            )
        if self.kind == DEGRADATION_NONE:
            if self.breakpoints:
                raise DisplaySpecError("degradation kind 'none' takes no breakpoints")
            return
        if not self.breakpoints:
            raise DisplaySpecError("piecewise-linear degradation needs at least one breakpoint")
        if self.breakpoints[0] != (0.0, 1.0):
            raise DisplaySpecError(
                f"first degradation breakpoint must be (0, 1), got {self.breakpoints[0]!r}"
            )
        prev_e, prev_m = self.breakpoints[0]
        for e, m in self.breakpoints[1:]:
            if e <= prev_e:
                raise DisplaySpecError(
                    f"degradation eccentricities must strictly increase, got {e!r} after {prev_e!r}"
                )
            if not 0 < m <= prev_m:
                raise DisplaySpecError(
                    "degradation multipliers must be non-increasing and in (0, 1], "
                    f"got {m!r} after {prev_m!r}"
                )
            prev_e, prev_m = e, m

    def at(self, eccentricity_deg: float) -> float:
        if self.kind == DEGRADATION_NONE:
            return 1.0
        es = [e for e, _ in self.breakpoints]
        ms = [m for _, m in self.breakpoints]
        return float(np.interp(eccentricity_deg, es, ms))

    def knots(self) -> tuple[float, ...]:
        return tuple(e for e, _ in self.breakpoints)


@dataclass(frozen=True)
class DisplaySpec:
    """Declarative description of a display as seen from one eye."""

    name: str
    tiers: tuple[Tier, ...]
    degradation: OffAxisDegradation = field(default=OffAxisDegradation())
    notes: str = ""

    def __post_init__(self):
        object.__setattr__(self, "tiers", tuple(self.tiers))
        if not self.tiers:
            raise DisplaySpecError("display needs at least one tier")
        prev = self.tiers[0]
        for tier in self.tiers[1:]:
            if tier.resolution_cpd > prev.resolution_cpd:
                raise DisplaySpecError(
                    "tiers must be ordered by non-increasing resolution, "
                    f"got {tier.resolution_cpd!r} after {prev.resolution_cpd!r}"
                )
            if tier.half_fov_deg < prev.half_fov_deg:
                raise DisplaySpecError(
                    "tier extents must be non-decreasing, "
                    f"got {tier.half_fov_deg!r} after {prev.half_fov_deg!r}"
                )
            if tier.half_fov_deg - tier.blend_width_deg < prev.half_fov_deg - _KNOT_EPS:
                raise DisplaySpecError(
                    "blend band wider than the gap between tier edges: "
                    f"band starts at {tier.half_fov_deg - tier.blend_width_deg!r} "
                    f"but the inner tier extends to {prev.half_fov_deg!r}"
                )
            prev = tier

    @property
    def half_fov_deg(self) -> float:
        """The outermost tier defines the display's half field of view."""
        return self.tiers[-1].half_fov_deg


@dataclass(frozen=True)
class ProfileSegment:
    """Linear-in-cpd piece of a profile on [start, end]."""

    start: float
    end: float
    value_start: float
    value_end: float

    def value_at(self, x: float) -> float:
        if self.end == self.start:
            return self.value_start
        t = (x - self.start) / (self.end - self.start)
        return self.value_start + t * (self.value_end - self.value_start)


@dataclass(frozen=True)
class ResolutionProfile:
    """Piecewise-linear resolution vs eccentricity; zero outside [0, extent]."""

    segments: tuple[ProfileSegment, ...]

    @property
    def extent_deg(self) -> float:
        return self.segments[-1].end if self.segments else 0.0

    @cached_property
    def _arrays(self):
        starts = np.array([s.start for s in self.segments])
        ends = np.array([s.end for s in self.segments])
        v0 = np.array([s.value_start for s in self.segments])
        v1 = np.array([s.value_end for s in self.segments])
        spans = np.where(ends > starts, ends - starts, 1.0)
        return starts, ends, v0, v1, spans

    def eval(self, eccentricity_deg: float) -> float:
        return float(self.eval_many(np.array([float(eccentricity_deg)]))[0])

    def eval_many(self, eccentricities_deg) -> np.ndarray:
        e = np.asarray(eccentricities_deg, dtype=float)
        if np.any(e < 0):
            raise ValueError("eccentricities must be >= 0")
        out = np.zeros_like(e)
        if not self.segments:
            return out
        starts, ends, v0, v1, spans = self._arrays
        idx = np.searchsorted(ends, e, side="left")
        inside = idx < len(ends)
        i = idx[inside]
        t = np.clip((e[inside] - starts[i]) / spans[i], 0.0, 1.0)
        out[inside] = v0[i] + t * (v1[i] - v0[i])
        return out

    def breakpoints(self) -> tuple[float, ...]:
        if not self.segments:
            return ()
        return tuple(s.start for s in self.segments) + (self.segments[-1].end,)


def rdf_eval(profile: ResolutionProfile, eccentricity_deg: float) -> float:
    """Resolution presented at one eccentricity; 0 beyond the display edge."""
    return profile.eval(eccentricity_deg)


def _tier_segments(tier: Tier, floor_cpd: float) -> list[ProfileSegment]:
    """On-axis shape of one tier: constant body plus an outer blend ramp."""
    body_end = tier.half_fov_deg - tier.blend_width_deg
    segs = []
    if body_end > _KNOT_EPS:
        segs.append(ProfileSegment(0.0, body_end, tier.resolution_cpd, tier.resolution_cpd))
    if tier.blend_width_deg > _KNOT_EPS:
        segs.append(
            ProfileSegment(max(body_end, 0.0), tier.half_fov_deg, tier.resolution_cpd, floor_cpd)
        )
    return segs


def _apply_degradation(
    segs: list[ProfileSegment], degradation: OffAxisDegradation
) -> list[ProfileSegment]:
    if degradation.kind == DEGRADATION_NONE:
        return segs
    knots = degradation.knots()
    out = []
    for s in segs:
        cuts = sorted({s.start, s.end, *(k for k in knots if s.start < k < s.end)})
        for x0, x1 in zip(cuts, cuts[1:]):
            v0, v1 = s.value_at(x0), s.value_at(x1)
            m0, m1 = degradation.at(x0), degradation.at(x1)
            if v0 == v1 or m0 == m1:
                out.append(ProfileSegment(x0, x1, v0 * m0, v1 * m1))
                continue
            # Both vary: the product is quadratic, approximate by short chords.
            n = max(1, math.ceil((x1 - x0) / _PRODUCT_SUBDIV_DEG - 1e-9))
            xs = np.linspace(x0, x1, n + 1)
            for u0, u1 in zip(xs, xs[1:]):
                out.append(
                    ProfileSegment(
                        float(u0),
                        float(u1),
                        s.value_at(u0) * degradation.at(u0),
                        s.value_at(u1) * degradation.at(u1),
                    )
                )
    return out


def _shift_left(segs: list[ProfileSegment], offset: float) -> list[ProfileSegment]:
    """Worst-case view of fixed content from a gaze offset: shift toward 0."""
    if offset <= 0:
        return segs
    out = []
    for s in segs:
        if s.end - offset <= _KNOT_EPS:
            continue
        a = max(s.start, offset)
        out.append(ProfileSegment(a - offset, s.end - offset, s.value_at(a), s.value_end))
    return out


def _dedup_sorted(values) -> list[float]:
    out = []
    for v in values:
        if not out or v - out[-1] > _KNOT_EPS:
            out.append(v)
    return out


class _SegmentIndex:
    """Fast lookup of the segment covering a panel."""

    def __init__(self, segs: list[ProfileSegment]):
        self.segs = segs
        self.ends = np.array([s.end for s in segs]) if segs else np.empty(0)

    def line_on(self, x0: float, x1: float) -> tuple[float, float]:
        """Endpoint values of this contribution on panel [x0, x1] (0 if uncovered)."""
        if len(self.segs) == 0:
            return 0.0, 0.0
        mid = 0.5 * (x0 + x1)
        i = int(np.searchsorted(self.ends, mid, side="left"))
        if i >= len(self.segs):
            return 0.0, 0.0
        s = self.segs[i]
        if not (s.start - _KNOT_EPS <= mid <= s.end + _KNOT_EPS):
            return 0.0, 0.0
        return s.value_at(x0), s.value_at(x1)


def _compose_max(contributions: list[list[ProfileSegment]]) -> tuple[ProfileSegment, ...]:
    """Pointwise maximum of piecewise-linear contributions, exactly."""
    knots = {0.0}
    for segs in contributions:
        for s in segs:
            knots.add(s.start)
            knots.add(s.end)
    xs = _dedup_sorted(sorted(knots))
    indexes = [_SegmentIndex(segs) for segs in contributions]

    out: list[ProfileSegment] = []
    for x0, x1 in zip(xs, xs[1:]):
        lines = [ix.line_on(x0, x1) for ix in indexes]
        cuts = {x0, x1}
        span = x1 - x0
        for i in range(len(lines)):
            a0, a1 = lines[i]
            for j in range(i + 1, len(lines)):
                b0, b1 = lines[j]
                d0, d1 = a0 - b0, a1 - b1
                if d0 == d1 or d0 * d1 >= 0:
                    continue  # parallel or no sign change: no interior crossing
                xc = x0 + span * d0 / (d0 - d1)
                if x0 + _KNOT_EPS < xc < x1 - _KNOT_EPS:
                    cuts.add(xc)
        sub = _dedup_sorted(sorted(cuts))
        for u0, u1 in zip(sub, sub[1:]):
            v0 = max(max(a + (b - a) * (u0 - x0) / span for a, b in lines), 0.0)
            v1 = max(max(a + (b - a) * (u1 - x0) / span for a, b in lines), 0.0)
            out.append(ProfileSegment(u0, u1, v0, v1))
    return tuple(out)


def _merge_collinear(segs: tuple[ProfileSegment, ...]) -> tuple[ProfileSegment, ...]:
    merged: list[ProfileSegment] = []
    for s in segs:
        if merged:
            p = merged[-1]
            p_slope = (p.value_end - p.value_start) / (p.end - p.start)
            s_slope = (s.value_end - s.value_start) / (s.end - s.start)
            if (
                abs(p.value_end - s.value_start) <= 1e-9 * max(1.0, abs(p.value_end))
                and abs(p_slope - s_slope) <= 1e-9 * max(1.0, abs(p_slope))
            ):
                merged[-1] = ProfileSegment(p.start, s.end, p.value_start, s.value_end)
                continue
        merged.append(s)
    return tuple(merged)


def perceived_profile(spec: DisplaySpec, gaze_deg: float) -> ResolutionProfile:
    """Worst-case resolution over gaze eccentricity for a given gaze direction.

    Steerable tiers track the gaze up to their steer range and saturate
    beyond it; fixed content is scored along the radial direction away from
    the display centre, the minimum over directions for these profiles.  The
    result is clamped to the display extent as seen from the gaze direction.
    Negative gaze is folded to positive by radial symmetry.
    """
    g = abs(float(gaze_deg))
    contributions = []
    for i, tier in enumerate(spec.tiers):
        floor = spec.tiers[i + 1].resolution_cpd if i + 1 < len(spec.tiers) else 0.0
        segs = _tier_segments(tier, floor)
        segs = _apply_degradation(segs, spec.degradation)
        offset = max(0.0, g - tier.steer_range_deg) if tier.steerable else g
        segs = _shift_left(segs, offset)
        if segs:
            contributions.append(segs)
    if not contributions:
        return ResolutionProfile(())
    return ResolutionProfile(_merge_collinear(_compose_max(contributions)))


def build_rdf(spec: DisplaySpec) -> ResolutionProfile:
    """On-axis resolution profile: tier maximum, blend ramps, degradation."""
    return perceived_profile(spec, 0.0)


_INVARIANCE_EVAL_STEP_DEG = 0.01


def gaze_invariance_range(
    spec: DisplaySpec, adf: "AcuityModel", cfg: "ClassifierConfig"
) -> float:
    """Largest scanned gaze angle with no noticeable perceived-profile change.

    Profiles are clamped by the acuity model (only differences the user can
    resolve count) and compared to the straight-ahead profile over
    ``cfg.invariance_extent``; a difference above ``cfg.noticeability_tol``
    anywhere ends the scan.  The scan is capped at ``cfg.full_gaze_range``.
    """
    n_e = max(1, int(round(cfg.invariance_extent / _INVARIANCE_EVAL_STEP_DEG)))
    grid = np.linspace(0.0, cfg.invariance_extent, n_e + 1)
    base = perceived_profile(spec, 0.0)
    steps = int(math.floor(cfg.full_gaze_range / cfg.gaze_scan_step + 1e-9))
    if steps == 0:  # scan step wider than the whole range: nothing verified
        return 0.0
    reached = 0.0
    for i in range(1, steps + 1):
        g = i * cfg.gaze_scan_step
        current = perceived_profile(spec, g)
        knots = [
            k
            for k in (*base.breakpoints(), *current.breakpoints())
            if 0.0 < k < cfg.invariance_extent
        ]
        xs = np.unique(np.concatenate([grid, np.asarray(knots)])) if knots else grid
        acuity = adf.eval_many(xs)
        base_clamped = np.minimum(base.eval_many(xs), acuity)
        cur_clamped = np.minimum(current.eval_many(xs), acuity)
        if float(np.max(np.abs(cur_clamped - base_clamped))) > cfg.noticeability_tol:
            return reached
        reached = g
    return cfg.full_gaze_range
