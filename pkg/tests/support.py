"""Shared strategies and independent oracles for the test suite.

The closed-form integrals here are the quadrature oracles: they are written
directly from the antiderivatives and never call the library's integrator.
"""

import math

from hypothesis import strategies as st

from fovkit import DisplaySpec, OffAxisDegradation, SnellenFraction, Tier


def constant_fovea_integral(peak, rolloff, fovea, a, b, error=0.0):
    """Exact integral of the constant-fovea falloff over [a, b].

    Antiderivative of the tail is rolloff * ln(e - plateau_end + rolloff/peak);
    the plateau contributes peak * length.
    """
    plateau_end = fovea + error
    c = rolloff / peak
    plateau = peak * max(0.0, min(b, plateau_end) - min(a, plateau_end))
    ta, tb = max(a, plateau_end), max(b, plateau_end)
    tail = 0.0
    if tb > ta:
        tail = rolloff * (math.log(tb - plateau_end + c) - math.log(ta - plateau_end + c))
    return plateau + tail


def slope_model_integral(peak, rolloff, fovea, a, b, error=0.0):
    """Exact integral of the slope-model falloff over [a, b]."""
    plateau_end = fovea + error
    plateau = peak * max(0.0, min(b, plateau_end) - min(a, plateau_end))
    ta, tb = max(a, plateau_end), max(b, plateau_end)
    tail = 0.0
    if tb > ta:
        tail = (peak / rolloff) * (
            math.log(rolloff * (tb - plateau_end) + 1.0) - math.log(rolloff * (ta - plateau_end) + 1.0)
        )
    return plateau + tail


class DifferenceCurve:
    """rdf - adf with the union of both breakpoint sets, for node-identical quadrature."""

    def __init__(self, rdf, adf):
        self.rdf = rdf
        self.adf = adf

    def eval_many(self, xs):
        return self.rdf.eval_many(xs) - self.adf.eval_many(xs)

    def breakpoints(self):
        return tuple(self.rdf.breakpoints()) + tuple(self.adf.breakpoints())


class ClampedMaxCurve:
    """max(rdf, adf): raising the profile to the target kills deficit only."""

    def __init__(self, rdf, adf):
        self.rdf = rdf
        self.adf = adf

    def eval_many(self, xs):
        import numpy as np

        return np.maximum(self.rdf.eval_many(xs), self.adf.eval_many(xs))

    def breakpoints(self):
        return tuple(self.rdf.breakpoints()) + tuple(self.adf.breakpoints())


finite = dict(allow_nan=False, allow_infinity=False)


@st.composite
def snellen_fractions(draw, min_value=0.1, max_value=2.0):
    numerator = 20.0
    denominator = draw(st.floats(numerator / max_value, numerator / min_value, **finite))
    return SnellenFraction(numerator, denominator)


@st.composite
def degradations(draw):
    k = draw(st.integers(1, 3))
    eccs, prev = [], 0.0
    for _ in range(k):
        prev = prev + draw(st.floats(0.5, 20.0, **finite))
        eccs.append(prev)
    mults, m = [], 1.0
    for _ in range(k):
        m = m * draw(st.floats(0.3, 1.0, **finite))
        mults.append(m)
    points = ((0.0, 1.0), *zip(eccs, mults))
    return OffAxisDegradation(kind="piecewise-linear", breakpoints=points)


@st.composite
def display_specs(draw, max_tiers=3, blends=True, steering=True, degraded=True):
    n = draw(st.integers(1, max_tiers))
    resolutions = sorted(
        draw(st.lists(st.floats(0.5, 60.0, **finite), min_size=n, max_size=n)), reverse=True
    )
    tiers, prev_edge = [], 0.0
    for i in range(n):
        edge = prev_edge + draw(st.floats(1.0, 25.0, **finite))
        gap = edge - prev_edge
        blend = 0.0
        if blends and draw(st.booleans()):
            blend = draw(st.floats(0.0, gap, **finite))
        steer = 0.0
        if steering and draw(st.booleans()):
            steer = draw(st.floats(0.1, 25.0, **finite))
        tiers.append(
            Tier(
                resolution_cpd=resolutions[i],
                half_fov_deg=edge,
                steerable=steer > 0,
                steer_range_deg=steer,
                blend_width_deg=blend,
            )
        )
        prev_edge = edge
    degradation = OffAxisDegradation()
    if degraded and draw(st.booleans()):
        degradation = draw(degradations())
    name = draw(st.text(alphabet="abcdefghij_", min_size=1, max_size=12))
    notes = draw(st.text(alphabet="abcdefghij ", max_size=20))
    return DisplaySpec(name=name, tiers=tuple(tiers), degradation=degradation, notes=notes)
