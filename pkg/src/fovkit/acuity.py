"""Visual acuity arithmetic and eccentricity-falloff models.

Converts letter-chart fractions to spatial frequency, sizes the dot pitch
needed at a viewing distance, and models how perceivable resolution decays
away from the line of sight.  Two falloff models are provided:

* ``"constant-fovea"`` -- a constant-acuity plateau of fixed angular size
  followed by a hyperbolic rolloff with an absolute slope in cpd/degree.
* ``"slope"`` -- the rolloff rate is fixed *relative* to the peak, so lower
  acuities degrade proportionally faster in the periphery.

All angles are degrees, all spatial frequencies cycles per degree (cpd).
Models are frozen dataclasses and every function is pure, so values can be
shared freely across threads.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace

import numpy as np

SNELLEN_BASELINE_CPD = 30.0

CONSTANT_FOVEA = "constant-fovea"
SLOPE = "slope"
ADF_KINDS = (CONSTANT_FOVEA, SLOPE)

DEFAULT_FOVEA_DEG = 2.0
DEFAULT_ROLLOFF_CPD_PER_DEG = 75.0
# Two published fits to classical peripheral-acuity measurements.
DEFAULT_ROLLOFF_PER_DEG = 0.55
ALT_ROLLOFF_PER_DEG = 0.44


class SnellenParseError(ValueError):
    """Raised when a Snellen fraction string cannot be parsed."""


@dataclass(frozen=True)
class SnellenFraction:
    """A letter-chart acuity ratio such as 20/20 or 6/6."""

    numerator: float
    denominator: float

    def __post_init__(self):
        object.__setattr__(self, "numerator", float(self.numerator))
        object.__setattr__(self, "denominator", float(self.denominator))
        if not math.isfinite(self.numerator) or self.numerator <= 0:
            raise SnellenParseError(
                f"numerator must be a positive finite number, got {self.numerator!r}"
            )
        if not math.isfinite(self.denominator) or self.denominator <= 0:
            raise SnellenParseError(
                f"denominator must be a positive finite number, got {self.denominator!r}"
            )

    def value(self) -> float:
        return self.numerator / self.denominator

    def __str__(self) -> str:
        return f"{self.numerator:g}/{self.denominator:g}"


_SNELLEN_RE = re.compile(r"^\s*([^/\s]+)\s*/\s*([^/\s]+)\s*$")


def parse_snellen(text: str) -> SnellenFraction:
    """Parse ``"N/M"`` (integers or decimals, e.g. ``20/40`` or ``6/6``)."""
    m = _SNELLEN_RE.match(text)
    if m is None:
        raise SnellenParseError(f"expected acuity in N/M form, got {text!r}")
    parts = []
    for token in m.groups():
        try:
            parts.append(float(token))
        except ValueError:
            raise SnellenParseError(f"not a number in acuity fraction: {token!r}") from None
    return SnellenFraction(parts[0], parts[1])


def _as_fraction(acuity: SnellenFraction | str) -> SnellenFraction:
    if isinstance(acuity, str):
        return parse_snellen(acuity)
    return acuity


def snellen_to_cpd(acuity: SnellenFraction | str) -> float:
    """Peak (foveal) spatial frequency for an acuity fraction: 30 cpd at 20/20."""
    return SNELLEN_BASELINE_CPD * _as_fraction(acuity).value()


def cpd_to_dpi(cpd: float, viewing_distance_in: float) -> float:
    """Dot pitch (dots per inch) that presents ``cpd`` at a distance in inches.

    One dot subtends half a cycle, i.e. ``1/(2*cpd)`` degrees; the result is
    the reciprocal of its linear size at the given distance.
    """
    if not cpd > 0:
        raise ValueError(f"cycles per degree must be > 0, got {cpd!r}")
    if not viewing_distance_in > 0:
        raise ValueError(f"viewing distance must be > 0, got {viewing_distance_in!r}")
    dot_angle_deg = 1.0 / (2.0 * cpd)
    return 1.0 / (viewing_distance_in * math.tan(math.radians(dot_angle_deg)))


@dataclass(frozen=True)
class AcuityModel:
    """Perceivable resolution as a function of gaze eccentricity.

    ``foveation_error_deg`` widens the plateau: the model is evaluated at
    ``max(e - foveation_error_deg, 0)``, the worst-case shift of a monotone
    non-increasing falloff over an angular tracking-error disc.
    """

    kind: str
    foveal_cpd: float
    fovea_deg: float = DEFAULT_FOVEA_DEG
    rolloff_cpd_per_deg: float | None = None
    rolloff_per_deg: float | None = None
    foveation_error_deg: float = 0.0

    def __post_init__(self):
        if self.kind not in ADF_KINDS:
            raise ValueError(f"unknown acuity model kind {self.kind!r}, expected one of {ADF_KINDS}")
        if not self.foveal_cpd > 0:
            raise ValueError(f"foveal_cpd must be > 0, got {self.foveal_cpd!r}")
        if self.fovea_deg < 0:
            raise ValueError(f"fovea_deg must be >= 0, got {self.fovea_deg!r}")
        if self.foveation_error_deg < 0:
            raise ValueError(
                f"foveation_error_deg must be >= 0, got {self.foveation_error_deg!r}"
            )
        if self.kind == CONSTANT_FOVEA:
            if self.rolloff_cpd_per_deg is None or not self.rolloff_cpd_per_deg > 0:
                raise ValueError(
                    "constant-fovea model requires rolloff_cpd_per_deg > 0, "
                    f"got {self.rolloff_cpd_per_deg!r}"
                )
            if self.rolloff_per_deg is not None:
                raise ValueError("constant-fovea model does not take rolloff_per_deg")
        else:
            if self.rolloff_per_deg is None or not self.rolloff_per_deg > 0:
                raise ValueError(
                    f"slope model requires rolloff_per_deg > 0, got {self.rolloff_per_deg!r}"
                )
            if self.rolloff_cpd_per_deg is not None:
                raise ValueError("slope model does not take rolloff_cpd_per_deg")

    @property
    def plateau_end_deg(self) -> float:
        """Eccentricity where the constant-acuity plateau ends."""
        return self.fovea_deg + self.foveation_error_deg

    def eval(self, eccentricity_deg: float) -> float:
        """Perceivable resolution in cpd at one gaze eccentricity."""
        e = float(eccentricity_deg)
        if e < 0:
            raise ValueError(f"eccentricity must be >= 0, got {e!r}")
        shifted = max(e - self.foveation_error_deg, 0.0)
        if shifted <= self.fovea_deg:
            return self.foveal_cpd
        tail = shifted - self.fovea_deg
        if self.kind == CONSTANT_FOVEA:
            s = self.rolloff_cpd_per_deg
            return s / (tail + s / self.foveal_cpd)
        return self.foveal_cpd / (self.rolloff_per_deg * tail + 1.0)

    def eval_many(self, eccentricities_deg) -> np.ndarray:
        """Vectorised :meth:`eval` over an array of eccentricities."""
        e = np.asarray(eccentricities_deg, dtype=float)
        if np.any(e < 0):
            raise ValueError("eccentricities must be >= 0")
        tail = np.maximum(np.maximum(e - self.foveation_error_deg, 0.0) - self.fovea_deg, 0.0)
        if self.kind == CONSTANT_FOVEA:
            s = self.rolloff_cpd_per_deg
            return s / (tail + s / self.foveal_cpd)
        return self.foveal_cpd / (self.rolloff_per_deg * tail + 1.0)

    def breakpoints(self) -> tuple[float, ...]:
        """Kink locations, used as quadrature panel boundaries."""
        return (self.plateau_end_deg,)

    def with_foveation_error(self, error_deg: float) -> "AcuityModel":
        """Copy of this model degraded by an angular tracking error."""
        return replace(self, foveation_error_deg=error_deg)


def make_adf(
    kind: str,
    acuity: SnellenFraction | str,
    fovea_deg: float = DEFAULT_FOVEA_DEG,
    slope: float | None = None,
    foveation_error_deg: float = 0.0,
) -> AcuityModel:
    """Build an acuity model from a Snellen fraction.

    ``slope`` is the rolloff parameter for the requested kind and defaults to
    75 cpd/deg for ``"constant-fovea"`` and 0.55 /deg for ``"slope"``.
    """
    if kind not in ADF_KINDS:
        raise ValueError(f"unknown acuity model kind {kind!r}, expected one of {ADF_KINDS}")
    peak = snellen_to_cpd(acuity)
    if kind == CONSTANT_FOVEA:
        return AcuityModel(
            kind=kind,
            foveal_cpd=peak,
            fovea_deg=fovea_deg,
            rolloff_cpd_per_deg=DEFAULT_ROLLOFF_CPD_PER_DEG if slope is None else slope,
            foveation_error_deg=foveation_error_deg,
        )
    return AcuityModel(
        kind=kind,
        foveal_cpd=peak,
        fovea_deg=fovea_deg,
        rolloff_per_deg=DEFAULT_ROLLOFF_PER_DEG if slope is None else slope,
        foveation_error_deg=foveation_error_deg,
    )


def inflate_for_foveation_error(model: AcuityModel, error_deg: float) -> AcuityModel:
    """Return ``model`` degraded by an angular tracking error (pointwise >= it)."""
    return model.with_foveation_error(error_deg)
