"""Feasibility model for a stack of rigid cavities weighed by a force detector."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .errors import FrequencyOutOfCurve, InvalidGeometry, OutOfRange
from .quantities import (
    ACCELERATION,
    CONSTANTS,
    DIMENSIONLESS,
    FORCE,
    FREQUENCY,
    LENGTH,
    Quantity,
    as_quantity,
)
from .stress_tensor import CavityGeometry, _check_dim

__all__ = [
    "FREQUENCY_CAVEAT",
    "CORRECTIONS_CAVEAT",
    "MODULATION_NOTE",
    "AL_ANCHOR",
    "LayeredStack",
    "ConductivityModel",
    "DetectorSensitivity",
    "FeasibilityAssessment",
    "reduction_factor",
    "stack_force",
    "modulation_amplitude",
    "fundamental_frequency",
    "detector_margin",
    "assess",
]

FREQUENCY_CAVEAT = (
    "Detector threshold holds for signals at tens of Hz; a temperature-modulated "
    "signal would sit near tens of mHz, where force noise is far higher."
)
CORRECTIONS_CAVEAT = "Finite-temperature and surface-roughness corrections are not included."
MODULATION_NOTE = "Modulation amplitude is the full contrast F(eta_superconducting) - F(eta_normal)."

# Al, 6.5 nm gap
AL_ANCHOR = (6.5e-9, 7e-2)


@dataclass(frozen=True)
class LayeredStack:
    """N identical disk-shaped cavities stacked on top of each other."""

    separation: Quantity
    refractive_index: float
    layers: int
    layer_thickness: Quantity
    disk_diameter: Quantity

    def __post_init__(self):
        if isinstance(self.layers, bool) or not isinstance(self.layers, int) or self.layers < 1:
            raise InvalidGeometry(f"layers must be a positive integer, got {self.layers!r}")
        if not _check_dim(self.layer_thickness, LENGTH, "layer_thickness") > 0:
            raise InvalidGeometry("layer thickness must be positive")
        if not _check_dim(self.disk_diameter, LENGTH, "disk_diameter") > 0:
            raise InvalidGeometry("disk diameter must be positive")
        self.geom  # validates separation and index

    @property
    def geom(self) -> CavityGeometry:
        return CavityGeometry.from_diameter(self.separation, self.disk_diameter, self.refractive_index)

    @property
    def area(self) -> Quantity:
        return self.geom.area

    @property
    def total_thickness(self) -> Quantity:
        return self.layer_thickness * self.layers


@dataclass(frozen=True)
class ConductivityModel:
    """Tabulated finite-conductivity reduction factor eta(separation).

    Interpolated linearly in log-log space; queries up to a factor two outside
    the table reuse the nearest segment.
    """

    separations: tuple[float, ...] = (AL_ANCHOR[0],)
    etas: tuple[float, ...] = (AL_ANCHOR[1],)
    eta_superconducting: float = 0.5

    def __post_init__(self):
        seps = tuple(float(s) for s in self.separations)
        etas = tuple(float(e) for e in self.etas)
        object.__setattr__(self, "separations", seps)
        object.__setattr__(self, "etas", etas)
        object.__setattr__(self, "eta_superconducting", float(self.eta_superconducting))
        if not seps or len(seps) != len(etas):
            raise ValueError("conductivity table needs matching, non-empty columns")
        if any(s <= 0 for s in seps):
            raise ValueError("table separations must be positive")
        if any(b <= a for a, b in zip(seps, seps[1:])):
            raise ValueError("table separations must be strictly increasing")
        for e in etas + (self.eta_superconducting,):
            if not 0 < e <= 1:
                raise ValueError(f"reduction factor {e} is outside (0, 1]")

    @classmethod
    def from_anchors(cls, anchors: Sequence[tuple[float, float]], eta_superconducting: float = 0.5):
        """``anchors`` are (separation in m, eta) pairs."""
        rows = sorted((float(s), float(e)) for s, e in anchors)
        return cls(tuple(r[0] for r in rows), tuple(r[1] for r in rows), eta_superconducting)

    @classmethod
    def from_csv(cls, path, eta_superconducting: float = 0.5) -> ConductivityModel:
        """Read a ``separation_nm,eta`` table, rows ascending."""
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames != ["separation_nm", "eta"]:
                raise ValueError(f"{path}: expected header 'separation_nm,eta', got {reader.fieldnames}")
            rows = [(float(r["separation_nm"]) * 1e-9, float(r["eta"])) for r in reader]
        return cls(tuple(r[0] for r in rows), tuple(r[1] for r in rows), eta_superconducting)

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["separation_nm", "eta"])
            for s, e in zip(self.separations, self.etas):
                w.writerow([repr(s * 1e9), repr(e)])

    @property
    def bounds(self) -> tuple[float, float]:
        return 0.5 * self.separations[0], 2.0 * self.separations[-1]


def reduction_factor(model: ConductivityModel, separation: Quantity) -> Quantity:
    """Finite-conductivity factor eta at ``separation``.

    Raises:
        OutOfRange: outside [min/2, 2 max] of the table.
    """
    s = _check_dim(separation, LENGTH, "separation")
    lo, hi = model.bounds
    if not lo <= s <= hi:
        raise OutOfRange(
            f"separation {s:.4g} m outside conductivity model range [{lo:.4g}, {hi:.4g}] m"
        )
    seps, etas = model.separations, model.etas
    if len(seps) == 1:
        eta = etas[0]
    else:
        # segment index, clamped so end segments extrapolate
        i = 0
        while i < len(seps) - 2 and s > seps[i + 1]:
            i += 1
        x0, x1 = math.log(seps[i]), math.log(seps[i + 1])
        y0, y1 = math.log(etas[i]), math.log(etas[i + 1])
        eta = math.exp(y0 + (y1 - y0) * (math.log(s) - x0) / (x1 - x0))
    return Quantity(min(eta, 1.0), DIMENSIONLESS)


@dataclass(frozen=True)
class DetectorSensitivity:
    """Minimum detectable force: a single threshold or a curve over frequency."""

    threshold: Optional[Quantity] = Quantity(5e-17, FORCE)
    band: str = "few tens of Hz"
    frequencies: tuple[float, ...] = ()
    forces: tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "frequencies", tuple(float(f) for f in self.frequencies))
        object.__setattr__(self, "forces", tuple(float(f) for f in self.forces))
        if self.threshold is not None:
            if self.frequencies:
                raise ValueError("give either a threshold or a curve, not both")
            if not _check_dim(self.threshold, FORCE, "threshold") > 0:
                raise ValueError("threshold must be positive")
            return
        if len(self.frequencies) < 2 or len(self.frequencies) != len(self.forces):
            raise ValueError("sensitivity curve needs at least two (frequency, force) rows")
        if any(b <= a for a, b in zip(self.frequencies, self.frequencies[1:])):
            raise ValueError("curve frequencies must be strictly increasing")
        if any(f <= 0 for f in self.frequencies + self.forces):
            raise ValueError("curve frequencies and forces must be positive")

    @property
    def is_curve(self) -> bool:
        return self.threshold is None

    @classmethod
    def curve(cls, frequencies: Sequence[float], forces: Sequence[float], band: str = "") -> DetectorSensitivity:
        return cls(None, band, tuple(frequencies), tuple(forces))

    @classmethod
    def from_csv(cls, path) -> DetectorSensitivity:
        """Read a ``frequency_hz,force_n`` curve."""
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames != ["frequency_hz", "force_n"]:
                raise ValueError(f"{path}: expected header 'frequency_hz,force_n', got {reader.fieldnames}")
            rows = [(float(r["frequency_hz"]), float(r["force_n"])) for r in reader]
        return cls.curve([r[0] for r in rows], [r[1] for r in rows], band=Path(path).name)

    def min_force(self, frequency: Optional[Quantity] = None) -> Quantity:
        if not self.is_curve:
            return self.threshold
        if frequency is None:
            raise FrequencyOutOfCurve("a frequency is required for a sensitivity curve")
        f = _check_dim(frequency, FREQUENCY, "frequency")
        fs, ys = self.frequencies, self.forces
        if not fs[0] <= f <= fs[-1]:
            raise FrequencyOutOfCurve(f"{f:.4g} Hz outside curve range [{fs[0]:.4g}, {fs[-1]:.4g}] Hz")
        i = 0
        while i < len(fs) - 2 and f > fs[i + 1]:
            i += 1
        t = (math.log(f) - math.log(fs[i])) / (math.log(fs[i + 1]) - math.log(fs[i]))
        return Quantity(math.exp(math.log(ys[i]) + t * (math.log(ys[i + 1]) - math.log(ys[i]))), FORCE)


def _eta(eta) -> float:
    e = as_quantity(eta).to(DIMENSIONLESS)
    if not 0 < e <= 1:
        raise ValueError(f"reduction factor {e} is outside (0, 1]")
    return e


def stack_force(stack: LayeredStack, g: Quantity, eta) -> Quantity:
    """Upward push on the whole stack, eta N A pi^2 hbar c / (720 (n a)^3) g/c^2."""
    _check_dim(g, ACCELERATION, "g")
    c = CONSTANTS.c
    per_cavity = (math.pi**2 / 720.0) * stack.area * CONSTANTS.hbar * c / (stack.separation * stack.refractive_index) ** 3
    return _eta(eta) * stack.layers * per_cavity * g / c**2


def modulation_amplitude(stack: LayeredStack, g: Quantity, model: ConductivityModel) -> Quantity:
    eta_normal = reduction_factor(model, stack.separation)
    return stack_force(stack, g, model.eta_superconducting) - stack_force(stack, g, eta_normal)


def fundamental_frequency(separation: Quantity) -> Quantity:
    """c / (2 a)."""
    if not _check_dim(separation, LENGTH, "separation") > 0:
        raise ValueError("separation must be positive")
    return CONSTANTS.c / (2.0 * separation)


def detector_margin(
    signal: Quantity, detector: DetectorSensitivity, frequency: Optional[Quantity] = None
) -> Quantity:
    """signal / minimum detectable force; above 1 is nominally detectable."""
    _check_dim(signal, FORCE, "signal")
    return signal / detector.min_force(frequency)


@dataclass(frozen=True)
class FeasibilityAssessment:
    eta_normal: Quantity
    force_normal: Quantity
    force_superconducting: Quantity
    modulation_amplitude: Quantity
    fundamental_frequency: Quantity
    total_thickness: Quantity
    threshold: Quantity
    margin: Quantity
    caveats: tuple[str, ...] = field(default=(FREQUENCY_CAVEAT, CORRECTIONS_CAVEAT, MODULATION_NOTE))


def assess(
    stack: LayeredStack,
    g: Quantity,
    model: ConductivityModel,
    detector: DetectorSensitivity,
    frequency: Optional[Quantity] = None,
) -> FeasibilityAssessment:
    eta_normal = reduction_factor(model, stack.separation)
    f_normal = stack_force(stack, g, eta_normal)
    f_super = stack_force(stack, g, model.eta_superconducting)
    amplitude = f_super - f_normal
    return FeasibilityAssessment(
        eta_normal=eta_normal,
        force_normal=f_normal,
        force_superconducting=f_super,
        modulation_amplitude=amplitude,
        fundamental_frequency=fundamental_frequency(stack.separation),
        total_thickness=stack.total_thickness,
        threshold=detector.min_force(frequency),
        margin=detector_margin(amplitude, detector, frequency),
    )
