"""Covariant force density on the cavity and the force integrated over its volume.

Two routes to the same number live here: a generic finite-difference
evaluation of the covariant divergence for arbitrary static, z-dependent
tensor and metric fields, and the closed form it must reproduce for the
accelerated-frame metric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import MetricDegenerate, StepTooLarge
from .quantities import (
    ACCELERATION,
    CONSTANTS,
    FORCE,
    FORCE_DENSITY,
    LENGTH,
    Quantity,
)
from .stress_tensor import (
    AcceleratedFrame,
    CavityGeometry,
    StressTensor,
    _check_dim,
    casimir_scale,
    field_tensor,
    frame_metric,
)

__all__ = [
    "PRESSURE_FRACTION",
    "ENERGY_FRACTION",
    "STEP_GUARD",
    "DEFAULT_STEP_FRACTION",
    "ForceDensityField",
    "ForceDensitySample",
    "ForceResult",
    "frame_fields",
    "default_step",
    "covariant_force_density",
    "convergence_order",
    "closed_force_density",
    "closed_force_density_field",
    "integrated_force",
    "integrated_force_trapezoid",
]

PRESSURE_FRACTION = 0.75
ENERGY_FRACTION = 0.25
# largest allowed change of any metric component across one step
STEP_GUARD = 0.1
DEFAULT_STEP_FRACTION = 1e-4

TensorField = Callable[[Quantity], StressTensor]
MetricField = Callable[[Quantity], np.ndarray]


def _sqrt_neg_det(metric: np.ndarray) -> float:
    d = -float(np.linalg.det(metric))
    if not d > 0:
        raise MetricDegenerate(f"-det g = {d} is not positive")
    return math.sqrt(d)


def frame_fields(geom: CavityGeometry, g: Quantity) -> tuple[TensorField, MetricField]:
    """Tensor and metric as functions of height for a cavity at rest in field ``g``."""
    frame = AcceleratedFrame.from_gravity(g)

    def tensor_field(z: Quantity) -> StressTensor:
        return field_tensor(geom, frame.at(z))

    def metric_field(z: Quantity) -> np.ndarray:
        return frame_metric(frame.at(z))

    return tensor_field, metric_field


def default_step(g: Quantity, fraction: float = DEFAULT_STEP_FRACTION) -> Quantity:
    """``fraction`` of the metric length scale c^2/g."""
    a_g = _check_dim(g, ACCELERATION, "g") / CONSTANTS.c.value**2
    if a_g == 0:
        raise ValueError("no metric length scale for g = 0; pass an explicit step")
    return Quantity(fraction / abs(a_g), LENGTH)


def covariant_force_density(
    tensor_field: TensorField,
    metric_field: MetricField,
    z: Quantity,
    step: Quantity,
) -> Quantity:
    """z component of the covariant force density by central differences.

    f_z = -(1/sqrt(-g)) d_z(sqrt(-g) T^z_z) + 1/2 (d_z g_{rs}) T^{rs}.
    Fields are static and uniform across the plates, so only z derivatives
    are taken.

    Raises:
        StepTooLarge: if a metric component changes by more than 0.1 over one step.
        MetricDegenerate: if the metric is degenerate anywhere on the stencil.
    """
    z0 = _check_dim(z, LENGTH, "z")
    h = _check_dim(step, LENGTH, "step")
    if not h > 0:
        raise ValueError(f"step must be positive, got {h}")
    zp, zm = Quantity(z0 + h, LENGTH), Quantity(z0 - h, LENGTH)

    g0, gp, gm = metric_field(z), metric_field(zp), metric_field(zm)
    change = max(np.max(np.abs(gp - g0)), np.max(np.abs(g0 - gm)))
    if change > STEP_GUARD:
        raise StepTooLarge(f"metric changes by {change:.3g} across one step (limit {STEP_GUARD})")
    t0, tp, tm = tensor_field(z), tensor_field(zp), tensor_field(zm)

    root0 = _sqrt_neg_det(g0)
    flux_p = _sqrt_neg_det(gp) * tp.mixed[3, 3]
    flux_m = _sqrt_neg_det(gm) * tm.mixed[3, 3]
    divergence = (flux_p - flux_m) / (2.0 * h) / root0

    dmetric = (gp - gm) / (2.0 * h)
    metric_term = 0.5 * float(np.sum(dmetric * t0.contravariant))
    return Quantity(-divergence + metric_term, FORCE_DENSITY)


def convergence_order(
    tensor_field: TensorField,
    metric_field: MetricField,
    z: Quantity,
    step: Quantity,
) -> float:
    """Observed order from three successive halvings of ``step``; ~2 when healthy."""
    values = [
        covariant_force_density(tensor_field, metric_field, z, step * (0.5**k)).value
        for k in range(3)
    ]
    d1, d2 = values[0] - values[1], values[1] - values[2]
    if d2 == 0:
        return math.inf
    return math.log2(abs(d1 / d2))


@dataclass(frozen=True)
class ForceDensitySample:
    z: Quantity
    value: Quantity
    pressure_fraction: float = PRESSURE_FRACTION
    energy_fraction: float = ENERGY_FRACTION

    @property
    def pressure_term(self) -> Quantity:
        return self.value * self.pressure_fraction

    @property
    def energy_term(self) -> Quantity:
        return self.value * self.energy_fraction


@dataclass(frozen=True)
class ForceDensityField:
    """Closed-form f_z(z) = K A_g / (1 + 2 A_g z) for one cavity in one field."""

    geom: CavityGeometry
    g: Quantity
    pressure_fraction: float = PRESSURE_FRACTION
    energy_fraction: float = ENERGY_FRACTION

    def __call__(self, z: Quantity) -> Quantity:
        return self.sample(z).value

    def sample(self, z: Quantity) -> ForceDensitySample:
        frame = AcceleratedFrame.from_gravity(self.g, z)
        h = frame.lapse_squared
        if not h > 0:
            raise MetricDegenerate(f"1 + 2 A_g z = {h} is not positive")
        k = casimir_scale(self.geom)
        weight = self.pressure_fraction + self.energy_fraction
        value = k * weight * frame.accel_param / h
        return ForceDensitySample(z, value, self.pressure_fraction, self.energy_fraction)


def closed_force_density_field(geom: CavityGeometry, g: Quantity) -> ForceDensityField:
    _check_dim(g, ACCELERATION, "g")
    return ForceDensityField(geom, g)


def closed_force_density(geom: CavityGeometry, g: Quantity, z: Quantity) -> ForceDensitySample:
    return closed_force_density_field(geom, g).sample(z)


@dataclass(frozen=True)
class ForceResult:
    """Force on the cavity along +z, i.e. against the gravitational acceleration.

    ``isolated`` drops the pressure term, which the walls' own mechanical
    stresses cancel for a free-standing cavity.
    """

    total: Quantity
    pressure_term: Quantity
    energy_term: Quantity
    isolated: bool
    direction: int = field(default=+1)

    def __post_init__(self):
        for name in ("total", "pressure_term", "energy_term"):
            _check_dim(getattr(self, name), FORCE, name)


def _push_force(geom: CavityGeometry, g: Quantity) -> Quantity:
    c = CONSTANTS.c
    energy = (math.pi**2 / 720.0) * geom.area * CONSTANTS.hbar * c / geom.optical_separation**3
    return energy * g / c**2


def integrated_force(geom: CavityGeometry, g: Quantity, isolated: bool = False) -> ForceResult:
    """Force as volume times the force density on the observer's world line.

    For ``isolated=True`` the total is the Newtonian push on the negative
    Casimir rest energy, pi^2 A hbar c / (720 (n a)^3) g/c^2.
    """
    if _check_dim(g, ACCELERATION, "g") < 0:
        raise ValueError("g is a magnitude and must be non-negative")
    sample = closed_force_density(geom, g, Quantity(0.0, LENGTH))
    volume = geom.volume
    pressure = volume * sample.pressure_term
    energy = volume * sample.energy_term
    if isolated:
        return ForceResult(_push_force(geom, g), pressure, energy, True)
    return ForceResult(pressure + energy, pressure, energy, False)


def integrated_force_trapezoid(
    geom: CavityGeometry, g: Quantity, isolated: bool = False, samples: int = 65
) -> ForceResult:
    """Trapezoid integral of f_z over the gap, lower plate on the world line.

    Differs from :func:`integrated_force` by O(A_g n a); used to bound that
    neglected term.
    """
    if samples < 2:
        raise ValueError("need at least two samples")
    fld = closed_force_density_field(geom, g)
    width = geom.optical_separation.value
    zs = np.linspace(0.0, width, samples)
    f = np.array([fld(Quantity(z, LENGTH)).value for z in zs])
    integral = float(np.sum(0.5 * (f[1:] + f[:-1]) * np.diff(zs)))
    total = Quantity(integral, FORCE_DENSITY + LENGTH) * geom.area
    pressure = total * PRESSURE_FRACTION
    energy = total * ENERGY_FRACTION
    if isolated:
        return ForceResult(energy, pressure, energy, True)
    return ForceResult(total, pressure, energy, False)
