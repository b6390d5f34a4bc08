"""Regularized vacuum stress-energy tensor of a parallel-plate cavity.

Coordinates are (x0, x, y, z) with signature (-,+,+,+); the plates are
orthogonal to z and the gravitational acceleration points along -z.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidGeometry, MetricDegenerate
from .quantities import (
    ACCELERATION,
    AREA,
    CONSTANTS,
    ENERGY_DENSITY,
    INVERSE_LENGTH,
    LENGTH,
    Quantity,
)

__all__ = [
    "CavityGeometry",
    "AcceleratedFrame",
    "StressTensor",
    "MINKOWSKI",
    "Z_HAT",
    "casimir_scale",
    "minkowski_tensor",
    "frame_metric",
    "field_tensor",
]

MINKOWSKI = np.diag([-1.0, 1.0, 1.0, 1.0])
MINKOWSKI.flags.writeable = False
Z_HAT = np.array([0.0, 0.0, 0.0, 1.0])
Z_HAT.flags.writeable = False


def _check_dim(q: Quantity, dim, name: str) -> float:
    if not isinstance(q, Quantity):
        raise TypeError(f"{name} must be a Quantity, got {type(q).__name__}")
    if q.dim != dim:
        raise DimensionMismatch(f"{name} must have dimension {dim.symbol()}, got {q.unit}")
    return q.value


@dataclass(frozen=True)
class CavityGeometry:
    """Plate separation, plate area and refractive index of the gap medium."""

    separation: Quantity
    area: Quantity
    refractive_index: float = 1.0

    def __post_init__(self):
        a = _check_dim(self.separation, LENGTH, "separation")
        area = _check_dim(self.area, AREA, "area")
        n = float(self.refractive_index)
        object.__setattr__(self, "refractive_index", n)
        if not a > 0:
            raise InvalidGeometry(f"separation must be positive, got {a}")
        if not area > 0:
            raise InvalidGeometry(f"area must be positive, got {area}")
        if not n >= 1.0 or not math.isfinite(n):
            raise InvalidGeometry(f"refractive index must be >= 1, got {n}")

    @classmethod
    def from_side(cls, separation: Quantity, side: Quantity, refractive_index: float = 1.0):
        """Square plates of side ``L`` so that A = L^2."""
        _check_dim(side, LENGTH, "side")
        return cls(separation, side**2, refractive_index)

    @classmethod
    def from_diameter(cls, separation: Quantity, diameter: Quantity, refractive_index: float = 1.0):
        r = _check_dim(diameter, LENGTH, "diameter") / 2.0
        return cls(separation, Quantity(math.pi * r * r, AREA), refractive_index)

    @classmethod
    def from_si(cls, separation_m: float, area_m2: float, refractive_index: float = 1.0):
        return cls(Quantity(separation_m, LENGTH), Quantity(area_m2, AREA), refractive_index)

    @property
    def optical_separation(self) -> Quantity:
        """n * a, the separation every vacuum formula actually sees."""
        return self.separation * self.refractive_index

    @property
    def volume(self) -> Quantity:
        return self.area * self.optical_separation


@dataclass(frozen=True)
class AcceleratedFrame:
    """Observer at rest in a uniform field: A_g = g/c^2 and height z along the axis."""

    accel_param: Quantity
    height: Quantity = Quantity(0.0, LENGTH)

    def __post_init__(self):
        _check_dim(self.accel_param, INVERSE_LENGTH, "accel_param")
        _check_dim(self.height, LENGTH, "height")

    @classmethod
    def from_gravity(cls, g: Quantity, height: Quantity = Quantity(0.0, LENGTH)):
        _check_dim(g, ACCELERATION, "g")
        return cls(g / CONSTANTS.c**2, height)

    def at(self, height: Quantity) -> AcceleratedFrame:
        return AcceleratedFrame(self.accel_param, height)

    @property
    def lapse_squared(self) -> float:
        """1 + 2 A_g z, i.e. -g_00."""
        return 1.0 + 2.0 * self.accel_param.value * self.height.value


@dataclass(frozen=True)
class StressTensor:
    """Contravariant T^{mu nu} and mixed T^mu_nu components in J/m^3.

    Arrays hold SI values; :meth:`component` hands them back as quantities.
    """

    contravariant: np.ndarray
    mixed: np.ndarray

    def __post_init__(self):
        for name in ("contravariant", "mixed"):
            arr = np.array(getattr(self, name), dtype=float)
            if arr.shape != (4, 4):
                raise ValueError(f"{name} must be 4x4, got {arr.shape}")
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @classmethod
    def from_contravariant(cls, upper: np.ndarray, metric: np.ndarray) -> StressTensor:
        upper = np.asarray(upper, dtype=float)
        return cls(upper, upper @ np.asarray(metric, dtype=float))

    def component(self, mu: int, nu: int, mixed: bool = False) -> Quantity:
        arr = self.mixed if mixed else self.contravariant
        return Quantity(arr[mu, nu], ENERGY_DENSITY)

    def trace(self, metric: np.ndarray = MINKOWSKI) -> Quantity:
        """g_{mu nu} T^{mu nu}."""
        return Quantity(float(np.sum(np.asarray(metric) * self.contravariant)), ENERGY_DENSITY)


def casimir_scale(geom: CavityGeometry) -> Quantity:
    """Energy-density scale K = pi^2 hbar c / (180 (n a)^4)."""
    return (math.pi**2 / 180.0) * CONSTANTS.hbar * CONSTANTS.c / geom.optical_separation**4


def minkowski_tensor(geom: CavityGeometry) -> StressTensor:
    k = casimir_scale(geom).value
    upper = k * (0.25 * MINKOWSKI - np.outer(Z_HAT, Z_HAT))
    return StressTensor.from_contravariant(upper, MINKOWSKI)


def frame_metric(frame: AcceleratedFrame) -> np.ndarray:
    """Covariant metric g_{mu nu} to first order near the observer's world line.

    Raises:
        MetricDegenerate: if 1 + 2 A_g z <= 0.
    """
    h = frame.lapse_squared
    if not h > 0:
        raise MetricDegenerate(f"1 + 2 A_g z = {h} is not positive")
    g = np.eye(4)
    g[0, 0] = -h
    return g


def field_tensor(geom: CavityGeometry, frame: AcceleratedFrame) -> StressTensor:
    metric = frame_metric(frame)
    k = casimir_scale(geom).value
    h = frame.lapse_squared
    # transverse components stay at their flat value; g_11, g_22 are constant
    upper = np.diag([-0.25 * k / h, 0.25 * k, 0.25 * k, -0.75 * k])
    return StressTensor.from_contravariant(upper, metric)
