"""Mode-sum route to the Casimir energy and its red-shift in a Schwarzschild field.

The transverse momentum integral is continued analytically; the sum over the
longitudinal mode index is regularized numerically with an exponential cutoff,
the 6/eps^4 pole subtracted and the remainder extrapolated to eps -> 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, InsideHorizon, NonConvergent, ScheduleTooShort
from .force import integrated_force
from .quantities import (
    CONSTANTS,
    FORCE,
    INVERSE_LENGTH,
    INVERSE_VOLUME,
    LENGTH,
    MASS,
    Quantity,
)
from .stress_tensor import CavityGeometry, _check_dim

__all__ = [
    "DEFAULT_SCHEDULE",
    "TAIL_TOLERANCE",
    "EARTH_MASS",
    "EARTH_RADIUS",
    "EARTH",
    "RegularizationRun",
    "SchwarzschildContext",
    "cutoff_sum",
    "subtracted_cutoff_sum",
    "transverse_mode_energy",
    "regularized_cubic_sum",
    "casimir_energy",
    "redshift_factor",
    "redshifted_energy",
    "gradient_force",
    "push_force_deviation",
]

DEFAULT_SCHEDULE = (0.2, 0.1, 0.05, 0.025)
TAIL_TOLERANCE = 1e-18
FD_RELATIVE_STEP = 1e-6

EARTH_MASS = Quantity(5.972e24, MASS)
EARTH_RADIUS = Quantity(6.371e6, LENGTH)


def _cutoff_terms(eps: float) -> list[float]:
    if not eps > 0:
        raise ValueError(f"cutoff must be positive, got {eps}")
    peak = 3.0 / eps
    tail_ratio = -math.expm1(-eps)
    terms = []
    running = 0.0
    n = 1
    while True:
        t = n**3 * math.exp(-eps * n)
        terms.append(t)
        running += t
        # past the peak the tail is bounded by t / (1 - exp(-eps)) up to a factor -> 1
        if n > peak and t < TAIL_TOLERANCE * running * tail_ratio:
            break
        n += 1
    return terms


def cutoff_sum(eps: float) -> float:
    """S(eps) = sum_{n>=1} n^3 exp(-eps n), truncated once the tail is below 1e-18 of the total."""
    return math.fsum(_cutoff_terms(eps))


def subtracted_cutoff_sum(eps: float) -> float:
    """S(eps) - 6/eps^4 with the pole evaluated exactly for the float ``eps``."""
    pole = Fraction(6) / Fraction(eps) ** 4
    hi = float(pole)
    lo = float(pole - Fraction(hi))
    return math.fsum(_cutoff_terms(eps) + [-hi, -lo])


@dataclass(frozen=True)
class RegularizationRun:
    """Trace of one cutoff-and-extrapolate evaluation of the regularized sum of n^3.

    ``partial_values`` are S(eps) - 6/eps^4; ``extrapolants`` the diagonal of
    the Richardson tableau, the last of which is ``value``.
    """

    epsilons: tuple[float, ...]
    partial_values: tuple[float, ...]
    extrapolants: tuple[float, ...]
    value: float
    error_estimate: float


def _validate_schedule(schedule: Sequence[float]) -> tuple[float, ...]:
    eps = tuple(float(e) for e in schedule)
    if len(eps) < 3:
        raise ScheduleTooShort(f"need at least 3 cutoffs for extrapolation, got {len(eps)}")
    if any(not e > 0 for e in eps):
        raise ValueError("cutoffs must be positive")
    if any(b >= a for a, b in zip(eps, eps[1:])):
        raise ValueError("cutoffs must be strictly decreasing")
    return eps


def regularized_cubic_sum(schedule: Sequence[float] = DEFAULT_SCHEDULE) -> RegularizationRun:
    """Regularized value of sum n^3 (-> 1/120).

    The subtracted remainder is even in eps, so a polynomial in eps^2 is
    extrapolated to zero with Neville's scheme.

    Raises:
        ScheduleTooShort: fewer than three cutoffs.
        NonConvergent: successive extrapolants move apart instead of together.
    """
    eps = _validate_schedule(schedule)
    partial = tuple(subtracted_cutoff_sum(e) for e in eps)
    xs = [e * e for e in eps]

    row = list(partial)
    diagonal = [row[0]]
    for j in range(1, len(xs)):
        row = [
            row[i + 1] + (row[i + 1] - row[i]) * xs[i + j] / (xs[i] - xs[i + j])
            for i in range(len(row) - 1)
        ]
        diagonal.append(row[0])

    steps = [abs(b - a) for a, b in zip(diagonal, diagonal[1:])]
    if len(steps) >= 2 and steps[-1] >= steps[-2]:
        raise NonConvergent(
            f"extrapolants diverge: successive changes {steps[-2]:.3g} -> {steps[-1]:.3g}",
            trace=diagonal,
        )
    return RegularizationRun(eps, partial, tuple(diagonal), diagonal[-1], steps[-1])


def transverse_mode_energy(kappa: Quantity) -> Quantity:
    """Continued value of the transverse integral d^2k/(2 pi)^2 sqrt(k^2 + kappa^2).

    Equals -kappa^3/(6 pi), in 1/m^3.
    """
    k = _check_dim(kappa, INVERSE_LENGTH, "kappa")
    if k < 0:
        raise ValueError("kappa must be non-negative")
    return Quantity(-(k**3) / (6.0 * math.pi), INVERSE_VOLUME)


def casimir_energy(
    geom: CavityGeometry,
    method: str = "closed_form",
    schedule: Sequence[float] = DEFAULT_SCHEDULE,
) -> Quantity:
    """Regularized zero-point energy of the cavity, in J.

    ``method="numeric_regularized"`` assembles the energy from the continued
    transverse integral and the numerically regularized mode sum; modes
    n and -n contribute equally and n = 0 contributes nothing.
    """
    hbar_c = CONSTANTS.hbar * CONSTANTS.c
    if method == "closed_form":
        return -(math.pi**2 / 720.0) * geom.area * hbar_c / geom.optical_separation**3
    if method == "numeric_regularized":
        run = regularized_cubic_sum(schedule)
        kappa_1 = math.pi / geom.optical_separation
        per_mode = transverse_mode_energy(kappa_1)
        return (hbar_c * geom.area / 2.0) * 2.0 * per_mode * run.value
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class SchwarzschildContext:
    """Static observer at radius ``radius`` outside a mass ``mass``."""

    mass: Quantity
    radius: Quantity

    def __post_init__(self):
        m = _check_dim(self.mass, MASS, "mass")
        r = _check_dim(self.radius, LENGTH, "radius")
        if not m >= 0:
            raise ValueError("mass must be non-negative")
        if not r > self.alpha.value:
            raise InsideHorizon(f"radius {r} m is not outside alpha = {self.alpha.value} m")

    @property
    def alpha(self) -> Quantity:
        """2GM/c^2."""
        return 2.0 * CONSTANTS.G * self.mass / CONSTANTS.c**2

    @property
    def g00(self) -> float:
        return 1.0 - (self.alpha / self.radius).value

    @property
    def local_g(self) -> Quantity:
        return CONSTANTS.G * self.mass / self.radius**2

    def with_radius(self, radius: Quantity) -> SchwarzschildContext:
        return SchwarzschildContext(self.mass, radius)


EARTH = SchwarzschildContext(EARTH_MASS, EARTH_RADIUS)


def redshift_factor(ctx: SchwarzschildContext) -> float:
    return math.sqrt(ctx.g00)


def _redshift_deficit(alpha: float, r: float) -> float:
    # sqrt(1 - x) - 1 without cancellation for x << 1
    x = alpha / r
    return -x / (1.0 + math.sqrt(1.0 - x))


def redshifted_energy(
    geom: CavityGeometry,
    ctx: SchwarzschildContext,
    method: str = "closed_form",
    schedule: Sequence[float] = DEFAULT_SCHEDULE,
) -> Quantity:
    """Every mode frequency scaled by sqrt(g_00) before regularization.

    The regularized sum is linear in the mode energies, so the scaling comes
    out as one global factor.
    """
    return casimir_energy(geom, method, schedule) * redshift_factor(ctx)


def gradient_force(
    geom: CavityGeometry,
    ctx: SchwarzschildContext,
    mode: str = "analytic",
    relative_step: float = FD_RELATIVE_STEP,
) -> Quantity:
    """Outward force -dU_S/dr on the cavity, in N.

    ``finite_difference`` differentiates the red-shift deficit
    (sqrt(g_00) - 1) U_reg, which has the same gradient as U_S but no
    cancellation against the O(1) flat-space energy.
    """
    u_reg = casimir_energy(geom).value
    alpha = ctx.alpha.value
    r = ctx.radius.value
    if mode == "analytic":
        gm_over_c2r2 = alpha / (2.0 * r * r)
        value = abs(u_reg) * gm_over_c2r2 / math.sqrt(1.0 - alpha / r)
    elif mode == "finite_difference":
        h = r * relative_step
        if not r - h > alpha:
            raise InsideHorizon("finite-difference stencil reaches the horizon")
        up = u_reg * _redshift_deficit(alpha, r + h)
        um = u_reg * _redshift_deficit(alpha, r - h)
        value = -(up - um) / (2.0 * h)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return Quantity(value, FORCE)


def push_force_deviation(geom: CavityGeometry, ctx: SchwarzschildContext) -> float:
    """Relative excess of the gradient force over the isolated push force at g = GM/r^2.

    Expected to be about alpha/(2r).
    """
    grad = gradient_force(geom, ctx)
    push = integrated_force(geom, ctx.local_g, isolated=True).total
    if grad.dim != push.dim:
        raise DimensionMismatch("force dimensions disagree")
    return (grad.value - push.value) / push.value

