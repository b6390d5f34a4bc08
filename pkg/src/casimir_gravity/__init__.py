"""Casimir-cavity forces in a weak gravitational field.

The force is computed two ways: from the regularized stress-energy tensor in
the accelerated frame of an observer at rest, and from the gradient of the
red-shifted mode-sum energy. An experiment model scales the result to a
multi-layer stack and compares it with a detector's force sensitivity.
"""

__version__ = "0.1.0"

from .errors import (
    CasimirGravityError,
    ConfigInvalid,
    DimensionMismatch,
    FractionalDimension,
    FrequencyOutOfCurve,
    InsideHorizon,
    InvalidGeometry,
    MetricDegenerate,
    NonConvergent,
    OutOfRange,
    ScheduleTooShort,
    StepTooLarge,
    UnknownAxis,
)
from .quantities import CONSTANTS, Dimension, PhysicalConstants, Quantity
from .stress_tensor import (
    AcceleratedFrame,
    CavityGeometry,
    StressTensor,
    casimir_scale,
    field_tensor,
    frame_metric,
    minkowski_tensor,
)
from .force import (
    ForceResult,
    closed_force_density,
    covariant_force_density,
    integrated_force,
)
from .modesum import (
    RegularizationRun,
    SchwarzschildContext,
    casimir_energy,
    gradient_force,
    redshifted_energy,
    regularized_cubic_sum,
    transverse_mode_energy,
)
from .experiment import (
    ConductivityModel,
    DetectorSensitivity,
    LayeredStack,
    detector_margin,
    fundamental_frequency,
    modulation_amplitude,
    reduction_factor,
    stack_force,
)
