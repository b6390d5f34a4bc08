"""Dimensioned scalars with integer (M, L, T) exponents and the constant registry.

Every physical value in the package travels as a :class:`Quantity`. Arithmetic
checks dimensions eagerly so that a wrong formula fails loudly instead of
producing a plausible number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real

from .errors import DimensionMismatch, FractionalDimension

__all__ = [
    "Dimension",
    "Quantity",
    "PhysicalConstants",
    "CONSTANTS",
    "qmul",
    "qdiv",
    "qadd",
    "qsub",
    "qpow",
    "qsqrt",
    "as_quantity",
    "DIMENSIONLESS",
    "MASS",
    "LENGTH",
    "TIME",
    "AREA",
    "VOLUME",
    "INVERSE_LENGTH",
    "INVERSE_VOLUME",
    "VELOCITY",
    "ACCELERATION",
    "FORCE",
    "ENERGY",
    "ENERGY_DENSITY",
    "FORCE_DENSITY",
    "FREQUENCY",
    "ACTION",
    "GRAVITATIONAL",
]


@dataclass(frozen=True)
class Dimension:
    """Exponents over mass, length and time. ``temperature`` is reserved."""

    mass: int = 0
    length: int = 0
    time: int = 0
    temperature: int = 0

    def __post_init__(self):
        for name in ("mass", "length", "time", "temperature"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int):
                raise FractionalDimension(f"dimension exponent {name}={v!r} is not an integer")

    @property
    def exponents(self) -> tuple[int, int, int, int]:
        return (self.mass, self.length, self.time, self.temperature)

    @property
    def is_dimensionless(self) -> bool:
        return not any(self.exponents)

    def __add__(self, other: Dimension) -> Dimension:
        return Dimension(*(a + b for a, b in zip(self.exponents, other.exponents)))

    def __sub__(self, other: Dimension) -> Dimension:
        return Dimension(*(a - b for a, b in zip(self.exponents, other.exponents)))

    def __mul__(self, k: int) -> Dimension:
        return Dimension(*(a * k for a in self.exponents))

    __rmul__ = __mul__

    def halve(self) -> Dimension:
        if any(e % 2 for e in self.exponents):
            raise FractionalDimension(f"square root of {self.symbol()} has non-integer exponents")
        return Dimension(*(e // 2 for e in self.exponents))

    def symbol(self) -> str:
        """SI unit string; named units for the derived dimensions reports use."""
        named = _NAMED_UNITS.get(self)
        if named is not None:
            return named
        parts = []
        for sym, e in zip(("kg", "m", "s", "K"), self.exponents):
            if e == 1:
                parts.append(sym)
            elif e:
                parts.append(f"{sym}^{e}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.symbol()


DIMENSIONLESS = Dimension()
MASS = Dimension(mass=1)
LENGTH = Dimension(length=1)
TIME = Dimension(time=1)
AREA = Dimension(length=2)
VOLUME = Dimension(length=3)
INVERSE_LENGTH = Dimension(length=-1)
INVERSE_VOLUME = Dimension(length=-3)
VELOCITY = Dimension(length=1, time=-1)
ACCELERATION = Dimension(length=1, time=-2)
FORCE = Dimension(mass=1, length=1, time=-2)
ENERGY = Dimension(mass=1, length=2, time=-2)
ENERGY_DENSITY = Dimension(mass=1, length=-1, time=-2)
FORCE_DENSITY = Dimension(mass=1, length=-2, time=-2)
FREQUENCY = Dimension(time=-1)
ACTION = Dimension(mass=1, length=2, time=-1)
GRAVITATIONAL = Dimension(mass=-1, length=3, time=-2)

_NAMED_UNITS = {
    DIMENSIONLESS: "1",
    MASS: "kg",
    LENGTH: "m",
    TIME: "s",
    AREA: "m^2",
    VOLUME: "m^3",
    INVERSE_LENGTH: "1/m",
    INVERSE_VOLUME: "1/m^3",
    VELOCITY: "m/s",
    ACCELERATION: "m/s^2",
    FORCE: "N",
    ENERGY: "J",
    ENERGY_DENSITY: "J/m^3",
    FORCE_DENSITY: "N/m^3",
    FREQUENCY: "Hz",
    ACTION: "J s",
    Dimension(mass=1, length=3, time=-2): "J m",
    GRAVITATIONAL: "m^3/(kg s^2)",
}


@dataclass(frozen=True)
class Quantity:
    """A float value in SI base units together with its dimension."""

    value: float
    dim: Dimension = DIMENSIONLESS

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))

    @property
    def unit(self) -> str:
        return self.dim.symbol()

    def to(self, dim: Dimension) -> float:
        """Return the SI value after asserting the dimension."""
        if self.dim != dim:
            raise DimensionMismatch(f"expected {dim.symbol()}, got {self.unit}")
        return self.value

    def __mul__(self, other):
        return qmul(self, as_quantity(other))

    def __rmul__(self, other):
        return qmul(as_quantity(other), self)

    def __truediv__(self, other):
        return qdiv(self, as_quantity(other))

    def __rtruediv__(self, other):
        return qdiv(as_quantity(other), self)

    def __add__(self, other):
        return qadd(self, as_quantity(other))

    def __radd__(self, other):
        return qadd(as_quantity(other), self)

    def __sub__(self, other):
        return qsub(self, as_quantity(other))

    def __rsub__(self, other):
        return qsub(as_quantity(other), self)

    def __pow__(self, k: int):
        return qpow(self, k)

    def __neg__(self):
        return Quantity(-self.value, self.dim)

    def __abs__(self):
        return Quantity(abs(self.value), self.dim)

    def __float__(self) -> float:
        if not self.dim.is_dimensionless:
            raise DimensionMismatch(f"cannot convert {self.unit} quantity to a bare float")
        return self.value

    def _cmp(self, other) -> tuple[float, float]:
        other = as_quantity(other)
        if other.dim != self.dim:
            raise DimensionMismatch(f"cannot compare {self.unit} with {other.unit}")
        return self.value, other.value

    def __lt__(self, other):
        a, b = self._cmp(other)
        return a < b

    def __le__(self, other):
        a, b = self._cmp(other)
        return a <= b

    def __gt__(self, other):
        a, b = self._cmp(other)
        return a > b

    def __ge__(self, other):
        a, b = self._cmp(other)
        return a >= b

    def __str__(self) -> str:
        return f"{self.value:.6g} {self.unit}"


def as_quantity(x) -> Quantity:
    """Promote bare reals to dimensionless quantities."""
    if isinstance(x, Quantity):
        return x
    if isinstance(x, Real):
        return Quantity(float(x), DIMENSIONLESS)
    raise TypeError(f"cannot interpret {type(x).__name__} as a Quantity")


def qmul(a: Quantity, b: Quantity) -> Quantity:
    return Quantity(a.value * b.value, a.dim + b.dim)


def qdiv(a: Quantity, b: Quantity) -> Quantity:
    return Quantity(a.value / b.value, a.dim - b.dim)


def qadd(a: Quantity, b: Quantity) -> Quantity:
    if a.dim != b.dim:
        raise DimensionMismatch(f"cannot add {a.unit} and {b.unit}")
    return Quantity(a.value + b.value, a.dim)


def qsub(a: Quantity, b: Quantity) -> Quantity:
    if a.dim != b.dim:
        raise DimensionMismatch(f"cannot subtract {b.unit} from {a.unit}")
    return Quantity(a.value - b.value, a.dim)


def qpow(a: Quantity, k: int) -> Quantity:
    if isinstance(k, bool) or not isinstance(k, int):
        raise FractionalDimension(f"only integer powers are supported, got {k!r}")
    return Quantity(a.value**k, a.dim * k)


def qsqrt(a: Quantity) -> Quantity:
    dim = a.dim.halve()
    return Quantity(math.sqrt(a.value), dim)


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA 2018 exact/recommended values used by every formula."""

    hbar: Quantity = Quantity(1.054571817e-34, ACTION)
    c: Quantity = Quantity(2.99792458e8, VELOCITY)
    G: Quantity = Quantity(6.67430e-11, GRAVITATIONAL)
    g_standard: Quantity = Quantity(9.80665, ACCELERATION)


CONSTANTS = PhysicalConstants()
