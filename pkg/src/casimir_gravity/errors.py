"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class CasimirGravityError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(CasimirGravityError, TypeError):
    pass


class FractionalDimension(CasimirGravityError, ValueError):
    pass


class InvalidGeometry(CasimirGravityError, ValueError):
    pass


class MetricDegenerate(CasimirGravityError, ValueError):
    """Raised where 1 + 2 A_g z <= 0, i.e. outside the validity of the frame metric."""


class StepTooLarge(CasimirGravityError, ValueError):
    pass


class ScheduleTooShort(CasimirGravityError, ValueError):
    pass


class NonConvergent(CasimirGravityError, ArithmeticError):
    def __init__(self, message: str, trace=None):
        super().__init__(message)
        self.trace = list(trace) if trace is not None else []


class InsideHorizon(CasimirGravityError, ValueError):
    pass


class OutOfRange(CasimirGravityError, ValueError):
    pass


class FrequencyOutOfCurve(CasimirGravityError, ValueError):
    pass


class ConfigInvalid(CasimirGravityError, ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class UnknownAxis(ConfigInvalid):
    def __init__(self, axis: str, allowed):
        super().__init__("--axis", f"unknown sweep axis {axis!r}; expected one of {', '.join(allowed)}")
