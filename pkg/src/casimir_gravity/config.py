"""Run configuration: strict JSON parsing, normalized serialization, builders.

Unknown keys are rejected everywhere so a mistyped parameter cannot silently
fall back to a default.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Optional

from .errors import ConfigInvalid, UnknownAxis
from .experiment import ConductivityModel, DetectorSensitivity, LayeredStack
from .modesum import DEFAULT_SCHEDULE, SchwarzschildContext
from .quantities import ACCELERATION, AREA, FORCE, FREQUENCY, LENGTH, MASS, Quantity
from .force import DEFAULT_STEP_FRACTION
from .stress_tensor import CavityGeometry

__all__ = [
    "SWEEP_AXES",
    "CavityConfig",
    "GravityConfig",
    "StackConfig",
    "ConductivityConfig",
    "DetectorConfig",
    "NumericsConfig",
    "RunConfig",
    "load_config",
    "parse_config",
]

SWEEP_AXES = ("separation", "refractive_index", "layers", "eta_superconducting", "g")


def _check_keys(where: str, data: Any, allowed: tuple[str, ...]) -> dict:
    if not isinstance(data, dict):
        raise ConfigInvalid(where, "expected an object")
    unknown = sorted(set(data) - set(allowed))
    if unknown:
        raise ConfigInvalid(f"{where}.{unknown[0]}", f"unknown key (allowed: {', '.join(allowed)})")
    return data


def _number(where: str, value: Any, *, positive: bool = False, minimum: Optional[float] = None) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigInvalid(where, f"expected a number, got {value!r}")
    x = float(value)
    if not math.isfinite(x):
        raise ConfigInvalid(where, "must be finite")
    if positive and not x > 0:
        raise ConfigInvalid(where, f"must be positive, got {x}")
    if minimum is not None and x < minimum:
        raise ConfigInvalid(where, f"must be >= {minimum}, got {x}")
    return x


def _integer(where: str, value: Any) -> int:
    x = _number(where, value)
    if x != int(x):
        raise ConfigInvalid(where, f"expected an integer, got {value!r}")
    if x < 1:
        raise ConfigInvalid(where, f"must be a positive integer, got {value!r}")
    return int(x)


def _optional(data: dict, key: str, where: str, **kw) -> Optional[float]:
    return _number(f"{where}.{key}", data[key], **kw) if key in data else None


def _drop_none(d: dict) -> dict:
    return {k: v for k, v in d.items() if v is not None}


@dataclass(frozen=True)
class CavityConfig:
    separation_m: float
    refractive_index: float
    area_m2: Optional[float] = None
    disk_diameter_m: Optional[float] = None

    @classmethod
    def from_dict(cls, data: Any) -> CavityConfig:
        w = "cavity"
        data = _check_keys(w, data, ("separation_m", "refractive_index", "area_m2", "disk_diameter_m"))
        for key in ("separation_m", "refractive_index"):
            if key not in data:
                raise ConfigInvalid(f"{w}.{key}", "required")
        area = _optional(data, "area_m2", w, positive=True)
        diameter = _optional(data, "disk_diameter_m", w, positive=True)
        if (area is None) == (diameter is None):
            raise ConfigInvalid(f"{w}.area_m2", "give exactly one of area_m2 or disk_diameter_m")
        return cls(
            separation_m=_number(f"{w}.separation_m", data["separation_m"], positive=True),
            refractive_index=_number(f"{w}.refractive_index", data["refractive_index"], minimum=1.0),
            area_m2=area,
            disk_diameter_m=diameter,
        )

    def to_dict(self) -> dict:
        return _drop_none(
            {
                "separation_m": self.separation_m,
                "refractive_index": self.refractive_index,
                "area_m2": self.area_m2,
                "disk_diameter_m": self.disk_diameter_m,
            }
        )


@dataclass(frozen=True)
class GravityConfig:
    mode: str
    g_m_s2: Optional[float] = None
    mass_kg: Optional[float] = None
    radius_m: Optional[float] = None

    @classmethod
    def from_dict(cls, data: Any) -> GravityConfig:
        w = "gravity"
        data = _check_keys(w, data, ("mode", "g_m_s2", "mass_kg", "radius_m"))
        mode = data.get("mode", "uniform")
        if mode == "uniform":
            if "mass_kg" in data or "radius_m" in data:
                raise ConfigInvalid(w, "uniform mode takes g_m_s2 only")
            if "g_m_s2" not in data:
                raise ConfigInvalid(f"{w}.g_m_s2", "required in uniform mode")
            return cls(mode, g_m_s2=_number(f"{w}.g_m_s2", data["g_m_s2"], minimum=0.0))
        if mode == "schwarzschild":
            if "g_m_s2" in data:
                raise ConfigInvalid(w, "schwarzschild mode takes mass_kg and radius_m, not g_m_s2")
            for key in ("mass_kg", "radius_m"):
                if key not in data:
                    raise ConfigInvalid(f"{w}.{key}", "required in schwarzschild mode")
            return cls(
                mode,
                mass_kg=_number(f"{w}.mass_kg", data["mass_kg"], positive=True),
                radius_m=_number(f"{w}.radius_m", data["radius_m"], positive=True),
            )
        raise ConfigInvalid(f"{w}.mode", f"expected 'uniform' or 'schwarzschild', got {mode!r}")

    def to_dict(self) -> dict:
        return _drop_none(
            {"mode": self.mode, "g_m_s2": self.g_m_s2, "mass_kg": self.mass_kg, "radius_m": self.radius_m}
        )


@dataclass(frozen=True)
class StackConfig:
    layers: int
    layer_thickness_m: float

    @classmethod
    def from_dict(cls, data: Any) -> StackConfig:
        w = "stack"
        data = _check_keys(w, data, ("layers", "layer_thickness_m"))
        for key in ("layers", "layer_thickness_m"):
            if key not in data:
                raise ConfigInvalid(f"{w}.{key}", "required")
        return cls(
            layers=_integer(f"{w}.layers", data["layers"]),
            layer_thickness_m=_number(f"{w}.layer_thickness_m", data["layer_thickness_m"], positive=True),
        )

    def to_dict(self) -> dict:
        return {"layers": self.layers, "layer_thickness_m": self.layer_thickness_m}


@dataclass(frozen=True)
class ConductivityConfig:
    """Either a CSV table path or inline ``{separation_nm, eta}`` anchors."""

    table_path: Optional[str] = None
    anchors: Optional[tuple[tuple[float, float], ...]] = None
    eta_superconducting: float = 0.5

    @classmethod
    def from_dict(cls, data: Any) -> ConductivityConfig:
        w = "conductivity"
        data = _check_keys(w, data, ("table_path", "anchors", "eta_superconducting"))
        if "table_path" in data and "anchors" in data:
            raise ConfigInvalid(w, "give table_path or anchors, not both")
        table_path = data.get("table_path")
        if table_path is not None and not isinstance(table_path, str):
            raise ConfigInvalid(f"{w}.table_path", "expected a string")
        anchors = None
        if "anchors" in data:
            raw = data["anchors"]
            if not isinstance(raw, list) or not raw:
                raise ConfigInvalid(f"{w}.anchors", "expected a non-empty list")
            rows = []
            for i, row in enumerate(raw):
                rw = f"{w}.anchors[{i}]"
                row = _check_keys(rw, row, ("separation_nm", "eta"))
                if set(row) != {"separation_nm", "eta"}:
                    raise ConfigInvalid(rw, "needs separation_nm and eta")
                rows.append(
                    (
                        _number(f"{rw}.separation_nm", row["separation_nm"], positive=True),
                        _number(f"{rw}.eta", row["eta"], positive=True),
                    )
                )
            anchors = tuple(rows)
        eta_sc = 0.5
        if "eta_superconducting" in data:
            eta_sc = _number(f"{w}.eta_superconducting", data["eta_superconducting"], positive=True)
        if eta_sc > 1:
            raise ConfigInvalid(f"{w}.eta_superconducting", "must be <= 1")
        return cls(table_path, anchors, eta_sc)

    def to_dict(self) -> dict:
        anchors = None
        if self.anchors is not None:
            anchors = [{"separation_nm": s, "eta": e} for s, e in self.anchors]
        return _drop_none(
            {"table_path": self.table_path, "anchors": anchors, "eta_superconducting": self.eta_superconducting}
        )

    def model(self) -> ConductivityModel:
        try:
            if self.table_path is not None:
                return ConductivityModel.from_csv(self.table_path, self.eta_superconducting)
            if self.anchors is not None:
                return ConductivityModel.from_anchors(
                    [(s * 1e-9, e) for s, e in self.anchors], self.eta_superconducting
                )
            return ConductivityModel(eta_superconducting=self.eta_superconducting)
        except (OSError, ValueError, KeyError) as exc:
            raise ConfigInvalid("conductivity", str(exc)) from exc


@dataclass(frozen=True)
class DetectorConfig:
    threshold_n: Optional[float] = None
    curve_path: Optional[str] = None
    frequency_hz: Optional[float] = None

    @classmethod
    def from_dict(cls, data: Any) -> DetectorConfig:
        w = "detector"
        data = _check_keys(w, data, ("threshold_n", "curve_path", "frequency_hz"))
        if "threshold_n" in data and "curve_path" in data:
            raise ConfigInvalid(w, "give threshold_n or curve_path, not both")
        curve_path = data.get("curve_path")
        if curve_path is not None and not isinstance(curve_path, str):
            raise ConfigInvalid(f"{w}.curve_path", "expected a string")
        threshold = _optional(data, "threshold_n", w, positive=True)
        if threshold is None and curve_path is None:
            threshold = 5e-17
        frequency = _optional(data, "frequency_hz", w, positive=True)
        if curve_path is not None and frequency is None:
            raise ConfigInvalid(f"{w}.frequency_hz", "required with a sensitivity curve")
        return cls(threshold, curve_path, frequency)

    def to_dict(self) -> dict:
        return _drop_none(
            {"threshold_n": self.threshold_n, "curve_path": self.curve_path, "frequency_hz": self.frequency_hz}
        )

    def sensitivity(self) -> DetectorSensitivity:
        try:
            if self.curve_path is not None:
                return DetectorSensitivity.from_csv(self.curve_path)
            return DetectorSensitivity(Quantity(self.threshold_n, FORCE))
        except (OSError, ValueError, KeyError) as exc:
            raise ConfigInvalid("detector", str(exc)) from exc

    @property
    def frequency(self) -> Optional[Quantity]:
        return None if self.frequency_hz is None else Quantity(self.frequency_hz, FREQUENCY)


@dataclass(frozen=True)
class NumericsConfig:
    epsilon_schedule: tuple[float, ...] = DEFAULT_SCHEDULE
    fd_step_fraction: float = DEFAULT_STEP_FRACTION

    @classmethod
    def from_dict(cls, data: Any) -> NumericsConfig:
        w = "numerics"
        data = _check_keys(w, data, ("epsilon_schedule", "fd_step_fraction"))
        schedule = DEFAULT_SCHEDULE
        if "epsilon_schedule" in data:
            raw = data["epsilon_schedule"]
            if not isinstance(raw, list) or not raw:
                raise ConfigInvalid(f"{w}.epsilon_schedule", "expected a non-empty list")
            schedule = tuple(
                _number(f"{w}.epsilon_schedule[{i}]", v, positive=True) for i, v in enumerate(raw)
            )
            if any(b >= a for a, b in zip(schedule, schedule[1:])):
                raise ConfigInvalid(f"{w}.epsilon_schedule", "must be strictly decreasing")
        step = DEFAULT_STEP_FRACTION
        if "fd_step_fraction" in data:
            step = _number(f"{w}.fd_step_fraction", data["fd_step_fraction"], positive=True)
        return cls(schedule, step)

    def to_dict(self) -> dict:
        return {"epsilon_schedule": list(self.epsilon_schedule), "fd_step_fraction": self.fd_step_fraction}


@dataclass(frozen=True)
class RunConfig:
    cavity: CavityConfig
    gravity: GravityConfig
    stack: Optional[StackConfig] = None
    conductivity: Optional[ConductivityConfig] = None
    detector: Optional[DetectorConfig] = None
    numerics: NumericsConfig = field(default_factory=NumericsConfig)

    @classmethod
    def from_dict(cls, data: Any) -> RunConfig:
        data = _check_keys("config", data, ("cavity", "gravity", "stack", "conductivity", "detector", "numerics"))
        for key in ("cavity", "gravity"):
            if key not in data:
                raise ConfigInvalid(key, "required section")
        return cls(
            cavity=CavityConfig.from_dict(data["cavity"]),
            gravity=GravityConfig.from_dict(data["gravity"]),
            stack=StackConfig.from_dict(data["stack"]) if "stack" in data else None,
            conductivity=ConductivityConfig.from_dict(data["conductivity"]) if "conductivity" in data else None,
            detector=DetectorConfig.from_dict(data["detector"]) if "detector" in data else None,
            numerics=NumericsConfig.from_dict(data.get("numerics", {})),
        )

    def to_dict(self) -> dict:
        out = {"cavity": self.cavity.to_dict(), "gravity": self.gravity.to_dict()}
        for name in ("stack", "conductivity", "detector"):
            section = getattr(self, name)
            if section is not None:
                out[name] = section.to_dict()
        out["numerics"] = self.numerics.to_dict()
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    # builders -------------------------------------------------------------

    def geometry(self) -> CavityGeometry:
        cav = self.cavity
        sep = Quantity(cav.separation_m, LENGTH)
        if cav.area_m2 is not None:
            return CavityGeometry(sep, Quantity(cav.area_m2, AREA), cav.refractive_index)
        return CavityGeometry.from_diameter(sep, Quantity(cav.disk_diameter_m, LENGTH), cav.refractive_index)

    def schwarzschild(self) -> Optional[SchwarzschildContext]:
        if self.gravity.mode != "schwarzschild":
            return None
        return SchwarzschildContext(Quantity(self.gravity.mass_kg, MASS), Quantity(self.gravity.radius_m, LENGTH))

    def acceleration(self) -> Quantity:
        """Uniform g, or GM/r^2 at the cavity in Schwarzschild mode."""
        ctx = self.schwarzschild()
        if ctx is not None:
            return ctx.local_g
        return Quantity(self.gravity.g_m_s2, ACCELERATION)

    def layered_stack(self) -> LayeredStack:
        if self.stack is None:
            raise ConfigInvalid("stack", "required section for this command")
        cav = self.cavity
        diameter = cav.disk_diameter_m
        if diameter is None:
            diameter = 2.0 * math.sqrt(cav.area_m2 / math.pi)
        return LayeredStack(
            separation=Quantity(cav.separation_m, LENGTH),
            refractive_index=cav.refractive_index,
            layers=self.stack.layers,
            layer_thickness=Quantity(self.stack.layer_thickness_m, LENGTH),
            disk_diameter=Quantity(diameter, LENGTH),
        )

    def with_override(self, axis: str, value: float) -> RunConfig:
        """Copy with one sweep parameter replaced; validated like a parsed config."""
        data = self.to_dict()
        if axis == "separation":
            data["cavity"]["separation_m"] = value
        elif axis == "refractive_index":
            data["cavity"]["refractive_index"] = value
        elif axis == "layers":
            data.setdefault("stack", {})["layers"] = value
        elif axis == "eta_superconducting":
            data.setdefault("conductivity", {})["eta_superconducting"] = value
        elif axis == "g":
            data["gravity"] = {"mode": "uniform", "g_m_s2": value}
        else:
            raise UnknownAxis(axis, SWEEP_AXES)
        return RunConfig.from_dict(data)


def _resolve(base: Path, p: Optional[str]) -> Optional[str]:
    if p is None:
        return None
    path = Path(p)
    return str(path if path.is_absolute() else (base / path))


def parse_config(text: str, base_dir: Optional[Path] = None) -> RunConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigInvalid("config", f"invalid JSON: {exc}") from exc
    cfg = RunConfig.from_dict(data)
    if base_dir is not None:
        if cfg.conductivity is not None and cfg.conductivity.table_path is not None:
            cfg = replace(cfg, conductivity=replace(cfg.conductivity, table_path=_resolve(base_dir, cfg.conductivity.table_path)))
        if cfg.detector is not None and cfg.detector.curve_path is not None:
            cfg = replace(cfg, detector=replace(cfg.detector, curve_path=_resolve(base_dir, cfg.detector.curve_path)))
    return cfg


def load_config(path) -> RunConfig:
    """Read a JSON config; relative table paths resolve against its directory."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigInvalid("--config", str(exc)) from exc
    return parse_config(text, path.parent)
