"""Command-line front end: ``force``, ``modesum``, ``experiment`` and ``sweep``.

Exit codes: 0 success, 2 configuration or input error, 3 numerical
non-convergence.
"""

from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .config import SWEEP_AXES, RunConfig, load_config
from .errors import CasimirGravityError, ConfigInvalid, NonConvergent, UnknownAxis
from .experiment import (
    CORRECTIONS_CAVEAT,
    FREQUENCY_CAVEAT,
    MODULATION_NOTE,
    assess,
)
from .force import (
    ENERGY_FRACTION,
    PRESSURE_FRACTION,
    closed_force_density,
    convergence_order,
    covariant_force_density,
    frame_fields,
    default_step,
    integrated_force,
)
from .modesum import (
    casimir_energy,
    gradient_force,
    redshift_factor,
    redshifted_energy,
    regularized_cubic_sum,
)
from .quantities import DIMENSIONLESS, LENGTH, Quantity
from .report import Report, ResultEntry, Table
from .stress_tensor import casimir_scale

log = logging.getLogger("casimir_gravity")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NONCONVERGENT = 3

PUSH_FORMULA = "pi^2 A hbar c / (720 (n a)^3) * g / c^2"


def _dimensionless(x: float) -> Quantity:
    return Quantity(x, DIMENSIONLESS)


def cmd_force(config: RunConfig) -> Report:
    geom = config.geometry()
    g = config.acceleration()
    full = integrated_force(geom, g, isolated=False)
    iso = integrated_force(geom, g, isolated=True)
    origin = Quantity(0.0, LENGTH)
    density = closed_force_density(geom, g, origin)

    results = [
        ResultEntry.of("acceleration", g),
        ResultEntry.of("casimir_scale", casimir_scale(geom), "K = pi^2 hbar c / (180 (n a)^4)"),
        ResultEntry.of("force_density_closed", density.value, "f_z = K (g/c^2) / (1 + 2 g z / c^2), z = 0"),
    ]
    if g.value > 0:
        tfield, mfield = frame_fields(geom, g)
        step = default_step(g, config.numerics.fd_step_fraction)
        fd = covariant_force_density(tfield, mfield, origin, step)
        results += [
            ResultEntry.of("force_density_covariant", fd, "central-difference covariant divergence, z = 0"),
            ResultEntry.of(
                "force_density_relative_deviation",
                _dimensionless(abs(fd.value - density.value.value) / density.value.value),
            ),
            ResultEntry.of(
                "force_density_convergence_order",
                _dimensionless(convergence_order(tfield, mfield, origin, step)),
                "observed order over three step halvings",
            ),
        ]
    results += [
        ResultEntry.of("force_non_isolated", full.total, "F = V f_z(0), V = A n a"),
        ResultEntry.of("pressure_term", full.pressure_term, "3/4 of the non-isolated force"),
        ResultEntry.of("energy_term", full.energy_term, "1/4 of the non-isolated force"),
        ResultEntry.of("force_isolated", iso.total, f"F = {PUSH_FORMULA}"),
        ResultEntry.of("pressure_fraction", _dimensionless(PRESSURE_FRACTION)),
        ResultEntry.of("energy_fraction", _dimensionless(ENERGY_FRACTION)),
        ResultEntry.of(
            "isolated_to_non_isolated",
            _dimensionless(iso.total.value / full.total.value if full.total.value else ENERGY_FRACTION),
        ),
        ResultEntry.of("direction", _dimensionless(iso.direction), "+1: along +z, opposite to g"),
    ]
    return Report("force", config.to_dict(), tuple(results))


def cmd_modesum(config: RunConfig) -> Report:
    geom = config.geometry()
    schedule = config.numerics.epsilon_schedule
    run = regularized_cubic_sum(schedule)
    closed = casimir_energy(geom, "closed_form")
    numeric = casimir_energy(geom, "numeric_regularized", schedule)
    results = [
        ResultEntry.of("regularized_sum_n3", _dimensionless(run.value), "exponential cutoff, pole subtracted, extrapolated in eps^2"),
        ResultEntry.of("regularized_sum_error_estimate", _dimensionless(run.error_estimate)),
        ResultEntry.of("energy_closed_form", closed, "U = -pi^2 A hbar c / (720 (n a)^3)"),
        ResultEntry.of("energy_numeric", numeric, "mode sum with continued transverse integral"),
        ResultEntry.of("energy_relative_deviation", _dimensionless(abs(numeric.value / closed.value - 1.0))),
    ]
    caveats = []
    ctx = config.schwarzschild()
    if ctx is not None:
        grad = gradient_force(geom, ctx, "analytic")
        grad_fd = gradient_force(geom, ctx, "finite_difference")
        push = integrated_force(geom, ctx.local_g, isolated=True).total
        results += [
            ResultEntry.of("alpha", ctx.alpha, "alpha = 2 G M / c^2"),
            ResultEntry.of("local_g", ctx.local_g, "g = G M / r^2"),
            ResultEntry.of("redshift_factor", _dimensionless(redshift_factor(ctx)), "sqrt(1 - alpha/r)"),
            ResultEntry.of("energy_redshifted", redshifted_energy(geom, ctx), "U_S = sqrt(1 - alpha/r) U"),
            ResultEntry.of("gradient_force", grad, "F = -dU_S/dr, analytic"),
            ResultEntry.of("gradient_force_fd", grad_fd, "F = -dU_S/dr, central difference"),
            ResultEntry.of("push_force", push, f"F = {PUSH_FORMULA} at g = GM/r^2"),
            ResultEntry.of("push_force_relative_deviation", _dimensionless((grad.value - push.value) / push.value)),
            ResultEntry.of("predicted_deviation", _dimensionless(ctx.alpha.value / (2.0 * ctx.radius.value)), "alpha / (2 r)"),
        ]
    else:
        caveats.append("Gradient force needs gravity.mode = schwarzschild; section skipped.")
    table = Table(
        columns=("epsilon", "subtracted_sum", "extrapolant"),
        units=("1", "1", "1"),
        rows=tuple(zip(run.epsilons, run.partial_values, run.extrapolants)),
    )
    return Report("modesum", config.to_dict(), tuple(results), table, tuple(caveats))


def cmd_experiment(config: RunConfig) -> Report:
    stack = config.layered_stack()
    if config.conductivity is None:
        raise ConfigInvalid("conductivity", "required section for this command")
    if config.detector is None:
        raise ConfigInvalid("detector", "required section for this command")
    g = config.acceleration()
    model = config.conductivity.model()
    detector = config.detector.sensitivity()
    a = assess(stack, g, model, detector, config.detector.frequency)
    results = (
        ResultEntry.of("acceleration", g),
        ResultEntry.of("eta_normal", a.eta_normal, "log-log interpolated conductivity table"),
        ResultEntry.of("eta_superconducting", _dimensionless(model.eta_superconducting)),
        ResultEntry.of("stack_force_normal", a.force_normal, f"F_T = eta N {PUSH_FORMULA}"),
        ResultEntry.of("stack_force_superconducting", a.force_superconducting, f"F_T = eta N {PUSH_FORMULA}"),
        ResultEntry.of("modulation_amplitude", a.modulation_amplitude, "F_T(eta_sc) - F_T(eta_normal)"),
        ResultEntry.of("fundamental_frequency", a.fundamental_frequency, "nu_min = c / (2 a)"),
        ResultEntry.of("total_thickness", a.total_thickness, "N * layer thickness"),
        ResultEntry.of("detector_threshold", a.threshold),
        ResultEntry.of("detector_margin", a.margin, "modulation amplitude / threshold"),
    )
    return Report(
        "experiment",
        config.to_dict(),
        results,
        caveats=(FREQUENCY_CAVEAT, CORRECTIONS_CAVEAT, MODULATION_NOTE),
    )


SWEEP_COLUMNS = (
    "eta_normal",
    "stack_force_normal",
    "stack_force_superconducting",
    "modulation_amplitude",
    "fundamental_frequency",
    "detector_margin",
)
_AXIS_UNITS = {"separation": "m", "refractive_index": "1", "layers": "1", "eta_superconducting": "1", "g": "m/s^2"}


def cmd_sweep(config: RunConfig, axis: str, values: Sequence[float], jobs: int = 1) -> Report:
    """One experiment row per value; rows keep input order."""
    if axis not in SWEEP_AXES:
        raise UnknownAxis(axis, SWEEP_AXES)
    if not values:
        raise ConfigInvalid("--values", "at least one value required")
    configs = [config.with_override(axis, v) for v in values]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(cmd_experiment, configs))
    else:
        reports = [cmd_experiment(c) for c in configs]
    rows = []
    units = None
    for v, rep in zip(values, reports):
        entries = [rep.get(name) for name in SWEEP_COLUMNS]
        units = units or tuple(e.unit for e in entries)
        rows.append((float(v),) + tuple(e.value for e in entries))
    table = Table((axis,) + SWEEP_COLUMNS, (_AXIS_UNITS[axis],) + units, tuple(rows))
    inputs = dict(config.to_dict(), sweep={"axis": axis, "values": [float(v) for v in values]})
    return Report("sweep", inputs, (), table, reports[0].caveats)


def _parse_values(text: str) -> list[float]:
    try:
        return [float(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError as exc:
        raise ConfigInvalid("--values", f"expected comma-separated numbers: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, metavar="PATH", help="JSON run configuration")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="emit JSON")
    fmt.add_argument("--csv", action="store_true", help="emit CSV")
    common.add_argument("--out", metavar="PATH", help="write the report to PATH instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="casimir-gravity",
        description="Vacuum-fluctuation force on a rigid Casimir cavity in a weak gravitational field.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("force", parents=[common], help="stress-tensor force on one cavity")
    sub.add_parser("modesum", parents=[common], help="mode-sum energy, red-shift and gradient force")
    sub.add_parser("experiment", parents=[common], help="multi-layer stack feasibility")
    sw = sub.add_parser("sweep", parents=[common], help="experiment over a list of parameter values")
    sw.add_argument("--axis", required=True, help=f"one of: {', '.join(SWEEP_AXES)}")
    sw.add_argument("--values", required=True, help="comma-separated values in SI units")
    sw.add_argument("--jobs", type=int, default=1, help="evaluate rows concurrently")
    return parser


def run(args: argparse.Namespace) -> Report:
    config = load_config(args.config)
    if args.command == "force":
        return cmd_force(config)
    if args.command == "modesum":
        return cmd_modesum(config)
    if args.command == "experiment":
        return cmd_experiment(config)
    return cmd_sweep(config, args.axis, _parse_values(args.values), args.jobs)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        report = run(args)
    except NonConvergent as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.trace:
            print("extrapolants: " + ", ".join(repr(x) for x in exc.trace), file=sys.stderr)
        return EXIT_NONCONVERGENT
    except (CasimirGravityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    if args.json:
        text = report.to_json()
    elif args.csv:
        text = report.to_csv()
    else:
        text = report.to_text()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        log.info("wrote %s", args.out)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
