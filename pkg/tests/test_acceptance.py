"""Acceptance gate. Each criterion is one test; conftest prints a pass/fail line per criterion."""

import math
import random
import time

import numpy as np
import pytest

from casimir_gravity.experiment import (
    ConductivityModel,
    DetectorSensitivity,
    LayeredStack,
    detector_margin,
    fundamental_frequency,
    modulation_amplitude,
    reduction_factor,
    stack_force,
)
from casimir_gravity.force import (
    closed_force_density,
    convergence_order,
    covariant_force_density,
    default_step,
    frame_fields,
    integrated_force,
    integrated_force_trapezoid,
)
from casimir_gravity.modesum import (
    SchwarzschildContext,
    casimir_energy,
    gradient_force,
    redshifted_energy,
    regularized_cubic_sum,
    transverse_mode_energy,
)
from casimir_gravity.quantities import (
    ACCELERATION,
    CONSTANTS,
    DIMENSIONLESS,
    ENERGY,
    ENERGY_DENSITY,
    FORCE,
    FORCE_DENSITY,
    FREQUENCY,
    INVERSE_LENGTH,
    INVERSE_VOLUME,
    LENGTH,
    MASS,
    Quantity,
)
from casimir_gravity.stress_tensor import MINKOWSKI, AcceleratedFrame, CavityGeometry, casimir_scale, field_tensor, minkowski_tensor

G0 = Quantity(9.80665, ACCELERATION)
C2 = CONSTANTS.c.value ** 2


def L(x):
    return Quantity(x, LENGTH)


@pytest.mark.criterion("1", "regularized sum of n^3 -> 1/120 within 1e-8, under 1 s")
def test_regularized_sum():
    start = time.perf_counter()
    run = regularized_cubic_sum((0.2, 0.1, 0.05, 0.025))
    elapsed = time.perf_counter() - start
    err = abs(run.value - 1 / 120)
    print(f"\n[1] value={run.value!r} |err|={err:.3e} time={elapsed:.3f}s")
    assert err <= 1e-8
    assert elapsed < 1.0


@pytest.mark.criterion("2", "numeric mode-sum energy matches closed form within 1e-6 for a in {1, 5, 60, 1000} nm")
def test_energy_equivalence():
    area = math.pi * 0.175**2
    for a in (1e-9, 5e-9, 60e-9, 1000e-9):
        geom = CavityGeometry.from_si(a, area)
        closed = casimir_energy(geom, "closed_form").value
        numeric = casimir_energy(geom, "numeric_regularized").value
        # closed form written out independently of the package
        by_hand = -(math.pi**2) * area * CONSTANTS.hbar.value * CONSTANTS.c.value / (720 * a**3)
        rel = abs(numeric / closed - 1)
        print(f"\n[2] a={a:.0e} m rel={rel:.3e}")
        assert closed == pytest.approx(by_hand, rel=1e-14)
        assert rel <= 1e-6


@pytest.mark.criterion("3", "covariant finite-difference engine matches closed density within 1e-6; order 2.0 +- 0.1")
def test_force_density_oracle():
    geom = CavityGeometry.from_si(5e-9, 1e-4)
    a_g = G0.value / C2
    tf, mf = frame_fields(geom, G0)
    k = casimir_scale(geom).value
    for zf in (0.0, 0.1, -0.1):
        z = L(zf / a_g)
        num = covariant_force_density(tf, mf, z, default_step(G0)).value
        closed = k * a_g / (1 + 2 * a_g * z.value)
        assert closed_force_density(geom, G0, z).value.value == pytest.approx(closed, rel=1e-14)
        rel = abs(num / closed - 1)
        print(f"\n[3] z={zf}/A_g rel={rel:.3e}")
        assert rel <= 1e-6
    z = L(-0.1 / a_g)
    steps = np.array([1e-2, 5e-3, 2.5e-3, 1.25e-3]) / a_g
    closed = k * a_g / (1 + 2 * a_g * z.value)
    errs = [abs(covariant_force_density(tf, mf, z, L(s)).value - closed) for s in steps]
    slope = np.polyfit(np.log(steps), np.log(errs), 1)[0]
    order = convergence_order(tf, mf, z, L(steps[0]))
    print(f"[3] log-log slope={slope:.4f} halving order={order:.4f}")
    assert slope == pytest.approx(2.0, abs=0.1)
    assert order == pytest.approx(2.0, abs=0.1)


@pytest.mark.criterion("4", "Earth gradient force matches push force at GM/r^2 within 2e-9")
def test_cross_derivation():
    ctx = SchwarzschildContext(Quantity(5.972e24, MASS), L(6.371e6))
    geom = CavityGeometry.from_si(5e-9, math.pi * 0.175**2)
    g_local = CONSTANTS.G.value * 5.972e24 / 6.371e6**2
    push = integrated_force(geom, Quantity(g_local, ACCELERATION), isolated=True).total.value
    alpha_over_2r = CONSTANTS.G.value * 5.972e24 / (C2 * 6.371e6)
    for mode in ("analytic", "finite_difference"):
        grad = gradient_force(geom, ctx, mode).value
        dev = grad / push - 1
        print(f"\n[4] {mode}: deviation={dev:.4e} alpha/(2r)={alpha_over_2r:.4e}")
        assert abs(dev) <= 2e-9
        # central differences at relative step 1e-6 carry ~1e-10 rounding noise
        tol = 1e-3 * alpha_over_2r if mode == "analytic" else 2e-10
        assert dev == pytest.approx(alpha_over_2r, abs=tol)


@pytest.mark.criterion("5", "feasibility numbers: nu_min(60 nm), modulated force range, detector margin > 50")
def test_feasibility_numbers():
    nu = fundamental_frequency(L(60e-9)).value
    print(f"\n[5a] nu_min(60 nm)={nu:.4e} Hz")
    assert nu == pytest.approx(2.5e15, rel=0.01)
    model = ConductivityModel()
    threshold = DetectorSensitivity()
    for n in (1.4, 1.5, 1.6):
        stack = LayeredStack(L(5e-9), n, 10**6, L(1e-7), L(0.35))
        peak = stack_force(stack, G0, 0.5).value
        amp = modulation_amplitude(stack, G0, model).value
        margin = detector_margin(Quantity(amp, FORCE), threshold).value
        print(f"[5b] n={n}: F_T(eta=0.5)={peak:.3e} N  dF={amp:.3e} N  margin={margin:.1f}")
        assert 2.5e-15 <= peak <= 2.5e-14
        assert 2.5e-15 <= amp <= 2.5e-14
        assert margin > 50


def _dimension_audit():
    geom = CavityGeometry.from_si(5e-9, 1e-2, 1.5)
    frame = AcceleratedFrame.from_gravity(G0, L(1.0))
    ctx = SchwarzschildContext(Quantity(5.972e24, MASS), L(6.371e6))
    stack = LayeredStack(L(5e-9), 1.5, 10, L(1e-7), L(0.35))
    model = ConductivityModel()
    tf, mf = frame_fields(geom, G0)
    full = integrated_force(geom, G0)
    trap = integrated_force_trapezoid(geom, G0)
    checks = [
        (casimir_scale(geom), ENERGY_DENSITY),
        (minkowski_tensor(geom).component(3, 3), ENERGY_DENSITY),
        (field_tensor(geom, frame).component(0, 0), ENERGY_DENSITY),
        (minkowski_tensor(geom).trace(), ENERGY_DENSITY),
        (covariant_force_density(tf, mf, L(0.0), default_step(G0)), FORCE_DENSITY),
        (closed_force_density(geom, G0, L(0.0)).value, FORCE_DENSITY),
        (default_step(G0), LENGTH),
        (transverse_mode_energy(Quantity(1.0, INVERSE_LENGTH)), INVERSE_VOLUME),
        (casimir_energy(geom), ENERGY),
        (casimir_energy(geom, "numeric_regularized"), ENERGY),
        (redshifted_energy(geom, ctx), ENERGY),
        (gradient_force(geom, ctx), FORCE),
        (ctx.alpha, LENGTH),
        (ctx.local_g, ACCELERATION),
        (reduction_factor(model, L(5e-9)), DIMENSIONLESS),
        (stack_force(stack, G0, 0.5), FORCE),
        (modulation_amplitude(stack, G0, model), FORCE),
        (fundamental_frequency(L(5e-9)), FREQUENCY),
        (detector_margin(Quantity(1e-15, FORCE), DetectorSensitivity()), DIMENSIONLESS),
        (stack.total_thickness, LENGTH),
    ]
    for r in (full, trap):
        checks += [(r.total, FORCE), (r.pressure_term, FORCE), (r.energy_term, FORCE)]
    for q, dim in checks:
        assert isinstance(q, Quantity)
        assert q.dim == dim, (q, dim)


@pytest.mark.criterion("6", "structural invariants and dimensional audit, under 10 s")
def test_structural_invariants():
    start = time.perf_counter()
    rng = random.Random(20240601)
    for _ in range(300):
        a = 10 ** rng.uniform(-9, -5)
        area = 10 ** rng.uniform(-4, 0)
        n = rng.uniform(1.0, 3.0)
        g = Quantity(10 ** rng.uniform(-2, 2), ACCELERATION)
        geom = CavityGeometry.from_si(a, area, n)
        k = casimir_scale(geom).value
        # traceless vacuum tensor
        assert abs(minkowski_tensor(geom).trace(MINKOWSKI).value) / k <= 1e-14
        # 3/4 pressure, 1/4 energy
        full = integrated_force(geom, g)
        iso = integrated_force(geom, g, isolated=True)
        assert full.pressure_term.value == pytest.approx(0.75 * full.total.value, rel=1e-14)
        assert full.energy_term.value == pytest.approx(0.25 * full.total.value, rel=1e-14)
        assert iso.total.value == pytest.approx(0.25 * full.total.value, rel=1e-14)
        # upward push
        assert iso.total.value > 0 and iso.direction == +1
        # a^-3 for energy and force, a^-4 for the scale
        doubled = CavityGeometry.from_si(2 * a, area, n)
        assert casimir_scale(doubled).value == pytest.approx(k / 16, rel=1e-13)
        assert casimir_energy(doubled).value == pytest.approx(casimir_energy(geom).value / 8, rel=1e-13)
        assert integrated_force(doubled, g, True).total.value == pytest.approx(iso.total.value / 8, rel=1e-13)
    _dimension_audit()
    elapsed = time.perf_counter() - start
    print(f"\n[6] property sweep + dimension audit in {elapsed:.3f}s")
    assert elapsed < 10.0
