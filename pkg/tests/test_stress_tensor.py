import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from casimir_gravity.errors import DimensionMismatch, InvalidGeometry, MetricDegenerate
from casimir_gravity.quantities import (
    ACCELERATION,
    AREA,
    CONSTANTS,
    ENERGY_DENSITY,
    INVERSE_LENGTH,
    LENGTH,
    Quantity,
)
from casimir_gravity.stress_tensor import (
    MINKOWSKI,
    AcceleratedFrame,
    CavityGeometry,
    casimir_scale,
    field_tensor,
    frame_metric,
    minkowski_tensor,
)

G0 = Quantity(9.80665, ACCELERATION)

geometries = st.builds(
    CavityGeometry.from_si,
    st.floats(min_value=1e-9, max_value=1e-3),
    st.floats(min_value=1e-6, max_value=1.0),
    st.floats(min_value=1.0, max_value=4.0),
)


def geom(a=5e-9, area=1e-4, n=1.0):
    return CavityGeometry.from_si(a, area, n)


def frame(a_g, z):
    return AcceleratedFrame(Quantity(a_g, INVERSE_LENGTH), Quantity(z, LENGTH))


def test_scale_quartic():
    assert casimir_scale(geom(1e-8)).value == pytest.approx(casimir_scale(geom(5e-9)).value / 16, rel=1e-14)


def test_scale_at_one_metre():
    # pi^2 * hbar * c / 180 at 50 digits
    assert casimir_scale(geom(1.0, 1.0)).value == pytest.approx(1.7335010299303379e-27, rel=1e-14)
    assert casimir_scale(geom()).dim == ENERGY_DENSITY


def test_scale_depends_on_optical_separation_only():
    x = 7e-9
    assert casimir_scale(geom(x, n=2.0)).value == pytest.approx(casimir_scale(geom(2 * x)).value, rel=1e-14)


def test_scale_times_a4_constant():
    ref = casimir_scale(geom(1e-9)).value * 1e-36
    for a in np.geomspace(1e-9, 1e-3, 25):
        assert casimir_scale(geom(a)).value * a**4 == pytest.approx(ref, rel=1e-12)


def test_minkowski_components():
    g = geom()
    k = casimir_scale(g).value
    t = minkowski_tensor(g)
    assert t.contravariant[3, 3] == pytest.approx(-0.75 * k, rel=1e-15)
    assert t.contravariant[0, 0] == pytest.approx(-0.25 * k, rel=1e-15)
    np.testing.assert_allclose(np.diag(t.contravariant), [-k / 4, k / 4, k / 4, -3 * k / 4], rtol=1e-15)
    assert np.count_nonzero(t.contravariant - np.diag(np.diag(t.contravariant))) == 0
    assert np.array_equal(t.contravariant, t.contravariant.T)
    assert abs(t.trace().value) / k <= 1e-14


@given(geometries)
def test_minkowski_traceless(g):
    t = minkowski_tensor(g)
    k = casimir_scale(g).value
    assert abs(t.trace(MINKOWSKI).value) / k <= 1e-14


def test_frame_metric_on_world_line():
    np.testing.assert_array_equal(frame_metric(frame(1e-16, 0.0)), MINKOWSKI)


def test_frame_metric_earth_one_metre():
    f = AcceleratedFrame.from_gravity(G0, Quantity(1.0, LENGTH))
    g = frame_metric(f)
    # 2 * 9.80665 / c^2 evaluated at 50 digits
    assert -g[0, 0] - 1.0 == pytest.approx(2.1822739344396434e-16, rel=1e-6)
    assert f.accel_param.value == 9.80665 / CONSTANTS.c.value**2


def test_frame_metric_odd_in_z():
    up = frame_metric(frame(1e-3, 10.0))[0, 0] + 1
    down = frame_metric(frame(1e-3, -10.0))[0, 0] + 1
    assert up == pytest.approx(-down, rel=1e-14)


def test_frame_metric_degenerate():
    with pytest.raises(MetricDegenerate):
        frame_metric(frame(1.0, -0.5))
    with pytest.raises(MetricDegenerate):
        field_tensor(geom(), frame(1.0, -0.75))


def test_field_tensor_flat_limit_exact():
    g = geom()
    t = field_tensor(g, frame(0.0, 123.0))
    m = minkowski_tensor(g)
    np.testing.assert_array_equal(t.contravariant, m.contravariant)
    np.testing.assert_array_equal(t.mixed, m.mixed)


@pytest.mark.parametrize("z", [-0.3, 0.0, 0.2, 5.0])
def test_field_tensor_components(z):
    g = geom()
    k = casimir_scale(g).value
    a_g = 0.05
    f = frame(a_g, z)
    t = field_tensor(g, f)
    h = 1 + 2 * a_g * z
    assert t.contravariant[0, 0] * h == pytest.approx(-k / 4, rel=1e-14)
    assert t.mixed[3, 3] == pytest.approx(-0.75 * k, rel=1e-15)
    assert t.contravariant[3, 3] == t.mixed[3, 3]
    assert t.contravariant[1, 1] == pytest.approx(k / 4, rel=1e-15)
    assert abs(t.trace(frame_metric(f)).value) / k <= 1e-14


def test_flat_limit_is_linear_in_accel_param():
    # Richardson slope of the T^00 deviation as A_g halves
    g = geom()
    z = 1.0
    base = minkowski_tensor(g).contravariant[0, 0]
    devs = [field_tensor(g, frame(a, z)).contravariant[0, 0] - base for a in (1e-3, 5e-4, 2.5e-4)]
    slopes = [math.log2(devs[i] / devs[i + 1]) for i in range(2)]
    for s in slopes:
        assert s == pytest.approx(1.0, abs=0.01)


def test_components_have_energy_density_dimension():
    t = field_tensor(geom(), frame(1e-3, 1.0))
    for mu in range(4):
        for nu in range(4):
            assert t.component(mu, nu).dim == ENERGY_DENSITY
            assert t.component(mu, nu, mixed=True).dim == ENERGY_DENSITY


def test_geometry_constructors_and_validation():
    sq = CavityGeometry.from_side(Quantity(1e-8, LENGTH), Quantity(0.01, LENGTH))
    assert sq.area == Quantity(1e-4, AREA)
    disk = CavityGeometry.from_diameter(Quantity(1e-8, LENGTH), Quantity(0.35, LENGTH), 1.5)
    assert disk.area.value == pytest.approx(math.pi * 0.175**2)
    assert disk.optical_separation.value == pytest.approx(1.5e-8)
    with pytest.raises(InvalidGeometry):
        geom(a=0.0)
    with pytest.raises(InvalidGeometry):
        geom(area=-1.0)
    with pytest.raises(InvalidGeometry):
        geom(n=0.9)
    with pytest.raises(DimensionMismatch):
        CavityGeometry(Quantity(1e-8, AREA), Quantity(1.0, AREA))
