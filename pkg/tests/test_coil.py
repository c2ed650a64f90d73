import math
import warnings
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, strategies as st

from abspec.coil import (ToroidSpec, a0_gauge_independent, a_z_on_axis, coupling_ratio,
                         required_current)
from abspec.molecule import HCL

PAPER_COIL = ToroidSpec(inner_radius=0.02, revolution_radius=0.06, n_loops=1000, current=1.0)

# SI-unit chain, independent of the eV/u*c^2 route used by the package:
#   A0 = sqrt(2 hw[J] mu[kg]) / e for coupling ratio 1,
#   A_z(0) per ampere = mu0 a^2 N / (4 b^2)
_E = 1.602176634e-19
_MU_KG = 1.00784 * 34.96885 / (1.00784 + 34.96885) * 1.66053906660e-27
_A0_SI = math.sqrt(2 * 0.05 * _E * _MU_KG) / _E
_AZ_PER_AMP = 1.25663706212e-6 * 0.02 ** 2 * 1000 / (4 * 0.06 ** 2)
PAPER_CURRENT = 0.91282569599817  # A, pinned regression value

geometries = st.tuples(
    st.floats(1e-3, 0.5), st.floats(0.01, 0.49), st.integers(1, 10_000),
    st.one_of(st.just(0.0), st.floats(1e-6, 50), st.floats(-50, -1e-6)),
).map(lambda g: ToroidSpec(g[1] * g[0], g[0], g[2], g[3]))


def test_paper_geometry_centre():
    assert a_z_on_axis(PAPER_COIL, 0.0) == pytest.approx(3.490658505888889e-05, rel=1e-14)
    assert a_z_on_axis(PAPER_COIL, 0.0) == pytest.approx(3.49e-5, rel=1e-3)
    assert a_z_on_axis(PAPER_COIL, 0.0) == pytest.approx(_AZ_PER_AMP, rel=1e-12)


def test_gauge_independent_paper_geometry():
    assert a0_gauge_independent(PAPER_COIL) == pytest.approx(1.11e-5, rel=2e-3)
    assert a0_gauge_independent(PAPER_COIL) == pytest.approx(_AZ_PER_AMP / math.pi, rel=1e-12)
    assert a0_gauge_independent(replace(PAPER_COIL, current=0.0)) == 0.0


def test_decay_and_symmetry():
    z = np.linspace(0, 10, 201)
    a = a_z_on_axis(PAPER_COIL, z)
    assert np.all(np.diff(a) < 0)
    np.testing.assert_array_equal(a, a_z_on_axis(PAPER_COIL, -z))
    assert a_z_on_axis(PAPER_COIL, 1e8) < 1e-25


@given(geometries, st.floats(-5, 5))
def test_linear_in_current(t, z):
    doubled = replace(t, current=2 * t.current)
    assert a_z_on_axis(doubled, z) == pytest.approx(2 * a_z_on_axis(t, z), rel=1e-12, abs=0)


@pytest.mark.filterwarnings("ignore:a/b")
@given(geometries, st.floats(1.01, 3.0))
def test_scaling_laws(t, s):
    base = a_z_on_axis(t, 0.0)
    if base == 0:
        return
    thicker = replace(t, inner_radius=min(t.inner_radius * s, 0.999 * t.revolution_radius))
    ratio = (thicker.inner_radius / t.inner_radius) ** 2
    assert a_z_on_axis(thicker, 0.0) == pytest.approx(ratio * base, rel=1e-12)
    bigger = replace(t, revolution_radius=t.revolution_radius * s)
    assert a_z_on_axis(bigger, 0.0) == pytest.approx(base / s ** 2, rel=1e-12)
    more = replace(t, n_loops=t.n_loops * 3)
    assert a_z_on_axis(more, 0.0) == pytest.approx(3 * base, rel=1e-12)


@given(geometries)
def test_factor_pi_between_estimates(t):
    centre = a_z_on_axis(t, 0.0)
    assert a0_gauge_independent(t) == pytest.approx(centre / math.pi, rel=1e-12, abs=0)


def test_required_current_paper_configuration():
    current = required_current(PAPER_COIL, HCL, 1.0)
    assert current == pytest.approx(PAPER_CURRENT, rel=1e-12)
    assert current == pytest.approx(_A0_SI / _AZ_PER_AMP, rel=1e-9)
    assert 0.2 / 10 <= current <= 0.2 * 10


def test_required_current_ignores_current_field():
    assert required_current(replace(PAPER_COIL, current=-7.0), HCL, 1.0) == \
        required_current(PAPER_COIL, HCL, 1.0)


@given(geometries, st.floats(1e-3, 100))
def test_required_current_round_trip(t, target):
    current = required_current(t, HCL, target)
    assert coupling_ratio(replace(t, current=current), HCL) == pytest.approx(target, rel=1e-12)
    assert required_current(t, HCL, 2 * target) == pytest.approx(2 * current, rel=1e-14)


@pytest.mark.parametrize("target", [0.0, -1.0])
def test_required_current_rejects_nonpositive(target):
    with pytest.raises(ValueError):
        required_current(PAPER_COIL, HCL, target)


@pytest.mark.parametrize("kwargs", [
    dict(inner_radius=0.06, revolution_radius=0.06),
    dict(inner_radius=-0.01, revolution_radius=0.06),
    dict(inner_radius=0.01, revolution_radius=0.06, n_loops=0),
    dict(inner_radius=0.01, revolution_radius=0.06, n_loops=2.5),
    dict(inner_radius=0.01, revolution_radius=0.06, current=float("nan")),
])
def test_rejects_bad_geometry(kwargs):
    with pytest.raises(ValueError):
        ToroidSpec(**kwargs)


def test_thick_torus_warns():
    with pytest.warns(UserWarning, match="validity"):
        ToroidSpec(0.04, 0.06)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        ToroidSpec(0.02, 0.06)
