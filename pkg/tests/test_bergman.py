import math

import numpy as np
import pytest
from scipy import integrate as sp_integrate
from scipy.special import exp1

from morsebound import (DegenerateCurvature, DivergentBoundaryTerm, HermitianMatrix,
                        ModelBoundaryData, ProfileFunction, Units, boundary_term_point,
                        fiber_integral_residual, flat_density, model_density, profile_b,
                        profile_b_values, t_region)

from conftest import rand_herm

D = HermitianMatrix.diag

# frozen from scipy.integrate.quad with b(t) = 1 - t e^t E1(t)
DENSITY_V0 = 4.0955331334409975
DENSITY_V_MINUS_1 = 2.4119191399381332


def b_oracle(t):
    return 1.0 - t * np.exp(t) * exp1(t)


def test_b_examples():
    assert profile_b(0.0) == pytest.approx(1.0, abs=1e-14)
    assert profile_b(1.0) == pytest.approx(1 - math.e * exp1(1.0), rel=1e-13)
    assert profile_b(100.0) < 0.01


def test_b_against_exponential_integral():
    ts = np.geomspace(1e-9, 300.0, 80)
    assert np.allclose(profile_b_values(ts), b_oracle(ts), rtol=1e-12, atol=0)


def test_b_monotone_and_bounded():
    ts = np.linspace(0.5, 100.0, 200)
    b = profile_b_values(ts)
    assert np.all(np.diff(b) < 0)
    assert np.all(b > 0) and np.all(b <= np.minimum(1.0, 1.0 / ts))


def test_b_rejects_negative_t():
    with pytest.raises(ValueError):
        profile_b(-1.0)


def test_tabulated_constant_profile():
    # a = 1 everywhere below 0 gives b(t) = 1/t
    prof = ProfileFunction.constant(50.0)
    for t in (0.5, 1.0, 7.0):
        assert profile_b(t, prof) == pytest.approx(1.0 / t, rel=1e-12)
    assert math.isinf(profile_b(0.0, prof))


def test_tabulated_profile_against_quad():
    prof = ProfileFunction.tabulated([-3.0, -1.0, 0.0], [4.0, 2.0, 1.0])
    t = 0.7
    want = sum(sp_integrate.quad(lambda s: np.exp(s * t) / np.interp(s, prof.nodes, prof.values),
                                 lo, hi, epsabs=0, epsrel=1e-13)[0]
               for lo, hi in ((-3, -1), (-1, 0)))
    want += math.exp(-3 * t) / (4.0 * t)
    assert profile_b(t, prof) == pytest.approx(want, rel=1e-11)


def test_profile_validation():
    with pytest.raises(ValueError):
        ProfileFunction.tabulated([-1.0, -0.5], [1.0, 1.0])
    with pytest.raises(ValueError):
        ProfileFunction.tabulated([-1.0, 0.0], [1.0, -1.0])


def test_model_density_frozen_values():
    data = ModelBoundaryData(D([3.0]), D([-2.0]), 0)
    assert model_density(data, 0.0, 1e-12) == pytest.approx(DENSITY_V0, rel=1e-11)
    assert model_density(data, -1.0, 1e-12) == pytest.approx(DENSITY_V_MINUS_1, rel=1e-11)
    raw = model_density(data, 0.0, 1e-12, Units.RAW)
    assert raw == pytest.approx(DENSITY_V0 / (4 * math.pi) / math.pi, rel=1e-11)


def test_model_density_limits():
    data = ModelBoundaryData(D([3.0]), D([-2.0]), 0)
    assert model_density(data, -1e4) < 1e-3
    vs = [-20.0, -5.0, -1.0, -0.1, 0.0]
    dens = [model_density(data, v) for v in vs]
    assert all(x >= 0 for x in dens)
    assert all(x < y for x, y in zip(dens, dens[1:]))
    with pytest.raises(ValueError):
        model_density(data, 0.5)


def test_model_density_empty_region():
    data = ModelBoundaryData(D([1.0]), D([-2.0]), 2)
    assert data.region.empty
    assert model_density(data, 0.0) == 0.0


def test_model_unbounded_region_rejected():
    with pytest.raises(DivergentBoundaryTerm):
        ModelBoundaryData(D([3.0]), D([-2.0]), 1)


def test_fiber_identity_example():
    data = ModelBoundaryData(D([3.0]), D([-2.0]), 0)
    assert abs(fiber_integral_residual(data, 1e-6)) <= 1e-6 * 2.25


def test_fiber_identity_random(rng):
    done = 0
    while done < 6:
        m = int(rng.integers(1, 4))
        a, b = rand_herm(rng, m), rand_herm(rng, m)
        q = int(rng.integers(0, m + 1))
        r = t_region(a, b, q)
        if r.unbounded or r.empty:
            continue
        data = ModelBoundaryData(a, b, q)
        term = boundary_term_point(a, b, q)
        assert abs(fiber_integral_residual(data, 1e-6)) <= 1e-6 * term
        done += 1


def test_fiber_identity_constant_profile():
    data = ModelBoundaryData(D([3.0]), D([-2.0]), 0, ProfileFunction.constant(1e4))
    assert abs(fiber_integral_residual(data, 1e-6)) <= 1e-6 * 2.25


def test_flat_density_examples():
    assert flat_density(np.diag([1.0, -1.0]), 1) == pytest.approx(1 / math.pi ** 2, abs=1e-12)
    assert flat_density(np.diag([1.0, -1.0]), 0) == 0.0
    assert flat_density(np.diag([2.0, 3.0]), 0) == pytest.approx(6 / math.pi ** 2)
    assert flat_density(np.diag([2.0, 3.0]), 0, Units.CHERN) == pytest.approx(6.0)
    with pytest.raises(DegenerateCurvature):
        flat_density(np.diag([1.0, 0.0]), 0)


def test_flat_density_one_grade_fires(rng):
    for _ in range(20):
        m = int(rng.integers(1, 5))
        h = rand_herm(rng, m)
        total = sum(flat_density(h, q) for q in range(m + 1))
        assert total == pytest.approx(abs(np.linalg.det(h).real) / math.pi ** m, rel=1e-12)
