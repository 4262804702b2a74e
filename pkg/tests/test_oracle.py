import math

import mpmath
import numpy as np
import pytest
from scipy.special import jv, sph_harm_y

from conftest import bound
from dirac_matel.errors import DomainError, NoConvergence
from dirac_matel.oracle import OracleConfig, quad_matel_3d, quad_radial, quad_sphere, series_hyp
from dirac_matel.radial import HankelLaplaceSpec, hankel_laplace


def test_config_digits():
    with pytest.raises(DomainError):
        OracleConfig(digits=20)


def test_series_hyp_examples():
    with mpmath.workdps(40):
        ln2 = mpmath.log(2)
        em1 = mpmath.e - 1
    assert abs(series_hyp("2f1", (1, 1, 2), -1) - complex(ln2)) < 1e-15
    assert abs(series_hyp("1f1", (1, 2), 1) - complex(em1)) < 1e-15
    assert series_hyp("2f1", (0.3, 1.1, 2.2), 0) == 1
    with pytest.raises(DomainError):
        series_hyp("3f2", (1, 1, 1), 0.1)


def test_series_hyp_extended_precision():
    cfg = OracleConfig(digits=40)
    with mpmath.workdps(50):
        v = mpmath.hyp2f1(1, 1, 2, -0.5)
        ref = mpmath.log(1.5) / 0.5
    assert abs(v - ref) < mpmath.mpf(10) ** -35
    assert series_hyp("2f1", (1, 1, 2), -0.5, cfg) == pytest.approx(complex(ref), rel=1e-15)


def test_quad_radial_examples():
    assert quad_radial(lambda r: np.exp(-r))[0] == pytest.approx(1.0, rel=1e-13)
    cfg = OracleConfig(oscillation_period_hint=2 * math.pi / 4)
    assert quad_radial(lambda r: np.exp(-3 * r) * jv(0, 4 * r), cfg)[0] == pytest.approx(0.2, rel=1e-12)
    assert quad_radial(lambda r: np.exp(-r) * np.sin(r))[0] == pytest.approx(0.5, rel=1e-12)


def test_quad_radial_no_convergence():
    cfg = OracleConfig(max_subdivisions=1)
    with pytest.raises(NoConvergence):
        quad_radial(lambda r: np.sin(1 / np.maximum(r, 1e-300)) * np.exp(-r), cfg, r_max=10.0)


@pytest.mark.parametrize("mu,nu,alpha,beta", [(1, 0, 3, 4), (2, 0, 1, 1), (2.5, 1.5, 0.7, 2.0), (3.2, 4.5, 1.0, 0.3)])
def test_closed_loop_hankel(mu, nu, alpha, beta):
    """Quadrature and the series-composed closed form agree before the oracle is trusted."""
    z = -beta ** 2 / alpha ** 2
    F = series_hyp("2f1", ((nu + mu) / 2, (1 + mu + nu) / 2, nu + 1), z)
    closed = (beta / (2 * alpha)) ** nu * math.gamma(nu + mu) / (alpha ** mu * math.gamma(nu + 1)) * F
    cfg = OracleConfig(oscillation_period_hint=2 * math.pi / beta)
    quad = quad_radial(lambda r: np.exp(-alpha * r) * r ** (mu - 1) * jv(nu, beta * r), cfg)[0]
    assert abs(quad - closed) <= 1e-12 * abs(closed)
    assert abs(hankel_laplace(HankelLaplaceSpec(mu, nu, alpha, beta)).value - closed) <= 1e-12 * abs(closed)


def test_quad_sphere_examples():
    assert quad_sphere(lambda t, p: abs(sph_harm_y(0, 0, t, p)) ** 2).real == pytest.approx(1.0, abs=1e-14)
    assert quad_sphere(lambda t, p: sph_harm_y(0, 0, t, p)).real == pytest.approx(math.sqrt(4 * math.pi), rel=1e-14)
    v = quad_sphere(lambda t, p: np.conj(sph_harm_y(1, 0, t, p)) * sph_harm_y(2, 0, t, p))
    assert abs(v) < 1e-12


def test_quad_matel_3d_normalization():
    s = bound(0, -2, "1/2", Z=10)
    total = sum(quad_matel_3d(s, s, i, i, (0.0, 0.0, 0.0)) for i in range(1, 5))
    assert total == pytest.approx(1.0, abs=1e-10)
