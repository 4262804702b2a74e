"""Random admissible parameter draws and quadrature references for the radial rules."""
import math

import numpy as np
from scipy.special import jv, spherical_jn

from dirac_matel.oracle import OracleConfig, hyp1f1_nodes, quad_radial, state_radial
from dirac_matel.radial import HankelLaplaceSpec, Laplace1F1Spec


def random_hankel(rng):
    nu = float(rng.integers(0, 7)) + 0.5 if rng.random() < 0.7 else float(rng.uniform(0, 6))
    mu = float(rng.uniform(max(1.0 - nu, -nu + 1.0), 6.0))
    alpha = complex(rng.uniform(0.2, 3.0), rng.uniform(-0.5, 0.5) if rng.random() < 0.3 else 0.0)
    beta = float(rng.uniform(0.05, 3.0) * alpha.real * (3.0 if rng.random() < 0.3 else 1.0))
    return HankelLaplaceSpec(mu, nu, alpha, beta)


def hankel_reference(spec):
    a = complex(spec.alpha_decay)
    f = lambda r: np.exp(-a * r) * r ** (spec.mu - 1) * jv(spec.nu, spec.beta_osc * r)
    cfg = OracleConfig(oscillation_period_hint=2 * math.pi / max(spec.beta_osc, abs(a.imag), 1e-9))
    return quad_radial(f, cfg, scale=1.0 / a.real)


def random_laplace(rng, sinc=False):
    a = complex(rng.uniform(-2, 4), rng.uniform(-3, 3))
    c = float(rng.uniform(1.2, 5.0))
    b = float(rng.uniform(1.0, 5.0))
    if rng.random() < 0.5:
        # the continuum shape: p purely imaginary
        p = complex(0.0, rng.uniform(-3, 3))
    else:
        p = complex(rng.uniform(-1.5, 1.0), rng.uniform(-1.5, 1.5))
    s = complex(max(0.0, p.real) + rng.uniform(0.3, 2.0), rng.uniform(-2, 2))
    k = float(rng.uniform(0.05, 4.0)) if sinc else 0.0
    return Laplace1F1Spec(a, c, b, p, s, k)


def laplace_reference(spec):
    s, p = complex(spec.s), complex(spec.p)

    def f(t):
        val = np.exp(-s * t) * t ** (complex(spec.b) - 1) * hyp1f1_nodes(spec.a, spec.c, p * t)
        if spec.k:
            val = val * np.sinc(spec.k * t / math.pi)
        return val

    period = 2 * math.pi / max(spec.k, abs(s.imag), abs(p), 0.1)
    decay = (s - p).real if p.real > 0 else s.real
    cfg = OracleConfig(oscillation_period_hint=period, rtol=1e-11)
    return quad_radial(f, cfg, r_max=45.0 / decay, scale=1.0 / abs(s))


def radial_reference(s1, comp1, s2, comp2, l, k, scale):
    """int r^2 h1 h2 j_l(kr) dr straight from the state functions."""
    def f(r):
        a = state_radial(s1, r)[comp1]
        b = state_radial(s2, r)[comp2]
        return r * r * a * b * spherical_jn(l, k * r)
    cfg = OracleConfig(oscillation_period_hint=2 * math.pi / k)
    return quad_radial(f, cfg, scale=scale)
