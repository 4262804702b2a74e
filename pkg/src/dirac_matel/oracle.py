"""Brute-force reference engine.

Nothing here uses the closed-form machinery of :mod:`radial` or
:mod:`matel`.  Hypergeometric values come from extended-precision series
(mpmath), radial integrals from panelled Gauss-Legendre quadrature with a
nested-rule error estimate, and plane-wave matrix elements from direct
quadrature over r, cos(theta) and phi with spinors assembled from sympy's
Clebsch-Gordan coefficients and scipy's spherical harmonics.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np
from scipy.special import sph_harm_y
from sympy import Rational
from sympy.physics.quantum.cg import CG

from .errors import DomainError, NoConvergence
from .states import BoundState, FreeState, gamma_kappa


@dataclass(frozen=True)
class OracleConfig:
    digits: int = 30
    max_subdivisions: int = 400
    oscillation_period_hint: float | None = None
    rtol: float = 1e-13

    def __post_init__(self):
        if self.digits < 30:
            raise DomainError("oracle paths need at least 30 digits")


DEFAULT_ORACLE = OracleConfig()


# ---------------------------------------------------------------------------
# extended-precision hypergeometric series
# ---------------------------------------------------------------------------

def _mp(x):
    return mpmath.mpc(complex(x)) if isinstance(x, complex) or np.iscomplexobj(x) else mpmath.mpf(float(x))


def _direct_series(num, den, z, eps, max_terms):
    term = mpmath.mpf(1)
    total = mpmath.mpf(1)
    for n in range(max_terms):
        for a in num:
            term *= a + n
        for b in den:
            term /= b + n
        term *= z / (n + 1)
        total += term
        if n > 4 and abs(term) <= eps * abs(total):
            return total, abs(term)
    raise NoConvergence("oracle series did not converge")


def series_hyp(kind: str, params, z, cfg: OracleConfig = DEFAULT_ORACLE, max_terms: int = 100000):
    """1F1(a; c; z) or 2F1(a, b; c; z) at cfg.digits working precision.

    Summed term by term where the series converges quickly; otherwise the
    mpmath evaluator (which applies its own transformations and
    convergence acceleration) is called at the same precision.
    """
    with mpmath.workdps(cfg.digits + 10):
        zz = _mp(z)
        p = [_mp(x) for x in params]
        eps = mpmath.mpf(10) ** (-(cfg.digits + 5))
        if kind == "1f1":
            a, c = p
            if abs(zz) <= 60:
                val, _ = _direct_series([a], [c], zz, eps, max_terms)
            else:
                val = mpmath.hyp1f1(a, c, zz)
        elif kind == "2f1":
            a, b, c = p
            if abs(zz) <= 0.8:
                val, _ = _direct_series([a, b], [c], zz, eps, max_terms)
            else:
                val = mpmath.hyp2f1(a, b, c, zz)
        else:
            raise DomainError(f"unknown kind {kind!r}")
        return complex(val)


def hyp1f1_nodes(a, c, z, cfg: OracleConfig = DEFAULT_ORACLE) -> np.ndarray:
    """mpmath 1F1 at each entry of z (slow, reference only)."""
    z = np.asarray(z)
    with mpmath.workdps(cfg.digits):
        aa, cc = _mp(a), _mp(c)
        out = [complex(mpmath.hyp1f1(aa, cc, _mp(complex(x)))) for x in z.ravel()]
    return np.array(out).reshape(z.shape)


# ---------------------------------------------------------------------------
# radial quadrature
# ---------------------------------------------------------------------------

_GL_LO = np.polynomial.legendre.leggauss(30)
_GL_HI = np.polynomial.legendre.leggauss(45)


def _panel(f, a, b):
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    lo = half * np.sum(_GL_LO[1] * f(mid + half * _GL_LO[0]))
    fh = f(mid + half * _GL_HI[0])
    hi = half * np.sum(_GL_HI[1] * fh)
    return hi, abs(hi - lo), half * np.sum(_GL_HI[1] * np.abs(fh))


def _find_cutoff(f, start=1.0):
    r = np.geomspace(start * 1e-3, start * 1e8, 400)
    v = np.abs(r * f(r))
    peak = np.max(v)
    if peak == 0:
        return start
    # the last point above 1e-18 of the peak, padded for oscillation nulls
    above = np.nonzero(v > 1e-18 * peak)[0]
    return float(r[min(above[-1] + 3, r.size - 1)])


def quad_radial(f, cfg: OracleConfig = DEFAULT_ORACLE, r_max: float | None = None, scale: float = 1.0):
    """int_0^r_max f(r) dr with adaptive Gauss-Legendre panels; returns (value, error).

    ``f`` takes an array of r.  Without ``r_max`` the range is cut where |r f|
    falls below 1e-18 of its peak.  ``scale`` sets the innermost panel size and
    ``cfg.oscillation_period_hint`` caps the panel length.
    """
    if r_max is None:
        r_max = _find_cutoff(f, scale)
    edges = np.concatenate([[0.0], np.geomspace(1e-6 * scale, r_max, 40)])
    if cfg.oscillation_period_hint:
        h = cfg.oscillation_period_hint
        out = [edges[0]]
        for a, b in zip(edges[:-1], edges[1:]):
            n = max(1, int(math.ceil((b - a) / h)))
            out.extend(np.linspace(a, b, n + 1)[1:])
        edges = np.array(out)
    parts = [(*_panel(f, a, b), a, b) for a, b in zip(edges[:-1], edges[1:])]
    splits = 0
    while True:
        total = sum(p[0] for p in parts)
        l1 = sum(p[2] for p in parts)
        # relative to the result, floored by the size of the integrand
        tol = max(cfg.rtol * max(abs(total), 1e-3 * l1), 1e-300) / len(parts)
        # a panel whose nested rules agree to rounding level cannot improve
        bad = [p for p in parts if p[1] > tol and p[1] > 1e-14 * p[2]]
        if not bad:
            break
        splits += len(bad)
        if splits > cfg.max_subdivisions * 50:
            raise NoConvergence("radial quadrature did not reach the requested accuracy")
        parts = [p for p in parts if not (p[1] > tol and p[1] > 1e-14 * p[2])]
        for _, _, _, a, b in bad:
            m = 0.5 * (a + b)
            parts.append((*_panel(f, a, m), a, m))
            parts.append((*_panel(f, m, b), m, b))
    err = sum(p[1] for p in parts)
    return total, err


def state_radial(state, r, cfg: OracleConfig = DEFAULT_ORACLE):
    """(g, f) built from textbook closed forms with mpmath 1F1 for continuum states."""
    from .states import bound_radial

    if isinstance(state, BoundState):
        pair = bound_radial(state, r)
        return np.asarray(pair.g), np.asarray(pair.f)
    return _free_radial_mp(state, np.asarray(r, dtype=float), cfg)


def _free_radial_mp(state: FreeState, r, cfg):
    c = state.consts
    m = c.m_e
    p = state.p
    W = math.sqrt(m * m + p * p)
    gam = gamma_kappa(state.kappa, c)
    kap = state.kappa
    y = c.za * W / p
    with mpmath.workdps(cfg.digits):
        e2ieta = -(kap - 1j * y * m / W) / (gam + 1j * y)
        eieta = mpmath.sqrt(mpmath.mpc(e2ieta))
        K = mpmath.gamma(2 * gam + 1) * mpmath.exp(-mpmath.pi * y / 2) / (abs(mpmath.gamma(gam + 1j * y)) * 2 * p)
        A = 1 / (2 * K * mpmath.sqrt(mpmath.pi * W))
        sign = -1 if kap > 0 else 1
        common = sign * A * eieta * (gam + 1j * y)
        g = np.empty(r.shape)
        f = np.empty(r.shape)
        for idx, rr in np.ndenumerate(r):
            env = (2 * p * rr) ** (gam - 1) * mpmath.exp(-1j * p * rr) * mpmath.hyp1f1(gam + 1 + 1j * y, 2 * gam + 1, 2j * p * rr)
            z = common * env
            g[idx] = float(2 * mpmath.re(z) * math.sqrt(W + m))
            f[idx] = float(2 * mpmath.re(1j * z) * math.sqrt(W - m))
    return g, f


# ---------------------------------------------------------------------------
# sphere quadrature
# ---------------------------------------------------------------------------

def sphere_rule(n: int = 24):
    """Nodes (theta, phi) and weights of GL(n) in cos(theta) x trapezoid(2n) in phi."""
    x, w = np.polynomial.legendre.leggauss(n)
    phi = np.arange(2 * n) * (math.pi / n)
    theta = np.arccos(x)
    T, P = np.meshgrid(theta, phi, indexing="ij")
    W = np.outer(w, np.full(2 * n, math.pi / n))
    return T, P, W


def quad_sphere(f, cfg: OracleConfig = DEFAULT_ORACLE, n: int = 24) -> complex:
    """int f(theta, phi) dOmega, exact for band limits below n."""
    T, P, W = sphere_rule(n)
    return complex(np.sum(W * f(T, P)))


# ---------------------------------------------------------------------------
# 3D plane-wave matrix elements
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _cg(l, ml, ms2, j2, m2):
    """<l ml; 1/2 ms | j m> with ms = ms2/2, j = j2/2, m = m2/2."""
    return float(CG(l, ml, Rational(1, 2), Rational(ms2, 2), Rational(j2, 2), Rational(m2, 2)).doit())


def spinor_components(state, m=None):
    """[(coefficient, l, ml, radial label)] for the four Dirac components."""
    m = Fraction(state.m_tilde if m is None else m)
    j2, m2 = int(2 * state.j), int(2 * m)
    out = []
    for lab, l, pref in ((0, state.l, 1.0), (1, state.l_bar, 1j)):
        for ms2 in (1, -1):
            ml = (m2 - ms2) // 2
            c = _cg(l, ml, ms2, j2, m2) if abs(ml) <= l else 0.0
            out.append((pref * c, l, ml, lab))
    return out


def _rotation(direction):
    v = np.asarray(direction, dtype=float)
    v = v / np.linalg.norm(v)
    beta = math.acos(max(-1.0, min(1.0, v[2])))
    alpha = math.atan2(v[1], v[0])
    ca, sa, cb, sb = math.cos(alpha), math.sin(alpha), math.cos(beta), math.sin(beta)
    rz = np.array([[ca, -sa, 0], [sa, ca, 0], [0, 0, 1]])
    ry = np.array([[cb, 0, sb], [0, 1, 0], [-sb, 0, cb]])
    return rz @ ry


class _Radial3D:
    """F_ab(x) = int r^2 h1_a h2_b exp(i k r x) dr on GL nodes x in [-1, 1]."""

    def __init__(self, s1, s2, k, n_x, cfg):
        lam = []
        for s in (s1, s2):
            if isinstance(s, BoundState):
                from .states import decay_rate
                lam.append(decay_rate(s))
        scale = 1.0 / max(lam)
        r_max = 80.0 / sum(lam)
        if n_x is None:
            # F(x) varies on the scale min(lam) / k in x
            n_x = 96 + 2 * (int(16 * k / min(lam)) // 2)
        # radial nodes shared by every x
        nodes, weights = [], []
        edges = np.concatenate([[0.0], np.geomspace(1e-5 * scale, r_max, 60)])
        if k > 0:
            out = [0.0]
            # four oscillation periods per 45-point panel
            h = 8 * math.pi / k
            for a, b in zip(edges[:-1], edges[1:]):
                n = max(1, int(math.ceil((b - a) / h)))
                out.extend(np.linspace(a, b, n + 1)[1:])
            edges = np.array(out)
        xg, wg = _GL_HI
        for a, b in zip(edges[:-1], edges[1:]):
            nodes.append(0.5 * (a + b) + 0.5 * (b - a) * xg)
            weights.append(0.5 * (b - a) * wg)
        r = np.concatenate(nodes)
        w = np.concatenate(weights)
        g1, f1 = state_radial(s1, r, cfg)
        g2, f2 = state_radial(s2, r, cfg)
        x, wx = np.polynomial.legendre.leggauss(n_x)
        phase = np.exp(1j * k * np.outer(x, r))
        self.x, self.wx = x, wx
        self.F = {}
        for a, h1 in ((0, g1), (1, f1)):
            for b, h2 in ((0, g2), (1, f2)):
                self.F[(a, b)] = phase @ (w * r * r * h1 * h2)


class _Harmonics:
    """Y_lm on the (x, phi) grid of a frame whose z axis is rotated onto k_hat."""

    def __init__(self, x, rot, n_phi):
        phi = np.arange(n_phi) * (2 * math.pi / n_phi)
        st = np.sqrt(1 - x * x)
        pts = np.stack([np.outer(st, np.cos(phi)), np.outer(st, np.sin(phi)), np.outer(x, np.ones(n_phi))])
        lab = np.einsum("ij,jab->iab", rot, pts)
        self.th = np.arccos(np.clip(lab[2], -1, 1))
        self.ph = np.arctan2(lab[1], lab[0])
        self.dphi = 2 * math.pi / n_phi
        self.cache = {}
        self.pair_cache = {}

    def y(self, l, m):
        if (l, m) not in self.cache:
            self.cache[(l, m)] = sph_harm_y(l, m, self.th, self.ph)
        return self.cache[(l, m)]

    def overlap(self, l1, m1, l2, m2):
        """phi-integral of conj(Y_{l1 m1}) Y_{l2 m2} at each x node."""
        key = (l1, m1, l2, m2)
        if key not in self.pair_cache:
            self.pair_cache[key] = (np.conj(self.y(l1, m1)) * self.y(l2, m2)).sum(axis=1) * self.dphi
        return self.pair_cache[key]


def _block_3d(comp1, comp2, i, j, rad, harm):
    c1, l1, m1, a = comp1[i]
    c2, l2, m2, b = comp2[j]
    if c1 == 0 or c2 == 0:
        return 0j
    ang = harm.overlap(l1, m1, l2, m2)
    return complex(np.conj(c1) * c2 * np.sum(rad.wx * ang * rad.F[(a, b)]))


def quad_matel_3d(s1, s2, i: int, j: int, k_vec, cfg: OracleConfig = DEFAULT_ORACLE, n_x: int | None = None) -> complex:
    """int d^3r conj(phi1_i) exp(i k.r) phi2_j by direct quadrature (i, j in 1..4)."""
    k_vec = np.asarray(k_vec, dtype=float)
    k = float(np.linalg.norm(k_vec))
    rad = _Radial3D(s1, s2, k, n_x, cfg)
    rot = _rotation(k_vec if k > 0 else (0, 0, 1))
    comp1, comp2 = spinor_components(s1), spinor_components(s2)
    n_phi = 2 * (comp1[i - 1][1] + comp2[j - 1][1]) + 4
    return _block_3d(comp1, comp2, i - 1, j - 1, rad, _Harmonics(rad.x, rot, n_phi))


_ALPHA = None


def _alpha_dense():
    global _ALPHA
    if _ALPHA is None:
        s = [np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.array([[1, 0], [0, -1]])]
        mats = [np.eye(4, dtype=complex)]
        for sg in s:
            a = np.zeros((4, 4), dtype=complex)
            a[:2, 2:] = sg
            a[2:, :2] = sg
            mats.append(a)
        _ALPHA = mats
    return _ALPHA


def oracle_quadruple(s1, s2, k: float, cfg: OracleConfig = DEFAULT_ORACLE, n_x: int | None = None, n_dir: int = 8):
    """(t0, t1, t2, t3, combined) with an explicit quadrature average over k_hat."""
    rad = _Radial3D(s1, s2, k, n_x, cfg)
    comp1 = spinor_components(s1)
    lsum = max(c[1] for c in comp1) + max(s2.l, s2.l_bar)
    n_phi = 2 * lsum + 4
    T, P, W = sphere_rule(n_dir)
    alpha = _alpha_dense()
    t = np.zeros(4)
    js = [Fraction(-s2.j + n) for n in range(int(2 * s2.j) + 1)]
    comps2 = [spinor_components(s2, m2) for m2 in js]
    for th, ph, w in zip(T.ravel(), P.ravel(), W.ravel()):
        rot = _rotation((math.sin(th) * math.cos(ph), math.sin(th) * math.sin(ph), math.cos(th)))
        harm = _Harmonics(rad.x, rot, n_phi)
        for comp2 in comps2:
            U = np.array([[_block_3d(comp1, comp2, i, j, rad, harm) for j in range(4)] for i in range(4)])
            for mu in range(4):
                t[mu] += w * abs(np.sum(alpha[mu] * U)) ** 2
    t /= 4 * math.pi
    return (*t, t[0] - t[1] - t[2] - t[3])


__all__ = [
    "OracleConfig", "DEFAULT_ORACLE", "series_hyp", "hyp1f1_nodes", "quad_radial", "state_radial",
    "sphere_rule", "quad_sphere", "spinor_components", "quad_matel_3d", "oracle_quadruple",
]
