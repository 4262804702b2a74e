"""Plane-wave transition matrix elements between Dirac-Coulomb states.

A state is written in the Dirac representation as

    psi = ( g(r) Omega_{kappa m}, i f(r) Omega_{-kappa m} ),

and each of the four spinor components is one radial function times one
spherical harmonic.  Component i of a state therefore carries a coefficient
c_i, an orbital index lcomp_i, an azimuthal index mt_i and a radial label
(0 for g, 1 for f).  The Fourier block

    U_ij(k) = int d^3r conj(phi1_i) e^{i k.r} phi2_j

reduces, through the plane-wave expansion, to a finite sum over l of
Y_{l,m}(k_hat) times 4 pi i^l Gaunt radial-integral products.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .angular import gaunt_sph, sph_harm
from .errors import DomainError
from .radial import radial_integral
from .states import BoundState, FreeState, decomposition

# alpha^a = [[0, sigma^a], [sigma^a, 0]]; index 0 is the identity (the charge term)
_SIGMA = (
    np.array([[1, 0], [0, 1]], dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def _alpha_patterns():
    pats = [np.eye(4, dtype=complex)]
    for s in _SIGMA[1:]:
        a = np.zeros((4, 4), dtype=complex)
        a[:2, 2:] = s
        a[2:, :2] = s
        pats.append(a)
    return tuple(tuple((i, j, complex(p[i, j])) for i in range(4) for j in range(4) if p[i, j] != 0)
                 for p in pats)


ALPHA_PATTERNS = _alpha_patterns()


@dataclass(frozen=True)
class SpinorCoefficients:
    """Per-component coefficient, azimuthal index, orbital index and radial label."""

    c: tuple
    mt: tuple
    lcomp: tuple
    radial: tuple = (0, 0, 1, 1)


@dataclass(frozen=True)
class FourierBlock:
    """U_ij = sum over lterms of coefficient * Y_{l,m}(k_hat)."""

    value: complex
    i: int
    j: int
    m: int
    lterms: list = field(default_factory=list)

    def at(self, direction) -> complex:
        theta, phi = _angles(direction)
        return complex(sum(c * sph_harm(l, self.m, theta, phi) for l, c in self.lterms))


@dataclass(frozen=True)
class TransitionQuadruple:
    t0: float
    t1: float
    t2: float
    t3: float

    @property
    def combined(self) -> float:
        return self.t0 - self.t1 - self.t2 - self.t3

    def as_tuple(self):
        return (self.t0, self.t1, self.t2, self.t3, self.combined)


def _angles(direction):
    v = np.asarray(direction, dtype=float)
    r = float(np.linalg.norm(v))
    if r == 0:
        raise DomainError("direction must be non-zero")
    theta = math.acos(max(-1.0, min(1.0, v[2] / r)))
    phi = math.atan2(v[1], v[0])
    return theta, phi


def _c_up(kappa: int, m: Fraction) -> float:
    sgn = 1 if kappa > 0 else -1
    return -sgn * math.sqrt(float((kappa + Fraction(1, 2) - m) / (2 * kappa + 1)))


def _c_down(kappa: int, m: Fraction) -> float:
    return math.sqrt(float((kappa + Fraction(1, 2) + m) / (2 * kappa + 1)))


def spinor_coefficients(state, m_tilde=None) -> SpinorCoefficients:
    """Coefficients of the four components of psi for projection m_tilde (default state's)."""
    m = Fraction(state.m_tilde if m_tilde is None else m_tilde)
    if m.denominator != 2 or abs(m) > state.j:
        raise DomainError(f"m = {m} not allowed for j = {state.j}")
    kap = state.kappa
    lo, hi = int(m - Fraction(1, 2)), int(m + Fraction(1, 2))
    c = (_c_up(kap, m), _c_down(kap, m), 1j * _c_up(-kap, m), 1j * _c_down(-kap, m))
    c = tuple(complex(x) if abs(x) > 0 else 0j for x in c)
    return SpinorCoefficients(c, (lo, hi, lo, hi), (state.l, state.l, state.l_bar, state.l_bar))


def _m_values(j: Fraction):
    return [-j + n for n in range(int(2 * j) + 1)]


class _RadialTable:
    """Lazily computed R_{ab,l}(k) for the radial pairs of two states."""

    def __init__(self, s1, s2, k):
        self.k = np.atleast_1d(np.asarray(k, dtype=float))
        if np.any(self.k <= 0):
            raise DomainError("k must be positive")
        if isinstance(s1, FreeState) and isinstance(s2, FreeState):
            raise NotImplementedError("free-free matrix elements are not provided")
        self.d1 = decomposition(s1)
        self.d2 = decomposition(s2)
        self.cache = {}

    def __call__(self, a, b, l):
        key = (a, b, l)
        if key not in self.cache:
            res = radial_integral(self.d1[a], self.d2[b], l, self.k)
            self.cache[key] = np.real(np.atleast_1d(res.value))
        return self.cache[key]


def _block_terms(sc1, sc2, i, j, table):
    """[(l, m, coefficient array over k)] for U_ij; empty when forbidden."""
    c = np.conj(sc1.c[i]) * sc2.c[j]
    if c == 0:
        return []
    l1, mt1 = sc1.lcomp[i], sc1.mt[i]
    l2, mt2 = sc2.lcomp[j], sc2.mt[j]
    m = mt2 - mt1
    out = []
    for l in range(abs(l1 - l2), l1 + l2 + 1, 2):
        if abs(m) > l:
            continue
        G = gaunt_sph(l, m, l1, mt1, l2, mt2)
        if G == 0.0:
            continue
        out.append((l, m, 4 * math.pi * (1j ** l) * G * c * table(sc1.radial[i], sc2.radial[j], l)))
    return out


def fourier_block(s1, s2, i: int, j: int, k: float, direction=(0.0, 0.0, 1.0)) -> FourierBlock:
    """U_ij(s1, s2) at |k| = k; ``value`` is evaluated along ``direction``."""
    if not (1 <= i <= 4 and 1 <= j <= 4):
        raise DomainError("spinor indices run from 1 to 4")
    if not k > 0:
        raise DomainError("k must be positive")
    table = _RadialTable(s1, s2, k)
    sc1, sc2 = spinor_coefficients(s1), spinor_coefficients(s2)
    terms = _block_terms(sc1, sc2, i - 1, j - 1, table)
    m = sc2.mt[j - 1] - sc1.mt[i - 1]
    lterms = [(l, complex(v[0])) for l, _, v in terms]
    blk = FourierBlock(0j, i, j, m, lterms)
    value = blk.at(direction) if lterms else 0j
    return FourierBlock(value, i, j, m, lterms)


def quadruple_array(s1, s2, k, lmax: int | None = None) -> np.ndarray:
    """(5, len(k)) array of t0, t1, t2, t3, combined, summed over the m of s2.

    t_mu is the solid-angle average over k_hat of sum_m2 |<s1| e^{ik.r} alpha^mu |s2 m2>|^2,
    so that t0 -> 1 as k -> 0 for s1 = s2.
    """
    table = _RadialTable(s1, s2, k)
    nk = table.k.size
    sc1 = spinor_coefficients(s1)
    t = np.zeros((4, nk))
    for m2 in _m_values(s2.j):
        sc2 = spinor_coefficients(s2, m2)
        blocks = {}
        for mu, pattern in enumerate(ALPHA_PATTERNS):
            acc = {}
            for i, j, w in pattern:
                if (i, j) not in blocks:
                    blocks[(i, j)] = _block_terms(sc1, sc2, i, j, table)
                for l, m, v in blocks[(i, j)]:
                    if lmax is not None and l > lmax:
                        continue
                    acc[(l, m)] = acc.get((l, m), 0) + w * v
            for v in acc.values():
                t[mu] += np.abs(v) ** 2
    t /= 4 * math.pi
    return np.vstack([t, t[0] - t[1] - t[2] - t[3]])


def transition_quadruple(s1, s2, k: float, lmax: int | None = None) -> TransitionQuadruple:
    if not k > 0:
        raise DomainError("k must be positive")
    t = quadruple_array(s1, s2, [k], lmax)[:, 0]
    return TransitionQuadruple(*(float(x) for x in t[:4]))


__all__ = [
    "ALPHA_PATTERNS", "SpinorCoefficients", "FourierBlock", "TransitionQuadruple",
    "spinor_coefficients", "fourier_block", "quadruple_array", "transition_quadruple",
]
