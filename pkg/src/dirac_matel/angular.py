"""Spherical harmonics and Gaunt coefficients.

Gaunt integrals are computed in exact rational arithmetic and converted to
floating point only at the end, so selection-rule zeros are exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError, UnsupportedM
from .numerics import legendre_trig

VANISHING_REASONS = ("none", "parity", "triangle", "azimuthal", "accidental")


@dataclass(frozen=True)
class GauntKey:
    l1: int
    l2: int
    l3: int
    m1: int
    m2: int
    m3: int

    def __post_init__(self):
        for l, m in self.pairs():
            if l < 0 or abs(m) > l:
                raise DomainError(f"invalid (l, m) = ({l}, {m})")

    def pairs(self):
        return ((self.l1, self.m1), (self.l2, self.m2), (self.l3, self.m3))


@dataclass(frozen=True)
class GauntValue:
    value: float
    vanishing_reason: str = "none"

    def __float__(self):
        return self.value


def sph_harm(l: int, m: int, theta, phi):
    """Orthonormal spherical harmonic Y_lm(theta, phi), Condon-Shortley phase."""
    if l < 0 or abs(m) > l:
        raise DomainError(f"need |m| <= l, got l={l}, m={m}")
    norm = math.sqrt((2 * l + 1) / (4 * math.pi) * math.factorial(l - m) / math.factorial(l + m))
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    val = norm * np.asarray(legendre_trig(l, m, np.cos(theta), np.abs(np.sin(theta)))) * np.exp(1j * m * phi)
    return val if val.ndim else complex(val)


# ---------------------------------------------------------------------------
# exact Wigner 3j
# ---------------------------------------------------------------------------

def _triangle(a, b, c):
    return abs(a - b) <= c <= a + b


@lru_cache(maxsize=None)
def _threej_parts(j1, j2, j3, m1, m2, m3):
    """3j symbol as (sign * rational_sum, rational_under_sqrt), integer j only."""
    if m1 + m2 + m3 != 0 or not _triangle(j1, j2, j3):
        return Fraction(0), Fraction(0)
    if abs(m1) > j1 or abs(m2) > j2 or abs(m3) > j3:
        return Fraction(0), Fraction(0)
    f = math.factorial
    under = Fraction(
        f(j1 + j2 - j3) * f(j1 - j2 + j3) * f(-j1 + j2 + j3)
        * f(j1 + m1) * f(j1 - m1) * f(j2 + m2) * f(j2 - m2) * f(j3 + m3) * f(j3 - m3),
        f(j1 + j2 + j3 + 1),
    )
    tmin = max(0, j2 - j3 - m1, j1 - j3 + m2)
    tmax = min(j1 + j2 - j3, j1 - m1, j2 + m2)
    total = Fraction(0)
    for t in range(tmin, tmax + 1):
        den = (f(t) * f(j3 - j2 + t + m1) * f(j3 - j1 + t - m2)
               * f(j1 + j2 - j3 - t) * f(j1 - t - m1) * f(j2 - t + m2))
        total += Fraction((-1) ** t, den)
    if (j1 - j2 - m3) % 2:
        total = -total
    return total, under


def wigner_3j(j1, j2, j3, m1, m2, m3) -> float:
    """Wigner 3j symbol for integer angular momenta."""
    s, u = _threej_parts(j1, j2, j3, m1, m2, m3)
    return float(s) * math.sqrt(float(u))


@lru_cache(maxsize=None)
def gaunt_sph_value(l, m, l1, mt1, l2, mt2) -> GauntValue:
    """Integral of conj(Y_lm) conj(Y_{l1 mt1}) Y_{l2 mt2} over the sphere, with the zero reason."""
    for ll, mm in ((l, m), (l1, mt1), (l2, mt2)):
        if ll < 0 or abs(mm) > ll:
            raise DomainError(f"invalid (l, m) = ({ll}, {mm})")
    if m != mt2 - mt1:
        return GauntValue(0.0, "azimuthal")
    if (l + l1 + l2) % 2:
        return GauntValue(0.0, "parity")
    if not _triangle(l1, l2, l):
        return GauntValue(0.0, "triangle")
    # conj(Y_lm) = (-1)^m Y_{l,-m}
    s0, u0 = _threej_parts(l, l1, l2, 0, 0, 0)
    s1, u1 = _threej_parts(l, l1, l2, -m, -mt1, mt2)
    s = s0 * s1
    if s == 0:
        return GauntValue(0.0, "accidental")
    under = u0 * u1 * (2 * l + 1) * (2 * l1 + 1) * (2 * l2 + 1)
    sign = -1 if (m + mt1) % 2 else 1
    val = sign * float(s) * math.sqrt(float(under) / (4 * math.pi))
    return GauntValue(val, "none")


def gaunt_sph(l: int, m: int, l1: int, mt1: int, l2: int, mt2: int) -> float:
    """Real Gaunt coefficient  int conj(Y_lm) conj(Y_{l1,mt1}) Y_{l2,mt2} dOmega."""
    return gaunt_sph_value(l, m, l1, mt1, l2, mt2).value


# ---------------------------------------------------------------------------
# exact Legendre triple integrals
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _legendre_poly(l):
    """Exact coefficients (ascending powers) of P_l(x)."""
    c = [Fraction(0)] * (l + 1)
    for k in range(l // 2 + 1):
        c[l - 2 * k] = Fraction((-1) ** k * math.comb(l, k) * math.comb(2 * l - 2 * k, l), 2 ** l)
    return tuple(c)


def _derivative(c, times):
    c = list(c)
    for _ in range(times):
        c = [i * c[i] for i in range(1, len(c))] or [Fraction(0)]
    return c


def _polymul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def _assoc_poly(l, m):
    """P_l^m(x) = scale * (1-x^2)^{|m|/2} * poly(x); returns (scale, poly)."""
    am = abs(m)
    poly = _derivative(_legendre_poly(l), am)
    scale = Fraction((-1) ** am)
    if m < 0:
        scale *= Fraction((-1) ** am * math.factorial(l - am), math.factorial(l + am))
    return scale, tuple(poly)


def _signed_sum_family(m1, m2, m3):
    return any(s1 * m1 + s2 * m2 + s3 * m3 == 0
               for s1 in (1, -1) for s2 in (1, -1) for s3 in (1, -1))


@lru_cache(maxsize=None)
def _gaunt_legendre_cached(key: GauntKey) -> GauntValue:
    msum = abs(key.m1) + abs(key.m2) + abs(key.m3)
    if msum % 2:
        raise UnsupportedM(
            f"m = ({key.m1}, {key.m2}, {key.m3}): odd sum of |m|, the integrand is not a polynomial"
        )
    if (key.l1 + key.l2 + key.l3) % 2:
        return GauntValue(0.0, "parity")
    if _signed_sum_family(key.m1, key.m2, key.m3) and not _triangle(key.l1, key.l2, key.l3):
        return GauntValue(0.0, "triangle")
    scale = Fraction(1)
    poly = [Fraction(1)]
    for l, m in key.pairs():
        s, p = _assoc_poly(l, m)
        scale *= s
        poly = _polymul(poly, p)
    for _ in range(msum // 2):
        poly = _polymul(poly, [Fraction(1), Fraction(0), Fraction(-1)])
    total = sum((Fraction(2, n + 1) * cn for n, cn in enumerate(poly) if n % 2 == 0), Fraction(0))
    total *= scale
    if total == 0:
        return GauntValue(0.0, "accidental")
    return GauntValue(float(total), "none")


def gaunt_legendre(key) -> GauntValue:
    """Exact integral of P_{l1}^{m1} P_{l2}^{m2} P_{l3}^{m3} over [-1, 1].

    ``key`` is a GauntKey or a tuple (l1, l2, l3, m1, m2, m3).  Supported
    whenever |m1|+|m2|+|m3| is even, which includes every signed-sum case
    such as m1 = m2 + m3; otherwise UnsupportedM is raised.
    """
    if not isinstance(key, GauntKey):
        key = GauntKey(*key)
    return _gaunt_legendre_cached(key)
