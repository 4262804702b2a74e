"""Dirac-Coulomb bound and continuum states.

Conventions (natural units, hbar = c = m = 1 by default):

* spinor  psi = ( g(r) Omega_{kappa m} ; i f(r) Omega_{-kappa m} ),
  radial equations  g' = -(kappa+1)/r g + (E+m-V) f,
                    f' =  (kappa-1)/r f - (E-m-V) g,  V = -Z alpha / r;
* l = -kappa-1 for kappa < 0 and l = kappa for kappa > 0, j = |kappa| - 1/2;
  type t = 1 for kappa < 0 (j = l + 1/2), t = 2 for kappa > 0;
* bound states normalised to int (g^2 + f^2) r^2 dr = 1, continuum states to
  delta(p - p') in the momentum magnitude.

Both kinds expose a decomposition the radial integrals work from:
a bound component is  sum_q c_q r^(gamma-1+q) exp(-lam r),
a continuum component is  2 Re[A r^(gamma-1) exp(-i p r) 1F1(a; c; 2 i p r)].
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError, SubcriticalError
from .numerics import hyp1f1_array, laguerre_coefficients, log_gamma_c

ALPHA_CODATA = 7.2973525693e-3


@dataclass(frozen=True)
class PhysicalConstants:
    """Coupling and charge.  ``Z`` may be 0 to get free waves."""

    alpha: float = ALPHA_CODATA
    m_e: float = 1.0
    Z: float = 1

    def __post_init__(self):
        if self.alpha <= 0 or self.m_e <= 0:
            raise DomainError("alpha and m_e must be positive")
        if self.Z < 0:
            raise DomainError("Z must be >= 0")
        if self.Z * self.alpha >= 1.0:
            raise SubcriticalError(f"Z*alpha = {self.Z * self.alpha} >= 1")

    @property
    def za(self) -> float:
        return self.Z * self.alpha

    @property
    def a0(self) -> float:
        return 1.0 / (self.m_e * self.alpha)


DEFAULT_CONSTANTS = PhysicalConstants()


def _half_integer(m) -> Fraction:
    m = Fraction(m).limit_denominator(2)
    if m.denominator != 2:
        raise DomainError(f"m_tilde must be half-integer, got {m}")
    return m


class _Labels:
    """Accessors derived from kappa shared by bound and free states."""

    kappa: int
    m_tilde: Fraction

    @property
    def j(self) -> Fraction:
        return Fraction(2 * abs(self.kappa) - 1, 2)

    @property
    def l(self) -> int:
        return -self.kappa - 1 if self.kappa < 0 else self.kappa

    @property
    def l_bar(self) -> int:
        """Orbital momentum of the small component."""
        return -self.kappa if self.kappa < 0 else self.kappa - 1

    @property
    def t(self) -> int:
        return 1 if self.kappa < 0 else 2

    def _check_labels(self, t):
        if self.kappa == 0 or int(self.kappa) != self.kappa:
            raise DomainError("kappa must be a nonzero integer")
        if abs(self.m_tilde) > self.j:
            raise DomainError(f"|m_tilde| = {abs(self.m_tilde)} exceeds j = {self.j}")
        if t is not None and t != self.t:
            raise DomainError(f"type t={t} inconsistent with kappa={self.kappa}")


@dataclass(frozen=True)
class BoundState(_Labels):
    """Bound level with radial quantum number ``n_r`` (n' >= 0)."""

    n_r: int
    kappa: int
    m_tilde: Fraction
    consts: PhysicalConstants = field(default=DEFAULT_CONSTANTS, compare=True)
    type_label: int | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "m_tilde", _half_integer(self.m_tilde))
        self._check_labels(self.type_label)
        if self.n_r < 0 or int(self.n_r) != self.n_r:
            raise DomainError("n_r must be a non-negative integer")
        if self.kappa > 0 and self.n_r < 1:
            raise DomainError("kappa > 0 needs n_r >= 1")

    @property
    def n(self) -> int:
        """Principal quantum number n = n' + |kappa|."""
        return self.n_r + abs(self.kappa)


@dataclass(frozen=True)
class FreeState(_Labels):
    """Positive-energy continuum state of momentum ``p``."""

    p: float
    kappa: int
    m_tilde: Fraction
    consts: PhysicalConstants = field(default=DEFAULT_CONSTANTS, compare=True)
    type_label: int | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "m_tilde", _half_integer(self.m_tilde))
        self._check_labels(self.type_label)
        if not self.p > 0:
            raise DomainError("p must be positive")

    @property
    def W(self) -> float:
        m = self.consts.m_e
        return math.sqrt(m * m + self.p * self.p)


@dataclass(frozen=True)
class RadialPair:
    g: np.ndarray | float
    f: np.ndarray | float


@dataclass(frozen=True)
class BoundComponent:
    """h(r) = sum_q coeffs[q] r^(gamma-1+q) exp(-lam r)."""

    gamma: float
    lam: float
    coeffs: tuple

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        poly = np.polynomial.polynomial.polyval(r, np.asarray(self.coeffs))
        return poly * r ** (self.gamma - 1) * np.exp(-self.lam * r)


@dataclass(frozen=True)
class FreeComponent:
    """h(r) = 2 Re[amp r^(gamma-1) exp(-i p r) 1F1(a; c; 2 i p r)]."""

    gamma: float
    p: float
    a: complex
    c: float
    amp: complex

    def complex_parts(self, r):
        """The two complex-conjugate halves, each computed directly."""
        r = np.asarray(r, dtype=float)
        z = 2j * self.p * r
        m1, _ = hyp1f1_array(self.a, self.c, z)
        # conj of exp(-ipr) M(a;c;2ipr) rewritten with Kummer's relation
        m2, _ = hyp1f1_array(self.c - np.conj(self.a), self.c, z)
        env = r ** (self.gamma - 1) * np.exp(-1j * self.p * r)
        return self.amp * env * m1, np.conj(self.amp) * env * m2

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        m1, _ = hyp1f1_array(self.a, self.c, 2j * self.p * r)
        return 2.0 * np.real(self.amp * r ** (self.gamma - 1) * np.exp(-1j * self.p * r) * m1)


def _consts(state, consts):
    return state.consts if consts is None else consts


def gamma_kappa(kappa: int, consts: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """gamma = sqrt(kappa^2 - (Z alpha)^2)."""
    za = consts.za
    if za >= abs(kappa):
        raise SubcriticalError(f"Z*alpha = {za} >= |kappa| = {abs(kappa)}")
    return math.sqrt(kappa * kappa - za * za)


def apparent_n(state: BoundState, consts: PhysicalConstants | None = None) -> float:
    """N = sqrt(n'^2 + 2 n' gamma + kappa^2)."""
    g = gamma_kappa(state.kappa, _consts(state, consts))
    n = state.n_r
    return math.sqrt(n * n + 2 * n * g + state.kappa ** 2)


def bound_energy(state: BoundState, consts: PhysicalConstants | None = None) -> float:
    """Sommerfeld energy m [1 + (Z alpha / (n' + gamma))^2]^(-1/2)."""
    c = _consts(state, consts)
    g = gamma_kappa(state.kappa, c)
    return c.m_e / math.sqrt(1.0 + (c.za / (state.n_r + g)) ** 2)


def decay_rate(state: BoundState, consts: PhysicalConstants | None = None) -> float:
    """lambda = m Z alpha / N = Z / (N a0)."""
    c = _consts(state, consts)
    return c.Z / (apparent_n(state, c) * c.a0)


def energy(state, consts: PhysicalConstants | None = None) -> float:
    """Energy of a bound state, or W(p) of a continuum state."""
    if isinstance(state, BoundState):
        return bound_energy(state, consts)
    m = _consts(state, consts).m_e
    return math.sqrt(m * m + state.p ** 2)


def bound_decomposition(state: BoundState, consts: PhysicalConstants | None = None):
    """Power-exponential form (g, f) of the bound radial functions."""
    c = _consts(state, consts)
    if c.Z == 0:
        raise DomainError("bound states need Z > 0")
    m = c.m_e
    gam = gamma_kappa(state.kappa, c)
    N = apparent_n(state, c)
    E = bound_energy(state, c)
    lam = decay_rate(state, c)
    n = state.n_r
    kap = state.kappa
    cc = 2 * gam + 1
    # log of the normalisation (2 lam)^{3/2}/Gamma(c) sqrt(Gamma(c+n)/(4 N (N-kappa) n!))
    log_pre = (1.5 * math.log(2 * lam) - log_gamma_c(cc).real
               + 0.5 * (log_gamma_c(cc + n).real - math.log(4 * N * (N - kap)) - math.lgamma(n + 1)))

    def confluent(nn):
        # 1F1(-nn; c; rho) = nn! / (c)_nn * L_nn^{(c-1)}(rho)
        if nn < 0:
            return np.zeros(n + 1)
        lc = np.real(laguerre_coefficients(nn, 2 * gam))
        scale = math.exp(math.lgamma(nn + 1) + log_gamma_c(cc).real - log_gamma_c(cc + nn).real)
        out = np.zeros(n + 1)
        out[: nn + 1] = lc * scale
        return out

    A0 = confluent(n)
    A1 = confluent(n - 1)
    q = np.arange(n + 1)
    rho_pow = np.exp(log_pre + (gam - 1 + q) * math.log(2 * lam))
    gq = rho_pow * math.sqrt(m + E) * ((N - kap) * A0 - n * A1)
    fq = -rho_pow * math.sqrt(m - E) * ((N - kap) * A0 + n * A1)
    return BoundComponent(gam, lam, tuple(gq)), BoundComponent(gam, lam, tuple(fq))


def bound_radial(state: BoundState, r, consts: PhysicalConstants | None = None) -> RadialPair:
    """Normalised bound radial functions (g, f) at r > 0."""
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0):
        raise DomainError("r must be positive")
    gc, fc = bound_decomposition(state, consts)
    g, f = gc(r_arr), fc(r_arr)
    if np.ndim(g) == 0:
        return RadialPair(float(g), float(f))
    return RadialPair(g, f)


def free_decomposition(state: FreeState, consts: PhysicalConstants | None = None):
    """Confluent-hypergeometric form (g, f) of the continuum radial functions."""
    c = _consts(state, consts)
    m = c.m_e
    p = state.p
    W = math.sqrt(m * m + p * p)
    gam = gamma_kappa(state.kappa, c)
    kap = state.kappa
    y = c.za * W / p
    cc = 2 * gam + 1
    e2ieta = -(kap - 1j * y * m / W) / (gam + 1j * y)
    eieta = np.sqrt(complex(e2ieta))
    # K = Gamma(2 gamma + 1) e^{-pi y / 2} / (|Gamma(gamma + i y)| 2 p);  A = 1/(2 K sqrt(pi W))
    log_K = log_gamma_c(cc).real - 0.5 * math.pi * y - log_gamma_c(gam + 1j * y).real - math.log(2 * p)
    A = 0.5 * math.exp(-log_K) / math.sqrt(math.pi * W)
    sign = -1.0 if kap > 0 else 1.0
    common = sign * A * eieta * (gam + 1j * y) * (2 * p) ** (gam - 1)
    a = gam + 1 + 1j * y
    g = FreeComponent(gam, p, a, cc, common * math.sqrt(W + m))
    f = FreeComponent(gam, p, a, cc, 1j * common * math.sqrt(W - m))
    return g, f


def free_radial(state: FreeState, r, consts: PhysicalConstants | None = None) -> RadialPair:
    """Continuum radial functions (g, f) at r > 0, normalised to delta(p - p')."""
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0):
        raise DomainError("r must be positive")
    gc, fc = free_decomposition(state, consts)
    g, f = gc(r_arr), fc(r_arr)
    if np.ndim(g) == 0:
        return RadialPair(float(g), float(f))
    return RadialPair(g, f)


def radial_pair(state, r, consts: PhysicalConstants | None = None) -> RadialPair:
    if isinstance(state, BoundState):
        return bound_radial(state, r, consts)
    return free_radial(state, r, consts)


def decomposition(state, consts: PhysicalConstants | None = None):
    if isinstance(state, BoundState):
        return bound_decomposition(state, consts)
    return free_decomposition(state, consts)


__all__ = [
    "ALPHA_CODATA", "PhysicalConstants", "DEFAULT_CONSTANTS", "BoundState", "FreeState",
    "RadialPair", "BoundComponent", "FreeComponent", "gamma_kappa", "apparent_n", "bound_energy",
    "decay_rate", "energy", "bound_decomposition", "bound_radial", "free_decomposition",
    "free_radial", "radial_pair", "decomposition",
]
