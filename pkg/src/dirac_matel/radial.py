"""Closed-form radial integrals.

Primitive rules
---------------
hankel_laplace     int_0^inf e^{-alpha r} r^{mu-1} J_nu(beta r) dr
laplace_1f1        int_0^inf e^{-s t} t^{b-1} 1F1(a; c; p t) dt
laplace_1f1_sinc   the same with an extra sin(k t)/(k t)

Assemblers
----------
radial_bound_bound and radial_bound_free compute
    R_l(k) = int_0^inf r^2 h1(r) h2(r) j_l(k r) dr
for one radial component of each state (see :mod:`states` for the
decompositions).  The r^2 measure and the sqrt(pi / 2kr) of j_l are folded
into the exponents here, never inside the primitive rules.

For bound-free integrals two independent routes exist:

* ``split``: j_l is replaced by its finite Hankel sum, each e^{+-ikr}/(kr)^n
  piece is a laplace_1f1 call (for l = 0 the sinc rule is used instead);
* ``kseries``: the ascending series of j_l, with the moments
  int r^{B-1} e^{-s r} 1F1(a; c; P r) dr generated by a three-term
  recurrence in B.

The split route loses roughly (|s|/k)^(2l+1) to cancellation at small k,
the power series converges only for k below about |s|, so ``auto`` switches
between them at k = K_SWITCH |s|.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import CancellationWarning, NoConvergence, PreconditionError
from .numerics import (
    SeriesDiagnostics,
    gamma_c,
    hankel_sum_coefficients,
    hyp2f1_array,
)
from .states import BoundComponent, FreeComponent

PATHS = ("hankel_laplace", "laplace_1f1", "laplace_1f1_sinc", "power_series")
CANCELLATION_RATIO = 1e-6
K_SWITCH = 0.9


@dataclass(frozen=True)
class HankelLaplaceSpec:
    mu: complex
    nu: float
    alpha_decay: complex
    beta_osc: float


@dataclass(frozen=True)
class Laplace1F1Spec:
    a: complex
    c: complex
    b: complex
    p: complex
    s: complex
    k: float = 0.0


@dataclass(frozen=True)
class RadialIntegralResult:
    """``value`` is a complex scalar or an array over the k grid."""

    value: complex | np.ndarray
    path: str
    diagnostics: SeriesDiagnostics
    cancellation: float | None = None


# ---------------------------------------------------------------------------
# primitive rules
# ---------------------------------------------------------------------------

def _check_hankel(mu, nu, alpha, beta):
    failed = []
    if not (complex(mu) + nu).real > 0:
        failed.append("Re(nu+mu) > 0")
    if not (complex(alpha) + 1j * beta).real > 0:
        failed.append("Re(alpha+i beta) > 0")
    if not (complex(alpha) - 1j * beta).real > 0:
        failed.append("Re(alpha-i beta) > 0")
    if failed:
        raise PreconditionError("violated: " + ", ".join(failed))


def hankel_laplace_array(mu, nu, alpha, beta):
    """Vectorised Hankel-Laplace rule over an array of beta > 0."""
    mu = complex(mu)
    alpha = complex(alpha)
    beta = np.asarray(beta, dtype=float)
    _check_hankel(mu, nu, alpha, float(np.max(beta, initial=0.0)))
    z = -(beta * beta) / (alpha * alpha)
    F, diag = hyp2f1_array(0.5 * (nu + mu), 0.5 * (1 + mu + nu), nu + 1.0, z)
    pref = gamma_c(nu + mu) / (gamma_c(nu + 1.0) * alpha ** mu)
    val = pref * (beta / (2.0 * alpha)) ** nu * F
    return val, diag.scaled(float(np.max(np.abs(pref * (beta / (2.0 * alpha)) ** nu), initial=0.0)))


def hankel_laplace(spec: HankelLaplaceSpec) -> RadialIntegralResult:
    """(beta/2alpha)^nu Gamma(nu+mu) / (alpha^mu Gamma(nu+1)) 2F1((nu+mu)/2, (1+mu+nu)/2; nu+1; -beta^2/alpha^2)."""
    val, diag = hankel_laplace_array(spec.mu, spec.nu, spec.alpha_decay, np.array([spec.beta_osc]))
    return RadialIntegralResult(complex(val[0]), "hankel_laplace", diag)


def _check_laplace(b, s):
    failed = []
    if not complex(b).real > 0:
        failed.append("Re(b) > 0")
    if not np.all(np.real(s) > 0):
        failed.append("Re(s) > 0")
    if failed:
        raise PreconditionError("violated: " + ", ".join(failed))


def laplace_1f1_array(a, c, b, p, s):
    """Gamma(b) s^-b 2F1(a, b; c; p/s), vectorised over s."""
    s = np.asarray(s, dtype=complex)
    _check_laplace(b, s)
    F, diag = hyp2f1_array(a, b, c, p / s)
    pref = gamma_c(b) * s ** (-complex(b))
    return pref * F, diag.scaled(float(np.max(np.abs(pref))))


def laplace_1f1(spec: Laplace1F1Spec) -> RadialIntegralResult:
    """Laplace transform of t^{b-1} 1F1(a; c; p t): Gamma(b)/s^b 2F1(a, b; c; p/s)."""
    if spec.k != 0:
        raise PreconditionError("laplace_1f1 needs k = 0; use laplace_1f1_sinc")
    val, diag = laplace_1f1_array(spec.a, spec.c, spec.b, spec.p, np.array([spec.s]))
    return RadialIntegralResult(complex(val[0]), "laplace_1f1", diag)


def laplace_1f1_sinc_array(a, c, b, p, s, k, warn=True):
    """Sinc-weighted Laplace rule, vectorised over k > 0.

    int e^{-st} t^{b-1} 1F1(a;c;pt) sin(kt)/(kt) dt
      = Gamma(b) s^-b 2F1(b/2, (b+1)/2; 3/2; -k^2/s^2)
      + Gamma(b-1)/(2ik) { (s-ik)^{1-b} [2F1(a, b-1; c; p/(s-ik)) - 1]
                         - (s+ik)^{1-b} [2F1(a, b-1; c; p/(s+ik)) - 1] }

    The first term is the integral with 1F1 replaced by 1; the braces carry
    1F1 - 1 = O(t), which keeps every piece convergent for Re b > 0.
    Returns (values, diagnostics, cancellation ratio).
    """
    a, c, b, p, s = (complex(x) for x in (a, c, b, p, s))
    k = np.asarray(k, dtype=float)
    _check_laplace(b, s)
    if np.any(k <= 0):
        raise PreconditionError("sinc rule needs k > 0")
    F0, d0 = hyp2f1_array(0.5 * b, 0.5 * (b + 1.0), 1.5, -(k * k) / (s * s))
    t0 = gamma_c(b) * s ** (-b) * F0
    sm = s - 1j * k
    sp = s + 1j * k
    Fm, dm = hyp2f1_array(a, b - 1.0, c, p / sm)
    Fp, dp = hyp2f1_array(a, b - 1.0, c, p / sp)
    g = gamma_c(b - 1.0)
    tm = g * sm ** (1.0 - b) * (Fm - 1.0) / (2j * k)
    tp = g * sp ** (1.0 - b) * (Fp - 1.0) / (2j * k)
    bracket = tm - tp
    val = t0 + bracket
    largest = np.maximum(np.maximum(np.abs(tm), np.abs(tp)), np.abs(t0))
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(largest > 0, np.abs(val) / largest, 1.0)
    worst = float(np.min(ratio))
    if warn and worst < CANCELLATION_RATIO:
        warnings.warn(
            f"sinc rule: combined value is {worst:.1e} of its largest term", CancellationWarning, stacklevel=3
        )
    scale = float(np.max(np.abs(g * sm ** (1.0 - b) / (2.0 * k))))
    diag = d0.scaled(float(np.max(np.abs(t0)) / max(float(np.max(np.abs(F0))), 1e-300))).merge(dm.scaled(scale)).merge(dp.scaled(scale))
    return val, diag, worst


def laplace_1f1_sinc(spec: Laplace1F1Spec) -> RadialIntegralResult:
    """Sinc-weighted Laplace transform of t^{b-1} 1F1(a; c; p t) (k > 0)."""
    val, diag, ratio = laplace_1f1_sinc_array(spec.a, spec.c, spec.b, spec.p, spec.s, np.array([spec.k]))
    return RadialIntegralResult(complex(val[0]), "laplace_1f1_sinc", diag, ratio)


# ---------------------------------------------------------------------------
# bound-bound
# ---------------------------------------------------------------------------

def _pair_coefficients(c1, c2):
    """Coefficients of r^Q in the product of two polynomials."""
    return np.convolve(np.asarray(c1, dtype=float), np.asarray(c2, dtype=float))


def radial_bound_bound(f1: BoundComponent, f2: BoundComponent, l: int, k) -> RadialIntegralResult:
    """int r^2 h1 h2 j_l(kr) dr for two bound components, as Hankel-Laplace terms.

    Each power r^{gamma1+gamma2-2+Q} exp(-(lam1+lam2) r) together with
    r^2 sqrt(pi/2kr) J_{l+1/2}(kr) gives mu = gamma1+gamma2+Q+1/2,
    nu = l+1/2, alpha = lam1+lam2, beta = k.
    """
    k_arr = np.atleast_1d(np.asarray(k, dtype=float))
    if np.any(k_arr <= 0):
        raise PreconditionError("k must be positive")
    coef = _pair_coefficients(f1.coeffs, f2.coeffs)
    alpha = f1.lam + f2.lam
    nu = l + 0.5
    total = np.zeros(k_arr.shape, dtype=complex)
    diag = None
    for Q, cq in enumerate(coef):
        if cq == 0:
            continue
        mu = f1.gamma + f2.gamma + Q + 0.5
        v, d = hankel_laplace_array(mu, nu, alpha, k_arr)
        total += cq * v
        d = d.scaled(abs(cq))
        diag = d if diag is None else diag.merge(d)
    total *= np.sqrt(np.pi / (2.0 * k_arr))
    diag = diag.scaled(float(np.max(np.sqrt(np.pi / (2.0 * k_arr))))) if diag else SeriesDiagnostics(1, 0.0)
    val = total if np.ndim(k) else complex(total[0])
    return RadialIntegralResult(val, "hankel_laplace", diag)


# ---------------------------------------------------------------------------
# bound-free
# ---------------------------------------------------------------------------

def _normalised_moments(a, c, P, s, B0, count):
    """H(B0 + i) = 2F1(a, B; c; P/s) for i < count.

    The moments int r^{B-1} e^{-s r} 1F1(a; c; P r) dr equal Gamma(B) s^-B H(B);
    H is generated upward by the contiguous relation in B,
    (1-z) B H(B+1) = (2B - c + (a-B) z) H(B) - (B - c) H(B-1),  z = P/s.
    """
    z = P / s
    start, diag = hyp2f1_array(a, B0, c, np.array([z]))
    H = np.empty(count, dtype=complex)
    H[0] = start[0]
    if count > 1:
        v, d = hyp2f1_array(a, B0 + 1, c, np.array([z]))
        H[1] = v[0]
        diag = diag.merge(d)
    for i in range(1, count - 1):
        B = B0 + i
        H[i + 1] = ((2 * B - c + (a - B) * z) * H[i] - (B - c) * H[i - 1]) / ((1 - z) * B)
    return H, diag


def _kseries(a, c, P, s, b0, l, k, max_terms=2000):
    """int r^{b0-1} e^{-s r} 1F1(a;c;Pr) j_l(kr) dr by the ascending series of j_l.

    Term n is (-1)^n k^{l+2n} / (2^n n! (2l+2n+1)!!) * Gamma(B) s^-B H(B),
    B = b0 + l + 2n; the k-independent factor is carried as ``w``.
    """
    k = np.asarray(k, dtype=float)
    kmax = float(np.max(k))
    H, diag = _normalised_moments(a, c, P, s, b0 + l, 2 * max_terms + 2)
    B = b0 + l
    # w carries kmax^{l+2n} so that neither factor over- or underflows
    w = gamma_c(B) * s ** (-B) * kmax ** l / math.prod(range(1, 2 * l + 2, 2))
    u = k / kmax
    upow = u ** l
    total = np.zeros(k.shape, dtype=complex)
    biggest = 0.0
    mag = 0.0
    for n in range(max_terms):
        term = w * H[2 * n]
        total += term * upow
        mag = abs(term)
        biggest = max(biggest, mag)
        if n > 2 and np.all(mag * upow <= 1e-17 * np.abs(total)):
            break
        w = -w * B * (B + 1) * kmax * kmax / (2 * (n + 1) * (2 * l + 2 * n + 3) * s * s)
        B += 2
        upow = upow * u * u
    else:
        raise NoConvergence("power series in k did not converge")
    d = SeriesDiagnostics(n + 1, mag, "power_series", biggest * 1e-16)
    return total, diag.merge(d), biggest


def _split(a, c, P, s, b0, l, k, warn=True):
    """Same integral via the finite Hankel sum (l > 0) or the sinc rule (l = 0)."""
    k = np.asarray(k, dtype=float)
    if l == 0:
        val, diag, ratio = laplace_1f1_sinc_array(a, c, b0, P, s, k, warn=warn)
        return val, diag, ratio
    total = np.zeros(k.shape, dtype=complex)
    diag = None
    largest = np.zeros(k.shape)
    for n, d in enumerate(hankel_sum_coefficients(l)):
        b = b0 - n - 1
        # Gamma(b) s^-b F is continued analytically when Re b <= 0
        F1, d1 = hyp2f1_array(a, b, c, P / (s - 1j * k))
        F2, d2 = hyp2f1_array(a, b, c, P / (s + 1j * k))
        g = gamma_c(b)
        w = 1.0 / (2.0 * k) ** (n + 1)
        t1 = d * g * (s - 1j * k) ** (-b) * F1 * w
        t2 = np.conj(d) * g * (s + 1j * k) ** (-b) * F2 * w
        total += t1 + t2
        largest = np.maximum(largest, np.maximum(np.abs(t1), np.abs(t2)))
        scale = float(np.max(np.abs(d * g * (s - 1j * k) ** (-b) * w)))
        dd = d1.scaled(scale).merge(d2.scaled(scale))
        diag = dd if diag is None else diag.merge(dd)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = float(np.min(np.where(largest > 0, np.abs(total) / largest, 1.0)))
    if warn and ratio < CANCELLATION_RATIO:
        warnings.warn(f"Hankel-sum split: value is {ratio:.1e} of its largest term",
                      CancellationWarning, stacklevel=3)
    return total, diag, ratio


def bound_free_integral(a, c, P, s, b0, l, k, route="auto", k_switch=K_SWITCH):
    """int r^{b0-1} e^{-s r} 1F1(a; c; P r) j_l(k r) dr, vectorised over k."""
    k = np.atleast_1d(np.asarray(k, dtype=float))
    if np.any(k <= 0):
        raise PreconditionError("k must be positive")
    if route == "split":
        val, diag, ratio = _split(a, c, P, s, b0, l, k)
        return val, diag, ("laplace_1f1_sinc" if l == 0 else "laplace_1f1"), ratio
    if route == "kseries":
        val, diag, _ = _kseries(a, c, P, s, b0, l, k)
        return val, diag, "power_series", None
    if route != "auto":
        raise ValueError(f"unknown route {route!r}")
    small = k < k_switch * abs(s)
    val = np.empty(k.shape, dtype=complex)
    diag = None
    ratio = None
    path = []
    if small.any():
        try:
            v, d, _ = _kseries(a, c, P, s, b0, l, k[small])
        except NoConvergence:
            small[:] = False
        else:
            val[small] = v
            diag = d
            path.append("power_series")
    if (~small).any():
        v, d, ratio = _split(a, c, P, s, b0, l, k[~small])
        val[~small] = v
        diag = d if diag is None else diag.merge(d)
        path.append("laplace_1f1_sinc" if l == 0 else "laplace_1f1")
    return val, diag, "+".join(path), ratio


def radial_bound_free(f1: BoundComponent, f2: FreeComponent, l: int, k, route="auto") -> RadialIntegralResult:
    """int r^2 h1 h2 j_l(kr) dr for a bound and a continuum component.

    With h1 = sum_q c_q r^{g1-1+q} e^{-lam r} and
    h2 = 2 Re[A r^{g2-1} e^{-ipr} 1F1(a; c; 2ipr)], and everything else
    real, R = 2 Re[A sum_q c_q J(b0 = g1+g2+q+1, s = lam + ip, P = 2ip)].
    """
    k_arr = np.atleast_1d(np.asarray(k, dtype=float))
    s = f1.lam + 1j * f2.p
    P = 2j * f2.p
    total = np.zeros(k_arr.shape, dtype=complex)
    diag = None
    paths = set()
    ratio = None
    for q, cq in enumerate(f1.coeffs):
        if cq == 0:
            continue
        b0 = f1.gamma + f2.gamma + q + 1.0
        v, d, path, rt = bound_free_integral(f2.a, f2.c, P, s, b0, l, k_arr, route)
        total += cq * v
        d = d.scaled(abs(cq) * 2 * abs(f2.amp))
        diag = d if diag is None else diag.merge(d)
        paths.update(path.split("+"))
        if rt is not None:
            ratio = rt if ratio is None else min(ratio, rt)
    total = 2.0 * np.real(f2.amp * total) + 0j
    val = total if np.ndim(k) else complex(total[0])
    return RadialIntegralResult(val, "+".join(sorted(paths)), diag or SeriesDiagnostics(1, 0.0), ratio)


def radial_integral(h1, h2, l: int, k, route="auto") -> RadialIntegralResult:
    """Dispatch on component kinds; the bound one must come first for mixed pairs."""
    if isinstance(h1, BoundComponent) and isinstance(h2, BoundComponent):
        return radial_bound_bound(h1, h2, l, k)
    if isinstance(h1, BoundComponent) and isinstance(h2, FreeComponent):
        return radial_bound_free(h1, h2, l, k, route)
    if isinstance(h1, FreeComponent) and isinstance(h2, BoundComponent):
        return radial_bound_free(h2, h1, l, k, route)
    raise NotImplementedError("free-free radial integrals are not provided")
