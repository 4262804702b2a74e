"""Special-function kernel used by the radial and angular code.

All routines work in double precision.  Where a hypergeometric series or a
continuation of its differential equation would lose more than a few digits
to cancellation, the same computation is repeated in double-double
arithmetic (unevaluated pairs of doubles).  The hypergeometric functions take
scalar (possibly complex) parameters and accept either a scalar or an array
argument; the array form is what the radial assemblers use to sweep a whole
photon-momentum grid in one call.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special as sc

from .errors import (
    BranchCutError,
    DegenerateTransformError,
    DomainError,
    NoConvergence,
    PoleError,
)

EPS = float(np.finfo(float).eps)
DEFAULT_TOL = 1e-15
MAX_TERMS = 5000
L_MAX_DEFAULT = 30

# Modulus the transformation chain must bring the series argument under.
_RADIUS = 0.75
# Relative parameter shift used on degenerate connection formulas.
PERTURB_SCALE = 1e-3
# connection-formula results below this fraction of their largest term are recomputed
CONNECTION_LOSS = 1e-3
# lossy connection formulas are kept below _ODE_TRY_2F1; past it the ODE
# continuation competes, and past _DD_RESCUE_2F1 a double-double one as well
_ODE_TRY_2F1 = 3e-11
_DD_RESCUE_2F1 = 1e-13

TRANSFORMATIONS = (
    "none",
    "pfaff",
    "euler",
    "recip_z",
    "one_minus_z",
    "recip_one_minus_z",
    "polynomial",
    "gauss_sum",
    "kummer",
    "asymptotic",
    "analytic_continuation",
    "perturbed",
)


@dataclass(frozen=True)
class SeriesDiagnostics:
    """Accuracy accounting for one hypergeometric evaluation.

    ``truncation_bound`` estimates the absolute size of the discarded tail,
    ``rounding_bound`` the absolute rounding error from the largest term.
    """

    terms_used: int
    truncation_bound: float
    transformation_applied: str = "none"
    rounding_bound: float = 0.0

    def __post_init__(self):
        if self.terms_used < 1:
            raise ValueError("terms_used must be >= 1")
        if not self.truncation_bound >= 0:
            raise ValueError("truncation_bound must be >= 0")

    def merge(self, other: "SeriesDiagnostics") -> "SeriesDiagnostics":
        kinds = sorted(set(self.transformation_applied.split("+"))
                       | set(other.transformation_applied.split("+")))
        return SeriesDiagnostics(
            max(self.terms_used, other.terms_used),
            self.truncation_bound + other.truncation_bound,
            "+".join(kinds),
            self.rounding_bound + other.rounding_bound,
        )

    def scaled(self, factor: float) -> "SeriesDiagnostics":
        return SeriesDiagnostics(self.terms_used, self.truncation_bound * factor,
                                 self.transformation_applied, self.rounding_bound * factor)


def _is_nonpos_int(x) -> bool:
    x = complex(x)
    return x.imag == 0 and x.real <= 0 and x.real == math.floor(x.real)


def _int_distance(x) -> float:
    x = complex(x)
    return math.hypot(x.real - round(x.real), x.imag)


# ---------------------------------------------------------------------------
# Gamma
# ---------------------------------------------------------------------------

def gamma_c(z) -> complex:
    """Complex gamma function.

    Raises PoleError at non-positive integers and OverflowError when the
    result is not representable (use :func:`log_gamma_c` instead).
    """
    z = complex(z)
    if _is_nonpos_int(z):
        raise PoleError(f"Gamma has a pole at {z.real:g}")
    with np.errstate(over="ignore", invalid="ignore"):
        val = complex(sc.gamma(z))
    if not (math.isfinite(val.real) and math.isfinite(val.imag)):
        raise OverflowError(f"|Gamma({z})| exceeds the double range")
    return val


def log_gamma_c(z) -> complex:
    """Principal branch of log Gamma(z)."""
    z = complex(z)
    if _is_nonpos_int(z):
        raise PoleError(f"Gamma has a pole at {z.real:g}")
    return complex(sc.loggamma(z))


def rgamma_c(z) -> complex:
    """1/Gamma(z); zero at the poles of Gamma."""
    return complex(sc.rgamma(complex(z)))


# ---------------------------------------------------------------------------
# Generic ascending series
# ---------------------------------------------------------------------------

def _series(num, den, z, limit_ratio, tol=DEFAULT_TOL, max_terms=MAX_TERMS):
    """Sum  sum_n prod(num)_n / (prod(den)_n n!) z^n  elementwise.

    ``limit_ratio`` is the modulus the term ratio tends to (|z| for 2F1,
    0 for 1F1).  Returns (sum, terms_used, tail_bound, max_abs_term).
    """
    z = np.asarray(z, dtype=complex)
    if z.size == 1:
        tot, n, tl, big = _series_scalar(num, den, complex(z.reshape(())), limit_ratio, tol, max_terms)
        shape = z.shape
        return (np.full(shape, tot, dtype=complex), n, np.full(shape, tl), np.full(shape, big))
    term = np.ones_like(z)
    total = np.ones_like(z)
    biggest = np.ones(z.shape)
    tail = np.full(z.shape, np.inf)
    done = np.zeros(z.shape, dtype=bool)
    absz = np.abs(z)
    excess = max(0.0, sum(complex(a).real for a in num) - sum(complex(b).real for b in den) - 1.0)
    n = 0
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        while n < max_terms:
            coef = 1.0 + 0j
            for a in num:
                coef *= a + n
            for b in den:
                coef /= b + n
            coef /= n + 1
            term *= coef * z
            total += term
            n += 1
            aterm = np.abs(term)
            np.maximum(biggest, aterm, out=biggest)
            if coef == 0:
                tail[:] = 0.0
                break
            # ratio of the next term, and a bound on later ratios
            nxt = 1.0 + 0j
            for a in num:
                nxt *= a + n
            for b in den:
                nxt /= b + n
            nxt = abs(nxt) / (n + 1)
            rho = np.maximum(nxt * absz, limit_ratio * (1.0 + excess / (n + 1)))
            est = aterm * nxt * absz / (1.0 - rho)
            est[rho >= 1.0] = np.inf
            np.copyto(tail, est, where=~done)
            done = tail <= tol * np.maximum(np.abs(total), 1e-300)
            if n >= 2 and done.all():
                break
        else:
            raise NoConvergence(f"series did not converge in {max_terms} terms")
    return total, n, tail, biggest


# ---------------------------------------------------------------------------
# Double-double arithmetic for series that cancel heavily
# ---------------------------------------------------------------------------
# A real number is an unevaluated sum (hi, lo) of two doubles and a complex
# number a pair of those, which carries about 32 significant digits.

_SPLITTER = 134217729.0  # 2^27 + 1


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _fast_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def _two_prod(a, b):
    p = a * b
    t = _SPLITTER * a
    ah = t - (t - a)
    al = a - ah
    t = _SPLITTER * b
    bh = t - (t - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _dd_add(x, y):
    s, e = _two_sum(x[0], y[0])
    t, f = _two_sum(x[1], y[1])
    s, e = _fast_two_sum(s, e + t)
    return _fast_two_sum(s, e + f)


def _dd_neg(x):
    return (-x[0], -x[1])


def _dd_mul(x, y):
    p, e = _two_prod(x[0], y[0])
    return _fast_two_sum(p, e + (x[0] * y[1] + x[1] * y[0]))


def _dd_div(x, y):
    q1 = x[0] / y[0]
    r = _dd_add(x, _dd_neg(_dd_mul((q1, 0.0), y)))
    q2 = r[0] / y[0]
    r = _dd_add(r, _dd_neg(_dd_mul((q2, 0.0), y)))
    q3 = r[0] / y[0]
    return _dd_add(_fast_two_sum(q1, q2), (q3, 0.0))


def _cdd(z):
    z = complex(z)
    return ((z.real, 0.0), (z.imag, 0.0))


def _cdd_add(x, y):
    return (_dd_add(x[0], y[0]), _dd_add(x[1], y[1]))


def _cdd_mul(x, y):
    re = _dd_add(_dd_mul(x[0], y[0]), _dd_neg(_dd_mul(x[1], y[1])))
    im = _dd_add(_dd_mul(x[0], y[1]), _dd_mul(x[1], y[0]))
    return (re, im)


def _cdd_div(x, y):
    num = _cdd_mul(x, (y[0], _dd_neg(y[1])))
    den = _dd_add(_dd_mul(y[0], y[0]), _dd_mul(y[1], y[1]))
    return (_dd_div(num[0], den), _dd_div(num[1], den))


def _cdd_complex(x) -> complex:
    return complex(x[0][0] + x[0][1], x[1][0] + x[1][1])


def _series_dd(num, den, z, limit_ratio, tol, max_terms):
    """_series for one argument with terms and sum carried in double-double.

    Returns (sum, terms_used, tail_bound, max_abs_term); the rounding error
    of the sum is about 1e-31 of the largest term instead of 1e-16.
    """
    total, n, tail, biggest = _series_dd_raw(num, den, z, limit_ratio, tol, max_terms)
    return _cdd_complex(total), n, tail, biggest


def _series_dd_raw(num, den, z, limit_ratio, tol, max_terms):
    zd = _cdd(z)
    # parameters may be given in double-double, so that e.g. c + 1 is exact
    numd = [a if isinstance(a, tuple) else _cdd(a) for a in num]
    dend = [b if isinstance(b, tuple) else _cdd(b) for b in den]
    num = [_cdd_complex(a) for a in numd]
    den = [_cdd_complex(b) for b in dend]
    term = total = _cdd(1.0)
    biggest, absz = 1.0, abs(z)
    excess = max(0.0, sum(a.real for a in num) - sum(b.real for b in den) - 1.0)
    n = 0
    while n < max_terms:
        nd = ((float(n), 0.0), (0.0, 0.0))
        top = zd
        for a in numd:
            top = _cdd_mul(top, _cdd_add(a, nd))
        bot = ((float(n + 1), 0.0), (0.0, 0.0))
        for b in dend:
            bot = _cdd_mul(bot, _cdd_add(b, nd))
        if top[0][0] == 0.0 and top[1][0] == 0.0:
            return total, n + 1, 0.0, biggest
        term = _cdd_div(_cdd_mul(term, top), bot)
        total = _cdd_add(total, term)
        n += 1
        aterm = _cabs(complex(term[0][0], term[1][0]))
        biggest = max(biggest, aterm)
        nxt = 1.0 + 0j
        for a in num:
            nxt *= a + n
        for b in den:
            nxt /= b + n
        nxt = abs(nxt) / (n + 1)
        rho = max(nxt * absz, limit_ratio * (1.0 + excess / (n + 1)))
        tail = aterm * nxt * absz / (1.0 - rho) if rho < 1.0 else math.inf
        if n >= 2 and tail <= tol * _cabs(complex(total[0][0], total[1][0])):
            return total, n, tail, biggest
    raise NoConvergence(f"series did not converge in {max_terms} terms")


def _cabs(x: complex) -> float:
    try:
        return abs(x)
    except OverflowError:
        return math.inf


def _series_scalar(num, den, z, limit_ratio, tol, max_terms):
    """_series for a single argument, in plain complex arithmetic."""
    term = total = 1.0 + 0j
    biggest, tail, done = 1.0, math.inf, False
    absz = abs(z)
    excess = max(0.0, sum(complex(a).real for a in num) - sum(complex(b).real for b in den) - 1.0)
    n = 0
    while n < max_terms:
        coef = 1.0 + 0j
        for a in num:
            coef *= a + n
        for b in den:
            coef /= b + n
        coef /= n + 1
        term = term * coef * z
        total += term
        n += 1
        aterm = _cabs(term)
        biggest = max(biggest, aterm)
        if coef == 0:
            return total, n, 0.0, biggest
        nxt = 1.0 + 0j
        for a in num:
            nxt *= a + n
        for b in den:
            nxt /= b + n
        nxt = abs(nxt) / (n + 1)
        rho = max(nxt * absz, limit_ratio * (1.0 + excess / (n + 1)))
        if not done:
            tail = aterm * nxt * absz / (1.0 - rho) if rho < 1.0 else math.inf
        done = tail <= tol * max(_cabs(total), 1e-300)
        if n >= 2 and done:
            return total, n, tail, biggest
    raise NoConvergence(f"series did not converge in {max_terms} terms")


# ---------------------------------------------------------------------------
# Confluent hypergeometric 1F1
# ---------------------------------------------------------------------------

_SERIES_LIMIT_1F1 = 6.0
_ASYMPTOTIC_LIMIT_1F1 = 40.0
_SERIES_TRY_1F1 = 15.0
_SERIES_ACCEPT_1F1 = 1e-13


def _taylor_1f1_step(a, c, zc, h, w, dw):
    """Advance (M, M') of Kummer's equation from zc to zc + h."""
    u0 = w
    u1 = h * dw
    val = u0 + u1
    der = u1.copy()
    scale = np.abs(u0) + np.abs(u1) + 1e-300
    n = 0
    while True:
        u2 = ((n + a) * h * h * u0 - (n + 1) * (n + c - zc) * h * u1) / (zc * (n + 1) * (n + 2))
        val = val + u2
        der = der + (n + 2) * u2
        n += 1
        if n > 3 and np.all(np.abs(u2) + np.abs(u1) < 1e-18 * scale):
            break
        if n > 400:
            raise NoConvergence("1F1 Taylor step did not converge")
        u0, u1 = u1, u2
    return val, der / h, n


def _series_radius_1f1(a):
    """Largest |z| off the positive axis where the ascending series is trusted.

    The terms peak near exp(2 sqrt(|a z|)), so the radius shrinks for large |a|.
    """
    return _SERIES_LIMIT_1F1 / max(1.0, abs(a) / 3.0)


def _hyp1f1_ode(a, c, z):
    """Continue 1F1 outward along the ray to z by Taylor stepping Kummer's equation."""
    z = np.asarray(z, dtype=complex)
    zhat = z / np.abs(z)
    z0 = _series_radius_1f1(a) * zhat
    w, n0, _, big0 = _series([a], [c], z0, 0.0)
    dw, n1, _, _ = _series([a + 1], [c + 1], z0, 0.0)
    dw = dw * (a / c)
    zc = z0.copy()
    nmax = max(n0, n1)
    active = np.abs(z - zc) > 0
    while active.any():
        rem = z[active] - zc[active]
        azc = np.abs(zc[active])
        # stay well inside the radius set by z = 0 and resolve the local wavelength
        hmax = np.minimum(np.minimum(0.4 * azc, 2.0), 2.0 / np.sqrt(abs(a) / azc + 0.25))
        arem = np.abs(rem)
        h = np.where(arem <= hmax, rem, rem * hmax / arem)
        wa, dwa, n = _taylor_1f1_step(a, c, zc[active], h, w[active], dw[active])
        w[active] = wa
        dw[active] = dwa
        zc[active] = np.where(arem <= hmax, z[active], zc[active] + h)
        nmax = max(nmax, n)
        active = np.abs(z - zc) > 0
    rnd = 50 * EPS * np.maximum(np.abs(w), big0 * EPS)
    return w, nmax, np.zeros(z.shape), rnd


def _hyp1f1_asymptotic(a, c, z, tol=DEFAULT_TOL):
    """Large-|z| expansion for Re z >= 0; returns None where it is not accurate."""
    z = np.asarray(z, dtype=complex)
    sign = np.where(z.imag >= 0, 1.0, -1.0)
    s1 = np.ones_like(z)
    s2 = np.ones_like(z)
    t1 = np.ones_like(z)
    t2 = np.ones_like(z)
    last1 = np.full(z.shape, np.inf)
    last2 = np.full(z.shape, np.inf)
    frozen1 = np.zeros(z.shape, dtype=bool)
    frozen2 = np.zeros(z.shape, dtype=bool)
    n = 0
    for n in range(200):
        t1 = t1 * (c - a + n) * (1 - a + n) / ((n + 1) * z)
        t2 = t2 * (a + n) * (a - c + 1 + n) / ((n + 1) * (-z))
        a1, a2 = np.abs(t1), np.abs(t2)
        grow1 = a1 > last1
        grow2 = a2 > last2
        frozen1 |= grow1
        frozen2 |= grow2
        s1 = np.where(frozen1, s1, s1 + t1)
        s2 = np.where(frozen2, s2, s2 + t2)
        last1 = np.where(frozen1, last1, a1)
        last2 = np.where(frozen2, last2, a2)
        if np.all((frozen1 | (a1 < 1e-18)) & (frozen2 | (a2 < 1e-18))):
            break
    with np.errstate(over="ignore", invalid="ignore"):
        p1 = np.exp(z + (a - c) * np.log(z)) * rgamma_c(a)
        p2 = np.exp(1j * np.pi * a * sign - a * np.log(z)) * rgamma_c(c - a)
        g = gamma_c(c)
        val = g * (p1 * s1 + p2 * s2)
        err = abs(g) * (np.abs(p1) * np.where(frozen1, last1, 0) + np.abs(p2) * np.where(frozen2, last2, 0))
    ok = np.isfinite(val) & (err <= tol * np.abs(val))
    return val, n + 1, err, ok


def hyp1f1_array(a, c, z, tol=DEFAULT_TOL):
    """Vectorised :func:`hyp1f1`; returns (values, diagnostics)."""
    a = complex(a)
    c = complex(c)
    if _is_nonpos_int(c) and not (_is_nonpos_int(a) and a.real > c.real):
        raise PoleError(f"1F1 undefined for c = {c.real:g}")
    z = np.asarray(z, dtype=complex)
    shape = z.shape
    z = z.ravel()
    out = np.empty(z.shape, dtype=complex)
    kinds = set()
    nmax = 1
    tail = 0.0
    rnd = 0.0
    if _is_nonpos_int(a):
        val, n, tl, big = _series([a], [c], z, 0.0, tol)
        return val.reshape(shape), SeriesDiagnostics(n, float(np.max(tl, initial=0)), "polynomial",
                                                     float(EPS * np.max(big, initial=0)))
    neg = z.real < 0
    # Kummer: M(a;c;z) = e^z M(c-a;c;-z) moves everything to Re z >= 0
    aa = np.where(neg, c - a, a)
    zz = np.where(neg, -z, z)
    pref = np.where(neg, np.exp(z), 1.0 + 0j)
    if neg.any():
        kinds.add("kummer")
    for flip in (False, True):
        sel_side = neg if flip else ~neg
        if not sel_side.any():
            continue
        ap = complex(c - a) if flip else a
        zs = zz[sel_side]
        res = np.empty(zs.shape, dtype=complex)
        absz = np.abs(zs)
        near_real = np.abs(zs.imag) <= 0.25 * zs.real
        use_series = (absz <= _series_radius_1f1(ap)) | near_real
        rest = ~use_series
        # further out, the better conditioned of the series for M(a; c; z) and
        # e^z M(c-a; c; -z) is kept when its rounding estimate is small enough
        trial = rest & (absz <= _SERIES_TRY_1F1)
        if trial.any():
            zt = zs[trial]
            v1, n1, t1, b1 = _series([ap], [c], zt, 0.0, tol)
            v2, n2, t2, b2 = _series([c - ap], [c], -zt, 0.0, tol)
            ez = np.exp(zt)
            v2 = ez * v2
            with np.errstate(divide="ignore", invalid="ignore"):
                e1 = EPS * b1 / np.abs(v1)
                e2 = EPS * np.abs(ez) * b2 / np.abs(v2)
            second = e2 < e1
            best = np.where(second, v2, v1)
            good = np.minimum(e1, e2) <= _SERIES_ACCEPT_1F1
            idx = np.flatnonzero(trial)[good]
            res[idx] = best[good]
            rest[idx] = False
            if good.any():
                nmax = max(nmax, n1, n2)
                tail = max(tail, float(np.max(np.where(second, np.abs(ez) * t2, t1)[good])))
                rnd = max(rnd, float(np.max((np.abs(best) * np.minimum(e1, e2))[good])))
                kinds.add("none")
                if second[good].any():
                    kinds.add("kummer")
            # the rest of the disc: the better series again, summed in double-double
            for i in np.flatnonzero(trial)[~good]:
                j = int(np.searchsorted(np.flatnonzero(trial), i))
                zi = complex(zs[i])
                try:
                    if second[j]:
                        v, n, tl, big = _series_dd([c - ap], [c], -zi, 0.0, tol, MAX_TERMS)
                        ezi = complex(ez[j])
                        v, tl, big = ezi * v, abs(ezi) * tl, abs(ezi) * big
                    else:
                        v, n, tl, big = _series_dd([ap], [c], zi, 0.0, tol, MAX_TERMS)
                except (NoConvergence, OverflowError):
                    continue
                if not math.isfinite(abs(v)) or v == 0 or EPS * EPS * big > _SERIES_ACCEPT_1F1 * abs(v):
                    continue
                res[i] = v
                rest[i] = False
                nmax = max(nmax, n)
                tail = max(tail, tl)
                rnd = max(rnd, EPS * abs(v))
                kinds.add("double_double")
        if use_series.any():
            v, n, tl, big = _series([ap], [c], zs[use_series], 0.0, tol)
            res[use_series] = v
            nmax = max(nmax, n)
            tail = max(tail, float(np.max(tl)))
            rnd = max(rnd, float(EPS * np.max(big)))
            kinds.add("none")
        if rest.any():
            zr = zs[rest]
            vals = np.empty(zr.shape, dtype=complex)
            pending = np.ones(zr.shape, dtype=bool)
            big_z = np.abs(zr) >= _ASYMPTOTIC_LIMIT_1F1
            if big_z.any():
                v, n, err, ok = _hyp1f1_asymptotic(ap, c, zr[big_z], tol)
                idx = np.flatnonzero(big_z)[ok]
                vals[idx] = v[ok]
                pending[idx] = False
                if ok.any():
                    kinds.add("asymptotic")
                    nmax = max(nmax, n)
                    tail = max(tail, float(np.max(err[ok])))
            if pending.any():
                v, n, tl, rd = _hyp1f1_ode(ap, c, zr[pending])
                vals[pending] = v
                kinds.add("analytic_continuation")
                nmax = max(nmax, n)
                rnd = max(rnd, float(np.max(rd)))
            res[rest] = vals
        out[sel_side] = res
    out = out * pref
    return out.reshape(shape), SeriesDiagnostics(nmax, tail, "+".join(sorted(kinds)) or "none", rnd)


def hyp1f1(a, c, z, tol=DEFAULT_TOL):
    """Kummer's confluent hypergeometric function 1F1(a; c; z).

    Ascending series, with Kummer's transformation for Re z < 0.  Far from
    the positive real axis the series is used up to |z| = 6, and up to
    |z| = 15 when either it or the Kummer-transformed series cancels little
    (in double-double when both cancel badly).  Beyond that the value is
    continued by Taylor stepping of Kummer's equation, or taken from the
    asymptotic expansion once |z| >= 40.

    Returns ``(value, SeriesDiagnostics)``.
    """
    val, diag = hyp1f1_array(a, c, np.array([complex(z)]), tol)
    return complex(val[0]), diag


# ---------------------------------------------------------------------------
# Gauss hypergeometric 2F1
# ---------------------------------------------------------------------------

_K_NONE, _K_PFAFF, _K_EULER, _K_POLY, _K_ONE_MINUS, _K_RECIP, _K_RECIP1M, _K_ODE, _K_GAUSS = range(9)


def _series_2f1(a, b, c, w, tol):
    return _series([a, b], [c], w, float(np.max(np.abs(w), initial=0.0)), tol)


def _pfaff(a, b, c, z, tol):
    w = z / (z - 1.0)
    # pick the ordering whose first coefficient is smaller
    if abs(a * (c - b)) > abs(b * (c - a)):
        a, b = b, a
    s, n, tail, big = _series_2f1(a, c - b, c, w, tol)
    pref = (1.0 - z) ** (-a)
    return pref * s, n, np.abs(pref) * tail, np.abs(pref) * big


def _euler(a, b, c, z, tol):
    s, n, tail, big = _series_2f1(c - a, c - b, c, z, tol)
    pref = (1.0 - z) ** (c - a - b)
    return pref * s, n, np.abs(pref) * tail, np.abs(pref) * big


def _check_degenerate(x, what):
    if _int_distance(x) < 1e-4:
        raise DegenerateTransformError(f"{what} = {x} is (nearly) an integer")


def _one_minus_z(a, b, c, z, tol, check=True):
    if check:
        _check_degenerate(c - a - b, "c-a-b")
    w = 1.0 - z
    g_c = gamma_c(c)
    A1 = g_c * gamma_c(c - a - b) * rgamma_c(c - a) * rgamma_c(c - b)
    A2 = g_c * gamma_c(a + b - c) * rgamma_c(a) * rgamma_c(b)
    s1, n1, t1, b1 = _series_2f1(a, b, a + b - c + 1, w, tol)
    s2, n2, t2, b2 = _series_2f1(c - a, c - b, c - a - b + 1, w, tol)
    p2 = w ** (c - a - b)
    val = A1 * s1 + A2 * p2 * s2
    tail = abs(A1) * t1 + abs(A2) * np.abs(p2) * t2
    big = np.maximum(abs(A1) * b1, abs(A2) * np.abs(p2) * b2)
    return val, max(n1, n2), tail, big


def _recip_z(a, b, c, z, tol, check=True):
    if check:
        _check_degenerate(a - b, "a-b")
    w = 1.0 / z
    g_c = gamma_c(c)
    A1 = g_c * gamma_c(b - a) * rgamma_c(b) * rgamma_c(c - a)
    A2 = g_c * gamma_c(a - b) * rgamma_c(a) * rgamma_c(c - b)
    s1, n1, t1, b1 = _series_2f1(a, a - c + 1, a - b + 1, w, tol)
    s2, n2, t2, b2 = _series_2f1(b, b - c + 1, b - a + 1, w, tol)
    p1 = (-z) ** (-a)
    p2 = (-z) ** (-b)
    val = A1 * p1 * s1 + A2 * p2 * s2
    tail = abs(A1) * np.abs(p1) * t1 + abs(A2) * np.abs(p2) * t2
    big = np.maximum(abs(A1) * np.abs(p1) * b1, abs(A2) * np.abs(p2) * b2)
    return val, max(n1, n2), tail, big


def _recip_one_minus_z(a, b, c, z, tol, check=True):
    if check:
        _check_degenerate(a - b, "a-b")
    w = 1.0 / (1.0 - z)
    g_c = gamma_c(c)
    A1 = g_c * gamma_c(b - a) * rgamma_c(b) * rgamma_c(c - a)
    A2 = g_c * gamma_c(a - b) * rgamma_c(a) * rgamma_c(c - b)
    s1, n1, t1, b1 = _series_2f1(a, c - b, a - b + 1, w, tol)
    s2, n2, t2, b2 = _series_2f1(b, c - a, b - a + 1, w, tol)
    p1 = (1.0 - z) ** (-a)
    p2 = (1.0 - z) ** (-b)
    val = A1 * p1 * s1 + A2 * p2 * s2
    tail = abs(A1) * np.abs(p1) * t1 + abs(A2) * np.abs(p2) * t2
    big = np.maximum(abs(A1) * np.abs(p1) * b1, abs(A2) * np.abs(p2) * b2)
    return val, max(n1, n2), tail, big


_CONNECTIONS = {
    _K_ONE_MINUS: (_one_minus_z, "c"),
    _K_RECIP: (_recip_z, "b"),
    _K_RECIP1M: (_recip_one_minus_z, "b"),
}


def _perturbed(func, which, a, b, c, z, tol):
    """Extrapolated evaluation at shifted parameters.

    Used when the connection formula sits on a removable singularity.  The
    symmetric means S(h) = [F(p+h) + F(p-h)]/2 at h = eps, 2 eps, 3 eps are
    combined so that the h^2 and h^4 terms cancel.
    """
    p = c if which == "c" else b
    delta = _int_distance(c - a - b if which == "c" else a - b)
    eps = max(PERTURB_SCALE * (1.0 + abs(p)), 4.0 * delta)

    def at(shift):
        if which == "c":
            return func(a, b, c + shift, z, tol, check=False)
        return func(a, b + shift, c, z, tol, check=False)

    runs = [(at(k * eps), at(-k * eps)) for k in (1, 2, 3)]
    sym = [0.5 * (r[0][0] + r[1][0]) for r in runs]
    val = 1.5 * sym[0] - 0.6 * sym[1] + 0.1 * sym[2]
    lower = (4.0 * sym[0] - sym[1]) / 3.0
    n = max(max(r[0][1], r[1][1]) for r in runs)
    big = np.maximum.reduce([x[3] for r in runs for x in r])
    tail = np.abs(val - lower) + max(float(np.max(x[2])) for r in runs for x in r)
    return val, n, tail, big


def _taylor_2f1_step(a, b, c, zc, h, w, dw):
    """Advance (F, F') of the hypergeometric equation from zc to zc + h (scalars)."""
    u0 = w
    u1 = h * dw
    val = u0 + u1
    der = u1
    scale = abs(u0) + abs(u1) + 1e-300
    q = zc * (1.0 - zc)
    s = a + b + 1.0
    n = 0
    while True:
        u2 = ((n + a) * (n + b) * h * h * u0
              - (n + 1) * ((1.0 - 2.0 * zc) * n + c - s * zc) * h * u1) / (q * (n + 1) * (n + 2))
        val += u2
        der += (n + 2) * u2
        n += 1
        if n > 3 and abs(u2) + abs(u1) < 1e-18 * scale:
            break
        if n > 500:
            raise NoConvergence("2F1 Taylor step did not converge")
        u0, u1 = u1, u2
    return val, der / h, n


def _cdd_real(x):
    return ((float(x), 0.0), (0.0, 0.0))


def _cdd_scale(x, r):
    """x / r for a real double-double r."""
    return (_dd_div(x[0], r), _dd_div(x[1], r))


def _taylor_2f1_step_dd(a, b, c, zc, h, w, dw):
    """_taylor_2f1_step with zc, h, (F, F'), the coefficients and the sums in double-double."""
    one = _cdd_real(1.0)
    ad, bd, cd, hd = _cdd(a), _cdd(b), _cdd(c), h
    zd = zc
    h2 = _cdd_mul(hd, hd)
    q = _cdd_mul(zd, _cdd_add(one, _cdd_neg(zd)))
    s = _cdd_add(_cdd_add(ad, bd), one)
    t = _cdd_add(one, _cdd_neg(_cdd_add(zd, zd)))
    cs = _cdd_add(cd, _cdd_neg(_cdd_mul(s, zd)))
    qinv = _cdd_div(one, q)
    u0 = w
    u1 = _cdd_mul(hd, dw)
    val = _cdd_add(u0, u1)
    der = u1
    scale = _cabs(_cdd_complex(u0)) + _cabs(_cdd_complex(u1)) + 1e-300
    n = 0
    while True:
        nd = _cdd_real(n)
        A = _cdd_mul(_cdd_mul(_cdd_add(ad, nd), _cdd_add(bd, nd)), h2)
        B = _cdd_mul(_cdd_add(_cdd_mul(t, nd), cs), hd)
        B = (_dd_mul(B[0], (float(n + 1), 0.0)), _dd_mul(B[1], (float(n + 1), 0.0)))
        num = _cdd_add(_cdd_mul(A, u0), _cdd_neg(_cdd_mul(B, u1)))
        u2 = _cdd_scale(_cdd_mul(num, qinv), (float((n + 1) * (n + 2)), 0.0))
        val = _cdd_add(val, u2)
        der = _cdd_add(der, (_dd_mul(u2[0], (float(n + 2), 0.0)), _dd_mul(u2[1], (float(n + 2), 0.0))))
        n += 1
        if n > 3 and _cabs(_cdd_complex(u2)) + _cabs(_cdd_complex(u1)) < 1e-31 * scale:
            break
        if n > 1000:
            raise NoConvergence("2F1 Taylor step did not converge")
        u0, u1 = u1, u2
    return val, _cdd_div(der, hd), n


def _cdd_neg(x):
    return (_dd_neg(x[0]), _dd_neg(x[1]))


def _continue_2f1_dd(a, b, c, path, tol):
    """_continue_2f1 carried out in double-double; returns (F, terms_used)."""
    z0 = complex(path[0])
    w, n0, _, _ = _series_dd_raw([a, b], [c], z0, abs(z0), 1e-32, MAX_TERMS)
    one = _cdd_real(1.0)
    shifted = [_cdd_add(_cdd(x), one) for x in (a, b, c)]
    dw, n1, _, _ = _series_dd_raw(shifted[:2], shifted[2:], z0, abs(z0), 1e-32, MAX_TERMS)
    dw = _cdd_mul(dw, _cdd_div(_cdd_mul(_cdd(a), _cdd(b)), _cdd(c)))
    zc = _cdd(z0)
    nmax = max(n0, n1)
    for target in path[1:]:
        target = complex(target)
        while True:
            here = _cdd_complex(zc)
            dist = abs(target - here)
            if dist <= 1e-15 * abs(target):
                break
            q = abs(here * (1.0 - here))
            step = min(dist, 0.35 * min(abs(here), abs(1.0 - here)),
                       0.5 * math.sqrt(q / (1.0 + abs(a * b))), 0.5 * q / (1.0 + abs(c - (a + b + 1.0) * here)))
            if step == dist:
                h = _cdd_add(_cdd(target), _cdd_neg(zc))
            else:
                h = _cdd((target - here) * (step / dist))
            w, dw, n = _taylor_2f1_step_dd(a, b, c, zc, h, w, dw)
            zc = _cdd(target) if step == dist else _cdd_add(zc, h)
            nmax = max(nmax, n)
    return _cdd_complex(w), nmax


def _continue_2f1(a, b, c, path, tol, init=None):
    """Continue (F, F') from |path[0]| = 1/2 through the points of ``path``.

    Each Taylor step is kept within 0.35 of the distance to the nearer
    singular point (0 or 1), so the step count adapts to the path.  With
    ``init = (w, dw)`` that solution of the equation is continued instead.
    """
    z0 = path[0]
    w, n0, t0, b0 = _series_2f1(a, b, c, np.array([z0]), tol)
    dw, n1, _, _ = _series_2f1(a + 1, b + 1, c + 1, np.array([z0]), tol)
    w, dw = complex(w[0]), complex(dw[0]) * (a * b / c)
    if init is not None:
        w, dw = init
    zc = z0
    nmax = max(n0, n1)
    for target in path[1:]:
        while abs(target - zc) > 1e-15 * abs(target):
            dist = abs(target - zc)
            q = abs(zc * (1.0 - zc))
            # keep the leading Taylor coefficients from growing for large parameters
            step = min(dist, 0.35 * min(abs(zc), abs(1.0 - zc)),
                       0.5 * math.sqrt(q / (1.0 + abs(a * b))), 0.5 * q / (1.0 + abs(c - (a + b + 1.0) * zc)))
            h = (target - zc) * (step / dist)
            w, dw, n = _taylor_2f1_step(a, b, c, zc, h, w, dw)
            zc = target if step == dist else zc + h
            nmax = max(nmax, n)
    return w, nmax, 10 * float(t0[0]), 10 * max(float(b0[0]), abs(w))


def _start_rounding_2f1(a, b, c, z0, tol):
    """Rounding bounds of the series values of F and F' at the start of a path."""
    b0 = _series_2f1(a, b, c, np.array([z0]), tol)[3]
    b1 = _series_2f1(a + 1, b + 1, c + 1, np.array([z0]), tol)[3]
    return EPS * float(b0[0]), EPS * float(b1[0]) * abs(a * b / c)


def _segment_clearance(p, q):
    """Distance from the segment [p, q] to the singular point 1."""
    d = q - p
    t = min(1.0, max(0.0, ((1.0 - p) * np.conj(d)).real / abs(d) ** 2))
    return abs(p + t * d - 1.0)


def _continuation_path(z, r0=0.5):
    """A path from |z| = r0 to z keeping 1/4 away from z = 1, or None."""
    z0 = r0 * z / abs(z)
    if _segment_clearance(z0, z) > 0.25:
        return [z0, z]
    # detour above or below the singular point
    via = 1.0 + 0.9j * (1.0 if z.imag >= 0 else -1.0)
    v0 = r0 * via / abs(via)
    if _segment_clearance(v0, via) > 0.25 and _segment_clearance(via, z) > 0.25:
        return [v0, via, z]
    return None


def _ode_2f1(a, b, c, z, tol):
    """Analytic continuation of the hypergeometric equation to each z."""
    out = np.empty(z.shape, dtype=complex)
    nmax, tail, big = 1, np.zeros(z.shape), np.zeros(z.shape)
    for idx, zi in enumerate(z):
        path = _continuation_path(complex(zi))
        if path is None:
            raise NoConvergence(f"no continuation path to z = {zi}")
        out[idx], n, tail[idx], big[idx] = _continue_2f1(a, b, c, path, tol)
        nmax = max(nmax, n)
        # rounding of the start values grows with the solutions of the
        # equation along the path; past _DD_RESCUE_2F1 redo it in double-double
        e0, e1 = _start_rounding_2f1(a, b, c, path[0], tol)
        u1 = _continue_2f1(a, b, c, path, tol, init=(1.0, 0.0))[0]
        u2 = _continue_2f1(a, b, c, path, tol, init=(0.0, 1.0))[0]
        err = 8 * (e0 * abs(u1) + e1 * abs(u2))
        v = out[idx]
        if v != 0 and err > _DD_RESCUE_2F1 * abs(v):
            try:
                out[idx], n = _continue_2f1_dd(a, b, c, path, tol)
            except (NoConvergence, OverflowError, ZeroDivisionError):
                big[idx] = max(big[idx], err / EPS)
                continue
            nmax = max(nmax, n)
            big[idx] = err + abs(out[idx])
        else:
            big[idx] = max(big[idx], err / EPS)
    return out, nmax, tail, big


def _connection_candidates(a, b, c, z, tol):
    """(value, relative error estimate, label) of every usable route to 2F1 at one z.

    Only called where the chosen connection formula cancels.  Connection
    formulas are charged for the cancellation between their terms and the
    gamma-function factors; the ODE route is charged the spread between
    two continuations with different step sizes.
    """
    zs = np.array([z])
    out = []
    for code, (func, _) in _CONNECTIONS.items():
        w = {_K_ONE_MINUS: abs(1.0 - z), _K_RECIP: 1.0 / abs(z), _K_RECIP1M: 1.0 / abs(1.0 - z)}[code]
        if w >= 0.9:
            continue
        try:
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                val, n, tl, big = func(a, b, c, zs, tol)
        except (DegenerateTransformError, NoConvergence, OverflowError):
            continue
        v = complex(val[0])
        if np.isfinite(v) and v != 0:
            est = (20 * EPS * float(big[0]) + float(tl[0])) / abs(v)
            out.append((v, est, n, float(tl[0]), float(big[0]), _KIND_NAMES[code]))
    if out and min(x[1] for x in out) <= _ODE_TRY_2F1:
        return out
    # continuations from two starting radii: a smaller radius gives a better
    # conditioned starting series but a longer path
    runs = []
    for r0 in (0.25, 0.125):
        path = _continuation_path(z, r0)
        if path is None:
            break
        v, n, t1, b1 = _continue_2f1(a, b, c, path, tol)
        e0, e1 = _start_rounding_2f1(a, b, c, path[0], tol)
        u1 = _continue_2f1(a, b, c, path, tol, init=(1.0, 0.0))[0]
        u2 = _continue_2f1(a, b, c, path, tol, init=(0.0, 1.0))[0]
        if not (np.isfinite(v) and v != 0):
            break
        runs.append((v, 8 * (e0 * abs(u1) + e1 * abs(u2)) / abs(v), n, t1, b1))
    if len(runs) == 2:
        spread = abs(runs[0][0] - runs[1][0]) / abs(runs[0][0])
        v, est, n, t1, b1 = min(runs, key=lambda x: x[1])
        out.append((v, max(est, spread), n, t1, b1, "analytic_continuation"))
        if min(x[1] for x in out) > _DD_RESCUE_2F1:
            # same continuation in double-double; its rounding is EPS^2 times
            # the amplification estimated from the double runs
            path = _continuation_path(z, 0.25)
            try:
                v, n = _continue_2f1_dd(a, b, c, path, tol)
            except (NoConvergence, OverflowError, ZeroDivisionError):
                return out
            if math.isfinite(abs(v)) and v != 0:
                est = max(runs[0][1] * EPS, EPS)
                out.append((v, est, n, runs[0][3], runs[0][4], "analytic_continuation_dd"))
    return out


def _classify_2f1(a, b, c, z):
    kind = np.full(z.shape, -1, dtype=int)
    if _is_nonpos_int(a) or _is_nonpos_int(b):
        kind[:] = _K_POLY
        return kind
    if _is_nonpos_int(c - a) or _is_nonpos_int(c - b):
        kind[:] = _K_EULER
        at_one = z == 1.0
        on_cut = (z.imag == 0) & (z.real > 1.0)
        if on_cut.any():
            raise BranchCutError("2F1 argument on the branch cut (1, inf)")
        kind[at_one] = _K_GAUSS
        return kind
    on_cut = (z.imag == 0) & (z.real > 1.0)
    if on_cut.any():
        raise BranchCutError("2F1 argument on the branch cut (1, inf)")
    kind[z == 1.0] = _K_GAUSS
    rest = kind < 0
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        m_none = np.abs(z)
        m_pfaff = np.abs(z / (z - 1.0))
        m_1mz = np.abs(1.0 - z)
        m_rz = 1.0 / np.abs(z)
        m_r1mz = 1.0 / np.abs(1.0 - z)
    single = rest & (np.minimum(m_none, m_pfaff) <= _RADIUS)
    kind[single & (m_none <= m_pfaff)] = _K_NONE
    kind[single & (m_none > m_pfaff)] = _K_PFAFF
    rest = kind < 0
    stack = np.stack([m_1mz, m_rz, m_r1mz])
    best = np.argmin(stack, axis=0)
    ok = rest & (np.min(stack, axis=0) <= _RADIUS)
    codes = np.array([_K_ONE_MINUS, _K_RECIP, _K_RECIP1M])
    kind[ok] = codes[best[ok]]
    kind[kind < 0] = _K_ODE
    return kind


_KIND_NAMES = {
    _K_NONE: "none", _K_PFAFF: "pfaff", _K_EULER: "euler", _K_POLY: "polynomial",
    _K_ONE_MINUS: "one_minus_z", _K_RECIP: "recip_z", _K_RECIP1M: "recip_one_minus_z",
    _K_ODE: "analytic_continuation", _K_GAUSS: "gauss_sum",
}


def hyp2f1_array(a, b, c, z, tol=DEFAULT_TOL):
    """Vectorised :func:`hyp2f1`; returns (values, diagnostics)."""
    a, b, c = complex(a), complex(b), complex(c)
    if _is_nonpos_int(c) and not (
        (_is_nonpos_int(a) and a.real > c.real) or (_is_nonpos_int(b) and b.real > c.real)
    ):
        raise PoleError(f"2F1 undefined for c = {c.real:g}")
    z = np.asarray(z, dtype=complex)
    shape = z.shape
    z = z.ravel()
    kind = _classify_2f1(a, b, c, z)
    out = np.empty(z.shape, dtype=complex)
    nmax, tail, rnd = 1, 0.0, 0.0
    names = set()
    for code in np.unique(kind):
        sel = kind == code
        zs = z[sel]
        name = _KIND_NAMES[int(code)]
        if code == _K_NONE or code == _K_POLY:
            val, n, tl, big = _series([a, b], [c], zs, float(np.max(np.abs(zs))) if code == _K_NONE else 0.0, tol)
        elif code == _K_PFAFF:
            val, n, tl, big = _pfaff(a, b, c, zs, tol)
        elif code == _K_EULER:
            val, n, tl, big = _euler(a, b, c, zs, tol)
        elif code == _K_GAUSS:
            if (c - a - b).real <= 0:
                raise DomainError("2F1 diverges at z = 1 when Re(c-a-b) <= 0")
            g = gamma_c(c) * gamma_c(c - a - b) * rgamma_c(c - a) * rgamma_c(c - b)
            val = np.full(zs.shape, g, dtype=complex)
            n, tl, big = 1, np.zeros(zs.shape), np.abs(val)
        elif code == _K_ODE:
            val, n, tl, big = _ode_2f1(a, b, c, zs, tol)
        else:
            func, which = _CONNECTIONS[int(code)]
            try:
                val, n, tl, big = func(a, b, c, zs, tol)
            except DegenerateTransformError:
                val, n, tl, big = _perturbed(func, which, a, b, c, zs, tol)
                name += "+perturbed"
            # the connection terms cancel: take the best-conditioned route instead
            with np.errstate(divide="ignore", invalid="ignore"):
                lossy = np.abs(val) < CONNECTION_LOSS * big
            if lossy.any():
                val, tl, big = val.copy(), np.array(tl, dtype=float) * np.ones(zs.shape), big.copy()
                for i in np.flatnonzero(lossy):
                    cands = _connection_candidates(a, b, c, complex(zs[i]), tol)
                    if not cands:
                        continue
                    v, _, n2, t2, b2, label = min(cands, key=lambda x: x[1])
                    val[i], tl[i], big[i] = v, t2, b2
                    n = max(n, n2)
                    names.add(label)
        out[sel] = val
        names.add(name)
        nmax = max(nmax, n)
        tail = max(tail, float(np.max(tl)))
        rnd = max(rnd, float(EPS * np.max(big)))
    return out.reshape(shape), SeriesDiagnostics(nmax, tail, "+".join(sorted(names)), rnd)


def hyp2f1(a, b, c, z, tol=DEFAULT_TOL):
    """Gauss hypergeometric function 2F1(a, b; c; z) for complex a, b, c, z.

    The argument is mapped by one of z, z/(z-1), 1-z, 1/z, 1/(1-z) so that
    the working series argument has modulus <= 0.75.  Large negative real z
    (the -beta^2/alpha^2 regime of the Hankel-Laplace rule) goes through
    the Pfaff or 1/(1-z) branch.  Degenerate connection formulas (integer
    c-a-b or a-b) are evaluated at a shifted parameter and extrapolated.
    Near z = exp(+-i pi/3), where no map helps, the function is continued
    from |z| = 1/2 by Taylor stepping the hypergeometric equation.  Where
    the connection formula cancels, the candidates (other formulas, the
    continuation, and the continuation in double-double) are compared by
    their error estimates.

    Returns ``(value, SeriesDiagnostics)``.
    """
    val, diag = hyp2f1_array(a, b, c, np.array([complex(z)]), tol)
    return complex(val[0]), diag


# ---------------------------------------------------------------------------
# Bessel, Legendre, Laguerre
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def hankel_sum_coefficients(l: int) -> tuple[complex, ...]:
    """Coefficients d_k = i^(k-l-1) (l+k)! / (k! (l-k)!), k = 0..l.

    With them  j_l(z) = sum_k [d_k e^{iz} + conj(d_k) e^{-iz}] / (2z)^(k+1).
    """
    out = []
    for k in range(l + 1):
        w = math.factorial(l + k) // (math.factorial(k) * math.factorial(l - k))
        out.append(w * (1j) ** ((k - l - 1) % 4))
    return tuple(out)


def _sph_bessel_series(l, z):
    z = np.asarray(z, dtype=float)
    pref = z ** l / float(sc.factorial2(2 * l + 1, exact=True))
    x = -0.5 * z * z
    term = np.ones_like(z)
    total = np.ones_like(z)
    for n in range(1, 200):
        term = term * x / (n * (2 * l + 2 * n + 1))
        total = total + term
        if np.all(np.abs(term) <= 1e-17 * np.abs(total)):
            break
    return pref * total


def _sph_bessel_hankel(l, z):
    z = np.asarray(z, dtype=float)
    acc = np.zeros(z.shape, dtype=complex)
    for k, d in enumerate(hankel_sum_coefficients(l)):
        acc = acc + d / (2.0 * z) ** (k + 1)
    return 2.0 * np.real(np.exp(1j * z) * acc)


def sph_bessel(l: int, z, l_max: int = L_MAX_DEFAULT):
    """Spherical Bessel function j_l(z) for real z >= 0.

    Ascending series for z <= max(l, 2), the finite Hankel sum above.
    """
    if l < 0 or l != int(l):
        raise DomainError("l must be a non-negative integer")
    if l > l_max:
        raise DomainError(f"l = {l} exceeds l_max = {l_max}")
    z_arr = np.asarray(z, dtype=float)
    if np.any(z_arr < 0):
        raise DomainError("sph_bessel needs z >= 0")
    cross = max(l, 2)
    out = np.empty(z_arr.shape)
    small = z_arr <= cross
    if small.any():
        out[small] = _sph_bessel_series(l, z_arr[small])
    if (~small).any():
        out[~small] = _sph_bessel_hankel(l, z_arr[~small])
    return out if out.ndim else float(out)


def assoc_legendre(l: int, m: int, x):
    """Associated Legendre function P_l^m(x) with the Condon-Shortley phase.

    Forward recurrence in l from P_m^m; negative m via
    P_l^{-m} = (-1)^m (l-m)!/(l+m)! P_l^m.
    """
    if l < 0 or abs(m) > l:
        raise DomainError(f"need |m| <= l, got l={l}, m={m}")
    x_arr = np.asarray(x, dtype=float)
    if np.any(np.abs(x_arr) > 1.0):
        raise DomainError("assoc_legendre needs |x| <= 1")
    val = legendre_trig(l, m, x_arr, np.sqrt((1.0 - x_arr) * (1.0 + x_arr)))
    return val if np.ndim(val) else float(val)


def legendre_trig(l: int, m: int, x, s):
    """P_l^m(x) given x = cos(theta) and s = sin(theta) >= 0 separately.

    Passing s directly keeps full relative accuracy near the poles, where
    sqrt(1 - x^2) would be rounded to zero.
    """
    am = abs(m)
    pmm = np.full(np.shape(x), 1.0)
    fact = 1.0
    for _ in range(am):
        pmm = -pmm * fact * s
        fact += 2.0
    if l == am:
        val = pmm
    else:
        p_prev = pmm
        p_cur = x * (2 * am + 1) * pmm
        for ll in range(am + 2, l + 1):
            p_prev, p_cur = p_cur, ((2 * ll - 1) * x * p_cur - (ll + am - 1) * p_prev) / (ll - am)
        val = p_cur
    if m < 0:
        val = (-1) ** am * math.factorial(l - am) / math.factorial(l + am) * val
    return val


def laguerre_coefficients(n: int, a) -> np.ndarray:
    """Power-series coefficients c_q of L_n^(a)(x) = sum_q c_q x^q, q = 0..n."""
    if n < 0:
        raise DomainError("n must be >= 0")
    coef = np.empty(n + 1, dtype=complex if isinstance(a, complex) else float)
    # c_q = (-1)^q Gamma(n+a+1) / (Gamma(n-q+1) Gamma(a+q+1) q!)
    c = complex(sc.poch(a + 1, n)) / math.factorial(n) if isinstance(a, complex) else sc.poch(a + 1, n) / math.factorial(n)
    for q in range(n + 1):
        coef[q] = c
        c = -c * (n - q) / ((a + q + 1) * (q + 1))
    return coef


def laguerre(n: int, a, x):
    """Generalised Laguerre polynomial L_n^(a)(x) by the three-term recurrence."""
    if n < 0:
        raise DomainError("n must be >= 0")
    x_arr = np.asarray(x, dtype=float)
    l0 = np.ones_like(x_arr)
    if n == 0:
        out = l0
    else:
        l1 = 1.0 + a - x_arr
        for k in range(1, n):
            l0, l1 = l1, ((2 * k + 1 + a - x_arr) * l1 - (k + a) * l0) / (k + 1)
        out = l1
    return out if np.ndim(out) else float(out)
