"""Second-order self-energy assembly.

For a bound reference state s1 the shift is

    dE = -(alpha / 4 pi^2) sum_{s2} PV int_0^inf dk  I(k),
    I(k) = 4 pi k C(k) / (E1 - E2 - k),

where C = t0 - t1 - t2 - t3 is the k_hat-averaged, m2-summed quadruple of
:mod:`matel` (the 4 pi restores the solid-angle integral).  With a finite
Pauli-Villars mass Lambda the image 4 pi (k^2/w) C(k) / (E1 - E2 - w),
w = sqrt(k^2 + Lambda^2), is subtracted.  The s2 sum covers bound levels and
a Gauss-Legendre discretisation of the positive-energy continuum.
"""
from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .errors import DiracMatelError, DomainError, PoleMisconfigured, TruncationWarning, WindowTooWide
from .matel import quadruple_array
from .states import BoundState, FreeState, bound_decomposition, decay_rate, energy

# 15-point Kronrod rule with its embedded 7-point Gauss rule on [-1, 1]
_XK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0,
])
_WK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
])
_WG = np.array([0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                0.381830050505118944950369775488975, 0.417959183673469387755102040816327])
_KX = np.concatenate([-_XK[:-1], _XK[::-1]])
_KW = np.concatenate([_WK[:-1], _WK[::-1]])
_GW = np.zeros(15)
_GW[[1, 3, 5, 7, 9, 11, 13]] = np.concatenate([_WG[:-1], _WG[::-1]])

MAPPINGS = ("linear", "log", "rational-to-infinity")
PREFACTOR_DIVISOR = 4 * math.pi ** 2
_DEGENERATE = 1e-14


# ---------------------------------------------------------------------------
# principal-value quadrature
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KGrid:
    """Panels for the k integral, an optional pole window and a rational tail.

    ``panels`` are finite (a, b) intervals in increasing order; ``tail`` is the
    start of [tail, inf) mapped by k = tail + tail u / (1 - u); the window
    [pole - delta, pole + delta] is integrated in t = |k - pole| with the
    integrand folded about the pole.
    """

    panels: tuple
    pole: float | None = None
    delta: float | None = None
    tail: float | None = None
    mapping: str = "log"

    def __post_init__(self):
        if self.mapping not in MAPPINGS:
            raise DomainError(f"unknown mapping {self.mapping!r}")
        edges = [x for p in self.panels for x in p]
        if any(b <= a for a, b in self.panels) or any(np.diff(edges) < 0):
            raise DomainError("panels must be ordered and non-degenerate")
        if self.pole is not None:
            if self.delta is None or not self.delta > 0:
                raise PoleMisconfigured("a pole needs a positive window half-width")
            if self.pole - self.delta < 0:
                raise WindowTooWide(f"window [{self.pole - self.delta}, {self.pole + self.delta}] crosses 0")
            for a, b in self.panels:
                if a < self.pole + self.delta and b > self.pole - self.delta:
                    raise PoleMisconfigured(f"panel [{a}, {b}] overlaps the pole window")

    @property
    def nodes(self) -> np.ndarray:
        return np.sort(np.concatenate([_panel_nodes(a, b)[0] for a, b in self._all_panels()] or [np.empty(0)]))

    @property
    def weights(self) -> np.ndarray:
        parts = [_panel_nodes(a, b) for a, b in self._all_panels()]
        if not parts:
            return np.empty(0)
        k = np.concatenate([p[0] for p in parts])
        w = np.concatenate([p[1] for p in parts])
        return w[np.argsort(k)]

    def _all_panels(self):
        return list(self.panels)

    @classmethod
    def linear(cls, a: float, b: float, n: int, pole: float | None = None, delta: float | None = None):
        """n equal panels on [a, b] with an optional pole window cut out."""
        edges = np.linspace(a, b, n + 1)
        if pole is None:
            return cls(tuple(zip(edges[:-1], edges[1:])), mapping="linear")
        if delta is None:
            delta = min(0.1 * pole, 0.5 * (pole - a), 0.5 * (b - pole))
        pts = sorted(set([a, b, pole - delta, pole + delta]
                         + [x for x in edges if abs(x - pole) > delta]))
        panels = tuple((x, y) for x, y in zip(pts[:-1], pts[1:]) if not (x >= pole - delta and y <= pole + delta))
        return cls(panels, pole, delta, mapping="linear")

    @classmethod
    def build(cls, features=(), pole: float | None = None, k_max: float | None = None,
              lower: float = 0.0, ratio: float = 2.0, delta: float | None = None):
        """Graded panels resolving ``features`` and an optional pole.

        ``features`` holds (centre, width) pairs; panels grow geometrically by
        ``ratio`` away from each centre, from the width outwards.  Without
        ``k_max`` the range continues to infinity through a rational tail
        starting at 64 times the largest centre.
        """
        feats = [(float(c), float(w)) for c, w in features if c > lower and w > 0]
        if pole is not None:
            feats.append((float(pole), 0.0))
        if not feats and k_max is None:
            raise DomainError("an infinite grid needs at least one feature")
        centres = sorted(c for c, _ in feats)
        top = k_max if k_max is not None else 64.0 * max(centres)
        if pole is not None:
            near = [abs(pole - x) for x in [lower, top] + [c for c, _ in feats if c != pole]]
            half = 0.5 * min(near)
            delta = min(0.1 * pole, half) if delta is None else delta
            if pole - delta < lower:
                raise WindowTooWide("pole window extends below the lower limit")
        pts = {lower, top}
        for c, w in feats:
            if c == pole:
                w = delta
                pts.update((c - w, c + w))
            elif lower < c < top:
                pts.add(c)
            step = w
            while step < top:
                for x in (c - step, c + step):
                    if lower < x < top:
                        pts.add(x)
                step *= ratio
        # geometric fill from the smallest scale down to the lower limit
        smallest = min(min(c for c, _ in feats), min((w for _, w in feats if w > 0), default=top))
        x = smallest
        floor = lower + 1e-4 * smallest
        while x > floor:
            x /= ratio
            if x > lower:
                pts.add(lower + x)
        # cap panel ratio everywhere
        srt = sorted(pts)
        fill = []
        for a, b in zip(srt[:-1], srt[1:]):
            if a > lower and b / a > ratio:
                n = int(math.ceil(math.log(b / a) / math.log(ratio)))
                fill.extend(np.geomspace(a, b, n + 1)[1:-1])
        srt = sorted(set(srt) | set(fill))
        # merge break points that differ only by rounding
        merged = [srt[0]]
        for x in srt[1:]:
            if x - merged[-1] > 1e-12 * max(abs(x), smallest):
                merged.append(x)
            elif x == top:
                merged[-1] = x
        srt = merged
        panels = []
        for a, b in zip(srt[:-1], srt[1:]):
            if pole is not None and a >= pole - delta * (1 + 1e-12) and b <= pole + delta * (1 + 1e-12):
                continue
            panels.append((a, b))
        return cls(tuple(panels), pole, delta, None if k_max is not None else top,
                   "log" if k_max is not None else "rational-to-infinity")


def _panel_nodes(a, b):
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return mid + half * _KX, half * _KW


_TAIL_U = np.concatenate([[0.0], 1.0 - 0.5 ** np.arange(1, 13), [1.0]])


class _Plan:
    """All nodes of a grid, evaluated in one call, and the rules to sum them."""

    def __init__(self, grid: KGrid, panels=None):
        self.grid = grid
        self.panels = list(grid.panels if panels is None else panels)
        ks, ws, gs, owner = [], [], [], []
        for idx, (a, b) in enumerate(self.panels):
            mid, half = 0.5 * (a + b), 0.5 * (b - a)
            ks.append(mid + half * _KX)
            ws.append(half * _KW)
            gs.append(half * _GW)
            owner.append(np.full(15, idx))
        n_fin = len(self.panels)
        if grid.tail is not None:
            t0 = grid.tail
            for j, (ua, ub) in enumerate(zip(_TAIL_U[:-1], _TAIL_U[1:])):
                mid, half = 0.5 * (ua + ub), 0.5 * (ub - ua)
                u = mid + half * _KX
                jac = t0 / (1 - u) ** 2
                ks.append(t0 + t0 * u / (1 - u))
                ws.append(half * _KW * jac)
                gs.append(half * _GW * jac)
                owner.append(np.full(15, n_fin + j))
        n_reg = len(owner)
        self.window = None
        if grid.pole is not None:
            d, k0 = grid.delta, grid.pole
            for j, (ta, tb) in enumerate(((0.0, 0.5 * d), (0.5 * d, d))):
                mid, half = 0.5 * (ta + tb), 0.5 * (tb - ta)
                t = mid + half * _KX
                for sgn in (1.0, -1.0):
                    ks.append(k0 + sgn * t)
                    ws.append(half * _KW)
                    gs.append(half * _GW)
                    owner.append(np.full(15, n_reg + j))
            self.window = (n_reg, n_reg + 2)
        self.k = np.concatenate(ks) if ks else np.empty(0)
        self.wk = np.concatenate(ws) if ws else np.empty(0)
        self.wg = np.concatenate(gs) if gs else np.empty(0)
        self.owner = np.concatenate(owner) if owner else np.empty(0, dtype=int)
        self.n_groups = n_reg + (2 if grid.pole is not None else 0)
        if grid.pole is not None and np.any(self.k == grid.pole):
            raise PoleMisconfigured("a quadrature node sits on the pole")

    def integrate(self, values):
        """Kronrod estimate and per-panel |Kronrod - Gauss| for each row of values."""
        v = np.atleast_2d(values)
        kr = np.zeros((v.shape[0], self.n_groups))
        ga = np.zeros((v.shape[0], self.n_groups))
        for r in range(v.shape[0]):
            kr[r] = np.bincount(self.owner, self.wk * v[r], self.n_groups)
            ga[r] = np.bincount(self.owner, self.wg * v[r], self.n_groups)
        return kr, np.abs(kr - ga)


def _evaluate(f, k):
    vals = np.asarray(f(k))
    if vals.shape[-1:] != k.shape:
        vals = np.array([f(x) for x in k]).T
    return vals


def pv_integrate(f: Callable, grid: KGrid, refine: int = 4, rtol: float = 1e-12):
    """Principal value of int f dk over the grid; returns (value, error_estimate).

    ``f`` receives an array of k.  Finite panels whose Kronrod and Gauss
    estimates differ by more than rtol of the running total are bisected, at
    most ``refine`` times.
    """
    value, err, _ = _pv_multi(f, grid, refine, rtol, lambda v: v)
    return float(value[0]), float(err[0])


def _pv_multi(f, grid, refine, rtol, select):
    """Vector version: ``f`` may return several rows; ``select`` picks the rows steering refinement."""
    panels = list(grid.panels)
    done = []                                     # (kronrod, error) of accepted panels
    plan = _Plan(grid, panels)
    vals = np.atleast_2d(_evaluate(f, plan.k))
    kr, er = plan.integrate(vals)
    n_fin = len(panels)
    fixed_k = kr[:, n_fin:].sum(axis=1)
    fixed_e = er[:, n_fin:].sum(axis=1)
    cur_k, cur_e = kr[:, :n_fin], er[:, :n_fin]
    nodes_used = plan.k.size
    for _ in range(refine):
        total = fixed_k + cur_k.sum(axis=1) + sum((d[0] for d in done), 0)
        scale = np.abs(select(total)).max() if total.size else 0.0
        steer = np.atleast_2d(select(cur_e)).max(axis=0) if cur_e.size else np.empty(0)
        bad = steer > rtol * max(scale, 1e-300)
        if not bad.any():
            break
        for idx in np.nonzero(~bad)[0]:
            done.append((cur_k[:, idx], cur_e[:, idx]))
        new_panels = []
        for idx in np.nonzero(bad)[0]:
            a, b = panels[idx]
            m = 0.5 * (a + b)
            new_panels += [(a, m), (m, b)]
        panels = new_panels
        sub = _Plan(KGrid(tuple(panels), mapping=grid.mapping), panels)
        v2 = np.atleast_2d(_evaluate(f, sub.k))
        nodes_used += sub.k.size
        cur_k, cur_e = sub.integrate(v2)
    acc_k = fixed_k + cur_k.sum(axis=1) + sum((d[0] for d in done), 0)
    acc_e = fixed_e + cur_e.sum(axis=1) + sum((d[1] for d in done), 0)
    return acc_k, acc_e, nodes_used


# ---------------------------------------------------------------------------
# integrands
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RegularizationSpec:
    """Pauli-Villars mass Lambda (natural units); inf disables the image."""

    lam: float = math.inf

    def __post_init__(self):
        if not self.lam > 0:
            raise DomainError("Lambda must be positive")

    @property
    def finite(self) -> bool:
        return math.isfinite(self.lam)


def _integrand_rows(combined, k, dE, lams):
    """Rows: unregularised integrand, then one regularised row per Lambda."""
    base = 4 * math.pi * combined
    raw = base * k / (dE - k)
    rows = [raw]
    for lam in lams:
        if math.isfinite(lam):
            w = np.sqrt(k * k + lam * lam)
            rows.append(raw - base * (k * k / w) / (dE - w))
        else:
            rows.append(raw)
    return np.vstack(rows)


def _energy_gap(s1, s2):
    dE = energy(s1) - energy(s2)
    return 0.0 if abs(dE) <= _DEGENERATE * s1.consts.m_e else dE


def k_integrand(s1, s2, k, reg: RegularizationSpec = RegularizationSpec()):
    """4 pi k C(k) / (E1 - E2 - k) minus the Pauli-Villars image; vectorised over k."""
    k_arr = np.atleast_1d(np.asarray(k, dtype=float))
    if np.any(k_arr <= 0):
        raise DomainError("k must be positive")
    dE = _energy_gap(s1, s2)
    if np.any(k_arr == dE):
        raise PoleMisconfigured("k coincides with the pole E1 - E2")
    comb = quadruple_array(s1, s2, k_arr)[4]
    val = _integrand_rows(comb, k_arr, dE, [reg.lam])[1]
    return val if np.ndim(k) else float(val[0])


# ---------------------------------------------------------------------------
# state sum
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DeltaMHook:
    """Mass-counterterm integrand h(k, Lambda).

    The shift gains +(alpha / 4 pi^2) <beta> int_0^inf h(k, Lambda) dk, with
    <beta> = int (g^2 - f^2) r^2 dr of the reference state, as one separate
    record.  ``scope='self'`` instead subtracts each record's own regularised
    integrand inside its quadrature (``integrand`` is then unused).
    """

    integrand: Callable | None = None
    label: str = "zero"
    scope: str = "global"

    def __post_init__(self):
        if self.scope not in ("global", "self"):
            raise DomainError("scope must be 'global' or 'self'")

    @classmethod
    def zero(cls):
        return cls(None, "zero")

    @classmethod
    def self_subtraction(cls):
        return cls(None, "self", "self")

    @property
    def is_zero(self) -> bool:
        return self.scope == "global" and self.integrand is None

    def __call__(self, k, lam):
        if self.integrand is None:
            return np.zeros(np.shape(k))
        return np.asarray(self.integrand(k, lam), dtype=float) * np.ones(np.shape(k))

    def __add__(self, other: "DeltaMHook") -> "DeltaMHook":
        if self.scope != "global" or other.scope != "global":
            raise DomainError("only global hooks can be added")
        return DeltaMHook(lambda k, lam: self(k, lam) + other(k, lam), f"{self.label}+{other.label}")


@dataclass(frozen=True)
class Truncation:
    N_max: int = 2
    K_max: int = 3
    p_nodes: int = 64
    p_mapping: str = "rational"

    def __post_init__(self):
        if self.N_max < 0 or self.K_max < 1 or self.p_nodes < 0:
            raise DomainError("need N_max >= 0, K_max >= 1, p_nodes >= 0")
        if self.p_mapping != "rational":
            raise DomainError("only the rational p mapping p = m t / (1 - t) is provided")


@dataclass(frozen=True)
class ShiftContribution:
    s2_label: str
    raw_pv: float
    regularized_pv: float
    dm_subtracted: float
    diagnostics: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class ShiftResult:
    records: list
    total: float
    tail_estimate: float
    failed: list = field(default_factory=list)


def continuum_nodes(n: int, m: float = 1.0):
    """Gauss-Legendre nodes in t on (0, 1) mapped to p = m t / (1 - t), with dp weights."""
    if n == 0:
        return np.empty(0), np.empty(0)
    x, w = np.polynomial.legendre.leggauss(n)
    t = 0.5 * (x + 1)
    return m * t / (1 - t), 0.5 * w * m / (1 - t) ** 2


def intermediate_states(s1: BoundState, trunc: Truncation):
    """[(label, state, weight)] in canonical order: bound by (kappa, n'), then continuum."""
    c = s1.consts
    half = Fraction(1, 2)
    out = []
    for kap in _kappas(trunc.K_max):
        for nr in range(0 if kap < 0 else 1, trunc.N_max + 1):
            out.append((f"bound n'={nr} kappa={kap}", BoundState(nr, kap, half, c), 1.0))
    p, w = continuum_nodes(trunc.p_nodes, c.m_e)
    for kap in _kappas(trunc.K_max):
        for i, (pi, wi) in enumerate(zip(p, w)):
            out.append((f"free i={i} p={float(pi)!r} kappa={kap}", FreeState(float(pi), kap, half, c), float(wi)))
    return out


def _kappas(K):
    return [k for a in range(1, K + 1) for k in (-a, a)]


def _features(s1, s2):
    """Scales of C(k): the form-factor width, and for continuum s2 the peak near k = p.

    Lambda is deliberately absent so that every cutoff shares the same nodes;
    the rational tail resolves the k ~ Lambda region.
    """
    lam1 = decay_rate(s1)
    if isinstance(s2, BoundState):
        scale = lam1 + decay_rate(s2)
        return [(scale, scale)]
    return [(lam1, lam1), (s2.p, lam1)]


def _record(s1, s2, weight, lams, hook, refine, rtol):
    """Contributions of one intermediate state for every Lambda in ``lams``."""
    dE = _energy_gap(s1, s2)
    pole = dE if dE > 0 else None
    grid = KGrid.build(_features(s1, s2), pole=pole)

    def rows(k):
        comb = quadruple_array(s1, s2, k)[4]
        return _integrand_rows(comb, k, dE, lams)

    # refinement is steered by the Lambda-independent unregularised row
    val, err, nodes = _pv_multi(rows, grid, refine, rtol, lambda v: v[:1])
    pref = -weight / PREFACTOR_DIVISOR * s1.consts.alpha
    out = []
    for j, lam in enumerate(lams):
        raw, reg = float(pref * val[0]), float(pref * val[j + 1])
        dm = 0.0 if hook.scope == "self" else reg
        diag = {"raw_error": float(abs(pref) * err[0]), "regularized_error": float(abs(pref) * err[j + 1]),
                "nodes": int(nodes), "pole": pole, "weight": weight, "kappa": s2.kappa}
        out.append((raw, reg, dm, diag))
    return out


def beta_expectation(state: BoundState) -> float:
    """<beta> = int (g^2 - f^2) r^2 dr from the power-exponential decomposition."""
    g, f = bound_decomposition(state)
    two_lam = 2 * g.lam
    total = 0.0
    for comp, sign in ((g, 1.0), (f, -1.0)):
        for q1, c1 in enumerate(comp.coeffs):
            for q2, c2 in enumerate(comp.coeffs):
                e = 2 * comp.gamma + q1 + q2 + 1
                total += sign * c1 * c2 * math.exp(math.lgamma(e) - e * math.log(two_lam))
    return total


def _hook_record(s1, hook, lam, refine, rtol):
    feats = [(decay_rate(s1), decay_rate(s1)), (s1.consts.m_e, s1.consts.m_e)]
    if math.isfinite(lam):
        feats.append((lam, lam))
    grid = KGrid.build(feats)
    val, err, nodes = _pv_multi(lambda k: hook(k, lam), grid, refine, rtol, lambda v: v)
    coef = s1.consts.alpha / PREFACTOR_DIVISOR * beta_expectation(s1)
    return float(coef * val[0]), float(abs(coef) * err[0]), nodes


def _threads():
    env = os.environ.get("DIRAC_MATEL_THREADS")
    if env is None:
        return min(4, os.cpu_count() or 1)
    n = int(env)
    if n < 1:
        raise DomainError("DIRAC_MATEL_THREADS must be >= 1")
    return n


def ordered_sum(values) -> float:
    """Sum sorted by magnitude with exact rounding, independent of input order."""
    return math.fsum(sorted(values, key=lambda x: (abs(x), x)))


def state_sum_ladder(s1: BoundState, trunc: Truncation = Truncation(), lams=(math.inf,),
                     hook: DeltaMHook = DeltaMHook.zero(), refine: int = 3, rtol: float = 1e-10,
                     tail_budget: float = 0.05, strict: bool = True):
    """state_sum for several Lambda sharing one set of quadrature nodes per record.

    With ``strict=False`` a record whose evaluation fails numerically is moved
    to ``ShiftResult.failed`` instead of aborting the sum.
    """
    if not isinstance(s1, BoundState):
        raise DomainError("the reference state must be bound")
    lams = tuple(float(x) for x in lams)
    for lam in lams:
        RegularizationSpec(lam)
    basis = intermediate_states(s1, trunc)
    gap = max((abs(energy(s1) - energy(s2)) for _, s2, _ in basis if isinstance(s2, BoundState)), default=0.0)
    for lam in lams:
        if lam <= gap:
            raise DomainError(f"Lambda = {lam} must exceed the bound-level spacing {gap:.3e}")

    def work(item):
        _, s2, w = item
        try:
            return _record(s1, s2, w, lams, hook, refine, rtol)
        except (ArithmeticError, DiracMatelError) as exc:
            if strict:
                raise
            return exc

    n_thr = _threads()
    if n_thr > 1 and len(basis) > 1:
        with ThreadPoolExecutor(max_workers=n_thr) as ex:
            raw_results = list(ex.map(work, basis))
    else:
        raw_results = [work(b) for b in basis]

    results = []
    for j, lam in enumerate(lams):
        records = []
        failed = []
        for (label, s2, _), res in zip(basis, raw_results):
            if isinstance(res, Exception):
                failed.append(ShiftContribution(label, math.nan, math.nan, math.nan,
                                                {"failed": f"{type(res).__name__}: {res}"}))
                continue
            raw, reg, dm, diag = res[j]
            records.append(ShiftContribution(label, raw, reg, dm, diag))
        if not hook.is_zero and hook.scope == "global":
            dm_val, dm_err, nodes = _hook_record(s1, hook, lam, refine, rtol)
            records.append(ShiftContribution("delta_m", 0.0, 0.0, dm_val,
                                             {"raw_error": 0.0, "regularized_error": dm_err, "nodes": int(nodes),
                                              "pole": None, "weight": 1.0}))
        total = ordered_sum(r.dm_subtracted for r in records)
        tail = _tail_estimate(records, trunc.K_max)
        if tail > tail_budget * abs(total) and trunc.K_max > 1 and total != 0:
            warnings.warn(f"last kappa shell contributes {tail:.3e} of total {total:.3e}", TruncationWarning)
        results.append(ShiftResult(records, total, tail, failed))
    return results


def _tail_estimate(records, K):
    shell = ordered_sum(r.dm_subtracted for r in records if r.diagnostics.get("kappa") in (K, -K))
    return abs(shell)


def state_sum(s1: BoundState, trunc: Truncation = Truncation(), reg: RegularizationSpec = RegularizationSpec(),
              hook: DeltaMHook = DeltaMHook.zero(), refine: int = 3, rtol: float = 1e-10,
              tail_budget: float = 0.05, strict: bool = True) -> ShiftResult:
    """Itemised second-order shift of ``s1`` and its deterministic total."""
    return state_sum_ladder(s1, trunc, (reg.lam,), hook, refine, rtol, tail_budget, strict)[0]


__all__ = [
    "KGrid", "pv_integrate", "RegularizationSpec", "k_integrand", "DeltaMHook", "Truncation",
    "ShiftContribution", "ShiftResult", "continuum_nodes", "intermediate_states", "beta_expectation",
    "ordered_sum", "state_sum", "state_sum_ladder",
]
