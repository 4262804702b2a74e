import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import bound, free
from radial_cases import (
    hankel_reference,
    laplace_reference,
    radial_reference,
    random_hankel,
    random_laplace,
)
from dirac_matel.errors import CancellationWarning, PreconditionError
from dirac_matel.radial import (
    HankelLaplaceSpec,
    Laplace1F1Spec,
    bound_free_integral,
    hankel_laplace,
    laplace_1f1,
    laplace_1f1_sinc,
    radial_bound_bound,
    radial_bound_free,
    radial_integral,
)
from dirac_matel.states import bound_decomposition, decay_rate, free_decomposition


def rel(a, b):
    return abs(a - b) / abs(b)


# primitive rules -------------------------------------------------------------

def test_hankel_laplace_examples():
    assert hankel_laplace(HankelLaplaceSpec(1, 0, 3, 4)).value == pytest.approx(0.2, rel=1e-14)
    assert hankel_laplace(HankelLaplaceSpec(2, 0, 1, 1)).value == pytest.approx(2 ** -1.5, rel=1e-14)
    with pytest.raises(PreconditionError, match=r"Re\(nu\+mu\)"):
        hankel_laplace(HankelLaplaceSpec(-0.5, 0, 1, 1))
    with pytest.raises(PreconditionError, match="alpha"):
        hankel_laplace(HankelLaplaceSpec(1, 0, -1, 1))


@given(st.floats(0.6, 6), st.integers(0, 6), st.floats(0.1, 4), st.floats(0.01, 20), st.floats(0.1, 10))
def test_hankel_laplace_scaling(mu, l, alpha, beta, c):
    nu = l + 0.5
    v1 = hankel_laplace(HankelLaplaceSpec(mu, nu, c * alpha, c * beta)).value
    v0 = hankel_laplace(HankelLaplaceSpec(mu, nu, alpha, beta)).value
    assert rel(v1, c ** -mu * v0) < 1e-12


def test_hankel_laplace_random_oracle(rng):
    for _ in range(20):
        spec = random_hankel(rng)
        ref, _ = hankel_reference(spec)
        assert rel(hankel_laplace(spec).value, ref) < 1e-8


def test_laplace_1f1_examples():
    assert laplace_1f1(Laplace1F1Spec(1.3, 2.1, 2, 0, 1)).value == pytest.approx(1.0, rel=1e-14)
    v = laplace_1f1(Laplace1F1Spec(1.5, 1.5, 2, 0.3, 1)).value
    assert v == pytest.approx(1 / 0.49, rel=1e-13)
    with pytest.raises(PreconditionError, match=r"Re\(s\)"):
        laplace_1f1(Laplace1F1Spec(1, 2, 2, 0.1, -1))
    with pytest.raises(PreconditionError, match=r"Re\(b\)"):
        laplace_1f1(Laplace1F1Spec(1, 2, -0.5, 0.1, 1))
    with pytest.raises(PreconditionError):
        laplace_1f1(Laplace1F1Spec(1, 2, 2, 0.1, 1, k=1.0))


@given(st.floats(-2, 3), st.floats(-2, 2), st.floats(1.2, 4), st.floats(0.5, 4), st.floats(-1, 1),
       st.floats(0.3, 2), st.floats(-2, 2))
def test_laplace_1f1_conjugation(ar, ai, c, b, pi, sr, si):
    spec = Laplace1F1Spec(complex(ar, ai), c, b, complex(0, pi), complex(sr, si))
    conj = Laplace1F1Spec(complex(ar, -ai), c, b, complex(0, -pi), complex(sr, -si))
    v, w = laplace_1f1(spec).value, laplace_1f1(conj).value
    assert abs(v - np.conj(w)) <= 1e-13 * abs(v)


def test_laplace_1f1_sinc_examples():
    spec = Laplace1F1Spec(1.2, 2.4, 2, 0.2, 1, 1e-4)
    base = laplace_1f1(Laplace1F1Spec(1.2, 2.4, 2, 0.2, 1)).value
    assert rel(laplace_1f1_sinc(spec).value, base) < 1e-6
    assert laplace_1f1_sinc(Laplace1F1Spec(1.0, 2.0, 2, 0, 1, 1.0)).value == pytest.approx(0.5, rel=1e-14)
    gen = Laplace1F1Spec(1.5 + 0.5j, 3.1, 2.6, 0.4j, 1, 0.8)
    ref, _ = laplace_reference(gen)
    assert rel(laplace_1f1_sinc(gen).value, ref) < 1e-8


def test_sinc_cancellation_warning():
    spec = Laplace1F1Spec(1.2, 2.4, 1.3, 0.2 + 0.1j, 1.0, 1e-8)
    with pytest.warns(CancellationWarning):
        res = laplace_1f1_sinc(spec)
    assert res.cancellation < 1e-6
    ref, _ = laplace_reference(spec)
    assert rel(res.value, ref) < 1e-5


def test_laplace_random_oracle(rng):
    for sinc in (False, True):
        for _ in range(4):
            spec = random_laplace(rng, sinc)
            ref, _ = laplace_reference(spec)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", CancellationWarning)
                val = (laplace_1f1_sinc(spec) if sinc else laplace_1f1(spec)).value
            assert rel(val, ref) < 1e-8


# assemblers -------------------------------------------------------------

def _bb(s1, s2, comp, l, k):
    d1, d2 = bound_decomposition(s1), bound_decomposition(s2)
    return radial_bound_bound(d1[comp], d2[comp], l, k).value.real


def test_bound_bound_k_to_zero():
    s = bound(0, -1)
    d = bound_decomposition(s)
    k = 1e-7 * decay_rate(s)
    norm = _bb(s, s, 0, 0, k) + _bb(s, s, 1, 0, k)
    assert norm == pytest.approx(1.0, abs=1e-9)
    assert abs(radial_bound_bound(d[0], d[0], 2, k).value) < 1e-12


@pytest.mark.parametrize("pair", [((1, -1), (0, -1)), ((2, 1), (1, -2)), ((0, -2), (2, 2)), ((1, 1), (1, 1))])
@pytest.mark.parametrize("l", [0, 1, 2, 3])
@pytest.mark.parametrize("kfac", [0.1, 1.0, 10.0])
@pytest.mark.parametrize("Z", [1, 50])
def test_bound_bound_oracle(pair, l, kfac, Z):
    s1, s2 = bound(*pair[0], Z=Z), bound(*pair[1], Z=Z)
    k = kfac * s1.consts.za
    for comp in (0, 1):
        got = _bb(s1, s2, comp, l, k)
        ref, err = radial_reference(s1, comp, s2, comp, l, k, 1 / decay_rate(s1))
        assert abs(got - ref) <= 1e-8 * abs(ref) + 1e-13 * _bb(s1, s1, comp, 0, 1e-9)


def _bf(sb, sf, cb, cf, l, k, route="auto"):
    return radial_bound_free(bound_decomposition(sb)[cb], free_decomposition(sf)[cf], l, k, route).value.real


@pytest.mark.parametrize("l", [0, 1, 2, 4])
@pytest.mark.parametrize("kfac", [0.1, 1.0, 5.0])
def test_bound_free_oracle(l, kfac):
    sb = bound(0, -1)
    sf = free(0.5 * sb.consts.za, -1 if l % 2 == 0 else 1)
    k = kfac * sb.consts.za
    for cb, cf in ((0, 0), (1, 1), (0, 1)):
        got = _bf(sb, sf, cb, cf, l, k)
        ref, err = radial_reference(sb, cb, sf, cf, l, k, 1 / decay_rate(sb))
        assert abs(got - ref) <= 1e-7 * abs(ref) + 1e-12 * abs(_bf(sb, sf, cb, cf, 0, 1e-3))


@pytest.mark.filterwarnings("ignore::dirac_matel.errors.CancellationWarning")
@pytest.mark.parametrize("l", [0, 1, 3])
def test_bound_free_routes_agree(l):
    sb = bound(1, -1, Z=20)
    sf = free(0.7 * sb.consts.za, 2, Z=20)
    k = 0.6 * decay_rate(sb)
    a = _bf(sb, sf, 0, 0, l, k, "split")
    b = _bf(sb, sf, 0, 0, l, k, "kseries")
    assert abs(a - b) <= 1e-8 * max(abs(a), abs(b))


def test_bound_free_spike_at_z0():
    p = 0.3
    # weak coupling: a nearly plane-wave continuum and a very diffuse bound state
    sf = free(p, -1, Z=1, alpha=1e-6)
    sb = bound(0, -1, Z=1, alpha=1e-6)
    d = bound_decomposition(sb)[0]
    g = free_decomposition(sf)[0]
    one = abs(radial_integral(d, g, 0, p).value)
    two = abs(radial_integral(d, g, 0, 2 * p).value)
    assert one > 5 * two


def test_bound_free_sinc_reduction():
    # a = c makes 1F1 = exp(P r); then the l = 0 integral is a plain sinc rule
    a = c = 2.5
    P, s, b0, k = 0.2, 1.0, 2.0, 1.0
    v, _, path, _ = bound_free_integral(a, c, P, s, b0, 0, np.array([k]), route="split")
    ref = laplace_1f1_sinc(Laplace1F1Spec(a, c, b0, P, s, k)).value
    assert path == "laplace_1f1_sinc"
    assert v[0] == pytest.approx(ref, rel=1e-14)
    closed = laplace_1f1_sinc(Laplace1F1Spec(1.0, 2.0, b0, 0.0, s - P, k)).value
    assert v[0] == pytest.approx(closed, rel=1e-12)


def test_radial_integral_dispatch():
    sb, sf = bound(0, -1), free(0.01, -1)
    d, g = bound_decomposition(sb)[0], free_decomposition(sf)[0]
    k = 0.02
    assert radial_integral(g, d, 0, k).value == radial_integral(d, g, 0, k).value
    with pytest.raises(NotImplementedError):
        radial_integral(g, g, 0, k)
