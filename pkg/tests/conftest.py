import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from dirac_matel.states import BoundState, FreeState, PhysicalConstants

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


@pytest.fixture
def h_consts():
    return PhysicalConstants(Z=1)


def bound(n_r, kappa, m="1/2", Z=1, alpha=None):
    c = PhysicalConstants(Z=Z) if alpha is None else PhysicalConstants(alpha=alpha, Z=Z)
    return BoundState(n_r, kappa, m, c)


def free(p, kappa, m="1/2", Z=1, alpha=None):
    c = PhysicalConstants(Z=Z) if alpha is None else PhysicalConstants(alpha=alpha, Z=Z)
    return FreeState(p, kappa, m, c)


# one line per acceptance criterion, printed after the run
ACCEPTANCE = []


def record_acceptance(number, title, ok, detail, elapsed, budget):
    ok = bool(ok) and elapsed < budget
    ACCEPTANCE.append((number, f"[{'PASS' if ok else 'FAIL'}] criterion {number} {title}: {detail}; "
                               f"{elapsed:.1f} s (budget {budget:.0f} s)"))
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE):
        terminalreporter.write_line(line)
