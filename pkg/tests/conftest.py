import functools

import pytest
from hypothesis import HealthCheck, settings

from cubicdirac.checks import shooting_for_grid
from cubicdirac.domain import PhysParams
from cubicdirac.shooting import ShootingConfig, solve_bound_state

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES = []


@functools.lru_cache(maxsize=None)
def bound_state(m, omega, S, R=None):
    params = PhysParams(m, omega, S)
    cfg = ShootingConfig() if R is None else ShootingConfig(R=R)
    return params, solve_bound_state(params, cfg)


@functools.lru_cache(maxsize=None)
def bound_state_for_grid(m, omega, S, L):
    params = PhysParams(m, omega, S)
    cfg = shooting_for_grid(ShootingConfig(), params, L)
    return params, solve_bound_state(params, cfg)


@pytest.fixture(scope="session")
def ground_101():
    return bound_state(1.0, 0.0, 1)


@pytest.fixture
def record_acceptance():
    def record(k, ok, detail):
        line = f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
