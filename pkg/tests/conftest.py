import os
import warnings

import pytest
from hypothesis import HealthCheck, settings

from corrsolve import HypothesisWarning, new_correspondence, parse
from corrsolve.poly import bipoly

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=200, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

CUBIC = "x*y - x^2*y - x*y^2 - 1"
HOMOGENEOUS = "x^2 + 3*x*y + y^2"
HYPERBOLA = "x*y - 1"
PARABOLA = "y^2 - x"

# products of bilinear factors: every fiber over a rational point is rational
RATIONAL_FIBER = [
    "(x - y)*(x + y)",
    "(x + y)*(x*y - 1)",
    "(x - y)*(x*y - 1)",
    "(x + y)*(x*y + 1)",
    "(x + y - 1)*(x*y - 1)",
]


def corr(text, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HypothesisWarning)
        p = parse(text) if isinstance(text, str) else bipoly(text)
        return new_correspondence(p, **kw)


@pytest.fixture(scope="session")
def hyperbola():
    return corr(HYPERBOLA)


@pytest.fixture(scope="session")
def cubic():
    return corr(CUBIC)


@pytest.fixture(scope="session")
def homogeneous():
    return corr(HOMOGENEOUS)


@pytest.fixture(scope="session")
def parabola():
    return corr(PARABOLA)


_ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def record_criterion(n: int, title: str, ok: bool) -> None:
    _ACCEPTANCE[n] = (title, ok)
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {n:2d}: {title}")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        title, ok = _ACCEPTANCE[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n:2d}: {title}")
