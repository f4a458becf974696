from __future__ import annotations

import numpy as np
import pytest

from kaehler_sl2c.profiles import builtin


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=["lump", "stenzel", "quadratic", "cosh", "hermite-tail"])
def any_builtin(request):
    return builtin(request.param)


@pytest.fixture
def lump():
    return builtin("lump")


# Lines printed by the acceptance checks, repeated in the terminal summary so
# they are visible even when output capture is on.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
