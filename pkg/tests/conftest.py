import os
import random
import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("akstab", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("akstab")


def akstab_seed() -> int:
    raw = os.environ.get("AKSTAB_SEED", "").strip()
    return int(raw) if raw else 20240611


@pytest.fixture
def rng():
    return random.Random(akstab_seed())


@pytest.fixture(scope="session")
def S0():
    from akstab.exact import G
    from akstab.stability import standard_condition

    return standard_condition(3, 2, [G(1), G(1, 1), G(0, 1)])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
