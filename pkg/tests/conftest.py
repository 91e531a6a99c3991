import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from eqlf import stdsigs  # noqa: E402
from eqlf.core import Telescope  # noqa: E402
from eqlf.kernel import CheckConfig, Kernel  # noqa: E402
from eqlf.sigparse import parse_class, parse_object, parse_signature  # noqa: E402

O = parse_object
C = parse_class


def ctx(text: str) -> Telescope:
    return Telescope.of((d.name, d.cls) for d in parse_signature(text))


def kernel(sig_id: str, context: str = "", **cfg) -> Kernel:
    return Kernel.checked(stdsigs.load(sig_id), ctx(context), CheckConfig(**cfg))


@pytest.fixture(scope="session")
def godel_t():
    return stdsigs.load("godel_t")


# one line per acceptance criterion, collected by test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
