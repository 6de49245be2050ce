import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from aklt_vbs import ChainSpec, homogeneous_chain  # noqa: E402

# criterion number -> (description, passed)
ACCEPTANCE_RESULTS = {}


@pytest.fixture
def spin1_chain():
    return homogeneous_chain(1, 4)


@pytest.fixture
def c5():
    return ChainSpec.from_spins(["1/2", "3/2", 2, "3/2", "1/2"], name="C5")


@pytest.fixture
def c6():
    return ChainSpec.from_spins(["1/2", "3/2", 2, 2, "3/2", "1/2"], name="C6")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        desc, ok = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {desc}")
