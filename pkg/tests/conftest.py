import random

import pytest

from mirrorlab.hypergeom import HGParams
from mirrorlab.modular import table1_cases

ACCEPTANCE_LINES = []


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run the long reproduction suites")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="long-running; use --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_params(rng: random.Random, n: int, max_den: int = 12) -> HGParams:
    out = []
    while len(out) < n:
        d = rng.randint(2, max_den)
        out.append(f"{rng.randint(1, d - 1)}/{d}")
    return HGParams(out)


def build_corpus():
    """The 14 Calabi-Yau cases plus 6 random valid tuples (fixed seed)."""
    rng = random.Random(20130612)
    extra = [random_params(rng, rng.randint(2, 4)) for _ in range(6)]
    return [c.a for c in table1_cases()] + extra


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


@pytest.fixture(scope="session")
def corpus():
    return build_corpus()
