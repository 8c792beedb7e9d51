import numpy as np
import pytest

from gelfand_stockwell import catalog

ACCEPTANCE_LINES = []

ABELIAN = [n for n in catalog.list_pairs() if n.startswith("cyclic")]
NONABELIAN = [n for n in catalog.list_pairs() if not n.startswith("cyclic")]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(params=catalog.list_pairs())
def entry(request):
    return catalog.get_pair(request.param)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
