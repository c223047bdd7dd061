import pathlib
import random

import pytest

from dtxp import open_tree
from dtxp.oracle import gen_tree

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def random_spec(k: int, max_features: int = 6, max_domain: int = 3, max_depth: int = 6) -> dict:
    r = random.Random(k)
    m = r.randint(2, max_features)
    return dict(n_features=m, domains=[r.randint(2, max_domain) for _ in range(m)],
                depth=r.randint(2, max_depth), seed=k)


def random_trees(n: int, offset: int = 0, **bounds):
    return [gen_tree(**random_spec(k + offset, **bounds)) for k in range(n)]


@pytest.fixture(scope="session")
def fig1():
    return open_tree(str(FIXTURES / "fig1.json"))


@pytest.fixture(scope="session")
def fig2():
    return open_tree(str(FIXTURES / "fig2.json"))


@pytest.fixture(scope="session")
def multi_edge():
    return open_tree(str(FIXTURES / "multi_edge.json"))


@pytest.fixture(scope="session")
def small_trees():
    return random_trees(60, offset=10_000, max_features=5)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
