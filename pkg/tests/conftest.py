import random
import re

import pytest

from asymhyper.hypercore import Hypergraph

_ACCEPTANCE: dict[int, tuple[str, str]] = {}


def random_hypergraph(rng: random.Random, n_max: int = 7, m_max: int = 9,
                      sizes=(1, 2, 3, 4)) -> Hypergraph:
    n = rng.randint(1, n_max)
    edges = set()
    for _ in range(rng.randint(0, m_max)):
        k = min(rng.choice(sizes), n)
        edges.add(tuple(sorted(rng.sample(range(n), k))))
    return Hypergraph(n, sorted(edges))


@pytest.fixture
def rng():
    return random.Random(20240601)


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    num = int(m.group(1))
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = "PASS" if report.outcome == "passed" else "FAIL"
        _ACCEPTANCE[num] = (status, m.group(2).replace("_", " "))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        status, title = _ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {status}  {title}")
