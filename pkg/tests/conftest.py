import pytest

# 14 solutions x 3 objectives; ids are 1-based in the worked example, 0-based rows here
WORKED_EXAMPLE = [
    (34, 30, 40), (33, 34, 30), (32, 32, 31), (31, 34, 34), (34, 30, 41),
    (36, 35, 36), (36, 33, 32), (35, 31, 43), (37, 36, 39), (35, 34, 38),
    (38, 38, 37), (39, 37, 31), (37, 36, 39), (33, 34, 30),
]

# frozen from oracles.peel_ranks(WORKED_EXAMPLE); 1 < 5 < 8 and 3 < 7 < 6 < 9 are dominance chains
WORKED_EXAMPLE_RANKS = [1, 1, 1, 1, 2, 3, 2, 3, 4, 2, 4, 2, 4, 1]


@pytest.fixture
def worked_example():
    return [tuple(float(v) for v in row) for row in WORKED_EXAMPLE]


# -- acceptance summary: one PASS/FAIL line per criterion -----------------

_criteria: dict[str, list[tuple[str, str]]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria.setdefault(marker.args[0], []).append((item.name, report.outcome))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id): acceptance criterion this test checks")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_criteria, key=lambda c: int(c.lstrip("AC"))):
        results = _criteria[cid]
        failed = [name for name, outcome in results if outcome != "passed"]
        status = "FAIL" if failed else "PASS"
        detail = f" (failed: {', '.join(failed)})" if failed else ""
        terminalreporter.write_line(f"{status} {cid}: {len(results) - len(failed)}/{len(results)} checks{detail}")
