from pathlib import Path

import pytest

from setrealize.model import Graph, SetFamily

DATA = Path(__file__).parent / "data"


def fam(ground, *sets):
    """Family over ``ground`` with sets named s1, s2, ... in argument order."""
    return SetFamily(list(ground), {f"s{i + 1}": list(s) for i, s in enumerate(sets)})


def graph(vertices, *edges):
    return Graph(list(vertices), [tuple(e) for e in edges])


STAR = fam("abcd", "ca", "cb", "cd")
TRIANGLE = fam("abc", "ab", "bc", "ac")


@pytest.fixture
def data_dir():
    return DATA


# -- acceptance reporting --------------------------------------------------------

_CRITERIA = pytest.StashKey[dict]()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")
    config.stash[_CRITERIA] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.skipped or not (report.failed or report.when == "call"):
        return
    results = item.config.stash[_CRITERIA]
    for marker in item.iter_markers("criterion"):
        number, title = marker.args
        ok = results.get(number, (title, True))[1]
        results[number] = (title, ok and report.passed)


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_CRITERIA, {})
    if not results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(results):
        title, ok = results[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}")
