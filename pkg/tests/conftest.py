import pytest

from pqep.dataset import builtin_reference_dataset


@pytest.fixture(scope="session")
def reference():
    return builtin_reference_dataset()


@pytest.fixture(scope="session")
def records(reference):
    return reference[1]


@pytest.fixture(scope="session")
def by_name(records):
    return {r.name: r for r in records}


# -- acceptance summary: one pass/fail line per criterion ------------------

_criteria: dict[int, dict] = {}
_nodes: dict[str, int] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            number, title = mark.args
            _nodes[item.nodeid] = number
            _criteria.setdefault(number, {"title": title, "ok": True, "ran": False})


def pytest_runtest_logreport(report):
    number = _nodes.get(report.nodeid)
    if number is None:
        return
    entry = _criteria[number]
    if report.when == "call":
        entry["ran"] = True
    if report.failed:
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        status = "PASS" if entry["ok"] and entry["ran"] else "FAIL"
        tr.write_line(f"[{status}] criterion {number}: {entry['title']}")
