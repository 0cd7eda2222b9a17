import os
import re

import pytest

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")

_criteria = {}


def fixture_path(*parts):
    return os.path.join(FIXTURES, *parts)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = re.match(r"test_criterion_(\d+)", item.name)
    if not m:
        return
    number = int(m.group(1))
    doc = (item.function.__doc__ or "").strip().splitlines()
    title = doc[0] if doc else item.name
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _criteria[number] = (title, "PASS" if rep.passed else ("SKIP" if rep.skipped else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, status = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {title}")
