import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

import pytest

_acceptance = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


@pytest.fixture
def note(request):
    """Attach a one-line measurement to the acceptance summary."""
    def put(text):
        request.node.acceptance_note = text
    return put


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark and (rep.when == "call" or rep.failed):
        line = (mark.args[0], mark.args[1], "PASS" if rep.passed else "FAIL",
                getattr(item, "acceptance_note", ""))
        _acceptance.append(line)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for num, title, status, detail in sorted(_acceptance):
        terminalreporter.write_line(f"{status}  {num}. {title}" + (f"  [{detail}]" if detail else ""))
