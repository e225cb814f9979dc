import pytest

from glg.corpus import NAMES, builtin
from glg.exactmath import GF, QQ


FIELDS = {"Q": QQ, "GF2": GF(2), "GF3": GF(3)}


def corpus_cases():
    """(name, field) for every builtin on every field it is stated over."""
    return [(n, f) for n in NAMES for f in FIELDS]


@pytest.fixture(params=NAMES)
def example(request):
    return builtin(request.param)


ACCEPTANCE = []  # (number, passed, summary) appended by test_acceptance


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, summary in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {summary}")
