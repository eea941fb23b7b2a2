import pytest

from simfuzz.textio import parse_claims, parse_document

from .helpers import data_text


@pytest.fixture(scope="session")
def doc():
    return parse_document(data_text("example2.rules"), "example2.rules")


@pytest.fixture(scope="session")
def rb(doc):
    return doc.rulebase


@pytest.fixture(scope="session")
def sets(doc):
    return doc.sets


@pytest.fixture(scope="session")
def obs(sets):
    return (sets["A1star"], sets["A2star"])


@pytest.fixture(scope="session")
def fmp_claims(doc):
    return parse_claims(data_text("claims_fmp.claims"), doc, "claims_fmp.claims")


@pytest.fixture(scope="session")
def fmt_claims(doc):
    return parse_claims(data_text("claims_fmt.claims"), doc, "claims_fmt.claims")


# acceptance reporting ------------------------------------------------------

_criteria: dict[int, tuple[str, str, float]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when == "teardown":
        return
    number, title = mark.args
    if rep.when == "call" or rep.failed:
        _criteria[number] = (title, "PASS" if rep.passed else "FAIL", rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, status, secs = _criteria[number]
        terminalreporter.write_line(f"AC{number} {status} {title} ({secs:.2f}s)")
