import pytest

from signed_hammersley.core import parse_word


@pytest.fixture
def w():
    """``w("2+ 1-")`` parses with k=2 unless another k is given."""

    def make(text, k=2):
        return parse_word(text, k)

    return make


_criteria: dict[int, tuple[str, str, float]] = {}


def pytest_runtest_setup(item):
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        item.user_properties.append(("criterion", marker.args))


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    number, title = props["criterion"]
    if report.when == "call" or report.failed:
        outcome = "PASS" if report.passed else "FAIL"
        _criteria[number] = (title, outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, outcome, seconds = _criteria[number]
        terminalreporter.write_line(f"{outcome} criterion {number}: {title} ({seconds:.1f}s)")
