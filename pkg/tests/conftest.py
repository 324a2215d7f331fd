import pytest

_RESULTS = []


class CriterionLog:
    def __init__(self, label):
        self.label = label

    def check(self, ok, detail):
        _RESULTS.append((self.label, bool(ok), detail))
        assert ok, f"{self.label}: {detail}"


@pytest.fixture
def criterion(request):
    marker = request.node.get_closest_marker("criterion")
    label = marker.args[0] if marker else request.node.name
    return CriterionLog(label)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion reported in the summary")


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")
