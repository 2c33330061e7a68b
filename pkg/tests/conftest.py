import pytest

_LINES: dict[int, str] = {}


@pytest.fixture
def acceptance(request):
    """Record one PASS/FAIL line per acceptance criterion; an unrecorded criterion is a FAIL."""
    number = request.node.get_closest_marker("criterion").args[0]

    def record(ok: bool, detail: str) -> bool:
        _LINES[number] = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(_LINES[number])
        return ok

    yield record
    _LINES.setdefault(number, f"criterion {number:2d}: FAIL  (did not finish)")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_LINES):
            terminalreporter.write_line(_LINES[number])
