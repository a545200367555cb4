import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line per acceptance criterion."""
    holder = {"name": request.node.name}
    yield holder
    ACCEPTANCE_LINES.append((holder["name"], holder.get("ok", False), holder.get("detail", "")))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_LINES:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
