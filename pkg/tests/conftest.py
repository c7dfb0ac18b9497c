import pytest

_LINES: dict[str, str] = {}


@pytest.fixture
def record():
    """Record one acceptance verdict line; printed again in the terminal summary."""

    def _record(number, title, passed, detail=""):
        line = f"criterion {number:>3}: {'PASS' if passed else 'FAIL'} | {title}"
        if detail:
            line += f" | {detail}"
        _LINES[str(number)] = line
        print(line)
        return passed

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_LINES, key=lambda k: (int("".join(c for c in k if c.isdigit()) or 0), k)):
        terminalreporter.write_line(_LINES[key])
