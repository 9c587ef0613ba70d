import pytest

_REPORT: dict[str, tuple[bool, str]] = {}


class AcceptanceRecorder:
    def record(self, criterion: str, ok: bool, detail: str) -> None:
        _REPORT[criterion] = (bool(ok), detail)


@pytest.fixture
def acceptance() -> AcceptanceRecorder:
    return AcceptanceRecorder()


def pytest_terminal_summary(terminalreporter):
    if not _REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_REPORT, key=lambda s: [int(p) if p.isdigit() else p for p in s.replace(".", " ").split()]):
        ok, detail = _REPORT[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
