import pytest

_LINES: list[str] = []


class CriterionLog:
    """Collects sub-checks for one acceptance criterion and emits a single verdict line."""

    def __init__(self, label: str):
        self.label = label
        self.checks: list[tuple[str, bool, str]] = []

    def check(self, name: str, ok: bool, detail: str = "") -> bool:
        self.checks.append((name, bool(ok), detail))
        return bool(ok)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def finish(self) -> None:
        verdict = "PASS" if self.ok else "FAIL"
        line = f"[{verdict}] {self.label}"
        detail = "; ".join(f"{n}={'ok' if ok else 'FAIL'}{' (' + d + ')' if d else ''}" for n, ok, d in self.checks)
        _LINES.append(f"{line}\n    {detail}")
        print(_LINES[-1])
        failed = [f"{n}: {d}" for n, ok, d in self.checks if not ok]
        assert not failed, "; ".join(failed)


@pytest.fixture
def criterion(request):
    label = request.node.function.__doc__.strip().splitlines()[0]
    return CriterionLog(label)


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
