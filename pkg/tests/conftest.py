import pytest

from votesign import _backend

BACKENDS = [("python", _backend.python)]
if _backend.compiled is not None:
    BACKENDS.append(("cython", _backend.compiled))


@pytest.fixture(params=[b[1] for b in BACKENDS], ids=[b[0] for b in BACKENDS])
def kernel_impl(request):
    return request.param


ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion; asserts after logging so failures still print."""

    def check(label: str, ok: bool, detail: str = "") -> None:
        ACCEPTANCE_RESULTS.append((label, bool(ok), detail))
        assert ok, f"{label}: {detail}"

    return check


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")
