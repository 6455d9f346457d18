import pytest

from symgraph import kernels

# (criterion, passed, detail) lines printed after the run
ACCEPTANCE = []


@pytest.fixture
def record():
    def _record(number, title, passed, detail):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {title} ({detail})"
        ACCEPTANCE.append((number, line))
        print(line)
        return passed
    return _record


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    """Run a test under each importable kernel backend."""
    before = kernels.BACKEND
    kernels.set_backend(request.param)
    yield request.param
    kernels.set_backend(before)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE):
        terminalreporter.write_line(line)
