import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_verdicts: dict[int, tuple[bool, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    num = getattr(item.function, "criterion", None)
    if num is None or rep.when != "call":
        return
    detail = getattr(item, "criterion_detail", "")
    if rep.failed:
        msg = str(call.excinfo.value).splitlines()[0] if call.excinfo else ""
        detail = f"{detail} {msg}".strip()
    _verdicts[num] = (rep.passed, detail)
    line = f"CRITERION {num}: {'PASS' if rep.passed else 'FAIL'}  {detail}"
    sys.stdout.write("\n" + line + "\n")


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_verdicts):
        ok, detail = _verdicts[num]
        terminalreporter.write_line(f"CRITERION {num}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def note(request):
    """Attach a one-line summary to the acceptance verdict of this test."""

    def _note(text):
        request.node.criterion_detail = text

    return _note
