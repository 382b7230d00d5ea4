import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

# criterion number -> (passed, seconds, note); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, float, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, secs, note = ACCEPTANCE[k]
        line = f"criterion {k:2d}: {'PASS' if ok else 'FAIL'} ({secs:.2f} s)"
        terminalreporter.write_line(line + (f"  {note}" if note else ""))
