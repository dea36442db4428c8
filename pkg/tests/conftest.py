import re
import sys
from pathlib import Path

from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

_ACCEPTANCE: dict[str, list[str]] = {}
_AC_NAME = re.compile(r"test_ac(\d+)_")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    m = _AC_NAME.search(report.nodeid)
    if m and "test_acceptance" in report.nodeid:
        _ACCEPTANCE.setdefault(m.group(1), []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_ACCEPTANCE, key=int):
        outcomes = _ACCEPTANCE[k]
        ok = all(o == "passed" for o in outcomes)
        terminalreporter.write_line(f"AC{k}: {'PASS' if ok else 'FAIL'} ({len(outcomes)} checks)")
