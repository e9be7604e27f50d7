"""Shared fixtures plus the acceptance summary printed after the run."""

from __future__ import annotations

ACCEPTANCE_LOG = []


def record_acceptance(number: int, name: str, ok: bool, elapsed: float, budget: float) -> None:
    verdict = "PASS" if ok and elapsed < budget else "FAIL"
    ACCEPTANCE_LOG.append(
        f"criterion {number:02d} {name}: {verdict} ({elapsed:.2f}s, budget {budget:.0f}s)"
    )


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for line in ACCEPTANCE_LOG:
        terminalreporter.write_line(line)
