from __future__ import annotations

import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(autouse=True)
def _isolated_run_log(tmp_path, monkeypatch):
    monkeypatch.setenv("CUBEDENSITY_LOG_DIR", str(tmp_path / "logs"))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
