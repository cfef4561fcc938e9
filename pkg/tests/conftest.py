from __future__ import annotations

from contextlib import contextmanager

import pytest

_VERDICTS: dict[int, tuple[str, bool, str]] = {}


@contextmanager
def _record(number: int, title: str):
    try:
        yield
    except BaseException as exc:
        _VERDICTS[number] = (title, False, f"{type(exc).__name__}: {exc}".splitlines()[0])
        print(f"criterion {number} FAIL: {title}")
        raise
    else:
        _VERDICTS[number] = (title, True, "")
        print(f"criterion {number} PASS: {title}")


@pytest.fixture
def criterion():
    """``with criterion(n, title):`` records a pass/fail line for the summary."""
    return _record


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_VERDICTS):
        title, ok, why = _VERDICTS[n]
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}"
        if why:
            line += f"  ({why})"
        terminalreporter.write_line(line)
