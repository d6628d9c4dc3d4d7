import contextlib

import pytest

_RESULTS: list[tuple[str, str, bool, str]] = []


@contextlib.contextmanager
def _criterion(cid: str, title: str):
    info: dict = {}
    try:
        yield info
    except BaseException as exc:
        _RESULTS.append((cid, title, False, f"{type(exc).__name__}: {exc}"[:200]))
        raise
    else:
        detail = ", ".join(f"{k}={v}" for k, v in info.items())
        _RESULTS.append((cid, title, True, detail))


@pytest.fixture
def criterion():
    return _criterion


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for cid, title, ok, detail in sorted(_RESULTS, key=lambda r: (len(r[0]), r[0])):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {cid}: {title}"
        if detail:
            line += f"  ({detail})"
        tr.write_line(line)
