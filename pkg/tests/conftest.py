from __future__ import annotations

import time
from contextlib import contextmanager

import pytest

# (number, title, passed, seconds, limit, note) per acceptance criterion
ACCEPTANCE: list[tuple] = []


class Recorder:
    @contextmanager
    def __call__(self, number: str, title: str, limit: float):
        note = {"text": ""}
        start = time.perf_counter()
        ok = False
        try:
            yield note
            ok = True
        except Exception as exc:
            note["text"] = note["text"] or (str(exc).splitlines() or [type(exc).__name__])[0][:160]
            raise
        finally:
            elapsed = time.perf_counter() - start
            in_time = elapsed < limit
            passed = ok and in_time
            if ok and not in_time:
                note["text"] = f"too slow ({elapsed:.3f}s >= {limit}s)"
            ACCEPTANCE.append((number, title, passed, elapsed, limit, note["text"]))
            print(_line(ACCEPTANCE[-1]))
        if ok and not in_time:
            pytest.fail(note["text"])


def _line(entry) -> str:
    number, title, passed, elapsed, limit, note = entry
    mark = "PASS" if passed else "FAIL"
    extra = f"  [{note}]" if note else ""
    return f"{mark}  criterion {number:<3} {title}  ({elapsed:.3f}s, limit {limit}s){extra}"


@pytest.fixture
def criterion():
    return Recorder()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for entry in sorted(ACCEPTANCE, key=lambda e: (int(e[0].rstrip("abc")), e[0])):
        terminalreporter.write_line(_line(entry))
