import time
from contextlib import contextmanager

# criterion number -> (title, passed, seconds, detail)
CRITERIA: dict[int, tuple[str, bool, float, str]] = {}


@contextmanager
def criterion(number, title, limit=None):
    """Record the outcome of an acceptance criterion for the terminal summary."""
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        CRITERIA[number] = (title, False, time.perf_counter() - start, f"{type(exc).__name__}: {exc}".splitlines()[0])
        raise
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed > limit:
        CRITERIA[number] = (title, False, elapsed, f"took {elapsed:.1f}s, limit {limit}s")
        raise AssertionError(f"criterion {number} exceeded {limit}s ({elapsed:.1f}s)")
    CRITERIA[number] = (title, True, elapsed, "")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        title, ok, secs, detail = CRITERIA[n]
        line = f"[{'PASS' if ok else 'FAIL'}] {n}. {title} ({secs:.1f}s)"
        terminalreporter.write_line(line + (f" -- {detail}" if detail else ""))
